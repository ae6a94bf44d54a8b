"""Streaming enumeration of primitive points on P^{n-1}(Q) by height,
multiplicity testing, and count series N(B).

Counting runs relative to the effective exemption set of the pair (declared
primes plus degenerate primes of the configuration).  Points lying on a
boundary divisor are never counted.

Three scan strategies share one histogram contract ("number of M-points
with max-norm exactly t" for t = 1..T):

* ``exact``   - pure python loops with full factorizations; any config.
* ``tables``  - per-divisor admissibility tables over all form values,
  built by a sieve; exact for families whose condition is a per-divisor
  condition on the value.  Sparse per-coordinate iteration on P^1 when the
  coordinate hyperplanes are among the divisors, dense numpy grids else.
* geometric families run the tables scan for the rational relaxation and
  re-check the survivors with exact quadratic valuations.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import arith
from .arith import MultiplicityProfile
from .pairspec import (INF, ConfigError, PairModel, effective_exempt_primes,
                       membership)


class EnumerationError(Exception):
    pass


MAX_DENSE_CELLS = 700_000_000
MAX_SPARSE_CELLS = 300_000_000
MAX_EXACT_POINTS = 40_000_000


def integer_root(n: int, d: int) -> int:
    """Largest t >= 0 with t**d <= n."""
    if n < 0:
        raise ValueError("negative bound")
    if d == 1:
        return n
    t = int(round(n ** (1.0 / d)))
    while t ** d > n:
        t -= 1
    while (t + 1) ** d <= n:
        t += 1
    return t


# ---------------------------------------------------------------------------
# canonical representatives

def primitive_points(n: int, T: int):
    """All primitive tuples with max |coordinate| <= T, one canonical
    representative per projective point (first nonzero coordinate positive).

    Points with more leading zeros come first; within a block the order is
    lexicographic.
    """
    if T < 1:
        return
    for lead in range(n - 1, -1, -1):
        # x_0 = ... = x_{lead-1} = 0, x_lead >= 1
        for rest in _primitive_block(n - lead, T):
            yield (0,) * lead + rest


def _primitive_block(k: int, T: int):
    # first coordinate positive, remaining free, gcd 1
    if k == 1:
        yield (1,)
        return
    for a in range(1, T + 1):
        for rest in _grid(k - 1, T):
            g = a
            for x in rest:
                g = math.gcd(g, x)
            if g == 1:
                yield (a,) + rest


def _grid(k: int, T: int):
    if k == 0:
        yield ()
        return
    for x in range(-T, T + 1):
        for rest in _grid(k - 1, T):
            yield (x,) + rest


# ---------------------------------------------------------------------------
# exact membership

def _family_value_local(pair: PairModel) -> bool:
    """True when the membership condition factors through the per-divisor
    valuation of the form value alone."""
    fam = pair.family
    if fam.geometric:
        return False
    if fam.variant in ("campana", "darmon", "kfree", "integral"):
        return True
    if fam.variant == "weak_campana":
        # with at most one divisor entering the sum, the condition is a
        # per-divisor condition on the total multiplicity
        relevant = [m for m in fam.m if m != 1 and m is not INF]
        return len(relevant) <= 1
    return False


def _divisor_exponent_specs(pair: PairModel):
    """Per-divisor description of the allowed valuation exponents."""
    fam = pair.family
    out = []
    for j, spec in enumerate(pair.specs):
        if fam.variant == "campana" or \
                (fam.variant == "weak_campana" and _family_value_local(pair)):
            out.append(("campana", fam.m[j]))
        elif fam.variant == "darmon":
            out.append(("darmon", fam.m[j]))
        elif fam.variant == "kfree":
            out.append(("kfree", fam.k[j]))
        elif fam.variant == "integral":
            out.append(("integral",) if j in fam.subset else ("any",))
        else:
            raise EnumerationError("family is not value-local")
    return out


def _quad_places(pair: PairModel):
    cache = {}

    def place(p, d):
        if (p, d) not in cache:
            cache[(p, d)] = arith.quadratic_place(p, d)
        return cache[(p, d)]
    return place


def is_m_point(point, pair: PairModel, S=None, placer=None) -> bool:
    """Exact single-point test; boundary points are rejected."""
    if S is None:
        S = effective_exempt_primes(pair)
    values = [arith.evaluate_form(spec.form, point) for spec in pair.specs]
    if any(v == 0 for v in values):
        return False
    fam = pair.family
    primes = set()
    for v in values:
        primes.update(p for p, _ in arith.factorize(v).exponents)
    primes -= set(S)
    if not fam.geometric:
        for p in sorted(primes):
            w = tuple(arith.vp(v, p) for v in values)
            if not membership(fam, w):
                return False
        return True
    # geometric variants: per-component valuations
    if placer is None:
        placer = _quad_places(pair)
    for p in sorted(primes):
        w = []
        for j, spec in enumerate(pair.specs):
            if spec.k == 1:
                w.append(arith.vp(values[j], p))
            elif spec.splitting == "quadratic":
                if spec.component_form is None:
                    raise EnumerationError(
                        "geometric test needs component_form for %s" % spec.name)
                d = spec.quad_d
                x = sum(int(a) * xi for (a, _), xi in zip(spec.component_form, point))
                y = sum(int(b) * xi for (_, b), xi in zip(spec.component_form, point))
                pl = placer(p, d)
                v1, v2 = arith.quadratic_valuations(x, y, pl, d)
                w.extend([v1, v2])
            else:
                raise EnumerationError(
                    "geometric conditions are unsupported for splitting %r"
                    % spec.splitting)
        if not pair.member_expanded(tuple(w)):
            return False
    return True


# ---------------------------------------------------------------------------
# admissibility tables

def _np_primes(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.nonzero(sieve)[0]


def build_value_table(exponent_spec, maxval: int, S) -> np.ndarray:
    """Boolean table t with t[v] true iff the integer v >= 1 satisfies the
    per-divisor condition at every prime outside S.

    Built with a violation counter: for every prime p and every disallowed
    exponent e, +1 on multiples of p^e and -1 on multiples of p^(e+1) marks
    exactly the values with v_p = e.
    """
    kind = exponent_spec[0]
    cnt = np.zeros(maxval + 1, dtype=np.int8)
    if kind == "any":
        table = np.ones(maxval + 1, dtype=bool)
        table[0] = False
        return table
    Sset = set(S)
    primes = _np_primes(maxval)
    for p in primes:
        p = int(p)
        if p in Sset:
            continue
        if kind == "campana":
            m = exponent_spec[1]
            cnt[p:: p] += 1
            if m is INF:
                continue
            pm = p ** m
            if pm <= maxval:
                cnt[pm:: pm] -= 1
        elif kind == "darmon":
            m = exponent_spec[1]
            if m is INF:
                cnt[p:: p] += 1
                continue
            e = 1
            pe = p
            while pe <= maxval:
                if e % m != 0:
                    cnt[pe:: pe] += 1
                    if pe * p <= maxval:
                        cnt[pe * p:: pe * p] -= 1
                e += 1
                pe *= p
        elif kind == "kfree":
            k = exponent_spec[1]
            pk = p ** (k + 1)
            if pk <= maxval:
                cnt[pk:: pk] += 1
        elif kind == "integral":
            cnt[p:: p] += 1
        else:
            raise EnumerationError("unknown exponent spec %r" % (exponent_spec,))
    table = cnt == 0
    table[0] = False
    return table


def _form_bound(form, T: int) -> int:
    total = 0
    for coeff, exps in form:
        total += abs(coeff) * T ** sum(exps)
    return total


# ---------------------------------------------------------------------------
# scan plans

@dataclass
class ScanPlan:
    pair: PairModel
    T: int
    S: tuple
    strategy: str
    forms: list = field(default_factory=list)
    tables: list = field(default_factory=list)       # per divisor np.bool_
    geometric: bool = False
    n: int = 0


_ACTIVE_PLAN = None


def _choose_strategy(pair: PairModel, T: int, requested: str) -> str:
    n = pair.ambient.ncoords
    value_local = _family_value_local(pair) or pair.family.geometric
    if requested != "auto":
        return requested
    if not value_local:
        return "exact"
    if n == 2 and not pair.family.geometric and _sparse_applicable(pair):
        return "tables-sparse"
    return "tables-dense"


def _sparse_applicable(pair: PairModel) -> bool:
    # both coordinate hyperplanes among the divisors, all forms linear
    coords_seen = set()
    for spec in pair.specs:
        if spec.degree != 1:
            return False
        mono = [(c, e) for c, e in spec.form if c != 0]
        if len(mono) == 1 and abs(mono[0][0]) == 1:
            coords_seen.add(mono[0][1].index(1))
    return coords_seen == {0, 1}


def _prepare_plan(pair: PairModel, T: int, strategy: str) -> ScanPlan:
    S = effective_exempt_primes(pair)
    strategy = _choose_strategy(pair, T, strategy)
    plan = ScanPlan(pair=pair, T=T, S=S, strategy=strategy,
                    n=pair.ambient.ncoords, geometric=pair.family.geometric)
    plan.forms = [spec.form for spec in pair.specs]
    if strategy.startswith("tables"):
        if pair.ambient.kind != "projective":
            raise EnumerationError("enumeration is implemented for projective ambients")
        if pair.family.geometric:
            # rational relaxation of the geometric condition as a prefilter
            relaxed = _divisor_exponent_specs_relaxed(pair)
        else:
            relaxed = _divisor_exponent_specs(pair)
        for spec, espec in zip(pair.specs, relaxed):
            bound = _form_bound(spec.form, T)
            plan.tables.append(build_value_table(espec, bound, S))
    return plan


def _divisor_exponent_specs_relaxed(pair: PairModel):
    fam = pair.family
    out = []
    for j in range(len(pair.specs)):
        if fam.variant == "campana":
            out.append(("campana", fam.m[j]))
        elif fam.variant == "darmon":
            out.append(("darmon", fam.m[j]))
        else:
            raise EnumerationError("geometric variant %r unsupported" % fam.variant)
    return out


# ---------- exact strategy ----------

def _run_exact(plan: ScanPlan, lo: int, hi: int, lead: int) -> np.ndarray:
    pair = plan.pair
    T = plan.T
    hist = np.zeros(T + 1, dtype=np.int64)
    placer = _quad_places(pair)
    n = plan.n
    k = n - lead
    if k == 1:
        if lo <= 1 <= hi:
            point = (0,) * lead + (1,)
            if is_m_point(point, pair, plan.S, placer):
                hist[1] += 1
        return hist
    for a in range(lo, hi + 1):
        for rest in _grid(k - 1, T):
            g = a
            for x in rest:
                g = math.gcd(g, x)
            if g != 1:
                continue
            point = (0,) * lead + (a,) + rest
            if is_m_point(point, pair, plan.S, placer):
                hist[max(abs(x) for x in point)] += 1
    return hist


# ---------- tables strategies ----------

def _eval_forms_grid(forms, coords):
    """Vectorized evaluation of integer forms on arrays of coordinates."""
    out = []
    for form in forms:
        total = None
        for coeff, exps in form:
            term = np.full_like(coords[0], coeff, dtype=np.int64)
            for arr, e in zip(coords, exps):
                for _ in range(e):
                    term = term * arr
            total = term if total is None else total + term
        out.append(total)
    return out


def _survivor_mask(plan: ScanPlan, values):
    mask = None
    for table, vals in zip(plan.tables, values):
        ok = table[np.abs(vals)]
        mask = ok if mask is None else (mask & ok)
    return mask


def _run_tables_block(plan: ScanPlan, lead: int, a_arr, rest_arrs) -> np.ndarray:
    """Count M-points for a flat block of candidate coordinates."""
    T = plan.T
    coords = [np.zeros_like(a_arr)] * lead + [a_arr] + list(rest_arrs)
    g = a_arr.copy()
    for arr in rest_arrs:
        g = np.gcd(g, np.abs(arr))
    prim = g == 1
    values = _eval_forms_grid(plan.forms, coords)
    mask = prim
    for vals in values:
        mask = mask & (vals != 0)
    ok = _survivor_mask(plan, values)
    mask = mask & ok
    hist = np.zeros(T + 1, dtype=np.int64)
    if not mask.any():
        return hist
    height = np.abs(a_arr)
    for arr in rest_arrs:
        height = np.maximum(height, np.abs(arr))
    if plan.geometric:
        idx = np.nonzero(mask)[0]
        placer = _quad_places(plan.pair)
        for i in idx:
            point = tuple(int(c[i]) for c in coords)
            if is_m_point(point, plan.pair, plan.S, placer):
                hist[int(height[i])] += 1
        return hist
    np.add.at(hist, height[mask], 1)
    return hist


def _run_tables_dense(plan: ScanPlan, lo: int, hi: int, lead: int) -> np.ndarray:
    T = plan.T
    n = plan.n
    k = n - lead
    hist = np.zeros(T + 1, dtype=np.int64)
    if k == 1:
        if lo <= 1 <= hi:
            block = _run_tables_block(plan, lead, np.array([1], dtype=np.int64), [])
            hist += block
        return hist
    side = 2 * T + 1
    rest_template = [np.arange(-T, T + 1, dtype=np.int64) for _ in range(k - 1)]
    mesh = np.meshgrid(*rest_template, indexing="ij")
    rest_flat = [m.reshape(-1) for m in mesh]
    for a in range(lo, hi + 1):
        a_arr = np.full(side ** (k - 1), a, dtype=np.int64)
        hist += _run_tables_block(plan, lead, a_arr, rest_flat)
    return hist


def _run_tables_sparse(plan: ScanPlan, lo: int, hi: int, lead: int) -> np.ndarray:
    """P^1 iteration over per-coordinate admissible values."""
    pair = plan.pair
    T = plan.T
    hist = np.zeros(T + 1, dtype=np.int64)
    if lead == 1:
        # the point (0:1)
        if lo <= 1 <= hi:
            hist += _run_tables_block(plan, 1, np.array([1], dtype=np.int64), [])
        return hist
    ax_table = bx_table = None
    for spec, table in zip(pair.specs, plan.tables):
        mono = [(c, e) for c, e in spec.form if c != 0]
        if len(mono) == 1 and abs(mono[0][0]) == 1:
            if mono[0][1].index(1) == 0:
                ax_table = table
            else:
                bx_table = table
    a_vals = np.nonzero(ax_table[: T + 1])[0]
    a_vals = a_vals[(a_vals >= max(lo, 1)) & (a_vals <= hi)]
    b_pos = np.nonzero(bx_table[: T + 1])[0]
    b_pos = b_pos[b_pos >= 1]
    b_all = np.concatenate([-b_pos[::-1], b_pos])
    for a in a_vals:
        a_arr = np.full(len(b_all), int(a), dtype=np.int64)
        hist += _run_tables_block(plan, 0, a_arr, [b_all])
    return hist


# ---------- chunking and the public API ----------

def _chunk_specs(plan: ScanPlan, nchunks: int):
    """Split the work into (lead, lo, hi) leading-coordinate ranges."""
    T = plan.T
    n = plan.n
    chunks = []
    for lead in range(n - 1, 0, -1):
        chunks.append((lead, 1, T))
    main = max(1, min(nchunks, T))
    step = T // main
    starts = [1 + i * step for i in range(main)]
    ends = [s + step - 1 for s in starts]
    ends[-1] = T
    for s, e in zip(starts, ends):
        chunks.append((0, s, e))
    return chunks


def _run_chunk(args):
    lead, lo, hi = args
    plan = _ACTIVE_PLAN
    if plan.strategy == "exact":
        return _run_exact(plan, lo, hi, lead)
    if plan.strategy == "tables-sparse":
        return _run_tables_sparse(plan, lo, hi, lead)
    return _run_tables_dense(plan, lo, hi, lead)


def histogram_by_height(pair: PairModel, T: int, strategy: str = "auto",
                        chunks: int = 1, threads: int = 1) -> np.ndarray:
    """Counts of M-points with max-norm exactly t, for t = 0..T."""
    global _ACTIVE_PLAN
    if T < 1:
        return np.zeros(max(T + 1, 1), dtype=np.int64)
    plan = _prepare_plan(pair, T, strategy)
    _validate_budget(plan)
    specs = _chunk_specs(plan, chunks)
    _ACTIVE_PLAN = plan
    try:
        if threads <= 1:
            parts = [_run_chunk(s) for s in specs]
        else:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(processes=threads) as pool:
                parts = pool.map(_run_chunk, specs)
    finally:
        _ACTIVE_PLAN = None
    total = np.zeros(T + 1, dtype=np.int64)
    for part in parts:
        total += part
    return total


def _validate_budget(plan: ScanPlan):
    T, n = plan.T, plan.n
    if plan.strategy == "exact":
        cells = (2 * T + 1) ** (n - 1) * T
        if cells > MAX_EXACT_POINTS:
            raise EnumerationError(
                "exact scan budget exceeded (%d cells); use a value-local family "
                "or lower the height" % cells)
    elif plan.strategy == "tables-dense":
        cells = (2 * T + 1) ** (n - 1) * T
        if cells > MAX_DENSE_CELLS:
            raise EnumerationError("dense scan budget exceeded (%d cells)" % cells)
    elif plan.strategy == "tables-sparse":
        pass


@dataclass
class CountSeries:
    samples: list                 # [(B, N)] with B strictly increasing
    height_degree: int
    metadata: dict = field(default_factory=dict)

    def bounds(self):
        return [b for b, _ in self.samples]

    def counts(self):
        return [c for _, c in self.samples]


def count_series(pair: PairModel, height_degree: int, bounds,
                 strategy: str = "auto", chunks: int = 1, threads: int = 1) -> CountSeries:
    """N(B) = number of M-points of height at most B, for each bound.

    The height is the max-norm of the primitive coordinates raised to the
    degree of the polarization.
    """
    bounds = sorted(set(int(b) for b in bounds))
    if not bounds or bounds[0] < 1:
        raise EnumerationError("bounds must be positive")
    T = integer_root(bounds[-1], height_degree)
    hist = histogram_by_height(pair, T, strategy=strategy, chunks=chunks,
                               threads=threads)
    cumulative = np.cumsum(hist)
    samples = []
    for B in bounds:
        t = min(integer_root(B, height_degree), T)
        samples.append((B, int(cumulative[t])))
    meta = {
        "height_degree": height_degree,
        "exempt_primes": list(effective_exempt_primes(pair)),
        "strategy": _choose_strategy(pair, T, strategy),
        "max_height": bounds[-1],
    }
    return CountSeries(samples, height_degree, meta)


def doubling_bounds(bmin: int, bmax: int):
    out = []
    b = bmin
    while b < bmax:
        out.append(b)
        b *= 2
    out.append(bmax)
    return out


def write_csv(series: CountSeries, path):
    with open(path, "w") as fh:
        fh.write("B,count\n")
        for B, N in series.samples:
            fh.write("%d,%d\n" % (B, N))


def read_csv(path) -> CountSeries:
    samples = []
    with open(path) as fh:
        header = fh.readline()
        if header.strip() != "B,count":
            raise EnumerationError("bad CSV header %r" % header)
        for line in fh:
            if not line.strip():
                continue
            b, c = line.strip().split(",")
            samples.append((int(b), int(c)))
    return CountSeries(samples, height_degree=1)
