"""Independent brute-force references.

Nothing here shares code with the main enumeration or polyhedral paths
beyond the factorization primitives; the point of this module is to give
the fast implementations something slow and obviously correct to agree
with.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from . import arith
from .pairspec import PairModel, effective_exempt_primes, membership


class OracleError(Exception):
    pass


def brute_generators(member, box):
    """All members of the box that admit no decomposition into two nonzero
    members of the monoid closure (computed inside the box).

    `member` is a predicate on integer vectors; the box is inclusive.
    """
    n = len(box)
    elems = []
    for w in itertools.product(*[range(b + 1) for b in box]):
        if any(w) and member(w):
            elems.append(w)
    elem_set = set(elems)
    closure = set(elems)
    grew = True
    while grew:
        grew = False
        for u in list(closure):
            for v in elems:
                s = tuple(a + b for a, b in zip(u, v))
                if all(a <= b for a, b in zip(s, box)) and s not in closure:
                    closure.add(s)
                    grew = True
    out = []
    for w in elems:
        ok = True
        for u in closure:
            if any(u) and all(a <= b for a, b in zip(u, w)):
                v = tuple(b - a for a, b in zip(u, w))
                if any(v) and v in closure:
                    ok = False
                    break
        if ok:
            out.append(w)
    return sorted(out)


def _gaussian_valuation(x, y, p):
    """Valuations of x + y*i at the places over an odd prime p, written
    independently of the arith quadratic machinery."""
    if p % 4 == 3:
        v = 0
        norm = x * x + y * y
        while norm % p == 0:
            norm //= p
            v += 1
        if v % 2:
            raise OracleError("odd inert valuation of a norm")
        return (v // 2, v // 2)
    a = b = None
    for bb in range(1, math.isqrt(p) + 1):
        aa2 = p - bb * bb
        aa = math.isqrt(aa2)
        if aa * aa == aa2:
            a, b = aa, bb
            break
    if a is None:
        raise OracleError("no two-square splitting of %d" % p)
    vals = []
    for (c, e) in ((a, b), (a, -b)):
        u, v = x, y
        cnt = 0
        while True:
            re = u * c + v * e * 1  # (u + v i)(c - e i) = (uc + ve) + (vc - ue) i
            im = v * c - u * e
            if re % p == 0 and im % p == 0:
                u, v = re // p, im // p
                cnt += 1
            else:
                break
        vals.append(cnt)
    return tuple(vals)


def _point_is_member(point, pair: PairModel, S) -> bool:
    values = []
    for spec in pair.specs:
        total = 0
        for coeff, exps in spec.form:
            term = coeff
            for x, e in zip(point, exps):
                term *= x ** e
            total += term
        values.append(total)
    if any(v == 0 for v in values):
        return False
    fam = pair.family
    primes = set()
    for v in values:
        primes.update(p for p, _ in arith.factorize(v).exponents)
    primes -= set(S)
    for p in sorted(primes):
        if not fam.geometric:
            w = []
            for v in values:
                cnt = 0
                vv = abs(v)
                while vv % p == 0:
                    vv //= p
                    cnt += 1
                w.append(cnt)
            if not membership(fam, tuple(w)):
                return False
            continue
        # per-component condition, written out slot by slot
        for j, spec in enumerate(pair.specs):
            m = fam.m[j]
            if spec.k == 1:
                cnt = 0
                vv = abs(values[j])
                while vv % p == 0:
                    vv //= p
                    cnt += 1
                slot_vals = [cnt]
            else:
                if spec.quad_d != -1:
                    raise OracleError("oracle geometric checks cover d = -1 only")
                x = sum(int(aa) * xi for (aa, _), xi in zip(spec.component_form, point))
                y = sum(int(bb) * xi for (_, bb), xi in zip(spec.component_form, point))
                slot_vals = list(_gaussian_valuation(x, y, p))
            for v in slot_vals:
                if fam.variant == "campana":
                    if not (v == 0 or v >= m):
                        return False
                elif fam.variant == "darmon":
                    if v % m != 0:
                        return False
                else:
                    raise OracleError("unsupported geometric variant %r" % fam.variant)
    return True


def brute_count(pair: PairModel, T: int) -> int:
    """Naive loop over canonical representatives with full membership tests."""
    if T > 1000:
        raise OracleError("brute-force guard: T = %d > 1000" % T)
    n = pair.ambient.ncoords
    S = effective_exempt_primes(pair)
    count = 0
    for lead in range(n):
        k = n - lead
        if k == 1:
            point = (0,) * lead + (1,)
            if _point_is_member(point, pair, S):
                count += 1
            continue
        for first in range(1, T + 1):
            for rest in itertools.product(range(-T, T + 1), repeat=k - 1):
                g = first
                for x in rest:
                    g = math.gcd(g, x)
                if g != 1:
                    continue
                point = (0,) * lead + (first,) + rest
                if _point_is_member(point, pair, S):
                    count += 1
    return count


def brute_volume(dual_generators, L, K: int):
    """Lattice-point estimates of the level-one slice volume of a cone.

    Counts lattice points of the K-fold and 2K-fold dilations of
    {x in cone : <L,x> <= 1} and scales them back; the two estimates
    bracket the exact slice volume as K grows.  The cone must be given by
    generators spanning the whole space (full-dimensional), with the
    lattice the standard one.
    """
    gens = [tuple(Fraction(x) for x in g) for g in dual_generators]
    b = len(gens[0])
    L = [Fraction(x) for x in L]
    for g in gens:
        w = sum(l * x for l, x in zip(L, g))
        if w <= 0:
            raise OracleError("unbounded slice")
    # facet description of the cone: brute force over generator subsets
    normals = []
    for sub in itertools.combinations(gens, b - 1):
        rows = [list(g) for g in sub]
        ns = _nullspace(rows, b)
        if len(ns) != 1:
            continue
        phi = ns[0]
        vals = [sum(p * x for p, x in zip(phi, g)) for g in gens]
        if all(v >= 0 for v in vals):
            normals.append(phi)
        elif all(v <= 0 for v in vals):
            normals.append([-p for p in phi])
    if b == 1:
        normals = [[1]] if all(g[0] > 0 for g in gens) else [[-1]]

    def count_dilated(k):
        # integer points x with <L, x> <= k and x in cone
        bound = []
        for i in range(b):
            # crude box: |x_i| <= k * max over generators of |g_i| / <L,g>
            m = max(abs(g[i]) / sum(l * x for l, x in zip(L, g)) for g in gens)
            bound.append(int(math.ceil(k * m)) + 1)
        total = 0
        for x in itertools.product(*[range(-bb, bb + 1) for bb in bound]):
            if sum(l * xi for l, xi in zip(L, x)) > k:
                continue
            if all(sum(p * xi for p, xi in zip(phi, x)) >= 0 for phi in normals):
                total += 1
        return total

    est1 = Fraction(b) * count_dilated(K) / K ** b
    est2 = Fraction(b) * count_dilated(2 * K) / (2 * K) ** b
    return est1, est2


def _nullspace(rows, n):
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * bb for a, bb in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    out = []
    for fc in range(n):
        if fc in pivots:
            continue
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][fc]
        out.append(x)
    return out
