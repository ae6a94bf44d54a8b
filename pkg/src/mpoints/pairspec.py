"""Pairs: an ambient space, boundary divisors with Galois action, and a
family of allowed intersection multiplicities.

A pair is stored in expanded form: every geometric component of every
declared divisor gets its own slot, and multiplicity vectors live on the
slots.  Plain families (Campana, Darmon, weak Campana, k-free, integral)
constrain the per-divisor totals of a slot vector; geometric families
constrain each slot separately.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import exactlin

INF = math.inf


class ConfigError(Exception):
    """Invalid pair description."""


class SearchError(Exception):
    """A generator search failed to close inside its box."""


# ---------------------------------------------------------------------------
# ambient spaces

@dataclass(frozen=True)
class AmbientSpace:
    kind: str                      # "projective" | "toric"
    ncoords: int = 0               # projective: number of homogeneous coordinates
    rays: tuple = ()               # toric: primitive ray vectors
    max_cones: tuple = ()          # toric: tuples of ray indices

    @property
    def pic_rank(self) -> int:
        if self.kind == "projective":
            return 1
        return len(self.rays) - len(self.rays[0])

    @property
    def dim(self) -> int:
        if self.kind == "projective":
            return self.ncoords - 1
        return len(self.rays[0])


def _check_toric(rays, max_cones):
    if not rays:
        raise ConfigError("toric ambient needs rays")
    d = len(rays[0])
    if any(len(r) != d for r in rays):
        raise ConfigError("toric rays of inconsistent dimension")
    used = set()
    for mc in max_cones:
        if len(mc) != d:
            raise ConfigError("maximal cones of a smooth complete fan have dim = rank")
        sub = [rays[i] for i in mc]
        dd = exactlin.det(sub)
        if abs(dd) != 1:
            raise ConfigError("fan is not smooth: cone determinant %s" % dd)
        used.update(mc)
    if used != set(range(len(rays))):
        raise ConfigError("every ray must belong to some maximal cone")
    # completeness sanity check: every wall is shared by exactly two cones
    walls = {}
    for ci, mc in enumerate(max_cones):
        for w in itertools.combinations(sorted(mc), d - 1):
            walls.setdefault(w, []).append(ci)
    for w, owners in walls.items():
        if len(owners) != 2:
            raise ConfigError("fan does not look complete: wall %s in %d cones" % (w, len(owners)))


def projective_space(ncoords: int) -> AmbientSpace:
    if ncoords < 2:
        raise ConfigError("need at least 2 homogeneous coordinates")
    return AmbientSpace("projective", ncoords=ncoords)


def toric_space(rays, max_cones) -> AmbientSpace:
    rays = tuple(tuple(int(x) for x in r) for r in rays)
    max_cones = tuple(tuple(int(i) for i in mc) for mc in max_cones)
    _check_toric(rays, max_cones)
    return AmbientSpace("toric", rays=rays, max_cones=max_cones)


# ---------------------------------------------------------------------------
# divisors

@dataclass(frozen=True)
class DivisorSpec:
    name: str
    form: Optional[tuple] = None       # ((coeff, exponent-tuple), ...) over ambient coords
    degree: int = 0
    ray: Optional[int] = None          # toric: ray index
    k: int = 1                         # number of geometric components
    splitting: str = "none"            # "none" | "quadratic" | "abstract"
    quad_d: Optional[int] = None       # quadratic: the squarefree d of Q(sqrt d)
    component_form: Optional[tuple] = None  # quadratic: coefficients (a, b) meaning a + b*sqrt(d)


@dataclass(frozen=True)
class Component:
    """One geometric component of a declared divisor."""
    index: int            # global slot index
    name: str
    spec_index: int
    comp_index: int
    degree: Fraction      # projective: degree of this component
    ray: Optional[int]    # toric: ray index
    eform: Optional[tuple]  # linear form with coefficients (a, b) in Q(sqrt d); b = 0 if rational


def _check_form(spec: DivisorSpec, ncoords: int):
    if not spec.form:
        raise ConfigError("divisor %s has an empty form" % spec.name)
    for coeff, exps in spec.form:
        if len(exps) != ncoords:
            raise ConfigError("divisor %s: monomial arity mismatch" % spec.name)
        if sum(exps) != spec.degree:
            raise ConfigError("divisor %s: form is not homogeneous of degree %d"
                              % (spec.name, spec.degree))
    if all(c == 0 for c, _ in spec.form):
        raise ConfigError("divisor %s: zero form" % spec.name)


# ---------------------------------------------------------------------------
# multiplicity families

@dataclass(frozen=True)
class MultiplicityFamily:
    """Which multiplicity vectors are allowed, per declared divisor.

    m / k entries are indexed by the declared divisors; geometric families
    restate the condition on every geometric component separately.
    """
    variant: str                    # campana | darmon | weak_campana | kfree | integral | custom
    m: tuple = ()                   # campana/darmon/weak: per-divisor weights (int or INF)
    k: tuple = ()                   # kfree: per-divisor exponent caps
    subset: tuple = ()              # integral: divisor indices forced to multiplicity 0
    geometric: bool = False
    clauses: tuple = ()             # custom: disjunction of per-coordinate atom tuples
    sum_weights: Optional[tuple] = None  # custom: optional global sum constraint weights
    box: Optional[tuple] = None     # custom: search box override

    @property
    def arity(self) -> int:
        if self.variant in ("campana", "darmon", "weak_campana"):
            return len(self.m)
        if self.variant == "kfree":
            return len(self.k)
        if self.variant == "custom":
            return len(self.clauses[0]) if self.clauses else (
                len(self.sum_weights) if self.sum_weights else 0)
        return 0


def _divides(m, w) -> bool:
    # divisibility in N with the usual conventions at infinity
    if w == 0:
        return True
    if m is INF:
        return False        # only 0 is divisible by infinity
    if w is INF:
        return True         # infinity is divisible by every positive integer
    return w % m == 0


def membership(family: MultiplicityFamily, w) -> bool:
    """Does the vector of multiplicities satisfy the family's condition?

    The vector is indexed like the family: per declared divisor for the
    plain variants, per geometric component for geometric variants.
    Entries may be INF.
    """
    v = family.variant
    if v == "darmon":
        return all(_divides(mi, wi) for mi, wi in zip(family.m, w))
    if v == "campana":
        for mi, wi in zip(family.m, w):
            if mi is INF:
                if wi != 0:
                    return False
            elif not (wi == 0 or wi >= mi):
                return False
        return True
    if v == "weak_campana":
        for mi, wi in zip(family.m, w):
            if mi is INF and wi != 0:
                return False
        if all(wi == 0 for wi in w):
            return True
        total = Fraction(0)
        for mi, wi in zip(family.m, w):
            if mi is INF or mi == 1:
                continue    # weight-one components do not enter the sum
            if wi is INF:
                return True
            total += Fraction(wi, mi)
        return total >= 1
    if v == "kfree":
        return all(wi is not INF and wi <= ki for ki, wi in zip(family.k, w))
    if v == "integral":
        return all(w[i] == 0 for i in family.subset)
    if v == "custom":
        ok_clause = not family.clauses
        for clause in family.clauses:
            good = True
            for atom, wi in zip(clause, w):
                if atom[0] == "any":
                    continue
                if atom[0] == "eq0":
                    good = wi == 0
                elif atom[0] == "ge":
                    good = wi >= atom[1]
                elif atom[0] == "mod":
                    good = _divides(atom[1], wi)
                else:
                    raise ConfigError("unknown atom %r" % (atom,))
                if not good:
                    break
            if good:
                ok_clause = True
                break
        if not ok_clause:
            return False
        if family.sum_weights is not None:
            if all(wi == 0 for wi in w):
                return True
            total = Fraction(0)
            for mi, wi in zip(family.sum_weights, w):
                if wi is INF:
                    return True
                if mi is not INF and mi != 1:
                    total += Fraction(wi, mi)
            return total >= 1
        return True
    raise ConfigError("unknown family variant %r" % v)


# ---------------------------------------------------------------------------
# strata

@dataclass
class StrataTable:
    """Strata per support set of geometric components.

    mode "linear": components carry (possibly quadratic-irrational) linear
    forms; a support has a unique stratum exactly when its forms do not cut
    out the empty set.  mode "toric": supports are ray sets; the stratum is
    the orbit closure when the rays span a cone of the fan.  mode
    "general-position": forms are assumed independent, so a support of size
    s has a unique stratum iff s < number of coordinates.  mode "explicit":
    supports are looked up in a user table; singletons are always present.
    """
    mode: str
    ncoords: int = 0
    entries: dict = field(default_factory=dict)       # frozenset -> tuple of ids
    eforms: dict = field(default_factory=dict)        # slot -> E-linear coefficients
    quad_d: Optional[int] = None
    rays_of: dict = field(default_factory=dict)       # slot -> ray index
    max_cones: tuple = ()
    names: dict = field(default_factory=dict)         # slot -> component name

    def strata_of(self, support: frozenset):
        """Tuple of stratum ids for a support set, () when empty, None when unknown."""
        if not support:
            return None
        if len(support) == 1:
            return (self.names[next(iter(support))],)
        if support in self.entries:
            return self.entries[support]
        if self.mode == "explicit":
            return None
        ids = self._auto(support)
        self.entries[support] = ids
        return ids

    def _auto(self, support):
        key = ",".join(sorted(self.names[i] for i in support))
        if self.mode == "general-position":
            return ("s(%s)" % key,) if len(support) < self.ncoords else ()
        if self.mode == "toric":
            rays = sorted(self.rays_of[i] for i in support)
            for mc in self.max_cones:
                if set(rays) <= set(mc):
                    return ("s(%s)" % key,)
            return ()
        if self.mode == "linear":
            rows = [self.eforms[i] for i in sorted(support)]
            if any(r is None for r in rows):
                raise ConfigError(
                    "no automatic strata for support {%s}: missing linear data" % key)
            r = _erank(rows, self.quad_d)
            return ("s(%s)" % key,) if r < self.ncoords else ()
        raise ConfigError("unknown strata mode %r" % self.mode)

    def map_id(self, perm, support, sid):
        """Image of a stratum id under a permutation of the components."""
        new_support = frozenset(perm[i] for i in support)
        ids = self.strata_of(new_support)
        if ids is None or len(ids) == 0:
            raise ConfigError("Galois image of stratum %s has no stratum" % sid)
        if len(ids) == 1:
            return ids[0]
        old = self.strata_of(support)
        if old is not None and len(old) == len(ids) and sid in old and support == new_support:
            return sid
        raise ConfigError(
            "ambiguous Galois action on strata over support %s" % sorted(new_support))


def _erank(rows, d):
    """Rank of linear forms with entries a + b*sqrt(d); plain rational when d is None."""
    if d is None:
        return exactlin.rank([[a for a, _ in row] for row in rows])
    m = [[(Fraction(a), Fraction(b)) for a, b in row] for row in rows]

    def is0(x):
        return x[0] == 0 and x[1] == 0

    def mul(x, y):
        return (x[0] * y[0] + d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def sub(x, y):
        return (x[0] - y[0], x[1] - y[1])

    def inv(x):
        n = x[0] * x[0] - d * x[1] * x[1]
        return (x[0] / n, -x[1] / n)

    nr, nc = len(m), len(m[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if not is0(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pinv = inv(m[r][c])
        m[r] = [mul(pinv, x) for x in m[r]]
        for i in range(nr):
            if i != r and not is0(m[i][c]):
                f = m[i][c]
                m[i] = [sub(x, mul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
    return r


# ---------------------------------------------------------------------------
# the pair model

@dataclass
class GeneratorSet:
    elements: list   # [(w: tuple over slots, stratum id)]

    def vectors(self):
        seen = []
        for w, _ in self.elements:
            if w not in seen:
                seen.append(w)
        return seen


@dataclass
class PairModel:
    ambient: AmbientSpace
    specs: list                  # DivisorSpec, declaration order
    components: list             # Component, expansion order
    galois_gens: list            # permutations (tuples) on slot indices
    galois_order: int
    family: MultiplicityFamily
    strata: StrataTable
    exempt_primes: tuple
    proper: bool = False
    proper_weights: tuple = ()   # minimal d with d*e_slot allowed, or INF
    _gens: Optional[GeneratorSet] = None

    @property
    def nslots(self) -> int:
        return len(self.components)

    def slot_m(self):
        """Per-slot weight for the quasi-Campana variants (INF allowed)."""
        if self.family.variant in ("campana", "darmon", "weak_campana"):
            return tuple(self.family.m[c.spec_index] for c in self.components)
        if self.family.variant == "integral":
            return tuple(INF if c.spec_index in self.family.subset else 1
                         for c in self.components)
        raise ConfigError("family %r carries no weights" % self.family.variant)

    def is_quasi_campana(self) -> bool:
        return self.family.variant in ("campana", "darmon", "weak_campana")

    def slots_of_spec(self, j):
        return [c.index for c in self.components if c.spec_index == j]

    def member_expanded(self, w) -> bool:
        """Membership of a slot vector, aggregating per divisor for plain families."""
        fam = self.family
        if fam.variant == "custom":
            return membership(fam, w)
        if fam.geometric:
            # geometric variants restate the condition on every slot
            slotfam = MultiplicityFamily(fam.variant, m=self.slot_m())
            return membership(slotfam, w)
        if fam.variant == "integral":
            return all(w[i] == 0 for j in fam.subset for i in self.slots_of_spec(j))
        agg = []
        for j in range(len(self.specs)):
            tot = 0
            for i in self.slots_of_spec(j):
                if w[i] is INF:
                    tot = INF
                    break
                tot += w[i]
            agg.append(tot)
        return membership(fam, tuple(agg))

    def generator_set(self) -> GeneratorSet:
        if self._gens is None:
            self._gens = _compute_generators(self)
        return self._gens

    def act(self, perm, w):
        out = [0] * len(w)
        for i, wi in enumerate(w):
            out[perm[i]] = wi
        return tuple(out)

    def act_element(self, perm, element):
        w, sid = element
        support = frozenset(i for i, wi in enumerate(w) if wi > 0)
        return (self.act(perm, w), self.strata.map_id(perm, support, sid))


# ---------------------------------------------------------------------------
# generator computation

def _block_generators_plain(variant, m, k_):
    """Generators of the per-divisor total condition on k slots."""
    if variant == "darmon":
        if m is INF:
            return []
        return [w for w in _compositions(m, k_)]
    if variant == "campana":
        if m is INF:
            return []
        out = []
        for s in range(m, 2 * m):
            out.extend(_compositions(s, k_))
        return out
    raise ConfigError("no closed form for variant %r" % variant)


def _compositions(total, k_):
    if k_ == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, k_ - 1):
            out.append((first,) + rest)
    return out


def _embed(block, slots, n):
    w = [0] * n
    for v, i in zip(block, slots):
        w[i] = v
    return tuple(w)


def _compute_generator_vectors(pair: PairModel):
    fam = pair.family
    n = pair.nslots
    if fam.variant in ("darmon", "campana") and not fam.geometric:
        out = []
        for j, spec in enumerate(pair.specs):
            slots = pair.slots_of_spec(j)
            for block in _block_generators_plain(fam.variant, fam.m[j], len(slots)):
                out.append(_embed(block, slots, n))
        return out
    if fam.variant in ("darmon", "campana") and fam.geometric:
        out = []
        for c in pair.components:
            m = fam.m[c.spec_index]
            if m is INF:
                continue
            if fam.variant == "darmon":
                out.append(_embed((m,), [c.index], n))
            else:
                for s in range(m, 2 * m):
                    out.append(_embed((s,), [c.index], n))
        return out
    if fam.variant == "kfree":
        out = []
        for c in pair.components:
            if fam.k[c.spec_index] >= 1:
                out.append(_embed((1,), [c.index], n))
        return out
    if fam.variant == "integral":
        out = []
        bad = set(i for j in fam.subset for i in pair.slots_of_spec(j))
        for c in pair.components:
            if c.index not in bad:
                out.append(_embed((1,), [c.index], n))
        return out
    # weak Campana and custom families: exhaustive box search
    box = _search_box(pair)
    return _box_generators(pair.member_expanded, box)


def _search_box(pair: PairModel):
    fam = pair.family
    if fam.variant == "custom" and fam.box:
        return tuple(fam.box)
    consts = [1]
    if fam.variant == "custom":
        for clause in fam.clauses:
            for atom in clause:
                if len(atom) > 1 and atom[1] is not INF:
                    consts.append(int(atom[1]))
        if fam.sum_weights:
            consts.extend(int(x) for x in fam.sum_weights if x is not INF)
        cap = 2 * max(consts) + 2
        return tuple(cap for _ in range(pair.nslots))
    m = pair.slot_m()
    caps = []
    for mi in m:
        caps.append(0 if mi is INF else 2 * int(mi) + 2)
    return tuple(caps)


def _box_generators(member, box):
    """Minimal nonzero members inside the box: exhaustive scan plus a
    monoid-closure decomposition test.  Errors if minimality cannot be
    certified inside the box."""
    ranges = [range(b + 1) for b in box]
    elems = []
    for w in itertools.product(*ranges):
        if any(w) and member(w):
            elems.append(w)
    mon = set(elems)
    frontier = list(mon)
    while frontier:
        new = []
        for u in frontier:
            for v in elems:
                s = tuple(a + b for a, b in zip(u, v))
                if all(a <= b for a, b in zip(s, box)) and s not in mon:
                    mon.add(s)
                    new.append(s)
        frontier = new
    gens = []
    for w in elems:
        decomposable = False
        for u in mon:
            if all(a <= b for a, b in zip(u, w)):
                v = tuple(b - a for a, b in zip(u, w))
                if any(v) and any(u) and v in mon:
                    decomposable = True
                    break
        if not decomposable:
            if any(a == b and b > 0 for a, b in zip(w, box)):
                raise SearchError(
                    "generator search did not close inside the box %s" % (box,))
            gens.append(w)
    return gens


def _compute_generators(pair: PairModel) -> GeneratorSet:
    vectors = sorted(set(_compute_generator_vectors(pair)),
                     key=lambda w: (sum(1 for x in w if x), w))
    elements = []
    for w in vectors:
        support = frozenset(i for i, wi in enumerate(w) if wi > 0)
        ids = pair.strata.strata_of(support)
        if ids is None:
            raise ConfigError(
                "no strata entry for support {%s}"
                % ",".join(sorted(pair.components[i].name for i in support)))
        for sid in ids:
            elements.append((w, sid))
    return GeneratorSet(elements)


def generators(pair: PairModel) -> GeneratorSet:
    """Minimal finite multiplicity vectors, one element per stratum of each
    vector's support."""
    return pair.generator_set()


# ---------------------------------------------------------------------------
# generator reduction (boundary / vertex subsets of the monotone hull)

def _polyhedron_facets(points, n):
    """Facets of conv(points) + R_{>=0}^n via the homogenization cone."""
    gens = [tuple(p) + (1,) for p in points]
    gens += [tuple(1 if j == i else 0 for j in range(n)) + (0,) for i in range(n)]
    hom = exactlin.cone(gens, dim=n + 1)
    rays = hom.generators
    normals = exactlin._facet_normals_fulldim(rays, n + 1)
    out = []
    for phi in normals:
        if all(x == 0 for x in phi[:n]):
            continue  # the face at infinity
        out.append(phi)
    return out


def reduce_generators(gens: GeneratorSet, pair: PairModel):
    """Boundary and vertex subsets of the generator set.

    Per stratum c, the polyhedron conv(generator vectors at c) + positive
    orthant is computed; an element survives in the boundary subset when it
    sits on a facet of its stratum's polyhedron, and in the vertex subset
    when it is a vertex of it.  Both subsets define pairs with the same
    Fujita invariant; the boundary subset also preserves the b-invariant.
    """
    if not gens.elements:
        return GeneratorSet([]), GeneratorSet([])
    n = pair.nslots
    by_stratum = {}
    for w, sid in gens.elements:
        by_stratum.setdefault(sid, []).append(w)
    facets = {sid: _polyhedron_facets(sorted(set(pts)), n)
              for sid, pts in by_stratum.items()}
    boundary, vertices = [], []
    for w, sid in gens.elements:
        tight = [phi for phi in facets[sid]
                 if exactlin.dot(phi, tuple(w) + (1,)) == 0]
        if tight:
            boundary.append((w, sid))
            if exactlin.rank([phi[:n] for phi in tight]) == n:
                vertices.append((w, sid))
    return GeneratorSet(boundary), GeneratorSet(vertices)


def _tiny_prime_factors(n: int):
    n = abs(n)
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def effective_exempt_primes(pair: PairModel) -> tuple:
    """Declared exemption primes plus the primes where the divisor data
    degenerates: ramified primes of quadratic splittings and content primes
    of the forms.  Counting always works relative to this set."""
    S = set(pair.exempt_primes)
    for spec in pair.specs:
        if spec.quad_d is not None:
            S |= _tiny_prime_factors(2 * spec.quad_d)
        if spec.form:
            from math import gcd
            g = 0
            for coeff, _ in spec.form:
                g = gcd(g, coeff)
            if g > 1:
                S |= _tiny_prime_factors(g)
    return tuple(sorted(S))


# ---------------------------------------------------------------------------
# group orbits

def close_group(gens, identity_n):
    """All permutations generated by the given ones (tuples composing as maps)."""
    ident = tuple(range(identity_n))
    group = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens]
    while frontier:
        new = []
        for g in frontier:
            for h in gens:
                comp = tuple(h[g[i]] for i in range(identity_n))
                if comp not in group:
                    group.add(comp)
                    new.append(comp)
        frontier = new
    return sorted(group)


def galois_orbits(elements, pair: PairModel, act=None):
    """Orbit count and explicit orbits of the Galois action on the elements.

    The Burnside average of fixed points over the full group is computed as
    a cross-check and must agree with the partition length.
    """
    if act is None:
        def act(perm, el):
            if isinstance(el, tuple) and len(el) == 2 and isinstance(el[1], str):
                return pair.act_element(perm, el)
            return pair.act(perm, el)
    group = close_group(pair.galois_gens, pair.nslots)
    if pair.galois_order != len(group):
        raise ConfigError("declared Galois order %d but generated group has %d elements"
                          % (pair.galois_order, len(group)))
    elset = list(elements)
    index = {el: i for i, el in enumerate(elset)}
    for perm in group:
        for el in elset:
            img = act(perm, el)
            if img not in index:
                raise ConfigError("Galois action does not preserve the element list: "
                                  "%r -> %r" % (el, img))
    # explicit partition
    seen = set()
    orbits = []
    for el in elset:
        if el in seen:
            continue
        orbit = set()
        frontier = [el]
        while frontier:
            x = frontier.pop()
            if x in orbit:
                continue
            orbit.add(x)
            for perm in pair.galois_gens:
                frontier.append(act(perm, x))
        if not pair.galois_gens:
            orbit = {el}
        orbits.append(sorted(orbit, key=lambda e: elset.index(e)))
        seen |= orbit
    # Burnside
    total_fixed = 0
    for perm in group:
        total_fixed += sum(1 for el in elset if act(perm, el) == el)
    burnside, rem = divmod(total_fixed, len(group))
    if rem != 0 or burnside != len(orbits):
        raise ConfigError("Burnside count %s/%s disagrees with orbit partition %d"
                          % (total_fixed, len(group), len(orbits)))
    return burnside, orbits


# ---------------------------------------------------------------------------
# building a pair from a config dictionary

def _parse_m(value):
    if value in ("inf", "Inf", "INF", None):
        return INF
    v = int(value)
    if v < 1:
        raise ConfigError("multiplicity weights must be >= 1")
    return v


def _parse_family(d, nspecs) -> MultiplicityFamily:
    variant = d.get("variant")
    geometric = bool(d.get("geometric", False))
    if geometric and variant not in ("campana", "darmon"):
        raise ConfigError("geometric variants exist for Campana and Darmon conditions only")
    if variant in ("campana", "darmon", "weak_campana"):
        m = tuple(_parse_m(x) for x in d["m"])
        if len(m) != nspecs:
            raise ConfigError("family weight count != divisor count")
        return MultiplicityFamily(variant, m=m, geometric=geometric)
    if variant == "kfree":
        k = tuple(int(x) for x in d["k"])
        if len(k) != nspecs or any(x < 1 for x in k):
            raise ConfigError("kfree needs one cap >= 1 per divisor")
        return MultiplicityFamily("kfree", k=k)
    if variant == "integral":
        subset = tuple(sorted(int(x) for x in d.get("subset", range(nspecs))))
        if any(not (0 <= i < nspecs) for i in subset):
            raise ConfigError("integral subset out of range")
        return MultiplicityFamily("integral", subset=subset)
    if variant == "custom":
        clauses = tuple(tuple(tuple(a) if isinstance(a, (list, tuple)) else (a,)
                              for a in clause) for clause in d.get("clauses", ()))
        sw = d.get("sum_weights")
        sw = tuple(_parse_m(x) for x in sw) if sw else None
        box = tuple(int(x) for x in d["box"]) if d.get("box") else None
        return MultiplicityFamily("custom", clauses=clauses, sum_weights=sw, box=box)
    raise ConfigError("unknown family variant %r" % variant)


def build_pair(config: dict) -> PairModel:
    """Validate a config document and expand it into a PairModel."""
    amb = config.get("ambient", {})
    if amb.get("type") == "projective":
        ambient = projective_space(int(amb["coords"]))
    elif amb.get("type") == "toric":
        ambient = toric_space(amb["rays"], amb["max_cones"])
    else:
        raise ConfigError("ambient.type must be projective or toric")

    specs = []
    for j, dd in enumerate(config.get("divisors", [])):
        splitting = dd.get("splitting", {"type": "none"})
        sname = splitting.get("type", "none")
        k = int(dd.get("components", 1))
        if sname == "none" and k != 1:
            raise ConfigError("divisor %s: several components need a declared splitting"
                              % dd.get("name"))
        spec = DivisorSpec(
            name=dd.get("name", "D%d" % j),
            form=tuple((int(c), tuple(int(e) for e in exps)) for c, exps in dd["form"])
            if "form" in dd else None,
            degree=int(dd.get("degree", 0)),
            ray=int(dd["ray"]) if "ray" in dd else None,
            k=k,
            splitting=sname,
            quad_d=int(splitting["d"]) if sname == "quadratic" else None,
            component_form=tuple((Fraction(a), Fraction(b))
                                 for a, b in dd["component_form"])
            if dd.get("component_form") else None,
        )
        if ambient.kind == "projective":
            if spec.form is None:
                raise ConfigError("projective divisor %s needs a form" % spec.name)
            _check_form(spec, ambient.ncoords)
        else:
            if spec.ray is None:
                raise ConfigError("toric divisor %s needs a ray index" % spec.name)
            if not (0 <= spec.ray < len(ambient.rays)):
                raise ConfigError("divisor %s: ray index out of range" % spec.name)
        if sname == "quadratic" and k != 2:
            raise ConfigError("quadratic splitting means exactly 2 components")
        specs.append(spec)
    if len({s.ray for s in specs if s.ray is not None}) != len([s for s in specs if s.ray is not None]):
        raise ConfigError("repeated toric ray among divisors")

    # expand geometric components, declaration order then component index
    components = []
    for j, spec in enumerate(specs):
        for t in range(spec.k):
            eform = None
            if ambient.kind == "projective":
                if spec.k == 1 and spec.degree == 1:
                    coeffs = [Fraction(0)] * ambient.ncoords
                    for c, exps in spec.form:
                        coeffs[exps.index(1)] += c
                    eform = tuple((a, Fraction(0)) for a in coeffs)
                elif spec.splitting == "quadratic" and spec.component_form:
                    sign = 1 if t == 0 else -1
                    eform = tuple((a, sign * b) for a, b in spec.component_form)
            deg = Fraction(spec.degree, spec.k) if ambient.kind == "projective" else Fraction(0)
            components.append(Component(
                index=len(components),
                name=spec.name if spec.k == 1 else "%s.%d" % (spec.name, t),
                spec_index=j,
                comp_index=t,
                degree=deg,
                ray=spec.ray,
                eform=eform,
            ))

    family = _parse_family(config.get("family", {}), len(specs))

    if not membership(family, tuple(0 for _ in range(max(family.arity, 1)))) \
            and family.variant == "custom":
        raise ConfigError("the zero vector must always be allowed")

    # strata table
    strata_cfg = config.get("strata", "auto")
    quad_ds = {s.quad_d for s in specs if s.quad_d is not None}
    if len(quad_ds) > 1:
        raise ConfigError("several distinct quadratic splitting fields; use explicit strata")
    quad_d = quad_ds.pop() if quad_ds else None
    names = {c.index: c.name for c in components}
    if strata_cfg == "auto":
        if ambient.kind == "toric":
            strata = StrataTable("toric", rays_of={c.index: c.ray for c in components},
                                 max_cones=ambient.max_cones, names=names)
        else:
            strata = StrataTable("linear", ncoords=ambient.ncoords,
                                 eforms={c.index: c.eform for c in components},
                                 quad_d=quad_d, names=names)
    elif strata_cfg == "general-position":
        strata = StrataTable("general-position",
                             ncoords=ambient.ncoords if ambient.kind == "projective"
                             else len(components) + 1,
                             names=names)
    else:
        byname = {c.name: c.index for c in components}
        entries = {}
        for e in strata_cfg:
            sup = frozenset(byname[nm] for nm in e["support"])
            entries[sup] = tuple(e["strata"])
        strata = StrataTable("explicit", ncoords=getattr(ambient, "ncoords", 0),
                             entries=entries, names=names)

    # Galois data
    gal = config.get("galois", {"order": 1, "generators": []})
    perms = [tuple(int(x) for x in p) for p in gal.get("generators", [])]
    for p in perms:
        if sorted(p) != list(range(len(components))):
            raise ConfigError("Galois generator is not a permutation of the components")
    order = int(gal.get("order", 1))

    pair = PairModel(
        ambient=ambient,
        specs=specs,
        components=components,
        galois_gens=perms,
        galois_order=order,
        family=family,
        strata=strata,
        exempt_primes=tuple(sorted(set(int(p) for p in config.get("exempt_primes", [])))),
    )

    group = close_group(perms, len(components))
    if len(group) != order:
        raise ConfigError("declared Galois order %d but group has %d elements"
                          % (order, len(group)))

    # the action must respect the per-component multiplicity data
    slot_data = []
    for c in components:
        fam = family
        if fam.variant in ("campana", "darmon", "weak_campana"):
            slot_data.append((fam.variant, fam.m[c.spec_index], fam.geometric))
        elif fam.variant == "kfree":
            slot_data.append(("kfree", fam.k[c.spec_index], False))
        elif fam.variant == "integral":
            slot_data.append(("integral", c.spec_index in fam.subset, False))
        else:
            slot_data.append(("custom", None, False))
    for perm in perms:
        for i in range(len(components)):
            if slot_data[perm[i]] != slot_data[i]:
                raise ConfigError("Galois action does not preserve the multiplicity data")

    # properness: minimal d with d*e_slot allowed
    weights = []
    cap = 2 * max([int(x) for x in _search_box(pair)] + [2]) + 2 \
        if family.variant in ("custom",) else None
    for c in components:
        d_found = INF
        limit = cap if cap is not None else 2 * max(
            [int(mi) for mi in (pair.slot_m() if pair.is_quasi_campana() else (1,))
             if mi is not INF] + [1]) + 2
        if family.variant == "kfree":
            limit = 2
        if family.variant == "integral":
            limit = 2
        for d_try in range(1, int(limit) + 1):
            w = tuple(d_try if i == c.index else 0 for i in range(len(components)))
            if pair.member_expanded(w):
                d_found = d_try
                break
        weights.append(d_found)
    pair.proper_weights = tuple(weights)
    pair.proper = all(w is not INF for w in weights)

    # generators must exist and the action must preserve them (checks strata too)
    gens = pair.generator_set()
    elset = set(gens.elements)
    for perm in perms:
        for el in gens.elements:
            img = pair.act_element(perm, el)
            if img not in elset:
                raise ConfigError("Galois action does not preserve the generator set")
    return pair
