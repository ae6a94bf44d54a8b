"""Picard presentations and asymptotic-growth invariants of pairs.

The Picard group of a pair is presented with one generator per ambient
Picard basis class plus one per Galois orbit of the multiplicity
generators, and one relation per Galois orbit of boundary components
(the pullback of the orbit's ambient class equals the orbit-summed
multiplicities).  All cone geometry happens in the free quotient, with
volumes normalized to the quotient lattice; torsion only enters through
its order.

The effective cone is generated by the orbit classes, the strict
transforms of the boundary divisors (zero classes by construction), and
the pullbacks of the ambient effective generators moved off all strata.
This generating assumption is recorded in every report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import exactlin, pairspec
from .exactlin import MINUS_INF, PLUS_INF, RationalCone
from .pairspec import INF, PairModel, close_group, galois_orbits


class InvariantError(Exception):
    pass


class InternalInconsistency(InvariantError):
    """A cross-check between two routes to the same quantity failed."""


# ---------------------------------------------------------------------------
# ambient Picard data

@dataclass
class AmbientPic:
    n: int                       # rank of the ambient Picard group
    comp_class: list             # per slot: ambient coordinates of the component
    eff: list                    # [(label, coords, movable)] generators off the boundary
    all_eff: list                # generators of the full ambient effective cone
    kx: tuple                    # coordinates of the canonical class
    eff_cone: RationalCone = None

    def cone(self) -> RationalCone:
        """The ambient effective cone (all generators, boundary included)."""
        if self.eff_cone is None:
            self.eff_cone = exactlin.cone(self.all_eff, dim=self.n)
        return self.eff_cone


def ambient_pic(pair: PairModel) -> AmbientPic:
    amb = pair.ambient
    if amb.kind == "projective":
        comp_class = []
        for c in pair.components:
            comp_class.append((Fraction(c.degree),))
        eff = [("H", (Fraction(1),), True)]
        return AmbientPic(1, comp_class, eff, [(Fraction(1),)],
                          (Fraction(-amb.ncoords),))
    # toric: Z^rays modulo the character lattice
    rays = amb.rays
    d = len(rays[0])
    relations = [[rays[i][j] for i in range(len(rays))] for j in range(d)]
    rank, tors, proj = exactlin.quotient_lattice(relations, len(rays))
    if tors:
        raise InvariantError("toric ambient Picard group has torsion; fan not smooth?")
    classes = [tuple(Fraction(proj[i][j]) for j in range(rank))
               for i in range(len(rays))]
    comp_class = [classes[c.ray] for c in pair.components]
    boundary_rays = {c.ray for c in pair.components}
    eff = []
    for i in range(len(rays)):
        if i in boundary_rays:
            continue
        eff.append(("T%d" % i, classes[i], False))
    kx = tuple(-sum(classes[i][j] for i in range(len(rays))) for j in range(rank))
    return AmbientPic(rank, comp_class, eff, classes, kx)


# ---------------------------------------------------------------------------
# presentations

@dataclass
class PicPresentation:
    pair: PairModel
    ambient: AmbientPic
    labels: list                 # ambient labels + orbit labels
    n_ambient: int
    orbit_reps: list             # representative (w, sid) per orbit coordinate
    orbits: list                 # the full orbits
    relations: list              # integer rows over the labels
    rank: int
    invariant_factors: list      # torsion diagonal entries > 1
    torsion_order: int
    proj: list                   # N x rank integer free projection
    eff_entries: list = field(default_factory=list)  # [(label, free vector)]
    _cone: Optional[RationalCone] = None

    @property
    def N(self) -> int:
        return self.n_ambient + len(self.orbit_reps)

    def free(self, raw):
        """Coordinates of a presentation vector in the free quotient."""
        return tuple(sum(Fraction(raw[i]) * self.proj[i][j] for i in range(self.N))
                     for j in range(self.rank))

    def pullback(self, ambient_coords):
        """Raw presentation vector of a class pulled back from the ambient
        space via a representative missing all strata."""
        return tuple(Fraction(x) for x in ambient_coords) + \
            tuple(Fraction(0) for _ in self.orbit_reps)

    def orbit_vector(self, k):
        raw = [Fraction(0)] * self.N
        raw[self.n_ambient + k] = Fraction(1)
        return tuple(raw)

    def eff_cone(self) -> RationalCone:
        if self._cone is None:
            self._cone = exactlin.cone([v for _, v in self.eff_entries],
                                       dim=self.rank)
        return self._cone

    def labels_of(self, vector) -> list:
        key = exactlin.primitive(vector)
        return sorted(lbl for lbl, v in self.eff_entries
                      if exactlin.primitive(v) == key)


def _orbit_label(orbit):
    w, sid = min(orbit)
    return "G[%s@%s]" % (",".join(str(x) for x in w), sid)


def pic_presentation(pair: PairModel, gamma=None, allow_improper=False) -> PicPresentation:
    """Finitely presented Picard group of the pair.

    One generator per ambient basis class and per Galois orbit of the
    generator set, one relation per boundary-component orbit.  The rank is
    cross-checked against the orbit-count formula for proper pairs.
    """
    if not pair.proper and not allow_improper:
        raise InvariantError("pair is not proper; the presentation needs d_i e_i "
                             "elements for every component")
    amb = ambient_pic(pair)
    gens = pair.generator_set() if gamma is None else gamma
    elements = list(gens.elements)
    if elements:
        _, orbits = galois_orbits(elements, pair)
    else:
        orbits = []
    orbits = sorted(orbits, key=lambda o: min(o))
    orbit_reps = [min(o) for o in orbits]
    orbit_index = {}
    for k, o in enumerate(orbits):
        for el in o:
            orbit_index[el] = k

    comp_orbits = _component_orbits(pair)
    relations = []
    for O in comp_orbits:
        lhs = [sum(amb.comp_class[i][j] for i in O) for j in range(amb.n)]
        row = []
        for x in lhs:
            if Fraction(x).denominator != 1:
                raise InvariantError("boundary orbit class is not integral")
            row.append(int(x))
        coeffs = []
        for k, orbit in enumerate(orbits):
            w, sid = orbit[0]
            s = sum(w[i] for i in O)
            for w2, _ in orbit[1:]:
                if sum(w2[i] for i in O) != s:
                    raise InternalInconsistency(
                        "orbit-summed multiplicity is not Galois invariant")
            coeffs.append(s)
        relations.append(row + [-s for s in coeffs])

    N = amb.n + len(orbits)
    rank, tors, proj = exactlin.quotient_lattice(relations, N)
    torsion_order = 1
    for t in tors:
        torsion_order *= t

    pres = PicPresentation(
        pair=pair, ambient=amb,
        labels=[lbl for lbl, _, _ in amb.eff][:0] + ["A%d" % j for j in range(amb.n)]
        + [_orbit_label(o) for o in orbits],
        n_ambient=amb.n,
        orbit_reps=orbit_reps, orbits=orbits,
        relations=relations, rank=rank,
        invariant_factors=list(tors), torsion_order=torsion_order,
        proj=proj,
    )

    if pair.proper and gamma is None:
        expected = amb.n + len(orbits) - len(comp_orbits)
        if rank != expected:
            raise InternalInconsistency(
                "rank %d does not match the orbit-count formula %d" % (rank, expected))
        # the pullback from the ambient Picard group must be injective
        amb_rows = [pres.free(pres.pullback(
            tuple(1 if j == i else 0 for j in range(amb.n)))) for i in range(amb.n)]
        if exactlin.rank(amb_rows) != amb.n:
            raise InternalInconsistency("pullback map has a kernel on a proper pair")

    # effective cone generators: orbit classes + movable ambient generators;
    # strict transforms of the boundary divisors are zero by the relations
    eff = []
    for k, orbit in enumerate(orbits):
        vec = pres.free(pres.orbit_vector(k))
        if any(x != 0 for x in vec):
            eff.append((_orbit_label(orbits[k]), vec))
    for lbl, coords, movable in amb.eff:
        vec = pres.free(pres.pullback(coords))
        if any(x != 0 for x in vec):
            eff.append(("pr*" + lbl, vec))
    pres.eff_entries = eff
    return pres


def _component_orbits(pair: PairModel):
    group = close_group(pair.galois_gens, pair.nslots)
    seen = set()
    orbits = []
    for i in range(pair.nslots):
        if i in seen:
            continue
        orbit = sorted({perm[i] for perm in group})
        orbits.append(orbit)
        seen.update(orbit)
    return orbits


# ---------------------------------------------------------------------------
# classes on the pair

def pullback_class(pres: PicPresentation, class_on_x):
    """Pullback of an ambient class, via a representative missing all strata."""
    return pres.pullback(class_on_x)


def canonical_class(pres: PicPresentation):
    """K_(pair) = pullback(K_X + sum of boundary classes) - sum of orbit classes."""
    amb = pres.ambient
    total = list(amb.kx)
    for O in _component_orbits(pres.pair):
        for j in range(amb.n):
            total[j] += sum(amb.comp_class[i][j] for i in O)
    raw = list(pres.pullback(tuple(total)))
    for k in range(len(pres.orbit_reps)):
        raw[pres.n_ambient + k] -= 1
    return tuple(raw)


def log_canonical_class(pair: PairModel):
    """K_X + sum (1 - 1/m_i) [component_i] in ambient coordinates.

    Only defined for the quasi-Campana variants; other families may have no
    best pulled-back approximation of the canonical class at all.
    """
    if not pair.is_quasi_campana():
        raise InvariantError("family %r has no log-canonical class"
                             % pair.family.variant)
    amb = ambient_pic(pair)
    m = pair.slot_m()
    total = list(amb.kx)
    for i, c in enumerate(pair.components):
        coeff = Fraction(1) if m[i] is INF else Fraction(1) - Fraction(1, int(m[i]))
        for j in range(amb.n):
            total[j] += coeff * amb.comp_class[i][j]
    return tuple(total)


def mu_linear(w, stratum_forms, divisor_form):
    """Multiplicity of a linear divisor along a multiplicity vector at a
    stratum cut out by linear forms.

    The stratum is the common zero locus of the given independent linear
    forms, weighted by w; if the divisor form vanishes on the stratum it is
    an exact combination of the defining forms and the value is
    gcd(w) * min of the normalized weights over the combination's support.
    """
    forms = [tuple(Fraction(x) for x in f) for f in stratum_forms]
    g = tuple(Fraction(x) for x in divisor_form)
    if len(w) != len(forms):
        raise InvariantError("one weight per defining form")
    sol = exactlin.solve_linear(forms, g)
    if sol is None:
        return 0
    gg = 0
    for x in w:
        gg = math.gcd(gg, int(x))
    if gg == 0:
        return 0
    normalized = [int(x) // gg for x in w]
    support = [normalized[i] for i, lam in enumerate(sol) if lam != 0]
    if not support:
        return 0
    return gg * min(support)


# ---------------------------------------------------------------------------
# Fujita invariant, b-invariant, rigidity

def fujita_invariant(pres: PicPresentation, L):
    """min t with t * pullback(L) + K in the effective cone; exact LP."""
    base = pres.free(canonical_class(pres))
    direction = pres.free(pres.pullback(L))
    return exactlin.min_parameter_in_cone(pres.eff_cone(), base, direction)


def fujita_via_log_canonical(pair: PairModel, L):
    """Ambient-side computation of the Fujita invariant for quasi-Campana
    pairs: min t with t L + K_log effective on the ambient space."""
    amb = ambient_pic(pair)
    klog = log_canonical_class(pair)
    return exactlin.min_parameter_in_cone(amb.cone(), klog, tuple(Fraction(x) for x in L))


def adjoint_class(pres: PicPresentation, L, a):
    raw_k = canonical_class(pres)
    raw_l = pres.pullback(L)
    return tuple(Fraction(k) + Fraction(a) * Fraction(l) for k, l in zip(raw_k, raw_l))


def b_invariant(pres: PicPresentation, L, a=None):
    """Codimension of the minimal face of the effective cone at the adjoint
    class, plus the ambient-side decomposition when available.

    Returns (b, face_labels, decomposition|None).
    """
    if a is None:
        a = fujita_invariant(pres, L)
    if a in (PLUS_INF, MINUS_INF):
        raise InvariantError("Fujita invariant is not finite")
    adj = pres.free(adjoint_class(pres, L, a))
    cone = pres.eff_cone()
    if not cone.contains(adj):
        raise InternalInconsistency("adjoint class is outside the effective cone")
    face, codim = exactlin.minimal_face(cone, adj)
    labels = []
    for v in face:
        labels.extend(pres.labels_of(v))
    b = codim
    decomposition = None
    if pres.pair.is_quasi_campana():
        decomposition = _quasi_campana_decomposition(pres, L, a)
        if decomposition is not None and decomposition["b"] != b:
            raise InternalInconsistency(
                "face codimension %d disagrees with the ambient decomposition %d"
                % (b, decomposition["b"]))
    return b, sorted(set(labels)), decomposition


def _quasi_campana_decomposition(pres: PicPresentation, L, a):
    """b = (ambient-side codimension) + (number of balanced orbits whose
    support stays off the ambient minimal face), when the ambient minimal
    face lies in the cone of the boundary classes."""
    pair = pres.pair
    amb = pres.ambient
    klog = log_canonical_class(pair)
    adj_x = tuple(Fraction(k) + Fraction(a) * Fraction(l) for k, l in zip(klog, L))
    cone_x = amb.cone()
    if not cone_x.contains(adj_x):
        raise InternalInconsistency("ambient adjoint class is not effective")
    face, codim = exactlin.minimal_face(cone_x, adj_x)
    b_base = codim
    boundary_cone = exactlin.cone(
        [cls for cls in amb.comp_class] or [tuple(Fraction(0) for _ in range(amb.n))],
        dim=amb.n)
    for v in face:
        if not boundary_cone.contains(v):
            return None   # precondition of the decomposition fails
    face_cone = exactlin.cone(face or [tuple(Fraction(0) for _ in range(amb.n))],
                              dim=amb.n)
    m = pair.slot_m()
    in_face = [face and face_cone.contains(amb.comp_class[i])
               for i in range(pair.nslots)]
    count = 0
    members = []
    for k, orbit in enumerate(pres.orbits):
        w, sid = orbit[0]
        total = Fraction(0)
        ok = True
        for i, wi in enumerate(w):
            if wi == 0:
                continue
            if m[i] is INF:
                ok = False
                break
            total += Fraction(wi, int(m[i]))
        if not ok or total != 1:
            continue
        if any(w[i] == int(m[i]) and all(x == 0 for j, x in enumerate(w) if j != i)
               for i in range(len(w)) if m[i] is not INF):
            continue
        if any(in_face[i] for i in range(len(w)) if w[i] > 0):
            continue
        count += 1
        members.append(orbit[0])
    return {"b_base": b_base, "shift": count, "b": b_base + count,
            "members": members}


def adjoint_rigid(pres: PicPresentation, L, a=None):
    """Is the adjoint class represented by a unique effective divisor?

    Decided on the coefficient polytope over the effective generating set;
    a unique solution with movable ambient content is not rigid.  For
    quasi-Campana pairs the ambient-side shortcut must agree.
    """
    if a is None:
        a = fujita_invariant(pres, L)
    if a in (PLUS_INF, MINUS_INF) or Fraction(a) <= 0:
        raise InvariantError("adjoint rigidity needs a finite positive Fujita invariant")
    adj = pres.free(adjoint_class(pres, L, a))
    point = _unique_cone_coefficients(pres, adj)
    if point is None:
        rigid = False
    else:
        rigid = True
        for (lbl, _), val in zip(pres.eff_entries, point):
            if lbl.startswith("pr*") and val > 0:
                movable = dict((l, mv) for l, _, mv in pres.ambient.eff)
                if movable.get(lbl[3:], False):
                    rigid = False
                else:
                    raise InvariantError(
                        "rigidity with immovable ambient content is undecided")
    if pres.pair.is_quasi_campana() and pres.pair.ambient.kind == "projective":
        klog = log_canonical_class(pres.pair)
        adj_x = tuple(Fraction(k) + Fraction(a) * Fraction(l)
                      for k, l in zip(klog, L))
        shortcut = all(x == 0 for x in adj_x)
        if shortcut != rigid:
            raise InternalInconsistency(
                "rigidity shortcut %s disagrees with the coefficient test %s"
                % (shortcut, rigid))
    return rigid


def _unique_cone_coefficients(pres: PicPresentation, target):
    """The unique nonnegative coefficient vector writing target in the
    effective generators, or None if there are several (or none)."""
    vecs = [v for _, v in pres.eff_entries]
    n = len(vecs)
    A = [[Fraction(vecs[j][i]) for j in range(n)] for i in range(pres.rank)]
    rhs = list(target)
    status, x0, _ = exactlin.lp_solve(A, rhs, [Fraction(0)] * n)
    if status != "optimal":
        raise InvariantError("adjoint class has no effective representative")
    point = list(x0)
    for j in range(n):
        for sign in (1, -1):
            obj = [Fraction(0)] * n
            obj[j] = Fraction(sign)
            status, _, val = exactlin.lp_solve(A, rhs, obj)
            if status != "optimal":
                raise InternalInconsistency("bounded representative polytope expected")
            if sign == 1 and val != point[j]:
                return None
            if sign == -1 and -val != point[j]:
                return None
    return tuple(point)


# ---------------------------------------------------------------------------
# restriction to the adjoint-free locus and the alpha constants

def restricted_presentation(pres: PicPresentation, L, a=None):
    """Presentation of the pair with the adjoint-supported generators
    dropped (and ambient classes in the support killed)."""
    if a is None:
        a = fujita_invariant(pres, L)
    adj = pres.free(adjoint_class(pres, L, a))
    point = _unique_cone_coefficients(pres, adj)
    if point is None:
        raise InvariantError("adjoint class is not rigid; no restricted pair")
    drop_orbits = set()
    kill_ambient = []
    for (lbl, vec), val in zip(pres.eff_entries, point):
        if val > 0:
            if lbl.startswith("pr*"):
                kill_ambient.append(lbl[3:])
            else:
                drop_orbits.add(lbl)
    keep_elements = []
    for k, orbit in enumerate(pres.orbits):
        if _orbit_label(orbit) not in drop_orbits:
            keep_elements.extend(orbit)
    gamma = pairspec.GeneratorSet(keep_elements)
    sub = pic_presentation(pres.pair, gamma=gamma, allow_improper=True)
    if kill_ambient:
        amb = sub.ambient
        extra = []
        for lbl, coords, _ in amb.eff:
            if lbl in kill_ambient:
                row = [int(x) for x in coords] + [0] * len(sub.orbit_reps)
                extra.append(row)
        relations = sub.relations + extra
        rank, tors, proj = exactlin.quotient_lattice(relations, sub.N)
        sub.relations = relations
        sub.rank = rank
        sub.invariant_factors = list(tors)
        sub.torsion_order = 1
        for t in tors:
            sub.torsion_order *= t
        sub.proj = proj
        sub._cone = None
        eff = []
        for k, orbit in enumerate(sub.orbits):
            vec = sub.free(sub.orbit_vector(k))
            if any(x != 0 for x in vec):
                eff.append((_orbit_label(orbit), vec))
        for lbl, coords, movable in amb.eff:
            if lbl in kill_ambient:
                continue
            vec = sub.free(sub.pullback(coords))
            if any(x != 0 for x in vec):
                eff.append(("pr*" + lbl, vec))
        sub.eff_entries = eff
    return sub


def alpha_constant(pres: PicPresentation, L, a=None, b=None):
    """Exponential-integral alpha constant and its slice-volume variant.

    alpha = integral of exp(-<pullback L, x>) over the dual effective cone
    of the restricted pair, divided by the torsion order; alpha_peyre is
    the level-one slice volume divided by a * torsion, so that
    alpha = a * (b-1)! * alpha_peyre exactly.
    """
    if a is None:
        a = fujita_invariant(pres, L)
    if b is None:
        b, _, _ = b_invariant(pres, L, a)
    sub = restricted_presentation(pres, L, a)
    if sub.rank != b:
        raise InternalInconsistency(
            "restricted Picard rank %d does not equal the b-invariant %d"
            % (sub.rank, b))
    lam = sub.eff_cone()
    dual = exactlin.dual_cone(lam)
    lvec = sub.free(sub.pullback(L))
    integral = exactlin.exponential_cone_integral(dual, lvec)
    if integral == exactlin.DIVERGES:
        raise InvariantError("alpha integral diverges; L is not big on the pair")
    alpha = Fraction(integral) / sub.torsion_order
    vol = exactlin.slice_volume(dual, lvec)
    alpha_peyre = Fraction(vol) / (Fraction(a) * sub.torsion_order)
    if alpha != Fraction(a) * math.factorial(b - 1) * alpha_peyre:
        raise InternalInconsistency("alpha identity failed")
    return alpha, alpha_peyre, sub


# ---------------------------------------------------------------------------
# balanced boundary tuples (the log-power shift sets)

def balanced_boundary_tuples(pair: PairModel, adjoint_support=()):
    """Orbit counts of the balanced multiplicity tuples.

    A balanced tuple has total weight sum w_i/m_i = 1, is not an axis
    vector m_i e_i, vanishes on the adjoint-support components, and comes
    with a stratum of its support.  The "clustered" subset consists of the
    tuples whose support lies inside a single Galois orbit of components;
    it carries the log-power shift of the rational over the geometric
    condition.
    """
    if not pair.is_quasi_campana():
        raise InvariantError("balanced tuples need a quasi-Campana family")
    m = pair.slot_m()
    n = pair.nslots
    support_forbidden = set(adjoint_support)
    ranges = []
    for i in range(n):
        if m[i] is INF or i in support_forbidden:
            ranges.append((0,))
        else:
            ranges.append(tuple(range(int(m[i]) + 1)))
    elements = []
    import itertools as _it
    for w in _it.product(*ranges):
        total = Fraction(0)
        for i, wi in enumerate(w):
            if wi:
                total += Fraction(wi, int(m[i]))
        if total != 1:
            continue
        support = [i for i, wi in enumerate(w) if wi > 0]
        if len(support) == 1 and w[support[0]] == int(m[support[0]]):
            continue
        ids = pair.strata.strata_of(frozenset(support))
        if ids is None:
            raise InvariantError(
                "missing strata entry for support {%s}"
                % ",".join(pair.components[i].name for i in support))
        for sid in ids:
            elements.append((w, sid))
    if not elements:
        return 0, 0, [], []
    count_all, orbits = galois_orbits(elements, pair)
    comp_orbits = _component_orbits(pair)
    clustered = []
    for orbit in orbits:
        w, sid = orbit[0]
        support = {i for i, wi in enumerate(w) if wi > 0}
        if any(support <= set(O) for O in comp_orbits):
            clustered.append(orbit[0])
    return count_all, len(clustered), [o[0] for o in orbits], clustered


def norm_form_b_invariant(n: int, m: int, group_generators):
    """Orbit count of {w in N^n : sum w = m, min w = 0} under the group
    generated by the given permutations (Burnside cross-checked)."""
    import itertools as _it
    group = close_group(group_generators, n)
    # transitivity check
    orbit0 = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for perm in group_generators:
            if perm[i] not in orbit0:
                orbit0.add(perm[i])
                frontier.append(perm[i])
    if len(orbit0) != n and n > 1:
        raise InvariantError("the Galois group must act transitively")
    vectors = []
    for w in _it.product(range(m + 1), repeat=n):
        if sum(w) == m and min(w) == 0:
            vectors.append(w)

    def act(perm, w):
        out = [0] * n
        for i, wi in enumerate(w):
            out[perm[i]] = wi
        return tuple(out)

    seen = set()
    count = 0
    for w in vectors:
        if w in seen:
            continue
        count += 1
        for perm in group:
            seen.add(act(perm, w))
    total_fixed = sum(1 for perm in group for w in vectors if act(perm, w) == w)
    burnside, rem = divmod(total_fixed, len(group))
    if rem or burnside != count:
        raise InternalInconsistency("Burnside disagrees with the orbit partition")
    return count


# ---------------------------------------------------------------------------
# the full report

@dataclass
class AdjointReport:
    a: Fraction
    b: int
    rigid: bool
    alpha: Optional[Fraction]
    alpha_peyre: Optional[Fraction]
    adjoint: tuple
    minimal_face_labels: list
    restricted_labels: list
    pic_rank: int
    invariant_factors: list
    decomposition: Optional[dict]
    model: str


def predict(pair: PairModel, L=None) -> AdjointReport:
    """Assemble the predicted growth data for counting M-points of bounded
    height: N(B) ~ c B^a (log B)^(b-1)."""
    pres = pic_presentation(pair)
    if L is None:
        L = tuple([Fraction(1)] + [Fraction(0)] * (pres.ambient.n - 1))
    L = tuple(Fraction(x) for x in L)
    a = fujita_invariant(pres, L)
    if a in (PLUS_INF, MINUS_INF):
        raise InvariantError("Fujita invariant is %s" % a)
    if pair.is_quasi_campana():
        a2 = fujita_via_log_canonical(pair, L)
        if a2 != a:
            raise InternalInconsistency(
                "log-canonical shortcut %s disagrees with the cone value %s" % (a2, a))
    b, face_labels, decomposition = b_invariant(pres, L, a)
    rigid = adjoint_rigid(pres, L, a) if Fraction(a) > 0 else False
    alpha = alpha_peyre = None
    restricted_labels = []
    if rigid:
        alpha, alpha_peyre, sub = alpha_constant(pres, L, a, b)
        restricted_labels = [_orbit_label(o) for o in sub.orbits]
    model = "c * B^(%s) * (log B)^%d" % (a, b - 1)
    return AdjointReport(
        a=Fraction(a), b=b, rigid=rigid, alpha=alpha, alpha_peyre=alpha_peyre,
        adjoint=adjoint_class(pres, L, a),
        minimal_face_labels=face_labels,
        restricted_labels=restricted_labels,
        pic_rank=pres.rank,
        invariant_factors=pres.invariant_factors,
        decomposition=decomposition,
        model=model,
    )
