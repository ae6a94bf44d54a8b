"""Exact rational linear algebra and polyhedral geometry.

Everything here runs on python ints and fractions.Fraction; no floats.
Cones are given by finite generator lists.  Degenerate situations
(cones that are not full dimensional, cones with lineality) are handled
by passing to the saturated span lattice, so volumes and integrals are
always normalized to the integer lattice of the span.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence


class LinAlgError(Exception):
    pass


# ---------------------------------------------------------------------------
# vectors and matrices (lists of Fractions / ints)

def vec(xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


def dot(u, v) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(t, u):
    t = Fraction(t)
    return tuple(t * a for a in u)


def is_zero_vector(u) -> bool:
    return all(a == 0 for a in u)


def primitive(u):
    """Scale a rational vector to a primitive integer vector (gcd 1)."""
    from math import gcd, lcm
    fr = [Fraction(a) for a in u]
    if all(a == 0 for a in fr):
        return tuple(0 for _ in fr)
    den = 1
    for a in fr:
        den = lcm(den, a.denominator)
    ints = [int(a * den) for a in fr]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints)


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def mat_vec(A, x):
    return tuple(sum(A[i][j] * Fraction(x[j]) for j in range(len(x))) for i in range(len(A)))


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def rank(rows) -> int:
    """Rank of a list of rational row vectors, by fraction elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nr:
            break
    return r


def row_space_basis(rows):
    """Echelon basis of the row space, as fraction tuples."""
    m = [list(map(Fraction, r)) for r in rows]
    basis = []
    nc = len(m[0]) if m else 0
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    for i in range(r):
        basis.append(tuple(m[i]))
    return basis


def nullspace(rows):
    """Basis of {x : rows @ x = 0} over the rationals."""
    m = [list(map(Fraction, r)) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * nc
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][fc]
        basis.append(tuple(x))
    return basis


def solve_linear(rows, target):
    """One rational solution x of rows^T ... i.e. sum x_i rows[i] = target, or None."""
    # Solve as least-structured: treat rows as columns of the system A x = target.
    nr = len(rows)
    if nr == 0:
        return None if any(Fraction(t) != 0 for t in target) else ()
    nc = len(target)
    # augmented system: columns are the rows vectors
    m = [[Fraction(rows[j][i]) for j in range(nr)] + [Fraction(target[i])] for i in range(nc)]
    piv_cols = []
    r = 0
    for c in range(nr):
        piv = next((i for i in range(r, nc) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(nc):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, nc):
        if m[i][nr] != 0:
            return None
    x = [Fraction(0)] * nr
    for i, c in enumerate(piv_cols):
        x[c] = m[i][nr]
    return tuple(x)


def det(rows) -> Fraction:
    """Determinant of a square rational matrix (fraction-free not needed)."""
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(A: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns (factors, D, U, V) with U*A*V = D diagonal, U and V unimodular,
    and factors the list of nonzero diagonal entries d1 | d2 | ...
    """
    nr = len(A)
    nc = len(A[0]) if nr else 0
    D = [[int(x) for x in row] for row in A]
    for row in D:
        if len(row) != nc:
            raise LinAlgError("ragged matrix")
    U = identity(nr)
    V = identity(nc)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    def reduce_at(t):
        """Euclid rows and columns until row t and column t are clear off-diagonal."""
        while True:
            again = False
            for i in range(t + 1, nr):
                if D[i][t] != 0:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t] != 0:
                        swap_rows(t, i)
                        again = True
            for j in range(t + 1, nc):
                if D[t][j] != 0:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j] != 0:
                        swap_cols(t, j)
                        again = True
            if not again:
                break

    t = 0
    while t < min(nr, nc):
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if D[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        reduce_at(t)
        if D[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain: mix violating adjacent diagonal entries
    # into one row and rediagonalize there
    r = t
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a != 0 and b % a != 0:
                add_row(i + 1, i, 1)
                reduce_at(i)
                if D[i][i] < 0:
                    negate_row(i)
                if D[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    factors = [D[i][i] for i in range(r) if D[i][i] != 0]
    return factors, D, U, V


def quotient_lattice(relations: Sequence[Sequence[int]], n: int):
    """Structure of Z^n modulo the lattice spanned by the given relation rows.

    Returns (rank, invariant_factors, proj) where invariant_factors are the
    diagonal entries > 1 (the torsion), and proj is an integer matrix (as row
    list) such that x -> x @ proj maps Z^n onto the free part Z^rank with the
    relation lattice in its kernel (saturated: the image is exactly Z^rank).
    """
    if not relations:
        return n, [], [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    factors, D, U, V = smith_normal_form(relations)
    r = len(factors)
    tors = [d for d in factors if d > 1]
    # x @ V has coordinates y; relation lattice = {y : y_i in d_i Z, i < r; y_j = 0 later}
    proj = [[V[i][j] for j in range(r, n)] for i in range(n)]
    return n - r, tors, proj


# ---------------------------------------------------------------------------
# exact LP: two-phase simplex with Bland's rule

def _simplex(tableau, basis, n):
    """Minimize the objective row (last row) in place. Bland's rule.

    tableau rows: m constraint rows [a.. | rhs], last row = reduced costs | -obj.
    Returns "optimal" or "unbounded".
    """
    m = len(tableau) - 1
    while True:
        cost = tableau[-1]
        enter = next((j for j in range(n) if cost[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][n] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _, leave = best
        piv = tableau[leave][enter]
        tableau[leave] = [a / piv for a in tableau[leave]]
        for i in range(len(tableau)):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [a - f * b for a, b in zip(tableau[i], tableau[leave])]
        basis[leave] = enter


def lp_solve(A, b, c):
    """min c.x  s.t. A x = b, x >= 0, all data rational.

    Returns (status, x, value); status in {"optimal", "infeasible", "unbounded"}.
    """
    m = len(A)
    n = len(A[0]) if m else len(c)
    rows = [[Fraction(x) for x in row] for row in A]
    rhs = [Fraction(x) for x in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1
    tab = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    costrow = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    tab.append(costrow)
    # reduce costs against the initial artificial basis
    for i in range(m):
        tab[-1] = [a - b2 for a, b2 in zip(tab[-1], tab[i])]
    _simplex(tab, basis, n + m)
    if -tab[-1][-1] > 0:
        return "infeasible", None, None
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            enter = next((j for j in range(n) if tab[i][j] != 0), None)
            if enter is None:
                continue  # redundant row
            piv = tab[i][enter]
            tab[i] = [a / piv for a in tab[i]]
            for k in range(len(tab)):
                if k != i and tab[k][enter] != 0:
                    f = tab[k][enter]
                    tab[k] = [a - f * b2 for a, b2 in zip(tab[k], tab[i])]
            basis[i] = enter
    # rows still basic in an artificial variable are redundant (zero rows)
    live_rows = []
    live_basis = []
    for i in range(m):
        if basis[i] >= n:
            continue
        live_rows.append([tab[i][j] for j in range(n)] + [tab[i][-1]])
        live_basis.append(basis[i])
    # phase 2
    tab2 = [row[:] for row in live_rows]
    cost = [Fraction(x) for x in c] + [Fraction(0)]
    tab2.append(cost)
    for i, bi in enumerate(live_basis):
        if tab2[-1][bi] != 0:
            f = tab2[-1][bi]
            tab2[-1] = [a - f * b2 for a, b2 in zip(tab2[-1], tab2[i])]
    status = _simplex(tab2, live_basis, n)
    if status == "unbounded":
        return "unbounded", None, None
    x = [Fraction(0)] * n
    for i, bi in enumerate(live_basis):
        x[bi] = tab2[i][n]
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    return "optimal", tuple(x), value


# ---------------------------------------------------------------------------
# rational cones

PLUS_INF = "+inf"
MINUS_INF = "-inf"


@dataclass
class RationalCone:
    """A polyhedral cone given by finitely many rational generators."""
    dim: int
    generators: list
    _facets: Optional[list] = field(default=None, repr=False)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if len(g) != self.dim:
                raise LinAlgError("generator dimension mismatch")
            if not is_zero_vector(g):
                gens.append(primitive(g))
        # dedupe, preserve order
        seen = set()
        uniq = []
        for g in gens:
            if g not in seen:
                seen.add(g)
                uniq.append(g)
        self.generators = uniq

    def span_rank(self) -> int:
        return rank(self.generators) if self.generators else 0

    def contains(self, x) -> bool:
        """Exact membership test via LP feasibility."""
        x = vec(x)
        if not self.generators:
            return is_zero_vector(x)
        A = [[Fraction(g[i]) for g in self.generators] for i in range(self.dim)]
        status, _, _ = lp_solve(A, list(x), [0] * len(self.generators))
        return status == "optimal"


def cone(generators, dim=None) -> RationalCone:
    gens = [vec(g) for g in generators]
    if dim is None:
        if not gens:
            raise LinAlgError("dimension required for a cone with no generators")
        dim = len(gens[0])
    return RationalCone(dim, gens)


def min_parameter_in_cone(c: RationalCone, base, direction):
    """inf { t : base + t*direction in cone }, solved as an exact LP.

    Returns a Fraction, or MINUS_INF when unbounded below, or PLUS_INF when
    no parameter makes the point land in the cone.
    """
    base = vec(base)
    direction = vec(direction)
    gens = c.generators
    n = len(gens)
    # variables: lambda_1..lambda_n >= 0, u, v >= 0 with t = u - v
    # constraints: sum lambda_j g_j - (u - v) dir = base
    A = []
    for i in range(c.dim):
        row = [Fraction(g[i]) for g in gens] + [-Fraction(direction[i]), Fraction(direction[i])]
        A.append(row)
    obj = [Fraction(0)] * n + [Fraction(1), Fraction(-1)]
    status, x, value = lp_solve(A, list(base), obj)
    if status == "infeasible":
        return PLUS_INF
    if status == "unbounded":
        return MINUS_INF
    return value


def is_strongly_convex(c: RationalCone) -> bool:
    """True iff cone ∩ -cone = {0}; decided by one LP per generator."""
    for g in c.generators:
        if c.contains(vscale(-1, g)):
            return False
    return True


def minimal_face(c: RationalCone, point):
    """Smallest face of the cone containing the point.

    Returns (face_generators, codim) where codim is measured inside the
    full ambient space of the cone.  The point must lie in the cone.
    """
    point = vec(point)
    if not c.contains(point):
        raise LinAlgError("point is not in the cone")
    gens = c.generators
    n = len(gens)
    face = []
    for g in gens:
        # g lies in the minimal face iff point - t*g stays in the cone
        # for some t > 0; maximize t with sum lambda h + t g = point,
        # lambda >= 0, 0 <= t <= 1 (t bounded by a slack variable).
        A = [[Fraction(h[i]) for h in gens] + [Fraction(g[i]), Fraction(0)]
             for i in range(c.dim)]
        A.append([Fraction(0)] * n + [Fraction(1), Fraction(1)])
        rhs = list(point) + [Fraction(1)]
        obj = [Fraction(0)] * n + [Fraction(-1), Fraction(0)]
        status, _, value = lp_solve(A, rhs, obj)
        if status == "optimal" and -value > 0:
            face.append(g)
    codim = c.dim - (rank(face) if face else 0)
    return face, codim


def _facet_normals_fulldim(gens, dim):
    """Facet normals of a full-dimensional cone by subset enumeration.

    A facet is spanned by generators; candidate normals are the orthogonal
    complements of rank dim-1 generator subsets.
    """
    normals = []
    seen = set()
    idx = range(len(gens))
    for subset in itertools.combinations(idx, dim - 1):
        sub = [gens[i] for i in subset]
        if rank(sub) != dim - 1:
            continue
        ns = nullspace(sub)
        if len(ns) != 1:
            continue
        phi = primitive(ns[0])
        for cand in (phi, tuple(-a for a in phi)):
            if cand in seen:
                continue
            vals = [dot(cand, g) for g in gens]
            if all(v >= 0 for v in vals):
                seen.add(cand)
                normals.append(cand)
    return normals


def dual_cone(c: RationalCone) -> RationalCone:
    """Dual cone {y : <y, g> >= 0 for all generators g}.

    Computed by facet enumeration in the span of the cone; directions
    orthogonal to the span appear as pairs ±psi (the lineality of the dual).
    """
    r = c.dim
    gens = c.generators
    if not gens:
        return cone([e for e in identity(r)] + [[-x for x in e] for e in identity(r)], dim=r)
    span = row_space_basis(gens)
    k = len(span)
    perp = nullspace(span)  # basis of the orthogonal complement
    out = []
    for psi in perp:
        p = primitive(psi)
        out.append(p)
        out.append(tuple(-a for a in p))
    if k == 0:
        return cone(out, dim=r)
    # coordinates of generators in the span basis
    coords = []
    for g in gens:
        sol = solve_linear(span, g)
        coords.append(tuple(sol))
    if k == 1:
        # dual within the span: whole line, half line, or just scaling
        pos = any(x[0] > 0 for x in coords)
        neg = any(x[0] < 0 for x in coords)
        inner = []
        if not neg:
            inner.append((Fraction(1),))
        if not pos:
            inner.append((Fraction(-1),))
        if pos and neg:
            inner = []
        normals = inner
    else:
        normals = _facet_normals_fulldim(coords, k)
        if rank(coords) < k:
            raise LinAlgError("span computation failed")
        if not is_strongly_convex(RationalCone(k, list(coords))):
            # dual inside the span is lower dimensional; fall back to
            # enumerating normals among complements of rank k-1 subsets is
            # still valid, but pairs ±phi may both appear, which is fine.
            pass
    # lift each span-normal phi_W to R^r: phi(b_i) = phi_W(e_i), phi(perp)=0
    lift_rows = [list(b) for b in span] + [list(p) for p in perp]
    for phiW in normals:
        target = list(phiW) + [Fraction(0)] * len(perp)
        # solve lift_rows @ phi = target  (each row dotted with phi)
        sol = _solve_rows_dot(lift_rows, target)
        out.append(primitive(sol))
    return cone(out, dim=r)


def _solve_rows_dot(rows, target):
    """Solve <rows[i], x> = target[i] for x (unique when rows span R^n)."""
    n = len(rows[0])
    m = [[Fraction(rows[i][j]) for j in range(n)] + [Fraction(target[i])] for i in range(len(rows))]
    r = 0
    piv_cols = []
    for c_ in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c_] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c_]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c_] != 0:
                f = m[i][c_]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c_)
        r += 1
    x = [Fraction(0)] * n
    for i, c_ in enumerate(piv_cols):
        x[c_] = m[i][n]
    return tuple(x)


# ---------------------------------------------------------------------------
# span-lattice reduction, triangulation, integrals and slice volumes

DIVERGES = "diverges"


def _saturated_span_coords(gens, dim):
    """Integer coordinates of the generators in a basis of the saturated span lattice.

    Returns (coords, k).  The generators must be primitive integer vectors.
    """
    k = rank(gens)
    if k == dim:
        return [tuple(Fraction(x) for x in g) for g in gens], dim
    # SNF of the generator matrix: rows = generators
    factors, D, U, V = smith_normal_form([list(map(int, g)) for g in gens])
    # row space lattice saturation: basis rows of (D V^{-1}) / d_i.  Easier:
    # saturated lattice basis B with integer coords for each generator:
    # columns of V give new coordinates y = g @ V; saturated span = first k
    # coords after dividing by the invariant factors.
    r = len(factors)
    coords = []
    for g in gens:
        y = [sum(int(g[i]) * V[i][j] for i in range(dim)) for j in range(dim)]
        if any(y[j] != 0 for j in range(r, dim)):
            raise LinAlgError("generator outside computed span")
        coords.append(tuple(Fraction(y[j], factors[j]) for j in range(r)))
    for cvec in coords:
        for a in cvec:
            if a.denominator != 1:
                raise LinAlgError("span lattice saturation failed")
    return coords, r


def extreme_rays(c: RationalCone) -> list:
    """Subset of the generators that are extreme, in input order."""
    gens = c.generators
    out = []
    for i, g in enumerate(gens):
        others = [h for j, h in enumerate(gens) if j != i]
        if not others:
            out.append(g)
            continue
        sub = RationalCone(c.dim, others)
        if not sub.contains(g):
            out.append(g)
    return out


def _facets_of(coords, k):
    gens_cone = RationalCone(k, list(coords))
    return _facet_normals_fulldim(gens_cone.generators, k)


def _triangulate(rays, k):
    """Split a pointed full-dimensional cone into simplicial subcones.

    Deterministic pulling triangulation at the first ray, recursing on the
    facets that miss it.  Rays must be extreme and primitive.
    """
    if len(rays) == k:
        return [list(rays)]
    r0 = rays[0]
    facets = _facets_of(rays, k)
    simplices = []
    for phi in sorted(facets):
        if dot(phi, r0) == 0:
            continue
        fr = [g for g in rays if dot(phi, g) == 0]
        # triangulate the facet inside its own span
        sub_coords, kk = _saturated_span_coords([primitive(g) for g in fr], k)
        # recursion happens in facet coordinates; map back by index
        sub_simps = _triangulate([tuple(x) for x in sub_coords], kk)
        index_of = {tuple(x): i for i, x in enumerate(sub_coords)}
        for s in sub_simps:
            chosen = [fr[index_of[tuple(x)]] for x in s]
            simplices.append([r0] + chosen)
    return simplices


def _prepared_cone(c: RationalCone):
    """Reduce to saturated-span coordinates and extreme rays; reject lineality."""
    if not c.generators:
        raise LinAlgError("empty cone")
    if not is_strongly_convex(c):
        return None  # caller decides (integral diverges on lineality)
    rays = extreme_rays(c)
    coords, k = _saturated_span_coords([primitive(g) for g in rays], c.dim)
    return rays, [tuple(x) for x in coords], k


def exponential_cone_integral(dual: RationalCone, L):
    """Integral of exp(-<L, x>) over the cone, w.r.t. the span-lattice measure.

    Returns an exact Fraction, or the DIVERGES marker when L is not strictly
    positive on the cone (or the cone has lineality).
    """
    L = vec(L)
    prep = _prepared_cone(dual)
    if prep is None:
        return DIVERGES
    rays, coords, k = prep
    weights = [dot(L, r) for r in rays]
    if any(w <= 0 for w in weights):
        return DIVERGES
    wmap = {tuple(cd): w for cd, w in zip(coords, weights)}
    total = Fraction(0)
    for simplex in _triangulate(coords, k):
        dmat = [list(s) for s in simplex]
        dd = abs(det(dmat))
        prod = Fraction(1)
        for s in simplex:
            prod *= wmap[tuple(s)]
        total += Fraction(dd) / prod
    return total


def slice_volume(dual: RationalCone, L):
    """Volume of the level-one slice {x in cone : <L,x> = 1}.

    The slice carries the measure induced by splitting the open cone as a
    ray coordinate times the slice, with Lebesgue measure on the ray factor;
    concretely this equals dim * vol{x in cone : <L,x> <= 1}.
    """
    L = vec(L)
    prep = _prepared_cone(dual)
    if prep is None:
        raise LinAlgError("slice of a cone with lineality is unbounded")
    rays, coords, k = prep
    weights = [dot(L, r) for r in rays]
    if any(w <= 0 for w in weights):
        raise LinAlgError("slice is unbounded: L is not positive on the cone")
    wmap = {tuple(cd): w for cd, w in zip(coords, weights)}
    total = Fraction(0)
    fact = 1
    for i in range(1, k):
        fact *= i
    for simplex in _triangulate(coords, k):
        # vertices of the truncated simplex: r_i / <L, r_i>
        scaled = [vscale(1 / wmap[tuple(s)], s) for s in simplex]
        total += abs(det([list(s) for s in scaled])) / fact
    return total
