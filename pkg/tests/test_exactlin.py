import random
from fractions import Fraction as F

import pytest

from mpoints import exactlin as ex


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


class TestSmithNormalForm:
    def test_single_row(self):
        assert ex.smith_normal_form([[2, -2]])[0] == [2]

    def test_divisibility_fixup(self):
        assert ex.smith_normal_form([[2, 0], [0, 3]])[0] == [1, 6]

    def test_zero_matrix(self):
        assert ex.smith_normal_form([[0, 0], [0, 0]])[0] == []

    def test_transforms_and_chain(self):
        rng = random.Random(7)
        for _ in range(40):
            nr = rng.randint(1, 4)
            nc = rng.randint(1, 4)
            A = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
            f, D, U, V = ex.smith_normal_form(A)
            assert mat_mul(mat_mul(U, A), V) == D
            for a, b in zip(f, f[1:]):
                assert b % a == 0
            # unimodularity
            assert abs(ex.det(U)) == 1 and abs(ex.det(V)) == 1

    def test_det_preserved(self):
        rng = random.Random(11)
        for _ in range(20):
            n = rng.randint(1, 4)
            A = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            if ex.det(A) == 0:
                continue
            f, D, U, V = ex.smith_normal_form(A)
            prod = 1
            for x in f:
                prod *= x
            assert prod == abs(ex.det(A))

    def test_quotient_lattice(self):
        rank, tors, proj = ex.quotient_lattice([[2, -2]], 2)
        assert rank == 1 and tors == [2]
        rank, tors, _ = ex.quotient_lattice([[3, -2, -2, -2]], 4)
        assert rank == 3 and tors == []


class TestLP:
    def test_min_parameter_fixtures(self):
        q = ex.cone([(1, 0), (0, 1)])
        assert ex.min_parameter_in_cone(q, (-1, 0), (1, 0)) == 1
        assert ex.min_parameter_in_cone(q, (0, 1), (1, 0)) == 0
        assert ex.min_parameter_in_cone(q, (-1, -1), (1, 0)) == ex.PLUS_INF

    def test_zero_direction(self):
        q = ex.cone([(1, 0), (0, 1)])
        assert ex.min_parameter_in_cone(q, (-1, 0), (0, 0)) == ex.PLUS_INF
        # base inside: every t works, so the infimum is unbounded below
        assert ex.min_parameter_in_cone(q, (1, 1), (0, 0)) == ex.MINUS_INF

    def test_monotone_in_generators(self):
        rng = random.Random(3)
        for _ in range(25):
            gens = [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(3)]
            gens = [g for g in gens if g != (0, 0)] or [(1, 0)]
            base = (rng.randint(-3, 3), rng.randint(-3, 3))
            dr = (1, 1)
            small = ex.cone(gens, dim=2)
            big = ex.cone(gens + [(1, 0), (0, 1)], dim=2)
            t1 = ex.min_parameter_in_cone(small, base, dr)
            t2 = ex.min_parameter_in_cone(big, base, dr)
            if t1 in (ex.PLUS_INF,):
                continue
            assert t2 in (ex.MINUS_INF,) or t2 <= t1


class TestFacesAndDuals:
    def test_minimal_face_fixtures(self):
        q = ex.cone([(1, 0), (0, 1)])
        face, codim = ex.minimal_face(q, (1, 0))
        assert face == [(1, 0)] and codim == 1
        face, codim = ex.minimal_face(q, (0, 0))
        assert face == [] and codim == 2
        face, codim = ex.minimal_face(q, (1, 1))
        assert codim == 0

    def test_minimal_face_rejects_outside(self):
        q = ex.cone([(1, 0), (0, 1)])
        with pytest.raises(ex.LinAlgError):
            ex.minimal_face(q, (-1, 0))

    def test_face_closed_under_addition(self):
        c = ex.cone([(1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 0, 1)])
        face, _ = ex.minimal_face(c, (1, 1, 0))
        for u in face:
            for v in face:
                assert c.contains(ex.vadd(u, v))

    def test_dual_fixtures(self):
        assert sorted(ex.dual_cone(ex.cone([(1, 0), (0, 1)])).generators) == \
            [(0, 1), (1, 0)]
        assert sorted(ex.dual_cone(ex.cone([(1, 0), (1, 1)])).generators) == \
            [(0, 1), (1, -1)]
        assert sorted(ex.dual_cone(ex.cone([(1, 0), (-1, 0), (0, 1)])).generators) == \
            [(0, 1)]

    def test_dual_dual(self):
        rng = random.Random(5)
        for _ in range(20):
            gens = [(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(0, 3))
                    for _ in range(4)]
            gens = [g for g in gens if g != (0, 0, 0)]
            if not gens or ex.rank(gens) < 3:
                continue
            c = ex.cone(gens, dim=3)
            dd = ex.dual_cone(ex.dual_cone(c))
            # same cone as sets: cross-membership of generators and samples
            for g in c.generators:
                assert dd.contains(g)
            for g in dd.generators:
                assert c.contains(g)

    def test_strong_convexity(self):
        assert ex.is_strongly_convex(ex.cone([(1, 0), (0, 1)]))
        assert not ex.is_strongly_convex(ex.cone([(1, 0), (-1, 0), (0, 1)]))
        assert ex.is_strongly_convex(ex.cone([(1,)]))


class TestIntegrals:
    def test_exponential_fixtures(self):
        q = ex.cone([(1, 0), (0, 1)])
        assert ex.exponential_cone_integral(q, (1, 1)) == 1
        assert ex.exponential_cone_integral(q, (2, 1)) == F(1, 2)
        assert ex.exponential_cone_integral(q, (0, 1)) == ex.DIVERGES

    def test_slice_fixtures(self):
        q = ex.cone([(1, 0), (0, 1)])
        assert ex.slice_volume(q, (1, 1)) == 1
        assert ex.slice_volume(q, (2, 1)) == F(1, 2)
        assert ex.slice_volume(ex.cone([(1,)]), (2,)) == F(1, 2)

    def test_unbounded_slice_rejected(self):
        q = ex.cone([(1, 0), (0, 1)])
        with pytest.raises(ex.LinAlgError):
            ex.slice_volume(q, (1, 0))

    def test_gamma_identity_random(self):
        # integral = (b-1)! * slice volume, exactly, on random pointed cones
        rng = random.Random(17)
        checked = 0
        while checked < 15:
            dim = rng.randint(1, 3)
            gens = [tuple(rng.randint(0, 4) for _ in range(dim)) for _ in range(dim + 1)]
            gens = [g for g in gens if any(g)]
            if not gens or ex.rank(gens) < dim:
                continue
            c = ex.cone(gens, dim=dim)
            if not ex.is_strongly_convex(c):
                continue
            L = tuple(rng.randint(1, 3) for _ in range(dim))
            integ = ex.exponential_cone_integral(c, L)
            if integ == ex.DIVERGES:
                continue
            b = ex.rank(c.generators)
            fact = 1
            for i in range(1, b):
                fact *= i
            assert integ == fact * ex.slice_volume(c, L)
            checked += 1

    def test_lattice_normalization(self):
        # the ray through (2,2) carries the lattice generated by (1,1)
        assert ex.exponential_cone_integral(ex.cone([(2, 2)]), (1, 0)) == 1
        # index-2 sublattice cone: cone((1,1),(1,-1)) in Z^2
        c = ex.cone([(1, 1), (1, -1)])
        assert ex.exponential_cone_integral(c, (1, 0)) == F(1, 2) * 4 == 2

    def test_triangulation_independence(self):
        # value must not depend on generator order
        gens = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]
        vals = set()
        for _ in range(4):
            random.Random(_).shuffle(gens)
            vals.add(ex.exponential_cone_integral(ex.cone(gens, dim=3), (0, 0, 1)))
        assert len(vals) == 1
