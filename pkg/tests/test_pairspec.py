import itertools
import json
import random

import pytest

from mpoints import oracle
from mpoints.pairspec import (INF, ConfigError, MultiplicityFamily, build_pair,
                              galois_orbits, membership, reduce_generators)


def coord_pair(ncoords, variant, m, **extra):
    cfg = {
        "ambient": {"type": "projective", "coords": ncoords},
        "divisors": [{"name": "D%d" % i,
                      "form": [[1, [1 if j == i else 0 for j in range(ncoords)]]],
                      "degree": 1} for i in range(ncoords)],
        "family": {"variant": variant, "m": list(m)},
    }
    cfg.update(extra)
    return build_pair(cfg)


def conjugate_lines(variant="campana", geometric=False):
    return build_pair({
        "ambient": {"type": "projective", "coords": 3},
        "divisors": [{"name": "D", "form": [[1, [2, 0, 0]], [1, [0, 2, 0]]],
                      "degree": 2, "components": 2,
                      "splitting": {"type": "quadratic", "d": -1},
                      "component_form": [[1, 0], [0, 1], [0, 0]]}],
        "galois": {"order": 2, "generators": [[1, 0]]},
        "family": {"variant": variant, "m": [2], "geometric": geometric},
        "exempt_primes": [2],
    })


class TestMembership:
    def test_fixtures(self):
        assert membership(MultiplicityFamily("campana", m=(2, 2)), (0, 3))
        assert not membership(MultiplicityFamily("darmon", m=(2, 3)), (2, 2))
        assert membership(MultiplicityFamily("weak_campana", m=(2, 2, 2)), (1, 1, 0))

    def test_zero_always_allowed(self):
        for fam in [MultiplicityFamily("campana", m=(2, 3)),
                    MultiplicityFamily("darmon", m=(5, INF)),
                    MultiplicityFamily("weak_campana", m=(2, 2)),
                    MultiplicityFamily("kfree", k=(1, 2)),
                    MultiplicityFamily("integral", subset=(0,))]:
            n = max(fam.arity, 2)
            assert membership(fam, tuple(0 for _ in range(n)))

    def test_infinity_conventions(self):
        dar = MultiplicityFamily("darmon", m=(2, INF))
        assert membership(dar, (INF, 0))        # infinity divisible by 2
        assert not membership(dar, (2, 1))      # only 0 divisible by infinity
        cam = MultiplicityFamily("campana", m=(3, INF))
        assert membership(cam, (INF, 0))        # infinity >= m
        assert not membership(cam, (3, INF))

    def test_family_inclusions(self):
        rng = random.Random(1)
        for _ in range(300):
            m = tuple(rng.choice([2, 3, 4]) for _ in range(3))
            w = tuple(rng.randint(0, 8) for _ in range(3))
            dar = membership(MultiplicityFamily("darmon", m=m), w)
            cam = membership(MultiplicityFamily("campana", m=m), w)
            wea = membership(MultiplicityFamily("weak_campana", m=m), w)
            assert (not dar or cam) and (not cam or wea)

    def test_weak_skips_weight_one(self):
        fam = MultiplicityFamily("weak_campana", m=(1, 2))
        # the weight-one component does not help the sum
        assert not membership(fam, (5, 1))
        assert membership(fam, (5, 2))


class TestBuildPair:
    def test_conjugate_lines_build(self):
        pair = conjugate_lines()
        assert pair.nslots == 2
        assert pair.proper and pair.proper_weights == (2, 2)

    def test_coordinate_darmon(self):
        pair = coord_pair(3, "darmon", (2, 2, 2))
        assert [c.name for c in pair.components] == ["D0", "D1", "D2"]
        vecs = pair.generator_set().vectors()
        assert sorted(vecs) == [(0, 0, 2), (0, 2, 0), (2, 0, 0)]

    def test_rejects_inhomogeneous(self):
        with pytest.raises(ConfigError):
            build_pair({
                "ambient": {"type": "projective", "coords": 2},
                "divisors": [{"name": "D", "form": [[1, [1, 0]], [1, [0, 2]]],
                              "degree": 1}],
                "family": {"variant": "darmon", "m": [2]},
            })

    def test_rejects_galois_weight_mismatch(self):
        with pytest.raises(ConfigError):
            build_pair({
                "ambient": {"type": "projective", "coords": 2},
                "divisors": [{"name": "A", "form": [[1, [1, 0]]], "degree": 1},
                             {"name": "B", "form": [[1, [0, 1]]], "degree": 1}],
                "galois": {"order": 2, "generators": [[1, 0]]},
                "family": {"variant": "darmon", "m": [2, 3]},
            })

    def test_rejects_custom_without_zero(self):
        with pytest.raises(ConfigError):
            build_pair({
                "ambient": {"type": "projective", "coords": 2},
                "divisors": [{"name": "A", "form": [[1, [1, 0]]], "degree": 1}],
                "family": {"variant": "custom", "clauses": [[["ge", 1]]]},
            })

    def test_integral_pair_is_improper(self):
        pair = coord_pair(2, "darmon", (2, 2))
        cfg = {
            "ambient": {"type": "projective", "coords": 2},
            "divisors": [{"name": "A", "form": [[1, [1, 0]]], "degree": 1}],
            "family": {"variant": "integral", "subset": [0]},
        }
        improper = build_pair(cfg)
        assert pair.proper and not improper.proper


class TestGenerators:
    def test_darmon_fixture(self):
        pair = coord_pair(2, "darmon", (2, 3))
        assert sorted(pair.generator_set().vectors()) == [(0, 3), (2, 0)]

    def test_campana_fixture(self):
        pair = build_pair({
            "ambient": {"type": "projective", "coords": 2},
            "divisors": [{"name": "D", "form": [[1, [1, 0]]], "degree": 1}],
            "family": {"variant": "campana", "m": [2]},
        })
        assert sorted(pair.generator_set().vectors()) == [(2,), (3,)]

    def test_kfree_generators(self):
        pair = coord_pair(2, "kfree", (2, 2), family={"variant": "kfree", "k": [1, 1]})
        assert sorted(pair.generator_set().vectors()) == [(0, 1), (1, 0)]

    def test_weak_matches_brute_oracle(self):
        # weak Campana on two intersecting hyperplanes: exhaustive box scan
        pair = build_pair({
            "ambient": {"type": "projective", "coords": 3},
            "divisors": [{"name": "A", "form": [[1, [1, 0, 0]]], "degree": 1},
                         {"name": "B", "form": [[1, [0, 1, 0]]], "degree": 1}],
            "family": {"variant": "weak_campana", "m": [2, 2]},
        })
        got = sorted(pair.generator_set().vectors())
        ref = oracle.brute_generators(pair.member_expanded, (8, 8))
        assert got == ref
        assert (1, 1) in got and (2, 1) in got

    def test_builtins_match_oracle_in_box(self):
        for variant, m in [("darmon", (2, 3)), ("campana", (2, 2)),
                           ("campana", (3, 2))]:
            pair = coord_pair(3, variant, m + (2,))
            box = tuple(4 * max(mi for mi in m + (2,)) for _ in range(3))
            got = sorted(set(pair.generator_set().vectors()))
            ref = oracle.brute_generators(pair.member_expanded, box)
            assert got == ref, (variant, m)

    def test_galois_stability(self):
        pair = conjugate_lines()
        gens = pair.generator_set()
        elset = set(gens.elements)
        for perm in pair.galois_gens:
            assert {pair.act_element(perm, el) for el in elset} == elset


class TestReduceGenerators:
    def test_weak_fixture(self):
        pair = build_pair({
            "ambient": {"type": "projective", "coords": 3},
            "divisors": [{"name": "A", "form": [[1, [1, 0, 0]]], "degree": 1},
                         {"name": "B", "form": [[1, [0, 1, 0]]], "degree": 1}],
            "family": {"variant": "weak_campana", "m": [2, 2]},
        })
        gens = pair.generator_set()
        boundary, vertices = reduce_generators(gens, pair)
        assert set(boundary.vectors()) == set(gens.vectors())
        assert sorted(set(vertices.vectors())) == [(0, 2), (1, 1), (2, 0)]

    def test_campana_single_divisor(self):
        pair = build_pair({
            "ambient": {"type": "projective", "coords": 2},
            "divisors": [{"name": "D", "form": [[1, [1, 0]]], "degree": 1}],
            "family": {"variant": "campana", "m": [2]},
        })
        boundary, vertices = reduce_generators(pair.generator_set(), pair)
        assert vertices.vectors() == [(2,)]
        assert boundary.vectors() == [(2,)]

    def test_empty_passthrough(self):
        pair = coord_pair(2, "darmon", (2, 2))
        from mpoints.pairspec import GeneratorSet
        b, v = reduce_generators(GeneratorSet([]), pair)
        assert b.elements == [] and v.elements == []

    def test_idempotent_and_nested(self):
        for variant, m in [("weak_campana", (2, 2)), ("campana", (2, 3)),
                           ("darmon", (3, 2))]:
            pair = coord_pair(3, variant, m + (2,))
            gens = pair.generator_set()
            b1, v1 = reduce_generators(gens, pair)
            assert set(v1.elements) <= set(b1.elements) <= set(gens.elements)
            b2, v2 = reduce_generators(b1, pair)
            assert set(b2.elements) == set(b1.elements)
            assert set(v2.elements) == set(v1.elements)


class TestGaloisOrbits:
    def test_swap_orbit(self):
        pair = conjugate_lines()
        cnt, orbits = galois_orbits([(2, 0), (0, 2)], pair,
                                    act=lambda p, w: pair.act(p, w))
        assert cnt == 1 and len(orbits) == 1

    def test_cyclic_fixture(self):
        pair = build_pair({
            "ambient": {"type": "projective", "coords": 4},
            "divisors": [{"name": "D%d" % i,
                          "form": [[1, [1 if j == i else 0 for j in range(4)]]],
                          "degree": 1} for i in range(3)],
            "galois": {"order": 3, "generators": [[1, 2, 0]]},
            "family": {"variant": "darmon", "m": [2, 2, 2]},
        })
        vecs = [w for w in itertools.product(range(3), repeat=3) if sum(w) == 2]
        cnt, orbits = galois_orbits(vecs, pair, act=lambda p, w: pair.act(p, w))
        assert cnt == 2

    def test_trivial_group(self):
        pair = coord_pair(2, "darmon", (2, 2))
        cnt, orbits = galois_orbits([(i, 0) for i in range(1, 6)], pair,
                                    act=lambda p, w: pair.act(p, w))
        assert cnt == 5

    def test_unclosed_list_rejected(self):
        pair = conjugate_lines()
        with pytest.raises(ConfigError):
            galois_orbits([(2, 0)], pair, act=lambda p, w: pair.act(p, w))
