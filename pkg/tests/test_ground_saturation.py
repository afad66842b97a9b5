import random

import pytest

from derlab.ground_saturation import GroundSaturationLimit, condense, saturate_ground
from derlab.model import check_model, construct_rstar
from derlab.orderings import OrderingConfig
from derlab.redundancy import UniverseBound, ground_entails
from derlab.rewriting import GroundClosure, Variant
from derlab.terms import App, Clause, Var, const, neg, pos

from gen import HORN_KBO, horn_problem

b, c, d = const("b"), const("c"), const("d")
X, Y = Var("X"), Var("Y")
ONES = OrderingConfig("kbo", {}, 1, ("f", "g", "b", "c", "d"), 1)


def f(*a):
    return App("f", a)


def _model_holds(seed, bound=None):
    N = horn_problem(random.Random(seed))
    sat = saturate_ground(N, HORN_KBO, bound=bound)
    assert not sat.has_bottom
    interp = construct_rstar(sat.closures, Variant.HORN, HORN_KBO)
    return check_model(interp.R, sat.derived, HORN_KBO).holds


class TestCondense:
    def test_drops_trivial_and_duplicates(self):
        clo = GroundClosure(Clause([neg(X, b), pos(f(X), c), pos(f(Y), c)]), {"X": b, "Y": b})
        got = condense(clo)
        assert got == GroundClosure(Clause([pos(f(X), c)]), {"X": b, "Y": b})
        assert len(got.instance) == 1

    def test_unchanged(self):
        clo = GroundClosure(Clause([pos(f(X), c)]), {"X": b})
        assert condense(clo) is clo


class TestSaturateGround:
    def test_refutes(self):
        N = [GroundClosure(Clause([pos(f(b), c)])), GroundClosure(Clause([neg(f(b), c)]))]
        assert saturate_ground(N, ONES).has_bottom

    def test_derives_conditional_consequence(self):
        N = [GroundClosure(Clause([pos(f(b), c)])), GroundClosure(Clause([neg(f(b), d), pos(b, d)]))]
        sat = saturate_ground(N, ONES)
        assert not sat.has_bottom
        for k in sat.derived:
            assert ground_entails([n.instance for n in N], k.instance)

    def test_limit(self):
        N = horn_problem(random.Random(1))
        with pytest.raises(GroundSaturationLimit):
            saturate_ground(N, HORN_KBO, max_closures=len(N))

    def test_bottom_only_from_unsatisfiable(self):
        for seed in range(40):
            N = horn_problem(random.Random(seed))
            sat = saturate_ground(N, HORN_KBO)
            if sat.has_bottom:
                assert ground_entails([k.instance for k in N], Clause([]))


class TestBoundedRedundancy:
    """The bounded inference check drops inferences the exact check keeps."""

    @pytest.mark.parametrize("seed", [1, 2, 3, 7])
    def test_all_left_reduced_systems(self, seed):
        assert _model_holds(seed, UniverseBound(max_rules=None, candidate_cap=10_000))

    @pytest.mark.parametrize("seed", [0, 1, 7])
    def test_one_rule_bound_is_too_coarse(self, seed):
        assert not _model_holds(seed, UniverseBound(max_rules=1, candidate_cap=10_000))

    @pytest.mark.parametrize("seed", [0, 1, 7])
    def test_unbounded_deletions_only(self, seed):
        assert _model_holds(seed)
