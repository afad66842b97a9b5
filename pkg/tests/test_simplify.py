import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derlab.orderings import GT, LT, OrderingConfig
from derlab.rewriting import GroundClosure, RewriteSystem, Variant, closure_compare, compare_nm_horn, nm_horn
from derlab.simplify import (
    DemodMode,
    DerMode,
    Regime,
    RegimeConfig,
    RegimeError,
    SubsumeMode,
    delete_trivial_literals,
    demodulate,
    der,
    is_tautology,
    parallel_cond_rewrite,
    subsumes,
)
from derlab.terms import App, Clause, Var, const, neg, pos

from gen import KBO, ground_term
from lemma_suites import der_suite

b, c, d = const("b"), const("c"), const("d")
x, y, X = Var("x"), Var("y"), Var("X")
ONES = OrderingConfig("kbo", {}, 1, ("f", "g", "h", "b", "c", "d"), 1)


def f(*a):
    return App("f", a)


def g(*a):
    return App("g", a)


def h(*a):
    return App("h", a)


class TestDer:
    def test_unit_guard(self):
        out = der(Clause([neg(x, b), pos(g(x), d)]))
        assert out.kind == "replaced" and out.clause == Clause([pos(g(b), d)])

    def test_both_orientations(self):
        assert der(Clause([neg(f(b), x), pos(x, c)])).clause == Clause([pos(f(b), c)])

    def test_occurs_check_blocks(self):
        assert not der(Clause([neg(x, f(x)), pos(g(x), d)])).changed

    def test_chain_to_fixpoint(self):
        out = der(Clause([neg(x, y), neg(y, b), pos(h(x, y), d)]))
        assert out.clause == Clause([pos(h(b, b), d)])
        assert len(out.used) == 2

    def test_empty_result(self):
        assert der(Clause([neg(x, b)])).clause == Clause([])

    def test_negative_only(self):
        C = Clause([neg(x, b), pos(g(x), d)])
        assert not der(C, DerMode.NEGATIVE_ONLY).changed
        C2 = Clause([neg(x, b), neg(g(x), d), pos(c, d)])
        assert der(C2, DerMode.NEGATIVE_ONLY).clause == Clause([neg(g(b), d), pos(c, d)])

    def test_off(self):
        assert not der(Clause([neg(x, b)]), DerMode.OFF).changed

    def test_licensed_modes_decrease(self):
        for variant in (Variant.HORN, Variant.NONHORN):
            res = der_suite(variant, n=80, seed=5, samples=4)
            assert res.passed and res.checks > 0, res.failures[:2]

    def test_full_der_fails_under_nonhorn(self):
        # the suite must be able to see the unlicensed combination fail
        res = der_suite(Variant.NONHORN, n=300, seed=3, samples=8, mode=DerMode.FULL)
        assert res.failures


class TestDemodulation:
    def test_proper_subterm(self):
        out = demodulate(Clause([neg(g(f(b)), c)]), Clause([pos(f(x), x)]), DemodMode.PROPER_SUBTERM, ONES)
        assert out.clause == Clause([neg(g(b), c)])

    def test_all_occurrences(self):
        out = demodulate(Clause([neg(h(f(b), f(b)), c)]), Clause([pos(f(b), b)]), DemodMode.PROPER_SUBTERM, ONES)
        assert out.clause == Clause([neg(h(b, b), c)])

    def test_hazard_only_in_full_mode(self):
        cfg = OrderingConfig("kbo", {}, 1, ("f", "g", "b", "c"), 1)
        C = Clause([neg(f(f(f(b))), c)])
        unit = Clause([pos(f(f(f(b))), g(g(b)))])
        assert not demodulate(C, unit, DemodMode.PROPER_SUBTERM, cfg).changed
        out = demodulate(C, unit, DemodMode.FULL, cfg)
        assert out.clause == Clause([neg(g(g(b)), c)])
        R = RewriteSystem([(f(b), b), (g(g(b)), b)])
        after = nm_horn(R, GroundClosure(out.clause))
        before = nm_horn(R, GroundClosure(C))
        assert compare_nm_horn(cfg, after, before) is GT

    def test_unit_not_applied_to_itself(self):
        unit = Clause([pos(f(b), b)])
        assert not demodulate(unit, unit, DemodMode.FULL, ONES).changed

    def test_rejects_non_units(self):
        C = Clause([neg(f(b), c)])
        assert not demodulate(C, Clause([neg(f(b), b)]), DemodMode.FULL, ONES).changed
        assert not demodulate(C, Clause([pos(f(b), b), pos(c, d)]), DemodMode.FULL, ONES).changed

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 10_000))
    def test_proper_subterm_never_increases_nm(self, seed):
        rng = random.Random(seed)
        t = ground_term(rng, 2)
        lhs = App(rng.choice(["f", "g"]), [t])
        R = RewriteSystem([(lhs, t)])
        C = Clause([neg(App("h", [lhs, ground_term(rng, 2)]), ground_term(rng, 1))])
        out = demodulate(C, Clause([pos(lhs, t)]), DemodMode.PROPER_SUBTERM, KBO)
        assert out.changed
        assert closure_compare(KBO, R, Variant.HORN, GroundClosure(out.clause), GroundClosure(C)) is LT


class TestCondRewrite:
    def test_rewrites_rest(self):
        C = Clause([neg(f(b), c), pos(g(f(b)), d)])
        out = parallel_cond_rewrite(C, ONES)
        assert out.clause == Clause([neg(f(b), c), pos(g(c), d)])

    def test_orientation_required(self):
        C = Clause([neg(c, d), pos(g(c), d)])
        cfg = OrderingConfig("kbo", {}, 1, ("g", "d", "c"), 1)
        # c ≺ d here, so only d is rewritten to c
        out = parallel_cond_rewrite(C, cfg)
        assert out.clause == Clause([neg(c, d), pos(g(c), c)])

    def test_no_change(self):
        assert not parallel_cond_rewrite(Clause([neg(f(b), c), pos(g(d), d)]), ONES).changed

    def test_trivial_literal_deletion(self):
        out = delete_trivial_literals(Clause([neg(b, b), pos(c, d)]))
        assert out.clause == Clause([pos(c, d)])
        assert delete_trivial_literals(Clause([neg(b, b)])).clause == Clause([])
        assert not delete_trivial_literals(Clause([pos(b, b)])).changed


class TestSubsumption:
    def test_propositional(self):
        assert subsumes(Clause([pos(b, c)]), Clause([pos(b, c), neg(d, c)]), SubsumeMode.PROPOSITIONAL)
        assert not subsumes(Clause([pos(b, c)]), Clause([pos(b, c)]), SubsumeMode.PROPOSITIONAL)
        assert not subsumes(Clause([pos(x, c)]), Clause([pos(b, c), neg(d, c)]), SubsumeMode.PROPOSITIONAL)

    def test_first_order(self):
        C = Clause([pos(h(f(X), f(y)), c)])
        Cs = Clause([pos(h(f(X), f(X)), c)])
        assert subsumes(C, Cs, SubsumeMode.FIRST_ORDER)
        assert not subsumes(Cs, C, SubsumeMode.FIRST_ORDER)
        assert not subsumes(C, C, SubsumeMode.FIRST_ORDER)

    def test_multiset_semantics(self):
        twice = Clause([pos(x, c), pos(y, c)])
        assert not subsumes(twice, Clause([pos(b, c)]), SubsumeMode.FIRST_ORDER)

    def test_off(self):
        assert not subsumes(Clause([pos(b, c)]), Clause([pos(b, c), pos(d, c)]), SubsumeMode.OFF)


class TestTautology:
    def test_syntactic(self):
        assert is_tautology(Clause([pos(x, x)]))
        assert is_tautology(Clause([neg(f(x), c), pos(f(x), c)]))
        assert not is_tautology(Clause([pos(f(x), c)]))

    def test_congruence(self):
        assert is_tautology(Clause([neg(b, c), pos(f(b), f(c))]))
        assert is_tautology(Clause([neg(b, c), neg(c, d), pos(g(b), g(d))]))
        assert not is_tautology(Clause([neg(b, c), pos(f(b), f(d))]))


class TestRegimeConfig:
    def test_defaults(self):
        horn = RegimeConfig.defaults("horn-closure")
        assert (horn.der, horn.demod, horn.subsumption) == (DerMode.FULL, DemodMode.PROPER_SUBTERM,
                                                            SubsumeMode.PROPOSITIONAL)
        nh = RegimeConfig.defaults("nonhorn-closure")
        assert nh.der is DerMode.NEGATIVE_ONLY
        cl = RegimeConfig.defaults(Regime.CLASSICAL)
        assert (cl.der, cl.demod, cl.subsumption) == (DerMode.OFF, DemodMode.FULL, SubsumeMode.FIRST_ORDER)

    @pytest.mark.parametrize("regime,overrides", [
        ("horn-closure", {"subsumption": "first-order"}),
        ("horn-closure", {"demod": "full"}),
        ("nonhorn-closure", {"der": "full"}),
    ])
    def test_blocked(self, regime, overrides):
        cfg = RegimeConfig.defaults(regime, **overrides)
        with pytest.raises(RegimeError):
            cfg.validate()
        assert any(w.startswith("forced:") for w in cfg.validate(force=True))

    def test_classical_der_warns(self):
        cfg = RegimeConfig.defaults("classical", der="full")
        assert cfg.validate() and "incomplete" in cfg.validate()[0]

    def test_licensed_has_no_warnings(self):
        assert RegimeConfig.defaults("horn-closure", der="negative-only").validate() == []
