import random

from derlab import calculus
from derlab.orderings import OrderingConfig
from derlab.redundancy import UniverseBound, ground_entails, ground_instances, inference_redundant
from derlab.replay import C6, scenario, scenario_ordering
from derlab.rewriting import GroundClosure, Variant
from derlab.terms import App, BOTTOM, Clause, Var, const, is_variant, neg, pos, rename_apart

from gen import KBO
from lemma_suites import _premise_pair, _single, inference_suite

b, b1, c, c1, d = const("b"), const("b'"), const("c"), const("c'"), const("d")
x, y, X = Var("x"), Var("y"), Var("X")
EX1 = scenario_ordering()
ONES = OrderingConfig("kbo", {}, 1, ("f", "g", "h", "b", "c", "d"), 1)


def f(*a):
    return App("f", a)


def g(*a):
    return App("g", a)


def _concls(infs):
    return [i.conclusion for i in infs]


class TestParallelSuperposition:
    def test_c1_into_c2(self):
        C1, C2 = scenario().clause_list()[:2]
        left, _ = rename_apart(C1, C2.vars(), prefix="Z")
        got = _concls(calculus.parallel_superposition(left, C2, EX1))
        assert len(got) == 1 and is_variant(got[0], C6)

    def test_c8_into_c4(self):
        got = _concls(calculus.parallel_superposition(Clause([pos(b1, c1)]), Clause([neg(g(b1), g(c1))]), EX1))
        assert got == [Clause([neg(g(c1), g(c1))])]

    def test_no_overlap(self):
        assert calculus.parallel_superposition(Clause([pos(f(b), c)]), Clause([neg(g(d), d)]), ONES) == []

    def test_all_occurrences_replaced(self):
        got = _concls(calculus.parallel_superposition(Clause([pos(f(b), c)]), Clause([neg(g(f(b)), f(b))]), ONES))
        assert got == [Clause([neg(g(c), c)])]


class TestEqualityResolution:
    def test_examples(self):
        assert _concls(calculus.equality_resolution(Clause([neg(g(c1), g(c1))]), EX1)) == [BOTTOM]
        assert calculus.equality_resolution(Clause([pos(b, c)]), EX1) == []

    def test_maximal_literal(self):
        # only g(x) != g(f(y)) is maximal after σ = {x -> f(y)}; resolving it
        # leaves the other literal instantiated
        C = Clause([neg(x, f(y)), neg(g(x), g(f(y)))])
        got = _concls(calculus.equality_resolution(C, ONES))
        assert got == [Clause([neg(f(y), f(y))])]


class TestEqualityFactoring:
    def test_ground(self):
        cfg = OrderingConfig("kbo", {}, 1, ("f", "b", "c", "d"), 1)
        got = _concls(calculus.equality_factoring(Clause([pos(f(b), c), pos(f(b), d)]), cfg))
        assert Clause([neg(c, d), pos(f(b), d)]) in got

    def test_horn_and_non_ground(self):
        assert calculus.equality_factoring(Clause([neg(f(b), c), pos(f(b), d)]), ONES) == []
        got = _concls(calculus.equality_factoring(Clause([pos(f(x), c), pos(f(y), c)]), ONES))
        assert any(is_variant(k, Clause([neg(c, c), pos(f(x), c)])) for k in got)


class TestGroundRules:
    def test_ps1_instance_of_c1_c2(self):
        C1, C2 = scenario().clause_list()[:2]
        D = GroundClosure(C1, {"X": c})
        C = GroundClosure(C2, {"X": c, "Y": d})
        got = _concls(calculus.ground_ps1(D, C, EX1))
        want = GroundClosure(C6, {"X": c})
        assert want in got

    def test_ps1_ground(self):
        got = _concls(calculus.ground_ps1(GroundClosure(Clause([pos(b1, c1)])),
                                          GroundClosure(Clause([neg(g(b1), g(c1))])), EX1))
        assert got == [GroundClosure(Clause([neg(g(c1), g(c1))]))]
        assert calculus.ground_ps1(GroundClosure(Clause([pos(f(b), c)])), GroundClosure(Clause([neg(g(d), d)])), ONES) == []

    def test_ps2_at_variable(self):
        D = GroundClosure(Clause([pos(f(b), b)]))
        C = GroundClosure(Clause([neg(g(X), d)]), {"X": f(b)})
        got = _concls(calculus.ground_ps2(D, C, ONES))
        assert got == [GroundClosure(Clause([neg(g(X), d)]), {"X": b})]

    def test_ps2_trivial_cases(self):
        D = GroundClosure(Clause([pos(f(b), b)]))
        assert calculus.ground_ps2(D, GroundClosure(Clause([neg(g(f(b)), d)])), ONES) == []
        assert calculus.ground_ps2(D, GroundClosure(Clause([neg(g(X), d)]), {"X": c}), ONES) == []

    def test_ground_er_needs_maximal_literal(self):
        # b != b is dominated by g(b) = d in the instance, so no inference
        assert calculus.ground_er(GroundClosure(C6, {"X": b}), EX1) == []
        assert calculus.ground_er(GroundClosure(C6, {"X": b}), ONES) == []
        assert calculus.ground_er(GroundClosure(C6, {"X": c}), EX1) == []

    def test_ground_er(self):
        clo = GroundClosure(Clause([neg(g(X), g(b)), pos(X, d)]), {"X": b})
        got = _concls(calculus.ground_er(clo, ONES))
        assert got == [GroundClosure(Clause([pos(b, d)]), {})]

    def test_ground_ef_nonhorn_setting(self):
        lpo = OrderingConfig("lpo", precedence=("f", "c5", "c4", "b"))
        x4, x5 = Var("x4"), Var("x5")
        clo = GroundClosure(Clause([pos(f(x4), const("c4")), pos(f(x5), const("c5"))]), {"x4": b, "x5": b})
        got = _concls(calculus.ground_ef(clo, lpo))
        # f(x5) = c5 is maximal; factoring it with f(x4) = c4 gives c5 != c4 | f(x4) = c4
        want = GroundClosure(Clause([neg(const("c5"), const("c4")), pos(f(x4), const("c4"))]), {"x4": b})
        assert got == [want]


class TestSoundness:
    def test_ground_conclusions_entailed(self):
        rng = random.Random(21)
        checked = 0
        for _ in range(300):
            D, C = _premise_pair(rng, horn=rng.random() < 0.5)
            for inf in calculus.ground_ps1(D, C, KBO) + calculus.ground_ps2(D, C, KBO):
                assert ground_entails([D.instance, C.instance], inf.conclusion.instance)
                checked += 1
            one = _single(rng, False, rng.random() < 0.5)
            for inf in calculus.ground_er(one, KBO) + calculus.ground_ef(one, KBO):
                assert ground_entails([one.instance], inf.conclusion.instance)
                checked += 1
        assert checked > 100

    def test_non_ground_conclusions_entailed_on_instances(self):
        pf = scenario()
        cfg = pf.ordering()
        N = pf.clause_list()
        bound = UniverseBound(terms=(b, c, d))
        for p in N:
            for q in N:
                lp, _ = rename_apart(p, q.vars(), prefix="Z")
                for inf in calculus.parallel_superposition(lp, q, cfg):
                    premises = [gc.instance for gc in ground_instances(lp, bound) + ground_instances(q, bound)]
                    for gc in ground_instances(inf.conclusion, bound):
                        assert ground_entails(premises, gc.instance)


class TestOrderingSlices:
    def test_small_slices(self):
        for kind, variant in (("er", Variant.HORN), ("ps", Variant.HORN), ("ps", Variant.NONHORN),
                              ("ef", Variant.NONHORN)):
            res = inference_suite(kind, variant, n=60, seed=99, max_rules=1)
            assert res.passed, res.failures[:2]
            assert res.checks > res.cases


class TestLifting:
    def test_ground_inferences_are_lifted_or_redundant(self):
        """Every ground inference among instances of the scenario clauses is an
        instance of a non-ground inference or redundant at the bound."""
        pf = scenario()
        cfg = pf.ordering()
        N = pf.clause_list()
        bound = UniverseBound(terms=(c, d), max_rules=1, candidate_cap=200)
        inst = [gc for C in N for gc in ground_instances(C, bound)]
        ng = []
        for p in N:
            ng += [i.conclusion for i in calculus.equality_resolution(p, cfg)]
            for q in N:
                lp, _ = rename_apart(p, q.vars(), prefix="Z")
                ng += [i.conclusion for i in calculus.parallel_superposition(lp, q, cfg)]
        lifted = [gc for C in ng for gc in ground_instances(C, bound)]
        infs = calculus.ground_inferences(inst, cfg, Variant.HORN)
        assert infs
        for inf in infs:
            if inf.conclusion in lifted:
                continue
            assert inference_redundant(inf, inst, bound, cfg, Variant.HORN), inf
