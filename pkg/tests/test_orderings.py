import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from derlab.orderings import (
    EQ,
    GT,
    INC,
    LT,
    OrderingConfig,
    OrderingError,
    clause_compare,
    literal_compare,
    maximality,
    multiset_extend,
    term_compare,
)
from derlab.replay import scenario_ordering
from derlab.terms import App, Clause, Var, apply, const, neg, pos, positions, replace_at

from gen import KBO, LPO, ground_term, term

b, b1, c, c1, d = const("b"), const("b'"), const("c"), const("c'"), const("d")
x, y = Var("X"), Var("Y")
EX1 = scenario_ordering()
ONES = OrderingConfig("kbo", {}, 1, ("f", "g", "h", "b", "c", "d"), 1)


def f(*a):
    return App("f", a)


def g(*a):
    return App("g", a)


def _brute_multiset(base, m1, m2):
    """Oracle: M1 > M2 iff M1 ≠ M2 and some split X ⊆ M1, Y ⊆ M2 with
    M1 - X = M2 - Y, X non-empty and every y in Y dominated by some x in X."""
    def gt(a, b_):
        n1 = len(a)
        for xs in itertools.product([0, 1], repeat=n1):
            X = [a[i] for i in range(n1) if xs[i]]
            restA = sorted((a[i] for i in range(n1) if not xs[i]), key=repr)
            if not X:
                continue
            for ys in itertools.product([0, 1], repeat=len(b_)):
                Y = [b_[i] for i in range(len(b_)) if ys[i]]
                restB = sorted((b_[i] for i in range(len(b_)) if not ys[i]), key=repr)
                if restA == restB and all(any(base(p, q) is GT for p in X) for q in Y):
                    return True
        return False

    if sorted(m1, key=repr) == sorted(m2, key=repr):
        return EQ
    if gt(m1, m2):
        return GT
    if gt(m2, m1):
        return LT
    return INC


class TestConfig:
    def test_admissibility(self):
        with pytest.raises(OrderingError):
            OrderingConfig("kbo", {"b": 0}, 1, ("b",)).check_admissible({"b": 0})
        with pytest.raises(OrderingError):
            OrderingConfig("kbo", {"i": 0, "f": 1}, 1, ("f", "i")).check_admissible({"i": 1, "f": 1})
        OrderingConfig("kbo", {"i": 0, "f": 1}, 1, ("i", "f")).check_admissible({"i": 1, "f": 1})

    def test_unknown_kind(self):
        with pytest.raises(OrderingError):
            OrderingConfig("rpo")


class TestTermCompare:
    def test_examples(self):
        assert term_compare(EX1, g(c), d) is GT
        assert term_compare(EX1, f(x, d), f(x, d)) is EQ
        assert term_compare(ONES, g(g(b)), f(b)) is GT
        assert term_compare(EX1, f(x, d), x) is GT
        assert term_compare(EX1, f(x, y), g(x)) is GT

    def test_variable_condition(self):
        assert term_compare(ONES, f(x), g(y)) is INC
        assert term_compare(ONES, x, y) is INC

    def test_lpo(self):
        assert term_compare(LPO, App("f", [b]), b) is GT
        assert term_compare(LPO, App("h", [b, b]), App("f", [App("f", [b])])) is GT

    @pytest.mark.parametrize("cfg", [KBO, LPO])
    def test_ground_totality_and_antisymmetry(self, cfg):
        rng = random.Random(7)
        for _ in range(400):
            s, t = ground_term(rng, 3), ground_term(rng, 3)
            r = term_compare(cfg, s, t)
            assert (r is EQ) == (s == t)
            assert r is not INC
            assert term_compare(cfg, t, s) is r.flip()

    @pytest.mark.parametrize("cfg", [KBO, LPO])
    def test_stability_and_monotonicity(self, cfg):
        rng = random.Random(11)
        for _ in range(300):
            s, t = term(rng, 3), term(rng, 3)
            if term_compare(cfg, s, t) is not GT:
                continue
            sigma = {v: ground_term(rng, 2) for v in ("X0", "X1")}
            assert term_compare(cfg, apply(sigma, s), apply(sigma, t)) is GT
            ctx = App("h", [Var("X0"), ground_term(rng, 1)])
            assert term_compare(cfg, replace_at(ctx, (1,), s), replace_at(ctx, (1,), t)) is GT

    def test_no_long_descending_chain(self):
        rng = random.Random(3)
        for _ in range(50):
            t = ground_term(rng, 3)
            steps = 0
            while steps < 200:
                smaller = [ground_term(rng, 3) for _ in range(20)]
                smaller = [s for s in smaller if term_compare(KBO, t, s) is GT]
                if not smaller:
                    break
                t = smaller[0]
                steps += 1
            assert steps < 200


class TestMultisets:
    def test_examples(self):
        base = lambda a, b_: term_compare(EX1, a, b_)
        assert multiset_extend(base, [g(b), d], [d, d]) is GT
        assert multiset_extend(base, [g(b), d], [g(b), d]) is EQ

    def test_labeled_redexes(self):
        from derlab.rewriting import labeled_compare

        base = lambda a, b_: labeled_compare(ONES, a, b_)
        three = [(f(b), 2)] * 3
        assert multiset_extend(base, three, [(g(g(b)), 2)]) is LT

    @given(st.lists(st.integers(0, 4), max_size=5), st.lists(st.integers(0, 4), max_size=5))
    @settings(max_examples=300, deadline=None)
    def test_against_brute_force_on_integers(self, m1, m2):
        base = lambda a, b_: GT if a > b_ else LT if a < b_ else EQ
        assert multiset_extend(base, m1, m2) is _brute_multiset(base, m1, m2)

    def test_against_brute_force_on_partial_order(self):
        rng = random.Random(5)
        pool = [App("f", [Var("X0")]), App("g", [Var("X1")]), Var("X0"), Var("X1"), const("b"), const("c")]
        base = lambda a, b_: term_compare(KBO, a, b_)
        for _ in range(300):
            m1 = [rng.choice(pool) for _ in range(rng.randint(0, 4))]
            m2 = [rng.choice(pool) for _ in range(rng.randint(0, 4))]
            assert multiset_extend(base, m1, m2) is _brute_multiset(base, m1, m2)


class TestLiteralsAndClauses:
    def test_literal_examples(self):
        assert literal_compare(EX1, neg(g(c), d), pos(g(c), d)) is GT
        assert literal_compare(EX1, pos(g(c), d), pos(g(c), d)) is EQ
        assert literal_compare(EX1, pos(f(x, d), x), pos(g(x), d)) is GT

    def test_clause_examples(self):
        C = Clause([neg(g(b), c), neg(f(c), d)])
        D = Clause([neg(f(g(b)), d)])
        assert clause_compare(ONES, C, D) is LT
        assert clause_compare(ONES, C, C) is EQ
        c7 = Clause([pos(g(b), d)])
        c2 = Clause([neg(f(c, d), b), pos(g(c), d)])
        assert clause_compare(EX1, c7, c2) is GT

    def test_maximality(self):
        c2 = Clause([neg(f(x, y), b), pos(g(x), d)])
        assert maximality(EX1, c2, 0, strict=True)
        assert maximality(EX1, Clause([pos(b, c)]), 0, strict=True)
        c3 = Clause([pos(b1, c1), pos(b, c)])
        i = c3.literals.index(pos(b, c))
        assert maximality(EX1, c3, i, strict=False)
        assert not maximality(EX1, c3, 1 - i, strict=False)

    def test_ground_clause_totality(self):
        rng = random.Random(9)
        for _ in range(200):
            lits = lambda: [pos(ground_term(rng, 2), ground_term(rng, 2)) if rng.random() < 0.5
                            else neg(ground_term(rng, 2), ground_term(rng, 2)) for _ in range(rng.randint(1, 3))]
            C, D = Clause(lits()), Clause(lits())
            r = clause_compare(KBO, C, D)
            assert (r is EQ) == (C == D)
            assert r is not INC
