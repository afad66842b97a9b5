import itertools

import pytest
from hypothesis import given, settings, strategies as st

from derlab.terms import (
    App,
    BOTTOM,
    ClashError,
    Clause,
    OccursCheckError,
    Var,
    apply,
    compose,
    const,
    is_variant,
    match,
    mgu,
    neg,
    occurrences,
    pos,
    positions,
    rename_apart,
    replace_all,
    subterm_at,
    unify,
)

b, b1, c, c1, d = const("b"), const("b'"), const("c"), const("c'"), const("d")
x, y, x1 = Var("x"), Var("y"), Var("x'")


def f(*a):
    return App("f", a)


def g(*a):
    return App("g", a)


def h(*a):
    return App("h", a)


# hypothesis strategies over f/2, g/1, b, c and variables x, y, z
_leaf = st.sampled_from([b, c, x, y, Var("z")])
terms = st.recursive(
    _leaf,
    lambda inner: st.one_of(st.builds(lambda a: g(a), inner), st.builds(lambda a, b_: f(a, b_), inner, inner)),
    max_leaves=8,
)
ground_terms = st.recursive(
    st.sampled_from([b, c]),
    lambda inner: st.one_of(st.builds(lambda a: g(a), inner), st.builds(lambda a, b_: f(a, b_), inner, inner)),
    max_leaves=6,
)


class TestTerms:
    def test_structural_equality_and_hash(self):
        assert f(x, d) == f(Var("x"), const("d"))
        assert hash(g(b)) == hash(g(const("b")))
        assert f(x, d) != f(d, x)

    def test_positions_and_subterm_at(self):
        t = f(g(b), c)
        got = {p: s for p, s in positions(t)}
        assert got == {(): t, (1,): g(b), (1, 1): b, (2,): c}
        assert subterm_at(t, (1, 1)) == b

    def test_str(self):
        assert str(f(x, d)) == "f(x,d)"
        assert str(Clause([neg(x, b), pos(g(x), d)])) == "x != b | g(x) = d"
        assert str(BOTTOM) == "$false"


class TestApply:
    def test_grounding_instance(self):
        assert apply({"x": c}, x) == c
        assert apply({"x": b}, h(g(g(x)))) == h(g(g(b)))

    def test_identity(self):
        t = f(g(x), y)
        assert apply({}, t) is t


class TestUnification:
    def test_example_overlap(self):
        sigma = unify([(f(x, d), f(x1, y))])
        assert apply(sigma, f(x, d)) == apply(sigma, f(x1, y))
        assert apply(sigma, y) == d
        assert len(sigma) == 2

    def test_identity_and_failures(self):
        assert unify([(x, x)]) == {}
        with pytest.raises(OccursCheckError):
            unify([(x, g(x))])
        with pytest.raises(ClashError):
            unify([(g(x), f(x, y))])
        assert mgu((b, c)) is None

    @given(terms, terms)
    @settings(max_examples=200, deadline=None)
    def test_mgu_idempotent_and_unifies(self, s, t):
        sigma = mgu((s, t))
        if sigma is None:
            return
        assert apply(sigma, s) == apply(sigma, t)
        for v in sigma.values():
            assert apply(sigma, v) == v

    @given(terms, st.dictionaries(st.sampled_from(["x", "y", "z"]), terms, max_size=3),
           st.dictionaries(st.sampled_from(["x", "y", "z"]), terms, max_size=3))
    @settings(max_examples=200, deadline=None)
    def test_mgu_is_most_general(self, t, s1, s2):
        # two instances of a common term; θ = s1 on the left copy, s2 on the right
        left = t
        right = apply({v: Var(v + "_r") for v in "xyz"}, t)
        theta = dict(s1)
        theta.update({k + "_r": v for k, v in s2.items()})
        lhs, rhs = apply(theta, left), apply(theta, right)
        if lhs != rhs:
            return
        sigma = mgu((left, right))
        assert sigma is not None
        for v in list(sigma) + list(theta):
            assert apply(theta, apply(sigma, Var(v))) == apply(theta, Var(v))
        assert compose(theta, sigma) == {k: v for k, v in compose(theta, sigma).items()}

    def test_match_one_way(self):
        assert match(f(x, d), f(c, d)) == {"x": c}
        assert match(f(c, d), f(x, d)) is None


class TestOccurrences:
    def test_both_literals(self):
        c6 = Clause([neg(x, b), pos(g(x), d)])
        occ = occurrences(x, c6)
        assert len(occ) == 2
        assert {i for i, _ in occ} == {0, 1}

    def test_absent_and_nested(self):
        assert occurrences(c, Clause([pos(f(b, b), d)])) == []
        occ = occurrences(g(b), Clause([pos(g(g(b)), c)]))
        assert occ == [(0, (1, 1))]

    def test_replace_all(self):
        assert replace_all(Clause([neg(g(b1), g(c1))]), b1, c1) == Clause([neg(g(c1), g(c1))])
        cl = Clause([neg(x, b), pos(g(x), d)])
        assert replace_all(cl, x, x) == cl
        assert replace_all(cl, x, b) == Clause([neg(b, b), pos(g(b), d)])

    @given(st.lists(st.tuples(terms, terms, st.booleans()), min_size=1, max_size=3), ground_terms)
    @settings(max_examples=150, deadline=None)
    def test_replace_all_removes_every_occurrence(self, lits, new):
        cl = Clause(pos(a, b_) if p else neg(a, b_) for a, b_, p in lits)
        t = g(x)
        out = replace_all(cl, t, new)
        if t not in list(itertools.chain.from_iterable(
                [s for _, s in positions(side)] for lit in [*out.literals] for side in lit.sides)):
            assert occurrences(t, out) == []
        occ = occurrences(t, cl)
        for i, p in occ:
            lit = out.literals[i]
            side = lit.lhs if p[0] == 1 else lit.rhs
            assert subterm_at(side, p[1:]) == new


class TestClauses:
    def test_multiset_equality(self):
        assert Clause([pos(b, c), neg(d, c)]) == Clause([neg(c, d), pos(c, b)])
        assert Clause([pos(b, c), pos(b, c)]) != Clause([pos(b, c)])

    def test_variants(self):
        c6 = Clause([neg(x, b), pos(g(x), d)])
        renamed, _ = rename_apart(c6, {"x"})
        assert "x" not in renamed.vars()
        assert is_variant(c6, renamed)
        assert not is_variant(Clause([pos(f(x, y), c)]), Clause([pos(f(x, x), c)]))
