"""Reduction orderings (KBO, LPO) and their literal/clause/multiset extensions."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .terms import Clause, Literal, Term, var_occurrences


class Comparison(enum.Enum):
    GREATER = ">"
    LESS = "<"
    EQUAL = "="
    INCOMPARABLE = "?"

    def flip(self) -> "Comparison":
        return _FLIP[self]


_FLIP = {
    Comparison.GREATER: Comparison.LESS,
    Comparison.LESS: Comparison.GREATER,
    Comparison.EQUAL: Comparison.EQUAL,
    Comparison.INCOMPARABLE: Comparison.INCOMPARABLE,
}

GT, LT, EQ, INC = Comparison.GREATER, Comparison.LESS, Comparison.EQUAL, Comparison.INCOMPARABLE


class OrderingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OrderingConfig:
    """KBO or LPO over a fixed signature.

    ``precedence`` lists symbols from largest to smallest. Symbols missing
    from ``weights`` get ``default_weight``.
    """

    kind: str = "kbo"
    weights: Mapping[str, int] = field(default_factory=dict)
    var_weight: int = 1
    precedence: Sequence[str] = ()
    default_weight: int = 1

    def __post_init__(self):
        if self.kind not in ("kbo", "lpo"):
            raise OrderingError(f"unknown ordering kind {self.kind!r}")
        object.__setattr__(self, "weights", dict(self.weights))
        object.__setattr__(self, "precedence", tuple(self.precedence))
        if len(set(self.precedence)) != len(self.precedence):
            raise OrderingError("precedence lists a symbol twice")
        rank = {f: len(self.precedence) - i for i, f in enumerate(self.precedence)}
        object.__setattr__(self, "_rank", rank)
        object.__setattr__(self, "_cache", {})

    def weight_of(self, fn: str) -> int:
        return self.weights.get(fn, self.default_weight)

    def prec_gt(self, f: str, g: str) -> bool:
        rf, rg = self._rank.get(f), self._rank.get(g)
        if rf is None or rg is None:
            # unknown symbols: fall back to a fixed total order on names
            if rf is None and rg is None:
                return f > g
            return rg is None
        return rf > rg

    def check_admissible(self, signature: Mapping[str, int] | None = None) -> None:
        """Raise :class:`OrderingError` unless the config is a valid KBO/LPO."""
        sig = dict(signature or {})
        missing = [f for f in sig if f not in self._rank]
        if missing and self.precedence:
            raise OrderingError(f"precedence is not total: missing {sorted(missing)}")
        if self.kind != "kbo":
            return
        if self.var_weight <= 0:
            raise OrderingError("variable weight must be positive")
        for f, n in sig.items():
            w = self.weight_of(f)
            if w < 0:
                raise OrderingError(f"negative weight for {f}")
            if n == 0 and w < self.var_weight:
                raise OrderingError(f"constant {f} weighs less than a variable")
            if n == 1 and w == 0:
                others = [g for g in sig if g != f]
                if any(not self.prec_gt(f, g) for g in others):
                    raise OrderingError(f"unary symbol {f} of weight 0 must be precedence-maximal")

    def with_weight(self, fn: str, w: int) -> "OrderingConfig":
        ws = dict(self.weights)
        ws[fn] = w
        return OrderingConfig(self.kind, ws, self.var_weight, self.precedence, self.default_weight)


# ---------------------------------------------------------------------------
# term orderings

def _kbo_weight(cfg: OrderingConfig, t: Term) -> int:
    if t.is_var:
        return cfg.var_weight
    return cfg.weight_of(t.fn) + sum(_kbo_weight(cfg, a) for a in t.args)


def _dominates(a: Counter, b: Counter) -> bool:
    return all(a[x] >= n for x, n in b.items())


def _kbo(cfg: OrderingConfig, s: Term, t: Term) -> Comparison:
    if s == t:
        return EQ
    vs, vt = var_occurrences(s), var_occurrences(t)
    s_ok, t_ok = _dominates(vs, vt), _dominates(vt, vs)
    ws, wt = _kbo_weight(cfg, s), _kbo_weight(cfg, t)
    if ws > wt:
        return GT if s_ok else INC
    if ws < wt:
        return LT if t_ok else INC
    if s.is_var:
        return LT if t_ok else INC
    if t.is_var:
        return GT if s_ok else INC
    if s.fn != t.fn:
        if cfg.prec_gt(s.fn, t.fn):
            return GT if s_ok else INC
        return LT if t_ok else INC
    for a, b in zip(s.args, t.args):
        r = term_compare(cfg, a, b)
        if r is EQ:
            continue
        if r is GT:
            return GT if s_ok else INC
        if r is LT:
            return LT if t_ok else INC
        return INC
    return EQ


def _lpo_gt(cfg: OrderingConfig, s: Term, t: Term) -> bool:
    if s.is_var or s == t:
        return False
    if t.is_var:
        return any(a == t or _lpo_gt(cfg, a, t) for a in s.args)
    if any(a == t or _lpo_gt(cfg, a, t) for a in s.args):
        return True
    if s.fn != t.fn:
        if cfg.prec_gt(s.fn, t.fn):
            return all(_lpo_gt(cfg, s, b) for b in t.args)
        return False
    for a, b in zip(s.args, t.args):
        if a == b:
            continue
        return _lpo_gt(cfg, a, b) and all(_lpo_gt(cfg, s, c) for c in t.args)
    return False


def term_compare(cfg: OrderingConfig, s: Term, t: Term) -> Comparison:
    """Compare two terms under the configured reduction ordering."""
    if s == t:
        return EQ
    cache = cfg._cache
    key = (s, t)
    r = cache.get(key)
    if r is not None:
        return r
    if cfg.kind == "kbo":
        r = _kbo(cfg, s, t)
    elif _lpo_gt(cfg, s, t):
        r = GT
    elif _lpo_gt(cfg, t, s):
        r = LT
    else:
        r = INC
    if len(cache) > 500_000:
        cache.clear()
    cache[key] = r
    cache[(t, s)] = r.flip()
    return r


def term_gt(cfg: OrderingConfig, s: Term, t: Term) -> bool:
    return term_compare(cfg, s, t) is GT


def not_le(r: Comparison) -> bool:
    """The lifted side condition ``a ⋠ b`` given ``r = compare(a, b)``."""
    return r is GT or r is INC


# ---------------------------------------------------------------------------
# multiset extension

def multiset_extend(base: Callable[[object, object], Comparison], m1: Sequence, m2: Sequence) -> Comparison:
    """Dershowitz–Manna extension of the strict order ``base``.

    Elements that ``base`` reports EQUAL cancel each other out first.
    """
    rest1 = list(m1)
    rest2 = []
    for b in m2:
        for i, a in enumerate(rest1):
            if a == b or base(a, b) is EQ:
                del rest1[i]
                break
        else:
            rest2.append(b)
    if not rest1 and not rest2:
        return EQ

    def dominated(xs, ys, want):
        return all(any(base(x, y) is want for x in xs) for y in ys)

    if rest1 and dominated(rest1, rest2, GT):
        return GT
    if rest2 and dominated(rest2, rest1, GT):
        return LT
    return INC


def literal_encoding(lit: Literal) -> tuple[Term, ...]:
    if lit.positive:
        return (lit.lhs, lit.rhs)
    return (lit.lhs, lit.lhs, lit.rhs, lit.rhs)


def _cached(cfg: OrderingConfig, key, compute) -> Comparison:
    cache = cfg._cache
    r = cache.get(key)
    if r is None:
        r = compute()
        if len(cache) > 500_000:
            cache.clear()
        cache[key] = r
    return r


def literal_compare(cfg: OrderingConfig, l1: Literal, l2: Literal) -> Comparison:
    if l1 == l2:
        return EQ
    return _cached(
        cfg,
        ("L", l1, l2),
        lambda: multiset_extend(
            lambda a, b: term_compare(cfg, a, b), literal_encoding(l1), literal_encoding(l2)
        ),
    )


def clause_compare(cfg: OrderingConfig, c: Clause, d: Clause) -> Comparison:
    return _cached(
        cfg,
        ("C", c, d),
        lambda: multiset_extend(lambda a, b: literal_compare(cfg, a, b), c.literals, d.literals),
    )


def maximality(cfg: OrderingConfig, c: Clause, i: int, strict: bool) -> bool:
    """Is literal ``i`` of ``c`` (strictly) maximal? Incomparable literals do not block."""
    lit = c.literals[i]
    for j, other in enumerate(c.literals):
        if j == i:
            continue
        r = literal_compare(cfg, other, lit)
        if r is GT or (strict and r is EQ):
            return False
    return True
