"""Ground rewrite systems, normalization multisets and closure orderings.

Two flavours of the closure ordering are provided:

* ``HORN``: labeled redexes/normal forms ``(term, label)`` with label 0 for
  positive-at-top, 1 for positive-below-top and 2 for negative occurrences,
  compared with the multiset extension of ``(≻, >)_lex``.
* ``NONHORN``: two-element term multisets, compared with the twofold multiset
  extension of ``≻``; positive literals contribute their unnormalized sides.

Both are refined by the clause ordering on instances and finally by a
tiebreak on closures with identical instances.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .orderings import (
    EQ,
    GT,
    INC,
    LT,
    Comparison,
    OrderingConfig,
    clause_compare,
    multiset_extend,
    term_compare,
)
from .terms import (
    App,
    Clause,
    Literal,
    Term,
    apply,
    blind_key,
    canonical_text,
    is_ground,
    is_variant,
    positions,
    restrict,
    submultiset_matches,
    subterms,
)


class Variant(enum.Enum):
    HORN = "horn"
    NONHORN = "nonhorn"


class NotLeftReducedError(ValueError):
    pass


class RewriteSystem:
    """Finite set of ground rules ``lhs → rhs``."""

    def __init__(self, rules: Iterable[tuple[Term, Term]] = ()):
        self.rules: tuple[tuple[Term, Term], ...] = tuple(dict.fromkeys(rules))
        for l, r in self.rules:
            if not (is_ground(l) and is_ground(r)):
                raise ValueError(f"rule {l} -> {r} is not ground")
        self._lookup: dict[Term, Term] = {}
        self._duplicate_lhs = False
        for l, r in self.rules:
            if l in self._lookup:
                self._duplicate_lhs = True
            else:
                self._lookup[l] = r
        self._nf: dict[Term, Term] = {}
        self._rm_cache: dict[tuple[Term, int], tuple] = {}

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __contains__(self, rule) -> bool:
        l, r = rule
        return self._lookup.get(l) == r or (l, r) in self.rules

    def __eq__(self, other):
        return isinstance(other, RewriteSystem) and set(self.rules) == set(other.rules)

    def __hash__(self):
        return hash(frozenset(self.rules))

    def __repr__(self):
        return "RewriteSystem({" + ", ".join(f"{l} -> {r}" for l, r in self.rules) + "})"

    def extended(self, l: Term, r: Term) -> "RewriteSystem":
        return RewriteSystem(self.rules + ((l, r),))

    def is_contained_in(self, cfg: OrderingConfig) -> bool:
        return all(term_compare(cfg, l, r) is GT for l, r in self.rules)

    def is_left_reduced(self) -> bool:
        if self._duplicate_lhs:
            return False
        lhss = set(self._lookup)
        for l in lhss:
            for s in subterms(l):
                if s != l and s in lhss:
                    return False
        return True

    def is_reducible(self, t: Term) -> bool:
        return any(s in self._lookup for s in subterms(t))

    def rhs_for(self, t: Term) -> Optional[Term]:
        return self._lookup.get(t)

    def normalize(self, t: Term) -> Term:
        """Leftmost-innermost normal form."""
        nf = self._nf.get(t)
        if nf is not None:
            return nf
        if t.args:
            args = tuple(self.normalize(a) for a in t.args)
            s = t if args == t.args else App(t.fn, args)
        else:
            s = t
        r = self._lookup.get(s)
        nf = s if r is None else self.normalize(r)
        self._nf[t] = nf
        return nf

    def joinable(self, s: Term, t: Term) -> bool:
        return self.normalize(s) == self.normalize(t)

    def literal_true(self, lit: Literal) -> bool:
        return self.joinable(lit.lhs, lit.rhs) == lit.positive

    def clause_true(self, c: Clause) -> bool:
        return any(self.literal_true(l) for l in c.literals)

    def _rm(self, t: Term, m: int) -> tuple:
        key = (t, m)
        hit = self._rm_cache.get(key)
        if hit is not None:
            return hit
        out: list = []
        below = m if m > 0 else 1
        if t.args:
            args = []
            for a in t.args:
                out.extend(self._rm(a, below))
                args.append(self.normalize(a))
            s = App(t.fn, args)
        else:
            s = t
        r = self._lookup.get(s)
        if r is not None:
            out.append((s, m))
            out.extend(self._rm(r, m))
        res = tuple(out)
        self._rm_cache[key] = res
        return res


def _require_left_reduced(R: RewriteSystem) -> None:
    if not R.is_left_reduced():
        raise NotLeftReducedError(f"{R} is not left-reduced")


def is_left_reduced(R: RewriteSystem) -> bool:
    return R.is_left_reduced()


def normalize(R: RewriteSystem, t: Term) -> Term:
    return R.normalize(t)


def rm_horn(R: RewriteSystem, t: Term, m: int) -> Counter:
    """Labeled redexes met while normalizing the ground term ``t`` with label ``m``.

    Steps at the top keep label ``m``; steps below the top get label 1 when
    ``m == 0``.
    """
    _require_left_reduced(R)
    if m not in (0, 1, 2):
        raise ValueError(f"label must be 0, 1 or 2, got {m}")
    return Counter(R._rm(t, m))


def rm_nh(R: RewriteSystem, t: Term) -> Counter:
    """Redexes ``u`` of normalizing ``t``, each as the pair ``{u, u}``."""
    _require_left_reduced(R)
    return Counter(pair(u, u) for u, _ in R._rm(t, 2))


def pair(a: Term, b: Term) -> tuple[Term, Term]:
    """Canonical two-element multiset."""
    return (a, b) if hash(a) <= hash(b) else (b, a)


# ---------------------------------------------------------------------------
# subterm sets

def _side_sets(c: Clause):
    ss_neg: set[Term] = set()
    ss_pos_below: set[Term] = set()
    ts_neg: set[Term] = set()
    ts_pos: set[Term] = set()
    for lit in c.literals:
        for side in lit.sides:
            if lit.positive:
                ts_pos.add(side)
                for p, s in positions(side):
                    if p:
                        ss_pos_below.add(s)
            else:
                ts_neg.add(side)
                ss_neg.update(subterms(side))
    return ss_neg, ss_pos_below, ts_neg, ts_pos


def lss_lts(c: Clause) -> tuple[set[tuple[Term, int]], set[tuple[Term, int]]]:
    """Labeled subterm set and labeled topterm set of a clause."""
    ss_neg, ss_pos_below, ts_neg, ts_pos = _side_sets(c)
    lss = {(t, 2) for t in ss_neg}
    lss |= {(t, 1) for t in ss_pos_below - ss_neg}
    lss |= {(t, 0) for t in ts_pos - (ss_pos_below | ss_neg)}
    lts = {(t, 2) for t in ts_neg} | {(t, 0) for t in ts_pos - ts_neg}
    return lss, lts


def ss_ts_nh(c: Clause) -> tuple[set[Term], set[Term]]:
    """Subterm set and topterm set of the negative literals."""
    ss_neg, _, ts_neg, _ = _side_sets(c)
    return ss_neg, ts_neg


# ---------------------------------------------------------------------------
# ground closures

class GroundClosure:
    """A clause paired with a grounding substitution.

    Two closures are equal when their clauses are variants and their ground
    instances coincide; ``theta`` is restricted to the clause variables.
    """

    __slots__ = ("clause", "theta", "_instance", "_canon", "_hash")

    def __init__(self, clause: Clause, theta: Mapping[str, Term] | None = None):
        theta = dict(theta or {})
        names = clause.vars()
        missing = names - set(theta)
        if missing:
            raise ValueError(f"substitution does not ground {sorted(missing)}")
        self.clause = clause
        self.theta = restrict(theta, sorted(names))
        for x, t in self.theta.items():
            if not is_ground(t):
                raise ValueError(f"{x} is mapped to the non-ground term {t}")
        self._instance = clause.subst(self.theta)
        self._canon = None
        self._hash = None

    @property
    def instance(self) -> Clause:
        return self._instance

    @property
    def canon(self) -> str:
        if self._canon is None:
            self._canon = canonical_text(self.clause)
        return self._canon

    @property
    def is_bottom(self) -> bool:
        return self.clause.is_empty

    def term(self, t: Term) -> Term:
        return apply(self.theta, t)

    def __eq__(self, other):
        if not isinstance(other, GroundClosure):
            return NotImplemented
        if self.is_bottom and other.is_bottom:
            return True
        if self._instance != other._instance or not is_variant(self.clause, other.clause):
            return False
        # some renaming must carry one closure onto the other, substitution included
        for rho in submultiset_matches(self.clause, other.clause):
            if all(apply(other.theta, rho[x]) == t for x, t in self.theta.items()):
                return True
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._instance, blind_key(self.clause)))
        return self._hash

    def __repr__(self):
        return f"GroundClosure({self})"

    def __str__(self):
        if not self.theta:
            return f"({self.clause} · ∅)"
        sub = ", ".join(f"{x}->{t}" for x, t in sorted(self.theta.items()))
        return f"({self.clause} · {{{sub}}})"


def nm_horn(R: RewriteSystem, clo: GroundClosure) -> Counter:
    """Labeled normalization multiset of a ground closure."""
    _require_left_reduced(R)
    lss, lts = lss_lts(clo.clause)
    out: Counter = Counter()
    theta = clo.theta
    for t, m in lss:
        if t.is_var:
            out.update(R._rm(theta[t.name], m))
        else:
            inst = App(t.fn, [R.normalize(apply(theta, a)) for a in t.args]) if t.args else t
            out.update(R._rm(inst, m))
    for t, m in lts:
        out[(R.normalize(apply(theta, t)), m)] += 1
    return out


def nm_nh(R: RewriteSystem, clo: GroundClosure) -> Counter:
    """Normalization multiset of two-element term multisets."""
    _require_left_reduced(R)
    ss, ts = ss_ts_nh(clo.clause)
    out: Counter = Counter()
    theta = clo.theta
    for t in ss:
        if t.is_var:
            inst = theta[t.name]
        elif t.args:
            inst = App(t.fn, [R.normalize(apply(theta, a)) for a in t.args])
        else:
            inst = t
        for u, _ in R._rm(inst, 2):
            out[pair(u, u)] += 1
    for t in ts:
        nf = R.normalize(apply(theta, t))
        out[pair(nf, nf)] += 1
    for lit in clo.clause.literals:
        if lit.positive:
            out[pair(apply(theta, lit.lhs), apply(theta, lit.rhs))] += 1
    return out


def _elements(c: Counter) -> list:
    return list(c.elements())


def labeled_compare(cfg: OrderingConfig, a: tuple[Term, int], b: tuple[Term, int]) -> Comparison:
    r = term_compare(cfg, a[0], b[0])
    if r is not EQ:
        return r
    if a[1] == b[1]:
        return EQ
    return GT if a[1] > b[1] else LT


def pair_compare(cfg: OrderingConfig, a: tuple[Term, Term], b: tuple[Term, Term]) -> Comparison:
    return multiset_extend(lambda x, y: term_compare(cfg, x, y), a, b)


def compare_nm_horn(cfg: OrderingConfig, m1: Counter, m2: Counter) -> Comparison:
    return _compare_counters(m1, m2, lambda a, b: labeled_compare(cfg, a, b))


def compare_nm_nh(cfg: OrderingConfig, m1: Counter, m2: Counter) -> Comparison:
    return _compare_counters(m1, m2, lambda a, b: pair_compare(cfg, a, b))


def _compare_counters(m1: Counter, m2: Counter, base) -> Comparison:
    # elements are canonical, so cancellation can use plain counter arithmetic
    r1 = m1 - m2
    r2 = m2 - m1
    if not r1 and not r2:
        return EQ
    return multiset_extend(base, _elements(r1), _elements(r2))


def clo_measure(clo: GroundClosure) -> tuple[int, int, str]:
    return (clo.clause.fn_count(), len(clo.clause.vars()), clo.canon)


def clo_tiebreak(clo1: GroundClosure, clo2: GroundClosure) -> Comparison:
    """Well-founded tiebreak on closures with the same ground instance.

    Fewer function symbols in the clause skeleton is larger, then more
    distinct variables, then the canonical text. A more general closure is
    therefore larger than a proper instance of it.
    """
    if clo1.instance != clo2.instance:
        raise ValueError("tiebreak needs closures with identical ground instances")
    if clo1 == clo2:
        return EQ
    f1, v1, t1 = clo_measure(clo1)
    f2, v2, t2 = clo_measure(clo2)
    if f1 != f2:
        return GT if f1 < f2 else LT
    if v1 != v2:
        return GT if v1 > v2 else LT
    if t1 != t2:
        return GT if t1 > t2 else LT
    return EQ


def nm(R: RewriteSystem, clo: GroundClosure, variant: Variant) -> Counter:
    return nm_horn(R, clo) if variant is Variant.HORN else nm_nh(R, clo)


def compare_nm(cfg: OrderingConfig, variant: Variant, m1: Counter, m2: Counter) -> Comparison:
    if variant is Variant.HORN:
        return compare_nm_horn(cfg, m1, m2)
    return compare_nm_nh(cfg, m1, m2)


def closure_compare(
    cfg: OrderingConfig,
    R: RewriteSystem,
    variant: Variant,
    clo1: GroundClosure,
    clo2: GroundClosure,
) -> Comparison:
    """The R-normalization closure ordering ``≻≻_R``."""
    variant = Variant(variant)
    r = compare_nm(cfg, variant, nm(R, clo1, variant), nm(R, clo2, variant))
    if r is not EQ:
        return r
    r = clause_compare(cfg, clo1.instance, clo2.instance)
    if r is not EQ:
        return r
    return clo_tiebreak(clo1, clo2)


@dataclass
class ClosureOrder:
    """``≻≻_R`` with memoized normalization multisets for one fixed ``R``."""

    cfg: OrderingConfig
    R: RewriteSystem
    variant: Variant
    _nm: dict = field(default_factory=dict)

    def multiset(self, clo: GroundClosure) -> Counter:
        m = self._nm.get(clo)
        if m is None:
            m = nm(self.R, clo, self.variant)
            self._nm[clo] = m
        return m

    def compare(self, a: GroundClosure, b: GroundClosure) -> Comparison:
        r = compare_nm(self.cfg, self.variant, self.multiset(a), self.multiset(b))
        if r is not EQ:
            return r
        r = clause_compare(self.cfg, a.instance, b.instance)
        if r is not EQ:
            return r
        return clo_tiebreak(a, b)

    def less(self, a: GroundClosure, b: GroundClosure) -> bool:
        return self.compare(a, b) is LT
