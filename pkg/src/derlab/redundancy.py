"""Bounded, executable versions of the redundancy notions.

The closure-based criteria quantify over every left-reduced ground rewrite
system contained in the term ordering. Here that quantifier ranges over the
systems built from a finite universe of ground terms, so every verdict is
relative to a :class:`UniverseBound`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .calculus import PS1, PS2, Inference
from .congruence import CongruenceClosure
from .orderings import GT, LT, OrderingConfig, clause_compare, term_compare
from .rewriting import ClosureOrder, GroundClosure, RewriteSystem, Variant
from .terms import App, BOTTOM, Clause, Term, apply, clause_terms, is_ground, match, subterms


class UniverseTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class UniverseBound:
    """A finite, subterm-closed universe of ground terms.

    Either list the seed ``terms`` (their subterms are added) or give a
    ``signature`` (symbol → arity) and ``max_depth`` to generate every ground
    term up to that depth. ``max_rules`` caps the size of enumerated rewrite
    systems and ``candidate_cap`` the number of rule candidates.
    """

    terms: tuple = ()
    signature: Mapping[str, int] = field(default_factory=dict)
    max_depth: int = 1
    max_terms: int = 64
    max_rules: Optional[int] = None
    candidate_cap: int = 64

    def universe(self) -> tuple[Term, ...]:
        seen: dict[Term, None] = {}
        for t in self.terms:
            if not is_ground(t):
                raise ValueError(f"universe term {t} is not ground")
            for s in subterms(t):
                seen.setdefault(s, None)
        if self.signature:
            for t in _generate(self.signature, self.max_depth, self.max_terms):
                seen.setdefault(t, None)
        if len(seen) > self.max_terms:
            raise UniverseTooLarge(f"universe has {len(seen)} terms, cap is {self.max_terms}")
        return tuple(sorted(seen, key=_term_key))

    def with_terms(self, extra: Iterable[Term]) -> "UniverseBound":
        return UniverseBound(
            tuple(self.terms) + tuple(extra), self.signature, self.max_depth,
            self.max_terms, self.max_rules, self.candidate_cap,
        )


def _term_key(t: Term) -> tuple:
    return (len(str(t)), str(t))


def _generate(signature: Mapping[str, int], max_depth: int, cap: int) -> list[Term]:
    consts = [App(f) for f, n in sorted(signature.items()) if n == 0]
    levels = list(consts)
    for _ in range(max_depth):
        new = []
        known = set(levels)
        for f, n in sorted(signature.items()):
            if n == 0:
                continue
            for args in itertools.product(levels, repeat=n):
                t = App(f, args)
                if t not in known:
                    new.append(t)
                    known.add(t)
                    if len(known) > cap:
                        raise UniverseTooLarge(f"more than {cap} ground terms at depth {max_depth}")
        levels.extend(new)
    return levels


def universe_of(closures: Iterable[GroundClosure], **kw) -> UniverseBound:
    """The bound whose universe is all terms of the given closure instances."""
    terms: dict[Term, None] = {}
    for clo in closures:
        for t in clause_terms(clo.instance):
            terms.setdefault(t, None)
    return UniverseBound(terms=tuple(terms), **kw)


# ---------------------------------------------------------------------------
# grounding

def ground_instances(c: Clause, bound: UniverseBound) -> list[GroundClosure]:
    """All closures ``(C·θ)`` with θ mapping into the universe."""
    if c.is_empty:
        return [GroundClosure(BOTTOM, {})]
    xs = sorted(c.vars())
    if not xs:
        return [GroundClosure(c, {})]
    uni = bound.universe()
    out = []
    for combo in itertools.product(uni, repeat=len(xs)):
        out.append(GroundClosure(c, dict(zip(xs, combo))))
    return out


def rule_candidates(bound: UniverseBound, cfg: OrderingConfig) -> list[tuple[Term, Term]]:
    uni = bound.universe()
    cands = [(l, r) for l in uni for r in uni if term_compare(cfg, l, r) is GT]
    if len(cands) > bound.candidate_cap:
        raise UniverseTooLarge(f"{len(cands)} rule candidates exceed the cap {bound.candidate_cap}")
    return sorted(cands, key=lambda lr: (str(lr[0]), str(lr[1])))


def _compatible(rule, chosen) -> bool:
    l, _ = rule
    for l2, _ in chosen:
        if l == l2 or any(s == l2 for s in subterms(l)) or any(s == l for s in subterms(l2)):
            return False
    return True


def enumerate_left_reduced(bound: UniverseBound, cfg: OrderingConfig) -> Iterator[RewriteSystem]:
    """Every left-reduced R over the universe contained in ``≻``, each once.

    Systems come in ascending size, and lexicographically by rule encoding
    within one size.
    """
    cands = rule_candidates(bound, cfg)
    limit = len(cands) if bound.max_rules is None else bound.max_rules

    def extend(start: int, chosen: list, k: int):
        if len(chosen) == k:
            yield RewriteSystem(chosen)
            return
        for i in range(start, len(cands)):
            if len(cands) - i < k - len(chosen):
                return
            if _compatible(cands[i], chosen):
                chosen.append(cands[i])
                yield from extend(i + 1, chosen, k)
                chosen.pop()

    for k in range(limit + 1):
        found = False
        for R in extend(0, [], k):
            found = True
            yield R
        if not found:
            return


# ---------------------------------------------------------------------------
# ground entailment

def _violated(cc: CongruenceClosure, clause: Clause) -> bool:
    for lit in clause.literals:
        equal = cc.equal(lit.lhs, lit.rhs)
        if equal == lit.positive:
            return False
    return True


def satisfiable(clauses: Sequence[Clause]) -> bool:
    """Decide satisfiability of a finite set of ground clauses.

    Searches minimal congruence models: a clause false in the least model
    of the current equations forces one of its positive literals.
    """
    for c in clauses:
        if not c.is_ground():
            raise ValueError(f"clause {c} is not ground")
    clauses = sorted(set(clauses), key=lambda c: (len(c.positive), str(c)))

    def search(cc: CongruenceClosure) -> bool:
        best = None
        for c in clauses:
            if _violated(cc, c):
                if not c.positive:
                    return False
                if best is None or len(c.positive) < len(best.positive):
                    best = c
        if best is None:
            return True
        for lit in best.positive:
            branch = cc.copy()
            branch.merge(lit.lhs, lit.rhs)
            if search(branch):
                return True
        return False

    return search(CongruenceClosure())


def ground_entails(premises: Iterable[Clause], goal: Clause) -> bool:
    """Do the ground ``premises`` entail the ground ``goal``?"""
    negated = [Clause([lit.negated()]) for lit in goal.literals]
    return not satisfiable(list(premises) + negated)


def classically_redundant(c: Clause, N: Iterable[Clause], cfg: OrderingConfig) -> bool:
    """Is ground ``c`` entailed by the members of ``N`` that are ``≺_C``-smaller?"""
    smaller = [d for d in N if clause_compare(cfg, d, c) is LT]
    return ground_entails(smaller, c)


def classical_witnesses(c: Clause, N: Iterable[Clause], cfg: OrderingConfig) -> Optional[list[Clause]]:
    """A subset-minimal list of smaller clauses entailing ``c``, or ``None``."""
    smaller = [d for d in N if clause_compare(cfg, d, c) is LT]
    if not ground_entails(smaller, c):
        return None
    base = list(smaller)
    for d in list(base):
        rest = [e for e in base if e is not d]
        if ground_entails(rest, c):
            base = rest
    return base


# ---------------------------------------------------------------------------
# closure-based redundancy

def _false_smaller_exists(order: ClosureOrder, N: Iterable[GroundClosure], clo: GroundClosure) -> bool:
    R = order.R
    for d in N:
        if d == clo or R.clause_true(d.instance):
            continue
        if order.less(d, clo):
            return True
    return False


def _literal_matches(pattern, target, sigma):
    if pattern.positive != target.positive:
        return
    for a, b in ((target.lhs, target.rhs), (target.rhs, target.lhs)):
        s = match(pattern.lhs, a, sigma)
        if s is not None:
            s = match(pattern.rhs, b, s)
            if s is not None:
                yield s


def closure_subsumes(a: GroundClosure, b: GroundClosure) -> bool:
    """Is ``b`` redundant w.r.t. ``a`` for every rewrite system?

    Holds when ``b = (C ∨ D · θ)`` and ``a = (Cσ · θ')`` with ``Cσθ' = Cθ``,
    and ``a ≠ b``: then ``a`` is ``≺≺_R``-smaller than ``b`` for every ``R``
    (a sub-closure, or a proper instance with the same ground instance) and
    is false whenever ``b`` is. No bound is involved.
    """
    if len(a.clause) > len(b.clause) or a == b:
        return False
    a_lits = a.clause.literals
    b_lits = b.clause.literals
    used = [False] * len(b_lits)

    def agrees(sigma) -> bool:
        return all(apply(a.theta, t) == b.theta[x] for x, t in sigma.items())

    def search(i: int, sigma) -> bool:
        if i == len(a_lits):
            return agrees(sigma)
        for j, lit in enumerate(b_lits):
            if used[j]:
                continue
            for s in _literal_matches(lit, a_lits[i], sigma):
                used[j] = True
                found = search(i + 1, s)
                used[j] = False
                if found:
                    return True
        return False

    return search(0, {})


def closure_redundancy_counterexample(
    clo: GroundClosure,
    N: Sequence[GroundClosure],
    bound: UniverseBound,
    cfg: OrderingConfig,
    variant: Variant = Variant.HORN,
) -> Optional[RewriteSystem]:
    """The first enumerated R violating closure redundancy, or ``None``."""
    variant = Variant(variant)
    for R in enumerate_left_reduced(bound, cfg):
        if R.clause_true(clo.instance):
            continue
        if not _false_smaller_exists(ClosureOrder(cfg, R, variant), N, clo):
            return R
    return None


def closure_redundant(
    clo: GroundClosure,
    N: Sequence[GroundClosure],
    bound: UniverseBound,
    cfg: OrderingConfig,
    variant: Variant = Variant.HORN,
) -> bool:
    """For every enumerated R: R ⊨ clo, or some D ∈ N is ≺≺_R clo and false in R."""
    return closure_redundancy_counterexample(clo, N, bound, cfg, variant) is None


def inference_redundancy_counterexample(
    inf: Inference,
    N: Sequence[GroundClosure],
    bound: UniverseBound,
    cfg: OrderingConfig,
    variant: Variant = Variant.HORN,
) -> Optional[RewriteSystem]:
    variant = Variant(variant)
    main = inf.main_premise
    concl = inf.conclusion
    superposition = inf.rule in (PS1, PS2)
    if concl in N:
        return None
    for R in enumerate_left_reduced(bound, cfg):
        if R.clause_true(concl.instance):
            continue
        if superposition:
            l, r = inf.ground_rule
            if R.rhs_for(l) != r:
                continue
        order = ClosureOrder(cfg, R, variant)
        if superposition and order.compare(inf.left_premise, main) is GT:
            continue
        if _false_smaller_exists(order, N, main):
            continue
        return R
    return None


def inference_redundant(
    inf: Inference,
    N: Sequence[GroundClosure],
    bound: UniverseBound,
    cfg: OrderingConfig,
    variant: Variant = Variant.HORN,
) -> bool:
    """Check the four cases of inference redundancy for every enumerated R."""
    return inference_redundancy_counterexample(inf, N, bound, cfg, variant) is None
