"""Candidate interpretations built by induction over the term ordering."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .orderings import GT, LT, OrderingConfig, maximality, term_compare
from .rewriting import ClosureOrder, GroundClosure, RewriteSystem, Variant
from .terms import Clause, Term


@dataclass(frozen=True)
class Production:
    lhs: Term
    rhs: Term
    closure: GroundClosure

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}  by {self.closure}"


@dataclass
class CandidateInterpretation:
    R: RewriteSystem
    productions: list[Production] = field(default_factory=list)

    @property
    def rules(self) -> dict[Term, Term]:
        return {p.lhs: p.rhs for p in self.productions}


@dataclass(frozen=True)
class ModelVerdict:
    holds: bool
    failing: Optional[GroundClosure] = None


def _sort_terms(cfg: OrderingConfig, terms: Iterable[Term]) -> list[Term]:
    def cmp(a, b):
        r = term_compare(cfg, a, b)
        return 0 if a == b else (1 if r is GT else -1)

    return sorted(set(terms), key=functools.cmp_to_key(cmp))


def _strictly_maximal_term(cfg: OrderingConfig, Cg: Clause, i: int, side: int) -> bool:
    s = Cg.literals[i].sides[side]
    for j, lit in enumerate(Cg.literals):
        for k, other in enumerate(lit.sides):
            if (j, k) == (i, side):
                continue
            if term_compare(cfg, s, other) is not GT:
                return False
    return True


def _productive(
    cfg: OrderingConfig, variant: Variant, clo: GroundClosure, s: Term, R: RewriteSystem
) -> Optional[Term]:
    """The right-hand side ``s'`` if ``clo`` can produce ``s → s'`` over ``R``."""
    Cg = clo.instance
    if R.clause_true(Cg) or R.is_reducible(s):
        return None
    for i, lit in enumerate(Cg.literals):
        if not lit.positive:
            continue
        for side in (0, 1):
            if lit.sides[side] != s:
                continue
            s2 = lit.sides[1 - side]
            if term_compare(cfg, s, s2) is not GT:
                continue
            if variant is Variant.HORN:
                if _strictly_maximal_term(cfg, Cg, i, side):
                    return s2
            else:
                if not maximality(cfg, Cg, i, strict=True):
                    continue
                if not R.extended(s, s2).clause_true(Cg.without(i)):
                    return s2
    return None


def candidate_terms(cfg: OrderingConfig, N: Iterable[GroundClosure]) -> list[Term]:
    """Sides of positive literals that are larger than their partner, ascending."""
    out = []
    for clo in N:
        for lit in clo.instance.positive:
            r = term_compare(cfg, lit.lhs, lit.rhs)
            if r is GT:
                out.append(lit.lhs)
            elif r is LT:
                out.append(lit.rhs)
    return _sort_terms(cfg, out)


def construct_rstar(
    N: Sequence[GroundClosure], variant: Variant | str, cfg: OrderingConfig
) -> CandidateInterpretation:
    """Build ``R_*`` from the finite closure set ``N``.

    For each candidate term ``s`` in ascending order, the ``≻≻_{R_s}``-smallest
    productive closure (if any) contributes ``s → s'``.
    """
    variant = Variant(variant)
    N = list(dict.fromkeys(N))
    R = RewriteSystem()
    productions: list[Production] = []
    for s in candidate_terms(cfg, N):
        best: Optional[GroundClosure] = None
        best_rhs = None
        order = ClosureOrder(cfg, R, variant)
        for clo in N:
            rhs = _productive(cfg, variant, clo, s, R)
            if rhs is None:
                continue
            if best is None or order.less(clo, best):
                best, best_rhs = clo, rhs
        if best is not None:
            productions.append(Production(s, best_rhs, best))
            R = R.extended(s, best_rhs)
    return CandidateInterpretation(R, productions)


def check_model(
    R: RewriteSystem,
    N: Iterable[GroundClosure],
    cfg: Optional[OrderingConfig] = None,
    variant: Variant | str = Variant.HORN,
) -> ModelVerdict:
    """Does ``R`` satisfy every closure? On failure report the smallest false one.

    With no ordering given, the first false closure in input order is reported.
    """
    false = [clo for clo in N if not R.clause_true(clo.instance)]
    if not false:
        return ModelVerdict(True)
    if cfg is None:
        return ModelVerdict(False, false[0])
    order = ClosureOrder(cfg, R, Variant(variant))
    smallest = false[0]
    for clo in false[1:]:
        if order.less(clo, smallest):
            smallest = clo
    return ModelVerdict(False, smallest)
