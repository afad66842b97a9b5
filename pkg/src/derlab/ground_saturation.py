"""Saturation of finite ground closure sets by the ground closure calculus.

Used to test the model construction: a saturated, ⊥-free set must be a
model of ``R_*``. An inference is skipped only when it is redundant for
every rewrite system, which needs no bound: its conclusion is already in
the set, the conclusion instance contains a trivial equation ``s ≈ s``, or
a retained closure is a sub-closure or instance of it (see
:func:`redundancy.closure_subsumes`). Retained closures made redundant that
way by a new one are deleted, and every conclusion is first condensed
(:func:`condense`).
Optionally the bounded redundancy check of :mod:`redundancy` is applied on
top, which makes the result relative to that bound.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import calculus
from .calculus import Inference
from .orderings import OrderingConfig
from .redundancy import UniverseBound, closure_subsumes, inference_redundant, universe_of
from .rewriting import GroundClosure, Variant
from .terms import Clause, apply


class GroundSaturationLimit(RuntimeError):
    pass


@dataclass
class GroundSaturation:
    """Retained closures plus everything ever derived (``derived``)."""

    closures: list[GroundClosure]
    derived: list[GroundClosure] = field(default_factory=list)
    inferences: int = 0
    skipped: int = 0
    deleted: int = 0
    log: list[Inference] = field(default_factory=list)

    @property
    def has_bottom(self) -> bool:
        return any(c.is_bottom for c in self.closures)


def _trivially_true(clo: GroundClosure) -> bool:
    """True in every rewrite system: ``s ≈ s`` or a complementary pair."""
    lits = clo.instance.literals
    if any(lit.positive and lit.lhs == lit.rhs for lit in lits):
        return True
    pos = {lit for lit in lits if lit.positive}
    return any(lit.negated() in pos for lit in lits if not lit.positive)


def condense(clo: GroundClosure) -> GroundClosure:
    """Drop literals whose instance is ``s ≉ s`` or repeats an earlier literal.

    The result is a sub-closure with the same substitution, hence
    ``≺≺_R``-smaller than ``clo`` for every ``R``, and false exactly when
    ``clo`` is, so ``clo`` becomes redundant.
    """
    keep = []
    seen = set()
    for lit in clo.clause.literals:
        inst = lit.map(lambda t: apply(clo.theta, t))
        if not inst.positive and inst.lhs == inst.rhs:
            continue
        if inst in seen:
            continue
        seen.add(inst)
        keep.append(lit)
    if len(keep) == len(clo.clause.literals):
        return clo
    return GroundClosure(Clause(keep), clo.theta)


def _size(clo: GroundClosure) -> tuple[int, int]:
    inst = clo.instance
    return (len(inst), inst.weight())


def _with(cfg, g: GroundClosure, done: list[GroundClosure], variant: Variant) -> list[Inference]:
    out = list(calculus.ground_er(g, cfg))
    if variant is Variant.NONHORN:
        out.extend(calculus.ground_ef(g, cfg))
    for p in done + [g]:
        out.extend(calculus.ground_ps1(p, g, cfg))
        out.extend(calculus.ground_ps2(p, g, cfg))
        if p is not g:
            out.extend(calculus.ground_ps1(g, p, cfg))
            out.extend(calculus.ground_ps2(g, p, cfg))
    return out


def saturate_ground(
    closures: Iterable[GroundClosure],
    cfg: OrderingConfig,
    variant: Variant | str = Variant.HORN,
    bound: Optional[UniverseBound] = None,
    max_closures: int = 2000,
) -> GroundSaturation:
    """Close ``closures`` under non-redundant ground inferences, smallest first.

    With ``bound`` given (its ``max_rules`` and ``candidate_cap`` are used,
    its universe is taken from the current set) the bounded inference
    redundancy check is applied as well.
    """
    variant = Variant(variant)
    derived: dict[GroundClosure, None] = dict.fromkeys(closures)
    retained: dict[GroundClosure, None] = dict(derived)
    tick = itertools.count()
    queue = [(_size(c), next(tick), c) for c in derived]
    heapq.heapify(queue)
    done: list[GroundClosure] = []
    result = GroundSaturation([])
    while queue:
        g = heapq.heappop(queue)[2]
        if g not in retained:
            continue
        if g.is_bottom:
            done.append(g)
            break
        for inf in _with(cfg, g, done, variant):
            result.inferences += 1
            concl = condense(inf.conclusion)
            if concl in derived or _trivially_true(concl) or any(
                closure_subsumes(r, concl) for r in retained
            ):
                result.skipped += 1
                continue
            if bound is not None:
                here = universe_of(list(retained) + [concl], max_rules=bound.max_rules,
                                   candidate_cap=bound.candidate_cap, max_terms=bound.max_terms)
                if inference_redundant(inf, list(retained), here, cfg, variant):
                    result.skipped += 1
                    continue
            for r in [r for r in retained if closure_subsumes(concl, r)]:
                del retained[r]
                result.deleted += 1
            done = [d for d in done if d in retained]
            derived[concl] = None
            retained[concl] = None
            heapq.heappush(queue, (_size(concl), next(tick), concl))
            result.log.append(inf)
            if len(derived) > max_closures:
                raise GroundSaturationLimit(f"more than {max_closures} closures")
        if g in retained:
            done.append(g)
    result.closures = list(retained)
    result.derived = list(derived)
    return result
