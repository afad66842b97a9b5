"""Inference rules: non-ground and on ground closures.

Non-ground rules work on clauses, the ground rules on :class:`GroundClosure`
pairs. All generators return lists in a deterministic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .orderings import (
    GT,
    LT,
    OrderingConfig,
    clause_compare,
    maximality,
    not_le,
    term_compare,
)
from .rewriting import GroundClosure, Variant
from .terms import (
    Clause,
    Literal,
    Position,
    Term,
    Var,
    apply,
    mgu,
    neg,
    occurrences,
    pos,
    positions,
    rename_apart,
    replace_all,
    replace_at,
    subterms,
)

# rule tags
PS = "parallel-superposition"
ER = "equality-resolution"
EF = "equality-factoring"
PS1 = "parallel-superposition-I"
PS2 = "parallel-superposition-II"
GER = "ground-equality-resolution"
GEF = "ground-equality-factoring"

Premise = Union[Clause, GroundClosure]


@dataclass(frozen=True, eq=False)
class Inference:
    rule: str
    premises: tuple
    conclusion: Premise
    sigma: tuple = ()
    positions: tuple = ()
    # ground superposition only: the rule tθ → t'θ of the left premise
    ground_rule: Optional[tuple[Term, Term]] = None

    @property
    def main_premise(self) -> Premise:
        """The right or only premise."""
        return self.premises[-1]

    @property
    def left_premise(self) -> Optional[Premise]:
        return self.premises[0] if len(self.premises) == 2 else None

    def __repr__(self):
        return f"Inference({self.rule}, {' ; '.join(map(str, self.premises))} => {self.conclusion})"


def _sig(sigma: dict) -> tuple:
    return tuple(sorted((x, str(t)) for x, t in sigma.items()))


def _distinct_subterms(c: Clause) -> list[Term]:
    seen: dict[Term, None] = {}
    for lit in c.literals:
        for side in lit.sides:
            for s in subterms(side):
                if not s.is_var:
                    seen.setdefault(s, None)
    return list(seen)


def _orientations(lit: Literal):
    yield lit.lhs, lit.rhs
    if lit.lhs != lit.rhs:
        yield lit.rhs, lit.lhs


def _side(lit: Literal, p: Position) -> tuple[Term, Term]:
    """``(s, s')`` where ``s`` is the side of ``lit`` containing position ``p``."""
    return (lit.lhs, lit.rhs) if p[0] == 1 else (lit.rhs, lit.lhs)


def _needs_guard(c: Clause, occs) -> bool:
    return any(not c.literals[i].positive or len(p) > 1 for i, p in occs)


def _dedupe(infs: list[Inference]) -> list[Inference]:
    seen = set()
    out = []
    for inf in infs:
        key = (inf.rule, inf.conclusion, inf.ground_rule)
        if key not in seen:
            seen.add(key)
            out.append(inf)
    return out


# ---------------------------------------------------------------------------
# non-ground rules

def parallel_superposition(
    D: Clause, C: Clause, cfg: OrderingConfig, always_guard: bool = False
) -> list[Inference]:
    """All parallel superposition inferences with left premise ``D`` into ``C``.

    Every occurrence of the overlapped subterm ``u`` is replaced. The clause
    ordering guard applies only when some occurrence of ``u`` sits in a
    negative literal or below the top of a positive one, unless
    ``always_guard`` is set.
    """
    if D.vars() & C.vars():
        raise ValueError("premises must be variable-disjoint")
    out = []
    candidates = _distinct_subterms(C)
    for j, dlit in enumerate(D.literals):
        if not dlit.positive:
            continue
        d_rest = D.without(j)
        for t, t2 in _orientations(dlit):
            for u in candidates:
                sigma = mgu((t, u))
                if sigma is None:
                    continue
                ts, t2s = apply(sigma, t), apply(sigma, t2)
                if not not_le(term_compare(cfg, ts, t2s)):
                    continue
                Ds = D.subst(sigma)
                if not maximality(cfg, Ds, j, strict=True):
                    continue
                Cs = C.subst(sigma)
                occs = occurrences(u, C)
                if not _acting_occurrence(cfg, C, Cs, occs, sigma):
                    continue
                if (always_guard or _needs_guard(C, occs)) and not not_le(clause_compare(cfg, Cs, Ds)):
                    continue
                concl = (d_rest | replace_all(C, u, t2)).subst(sigma)
                out.append(Inference(PS, (D, C), concl, _sig(sigma), tuple(occs)))
    return _dedupe(out)


def _acting_occurrence(cfg, C: Clause, Cs: Clause, occs, sigma) -> bool:
    for i, p in occs:
        lit = C.literals[i]
        s, s2 = _side(lit, p)
        if not not_le(term_compare(cfg, apply(sigma, s), apply(sigma, s2))):
            continue
        if maximality(cfg, Cs, i, strict=lit.positive):
            return True
    return False


def equality_resolution(C: Clause, cfg: OrderingConfig) -> list[Inference]:
    out = []
    for i, lit in enumerate(C.literals):
        if lit.positive:
            continue
        sigma = mgu((lit.lhs, lit.rhs))
        if sigma is None:
            continue
        if not maximality(cfg, C.subst(sigma), i, strict=False):
            continue
        out.append(Inference(ER, (C,), C.without(i).subst(sigma), _sig(sigma), (i,)))
    return _dedupe(out)


def equality_factoring(C: Clause, cfg: OrderingConfig) -> list[Inference]:
    out = []
    lits = C.literals
    for i, li in enumerate(lits):
        if not li.positive:
            continue
        for j, lj in enumerate(lits):
            if j == i or not lj.positive:
                continue
            rest = Clause(l for k, l in enumerate(lits) if k not in (i, j))
            for s, s2 in _orientations(li):
                for r, r2 in _orientations(lj):
                    sigma = mgu((s, r))
                    if sigma is None:
                        continue
                    if not not_le(term_compare(cfg, apply(sigma, s), apply(sigma, s2))):
                        continue
                    if not maximality(cfg, C.subst(sigma), i, strict=False):
                        continue
                    concl = (rest | Clause([neg(s2, r2), pos(r, r2)])).subst(sigma)
                    out.append(Inference(EF, (C,), concl, _sig(sigma), (i, j)))
    return _dedupe(out)


# ---------------------------------------------------------------------------
# ground closure rules

def _merge(Dclo: GroundClosure, Cclo: GroundClosure) -> tuple[Clause, Clause, dict]:
    """Rename ``D`` apart from ``C`` and return a shared grounding substitution."""
    D, ren = rename_apart(Dclo.clause, Cclo.clause.vars(), prefix="_D")
    theta = dict(Cclo.theta)
    for x, v in ren.items():
        theta[v.name] = Dclo.theta[x]
    return D, Cclo.clause, theta


def _left_ok(cfg, D: Clause, Dg: Clause, j: int, t: Term, t2: Term, theta) -> bool:
    return term_compare(cfg, apply(theta, t), apply(theta, t2)) is GT and maximality(
        cfg, Dg, j, strict=True
    )


def _ground_acting(cfg, C: Clause, Cg: Clause, occs, theta) -> bool:
    for i, p in occs:
        lit = C.literals[i]
        s, s2 = _side(lit, p)
        if term_compare(cfg, apply(theta, s), apply(theta, s2)) is not GT:
            continue
        if maximality(cfg, Cg, i, strict=lit.positive):
            return True
    return False


def _may_overlap(Dclo: GroundClosure, Cclo: GroundClosure) -> bool:
    """Cheap filter: some side of a positive literal of D occurs in C's instance."""
    sides = {s for lit in Dclo.instance.literals if lit.positive for s in lit.sides}
    if not sides:
        return False
    return any(t in sides for lit in Cclo.instance.literals for side in lit.sides for t in subterms(side))


def ground_ps1(Dclo: GroundClosure, Cclo: GroundClosure, cfg: OrderingConfig) -> list[Inference]:
    """Parallel superposition at a non-variable position of the right premise."""
    if not _may_overlap(Dclo, Cclo):
        return []
    D, C, theta = _merge(Dclo, Cclo)
    Dg, Cg = D.subst(theta), C.subst(theta)
    out = []
    candidates = _distinct_subterms(C)
    for j, dlit in enumerate(D.literals):
        if not dlit.positive:
            continue
        d_rest = D.without(j)
        for t, t2 in _orientations(dlit):
            if not _left_ok(cfg, D, Dg, j, t, t2, theta):
                continue
            tg = apply(theta, t)
            for u in candidates:
                if apply(theta, u) != tg:
                    continue
                sigma = mgu((t, u))
                occs = occurrences(u, C)
                if _needs_guard(C, occs) and clause_compare(cfg, Dg, Cg) is not LT:
                    continue
                if not _ground_acting(cfg, C, Cg, occs, theta):
                    continue
                concl = (d_rest | replace_all(C, u, t2)).subst(sigma)
                out.append(
                    Inference(
                        PS1, (Dclo, Cclo), GroundClosure(concl, theta), _sig(sigma), tuple(occs),
                        (tg, apply(theta, t2)),
                    )
                )
    return _dedupe(out)


def ground_ps2(Dclo: GroundClosure, Cclo: GroundClosure, cfg: OrderingConfig) -> list[Inference]:
    """Parallel superposition at or below a variable position of the right premise."""
    if not Cclo.theta or not _may_overlap(Dclo, Cclo):
        return []
    D, C, theta = _merge(Dclo, Cclo)
    Dg, Cg = D.subst(theta), C.subst(theta)
    out = []
    xs = C.ordered_vars()
    for j, dlit in enumerate(D.literals):
        if not dlit.positive:
            continue
        d_rest = D.without(j)
        for t, t2 in _orientations(dlit):
            if not _left_ok(cfg, D, Dg, j, t, t2, theta):
                continue
            tg, t2g = apply(theta, t), apply(theta, t2)
            for x in xs:
                if tg not in subterms(theta[x]):
                    continue
                occs = occurrences(Var(x), C)
                if _needs_guard(C, occs) and clause_compare(cfg, Dg, Cg) is not LT:
                    continue
                if not _ground_acting(cfg, C, Cg, occs, theta):
                    continue
                xt = theta[x]
                for q, s in positions(xt):
                    if s != tg:
                        continue
                    new_theta = dict(theta)
                    new_theta[x] = replace_at(xt, q, t2g)
                    concl = GroundClosure(d_rest | C, new_theta)
                    out.append(Inference(PS2, (Dclo, Cclo), concl, (), ((x, q),), (tg, t2g)))
    return _dedupe(out)


def ground_er(Cclo: GroundClosure, cfg: OrderingConfig) -> list[Inference]:
    C, theta = Cclo.clause, Cclo.theta
    Cg = Cclo.instance
    out = []
    for i, lit in enumerate(C.literals):
        if lit.positive or apply(theta, lit.lhs) != apply(theta, lit.rhs):
            continue
        if not maximality(cfg, Cg, i, strict=False):
            continue
        sigma = mgu((lit.lhs, lit.rhs))
        concl = GroundClosure(C.without(i).subst(sigma), theta)
        out.append(Inference(GER, (Cclo,), concl, _sig(sigma), (i,)))
    return _dedupe(out)


def ground_ef(Cclo: GroundClosure, cfg: OrderingConfig) -> list[Inference]:
    C, theta = Cclo.clause, Cclo.theta
    Cg = Cclo.instance
    lits = C.literals
    out = []
    for i, li in enumerate(lits):
        if not li.positive or not maximality(cfg, Cg, i, strict=False):
            continue
        for j, lj in enumerate(lits):
            if j == i or not lj.positive:
                continue
            rest = Clause(l for k, l in enumerate(lits) if k not in (i, j))
            for s, s2 in _orientations(li):
                sg = apply(theta, s)
                if term_compare(cfg, sg, apply(theta, s2)) is not GT:
                    continue
                for r, r2 in _orientations(lj):
                    if apply(theta, r) != sg:
                        continue
                    sigma = mgu((s, r))
                    concl = (rest | Clause([neg(s2, r2), pos(r, r2)])).subst(sigma)
                    out.append(Inference(GEF, (Cclo,), GroundClosure(concl, theta), _sig(sigma), (i, j)))
    return _dedupe(out)


def ground_inferences(
    closures: Sequence[GroundClosure], cfg: OrderingConfig, variant: Variant = Variant.HORN
) -> list[Inference]:
    """Every ground closure inference among ``closures`` (self-pairs included)."""
    variant = Variant(variant)
    out: list[Inference] = []
    for c in closures:
        out.extend(ground_er(c, cfg))
        if variant is Variant.NONHORN:
            out.extend(ground_ef(c, cfg))
    for d in closures:
        if not any(l.positive for l in d.clause.literals):
            continue
        for c in closures:
            out.extend(ground_ps1(d, c, cfg))
            out.extend(ground_ps2(d, c, cfg))
    return out


def inferences_between(
    given: Clause, others: Iterable[Clause], cfg: OrderingConfig, nonhorn: bool = True
) -> list[Inference]:
    """Non-ground inferences of ``given`` with itself and with ``others``.

    ``others`` must be variable-disjoint from ``given``; a renamed copy of
    ``given`` is used for self-superposition.
    """
    out = list(equality_resolution(given, cfg))
    if nonhorn and len(given.positive) >= 2:
        out.extend(equality_factoring(given, cfg))
    for other in others:
        out.extend(parallel_superposition(given, other, cfg))
        out.extend(parallel_superposition(other, given, cfg))
    copy, _ = rename_apart(given, given.vars(), prefix="_S")
    out.extend(parallel_superposition(copy, given, cfg))
    return out
