"""Deletion and simplification rules, and the regime licensing matrix.

Which rules a prover may use depends on the redundancy criterion it relies
on. The closure-based regimes admit DER but forbid first-order subsumption
and unrestricted demodulation; the classical regime admits the latter but
not DER.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .congruence import CongruenceClosure
from .orderings import GT, LT, OrderingConfig, clause_compare, term_compare
from .terms import (
    Clause,
    Literal,
    Term,
    apply,
    is_submultiset,
    is_variant,
    match,
    occurs,
    pos,
    replace_all,
    submultiset_matches,
    subterms,
    term_vars,
)


class Regime(enum.Enum):
    CLASSICAL = "classical"
    HORN_CLOSURE = "horn-closure"
    NONHORN_CLOSURE = "nonhorn-closure"


class DerMode(enum.Enum):
    OFF = "off"
    FULL = "full"
    NEGATIVE_ONLY = "negative-only"


class DemodMode(enum.Enum):
    OFF = "off"
    PROPER_SUBTERM = "proper-subterm"
    FULL = "full"


class SubsumeMode(enum.Enum):
    OFF = "off"
    PROPOSITIONAL = "propositional"
    FIRST_ORDER = "first-order"


class RegimeError(ValueError):
    """A simplification flag is not licensed by the chosen regime."""


_DEFAULTS = {
    Regime.CLASSICAL: (DerMode.OFF, DemodMode.FULL, SubsumeMode.FIRST_ORDER),
    Regime.HORN_CLOSURE: (DerMode.FULL, DemodMode.PROPER_SUBTERM, SubsumeMode.PROPOSITIONAL),
    Regime.NONHORN_CLOSURE: (DerMode.NEGATIVE_ONLY, DemodMode.PROPER_SUBTERM, SubsumeMode.PROPOSITIONAL),
}

_LICENSED = {
    Regime.HORN_CLOSURE: (
        {DerMode.OFF, DerMode.FULL, DerMode.NEGATIVE_ONLY},
        {DemodMode.OFF, DemodMode.PROPER_SUBTERM},
        {SubsumeMode.OFF, SubsumeMode.PROPOSITIONAL},
    ),
    Regime.NONHORN_CLOSURE: (
        {DerMode.OFF, DerMode.NEGATIVE_ONLY},
        {DemodMode.OFF, DemodMode.PROPER_SUBTERM},
        {SubsumeMode.OFF, SubsumeMode.PROPOSITIONAL},
    ),
}


@dataclass(frozen=True)
class RegimeConfig:
    regime: Regime = Regime.HORN_CLOSURE
    der: DerMode = DerMode.FULL
    demod: DemodMode = DemodMode.PROPER_SUBTERM
    subsumption: SubsumeMode = SubsumeMode.PROPOSITIONAL
    tautology: bool = True
    parallel_cond_rewrite: bool = True

    @classmethod
    def defaults(cls, regime: Regime | str, **overrides) -> "RegimeConfig":
        regime = Regime(regime)
        der, demod, sub = _DEFAULTS[regime]
        base = dict(regime=regime, der=der, demod=demod, subsumption=sub)
        base.update({k: v for k, v in overrides.items() if v is not None})
        base["der"] = DerMode(base["der"])
        base["demod"] = DemodMode(base["demod"])
        base["subsumption"] = SubsumeMode(base["subsumption"])
        return cls(**base)

    def violations(self) -> list[str]:
        """Flags the regime does not license."""
        if self.regime is Regime.CLASSICAL:
            return []
        ders, demods, subs = _LICENSED[self.regime]
        out = []
        if self.der not in ders:
            out.append(f"--der {self.der.value} is not licensed under {self.regime.value}")
        if self.demod not in demods:
            out.append(f"--demod {self.demod.value} is not licensed under {self.regime.value}")
        if self.subsumption not in subs:
            out.append(f"--subsume {self.subsumption.value} is not licensed under {self.regime.value}")
        return out

    def warnings(self) -> list[str]:
        out = []
        if self.regime is Regime.CLASSICAL and self.der is not DerMode.OFF:
            out.append("DER is not covered by classical redundancy; the search may be incomplete")
        return out

    def validate(self, force: bool = False) -> list[str]:
        """Raise :class:`RegimeError` on blocked flags unless ``force``; return warnings."""
        bad = self.violations()
        if bad and not force:
            raise RegimeError("; ".join(bad))
        return [f"forced: {b}" for b in bad] + self.warnings()


@dataclass(frozen=True)
class Outcome:
    kind: str  # "deleted", "replaced" or "unchanged"
    clause: Optional[Clause] = None
    rule: str = ""
    used: tuple = field(default=())

    @property
    def changed(self) -> bool:
        return self.kind != "unchanged"


UNCHANGED = Outcome("unchanged")


# ---------------------------------------------------------------------------
# DER

def _der_candidate(c: Clause, mode: DerMode) -> Optional[tuple[int, str, Term]]:
    positive_vars: set[str] = set()
    if mode is DerMode.NEGATIVE_ONLY:
        for lit in c.positive:
            positive_vars |= term_vars(lit.lhs) | term_vars(lit.rhs)
    for i, lit in enumerate(c.literals):
        if lit.positive:
            continue
        for x, t in ((lit.lhs, lit.rhs), (lit.rhs, lit.lhs)):
            if not x.is_var or occurs(x.name, t):
                continue
            if x.name in positive_vars:
                continue
            return i, x.name, t
    return None


def der(c: Clause, mode: DerMode = DerMode.FULL) -> Outcome:
    """Destructive equality resolution: ``x ≉ t ∨ C`` becomes ``C{x ↦ t}``.

    Eligible literals are eliminated left to right, restarting after each
    step, until none is left.
    """
    mode = DerMode(mode)
    if mode is DerMode.OFF:
        return UNCHANGED
    steps = []
    cur = c
    while True:
        cand = _der_candidate(cur, mode)
        if cand is None:
            break
        i, x, t = cand
        steps.append(f"{x}->{t}")
        cur = cur.without(i).subst({x: t})
    if not steps:
        return UNCHANGED
    return Outcome("replaced", cur, "der", tuple(steps))


# ---------------------------------------------------------------------------
# demodulation and rewriting with condition literals

def _rewrite_instances(c: Clause, t: Term, t2: Term):
    """Distinct instances ``tσ`` occurring in ``c`` with matching σ."""
    seen = set()
    for lit in c.literals:
        for side in lit.sides:
            for s in subterms(side):
                if s in seen or s.is_var:
                    continue
                seen.add(s)
                sigma = match(t, s)
                if sigma is not None:
                    yield s, apply(sigma, t2)


def _is_proper_subterm(small: Term, big: Term) -> bool:
    return small != big and any(s == small for s in subterms(big))


def demodulate(c: Clause, unit: Clause, mode: DemodMode, cfg: OrderingConfig) -> Outcome:
    """Rewrite ``c`` with the positive unit ``t ≈ t'`` to a fixpoint.

    Every occurrence of an instance ``tσ`` is replaced at once. In
    ``PROPER_SUBTERM`` mode ``t'σ`` must be a proper subterm of ``tσ``. In
    both modes the unit instance must be ``≺_C``-smaller than the clause
    being rewritten, so a clause is never rewritten by a copy of itself.
    """
    mode = DemodMode(mode)
    if mode is DemodMode.OFF or len(unit) != 1 or not unit[0].positive:
        return UNCHANGED
    lit = unit[0]
    cur = c
    changed = False
    progress = True
    while progress:
        progress = False
        for t, t2 in ((lit.lhs, lit.rhs), (lit.rhs, lit.lhs)):
            if t.is_var or not term_vars(t2) <= term_vars(t):
                continue
            for old, new in _rewrite_instances(cur, t, t2):
                if mode is DemodMode.PROPER_SUBTERM and not _is_proper_subterm(new, old):
                    continue
                if term_compare(cfg, old, new) is not GT:
                    continue
                if clause_compare(cfg, Clause([pos(old, new)]), cur) is not LT:
                    continue
                cur = replace_all(cur, old, new)
                changed = progress = True
                break
            if progress:
                break
    if not changed:
        return UNCHANGED
    return Outcome("replaced", cur, "demod", (unit,))


def parallel_cond_rewrite(c: Clause, cfg: OrderingConfig) -> Outcome:
    """``t ≉ t' ∨ C[t,...,t]`` with ``t ≻ t'`` becomes ``t ≉ t' ∨ C[t',...,t']``."""
    cur = c
    used = []
    progress = True
    while progress:
        progress = False
        for i, lit in enumerate(cur.literals):
            if lit.positive:
                continue
            for t, t2 in ((lit.lhs, lit.rhs), (lit.rhs, lit.lhs)):
                if term_compare(cfg, t, t2) is not GT:
                    continue
                rest = cur.without(i)
                new_rest = replace_all(rest, t, t2)
                if new_rest == rest:
                    continue
                cur = Clause((lit,) + new_rest.literals)
                used.append(str(lit))
                progress = True
                break
            if progress:
                break
    if not used:
        return UNCHANGED
    return Outcome("replaced", cur, "cond-rewrite", tuple(used))


def delete_trivial_literals(c: Clause) -> Outcome:
    """Drop literals ``s ≉ s``; they can never be true."""
    keep = [l for l in c.literals if l.positive or l.lhs != l.rhs]
    if len(keep) == len(c):
        return UNCHANGED
    return Outcome("replaced", Clause(keep), "trivial-literal")


# ---------------------------------------------------------------------------
# subsumption and tautologies

def subsumes(c: Clause, d: Clause, mode: SubsumeMode) -> bool:
    """Does ``c`` subsume ``d``?

    ``PROPOSITIONAL``: ``c`` is a proper submultiset of ``d``.
    ``FIRST_ORDER``: some ``cσ`` is a submultiset of ``d`` and ``c`` is not a
    variant of ``d``.
    """
    mode = SubsumeMode(mode)
    if mode is SubsumeMode.OFF or len(c) > len(d):
        return False
    if mode is SubsumeMode.PROPOSITIONAL:
        return len(c) < len(d) and is_submultiset(c, d)
    if is_variant(c, d):
        return False
    return next(submultiset_matches(c, d), None) is not None


def is_tautology(c: Clause) -> bool:
    """Syntactic tautology check; ground clauses also get a congruence closure check."""
    lits = set(c.literals)
    for lit in c.literals:
        if lit.positive and lit.lhs == lit.rhs:
            return True
        if lit.positive and lit.negated() in lits:
            return True
    if not c.is_ground():
        return False
    cc = CongruenceClosure((l.lhs, l.rhs) for l in c.negative)
    return any(cc.equal(l.lhs, l.rhs) for l in c.positive)
