"""Scripted replay of the DER incompleteness scenario.

Five clauses are saturated by hand: superposition yields
``x ≉ b ∨ g(x) ≈ d``, DER turns it into ``g(b) ≈ d``, and that unit is
classically redundant because smaller ground instances entail it. Deleting
it leaves no non-redundant inference although the set is unsatisfiable.
The closure-based regime keeps the unit and finds the refutation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from . import calculus
from .orderings import LT, OrderingConfig, clause_compare
from .problem import ProblemFile, parse
from .redundancy import (
    UniverseBound,
    classically_redundant,
    ground_entails,
    ground_instances,
)
from .saturation import SATURATED, UNSAT, Limits, saturate
from .simplify import DerMode, RegimeConfig, der, is_tautology
from .terms import App, Clause, Var, const, is_variant, neg, pos, rename_apart

SCENARIO = """\
% Incompleteness scenario for destructive equality resolution.
% Under horn-closure with DER the prover must still refute it.
order kbo.
weight f 4.
weight g 3.
weight b 4.
weight b' 2.
weight c 1.
weight c' 1.
weight d 1.
varweight 1.
prec f > g > b > b' > c > c' > d.

cnf(c1, axiom, f(X,d) = X).
cnf(c2, axiom, f(X,Y) != b | g(X) = d).
cnf(c3, axiom, b' = c' | b = c).
cnf(c4, axiom, g(b') != g(c')).
cnf(c5, axiom, g(c) != d).
"""


def scenario() -> ProblemFile:
    return parse(SCENARIO)


def scenario_ordering() -> OrderingConfig:
    return scenario().ordering()


def _f(*a):
    return App("f", a)


def _g(*a):
    return App("g", a)


b, b1, c, c1, d = const("b"), const("b'"), const("c"), const("c'"), const("d")
X, Y = Var("X"), Var("Y")

C6 = Clause([neg(X, b), pos(_g(X), d)])
C7 = Clause([pos(_g(b), d)])
C8 = Clause([pos(b1, c1)])

UNIVERSE = UniverseBound(terms=(b, b1, c, c1, d, _f(c, d), _g(b), _g(c), _g(b1), _g(c1)))


@dataclass
class Step:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


@dataclass
class IncompletenessReport:
    steps: list[Step] = field(default_factory=list)
    entailment_base: list[Clause] = field(default_factory=list)
    closure_status: Optional[str] = None
    classical_status: Optional[str] = None
    closure_generated: int = 0
    closure_proof: list[Clause] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.steps) and all(s.passed for s in self.steps)

    def step(self, name: str) -> Optional[Step]:
        return next((s for s in self.steps if s.name == name), None)

    def first_failure(self) -> Optional[Step]:
        return next((s for s in self.steps if not s.passed), None)

    def format(self) -> str:
        lines = [str(s) for s in self.steps]
        lines.append(f"classical run with scripted deletion: {self.classical_status}")
        lines.append(f"horn-closure run: {self.closure_status} ({self.closure_generated} generated)")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _classify(conclusion: Clause, N: list[Clause], instances: list[Clause], cfg, deleted: list[Clause]) -> str:
    """Why an inference conclusion is redundant, or ``""`` if it is not."""
    if is_tautology(conclusion):
        return "tautology"
    out = der(conclusion, DerMode.FULL)
    if out.changed:
        reduced = out.clause
        if any(is_variant(reduced, e) for e in deleted):
            return f"DER gives deleted redundant {reduced}"
        if any(is_variant(reduced, e) for e in N):
            return f"DER gives existing {reduced}"
    ground = [gc.instance for gc in ground_instances(conclusion, UNIVERSE)]
    if all(classically_redundant(gc, instances, cfg) for gc in ground):
        return "classically redundant"
    return ""


def replay_incompleteness(cfg: Optional[OrderingConfig] = None, limits: Limits = Limits(timeout_s=10)) -> IncompletenessReport:
    """Run the scripted scenario and report each step.

    ``cfg`` overrides the ordering (e.g. to perturb a weight); the clauses
    stay fixed.
    """
    start = time.monotonic()
    pf = scenario()
    cfg = cfg or pf.ordering()
    C1, C2, C3, C4, C5 = pf.clause_list()
    N = [C1, C2, C3, C4, C5]
    rep = IncompletenessReport()

    # 1: the only required inference
    left, _ = rename_apart(C1, C2.vars(), prefix="Z")
    sup = calculus.parallel_superposition(left, C2, cfg)
    got = [i.conclusion for i in sup]
    ok = len(got) == 1 and is_variant(got[0], C6)
    rep.steps.append(Step("superposition", ok, f"C1 into C2 gives {', '.join(map(str, got)) or 'nothing'}"))

    # 2: DER
    out = der(got[0] if got else C6, DerMode.FULL)
    ok2 = out.changed and out.clause == C7
    rep.steps.append(Step("der", ok2, f"DER gives {out.clause if out.changed else 'no change'}"))

    # 3: classical redundancy of C7 through four smaller ground clauses
    base = [C3, C4, C1.subst({"X": c}), C2.subst({"X": c, "Y": d})]
    rep.entailment_base = base
    smaller = [clause_compare(cfg, e, C7) is LT for e in base]
    entails = ground_entails(base, C7)
    instances = [gc.instance for e in N for gc in ground_instances(e, UNIVERSE)]
    oracle = classically_redundant(C7, instances, cfg)
    ok3 = entails and all(smaller) and oracle
    bad = [str(e) for e, s in zip(base, smaller) if not s]
    detail = f"entailed={entails}, oracle over ground instances={oracle}"
    if bad:
        detail += f"; not smaller than C7: {'; '.join(bad)}"
    rep.steps.append(Step("redundancy", ok3, detail))

    # 4: nothing left to do once C7 is gone
    infs = []
    for p in N:
        infs += calculus.equality_resolution(p, cfg)
        if len(p.positive) >= 2:
            infs += calculus.equality_factoring(p, cfg)
        for q in N:
            lp, _ = rename_apart(p, q.vars(), prefix="Z")
            infs += calculus.parallel_superposition(lp, q, cfg)
    open_infs = []
    reasons = []
    for inf in infs:
        why = _classify(inf.conclusion, N, instances, cfg, [C7] if ok3 else [])
        if why:
            reasons.append(f"{inf.conclusion} ({why})")
        else:
            open_infs.append(str(inf.conclusion))
    detail = f"{len(infs)} inferences, non-redundant: {len(open_infs)}"
    if open_infs:
        detail += f" [{'; '.join(open_infs)}]"
    elif reasons:
        detail += f" [{'; '.join(reasons)}]"
    rep.steps.append(Step("saturated", not open_infs, detail))

    # 5: the classical prover with the deletion injected stops without a refutation
    if ok3:
        classical = saturate(
            N, cfg, RegimeConfig.defaults("classical", der="full"), limits, scripted_deletions=[C7]
        )
        rep.classical_status = classical.status
        rep.steps.append(Step("classical-gap", classical.status == SATURATED, f"status {classical.status}"))
    else:
        rep.steps.append(Step("classical-gap", False, "deletion not justified, not injected"))

    # 6: the closure regime refutes the set
    closure = saturate(N, cfg, RegimeConfig.defaults("horn-closure"), limits)
    rep.closure_status = closure.status
    rep.closure_generated = closure.generated
    rep.closure_proof = closure.proof_clauses()
    found = {name: any(is_variant(p, want) for p in rep.closure_proof) for name, want in
             (("C6", C6), ("C7", C7), ("C8", C8))}
    ok6 = closure.status == UNSAT and all(found.values())
    rep.steps.append(
        Step("closure-refutation", ok6, f"status {closure.status}, proof has " + ", ".join(k for k, v in found.items() if v))
    )
    rep.seconds = time.monotonic() - start
    return rep
