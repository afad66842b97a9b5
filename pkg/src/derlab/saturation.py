"""Given-clause saturation with regime-controlled simplification and proof logging."""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import calculus
from .orderings import OrderingConfig
from .simplify import (
    DemodMode,
    DerMode,
    Outcome,
    Regime,
    RegimeConfig,
    SubsumeMode,
    delete_trivial_literals,
    demodulate,
    der,
    is_tautology,
    parallel_cond_rewrite,
    subsumes,
)
from .terms import Clause, is_variant, rename, rename_apart

UNSAT = "Unsatisfiable"
SATURATED = "Saturated"
RESOURCE_OUT = "ResourceOut"

INPUT = "input"
SCRIPTED = "scripted-deletion"


@dataclass(frozen=True)
class Limits:
    max_clauses: int = 20_000
    timeout_s: float = 60.0


@dataclass(frozen=True)
class ProofNode:
    id: int
    rule: str
    premises: tuple[int, ...]
    clause: Clause
    detail: str = ""


@dataclass
class ProverResult:
    status: str
    proof: Optional[list[ProofNode]] = None
    clauses: list[Clause] = field(default_factory=list)
    generated: int = 0
    iterations: int = 0
    journal: list[tuple[str, int, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    nodes: dict[int, ProofNode] = field(default_factory=dict)

    def proof_clauses(self) -> list[Clause]:
        return [n.clause for n in self.proof or []]


def normalize_vars(c: Clause) -> Clause:
    return rename(c, "X")[0]


class _Passive:
    """Queue picking one clause by age for every ``ratio`` picks by weight."""

    def __init__(self, ratio: int = 4):
        self.ratio = ratio
        self.by_weight: list = []
        self.by_age: list = []
        self.alive: set[int] = set()
        self.picks = 0

    def push(self, cid: int, clause: Clause):
        self.alive.add(cid)
        heapq.heappush(self.by_weight, (clause.weight(), cid))
        heapq.heappush(self.by_age, cid)

    def __len__(self):
        return len(self.alive)

    def pop(self) -> int:
        self.picks += 1
        use_age = self.picks % (self.ratio + 1) == 0
        heap = self.by_age if use_age else self.by_weight
        while True:
            item = heapq.heappop(heap)
            cid = item if use_age else item[1]
            if cid in self.alive:
                self.alive.discard(cid)
                return cid


class Prover:
    def __init__(
        self,
        cfg: OrderingConfig,
        regime: RegimeConfig = RegimeConfig(),
        limits: Limits = Limits(),
        force: bool = False,
        scripted_deletions: Sequence[Clause] = (),
    ):
        self.cfg = cfg
        self.regime = regime
        self.limits = limits
        self.warnings = regime.validate(force)
        self.scripted = [normalize_vars(c) for c in scripted_deletions]
        self.nodes: dict[int, ProofNode] = {}
        self.ids = itertools.count(1)
        self.active: dict[int, Clause] = {}
        self.passive = _Passive()
        self.journal: list[tuple[str, int, str]] = []
        self.generated = 0

    # bookkeeping
    def _node(self, rule: str, premises: Iterable[int], clause: Clause, detail: str = "") -> int:
        cid = next(self.ids)
        self.nodes[cid] = ProofNode(cid, rule, tuple(premises), normalize_vars(clause), detail)
        return cid

    def _clause(self, cid: int) -> Clause:
        return self.nodes[cid].clause

    # simplification
    def _unit_rules(self):
        for aid, a in self.active.items():
            if len(a) == 1 and a[0].positive:
                yield aid, a

    def _simplify_once(self, cid: int) -> tuple[Optional[int], bool]:
        """One round of forward simplification; returns (new id or None if deleted, changed)."""
        c = self._clause(cid)
        reg = self.regime
        out = delete_trivial_literals(c)
        if out.changed:
            return self._node(out.rule, (cid,), out.clause), True
        if reg.tautology and is_tautology(c):
            self.journal.append(("tautology", cid, ""))
            return None, False
        for aid, a in self.active.items():
            if is_variant(a, c):
                self.journal.append(("duplicate", cid, f"of {aid}"))
                return None, False
            if reg.subsumption is not SubsumeMode.OFF and subsumes(a, c, reg.subsumption):
                self.journal.append(("subsumed", cid, f"by {aid}"))
                return None, False
        if reg.demod is not DemodMode.OFF:
            for aid, unit in self._unit_rules():
                out = demodulate(c, unit, reg.demod, self.cfg)
                if out.changed:
                    return self._node("demod", (cid, aid), out.clause, reg.demod.value), True
        if reg.parallel_cond_rewrite:
            out = parallel_cond_rewrite(c, self.cfg)
            if out.changed:
                return self._node(out.rule, (cid,), out.clause), True
        if reg.der is not DerMode.OFF:
            out = der(c, reg.der)
            if out.changed:
                return self._node("der", (cid,), out.clause, reg.der.value), True
        return cid, False

    def forward_simplify(self, cid: int) -> Optional[int]:
        while True:
            cid, changed = self._simplify_once(cid)
            if cid is None or not changed:
                break
        if cid is not None and any(is_variant(s, self._clause(cid)) for s in self.scripted):
            self.journal.append((SCRIPTED, cid, ""))
            return None
        return cid

    def backward_simplify(self, gid: int):
        g = self._clause(gid)
        reg = self.regime
        unit = len(g) == 1 and g[0].positive
        for aid in list(self.active):
            a = self.active[aid]
            if reg.subsumption is not SubsumeMode.OFF and subsumes(g, a, reg.subsumption):
                del self.active[aid]
                self.journal.append(("back-subsumed", aid, f"by {gid}"))
                continue
            if unit and reg.demod is not DemodMode.OFF:
                out = demodulate(a, g, reg.demod, self.cfg)
                if out.changed:
                    del self.active[aid]
                    nid = self._node("demod", (aid, gid), out.clause, reg.demod.value)
                    self.journal.append(("back-demod", aid, f"to {nid}"))
                    self.passive.push(nid, self._clause(nid))

    # generation
    def generate(self, gid: int) -> list[int]:
        g = self._clause(gid)
        partners = []
        for aid, a in self.active.items():
            if aid == gid:
                continue
            ra, _ = rename_apart(a, g.vars(), prefix="Y")
            partners.append((aid, ra))
        out = []
        infs = calculus.equality_resolution(g, self.cfg)
        if len(g.positive) >= 2:
            infs += calculus.equality_factoring(g, self.cfg)
        for inf in infs:
            out.append(self._node(inf.rule, (gid,), inf.conclusion))
        for aid, a in partners:
            for inf in calculus.parallel_superposition(g, a, self.cfg):
                out.append(self._node(inf.rule, (gid, aid), inf.conclusion))
            for inf in calculus.parallel_superposition(a, g, self.cfg):
                out.append(self._node(inf.rule, (aid, gid), inf.conclusion))
        copy, _ = rename_apart(g, g.vars(), prefix="Y")
        for inf in calculus.parallel_superposition(copy, g, self.cfg):
            out.append(self._node(inf.rule, (gid, gid), inf.conclusion))
        self.generated += len(out)
        return out

    def _cheap_delete(self, cid: int) -> bool:
        c = self._clause(cid)
        return self.regime.tautology and is_tautology(c)

    def _result(self, status: str, bottom: Optional[int], iterations: int) -> ProverResult:
        proof = extract_proof(self.nodes, bottom) if bottom is not None else None
        clauses = [] if status != SATURATED else list(self.active.values())
        return ProverResult(
            status, proof, clauses, self.generated, iterations, self.journal, self.warnings, self.nodes
        )

    def run(self, clauses: Iterable[Clause], names: Optional[Sequence[str]] = None) -> ProverResult:
        start = time.monotonic()
        clauses = list(clauses)
        if self.regime.regime is Regime.HORN_CLOSURE and any(not c.is_horn() for c in clauses):
            self.warnings.append("input is not Horn; the horn-closure regime only guarantees completeness for Horn clauses")
        for i, c in enumerate(clauses):
            name = names[i] if names else ""
            cid = self._node(INPUT, (), c, name)
            self.passive.push(cid, self._clause(cid))
        iterations = 0
        while len(self.passive):
            if time.monotonic() - start > self.limits.timeout_s or self.generated > self.limits.max_clauses:
                return self._result(RESOURCE_OUT, None, iterations)
            iterations += 1
            gid = self.forward_simplify(self.passive.pop())
            if gid is None:
                continue
            g = self._clause(gid)
            if g.is_empty:
                return self._result(UNSAT, gid, iterations)
            self.backward_simplify(gid)
            self.active[gid] = g
            for nid in self.generate(gid):
                if self._clause(nid).is_empty:
                    return self._result(UNSAT, nid, iterations)
                if self._cheap_delete(nid):
                    continue
                self.passive.push(nid, self._clause(nid))
        return self._result(SATURATED, None, iterations)


def saturate(
    clauses: Iterable[Clause],
    cfg: OrderingConfig,
    regime: RegimeConfig = RegimeConfig(),
    limits: Limits = Limits(),
    force: bool = False,
    scripted_deletions: Sequence[Clause] = (),
    names: Optional[Sequence[str]] = None,
) -> ProverResult:
    return Prover(cfg, regime, limits, force, scripted_deletions).run(clauses, names)


# ---------------------------------------------------------------------------
# proofs

def extract_proof(nodes: dict[int, ProofNode], root: int) -> list[ProofNode]:
    """Nodes the root depends on, in ascending id order."""
    need = set()
    stack = [root]
    while stack:
        cid = stack.pop()
        if cid in need:
            continue
        need.add(cid)
        stack.extend(nodes[cid].premises)
    return [nodes[i] for i in sorted(need)]


def format_proof(proof: Sequence[ProofNode]) -> str:
    """Indented tree printed premises first, so the last line is the root.

    Indentation is the distance from the root; a step used twice is printed
    once and later referenced by id.
    """
    if not proof:
        return ""
    by_id = {n.id: n for n in proof}
    root = proof[-1]
    lines: list[str] = []
    shown: set[int] = set()

    def show(nid: int, depth: int):
        n = by_id[nid]
        pad = "  " * depth
        if nid in shown:
            lines.append(f"{pad}{n.id} (see above)")
            return
        shown.add(nid)
        for p in dict.fromkeys(n.premises):
            show(p, depth + 1)
        tag = n.rule if not n.detail else f"{n.rule}:{n.detail}"
        prem = ",".join(map(str, n.premises))
        lines.append(f"{pad}{n.id} {tag} [{prem}] {n.clause}")

    show(root.id, 0)
    return "\n".join(lines)


class ReplayError(AssertionError):
    pass


def _variant_in(c: Clause, cands: Iterable[Clause]) -> bool:
    return any(is_variant(c, d) for d in cands)


def replay_step(node: ProofNode, nodes: dict[int, ProofNode], cfg: OrderingConfig) -> bool:
    """Re-run the rule of ``node`` on its premises and look for its conclusion."""
    prem = [nodes[p].clause for p in node.premises]
    c = node.clause
    rule = node.rule
    if rule == INPUT:
        return True
    if rule == calculus.ER:
        return _variant_in(c, (i.conclusion for i in calculus.equality_resolution(prem[0], cfg)))
    if rule == calculus.EF:
        return _variant_in(c, (i.conclusion for i in calculus.equality_factoring(prem[0], cfg)))
    if rule == calculus.PS:
        d, _ = rename_apart(prem[0], prem[1].vars(), prefix="Y")
        return _variant_in(c, (i.conclusion for i in calculus.parallel_superposition(d, prem[1], cfg)))
    if rule == "demod":
        out = demodulate(prem[0], prem[1], DemodMode(node.detail), cfg)
    elif rule == "der":
        out = der(prem[0], DerMode(node.detail))
    elif rule == "cond-rewrite":
        out = parallel_cond_rewrite(prem[0], cfg)
    elif rule == "trivial-literal":
        out = delete_trivial_literals(prem[0])
    else:
        raise ReplayError(f"unknown rule {rule}")
    return out.changed and out.clause is not None and is_variant(out.clause, c)


def replay_proof(proof: Sequence[ProofNode], cfg: OrderingConfig) -> None:
    """Check every proof step; raise :class:`ReplayError` on the first bad one."""
    nodes = {n.id: n for n in proof}
    if not proof or not proof[-1].clause.is_empty:
        raise ReplayError("proof does not end in the empty clause")
    for n in proof:
        if not replay_step(n, nodes, cfg):
            raise ReplayError(f"step {n.id} ({n.rule}) does not replay")
