"""Ground congruence closure."""

from __future__ import annotations

from typing import Iterable

from .terms import Term, subterms


class CongruenceClosure:
    """Union-find over ground terms, closed under congruence.

    Terms are registered on demand together with all their subterms.
    """

    def __init__(self, equations: Iterable[tuple[Term, Term]] = ()):
        self._parent: dict[Term, Term] = {}
        self._uses: dict[Term, list[Term]] = {}
        self._sig: dict[tuple, Term] = {}
        for s, t in equations:
            self.merge(s, t)

    def copy(self) -> "CongruenceClosure":
        cc = CongruenceClosure()
        cc._parent = dict(self._parent)
        cc._uses = {k: list(v) for k, v in self._uses.items()}
        cc._sig = dict(self._sig)
        return cc

    def find(self, t: Term) -> Term:
        if t not in self._parent:
            self.add(t)
        root = t
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[t] != root:
            self._parent[t], t = root, self._parent[t]
        return root

    def _signature(self, t: Term) -> tuple:
        return (t.fn, tuple(self.find(a) for a in t.args))

    def add(self, t: Term) -> None:
        if t in self._parent:
            return
        for s in reversed(list(subterms(t))):
            if s in self._parent:
                continue
            self._parent[s] = s
            self._uses[s] = []
            if s.is_var or not s.args:
                continue
            for a in s.args:
                self._uses[self.find(a)].append(s)
            sig = self._signature(s)
            other = self._sig.get(sig)
            if other is None:
                self._sig[sig] = s
            else:
                self._union(s, other)

    def _union(self, a: Term, b: Term) -> None:
        pending = [(a, b)]
        while pending:
            x, y = pending.pop()
            rx, ry = self.find(x), self.find(y)
            if rx == ry:
                continue
            if len(self._uses[rx]) > len(self._uses[ry]):
                rx, ry = ry, rx
            self._parent[rx] = ry
            moved = self._uses.pop(rx)
            for u in moved:
                sig = self._signature(u)
                other = self._sig.get(sig)
                if other is None:
                    self._sig[sig] = u
                elif self.find(other) != self.find(u):
                    pending.append((u, other))
            self._uses[ry].extend(moved)

    def merge(self, s: Term, t: Term) -> None:
        self.add(s)
        self.add(t)
        self._union(s, t)

    def equal(self, s: Term, t: Term) -> bool:
        self.add(s)
        self.add(t)
        return self.find(s) == self.find(t)
