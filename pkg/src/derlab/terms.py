"""Terms, literals, clauses, substitutions and unification.

Terms are immutable and hash-consed by value (cached hash, structural
equality). Variables are clause-local; callers rename clauses apart before
binary inferences with :func:`rename_apart`.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable, Iterator, Mapping, Optional, Union


class Var:
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("var", name))

    is_var = True

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return str(self) < str(other)

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return self.name


class App:
    __slots__ = ("fn", "args", "_hash", "_str")

    def __init__(self, fn: str, args: Iterable["Term"] = ()):
        self.fn = fn
        self.args = tuple(args)
        self._hash = hash((fn, self.args))
        self._str = None

    is_var = False

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, App)
            and self._hash == other._hash
            and self.fn == other.fn
            and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return str(self) < str(other)

    @property
    def arity(self) -> int:
        return len(self.args)

    def __repr__(self):
        return f"App({self.fn!r}, {list(self.args)!r})"

    def __str__(self):
        if self._str is None:
            if self.args:
                self._str = f"{self.fn}({','.join(map(str, self.args))})"
            else:
                self._str = self.fn
        return self._str


Term = Union[Var, App]
Substitution = dict  # variable name -> Term
Position = tuple  # sequence of positive ints; () is the top position


def const(name: str) -> App:
    return App(name, ())


# ---------------------------------------------------------------------------
# structural utilities

def subterms(t: Term) -> Iterator[Term]:
    """Pre-order traversal, duplicates included."""
    yield t
    if not t.is_var:
        for a in t.args:
            yield from subterms(a)


def positions(t: Term, prefix: Position = ()) -> Iterator[tuple[Position, Term]]:
    yield prefix, t
    if not t.is_var:
        for i, a in enumerate(t.args, start=1):
            yield from positions(a, prefix + (i,))


def subterm_at(t: Term, pos: Position) -> Term:
    for i in pos:
        if t.is_var or not 1 <= i <= len(t.args):
            raise IndexError(f"invalid position {pos} in {t}")
        t = t.args[i - 1]
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    if t.is_var:
        raise IndexError(f"invalid position {pos}")
    i = pos[0]
    args = list(t.args)
    args[i - 1] = replace_at(args[i - 1], pos[1:], new)
    return App(t.fn, args)


def replace_term(t: Term, old: Term, new: Term) -> Term:
    """Replace every occurrence of ``old`` in ``t`` by ``new``."""
    if t == old:
        return new
    if t.is_var:
        return t
    args = tuple(replace_term(a, old, new) for a in t.args)
    if args == t.args:
        return t
    return App(t.fn, args)


def term_vars(t: Term) -> set[str]:
    if t.is_var:
        return {t.name}
    out: set[str] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if s.is_var:
            out.add(s.name)
        else:
            stack.extend(s.args)
    return out


def var_occurrences(t: Term) -> Counter:
    c: Counter = Counter()
    stack = [t]
    while stack:
        s = stack.pop()
        if s.is_var:
            c[s.name] += 1
        else:
            stack.extend(s.args)
    return c


def is_ground(t: Term) -> bool:
    if t.is_var:
        return False
    return all(is_ground(a) for a in t.args)


def occurs(name: str, t: Term) -> bool:
    if t.is_var:
        return t.name == name
    return any(occurs(name, a) for a in t.args)


def term_size(t: Term) -> int:
    if t.is_var:
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def fn_count(t: Term) -> int:
    if t.is_var:
        return 0
    return 1 + sum(fn_count(a) for a in t.args)


def depth(t: Term) -> int:
    if t.is_var or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


# ---------------------------------------------------------------------------
# substitutions

def apply(theta: Mapping[str, Term], t: Term) -> Term:
    if not theta:
        return t
    if t.is_var:
        return theta.get(t.name, t)
    if not t.args:
        return t
    args = tuple(apply(theta, a) for a in t.args)
    if args == t.args:
        return t
    return App(t.fn, args)


def compose(outer: Mapping[str, Term], inner: Mapping[str, Term]) -> Substitution:
    """Return ``outer ∘ inner``, i.e. apply ``inner`` first."""
    out = {x: apply(outer, t) for x, t in inner.items()}
    for x, t in outer.items():
        out.setdefault(x, t)
    return {x: t for x, t in out.items() if not (t.is_var and t.name == x)}


def restrict(theta: Mapping[str, Term], names: Iterable[str]) -> Substitution:
    return {x: theta[x] for x in names if x in theta}


class UnificationError(Exception):
    pass


class ClashError(UnificationError):
    """Two different function symbols (or arities) meet."""


class OccursCheckError(UnificationError):
    """A variable would have to be bound to a term containing it."""


def unify(pairs: Iterable[tuple[Term, Term]]) -> Substitution:
    """Idempotent most general unifier of all pairs.

    Raises :class:`ClashError` or :class:`OccursCheckError` when no unifier
    exists.
    """
    sigma: dict[str, Term] = {}

    def walk(t: Term) -> Term:
        while t.is_var and t.name in sigma:
            t = sigma[t.name]
        return t

    def occurs_walk(name: str, t: Term) -> bool:
        t = walk(t)
        if t.is_var:
            return t.name == name
        return any(occurs_walk(name, a) for a in t.args)

    stack = list(pairs)
    while stack:
        s, t = stack.pop()
        s, t = walk(s), walk(t)
        if s == t:
            continue
        if s.is_var:
            if occurs_walk(s.name, t):
                raise OccursCheckError(f"{s} occurs in {t}")
            sigma[s.name] = t
        elif t.is_var:
            if occurs_walk(t.name, s):
                raise OccursCheckError(f"{t} occurs in {s}")
            sigma[t.name] = s
        else:
            if s.fn != t.fn or len(s.args) != len(t.args):
                raise ClashError(f"{s.fn} vs {t.fn}")
            stack.extend(zip(s.args, t.args))

    def resolve(t: Term) -> Term:
        t = walk(t)
        if t.is_var or not t.args:
            return t
        return App(t.fn, tuple(resolve(a) for a in t.args))

    return {x: resolve(t) for x, t in sigma.items()}


def mgu(*pairs: tuple[Term, Term]) -> Optional[Substitution]:
    """Like :func:`unify` but returns ``None`` on failure."""
    try:
        return unify(pairs)
    except UnificationError:
        return None


def match(pattern: Term, target: Term, sigma: Optional[Substitution] = None) -> Optional[Substitution]:
    """One-way matching: find σ with ``pattern σ == target``."""
    sigma = dict(sigma) if sigma else {}
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if p.is_var:
            bound = sigma.get(p.name)
            if bound is None:
                sigma[p.name] = t
            elif bound != t:
                return None
        elif t.is_var or p.fn != t.fn or len(p.args) != len(t.args):
            return None
        else:
            stack.extend(zip(p.args, t.args))
    return sigma


# ---------------------------------------------------------------------------
# literals and clauses

class Literal:
    """Equational literal ``lhs ≈ rhs`` or ``lhs ≉ rhs``; symmetric in its sides."""

    __slots__ = ("lhs", "rhs", "positive", "_hash")

    def __init__(self, lhs: Term, rhs: Term, positive: bool = True):
        self.lhs = lhs
        self.rhs = rhs
        self.positive = positive
        a, b = hash(lhs), hash(rhs)
        self._hash = hash((positive, min(a, b), max(a, b)))

    def __eq__(self, other):
        if not isinstance(other, Literal) or self.positive != other.positive:
            return False
        return (self.lhs == other.lhs and self.rhs == other.rhs) or (
            self.lhs == other.rhs and self.rhs == other.lhs
        )

    def __hash__(self):
        return self._hash

    @property
    def sides(self) -> tuple[Term, Term]:
        return (self.lhs, self.rhs)

    def flipped(self) -> "Literal":
        return Literal(self.rhs, self.lhs, self.positive)

    def negated(self) -> "Literal":
        return Literal(self.lhs, self.rhs, not self.positive)

    def map(self, fn) -> "Literal":
        return Literal(fn(self.lhs), fn(self.rhs), self.positive)

    def is_ground(self) -> bool:
        return is_ground(self.lhs) and is_ground(self.rhs)

    def __repr__(self):
        return f"Literal({self})"

    def __str__(self):
        op = "=" if self.positive else "!="
        return f"{self.lhs} {op} {self.rhs}"


def pos(s: Term, t: Term) -> Literal:
    return Literal(s, t, True)


def neg(s: Term, t: Term) -> Literal:
    return Literal(s, t, False)


class Clause:
    """Finite multiset of literals. The empty clause is ⊥."""

    __slots__ = ("literals", "_hash", "_counter")

    def __init__(self, literals: Iterable[Literal] = ()):
        self.literals = tuple(literals)
        self._counter = None
        self._hash = None

    @property
    def counter(self) -> Counter:
        if self._counter is None:
            self._counter = Counter(self.literals)
        return self._counter

    def __eq__(self, other):
        if not isinstance(other, Clause):
            return NotImplemented
        return len(self.literals) == len(other.literals) and self.counter == other.counter

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.counter.items()))
        return self._hash

    def __len__(self):
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __getitem__(self, i):
        return self.literals[i]

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def positive(self) -> list[Literal]:
        return [l for l in self.literals if l.positive]

    @property
    def negative(self) -> list[Literal]:
        return [l for l in self.literals if not l.positive]

    def is_horn(self) -> bool:
        return sum(1 for l in self.literals if l.positive) <= 1

    def is_ground(self) -> bool:
        return all(l.is_ground() for l in self.literals)

    def vars(self) -> set[str]:
        out: set[str] = set()
        for l in self.literals:
            out |= term_vars(l.lhs)
            out |= term_vars(l.rhs)
        return out

    def ordered_vars(self) -> list[str]:
        """Variables in order of first occurrence."""
        seen: dict[str, None] = {}
        for l in self.literals:
            for side in l.sides:
                for s in subterms(side):
                    if s.is_var:
                        seen.setdefault(s.name, None)
        return list(seen)

    def without(self, i: int) -> "Clause":
        return Clause(self.literals[:i] + self.literals[i + 1:])

    def map(self, fn) -> "Clause":
        return Clause(l.map(fn) for l in self.literals)

    def subst(self, theta: Mapping[str, Term]) -> "Clause":
        if not theta:
            return self
        return Clause(l.map(lambda t: apply(theta, t)) for l in self.literals)

    def __or__(self, other: "Clause") -> "Clause":
        return Clause(self.literals + other.literals)

    def fn_count(self) -> int:
        return sum(fn_count(l.lhs) + fn_count(l.rhs) for l in self.literals)

    def weight(self) -> int:
        return sum(term_size(l.lhs) + term_size(l.rhs) for l in self.literals)

    def __repr__(self):
        return f"Clause({self})"

    def __str__(self):
        if not self.literals:
            return "$false"
        return " | ".join(map(str, self.literals))


BOTTOM = Clause(())


def clause_terms(c: Clause) -> set[Term]:
    """All subterms occurring in ``c``."""
    out: set[Term] = set()
    for l in c.literals:
        for side in l.sides:
            out.update(subterms(side))
    return out


def occurrences(t: Term, c: Clause) -> list[tuple[int, Position]]:
    """All ``(literal index, position)`` pairs where ``t`` occurs in ``c``.

    A literal is addressed like a binary term: position ``(1, ...)`` is inside
    the left-hand side, ``(2, ...)`` inside the right-hand side.
    """
    out = []
    for i, lit in enumerate(c.literals):
        for side_no, side in ((1, lit.lhs), (2, lit.rhs)):
            for p, s in positions(side, (side_no,)):
                if s == t:
                    out.append((i, p))
    return out


def literal_subterm_at(lit: Literal, p: Position) -> Term:
    side = lit.lhs if p[0] == 1 else lit.rhs
    return subterm_at(side, p[1:])


def replace_all(c: Clause, t: Term, new: Term) -> Clause:
    if t == new:
        return c
    return c.map(lambda s: replace_term(s, t, new))


# ---------------------------------------------------------------------------
# renaming, variants, canonical forms

def rename(c: Clause, prefix: str) -> tuple[Clause, Substitution]:
    """Rename variables of ``c`` to ``prefix0, prefix1, ...`` by first occurrence."""
    ren = {x: Var(f"{prefix}{i}") for i, x in enumerate(c.ordered_vars())}
    return c.subst(ren), ren


def rename_apart(c: Clause, avoid: Iterable[str], prefix: str = "_V") -> tuple[Clause, Substitution]:
    """Rename ``c`` so it shares no variable with ``avoid``."""
    avoid = set(avoid)
    ren: dict[str, Term] = {}
    counter = itertools.count()
    for x in c.ordered_vars():
        name = f"{prefix}{next(counter)}"
        while name in avoid:
            name = f"{prefix}{next(counter)}"
        ren[x] = Var(name)
    return c.subst(ren), ren


def _blind(t: Term) -> str:
    if t.is_var:
        return "?"
    if not t.args:
        return t.fn
    return f"{t.fn}({','.join(_blind(a) for a in t.args)})"


def _named(t: Term, names: dict[str, str]) -> str:
    if t.is_var:
        if t.name not in names:
            names[t.name] = f"V{len(names)}"
        return names[t.name]
    if not t.args:
        return t.fn
    return f"{t.fn}({','.join(_named(a, names) for a in t.args)})"


def canonical_text(c: Clause) -> str:
    """Text encoding that is equal for two clauses iff they are variants."""
    entries = []
    for lit in c.literals:
        bl, br = _blind(lit.lhs), _blind(lit.rhs)
        sign = "=" if lit.positive else "!="
        if bl < br:
            entries.append((f"{bl}{sign}{br}", [(lit.lhs, lit.rhs)]))
        elif br < bl:
            entries.append((f"{br}{sign}{bl}", [(lit.rhs, lit.lhs)]))
        elif lit.lhs == lit.rhs:
            entries.append((f"{bl}{sign}{br}", [(lit.lhs, lit.rhs)]))
        else:
            entries.append((f"{bl}{sign}{br}", [(lit.lhs, lit.rhs), (lit.rhs, lit.lhs)]))
    entries.sort(key=lambda e: e[0])
    if not any(len(e[1]) > 1 for e in entries) and all("?" not in e[0] for e in entries):
        return " | ".join(e[0] for e in entries)
    groups = [list(g) for _, g in itertools.groupby(entries, key=lambda e: e[0])]

    def group_orders(group):
        for perm in itertools.permutations(group):
            for orient in itertools.product(*(e[1] for e in perm)):
                yield [(e[0], o) for e, o in zip(perm, orient)]

    best = None
    total = 1
    for g in groups:
        n = len(g)
        total *= _factorial(n) * 2 ** sum(1 for e in g if len(e[1]) > 1)
    if total > 5040:
        # fall back to a renaming-invariant but not necessarily minimal encoding
        return "~" + " | ".join(e[0] for e in entries) + "#" + str(len(c.vars()))
    for combo in itertools.product(*(list(group_orders(g)) for g in groups)):
        names: dict[str, str] = {}
        parts = []
        for group in combo:
            for key, (l, r) in group:
                sign = "=" if "!=" not in key else "!="
                parts.append(f"{_named(l, names)}{sign}{_named(r, names)}")
        text = " | ".join(parts)
        if best is None or text < best:
            best = text
    return best


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def blind_key(c: Clause) -> str:
    """Renaming-invariant key; equal for variants, may collide for non-variants."""
    parts = []
    for lit in c.literals:
        a, b = sorted((_blind(lit.lhs), _blind(lit.rhs)))
        parts.append(f"{a}{'=' if lit.positive else '!='}{b}")
    return " | ".join(sorted(parts))


def _is_renaming(sigma: Substitution) -> bool:
    images = set()
    for t in sigma.values():
        if not t.is_var or t.name in images:
            return False
        images.add(t.name)
    return True


def is_variant(c: Clause, d: Clause) -> bool:
    """Do ``c`` and ``d`` differ only by an injective renaming of variables?"""
    if len(c) != len(d):
        return False
    if c == d:
        return True
    if len(c.vars()) != len(d.vars()) or blind_key(c) != blind_key(d):
        return False
    return any(_is_renaming(s) for s in submultiset_matches(c, d))


def _match_literal(l: Literal, target: Literal, sigma: Substitution) -> Iterator[Substitution]:
    if l.positive != target.positive:
        return
    s = match(l.lhs, target.lhs, sigma)
    if s is not None:
        s = match(l.rhs, target.rhs, s)
        if s is not None:
            yield s
    s = match(l.lhs, target.rhs, sigma)
    if s is not None:
        s = match(l.rhs, target.lhs, s)
        if s is not None:
            yield s


def submultiset_matches(c: Clause, d: Clause) -> Iterator[Substitution]:
    """All σ (up to search order) such that ``cσ`` is a submultiset of ``d``."""
    lits = sorted(c.literals, key=lambda l: -term_size(l.lhs) - term_size(l.rhs))
    used = [False] * len(d.literals)

    def search(i: int, sigma: Substitution):
        if i == len(lits):
            yield sigma
            return
        for j, target in enumerate(d.literals):
            if used[j]:
                continue
            for s in _match_literal(lits[i], target, sigma):
                used[j] = True
                yield from search(i + 1, s)
                used[j] = False

    yield from search(0, {})


def is_submultiset(c: Clause, d: Clause) -> bool:
    dc = d.counter
    return all(dc[l] >= n for l, n in c.counter.items())
