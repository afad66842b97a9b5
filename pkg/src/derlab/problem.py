"""Problem and lab file format.

A file is a sequence of statements, each terminated by ``.``::

    % comment
    order kbo.                 % or: order lpo.
    weight f 4.                % symbol weight; ``weight * 1.`` sets the default
    varweight 1.
    prec f > g > b.            % precedence, largest first
    cnf(c1, axiom, f(X,d) = X).
    cnf(c2, axiom, f(X,Y) != b | g(X) = d).
    cnf(bot, axiom, $false).

Lab files additionally use::

    variant horn.              % or: variant nonhorn.
    rule(f(b), b).
    closure(k1, h(f(X)) = f(Y), {X -> b, Y -> b}).
    compare(k1, k2).

Identifiers consist of letters, digits, ``_`` and ``'``; those starting with
an uppercase letter are variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .orderings import OrderingConfig, OrderingError
from .rewriting import GroundClosure, RewriteSystem, Variant
from .terms import App, BOTTOM, Clause, Literal, Term, Var, is_ground


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(map(str, diagnostics)))


@dataclass(frozen=True)
class NamedClause:
    name: str
    role: str
    clause: Clause


@dataclass
class ProblemFile:
    kind: str = "kbo"
    weights: dict[str, int] = field(default_factory=dict)
    default_weight: Optional[int] = None
    var_weight: int = 1
    precedence: tuple[str, ...] = ()
    clauses: list[NamedClause] = field(default_factory=list)
    arities: dict[str, int] = field(default_factory=dict)
    # lab material
    variant: Optional[Variant] = None
    rules: list[tuple[Term, Term]] = field(default_factory=list)
    closures: dict[str, GroundClosure] = field(default_factory=dict)
    comparisons: list[tuple[str, str]] = field(default_factory=list)

    def ordering(self) -> OrderingConfig:
        return OrderingConfig(
            self.kind,
            self.weights,
            self.var_weight,
            self.precedence,
            1 if self.default_weight is None else self.default_weight,
        )

    def clause_list(self) -> list[Clause]:
        return [nc.clause for nc in self.clauses]

    def rewrite_system(self) -> RewriteSystem:
        return RewriteSystem(self.rules)

    def __eq__(self, other):
        if not isinstance(other, ProblemFile):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.weights == other.weights
            and self.default_weight == other.default_weight
            and self.var_weight == other.var_weight
            and self.precedence == other.precedence
            and [(c.name, c.role, c.clause.literals) for c in self.clauses]
            == [(c.name, c.role, c.clause.literals) for c in other.clauses]
            and self.variant == other.variant
            and self.rules == other.rules
            and {k: (v.clause.literals, v.theta) for k, v in self.closures.items()}
            == {k: (v.clause.literals, v.theta) for k, v in other.closures.items()}
            and self.comparisons == other.comparisons
        )


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<neq>!=)
  | (?P<arrow>->)
  | (?P<false>\$false)
  | (?P<ident>[A-Za-z0-9_']+)
  | (?P<punct>[().,|=>{}*])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    errors: list[Diagnostic] = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        col = i - line_start + 1
        if m is None:
            errors.append(Diagnostic(line, col, f"unexpected character {text[i]!r}"))
            i += 1
            continue
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), line, col))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        i = m.end()
    tokens.append(Token("eof", "", line, i - line_start + 1))
    return tokens, errors


# ---------------------------------------------------------------------------
# parser

class _Fail(Exception):
    def __init__(self, tok: Token, message: str):
        self.diag = Diagnostic(tok.line, tok.col, message)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        self.pf = ProblemFile()
        self.errors: list[Diagnostic] = []
        self.first_use: dict[str, Token] = {}
        self.kind_seen = False

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, kind: str, what: Optional[str] = None) -> Token:
        t = self.tok
        if t.kind != kind:
            shown = t.text or "end of file"
            raise _Fail(t, f"expected {what or repr(kind)}, found {shown!r}")
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        return self.expect("ident", what)

    def number(self, what: str) -> int:
        t = self.ident(what)
        if not t.text.isdigit():
            raise _Fail(t, f"expected {what}, found {t.text!r}")
        return int(t.text)

    def recover(self):
        while self.tok.kind not in (".", "eof"):
            self.advance()
        self.advance()

    # grammar
    def run(self) -> ProblemFile:
        while self.tok.kind != "eof":
            try:
                self.statement()
            except _Fail as f:
                self.errors.append(f.diag)
                self.recover()
        self.check_ordering()
        return self.pf

    def statement(self):
        head = self.ident("a statement")
        word = head.text
        if word == "order":
            kind = self.ident("kbo or lpo")
            if kind.text not in ("kbo", "lpo"):
                raise _Fail(kind, f"unknown ordering {kind.text!r}")
            self.pf.kind = kind.text
            self.kind_seen = True
        elif word == "weight":
            if self.tok.kind == "*":
                self.advance()
                self.pf.default_weight = self.number("a weight")
            else:
                sym = self.ident("a symbol")
                self.pf.weights[sym.text] = self.number("a weight")
        elif word == "varweight":
            self.pf.var_weight = self.number("a weight")
        elif word == "prec":
            syms = [self.ident("a symbol").text]
            while self.tok.kind == ">":
                self.advance()
                syms.append(self.ident("a symbol").text)
            if len(set(syms)) != len(syms):
                raise _Fail(head, "precedence lists a symbol twice")
            self.pf.precedence = tuple(syms)
        elif word == "variant":
            v = self.ident("horn or nonhorn")
            if v.text not in ("horn", "nonhorn"):
                raise _Fail(v, f"unknown variant {v.text!r}")
            self.pf.variant = Variant(v.text)
        elif word == "cnf":
            self.cnf(head)
        elif word == "rule":
            self.expect("(")
            l = self.term()
            self.expect(",")
            r = self.term()
            self.expect(")")
            if not (is_ground(l) and is_ground(r)):
                raise _Fail(head, "rewrite rules must be ground")
            self.pf.rules.append((l, r))
        elif word == "closure":
            self.closure(head)
        elif word == "compare":
            self.expect("(")
            a = self.ident("a closure name")
            self.expect(",")
            b = self.ident("a closure name")
            self.expect(")")
            for t in (a, b):
                if t.text not in self.pf.closures:
                    raise _Fail(t, f"unknown closure {t.text!r}")
            self.pf.comparisons.append((a.text, b.text))
        else:
            raise _Fail(head, f"unknown statement {word!r}")
        self.expect(".", "'.'")

    def cnf(self, head: Token):
        self.expect("(")
        name = self.ident("a clause name")
        self.expect(",")
        role = self.ident("a role")
        self.expect(",")
        clause = self.clause()
        self.expect(")")
        if any(nc.name == name.text for nc in self.pf.clauses):
            raise _Fail(name, f"duplicate clause name {name.text!r}")
        self.pf.clauses.append(NamedClause(name.text, role.text, clause))

    def closure(self, head: Token):
        self.expect("(")
        name = self.ident("a closure name")
        self.expect(",")
        clause = self.clause()
        self.expect(",")
        self.expect("{")
        theta: dict[str, Term] = {}
        while self.tok.kind != "}":
            x = self.ident("a variable")
            if not _is_var_name(x.text):
                raise _Fail(x, f"{x.text!r} is not a variable")
            self.expect("arrow", "'->'")
            t = self.term()
            if not is_ground(t):
                raise _Fail(x, f"{x.text} must be mapped to a ground term")
            theta[x.text] = t
            if self.tok.kind == ",":
                self.advance()
            elif self.tok.kind != "}":
                raise _Fail(self.tok, f"expected ',' or '}}', found {self.tok.text!r}")
        self.advance()
        self.expect(")")
        if name.text in self.pf.closures:
            raise _Fail(name, f"duplicate closure name {name.text!r}")
        missing = clause.vars() - set(theta)
        if missing:
            raise _Fail(name, f"substitution does not ground {', '.join(sorted(missing))}")
        self.pf.closures[name.text] = GroundClosure(clause, theta)

    def clause(self) -> Clause:
        if self.tok.kind == "false":
            self.advance()
            return BOTTOM
        lits = [self.literal()]
        while self.tok.kind == "|":
            self.advance()
            lits.append(self.literal())
        return Clause(lits)

    def literal(self) -> Literal:
        l = self.term()
        op = self.tok
        if op.kind == "=":
            positive = True
        elif op.kind == "neq":
            positive = False
        else:
            raise _Fail(op, f"expected '=' or '!=', found {op.text or 'end of file'!r}")
        self.advance()
        r = self.term()
        return Literal(l, r, positive)

    def term(self) -> Term:
        t = self.ident("a term")
        if _is_var_name(t.text):
            if self.tok.kind == "(":
                raise _Fail(self.tok, f"variable {t.text} cannot take arguments")
            return Var(t.text)
        args = []
        if self.tok.kind == "(":
            self.advance()
            args.append(self.term())
            while self.tok.kind == ",":
                self.advance()
                args.append(self.term())
            self.expect(")", "')'")
        known = self.pf.arities.get(t.text)
        if known is None:
            self.pf.arities[t.text] = len(args)
            self.first_use[t.text] = t
        elif known != len(args):
            raise _Fail(t, f"symbol {t.text} used with arity {len(args)}, earlier with {known}")
        return App(t.text, args)

    def check_ordering(self):
        pf = self.pf
        syms = sorted(pf.arities, key=lambda s: (self.first_use[s].line, self.first_use[s].col))
        for s in syms:
            tok = self.first_use[s]
            if pf.kind == "kbo" and s not in pf.weights and pf.default_weight is None:
                self.errors.append(Diagnostic(tok.line, tok.col, f"no weight declared for {s}"))
            if s not in pf.precedence:
                self.errors.append(Diagnostic(tok.line, tok.col, f"{s} is missing from the precedence"))
        if not self.errors:
            try:
                pf.ordering().check_admissible(pf.arities)
            except OrderingError as e:
                self.errors.append(Diagnostic(1, 1, f"inadmissible ordering: {e}"))


def _is_var_name(name: str) -> bool:
    return name[:1].isupper()


def parse(text: str) -> ProblemFile:
    """Parse a problem or lab file; raise :class:`ParseError` with all diagnostics."""
    tokens, errors = tokenize(text)
    p = _Parser(tokens)
    pf = p.run()
    errors = errors + p.errors
    if errors:
        raise ParseError(sorted(errors, key=lambda d: (d.line, d.col)))
    return pf


def parse_file(path: str) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# ---------------------------------------------------------------------------
# printing

def format_term(t: Term) -> str:
    return str(t)


def format_clause(c: Clause) -> str:
    return str(c)


def format_problem(pf: ProblemFile) -> str:
    lines = []
    if pf.kind != "kbo":
        lines.append(f"order {pf.kind}.")
    for f, w in pf.weights.items():
        lines.append(f"weight {f} {w}.")
    if pf.default_weight is not None:
        lines.append(f"weight * {pf.default_weight}.")
    if pf.var_weight != 1:
        lines.append(f"varweight {pf.var_weight}.")
    if pf.precedence:
        lines.append("prec " + " > ".join(pf.precedence) + ".")
    if pf.variant is not None:
        lines.append(f"variant {pf.variant.value}.")
    for nc in pf.clauses:
        lines.append(f"cnf({nc.name}, {nc.role}, {format_clause(nc.clause)}).")
    for l, r in pf.rules:
        lines.append(f"rule({l}, {r}).")
    for name, clo in pf.closures.items():
        sub = ", ".join(f"{x} -> {t}" for x, t in clo.theta.items())
        lines.append(f"closure({name}, {format_clause(clo.clause)}, {{{sub}}}).")
    for a, b in pf.comparisons:
        lines.append(f"compare({a}, {b}).")
    return "\n".join(lines) + ("\n" if lines else "")
