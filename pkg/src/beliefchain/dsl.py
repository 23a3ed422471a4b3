"""Rule-model text format.

Example::

    variable A {1, 0}
    variable E {1, 0}
    link A -> E method consonant {
        given A=1: {1=0.8}
        given A=0: {1=0.5}
    }
    belief A: {1=0.3, 0=0.2}

A subset is written as values joined by ``|`` (``1|0`` is the whole frame of a
binary variable).  Mass not listed in a map is left uncommitted on the whole
frame.  ``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import fsum, isfinite

from .errors import ConstructionError, ModelSemanticError, ParseError
from .frames import ConfigSet, Frame, Variable
from .links import METHODS, ConditionalBeliefTable, build_link
from .mass import NORMALIZATION_TOL, MassFunction, make_mass
from .propagation import ChainModel

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\f\v]+)"
    r"|(?P<arrow>->)"
    r"|(?P<punct>[{}:,=|])"
    r"|(?P<word>(?:[0-9]+\.?[0-9]*|\.[0-9]+)[eE][-+]?[0-9]+(?![A-Za-z0-9_.])|[A-Za-z0-9_.]+)"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "word", "arrow", a punctuation character, or "eof"
    text: str
    line: int
    column: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text: str, source: str = "<model>") -> list[Token]:
    tokens = []
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            mo = _TOKEN_RE.match(line, pos)
            if mo is None:
                raise ParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1, source)
            kind = mo.lastgroup
            if kind == "punct":
                kind = mo.group()
            if kind != "ws":
                tokens.append(Token(kind, mo.group(), lineno, pos + 1))
            pos = mo.end()
    last = len(lines) or 1
    tokens.append(Token("eof", "", last, len(lines[-1]) + 1 if lines else 1))
    return tokens


@dataclass
class _Massmap:
    entries: list[tuple[list[Token], Token, float]]  # subset values, number token, mass
    open_brace: Token


@dataclass
class _Link:
    token: Token
    antecedent: Token
    consequent: Token
    method: Token
    rules: list[tuple[Token, Token, Token, _Massmap]]  # given-kw, var, value, massmap


class _Parser:
    def __init__(self, tokens, source):
        self.tokens = tokens
        self.pos = 0
        self.source = source
        self.variables: dict[str, tuple[Variable, Token]] = {}
        self.links: list[_Link] = []
        self.beliefs: list[tuple[Token, _Massmap]] = []

    # token helpers

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message, tok=None, cls=ParseError):
        tok = tok or self.peek
        return cls(message, tok.line, tok.column, self.source)

    def expect(self, kind, what=None) -> Token:
        tok = self.peek
        if tok.kind != kind:
            raise self.error(f"expected {what or repr(kind)}, found {tok.describe()}")
        self.pos += 1
        return tok

    def keyword(self, word) -> Token:
        tok = self.peek
        if tok.kind != "word" or tok.text != word:
            raise self.error(f"expected '{word}', found {tok.describe()}")
        self.pos += 1
        return tok

    # grammar

    def parse(self):
        while self.peek.kind != "eof":
            tok = self.peek
            if tok.kind == "word" and tok.text == "variable":
                self.vardecl()
            elif tok.kind == "word" and tok.text == "link":
                self.linkdecl()
            elif tok.kind == "word" and tok.text == "belief":
                self.beliefdecl()
            else:
                raise self.error(f"expected 'variable', 'link' or 'belief', found {tok.describe()}")

    def vardecl(self):
        self.keyword("variable")
        name = self.expect("word", "variable name")
        self.expect("{")
        values = [self.expect("word", "value")]
        while self.peek.kind == ",":
            self.pos += 1
            values.append(self.expect("word", "value"))
        self.expect("}", "',' or '}'")
        if name.text in self.variables:
            raise self.error(f"variable {name.text} is already declared", name)
        seen = set()
        for v in values:
            if v.text in seen:
                raise self.error(f"duplicate value {v.text!r} for variable {name.text}", v)
            seen.add(v.text)
        if len(values) < 2:
            raise self.error(f"variable {name.text} needs at least 2 values", name)
        self.variables[name.text] = (Variable(name.text, tuple(v.text for v in values)), name)

    def linkdecl(self):
        kw = self.keyword("link")
        ant = self.expect("word", "variable name")
        self.expect("arrow", "'->'")
        cons = self.expect("word", "variable name")
        self.keyword("method")
        method = self.expect("word", "method name")
        if method.text not in METHODS:
            raise self.error(
                f"unknown method {method.text!r}; expected one of {', '.join(METHODS)}", method
            )
        self.expect("{")
        rules = []
        while self.peek.kind == "word" and self.peek.text == "given":
            given = self.keyword("given")
            var = self.expect("word", "variable name")
            self.expect("=")
            value = self.expect("word", "value")
            self.expect(":")
            rules.append((given, var, value, self.massmap()))
        self.expect("}", "'given' or '}'")
        self.links.append(_Link(kw, ant, cons, method, rules))

    def beliefdecl(self):
        self.keyword("belief")
        name = self.expect("word", "variable name")
        self.expect(":")
        self.beliefs.append((name, self.massmap()))

    def massmap(self) -> _Massmap:
        brace = self.expect("{")
        entries = []
        if self.peek.kind != "}":
            entries.append(self.mass_entry())
            while self.peek.kind == ",":
                self.pos += 1
                entries.append(self.mass_entry())
        self.expect("}", "',' or '}'")
        return _Massmap(entries, brace)

    def mass_entry(self):
        values = [self.expect("word", "value")]
        while self.peek.kind == "|":
            self.pos += 1
            values.append(self.expect("word", "value"))
        self.expect("=", "'|' or '='")
        num = self.expect("word", "number")
        try:
            mass = float(num.text)
        except ValueError:
            raise self.error(f"expected number, found {num.describe()}", num) from None
        if not isfinite(mass):
            raise self.error(f"mass {num.text!r} is not finite", num)
        return values, num, mass

    # resolution

    def variable(self, tok) -> Variable:
        try:
            return self.variables[tok.text][0]
        except KeyError:
            raise self.error(f"unknown variable {tok.text}", tok) from None

    def mass(self, var: Variable, mm: _Massmap) -> MassFunction:
        frame = Frame((var,))
        entries: dict[ConfigSet, float] = {}
        for values, num, mass in mm.entries:
            mask = 0
            for v in values:
                if v.text not in var.values:
                    raise self.error(f"unknown value {v.text!r} for variable {var.name}", v)
                mask |= 1 << var.values.index(v.text)
            s = ConfigSet(frame, mask)
            if s in entries:
                raise self.error(f"duplicate subset {'|'.join(t.text for t in values)}", values[0])
            entries[s] = mass
        total = fsum(entries.values())
        if total > 1.0 + NORMALIZATION_TOL:
            raise self.error(
                f"masses sum to {total:g}, which exceeds 1", mm.open_brace, ModelSemanticError
            )
        return make_mass(frame, entries)

    def build(self) -> ChainModel:
        chain: list[Variable] = []
        links = []
        for lk in self.links:
            ant, cons = self.variable(lk.antecedent), self.variable(lk.consequent)
            if not chain:
                chain.append(ant)
            elif ant != chain[-1]:
                raise self.error(
                    f"chain discontinuity: link starts at {ant.name} but the chain ends at {chain[-1].name}",
                    lk.antecedent,
                )
            if cons in chain:
                raise self.error(f"link {ant.name} -> {cons.name} closes a loop", lk.consequent)
            chain.append(cons)
            rows = {}
            for _, var, value, mm in lk.rules:
                if var.text != ant.name:
                    if var.text not in self.variables:
                        raise self.error(f"unknown variable {var.text}", var)
                    raise self.error(f"rule conditions on {var.text}, link antecedent is {ant.name}", var)
                if value.text not in ant.values:
                    raise self.error(f"unknown value {value.text!r} for variable {ant.name}", value)
                if value.text in rows:
                    raise self.error(f"duplicate rule for {ant.name}={value.text}", value)
                rows[value.text] = self.mass(cons, mm)
            for a in ant.values:
                if a not in rows:
                    raise self.error(f"missing rule for {ant.name}={a}", lk.token)
            table = ConditionalBeliefTable(ant, cons, rows)
            try:
                links.append(build_link(table, lk.method.text))
            except ConstructionError as exc:
                raise self.error(str(exc), lk.method, ModelSemanticError) from None

        eof = self.tokens[-1]
        if not self.variables:
            raise self.error("model declares no variables", eof)
        if not chain:
            if len(self.variables) > 1:
                tok = list(self.variables.values())[1][1]
                raise self.error(f"variable {tok.text} is not connected to the chain", tok)
            chain = [next(iter(self.variables.values()))[0]]
        for var, tok in self.variables.values():
            if var not in chain:
                raise self.error(f"variable {var.name} is not connected to the chain", tok)

        if not self.beliefs:
            raise self.error("missing belief declaration", eof)
        if len(self.beliefs) > 1:
            raise self.error("only one belief declaration is allowed", self.beliefs[1][0])
        name, mm = self.beliefs[0]
        var = self.variable(name)
        if var != chain[0]:
            raise self.error(
                f"belief must be on the first variable of the chain ({chain[0].name}), not {var.name}", name
            )
        return ChainModel(tuple(chain), tuple(links), self.mass(var, mm))


def parse_model(text: str, source: str = "<model>") -> ChainModel:
    """Parse a rule model; raises :class:`ParseError` or :class:`ModelSemanticError` with a location."""
    parser = _Parser(tokenize(text, source), source)
    parser.parse()
    return parser.build()


def _render_mass(m: MassFunction) -> str:
    var = m.frame.variables[0]
    parts = []
    for s, v in m.items():
        if s.is_full() and len(m) > 1:
            continue  # implicit remainder
        parts.append("|".join(var.values[i] for i in s.members) + "=" + repr(v))
    return "{" + ", ".join(parts) + "}"


def render_model(model: ChainModel) -> str:
    lines = [f"variable {v.name} {{{', '.join(v.values)}}}" for v in model.variables]
    for link in model.links:
        a, c = link.antecedent, link.consequent
        lines.append(f"link {a.name} -> {c.name} method {link.method} {{")
        for value, row in link.table.rows.items():
            lines.append(f"    given {a.name}={value}: {_render_mass(row)}")
        lines.append("}")
    lines.append(f"belief {model.variables[0].name}: {_render_mass(model.root_belief)}")
    return "\n".join(lines) + "\n"
