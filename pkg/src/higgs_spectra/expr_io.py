"""Text input for boson polynomials and JSON/CSV output for reports.

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | factor
    factor := base ('^' uint)?
    base   := number | 'i' | param | atom | '(' expr ')'
    atom   := ('a' | 'ad' | 'a†') '(' uint ')'
    param  := 'gamma' | 'omega0' | 'c' | 'beta'

A number may carry a trailing ``i`` (``3i``, ``2.5e-3i``) to make it
imaginary.  The canonical text printed by :func:`boson_algebra.to_text` is a
sentence of this grammar.
"""
from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .boson_algebra import DEFAULT_TERM_CAP, BosonPolynomial, annihilator, creator, normal_multiply
from .operator_zoo import DeformationParams

SCHEMA_VERSION = 1
PARAM_NAMES = ("gamma", "omega0", "c", "beta")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message, self.line, self.column = message, line, column


class UnboundParameter(ValueError):
    pass


# -- tokens -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<name>a†|[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        else:
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    col = pos - line_start + 1
    tokens.append(Token("eof", "", line, col))
    return tokens


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Number:
    value: complex
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Param:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Atom:
    creation: bool
    mode: int
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: Any


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: Any
    exponent: int


ExprAst = Number | Param | Atom | Neg | Sum | Product | Power


class _Parser:
    def __init__(self, text: str, n_modes: int):
        self.tokens = tokenize(text)
        self.pos = 0
        self.n_modes = n_modes

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}")
        return self.advance()

    def parse(self):
        if self.tok.kind == "eof":
            self.fail("empty expression")
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        terms = [(1, self.term())]
        while self.tok.text in ("+", "-"):
            sign = 1 if self.advance().text == "+" else -1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        factors = [self.unary()]
        while self.tok.text == "*":
            self.advance()
            factors.append(self.unary())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def unary(self):
        if self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.factor()

    def factor(self):
        base = self.base()
        if self.tok.text == "^":
            self.advance()
            t = self.tok
            if t.kind != "number" or not t.text.isdigit():
                self.fail("exponent must be a non-negative integer")
            self.advance()
            return Power(base, int(t.text))
        return base

    def base(self):
        t = self.tok
        if t.kind == "number":
            self.advance()
            if t.text.endswith("i"):
                return Number(complex(0, float(t.text[:-1])), t.line, t.column)
            return Number(complex(float(t.text)), t.line, t.column)
        if t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "name":
            self.advance()
            if t.text == "i":
                return Number(1j, t.line, t.column)
            if t.text in PARAM_NAMES:
                return Param(t.text, t.line, t.column)
            if t.text in ("a", "ad", "a†"):
                self.expect("(")
                m = self.tok
                if m.kind != "number" or not m.text.isdigit():
                    self.fail("mode index must be a positive integer")
                self.advance()
                mode = int(m.text)
                if not 1 <= mode <= self.n_modes:
                    self.fail(f"mode {mode} outside 1..{self.n_modes}", m)
                self.expect(")")
                return Atom(t.text != "a", mode, t.line, t.column)
            self.fail(f"unknown identifier {t.text!r}", t)
        found = t.text or "end of input"
        self.fail(f"unexpected {found!r}")


def parse(text: str, n_modes: int = 3):
    """Parse ``text`` into an AST; raises :class:`ParseError` with a position."""
    return _Parser(text, n_modes).parse()


def lower(
    ast,
    params: DeformationParams | None = None,
    n_modes: int = 3,
    term_cap: int = DEFAULT_TERM_CAP,
) -> BosonPolynomial:
    """Evaluate an AST to a normal-ordered polynomial."""

    def go(node) -> BosonPolynomial:
        if isinstance(node, Number):
            return BosonPolynomial.scalar(node.value, n_modes)
        if isinstance(node, Param):
            if params is None:
                raise UnboundParameter(f"parameter {node.name!r} used without bound parameters")
            return BosonPolynomial.scalar(getattr(params, node.name), n_modes)
        if isinstance(node, Atom):
            return creator(node.mode, n_modes) if node.creation else annihilator(node.mode, n_modes)
        if isinstance(node, Neg):
            return -go(node.operand)
        if isinstance(node, Sum):
            out = BosonPolynomial.zero(n_modes)
            for sign, t in node.terms:
                out = out + go(t) if sign > 0 else out - go(t)
            return out
        if isinstance(node, Product):
            out = go(node.factors[0])
            for f in node.factors[1:]:
                out = normal_multiply(out, go(f), term_cap)
            return out
        if isinstance(node, Power):
            b = go(node.base)
            out = BosonPolynomial.scalar(1, n_modes)
            for _ in range(node.exponent):
                out = normal_multiply(out, b, term_cap)
            return out
        raise TypeError(f"not an expression node: {node!r}")

    return go(ast)


def parse_polynomial(text: str, params: DeformationParams | None = None, n_modes: int = 3) -> BosonPolynomial:
    return lower(parse(text, n_modes), params, n_modes)


# -- reports ------------------------------------------------------------------


def to_jsonable(obj: Any) -> Any:
    """Plain JSON data: complex -> {re, im}; non-finite floats -> None."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": to_jsonable(float(obj.real)), "im": to_jsonable(float(obj.imag))}
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def emit_report(report: Any) -> bytes:
    """Deterministic JSON bytes (sorted keys, shortest round-trip floats)."""
    data = to_jsonable(report)
    if isinstance(data, dict):
        data = {**data, "schema_version": SCHEMA_VERSION}
    return (json.dumps(data, sort_keys=True, indent=2, allow_nan=False, ensure_ascii=False) + "\n").encode()


def load_report(blob: bytes | str) -> dict:
    data = json.loads(blob)
    version = data.get("schema_version") if isinstance(data, dict) else None
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {version!r}")
    return data


def _csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def eigenvalues_csv(report) -> str:
    return _csv_text(
        ["index", "n3", "re", "im"],
        ([k, n3, repr(float(z.real)), repr(float(z.imag))] for k, (z, n3) in enumerate(zip(report.eigenvalues, report.block_of))),
    )


def scan_csv(rows, special: set | None = None) -> str:
    """Scan rows as CSV; ``special`` holds ``(c, eigenvalue)`` pairs named in the degeneracy remarks."""
    special = special or set()
    return _csv_text(
        ["c", "eigenvalue_re", "eigenvalue_im", "multiplicity", "jump", "published_special"],
        (
            [repr(r.c), repr(float(r.eigenvalue.real)), repr(float(r.eigenvalue.imag)), r.multiplicity,
             int(r.jump), int((r.c, round(r.eigenvalue.real, 9)) in special)]
            for r in rows
        ),
    )
