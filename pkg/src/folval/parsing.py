"""Polynomial expressions and input files.

Grammar (``^`` and ``**`` both mean power)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom (("^" | "**") INT)?
    atom   := INT | NAME | "(" expr ")"

Division is allowed only by a nonzero constant.  Juxtaposition such as
``2x`` is rejected rather than read as a product.

An input file is a list of ``NAME = expr`` statements separated by newlines
or ``;``; ``#`` starts a comment.  Local germs use ``P`` and ``Q``,
projective forms use ``A``, ``B`` and ``C``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly
from .errors import ParseError

LOCAL_VARIABLES = ("x", "y")
PROJECTIVE_VARIABLES = ("x", "y", "z")

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()=;])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            tokens.append(Token("sep", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "op" and m.group() == ";":
            tokens.append(Token("sep", ";", line, col))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], variables: tuple[str, ...], bindings: dict[str, Fraction]):
        self.tokens = tokens
        self.i = 0
        self.variables = variables
        self.bindings = bindings
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def skip_newlines(self) -> None:
        # newlines inside parentheses do not end a statement
        while self.depth and self.tok.kind == "sep" and self.tok.text == "\n":
            self.i += 1

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        self.skip_newlines()
        return tok

    def accept(self, *ops: str) -> Token | None:
        if self.tok.kind == "op" and self.tok.text in ops:
            return self.advance()
        return None

    def expr(self) -> Poly:
        result = self.term()
        while True:
            op = self.accept("+", "-")
            if op is None:
                return result
            rhs = self.term()
            result = result + rhs if op.text == "+" else result - rhs

    def term(self) -> Poly:
        result = self.unary()
        while True:
            op = self.accept("*", "/")
            if op is None:
                self.reject_juxtaposition()
                return result
            start = self.tok
            rhs = self.unary()
            if op.text == "*":
                result = result * rhs
            else:
                if not rhs.is_constant():
                    raise self.error("division by a non-constant polynomial", start)
                if not rhs.constant_term():
                    raise self.error("division by zero", start)
                result = result / rhs.constant_term()

    def reject_juxtaposition(self) -> None:
        tok = self.tok
        if tok.kind in ("num", "name") or (tok.kind == "op" and tok.text == "("):
            raise self.error("implicit multiplication is not allowed; use '*'")

    def unary(self) -> Poly:
        op = self.accept("-", "+")
        if op is not None:
            inner = self.unary()
            return -inner if op.text == "-" else inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.accept("^", "**") is None:
            return base
        tok = self.tok
        if tok.kind == "op" and tok.text == "-":
            raise self.error("negative exponent")
        if tok.kind != "num":
            raise self.error("exponent must be a non-negative integer")
        self.advance()
        if self.tok.kind == "op" and self.tok.text in ("^", "**"):
            raise self.error("chained exponents are ambiguous; use parentheses")
        return base ** int(tok.text)

    def atom(self) -> Poly:
        tok = self.tok
        n = len(self.variables)
        if tok.kind == "num":
            self.advance()
            return Poly.constant(int(tok.text), n)
        if tok.kind == "name":
            self.advance()
            if tok.text in self.variables:
                return Poly.var(self.variables.index(tok.text), n)
            if tok.text in self.bindings:
                return Poly.constant(self.bindings[tok.text], n)
            raise self.error(f"unbound identifier {tok.text!r}", tok)
        if tok.kind == "op" and tok.text == "(":
            self.depth += 1
            self.advance()
            inner = self.expr()
            if self.tok.kind != "op" or self.tok.text != ")":
                raise self.error("expected ')'")
            self.depth -= 1
            self.advance()
            return inner
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def parse_expression(
    text: str,
    bindings: dict[str, Fraction] | None = None,
    variables: tuple[str, ...] = LOCAL_VARIABLES,
) -> Poly:
    parser = _Parser(tokenize(text), variables, _check_bindings(bindings or {}, variables))
    while parser.tok.kind == "sep":
        parser.i += 1
    result = parser.expr()
    while parser.tok.kind == "sep":
        parser.i += 1
    if parser.tok.kind != "end":
        raise parser.error(f"unexpected {parser.tok.text!r}")
    return result


def _check_bindings(bindings: dict[str, Fraction], variables: tuple[str, ...]) -> dict[str, Fraction]:
    for name in bindings:
        if name in variables:
            raise ValueError(f"parameter {name!r} shadows a variable")
    return {k: Fraction(v) for k, v in bindings.items()}


@dataclass
class InputSpec:
    kind: str
    exprs: dict[str, Poly]
    bindings: dict[str, Fraction] = field(default_factory=dict)


_KINDS = {frozenset("PQ"): ("local", LOCAL_VARIABLES), frozenset("ABC"): ("projective", PROJECTIVE_VARIABLES)}


def _statements(text: str) -> list[tuple[Token, str]]:
    """Split into (name token, expression source) pairs, keeping positions."""
    tokens = tokenize(text)
    out = []
    lines = text.split("\n")
    i = 0
    while tokens[i].kind != "end":
        tok = tokens[i]
        if tok.kind == "sep":
            i += 1
            continue
        if tok.kind != "name" or tokens[i + 1].text != "=":
            raise ParseError("expected 'NAME = expression'", tok.line, tok.col)
        eq = tokens[i + 1]
        j = i + 2
        depth = 0
        while tokens[j].kind != "end" and not (tokens[j].kind == "sep" and depth == 0):
            if tokens[j].text == "(":
                depth += 1
            elif tokens[j].text == ")":
                depth -= 1
            j += 1
        # re-slice the source so error positions stay file-relative
        start_line, start_col = eq.line, eq.col + 1
        end = tokens[j]
        src_lines = lines[start_line - 1 : end.line]
        if end.line == start_line:
            src_lines = [src_lines[0][: end.col - 1]]
        else:
            src_lines[-1] = src_lines[-1][: end.col - 1]
        src_lines[0] = " " * (start_col - 1) + src_lines[0][start_col - 1 :]
        source = "\n" * (start_line - 1) + "\n".join(src_lines)
        out.append((tok, source))
        i = j
    return out


def parse_input(text: str, bindings: dict[str, Fraction] | None = None) -> InputSpec:
    statements = _statements(text)
    names = [tok.text for tok, _ in statements]
    for k, (tok, _) in enumerate(statements):
        if tok.text in names[:k]:
            raise ParseError(f"{tok.text} assigned twice", tok.line, tok.col)
    key = frozenset(names)
    if key not in _KINDS:
        where = statements[0][0] if statements else Token("end", "", 1, 1)
        raise ParseError(
            "expected assignments to P and Q (local germ) or A, B and C (projective form)",
            where.line,
            where.col,
        )
    kind, variables = _KINDS[key]
    bindings = _check_bindings(bindings or {}, variables)
    exprs = {tok.text: parse_expression(src, bindings, variables) for tok, src in statements}
    return InputSpec(kind, exprs, bindings)


def parse_points(text: str) -> list[tuple[Fraction, Fraction, Fraction]]:
    """One point per line as ``x:y:z``, optionally in brackets; ``#`` comments."""
    points = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        inner = line.removeprefix("[").removesuffix("]")
        parts = inner.split(":")
        if len(parts) != 3:
            raise ParseError("expected a point 'x:y:z'", n, 1)
        try:
            point = tuple(parse_rational(p) for p in parts)
        except ValueError as exc:
            raise ParseError(str(exc), n, 1) from None
        if not any(point):
            raise ParseError("[0:0:0] is not a point", n, 1)
        points.append(point)
    return points
