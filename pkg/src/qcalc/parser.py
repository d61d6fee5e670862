"""Parser and printer for the .alg structure-equation format.

A document is line-oriented:

    algebra NAME dim N [param IDENT]
    d e1 = 0
    d e5 = 2(e12 + e34) - e46
    qc horizontal 1 2 3 4 vertical 5 6 7 scale 2
    omega1 = e12 + e34
    flag = e1 | e1, e4 | ...

Digit monomials e12 mean e^1 wedge e^2 (dimension is capped at 9 so single
digits are unambiguous); e1^e2 is always accepted.  '#' starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError
from .exterior import MAX_DIM, Flag, Form, LieAlgebra, Vec
from .qc import QCFrame
from .scalars import Poly, Scalar, is_zero, scalar_str, variable

_TOKEN_RE = re.compile(r"\d+|[A-Za-z_][A-Za-z0-9_]*|[-+*/^()=,|]|\S")
_MONO_RE = re.compile(r"^e([1-9][0-9]*)$")


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER | IDENT | SYM | END
    text: str
    line: int
    col: int


def _tokenize_line(text: str, lineno: int) -> list[Token]:
    out = []
    for m in _TOKEN_RE.finditer(text):
        t = m.group(0)
        if t == "#":
            break
        col = m.start() + 1
        if t.isdigit():
            out.append(Token("NUMBER", t, lineno, col))
        elif re.match(r"^[A-Za-z_]", t):
            out.append(Token("IDENT", t, lineno, col))
        elif t in "-+*/^()=,|":
            out.append(Token("SYM", t, lineno, col))
        else:
            raise ParseError(f"unexpected character {t!r}", lineno, col)
    out.append(Token("END", "", lineno, len(text) + 1))
    return out


@dataclass
class QCBlock:
    horizontal: tuple[int, int, int, int]
    vertical: tuple[int, int, int]
    scale: Fraction
    omegas: dict[int, Form] = field(default_factory=dict)


@dataclass
class AlgebraDocument:
    name: str
    dim: int
    param: str | None
    differentials: dict[int, Form]
    qc: QCBlock | None = None
    flag_levels: list[list[Form]] | None = None

    def to_algebra(self) -> LieAlgebra:
        diffs = tuple(self.differentials[k] for k in range(1, self.dim + 1))
        return LieAlgebra(self.name, self.dim, diffs, self.param)

    def to_frame(self) -> QCFrame | None:
        if self.qc is None:
            return None
        b = self.qc
        return QCFrame(
            self.dim,
            b.horizontal,
            b.vertical,
            tuple(Form.covector(self.dim, v) for v in b.vertical),
            tuple(Vec.basis(self.dim, v) for v in b.vertical),
            (b.omegas[1], b.omegas[2], b.omegas[3]),
            b.scale,
        )

    def to_flag(self) -> Flag | None:
        if self.flag_levels is None:
            return None
        levels = []
        for level in self.flag_levels:
            rows = tuple(
                tuple(f.coeff((j,)) for j in range(1, self.dim + 1)) for f in level
            )
            levels.append(rows)
        return Flag(self.dim, tuple(levels))


class _LineParser:
    """Recursive-descent expression parser over one line's tokens."""

    def __init__(self, tokens: list[Token], dim: int, param: str | None):
        self.toks = tokens
        self.pos = 0
        self.dim = dim
        self.param = param

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "END":
            self.pos += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.peek()
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind.lower()
            raise ParseError(f"expected {want}, found {t.text or 'end of line'}", t.line, t.col)
        return self.next()

    def at_sym(self, *texts: str) -> bool:
        t = self.peek()
        return t.kind == "SYM" and t.text in texts

    def done(self) -> bool:
        return self.peek().kind == "END"

    def expect_end(self) -> None:
        t = self.peek()
        if t.kind != "END":
            raise ParseError(f"unexpected trailing {t.text!r}", t.line, t.col)

    # values are Scalars or Forms; combination rules live in the helpers below

    def expression(self):
        t = self.peek()
        negate = False
        if self.at_sym("-"):
            self.next()
            negate = True
        elif self.at_sym("+"):
            self.next()
        value = self.term()
        if negate:
            value = self._negate(value)
        while self.at_sym("+", "-"):
            op = self.next()
            rhs = self.term()
            if op.text == "-":
                rhs = self._negate(rhs)
            value = self._add(value, rhs, op)
        return value

    def term(self):
        value = self.factor()
        while True:
            if self.at_sym("*"):
                op = self.next()
                value = self._mul(value, self.factor(), op)
            elif self.at_sym("/"):
                op = self.next()
                value = self._div(value, self.factor(), op)
            elif self.peek().kind in ("NUMBER", "IDENT") or self.at_sym("("):
                op = self.peek()
                value = self._mul(value, self.factor(), op)
            else:
                return value

    def factor(self):
        value = self.atom()
        while self.at_sym("^"):
            op = self.next()
            value = self._pow(value, self.atom(), op)
        return value

    def atom(self):
        t = self.peek()
        if t.kind == "NUMBER":
            self.next()
            return Fraction(int(t.text))
        if t.kind == "IDENT":
            self.next()
            m = _MONO_RE.match(t.text)
            if m:
                idx = tuple(int(ch) for ch in m.group(1))
                for i in idx:
                    if i > self.dim:
                        raise ParseError(
                            f"index {i} out of range for dimension {self.dim}",
                            t.line,
                            t.col,
                        )
                return Form.monomial(self.dim, Fraction(1), idx)
            if self.param is not None and t.text == self.param:
                return variable(self.param)
            raise ParseError(f"unknown identifier {t.text!r}", t.line, t.col)
        if self.at_sym("("):
            self.next()
            value = self.expression()
            self.expect("SYM", ")")
            return value
        raise ParseError(f"expected a value, found {t.text or 'end of line'}", t.line, t.col)

    @staticmethod
    def _is_form(v) -> bool:
        return isinstance(v, Form)

    def _negate(self, v):
        return -v

    def _add(self, a, b, tok: Token):
        if self._is_form(a) and self._is_form(b):
            if a.is_zero and a.degree != b.degree:
                return b
            if b.is_zero and a.degree != b.degree:
                return a
            if a.degree != b.degree:
                raise ParseError(
                    f"cannot add a degree-{a.degree} and a degree-{b.degree} form",
                    tok.line,
                    tok.col,
                )
            return a + b
        if self._is_form(a) or self._is_form(b):
            form, scal = (a, b) if self._is_form(a) else (b, a)
            if is_zero(scal):
                return form
            raise ParseError("cannot add a scalar and a form", tok.line, tok.col)
        return a + b

    def _mul(self, a, b, tok: Token):
        if self._is_form(a) and self._is_form(b):
            return a.wedge(b)
        if self._is_form(b):
            return a * b  # scalar * form
        if self._is_form(a):
            return b * a
        return a * b

    def _div(self, a, b, tok: Token):
        if self._is_form(b) or isinstance(b, Poly):
            raise ParseError("can only divide by a rational", tok.line, tok.col)
        if b == 0:
            raise ParseError("division by zero", tok.line, tok.col)
        return a / b

    def _pow(self, a, b, tok: Token):
        if self._is_form(a) and self._is_form(b):
            return a.wedge(b)
        if not self._is_form(a) and isinstance(b, Fraction) and b.denominator == 1 and b >= 0:
            out: Scalar = Fraction(1)
            for _ in range(int(b)):
                out = out * a
            return out
        raise ParseError("'^' joins two forms or raises a scalar to an integer", tok.line, tok.col)

    def form_expression(self, degree: int, what: str) -> Form:
        value = self.expression()
        if not self._is_form(value):
            if is_zero(value):
                return Form.zero(self.dim, degree)
            raise ParseError(
                f"{what} must be a degree-{degree} form", self.peek().line, 1
            )
        if value.is_zero and value.degree != degree:
            return Form.zero(self.dim, degree)
        if value.degree != degree:
            raise ParseError(
                f"{what} must be a degree-{degree} form, got degree {value.degree}",
                self.peek().line,
                1,
            )
        return value

    def rational(self) -> Fraction:
        neg = False
        if self.at_sym("-"):
            self.next()
            neg = True
        t = self.expect("NUMBER")
        val = Fraction(int(t.text))
        if self.at_sym("/"):
            self.next()
            den = self.expect("NUMBER")
            if int(den.text) == 0:
                raise ParseError("division by zero", den.line, den.col)
            val = val / int(den.text)
        return -val if neg else val

    def index(self) -> int:
        t = self.expect("NUMBER")
        i = int(t.text)
        if not 1 <= i <= self.dim:
            raise ParseError(f"index {i} out of range for dimension {self.dim}", t.line, t.col)
        return i


def parse(text: str) -> AlgebraDocument:
    """Parse a full .alg document."""
    lines = text.splitlines()
    doc: AlgebraDocument | None = None
    last_line = 1
    for lineno, raw in enumerate(lines, start=1):
        tokens = _tokenize_line(raw, lineno)
        if tokens[0].kind == "END":
            continue
        last_line = lineno
        if doc is None:
            doc = _parse_header(tokens)
            continue
        head = tokens[0]
        p = _LineParser(tokens, doc.dim, doc.param)
        if head.kind == "IDENT" and head.text == "d":
            _parse_differential(p, doc)
        elif head.kind == "IDENT" and head.text == "qc":
            _parse_qc(p, doc)
        elif head.kind == "IDENT" and re.match(r"^omega[123]$", head.text):
            _parse_omega(p, doc)
        elif head.kind == "IDENT" and head.text == "flag":
            _parse_flag(p, doc)
        else:
            raise ParseError(
                f"expected 'd', 'qc', 'omegaN' or 'flag', found {head.text!r}",
                head.line,
                head.col,
            )
    if doc is None:
        raise ParseError("empty document", last_line, 1)
    for k in range(1, doc.dim + 1):
        if k not in doc.differentials:
            raise ParseError(f"missing differential for e{k}", last_line, 1)
    if doc.qc is not None:
        for r in (1, 2, 3):
            if r not in doc.qc.omegas:
                raise ParseError(f"qc block lacks omega{r}", last_line, 1)
    return doc


def _parse_header(tokens: list[Token]) -> AlgebraDocument:
    p = _LineParser(tokens, MAX_DIM, None)
    p.expect("IDENT", "algebra")
    name = p.expect("IDENT").text
    p.expect("IDENT", "dim")
    t = p.expect("NUMBER")
    dim = int(t.text)
    if not 1 <= dim <= MAX_DIM:
        raise ParseError(f"dimension {dim} outside 1..{MAX_DIM}", t.line, t.col)
    param = None
    if p.peek().kind == "IDENT" and p.peek().text == "param":
        p.next()
        param = p.expect("IDENT").text
    p.expect_end()
    return AlgebraDocument(name, dim, param, {})


def _parse_differential(p: _LineParser, doc: AlgebraDocument) -> None:
    p.expect("IDENT", "d")
    t = p.expect("IDENT")
    m = re.match(r"^e([1-9])$", t.text)
    if not m or int(m.group(1)) > doc.dim:
        raise ParseError(f"expected a covector e1..e{doc.dim}", t.line, t.col)
    k = int(m.group(1))
    if k in doc.differentials:
        raise ParseError(f"duplicate differential for e{k}", t.line, t.col)
    p.expect("SYM", "=")
    form = p.form_expression(2, f"d e{k}")
    p.expect_end()
    doc.differentials[k] = form


def _parse_qc(p: _LineParser, doc: AlgebraDocument) -> None:
    head = p.expect("IDENT", "qc")
    if doc.qc is not None:
        raise ParseError("duplicate qc block", head.line, head.col)
    if doc.dim != 7:
        raise ParseError("qc block requires dimension 7", head.line, head.col)
    p.expect("IDENT", "horizontal")
    horizontal = tuple(p.index() for _ in range(4))
    p.expect("IDENT", "vertical")
    vertical = tuple(p.index() for _ in range(3))
    used = horizontal + vertical
    if len(set(used)) != 7:
        raise ParseError("horizontal and vertical indices must cover 7 distinct basis directions", head.line, head.col)
    scale = Fraction(2)
    if not p.done():
        p.expect("IDENT", "scale")
        scale = p.rational()
    p.expect_end()
    doc.qc = QCBlock(horizontal, vertical, scale)


def _parse_omega(p: _LineParser, doc: AlgebraDocument) -> None:
    t = p.expect("IDENT")
    r = int(t.text[-1])
    if doc.qc is None:
        raise ParseError("omega lines must follow the qc line", t.line, t.col)
    if r in doc.qc.omegas:
        raise ParseError(f"duplicate omega{r}", t.line, t.col)
    p.expect("SYM", "=")
    form = p.form_expression(2, f"omega{r}")
    p.expect_end()
    doc.qc.omegas[r] = form


def _parse_flag(p: _LineParser, doc: AlgebraDocument) -> None:
    t = p.expect("IDENT", "flag")
    if doc.flag_levels is not None:
        raise ParseError("duplicate flag block", t.line, t.col)
    p.expect("SYM", "=")
    levels: list[list[Form]] = []
    while True:
        level = [p.form_expression(1, "flag covector")]
        while p.at_sym(","):
            p.next()
            level.append(p.form_expression(1, "flag covector"))
        levels.append(level)
        if p.at_sym("|"):
            p.next()
            continue
        break
    p.expect_end()
    if len(levels) != doc.dim:
        raise ParseError(
            f"flag must list {doc.dim} levels, got {len(levels)}", t.line, t.col
        )
    for i, level in enumerate(levels, start=1):
        if len(level) != i:
            raise ParseError(
                f"flag level {i} must list {i} covectors, got {len(level)}", t.line, t.col
            )
    doc.flag_levels = levels


# ---------------------------------------------------------------------------
# printing


def _coeff_text(c: Scalar) -> tuple[str, str]:
    """(sign, body) for one monomial coefficient."""
    if isinstance(c, Poly):
        return "+", f"({scalar_str(c)})"
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if a == 1:
        return sign, ""
    if a.denominator == 1:
        return sign, str(a)
    return sign, f"({a})"


def form_text(f: Form) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for key, c in f.terms.items():
        sign, body = _coeff_text(c)
        mono = "e" + "".join(str(i) for i in key)
        parts.append((sign, f"{body}{mono}" if body else mono))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def print_document(doc: AlgebraDocument) -> str:
    lines = [f"algebra {doc.name} dim {doc.dim}" + (f" param {doc.param}" if doc.param else "")]
    for k in range(1, doc.dim + 1):
        lines.append(f"d e{k} = {form_text(doc.differentials[k])}")
    if doc.qc is not None:
        b = doc.qc
        h = " ".join(str(i) for i in b.horizontal)
        v = " ".join(str(i) for i in b.vertical)
        lines.append(f"qc horizontal {h} vertical {v} scale {b.scale}")
        for r in (1, 2, 3):
            lines.append(f"omega{r} = {form_text(b.omegas[r])}")
    if doc.flag_levels is not None:
        levels = " | ".join(
            ", ".join(form_text(f) for f in level) for level in doc.flag_levels
        )
        lines.append(f"flag = {levels}")
    return "\n".join(lines) + "\n"
