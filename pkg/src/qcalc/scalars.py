"""Exact scalar arithmetic: rationals and univariate polynomials over them.

A Scalar is either a ``fractions.Fraction`` or a ``Poly`` in one named
indeterminate with Fraction coefficients.  Arithmetic between the two mixes
freely; a Poly that degenerates to degree 0 collapses back to a Fraction, so
the rest of the package can treat "plain number" and "number depending on a
parameter" uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Union

from .errors import Inconsistent, IndeterminateMismatch, Underdetermined, ZeroPolynomial

Rat = Fraction
Scalar = Union[Fraction, "Poly"]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(p: int | str | Fraction, q: int = 1) -> Fraction:
    """Convenience constructor for exact rationals."""
    return Fraction(p, q) if q != 1 else Fraction(p)


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial, coefficients lowest degree first.

    Construct via the module helpers (``poly``, ``variable``) or arithmetic.
    The coefficient tuple has no trailing zeros and length >= 2: degree-0
    results collapse to Fraction before they escape, so any Poly an outside
    caller sees genuinely depends on its indeterminate.
    """

    var: str
    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __add__(self, other: Scalar | int) -> Scalar:
        if not isinstance(other, (int, Fraction, Poly)):
            return NotImplemented
        other = _coerce(other, self.var)
        n = max(len(self.coeffs), len(other.coeffs))
        return _make(self.var, [self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Scalar | int) -> Scalar:
        if not isinstance(other, (int, Fraction, Poly)):
            return NotImplemented
        return self + (-_coerce(other, self.var))

    def __rsub__(self, other: Scalar | int) -> Scalar:
        if not isinstance(other, (int, Fraction, Poly)):
            return NotImplemented
        return _coerce(other, self.var) + (-self)

    def __mul__(self, other: Scalar | int) -> Scalar:
        if not isinstance(other, (int, Fraction, Poly)):
            return NotImplemented
        other = _coerce(other, self.var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return _make(self.var, out)

    __rmul__ = __mul__

    def __truediv__(self, other: Fraction | int) -> Scalar:
        if isinstance(other, Poly):
            raise TypeError("division by a polynomial is not supported")
        q = Fraction(other)
        return _make(self.var, [c / q for c in self.coeffs])

    def __bool__(self) -> bool:
        return True  # normalized Polys are nonzero by construction

    def substitute(self, value: Fraction) -> Fraction:
        """Evaluate at an exact rational point (Horner)."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self) -> str:
        terms: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                mono = str(c)
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                mono = f"{head}{self.var}" + (f"^{k}" if k > 1 else "")
            if not terms:
                terms.append(mono)
            elif mono.startswith("-"):
                terms.append(f"-{mono[1:]}")
            else:
                terms.append(f"+{mono}")
        return "".join(terms)


def _coerce(x: Scalar | int, var: str) -> Poly:
    if isinstance(x, Poly):
        if x.var != var:
            raise IndeterminateMismatch(f"cannot mix {x.var!r} with {var!r}")
        return x
    return Poly(var, (Fraction(x),))


def _make(var: str, coeffs: list[Fraction]) -> Scalar:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return ZERO
    if len(coeffs) == 1:
        return coeffs[0]
    return Poly(var, tuple(coeffs))


def poly(var: str, *coeffs: int | Fraction) -> Scalar:
    """Polynomial from coefficients, lowest degree first; may collapse."""
    return _make(var, [Fraction(c) for c in coeffs])


def variable(var: str) -> Poly:
    """The monomial ``var`` itself."""
    return Poly(var, (ZERO, ONE))


def is_zero(x: Scalar) -> bool:
    return isinstance(x, Fraction) and x == 0


def substitute(x: Scalar, value: Fraction) -> Fraction:
    """Evaluate a scalar at a parameter value (identity on Fractions)."""
    if isinstance(x, Poly):
        return x.substitute(value)
    return x


def scalar_str(x: Scalar) -> str:
    """Canonical text form: "p/q" for rationals, high-to-low like "3*mu^2+4*mu+1"."""
    return str(x)


def solve_linear(a: Scalar, b: Scalar) -> Fraction:
    """Solve a*x + b = 0 for rational a, b.

    Raises Underdetermined when both vanish and Inconsistent when only a does.
    """
    if not isinstance(a, Fraction) or not isinstance(b, Fraction):
        raise TypeError("solve_linear expects rational coefficients")
    if a == 0:
        if b == 0:
            raise Underdetermined("0 = 0 determines nothing")
        raise Inconsistent(f"{b} = 0 has no solution")
    return -b / a


def linear_coeffs(x: Scalar, var: str) -> tuple[Fraction, Fraction]:
    """Write x as a*var + b, rejecting higher degrees."""
    if isinstance(x, Fraction):
        return ZERO, x
    if x.var != var:
        raise IndeterminateMismatch(f"expected indeterminate {var!r}, got {x.var!r}")
    if x.degree > 1:
        raise ValueError(f"degree {x.degree} > 1 in {x}")
    return x.coeff(1), x.coeff(0)


def rational_roots(p: Poly | list[Fraction]) -> set[Fraction]:
    """All rational roots, by content extraction + root theorem + deflation.

    Accepts a Poly or a raw low-first coefficient list.  Multiplicities are
    discarded.  The zero polynomial is rejected with ZeroPolynomial since
    every value would qualify.
    """
    coeffs = list(p.coeffs) if isinstance(p, Poly) else list(p)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ZeroPolynomial("every value is a root of 0")
    roots: set[Fraction] = set()
    lo = 0
    while coeffs[lo] == 0:
        lo += 1
    if lo > 0:
        roots.add(ZERO)
        coeffs = coeffs[lo:]
    while len(coeffs) > 1:
        ints = _primitive(coeffs)
        r = _find_root(ints)
        if r is None:
            break
        roots.add(r)
        coeffs = _deflate(coeffs, r)
    return roots


def _primitive(coeffs: list[Fraction]) -> list[int]:
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    content = 0
    for v in ints:
        content = gcd(content, v)
    return [v // content for v in ints]


def _find_root(ints: list[int]) -> Fraction | None:
    for p in _divisors(abs(ints[0])):
        for q in _divisors(abs(ints[-1])):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                acc = ZERO
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    return cand
    return None


def _deflate(coeffs: list[Fraction], r: Fraction) -> list[Fraction]:
    """Exact synthetic division of a low-first polynomial by (x - r)."""
    high = list(reversed(coeffs))
    out = [high[0]]
    for c in high[1:-1]:
        out.append(c + r * out[-1])
    return list(reversed(out))


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]
