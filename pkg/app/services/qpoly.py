"""
Exact scalar and polynomial arithmetic.

ExactInteger is Python's ``int`` and ExactRational is ``fractions.Fraction``;
coefficients are normalized so that integral values are stored as ``int``,
which keeps the integer-only workloads of the combinatorial families fast.

QPoly is a dense polynomial in one indeterminate ``q`` with ascending
coefficients. The zero polynomial has an empty coefficient tuple.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from app.errors import InvalidParams, NonExactDivision

ExactRational = Union[int, Fraction]
CoeffJSON = Union[int, str]

_INT64_MIN = -(2 ** 63)
_INT64_MAX = 2 ** 63 - 1


# ============================================================================
# Rationals
# ============================================================================

def normalize_rational(value: Rational | int) -> ExactRational:
    """Return ``value`` as an ``int`` when integral, else as a ``Fraction``."""
    if isinstance(value, bool):
        raise InvalidParams(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        frac = Fraction(value.numerator, value.denominator)
        return frac.numerator if frac.denominator == 1 else frac
    raise InvalidParams(f"Not an exact rational: {value!r}")


def parse_rational(text: str | int | Fraction) -> ExactRational:
    """Parse "p/q", an integer string, or pass an exact value through."""
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return normalize_rational(text)
    if not isinstance(text, str):
        raise InvalidParams(f"Not a rational literal: {text!r}")
    raw = text.strip()
    if "." in raw or "e" in raw.lower():
        raise InvalidParams(f"Floating-point literal not allowed: {text!r}")
    try:
        return normalize_rational(Fraction(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParams(f"Invalid rational literal: {text!r}") from exc


def format_rational(value: ExactRational) -> str:
    value = normalize_rational(value)
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


def rational_to_json(value: ExactRational) -> CoeffJSON:
    """JSON form: a plain integer when it fits in int64, otherwise a string."""
    value = normalize_rational(value)
    if isinstance(value, int) and _INT64_MIN <= value <= _INT64_MAX:
        return value
    return format_rational(value)


def _exact_quotient(a: ExactRational, b: ExactRational) -> ExactRational:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return normalize_rational(Fraction(a) / Fraction(b))


# ============================================================================
# Polynomials
# ============================================================================

def _normalize_coeffs(coeffs: Iterable[Rational | int]) -> tuple[ExactRational, ...]:
    cs = [normalize_rational(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True, slots=True)
class QPoly:
    """Immutable dense polynomial in q with exact rational coefficients."""

    coeffs: tuple[ExactRational, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize_coeffs(self.coeffs))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> QPoly:
        return cls(())

    @classmethod
    def one(cls) -> QPoly:
        return cls((1,))

    @classmethod
    def constant(cls, value: Rational | int) -> QPoly:
        return cls((value,))

    @classmethod
    def q(cls) -> QPoly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, coeff: Rational | int, power: int) -> QPoly:
        if power < 0:
            raise InvalidParams("Monomial power must be nonnegative")
        return cls((0,) * power + (coeff,))

    @classmethod
    def coerce(cls, value: QPoly | Rational | int) -> QPoly:
        if isinstance(value, QPoly):
            return value
        return cls.constant(value)

    @classmethod
    def from_json(cls, data: Sequence[CoeffJSON] | CoeffJSON) -> QPoly:
        """Build from a coefficient array, or from a scalar meaning a constant."""
        if isinstance(data, (list, tuple)):
            return cls(tuple(parse_rational(c) for c in data))
        return cls.constant(parse_rational(data))

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | float:
        """Degree; the zero polynomial reports ``-math.inf``."""
        if not self.coeffs:
            return -math.inf
        return len(self.coeffs) - 1

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def constant_term(self) -> ExactRational:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def leading_coefficient(self) -> ExactRational:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, k: int) -> ExactRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # ------------------------------------------------------------------
    # Ring arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: QPoly | Rational | int) -> QPoly:
        other = QPoly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return QPoly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: QPoly | Rational | int) -> QPoly:
        return self + (-QPoly.coerce(other))

    def __rsub__(self, other: Rational | int) -> QPoly:
        return QPoly.coerce(other) - self

    def __mul__(self, other: QPoly | Rational | int) -> QPoly:
        other = QPoly.coerce(other)
        if self.is_zero or other.is_zero:
            return QPoly.zero()
        a, b = self.coeffs, other.coeffs
        if len(b) == 1:
            c = b[0]
            return QPoly(tuple(x * c for x in a))
        if len(a) == 1:
            c = a[0]
            return QPoly(tuple(c * y for y in b))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return QPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> QPoly:
        if exponent < 0:
            raise InvalidParams("Negative powers are not polynomials")
        result = QPoly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def exact_div(self, divisor: QPoly | Rational | int) -> QPoly:
        """Return r with r * divisor == self, or raise NonExactDivision."""
        divisor = QPoly.coerce(divisor)
        if divisor.is_zero:
            raise NonExactDivision("Division by the zero polynomial")
        if self.is_zero:
            return QPoly.zero()
        d_deg = len(divisor.coeffs) - 1
        p_deg = len(self.coeffs) - 1
        if p_deg < d_deg:
            raise NonExactDivision(f"{self} is not divisible by {divisor}")

        lead = divisor.coeffs[-1]
        if d_deg == 0:
            return QPoly(tuple(_exact_quotient(c, lead) for c in self.coeffs))

        remainder = list(self.coeffs)
        quotient: list[ExactRational] = [0] * (p_deg - d_deg + 1)
        for i in range(p_deg - d_deg, -1, -1):
            top = remainder[i + d_deg]
            if top == 0:
                continue
            factor = _exact_quotient(top, lead)
            quotient[i] = factor
            for j, dc in enumerate(divisor.coeffs):
                remainder[i + j] -= factor * dc
        if any(remainder[:d_deg]):
            raise NonExactDivision(f"{self} is not divisible by {divisor}")
        return QPoly(tuple(quotient))

    # ------------------------------------------------------------------
    # Order and evaluation
    # ------------------------------------------------------------------

    def is_nonneg(self) -> bool:
        """q-nonnegativity: every coefficient is >= 0 (the zero polynomial included)."""
        return all(c >= 0 for c in self.coeffs)

    def geq_q(self, other: QPoly | Rational | int) -> bool:
        return (self - other).is_nonneg()

    def evaluate(self, x: Rational | int) -> ExactRational:
        x = normalize_rational(x)
        acc: ExactRational = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return normalize_rational(acc)

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def to_json(self) -> list[CoeffJSON]:
        return [rational_to_json(c) for c in self.coeffs] or [0]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            coeff = format_rational(c)
            if k == 0:
                parts.append(coeff)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"QPoly({str(self)!r})"


def as_qpoly(value: QPoly | Rational | int) -> QPoly:
    return QPoly.coerce(value)


def as_qpolys(values: Iterable[QPoly | Rational | int]) -> list[QPoly]:
    return [QPoly.coerce(v) for v in values]


# ============================================================================
# Operation-level functions
# ============================================================================

def qpoly_arith(p: QPoly, q: QPoly, op: str) -> QPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise InvalidParams(f"Unknown polynomial operation: {op}")


def qpoly_exact_div(p: QPoly, d: QPoly) -> QPoly:
    return p.exact_div(d)


def qpoly_is_nonneg(p: QPoly) -> bool:
    return p.is_nonneg()


def qpoly_geq_q(f: QPoly, g: QPoly) -> bool:
    return f.geq_q(g)


def qpoly_eval(p: QPoly, x: Rational | int) -> ExactRational:
    return p.evaluate(x)
