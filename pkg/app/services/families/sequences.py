"""
Closed-form sequence families.

Polynomial families are evaluated from their binomial / Stirling / Eulerian sums,
independently of the recursive-matrix construction, so the two can be compared.
"""
import math
from functools import lru_cache

from app.errors import InvalidParams
from app.services.families.base import BaseSequenceFamily, NumericFamily
from app.services.families.tables import (
    bell_number,
    binomial,
    catalan_number,
    eulerian,
    narayana_number,
    stirling2,
)
from app.services.qpoly import QPoly


def _poly(coeffs) -> QPoly:
    return QPoly(tuple(coeffs))


# ============================================================================
# Polynomial families
# ============================================================================

class BellPolynomials(BaseSequenceFamily):
    """B_n(q) = sum_k S(n,k) q^k."""

    name = "bell_poly"

    def term(self, n: int) -> QPoly:
        return _poly(stirling2(n, k) for k in range(n + 1))


class EulerianPolynomials(BaseSequenceFamily):
    """A_0 = 1 and A_n(q) = sum_k E(n,k) q^(k+1) for n >= 1.

    The q^(k+1) offset matches the first column of the recursive matrix with
    s_0 = q, so A_1(q) = q.
    """

    name = "eulerian_poly"

    def term(self, n: int) -> QPoly:
        if n == 0:
            return QPoly.one()
        return _poly([0] + [eulerian(n, k) for k in range(n)])


class QSchroder(BaseSequenceFamily):
    name = "q_schroder"

    def term(self, n: int) -> QPoly:
        return _poly(binomial(n + k, n - k) * catalan_number(k) for k in range(n + 1))


class QDelannoy(BaseSequenceFamily):
    name = "q_delannoy"

    def term(self, n: int) -> QPoly:
        return _poly(binomial(n + k, n - k) * binomial(2 * k, k) for k in range(n + 1))


class NarayanaPolynomials(BaseSequenceFamily):
    """N_n(q) = sum_{k>=1} N(n,k) q^k, with N_0 = 1."""

    name = "narayana"

    def term(self, n: int) -> QPoly:
        return _poly(narayana_number(n, k) for k in range(n + 1))


class NarayanaB(BaseSequenceFamily):
    """Type B Narayana polynomials W_n(q) = sum_k C(n,k)^2 q^k."""

    name = "narayana_B"

    def term(self, n: int) -> QPoly:
        return _poly(binomial(n, k) ** 2 for k in range(n + 1))


class MorganVoyce(BaseSequenceFamily):
    name = "morgan_voyce"

    def term(self, n: int) -> QPoly:
        return _poly(binomial(n + k, n - k) for k in range(n + 1))


class AperyGeneral(BaseSequenceFamily):
    """A_n(r,s;q) = sum_k C(n,k)^r C(n+k,k)^s q^k for positive integers r, s.

    (r, s) = (2, 2) gives the Apery numbers A_n at q = 1, (2, 1) gives B_n and
    (1, 1) coincides with q_delannoy.
    """

    name = "apery_general"
    param_names = ("r", "s")

    def __init__(self, **params: int):
        super().__init__(**params)
        self.r = params.get("r", 2)
        self.s = params.get("s", 2)
        for label, value in (("r", self.r), ("s", self.s)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidParams(f"apery_general: {label} must be a positive integer, got {value!r}")

    def term(self, n: int) -> QPoly:
        return _poly(binomial(n, k) ** self.r * binomial(n + k, k) ** self.s for k in range(n + 1))


class BinomialPowers(BaseSequenceFamily):
    """((1+q)^n)_n."""

    name = "binomial_powers"

    def term(self, n: int) -> QPoly:
        return _poly(binomial(n, k) for k in range(n + 1))


# ============================================================================
# Numeric families
# ============================================================================

class Catalan(NumericFamily):
    name = "catalan"

    def value(self, n: int) -> int:
        return catalan_number(n)


class CentralBinomial(NumericFamily):
    name = "central_binomial"

    def value(self, n: int) -> int:
        return binomial(2 * n, n)


class BellNumbers(NumericFamily):
    """Bell numbers read off the Bell triangle (independent of Stirling sums)."""

    name = "bell_numbers"

    def value(self, n: int) -> int:
        return bell_number(n)


class Factorial(NumericFamily):
    name = "factorial"

    def value(self, n: int) -> int:
        return math.factorial(n)


class LargeSchroder(NumericFamily):
    """r_n = sum_k C(n,k) C(n+k,k) / (k+1)."""

    name = "schroder"

    def value(self, n: int) -> int:
        total = 0
        for k in range(n + 1):
            total += binomial(n, k) * binomial(n + k, k) // (k + 1)
        return total


class CentralDelannoy(NumericFamily):
    """D_n = sum_k C(n,k) C(n+k,k)."""

    name = "delannoy"

    def value(self, n: int) -> int:
        return sum(binomial(n, k) * binomial(n + k, k) for k in range(n + 1))


@lru_cache(maxsize=None)
def _fibonacci_pair(n: int) -> tuple[int, int]:
    """(F_n, F_{n+1}) by fast doubling."""
    if n == 0:
        return 0, 1
    a, b = _fibonacci_pair(n // 2)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n % 2:
        return d, c + d
    return c, d


class FibonacciOdd(NumericFamily):
    """F_{2n+1}: 1, 2, 5, 13, 34, ..."""

    name = "fibonacci_odd"

    def value(self, n: int) -> int:
        return _fibonacci_pair(2 * n + 1)[0]


SEQUENCE_FAMILIES: tuple[type[BaseSequenceFamily], ...] = (
    BellPolynomials,
    EulerianPolynomials,
    QSchroder,
    QDelannoy,
    NarayanaPolynomials,
    NarayanaB,
    MorganVoyce,
    AperyGeneral,
    BinomialPowers,
    Catalan,
    CentralBinomial,
    BellNumbers,
    Factorial,
    LargeSchroder,
    CentralDelannoy,
    FibonacciOdd,
)
