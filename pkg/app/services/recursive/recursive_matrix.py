"""
q-recursive matrices.

A RecursiveSpec carries two generators, sigma: k -> s_k(q) for k >= 0 and
tau: k -> t_k(q) for k >= 1, and defines the lower triangular matrix

    r_{0,0} = 1,  r_{n+1,k} = r_{n,k-1} + s_k r_{n,k} + t_{k+1} r_{n,k+1}.

The first column r_{n,0}(q) holds the q-Catalan-like numbers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from app.errors import InsufficientTerms, InvalidParams
from app.logging_config import get_logger
from app.services.matrices import ExactMatrix, tridiagonal
from app.services.qpoly import QPoly, as_qpoly

logger = get_logger(__name__)

Generator = Callable[[int], QPoly]


# ============================================================================
# Generators
# ============================================================================

@dataclass(frozen=True)
class IndexPolynomial:
    """k -> sum_j coeffs[j] * k^j, with explicit values at chosen indices.

    ``IndexPolynomial((a, b))`` is the affine template a + b*k.
    """

    coeffs: tuple[QPoly, ...] = ()
    overrides: Mapping[int, QPoly] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_qpoly(c) for c in self.coeffs))
        object.__setattr__(self, "overrides", {k: as_qpoly(v) for k, v in dict(self.overrides).items()})

    @classmethod
    def affine(cls, a, b, overrides: Mapping[int, QPoly] | None = None) -> IndexPolynomial:
        return cls((a, b), overrides or {})

    @classmethod
    def constant(cls, value, overrides: Mapping[int, QPoly] | None = None) -> IndexPolynomial:
        return cls((value,), overrides or {})

    def __call__(self, k: int) -> QPoly:
        if k in self.overrides:
            return self.overrides[k]
        acc = QPoly.zero()
        for coeff in reversed(self.coeffs):
            acc = acc * k + coeff
        return acc


@dataclass(frozen=True)
class ListedGenerator:
    """Explicit values starting at ``first_index``."""

    values: tuple[QPoly, ...]
    first_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_qpoly(v) for v in self.values))

    def __call__(self, k: int) -> QPoly:
        pos = k - self.first_index
        if not 0 <= pos < len(self.values):
            raise InsufficientTerms(
                f"Generator defines indices {self.first_index}..{self.first_index + len(self.values) - 1}, "
                f"index {k} requested"
            )
        return self.values[pos]


# ============================================================================
# Specs and matrices
# ============================================================================

@dataclass(frozen=True)
class RecursiveSpec:
    name: str
    sigma: Generator
    tau: Generator

    def s(self, k: int) -> QPoly:
        if k < 0:
            raise InvalidParams(f"s_k is defined for k >= 0, got {k}")
        return as_qpoly(self.sigma(k))

    def t(self, k: int) -> QPoly:
        if k < 1:
            raise InvalidParams(f"t_k is defined for k >= 1, got {k}")
        return as_qpoly(self.tau(k))

    def specialize(self, x) -> RecursiveSpec:
        """The same recurrence with s_k, t_k evaluated at q = x."""
        return RecursiveSpec(
            name=f"{self.name}@{x}",
            sigma=lambda k: QPoly.constant(self.s(k).evaluate(x)),
            tau=lambda k: QPoly.constant(self.t(k).evaluate(x)),
        )


def build_rows(spec: RecursiveSpec, n: int) -> list[list[QPoly]]:
    """Rows 0..n of R(q); row m has m+1 entries."""
    if n < 0:
        raise InvalidParams("Row count must be nonnegative")
    s = [spec.s(k) for k in range(n)]
    t = [spec.t(k) for k in range(1, n)]  # t[k-1] = t_k

    rows: list[list[QPoly]] = [[QPoly.one()]]
    for m in range(n):
        prev = rows[-1]
        row = []
        for k in range(m + 2):
            value = QPoly.zero()
            if k >= 1:
                value = value + prev[k - 1]
            if k <= m:
                value = value + s[k] * prev[k]
            if k + 1 <= m:
                value = value + t[k] * prev[k + 1]
            row.append(value)
        rows.append(row)
    return rows


def build_recursive(spec: RecursiveSpec, n: int) -> ExactMatrix:
    """(n+1)x(n+1) lower triangular matrix [r_{i,k}]."""
    rows = build_rows(spec, n)
    logger.debug("Built recursive matrix", extra={"family": spec.name})
    return ExactMatrix.from_function(
        n + 1, n + 1, lambda i, k: rows[i][k] if k <= i else QPoly.zero()
    )


def catalan_like(spec: RecursiveSpec, count: int) -> list[QPoly]:
    """r_{0,0}, ..., r_{count-1,0}."""
    if count < 1:
        raise InvalidParams("catalan_like needs count >= 1")
    return [row[0] for row in build_rows(spec, count - 1)]


def jacobi_of(spec: RecursiveSpec, size: int) -> ExactMatrix:
    """size x size coefficient matrix: s_k on the diagonal, 1 above, t_k below."""
    if size < 1:
        raise InvalidParams("Jacobi size must be >= 1")
    return tridiagonal(
        [spec.s(k) for k in range(size)],
        [spec.t(k) for k in range(1, size)],
    )
