"""
Lower triangular matrices used by transforms and convolutions.

Each triangle's row generating polynomials form a pointwise SM sequence, which
is what makes its transform and convolution SM-preserving.
"""
from app.errors import InsufficientTerms
from app.services.families.base import BaseTriangle
from app.services.families.tables import binomial, eulerian, narayana_number, stirling2
from app.services.qpoly import QPoly


class PascalTriangle(BaseTriangle):
    name = "pascal"

    def value(self, n: int, k: int) -> QPoly:
        return QPoly.constant(binomial(n, k))


class Stirling2Triangle(BaseTriangle):
    name = "stirling2"

    def value(self, n: int, k: int) -> QPoly:
        return QPoly.constant(stirling2(n, k))


class EulerianTriangle(BaseTriangle):
    """a_{n,k} = E(n,k-1) with a_{0,0} = 1; row polynomials are the Eulerian polynomials."""

    name = "eulerian_A"

    def value(self, n: int, k: int) -> QPoly:
        if n == 0:
            return QPoly.one()
        return QPoly.constant(eulerian(n, k - 1))


class NarayanaTriangle(BaseTriangle):
    name = "narayana_T"

    def value(self, n: int, k: int) -> QPoly:
        return QPoly.constant(narayana_number(n, k))


class NarayanaBTriangle(BaseTriangle):
    name = "narayana_B_T"

    def value(self, n: int, k: int) -> QPoly:
        return QPoly.constant(binomial(n, k) ** 2)


class ShiftedBinomialTriangle(BaseTriangle):
    """a_{n,k} = C(n+k, n-k)."""

    name = "shifted_binomial"

    def value(self, n: int, k: int) -> QPoly:
        return QPoly.constant(binomial(n + k, n - k))


class LiteralTriangle(BaseTriangle):
    """A finite triangle ingested from data; rows beyond the data are rejected."""

    def __init__(self, name: str, rows: list[list[QPoly]]):
        self._name = name
        self._rows = [list(r) for r in rows]

    @property
    def name(self) -> str:
        return self._name

    def value(self, n: int, k: int) -> QPoly:
        if n >= len(self._rows):
            raise InsufficientTerms(
                f"Triangle {self._name} has {len(self._rows)} rows, row {n} requested"
            )
        row = self._rows[n]
        return row[k] if k < len(row) else QPoly.zero()


TRIANGLES: tuple[type[BaseTriangle], ...] = (
    PascalTriangle,
    Stirling2Triangle,
    EulerianTriangle,
    NarayanaTriangle,
    NarayanaBTriangle,
    ShiftedBinomialTriangle,
)
