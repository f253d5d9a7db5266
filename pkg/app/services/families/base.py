from abc import ABC, abstractmethod

from app.errors import InsufficientTerms, InvalidParams
from app.services.matrices import ExactMatrix
from app.services.qpoly import QPoly


class BaseSequenceFamily(ABC):
    """Base class for all sequence generators.

    A family produces its n-th term as a QPoly on demand; numeric families
    return constant polynomials. Generators are deterministic.
    """

    #: parameter names the family accepts, in CLI order
    param_names: tuple[str, ...] = ()

    def __init__(self, **params: int):
        unknown = set(params) - set(self.param_names)
        if unknown:
            raise InvalidParams(f"{self.name} does not take parameters {sorted(unknown)}")
        self.params = params

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the registered family name."""
        pass

    @property
    def is_polynomial(self) -> bool:
        """Whether terms are genuine polynomials in q (False for numeric families)."""
        return True

    @abstractmethod
    def term(self, n: int) -> QPoly:
        """Return a_n."""
        pass

    def terms(self, count: int) -> list[QPoly]:
        if count < 0:
            raise InvalidParams("Term count must be nonnegative")
        return [self.term(n) for n in range(count)]

    def describe(self) -> dict:
        return {"name": self.name, "params": dict(self.params), "polynomial": self.is_polynomial}


class NumericFamily(BaseSequenceFamily):
    """A family of integers, exposed as constant polynomials."""

    @property
    def is_polynomial(self) -> bool:
        return False

    @abstractmethod
    def value(self, n: int) -> int:
        pass

    def term(self, n: int) -> QPoly:
        return QPoly.constant(self.value(n))


class LiteralFamily(BaseSequenceFamily):
    """A finite sequence ingested from data."""

    def __init__(self, name: str, terms: list[QPoly]):
        super().__init__()
        self._name = name
        self._terms = list(terms)

    @property
    def name(self) -> str:
        return self._name

    @property
    def is_polynomial(self) -> bool:
        return any(not t.is_constant for t in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def term(self, n: int) -> QPoly:
        if n >= len(self._terms):
            raise InsufficientTerms(
                f"Literal sequence {self._name} has {len(self._terms)} terms, term {n} requested"
            )
        return self._terms[n]


class BaseTriangle(ABC):
    """Base class for infinite lower triangular matrices [a_{n,k}]."""

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def value(self, n: int, k: int) -> QPoly:
        """a_{n,k} for 0 <= k <= n."""
        pass

    def entry(self, n: int, k: int) -> QPoly:
        if not 0 <= k <= n:
            return QPoly.zero()
        return self.value(n, k)

    def row(self, n: int) -> list[QPoly]:
        return [self.entry(n, k) for k in range(n + 1)]

    def matrix(self, rows: int) -> ExactMatrix:
        return ExactMatrix.from_function(rows, rows, self.entry)

    def row_polynomial(self, n: int) -> QPoly:
        """A_n(q) = sum_k a_{n,k} q^k (entries must be constants)."""
        acc = QPoly.zero()
        for k, entry in enumerate(self.row(n)):
            acc = acc + entry * QPoly.monomial(1, k)
        return acc
