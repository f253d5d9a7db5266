from pydantic import BaseModel, Field, field_validator, model_validator
from typing import Optional, Dict, List, Union
from enum import Enum

from app.services.qpoly import QPoly

# A coefficient is an integer or a rational / big integer literal string.
Coeff = Union[int, str]
# A term is a coefficient array, or a bare coefficient meaning a constant polynomial.
TermLiteral = Union[List[Coeff], Coeff]


# ============================================================================
# Enums
# ============================================================================

class FamilyKind(str, Enum):
    CLOSED_FORM = "closed_form"
    LITERAL = "literal"
    RECURSIVE_MATRIX_REF = "recursive_matrix_ref"


def _term_to_qpoly(term: TermLiteral) -> QPoly:
    return QPoly.from_json(term)


# ============================================================================
# Sequence and triangle specs
# ============================================================================

class SeqSpec(BaseModel):
    """Names a sequence generator: a closed form, literal values, or a recursive preset."""
    name: str = Field(..., min_length=1)
    kind: FamilyKind = FamilyKind.CLOSED_FORM
    params: Dict[str, int] = {}
    terms: Optional[List[TermLiteral]] = None

    @model_validator(mode="after")
    def _literal_needs_terms(self):
        if self.kind == FamilyKind.LITERAL and self.terms is None:
            raise ValueError("literal sequences need terms")
        return self


class TriangleSpec(BaseModel):
    """Names a lower triangular matrix: a registered triangle or literal rows."""
    name: str = Field(..., min_length=1)
    rows: Optional[List[List[TermLiteral]]] = None


# ============================================================================
# Ingestion files
# ============================================================================

class SequenceFile(BaseModel):
    """{"name": str, "terms": [coeff-array | integer, ...]}"""
    name: str = Field(..., min_length=1)
    terms: List[TermLiteral] = Field(..., min_length=1)

    @field_validator("terms")
    @classmethod
    def _terms_q_nonnegative(cls, terms: List[TermLiteral]) -> List[TermLiteral]:
        for index, term in enumerate(terms):
            if not _term_to_qpoly(term).is_nonneg():
                raise ValueError(f"term {index} is not q-nonnegative: {term!r}")
        return terms

    def to_qpolys(self) -> List[QPoly]:
        return [_term_to_qpoly(t) for t in self.terms]

    def to_spec(self) -> SeqSpec:
        return SeqSpec(name=self.name, kind=FamilyKind.LITERAL, terms=self.terms)


class TriangleFile(BaseModel):
    """{"name": str, "rows": [[entry, ...], ...]} with row n holding n+1 entries."""
    name: str = Field(..., min_length=1)
    rows: List[List[TermLiteral]] = Field(..., min_length=1)

    @field_validator("rows")
    @classmethod
    def _lower_triangular_nonnegative(cls, rows: List[List[TermLiteral]]) -> List[List[TermLiteral]]:
        for n, row in enumerate(rows):
            if len(row) > n + 1 and any(not _term_to_qpoly(e).is_zero for e in row[n + 1:]):
                raise ValueError(f"row {n} has entries above the diagonal")
            for k, entry in enumerate(row):
                if not _term_to_qpoly(entry).is_nonneg():
                    raise ValueError(f"entry ({n}, {k}) is not q-nonnegative: {entry!r}")
        return rows

    def to_spec(self) -> TriangleSpec:
        return TriangleSpec(name=self.name, rows=self.rows)


class AffineTemplate(BaseModel):
    """Generator k -> a + b*k with polynomial a, b."""
    a: TermLiteral = 0
    b: TermLiteral = 0


class AffineGenerator(BaseModel):
    affine: AffineTemplate


GeneratorLiteral = Union[AffineGenerator, List[TermLiteral]]


class RecursiveSpecFile(BaseModel):
    """{"name": str, "sigma": [...] | {"affine": {a, b}}, "tau": same}.

    sigma lists s_0, s_1, ...; tau lists t_1, t_2, ... (tau[0] is t_1).
    """
    name: str = Field(..., min_length=1)
    sigma: GeneratorLiteral
    tau: GeneratorLiteral
