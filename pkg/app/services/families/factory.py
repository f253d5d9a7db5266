from app.errors import InvalidParams, UnknownFamily, UnknownTriangle
from app.models.input_schemas import FamilyKind, SeqSpec, TriangleSpec
from app.services.families.base import BaseSequenceFamily, BaseTriangle, LiteralFamily
from app.services.families.sequences import SEQUENCE_FAMILIES
from app.services.families.triangles import TRIANGLES, LiteralTriangle
from app.services.matrices import ExactMatrix
from app.services.qpoly import ExactRational, QPoly, as_qpolys, normalize_rational, parse_rational
from app.services.recursive.presets import get_preset
from app.services.recursive.recursive_matrix import catalan_like


class SequenceFactory:
    """Factory for creating sequence family instances."""

    _families: dict[str, type[BaseSequenceFamily]] = {cls.name: cls for cls in SEQUENCE_FAMILIES}

    @classmethod
    def get_family(cls, name: str, **params: int) -> BaseSequenceFamily:
        """
        Get a family instance.

        Args:
            name: Registered family name
            **params: Family parameters (e.g. r, s for apery_general)

        Returns:
            An instance of the requested family
        """
        if name not in cls._families:
            raise UnknownFamily(f"Unknown family: {name}. Available: {', '.join(cls.available_families())}")
        return cls._families[name](**params)

    @classmethod
    def available_families(cls) -> list[str]:
        return list(cls._families.keys())


class TriangleFactory:
    """Factory for creating triangle instances."""

    _triangles: dict[str, type[BaseTriangle]] = {cls.name: cls for cls in TRIANGLES}

    @classmethod
    def get_triangle(cls, name: str) -> BaseTriangle:
        if name not in cls._triangles:
            raise UnknownTriangle(f"Unknown triangle: {name}. Available: {', '.join(cls.available_triangles())}")
        return cls._triangles[name]()

    @classmethod
    def available_triangles(cls) -> list[str]:
        return list(cls._triangles.keys())


def _literal_terms(spec: SeqSpec) -> list[QPoly]:
    return [QPoly.from_json(t) for t in spec.terms or []]


def resolve_family(spec: SeqSpec) -> BaseSequenceFamily:
    if spec.kind == FamilyKind.LITERAL:
        return LiteralFamily(spec.name, _literal_terms(spec))
    return SequenceFactory.get_family(spec.name, **spec.params)


def gen_sequence(spec: SeqSpec, count: int) -> list[QPoly]:
    """a_0(q) .. a_{count-1}(q) for a closed-form, literal or recursive-preset spec."""
    if count < 1:
        raise InvalidParams(f"Term count must be positive, got {count}")
    if spec.kind == FamilyKind.RECURSIVE_MATRIX_REF:
        return catalan_like(get_preset(spec.name).spec, count)
    return resolve_family(spec).terms(count)


def resolve_triangle(spec: TriangleSpec) -> BaseTriangle:
    if spec.rows is not None:
        return LiteralTriangle(spec.name, [[QPoly.from_json(e) for e in row] for row in spec.rows])
    return TriangleFactory.get_triangle(spec.name)


def gen_triangle(spec: TriangleSpec, rows: int) -> ExactMatrix:
    if rows < 1:
        raise InvalidParams(f"Row count must be positive, got {rows}")
    return resolve_triangle(spec).matrix(rows)


def specialize(seq: list, x) -> list[ExactRational]:
    """Evaluate every term at q = x."""
    x = normalize_rational(parse_rational(x))
    return [p.evaluate(x) for p in as_qpolys(seq)]
