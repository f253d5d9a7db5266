"""
Ingestion of sequence, triangle and recursive-spec JSON files.
"""
from pathlib import Path
from typing import TypeVar

import orjson
from pydantic import BaseModel, ValidationError

from app.errors import InvalidInputFile, InvalidParams
from app.logging_config import get_logger
from app.models.input_schemas import (
    AffineGenerator,
    GeneratorLiteral,
    RecursiveSpecFile,
    SequenceFile,
    TriangleFile,
)
from app.services.qpoly import QPoly
from app.services.recursive.recursive_matrix import Generator, IndexPolynomial, ListedGenerator, RecursiveSpec

logger = get_logger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def _load(path: str | Path, model: type[ModelT]) -> ModelT:
    path = Path(path)
    try:
        raw = orjson.loads(path.read_bytes())
    except FileNotFoundError as exc:
        raise InvalidInputFile(f"File not found: {path}") from exc
    except orjson.JSONDecodeError as exc:
        raise InvalidInputFile(f"{path} is not valid JSON: {exc}") from exc
    try:
        parsed = model.model_validate(raw)
    except (ValidationError, InvalidParams) as exc:
        raise InvalidInputFile(f"{path} does not match the {model.__name__} schema: {exc}") from exc
    logger.debug(f"Loaded {model.__name__} from {path}")
    return parsed


def load_sequence_file(path: str | Path) -> SequenceFile:
    """{"name": str, "terms": [coeff-array | integer, ...]}; terms must be q-nonnegative."""
    return _load(path, SequenceFile)


def load_triangle_file(path: str | Path) -> TriangleFile:
    return _load(path, TriangleFile)


def load_recursive_file(path: str | Path) -> RecursiveSpecFile:
    return _load(path, RecursiveSpecFile)


def _generator(data: GeneratorLiteral, first_index: int) -> Generator:
    if isinstance(data, AffineGenerator):
        return IndexPolynomial.affine(QPoly.from_json(data.affine.a), QPoly.from_json(data.affine.b))
    return ListedGenerator(tuple(QPoly.from_json(v) for v in data), first_index)


def spec_from_file(data: RecursiveSpecFile) -> RecursiveSpec:
    """sigma lists s_0, s_1, ...; tau lists t_1, t_2, ..."""
    return RecursiveSpec(
        name=data.name,
        sigma=_generator(data.sigma, 0),
        tau=_generator(data.tau, 1),
    )
