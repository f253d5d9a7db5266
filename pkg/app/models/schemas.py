from pydantic import BaseModel, Field, model_validator
from typing import Optional, Dict, List, Union
from enum import Enum

from app.config import Settings, get_settings
from app.models.input_schemas import RecursiveSpecFile, SequenceFile, TriangleFile

# Coefficients serialize as int64-range integers or decimal / "p/q" strings.
Coeff = Union[int, str]
CoeffArray = List[Coeff]


# ============================================================================
# Enums
# ============================================================================

class PropertyName(str, Enum):
    TP2 = "TP2"
    TP = "TP"
    POS_DEF = "PosDef"
    SM = "SM"
    Q_TP = "qTP"
    Q_SM = "qSM"
    PSM = "PSM"
    LOG_CONVEX = "LogConvex"
    M_LOG_CONVEX = "mLogConvex"
    STRONG_Q_LOG_CONVEX = "StrongQLogConvex"
    LOG_CONCAVE = "LogConcave"
    PF = "PF"


class CertificateResult(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class Command(str, Enum):
    GENERATE = "generate"
    CHECK = "check"
    ITERATE = "iterate"
    TRANSFORM = "transform"
    CONVOLVE = "convolve"
    EXPLORE = "explore"


class CheckTarget(str, Enum):
    """Property names accepted by ``check --property``."""
    TP2 = "tp2"
    TP = "tp"
    POS_DEF = "pos-def"
    SM = "sm"
    Q_SM = "q-sm"
    PSM = "psm"
    LOG_CONVEX = "log-convex"
    LOG_CONCAVE = "log-concave"
    PF = "pf"
    Q_SLCX = "q-slcx"
    M_LOG_CONVEX = "m-log-convex"
    JACOBI = "jacobi"
    TRANSFORM_HYPOTHESIS = "transform-hypothesis"


class IterOperator(str, Enum):
    LOGCONVEX = "logconvex"
    LOGCONCAVE = "logconcave"


class FactorCombo(str, Enum):
    """Factor order and role assignment of a bidiagonal factorization.

    U(x) is upper bidiagonal with x_k on the diagonal and 1 above it;
    L(x) is unit lower bidiagonal with x_k below the diagonal.
    """
    UPPER_B_LOWER_C = "upper_b_lower_c"
    UPPER_C_LOWER_B = "upper_c_lower_b"
    LOWER_B_UPPER_C = "lower_b_upper_c"
    LOWER_C_UPPER_B = "lower_c_upper_b"


class CheckMethod(str, Enum):
    LEADING_MINORS = "leading_minors"
    ENUMERATION = "enumeration"
    BIDIAGONAL = "bidiagonal"
    WINDOW = "window"
    ITERATION = "iteration"
    GRID = "grid"


# ============================================================================
# Certificates
# ============================================================================

class Witness(BaseModel):
    """Where a check failed: a minor (rows/cols), a term index, a q-SLCX pair, or a q value."""
    rows: Optional[List[int]] = None
    cols: Optional[List[int]] = None
    value: Optional[CoeffArray] = None
    q: Optional[str] = None
    index: Optional[int] = None
    pair: Optional[List[int]] = None
    level: Optional[int] = None
    # "hankel", "shifted_hankel", "toeplitz", "jacobi" or "matrix"
    matrix: Optional[str] = None


class Certificate(BaseModel):
    property: PropertyName
    matrix_size: int = 0
    minor_order: int = 0
    q_grid: Optional[List[str]] = None
    result: CertificateResult
    witness: Optional[Witness] = None
    statement: str = ""
    indeterminate: bool = False
    method: Optional[CheckMethod] = None
    combo: Optional[FactorCombo] = None
    notes: List[str] = []

    @property
    def passed(self) -> bool:
        return self.result == CertificateResult.PASS


# ============================================================================
# Operator iteration
# ============================================================================

class IterationLevel(BaseModel):
    level: int
    length: int
    terms: List[CoeffArray]
    nonnegative: bool
    positive: bool
    first_failing_index: Optional[int] = None
    truncated: bool = False


class IterationReport(BaseModel):
    operator: str = "logconvex"
    depth: int
    terms: int
    q_mode: bool = False
    strict: bool = False
    levels: List[IterationLevel]
    result: CertificateResult
    statement: str = ""

    @property
    def passed(self) -> bool:
        return self.result == CertificateResult.PASS

    def capped(self, cap: int) -> "IterationReport":
        """Copy with at most ``cap`` terms kept per level."""
        levels = [
            level.model_copy(update={"terms": level.terms[:cap], "truncated": len(level.terms) > cap})
            for level in self.levels
        ]
        return self.model_copy(update={"levels": levels})


# ============================================================================
# Run configuration
# ============================================================================

class Caps(BaseModel):
    max_terms: int = Field(..., ge=1)
    max_depth: int = Field(..., ge=0)
    max_hankel_order: int = Field(..., ge=0)
    max_minor_order: int = Field(..., ge=1)
    max_qtp_matrix_size: int = Field(..., ge=1)

    @classmethod
    def from_settings(cls, settings: Optional[Settings] = None) -> "Caps":
        settings = settings or get_settings()
        return cls(
            max_terms=settings.max_terms,
            max_depth=settings.max_depth,
            max_hankel_order=settings.max_hankel_order,
            max_minor_order=settings.max_minor_order,
            max_qtp_matrix_size=settings.max_qtp_matrix_size,
        )


class RunConfig(BaseModel):
    """Everything needed to reproduce a run; embedded in every report."""
    command: Command
    family: Optional[str] = None
    params: Dict[str, int] = {}
    sequence: Optional[SequenceFile] = None
    recursive: Optional[str] = None
    recursive_spec: Optional[RecursiveSpecFile] = None
    triangle: Optional[str] = None
    triangle_data: Optional[TriangleFile] = None
    y_family: Optional[str] = None
    y_params: Dict[str, int] = {}
    y_sequence: Optional[SequenceFile] = None
    property: Optional[CheckTarget] = None
    n: Optional[int] = Field(default=None, ge=0)
    depth: Optional[int] = Field(default=None, ge=0)
    operator: IterOperator = IterOperator.LOGCONVEX
    max_order: Optional[int] = Field(default=None, ge=1)
    q: Optional[str] = None
    q_grid: Optional[List[str]] = None
    strict: bool = False
    symbolic_q: bool = False
    sm_order: Optional[int] = Field(default=None, ge=0)
    q_sm_order: Optional[int] = Field(default=None, ge=0)
    slcx_prefix: Optional[int] = Field(default=None, ge=2)
    jacobi_size: Optional[int] = Field(default=None, ge=1)
    format: OutputFormat = OutputFormat.JSON
    caps: Caps

    @model_validator(mode="after")
    def _single_source(self):
        sources = [self.family is not None, self.sequence is not None,
                   self.recursive is not None, self.recursive_spec is not None]
        if sum(sources) > 1:
            raise ValueError("give at most one of family, sequence, recursive, recursive_spec")
        return self


# ============================================================================
# Reports
# ============================================================================

class ReportEnvelope(BaseModel):
    config: RunConfig
    tool_version: str


class SequenceReport(ReportEnvelope):
    """Output of generate / transform / convolve."""
    name: str
    q: Optional[str] = None
    terms: List[CoeffArray] = []
    rows: Optional[List[List[CoeffArray]]] = None


class CertificateReport(Certificate, ReportEnvelope):
    pass


class IterationRunReport(IterationReport, ReportEnvelope):
    pass


class ExploreCheck(BaseModel):
    check_id: str
    result: CertificateResult
    certificate: Optional[Certificate] = None
    iteration: Optional[IterationReport] = None
    wall_time_ms: int = 0


class ExploreReport(ReportEnvelope):
    family: str = "apery_general"
    r: int
    s: int
    q: Optional[str] = None
    symbolic: bool = False
    checks: List[ExploreCheck]
    result: CertificateResult
    statement: str = ""
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.result == CertificateResult.PASS
