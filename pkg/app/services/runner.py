"""
RunService: executes a RunConfig and returns the report plus exit code.

Every command goes through here, so a report's embedded config re-runs to the
same report (timing fields aside).
"""
from pathlib import Path
from typing import Optional, Union

import orjson
from pydantic import ValidationError

from app.config import get_settings
from app.errors import CapExceeded, InvalidInputFile, InvalidParams, UnknownProperty
from app.logging_config import get_logger
from app.models.input_schemas import FamilyKind, SeqSpec, TriangleSpec
from app.models.schemas import (
    Certificate,
    CertificateReport,
    CertificateResult,
    CheckTarget,
    Command,
    ExploreReport,
    IterationRunReport,
    IterOperator,
    RunConfig,
    SequenceReport,
)
from app.services.explorer import ExploreService
from app.services.families.base import BaseTriangle
from app.services.families.factory import gen_sequence, resolve_triangle, specialize
from app.services.families.loaders import spec_from_file
from app.services.matrices import hankel
from app.services.operators import (
    apply_convolution,
    apply_transform,
    certify_m_log_convex,
    check_q_slcx,
    check_transform_hypothesis,
    iterate_logconcave,
    iterate_logconvex,
)
from app.services.positivity import PositivityService
from app.services.qpoly import QPoly, format_rational, parse_rational
from app.services.recursive.bidiagonal import certify_jacobi
from app.services.recursive.presets import certify_preset, get_preset
from app.services.recursive.recursive_matrix import catalan_like, jacobi_of

logger = get_logger(__name__)

Report = Union[SequenceReport, CertificateReport, IterationRunReport, ExploreReport]

EXIT_OK = 0
EXIT_FAIL = 3

DEFAULT_COUNT = 10
DEFAULT_ORDER = 4
DEFAULT_DEPTH = 2
DEFAULT_ITERATE_TERMS = 12

# check properties whose --n counts terms rather than giving a Hankel order
_PREFIX_TARGETS = {
    CheckTarget.LOG_CONVEX,
    CheckTarget.LOG_CONCAVE,
    CheckTarget.PF,
    CheckTarget.Q_SLCX,
    CheckTarget.M_LOG_CONVEX,
}
_HANKEL_TARGETS = {
    CheckTarget.TP2,
    CheckTarget.TP,
    CheckTarget.POS_DEF,
    CheckTarget.SM,
    CheckTarget.Q_SM,
    CheckTarget.PSM,
    CheckTarget.TRANSFORM_HYPOTHESIS,
}


def _cap(value: Optional[int], limit: int, label: str, flag: str) -> None:
    if value is not None and value > limit:
        raise CapExceeded(f"{label} {value} exceeds the cap {limit} (raise it with {flag})")


def terms_needed(config: RunConfig) -> int:
    """Number of sequence terms a run consumes."""
    n = config.n
    if config.command == Command.CHECK:
        if config.property in _PREFIX_TARGETS:
            if n is not None:
                return n
            depth = config.depth if config.depth is not None else DEFAULT_DEPTH
            return max(DEFAULT_COUNT, 2 * depth + 1)
        order = DEFAULT_ORDER if n is None else n
        if config.property in (CheckTarget.TP2, CheckTarget.TP, CheckTarget.POS_DEF, CheckTarget.Q_SM):
            return 2 * order + 1
        return 2 * order + 2
    if config.command == Command.ITERATE:
        depth = config.depth if config.depth is not None else DEFAULT_DEPTH
        return n if n is not None else max(DEFAULT_ITERATE_TERMS, 2 * depth + 1)
    return n if n is not None else DEFAULT_COUNT


def validate_caps(config: RunConfig) -> None:
    """Reject a run whose sizes exceed its caps, before any computation."""
    caps = config.caps
    _cap(config.depth, caps.max_depth, "Depth", "--max-depth")
    _cap(config.max_order, caps.max_minor_order, "Minor order", "--max-order")
    if config.command == Command.EXPLORE:
        _cap(config.n, caps.max_terms, "Term count", "--max-n")
        _cap(config.sm_order, caps.max_hankel_order, "SM order", "--max-hankel-order")
        _cap(config.q_sm_order, caps.max_hankel_order, "q-SM order", "--max-hankel-order")
        _cap(config.slcx_prefix, caps.max_terms, "q-SLCX prefix", "--max-n")
        return
    if config.command == Command.CHECK and config.property in _HANKEL_TARGETS:
        _cap(config.n, caps.max_hankel_order, "Hankel order", "--max-hankel-order")
    _cap(terms_needed(config), caps.max_terms, "Term count", "--max-n")


class RunService:
    """Runs one command from its RunConfig."""

    def __init__(self, positivity: Optional[PositivityService] = None):
        self._positivity = positivity
        self.settings = get_settings()

    # ------------------------------------------------------------------
    # Inputs
    # ------------------------------------------------------------------

    def _positivity_for(self, config: RunConfig) -> PositivityService:
        return self._positivity or PositivityService(config.caps)

    def _raw_terms(self, config: RunConfig, count: int, y: bool = False) -> tuple[str, list[QPoly]]:
        if y:
            if config.y_sequence is not None:
                return config.y_sequence.name, gen_sequence(config.y_sequence.to_spec(), count)
            name = config.y_family or config.family
            params = config.y_params if config.y_family else config.params
            if name is None:
                raise InvalidParams("convolve needs a second sequence (--y-family or --y-seq-file)")
            return name, gen_sequence(SeqSpec(name=name, params=params), count)

        if config.sequence is not None:
            return config.sequence.name, gen_sequence(config.sequence.to_spec(), count)
        if config.recursive is not None:
            spec = SeqSpec(name=config.recursive, kind=FamilyKind.RECURSIVE_MATRIX_REF)
            return config.recursive, gen_sequence(spec, count)
        if config.recursive_spec is not None:
            return config.recursive_spec.name, catalan_like(spec_from_file(config.recursive_spec), count)
        if config.family is None:
            raise InvalidParams("No input sequence: give --family, --seq-file, --recursive or --recursive-file")
        return config.family, gen_sequence(SeqSpec(name=config.family, params=config.params), count)

    def _terms(self, config: RunConfig, count: int, y: bool = False) -> tuple[str, list[QPoly]]:
        name, terms = self._raw_terms(config, count, y)
        if config.q is not None and not config.symbolic_q:
            terms = [QPoly.constant(v) for v in specialize(terms, parse_rational(config.q))]
        return name, terms

    def _triangle(self, config: RunConfig) -> BaseTriangle:
        if config.triangle_data is not None:
            return resolve_triangle(config.triangle_data.to_spec())
        if config.triangle is None:
            raise InvalidParams("A triangle is required (--triangle or --triangle-file)")
        return resolve_triangle(TriangleSpec(name=config.triangle))

    def _q_label(self, config: RunConfig) -> Optional[str]:
        return format_rational(parse_rational(config.q)) if config.q is not None else None

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def _generate(self, config: RunConfig) -> SequenceReport:
        count = config.n if config.n is not None else DEFAULT_COUNT
        if config.triangle is not None or config.triangle_data is not None:
            if count < 1:
                raise InvalidParams("Row count must be positive")
            triangle = self._triangle(config)
            rows = [[e.to_json() for e in triangle.row(i)] for i in range(count)]
            return SequenceReport(
                config=config, tool_version=self.settings.tool_version,
                name=triangle.name, rows=rows,
            )
        name, terms = self._terms(config, count)
        return SequenceReport(
            config=config, tool_version=self.settings.tool_version,
            name=name, q=self._q_label(config), terms=[t.to_json() for t in terms],
        )

    def _transform(self, config: RunConfig) -> SequenceReport:
        count = config.n if config.n is not None else DEFAULT_COUNT
        triangle = self._triangle(config)
        x_name, x = self._terms(config, count)
        if config.command == Command.CONVOLVE:
            y_name, y = self._terms(config, count, y=True)
            z = apply_convolution(triangle, x, y, count)
            name = f"{triangle.name}({x_name}, {y_name})"
        else:
            z = apply_transform(triangle, x, count)
            name = f"{triangle.name}({x_name})"
        return SequenceReport(
            config=config, tool_version=self.settings.tool_version,
            name=name, q=self._q_label(config), terms=[t.to_json() for t in z],
        )

    def _jacobi(self, config: RunConfig, positivity: PositivityService) -> Certificate:
        size = config.jacobi_size or self.settings.jacobi_size
        if config.recursive_spec is not None:
            j = jacobi_of(spec_from_file(config.recursive_spec), size)
            return certify_jacobi(j, None, positivity)
        name = config.recursive or config.family
        if name is None:
            raise InvalidParams("check --property jacobi needs --recursive, --recursive-file or a preset --family")
        return certify_preset(get_preset(name), size, positivity)

    def _check(self, config: RunConfig) -> Certificate:
        target = config.property
        if target is None:
            raise UnknownProperty("check needs --property")
        positivity = self._positivity_for(config)
        n = config.n if config.n is not None else DEFAULT_ORDER
        grid = config.q_grid or self.settings.psm_grid

        if target == CheckTarget.JACOBI:
            return self._jacobi(config, positivity)
        if target == CheckTarget.TRANSFORM_HYPOTHESIS:
            return check_transform_hypothesis(self._triangle(config), n, grid, positivity)

        _, seq = self._terms(config, terms_needed(config))
        default_order = min(n + 1, config.caps.max_minor_order)
        if target == CheckTarget.TP2:
            return positivity.check_tp2(hankel(seq, n))
        if target == CheckTarget.TP:
            return positivity.check_tp(hankel(seq, n), config.max_order or default_order, matrix_label="hankel")
        if target == CheckTarget.POS_DEF:
            return positivity.check_hamburger(seq, n)
        if target == CheckTarget.SM:
            return positivity.check_sm(seq, n)
        if target == CheckTarget.Q_SM:
            return positivity.check_q_sm(seq, n, config.max_order or default_order)
        if target == CheckTarget.PSM:
            return positivity.check_psm(seq, n, grid)
        if target == CheckTarget.LOG_CONVEX:
            return positivity.check_log_convex(seq, config.strict)
        if target == CheckTarget.LOG_CONCAVE:
            return positivity.check_log_concave(seq)
        if target == CheckTarget.PF:
            return positivity.check_pf(seq, config.max_order or min(n, config.caps.max_minor_order))
        if target == CheckTarget.Q_SLCX:
            return check_q_slcx(seq)
        if target == CheckTarget.M_LOG_CONVEX:
            return certify_m_log_convex(seq, config.depth if config.depth is not None else DEFAULT_DEPTH,
                                        config.strict)
        raise UnknownProperty(f"Unknown property: {target}")

    def _iterate(self, config: RunConfig) -> IterationRunReport:
        depth = config.depth if config.depth is not None else DEFAULT_DEPTH
        _, seq = self._terms(config, terms_needed(config))
        if config.operator == IterOperator.LOGCONCAVE:
            report = iterate_logconcave(seq, depth)
        else:
            report = iterate_logconvex(seq, depth, config.strict)
        capped = report.capped(self.settings.report_term_cap)
        return IterationRunReport(
            **capped.model_dump(), config=config, tool_version=self.settings.tool_version,
        )

    # ------------------------------------------------------------------
    # Entry points
    # ------------------------------------------------------------------

    def execute(self, config: RunConfig) -> tuple[Report, int]:
        """
        Validate caps, run the command and compute the exit code.

        Args:
            config: Complete run configuration

        Returns:
            (report, exit code): 0 on success or pass, 3 on a certified failure
        """
        validate_caps(config)
        command = config.command

        if command == Command.GENERATE:
            return self._generate(config), EXIT_OK
        if command in (Command.TRANSFORM, Command.CONVOLVE):
            return self._transform(config), EXIT_OK
        if command == Command.CHECK:
            cert = self._check(config)
            report = CertificateReport(
                **cert.model_dump(), config=config, tool_version=self.settings.tool_version,
            )
            logger.info("Check finished", extra={"property": cert.property.value, "result": cert.result.value})
            return report, EXIT_OK if cert.passed else EXIT_FAIL
        if command == Command.ITERATE:
            report = self._iterate(config)
            return report, EXIT_OK if report.passed else EXIT_FAIL
        if command == Command.EXPLORE:
            explorer = ExploreService(positivity=self._positivity_for(config))
            report = explorer.run(config)
            return report, EXIT_OK if report.result == CertificateResult.PASS else EXIT_FAIL
        raise InvalidParams(f"Unsupported command: {command}")

    def replay(self, path: str | Path) -> tuple[Report, int]:
        """Re-execute the RunConfig embedded in a saved JSON report."""
        path = Path(path)
        try:
            data = orjson.loads(path.read_bytes())
            config = RunConfig.model_validate(data["config"])
        except FileNotFoundError as exc:
            raise InvalidInputFile(f"File not found: {path}") from exc
        except (orjson.JSONDecodeError, KeyError, TypeError, ValidationError) as exc:
            raise InvalidInputFile(f"{path} is not a report with an embedded config: {exc}") from exc
        logger.info(f"Replaying {config.command.value} from {path}")
        return self.execute(config)
