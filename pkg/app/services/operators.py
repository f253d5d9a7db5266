"""
The log-convexity operator and its log-concavity twin, iterated application,
and the triangle transforms and convolutions that preserve the SM property.
"""
from typing import Optional, Sequence

from app.errors import EmptySequence, InsufficientTerms, InvalidParams, TooShort
from app.logging_config import get_logger
from app.models.schemas import (
    Certificate,
    CertificateResult,
    CheckMethod,
    IterationLevel,
    IterationReport,
    PropertyName,
    Witness,
)
from app.services.families.base import BaseTriangle
from app.services.families.triangles import PascalTriangle
from app.services.positivity import PositivityService
from app.services.qpoly import QPoly, as_qpolys

logger = get_logger(__name__)

SLCX_BOUNDARY_NOTE = "pairs with m = 0 are not checked: the condition there involves the undefined a_(-1)"


# ============================================================================
# Operators
# ============================================================================

def op_logconvex(seq: Sequence) -> list[QPoly]:
    """(a_k a_{k+2} - a_{k+1}^2)_k; the result is two terms shorter."""
    a = as_qpolys(seq)
    if len(a) < 3:
        raise TooShort(f"The log-convexity operator needs at least 3 terms, got {len(a)}")
    return [a[k] * a[k + 2] - a[k + 1] * a[k + 1] for k in range(len(a) - 2)]


def op_logconcave(seq: Sequence) -> list[QPoly]:
    """b_0 = a_0^2, b_{k+1} = a_{k+1}^2 - a_k a_{k+2}, with a_j = 0 past the end."""
    a = as_qpolys(seq)
    if not a:
        raise EmptySequence("The log-concavity operator needs at least 1 term")

    def at(j: int) -> QPoly:
        return a[j] if j < len(a) else QPoly.zero()

    return [a[0] * a[0]] + [at(k + 1) * at(k + 1) - at(k) * at(k + 2) for k in range(len(a) - 1)]


def _is_positive(p: QPoly, q_mode: bool) -> bool:
    if q_mode:
        return p.is_nonneg() and not p.is_zero
    return p.constant_term > 0


def _level(index: int, terms: list[QPoly], strict: bool, q_mode: bool) -> IterationLevel:
    nonneg = all(t.is_nonneg() for t in terms)
    positive = all(_is_positive(t, q_mode) for t in terms)
    ok = positive if strict else nonneg
    failing = None
    if not ok:
        failing = next(
            k for k, t in enumerate(terms)
            if not (_is_positive(t, q_mode) if strict else t.is_nonneg())
        )
    return IterationLevel(
        level=index,
        length=len(terms),
        terms=[t.to_json() for t in terms],
        nonnegative=nonneg,
        positive=positive,
        first_failing_index=failing,
    )


def iterate_logconvex(seq: Sequence, depth: int, strict: bool = False) -> IterationReport:
    """
    Apply op_logconvex ``depth`` times, recording every level.

    Args:
        seq: Terms a_0 .. a_{n-1}; n >= 2*depth + 1
        depth: Number of applications m
        strict: Require strict positivity (numeric) or nonzero q-nonnegativity

    Returns:
        IterationReport with levels 1..depth; level i has n - 2i terms
    """
    current = as_qpolys(seq)
    n = len(current)
    if depth < 0:
        raise InvalidParams("Iteration depth must be nonnegative")
    if n < 2 * depth + 1:
        raise InsufficientTerms(f"Depth {depth} needs at least {2 * depth + 1} terms, got {n}")
    q_mode = any(not t.is_constant for t in current)

    levels = []
    for i in range(1, depth + 1):
        current = op_logconvex(current)
        levels.append(_level(i, current, strict, q_mode))

    failed = next((lvl for lvl in levels if lvl.first_failing_index is not None), None)
    word = "positive" if strict else "nonnegative"
    if failed is None:
        result = CertificateResult.PASS
        statement = f"verified to order {depth}: levels 1..{depth} of {n} terms are {word}"
    else:
        result = CertificateResult.FAIL
        statement = f"level {failed.level} is not {word} at index {failed.first_failing_index}"
    logger.info("Log-convexity iteration", extra={"result": result.value})
    return IterationReport(
        operator="logconvex",
        depth=depth,
        terms=n,
        q_mode=q_mode,
        strict=strict,
        levels=levels,
        result=result,
        statement=statement,
    )


def iterate_logconcave(seq: Sequence, depth: int) -> IterationReport:
    """Apply op_logconcave ``depth`` times; every level keeps the input length."""
    current = as_qpolys(seq)
    if depth < 0:
        raise InvalidParams("Iteration depth must be nonnegative")
    if not current:
        raise EmptySequence("Cannot iterate on an empty sequence")
    q_mode = any(not t.is_constant for t in current)

    levels = []
    for i in range(1, depth + 1):
        current = op_logconcave(current)
        levels.append(_level(i, current, False, q_mode))

    failed = next((lvl for lvl in levels if lvl.first_failing_index is not None), None)
    if failed is None:
        result = CertificateResult.PASS
        statement = f"verified to order {depth}: levels 1..{depth} are nonnegative"
    else:
        result = CertificateResult.FAIL
        statement = f"level {failed.level} is negative at index {failed.first_failing_index}"
    logger.info("Log-concavity iteration", extra={"result": result.value})
    return IterationReport(
        operator="logconcave",
        depth=depth,
        terms=len(seq),
        q_mode=q_mode,
        levels=levels,
        result=result,
        statement=statement,
    )


def certify_m_log_convex(seq: Sequence, m: int, strict: bool = False) -> Certificate:
    """m-log-convexity of the given prefix as a Certificate."""
    report = iterate_logconvex(seq, m, strict)
    fields = dict(
        property=PropertyName.M_LOG_CONVEX,
        matrix_size=report.terms,
        minor_order=m,
        method=CheckMethod.ITERATION,
        statement=report.statement,
    )
    failed = next((lvl for lvl in report.levels if lvl.first_failing_index is not None), None)
    if failed is None:
        return Certificate(result=CertificateResult.PASS, **fields)
    k = failed.first_failing_index
    return Certificate(
        result=CertificateResult.FAIL,
        witness=Witness(level=failed.level, index=k, value=failed.terms[k]),
        **fields,
    )


def check_q_slcx(seq: Sequence) -> Certificate:
    """a_{n+1} a_{m-1} >=_q a_n a_m for 1 <= m <= n within the prefix."""
    a = as_qpolys(seq)
    if len(a) < 2:
        raise TooShort(f"q-SLCX needs at least 2 terms, got {len(a)}")
    fields = dict(
        property=PropertyName.STRONG_Q_LOG_CONVEX,
        matrix_size=len(a),
        method=CheckMethod.WINDOW,
        notes=[SLCX_BOUNDARY_NOTE],
    )
    pairs = 0
    for n in range(1, len(a) - 1):
        for m in range(1, n + 1):
            diff = a[n + 1] * a[m - 1] - a[n] * a[m]
            pairs += 1
            if not diff.is_nonneg():
                logger.info("q-SLCX check", extra={"property": "StrongQLogConvex", "result": "fail"})
                return Certificate(
                    result=CertificateResult.FAIL,
                    witness=Witness(pair=[n, m], value=diff.to_json()),
                    statement=f"a_{n + 1} a_{m - 1} - a_{n} a_{m} is not q-nonnegative",
                    **fields,
                )
    logger.info("q-SLCX check", extra={"property": "StrongQLogConvex", "result": "pass"})
    return Certificate(
        result=CertificateResult.PASS,
        statement=f"verified to order {len(a)}: {pairs} pairs 1 <= m <= n <= {len(a) - 2} satisfy the inequality",
        **fields,
    )


# ============================================================================
# Transforms and convolutions
# ============================================================================

def _need(seq: list, n: int, label: str) -> None:
    if len(seq) < n:
        raise InsufficientTerms(f"{label} supplies {len(seq)} terms, {n} needed")


def apply_transform(triangle: BaseTriangle, x: Sequence, n: int) -> list[QPoly]:
    """z_i = sum_k a_{i,k} x_k for i < n."""
    xs = as_qpolys(x)
    _need(xs, n, "x")
    return [
        sum((triangle.entry(i, k) * xs[k] for k in range(i + 1)), QPoly.zero())
        for i in range(n)
    ]


def apply_convolution(triangle: BaseTriangle, x: Sequence, y: Sequence, n: int) -> list[QPoly]:
    """z_i = sum_k a_{i,k} x_k y_{i-k} for i < n."""
    xs, ys = as_qpolys(x), as_qpolys(y)
    _need(xs, n, "x")
    _need(ys, n, "y")
    return [
        sum((triangle.entry(i, k) * xs[k] * ys[i - k] for k in range(i + 1)), QPoly.zero())
        for i in range(n)
    ]


def binomial_convolution(x: Sequence, y: Sequence, n: int) -> list[QPoly]:
    return apply_convolution(PascalTriangle(), x, y, n)


def row_polynomials(triangle: BaseTriangle, rows: int) -> list[QPoly]:
    """A_i(q) = sum_k a_{i,k} q^k for i < rows."""
    return [triangle.row_polynomial(i) for i in range(rows)]


def check_transform_hypothesis(
    triangle: BaseTriangle,
    n: int,
    grid: Sequence,
    positivity: Optional[PositivityService] = None,
) -> Certificate:
    """PSM of the triangle's row polynomials, under which its transforms preserve SM."""
    positivity = positivity or PositivityService()
    cert = positivity.check_psm(row_polynomials(triangle, 2 * n + 2), n, grid)
    return cert.model_copy(update={"notes": cert.notes + [f"row polynomials of {triangle.name}"]})
