"""
Exploration of the generalized Apery polynomials A_n(r,s;q).

Independent checks run concurrently in worker threads; the report lists them
sorted by check id so its content does not depend on completion order.
"""
import asyncio
import time
from typing import Callable, Optional, Union

from app.config import get_settings
from app.errors import CapExceeded
from app.logging_config import get_logger
from app.models.schemas import (
    Certificate,
    CertificateResult,
    ExploreCheck,
    ExploreReport,
    IterationReport,
    PropertyName,
    RunConfig,
)
from app.services.families.factory import specialize
from app.services.families.sequences import AperyGeneral
from app.services.operators import check_q_slcx, iterate_logconvex
from app.services.positivity import PositivityService
from app.services.qpoly import QPoly, format_rational, parse_rational

logger = get_logger(__name__)

DEFAULT_DEPTH = 2
DEFAULT_SLCX_PREFIX = 6

Outcome = Union[Certificate, IterationReport]


class ExploreService:
    """
    Runs m-log-convexity, SM, PSM, q-SLCX and q-SM checks on A_n(r,s;q).

    Numeric mode specializes at a fixed q (default 1); symbolic mode keeps the
    polynomials, and an SM order then means PSM over the configured grid.
    """

    def __init__(self, positivity: Optional[PositivityService] = None, max_workers: Optional[int] = None):
        settings = get_settings()
        self.positivity = positivity or PositivityService()
        self.max_workers = max_workers or settings.max_workers
        self.psm_grid = settings.psm_grid

    def _plan(self, config: RunConfig) -> dict[str, Callable[[], Outcome]]:
        family = AperyGeneral(r=config.params.get("r", 2), s=config.params.get("s", 2))
        symbolic = config.symbolic_q

        depth, slcx_prefix = config.depth, config.slcx_prefix
        requested = (config.depth, config.sm_order, config.q_sm_order, config.slcx_prefix)
        if all(x is None for x in requested):
            if symbolic:
                slcx_prefix = DEFAULT_SLCX_PREFIX
            else:
                depth = DEFAULT_DEPTH

        length = None
        if depth is not None:
            length = config.n if config.n is not None else 2 * depth + 1
        needed = [
            length or 1,
            2 * config.sm_order + 2 if config.sm_order is not None else 1,
            2 * config.q_sm_order + 1 if config.q_sm_order is not None else 1,
            slcx_prefix or 1,
        ]
        count = max(needed)
        if count > self.positivity.caps.max_terms:
            raise CapExceeded(f"{count} terms exceed the cap {self.positivity.caps.max_terms}")

        polys: list[QPoly] = family.terms(count)
        if symbolic:
            numeric = polys
        else:
            q_value = parse_rational(config.q if config.q is not None else "1")
            numeric = [QPoly.constant(v) for v in specialize(polys, q_value)]

        plan: dict[str, Callable[[], Outcome]] = {}
        if depth is not None:
            plan["iterate_logconvex"] = lambda: iterate_logconvex(numeric[:length], depth)
        if config.sm_order is not None:
            order = config.sm_order
            if symbolic:
                grid = config.q_grid or self.psm_grid
                plan["psm"] = lambda: self.positivity.check_psm(polys[:2 * order + 2], order, grid)
            else:
                plan["sm"] = lambda: self.positivity.check_sm(numeric[:2 * order + 2], order)
        if slcx_prefix is not None:
            plan["q_slcx"] = lambda: check_q_slcx(polys[:slcx_prefix])
        if config.q_sm_order is not None:
            q_order = config.q_sm_order
            max_order = config.max_order or min(q_order + 1, self.positivity.caps.max_minor_order)
            plan["q_sm"] = lambda: self.positivity.check_q_sm(polys[:2 * q_order + 1], q_order, max_order)
        return plan

    async def _run_check(
        self,
        semaphore: asyncio.Semaphore,
        check_id: str,
        fn: Callable[[], Outcome],
    ) -> ExploreCheck:
        async with semaphore:
            start = time.perf_counter()
            outcome = await asyncio.to_thread(fn)
            elapsed = int((time.perf_counter() - start) * 1000)

        logger.info(
            "Explore check finished",
            extra={"check_id": check_id, "result": outcome.result.value, "duration_ms": elapsed},
        )
        return ExploreCheck(
            check_id=check_id,
            result=outcome.result,
            certificate=outcome if isinstance(outcome, Certificate) else None,
            iteration=outcome if isinstance(outcome, IterationReport) else None,
            wall_time_ms=elapsed,
        )

    async def explore(self, config: RunConfig) -> ExploreReport:
        """
        Run every planned check concurrently.

        Args:
            config: Explore run configuration (r, s, q or symbolic_q, orders)

        Returns:
            ExploreReport with checks sorted by check id
        """
        plan = self._plan(config)
        semaphore = asyncio.Semaphore(self.max_workers)
        start = time.perf_counter()
        checks = await asyncio.gather(
            *(self._run_check(semaphore, check_id, fn) for check_id, fn in plan.items())
        )
        checks = sorted(checks, key=lambda c: c.check_id)
        elapsed = int((time.perf_counter() - start) * 1000)

        passed = all(c.result == CertificateResult.PASS for c in checks)
        r, s = config.params.get("r", 2), config.params.get("s", 2)
        q_label = None if config.symbolic_q else format_rational(parse_rational(config.q or "1"))
        subject = f"A_n({r},{s};q)" if config.symbolic_q else f"A_n({r},{s};{q_label})"
        orders = "; ".join(f"{c.check_id} verified to order {self._order_of(c)}" for c in checks)
        statement = (
            f"{subject} {'passes every check' if passed else 'fails a check'}: {orders}. "
            "Finite verification only, not a proof."
        )
        return ExploreReport(
            config=config,
            tool_version=get_settings().tool_version,
            r=r,
            s=s,
            q=q_label,
            symbolic=config.symbolic_q,
            checks=checks,
            result=CertificateResult.PASS if passed else CertificateResult.FAIL,
            statement=statement,
            elapsed_ms=elapsed,
        )

    @staticmethod
    def _order_of(check: ExploreCheck) -> int:
        if check.iteration is not None:
            return check.iteration.depth
        cert = check.certificate
        if cert.property == PropertyName.STRONG_Q_LOG_CONVEX:
            return cert.matrix_size
        return cert.matrix_size - 1

    def run(self, config: RunConfig) -> ExploreReport:
        return asyncio.run(self.explore(config))
