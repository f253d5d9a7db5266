import pytest

from app.errors import CapExceeded, InvalidParams
from app.models.schemas import Caps, CertificateResult, Command, PropertyName, RunConfig
from app.services.explorer import ExploreService
from app.services.positivity import PositivityService


def explore_config(**options) -> RunConfig:
    r = options.pop("r", 2)
    s = options.pop("s", 2)
    caps = options.pop("caps", None) or Caps.from_settings()
    return RunConfig(command=Command.EXPLORE, family="apery_general", params={"r": r, "s": s},
                     caps=caps, **options)


@pytest.fixture
def explorer(positivity) -> ExploreService:
    return ExploreService(positivity=positivity, max_workers=2)


def test_numeric_iteration_passes(explorer):
    report = explorer.run(explore_config(r=2, s=1, q="1", depth=2, n=20))
    assert report.passed
    assert [c.check_id for c in report.checks] == ["iterate_logconvex"]
    iteration = report.checks[0].iteration
    assert iteration.depth == 2
    assert [level.length for level in iteration.levels] == [18, 16]
    assert report.q == "1"
    assert "Finite verification only, not a proof." in report.statement


def test_default_plan_numeric(explorer):
    report = explorer.run(explore_config(r=2, s=2))
    assert [c.check_id for c in report.checks] == ["iterate_logconvex"]
    assert report.checks[0].iteration.levels[0].length == 3


def test_symbolic_q_slcx(explorer):
    report = explorer.run(explore_config(r=1, s=1, symbolic_q=True, slcx_prefix=6))
    assert report.symbolic
    assert report.q is None
    assert [c.check_id for c in report.checks] == ["q_slcx"]
    cert = report.checks[0].certificate
    assert cert.property == PropertyName.STRONG_Q_LOG_CONVEX
    assert cert.passed
    assert report.statement.startswith("A_n(1,1;q) passes every check")


def test_checks_are_sorted_by_id(explorer):
    report = explorer.run(explore_config(r=1, s=1, depth=1, sm_order=2, q_sm_order=1))
    assert [c.check_id for c in report.checks] == ["iterate_logconvex", "q_sm", "sm"]
    assert report.result == CertificateResult.PASS
    sm = next(c for c in report.checks if c.check_id == "sm").certificate
    assert sm.property == PropertyName.SM
    assert "sm verified to order 2" in report.statement


def test_symbolic_sm_order_runs_psm(explorer):
    report = explorer.run(explore_config(r=1, s=1, symbolic_q=True, sm_order=1))
    assert [c.check_id for c in report.checks] == ["psm"]
    assert report.checks[0].certificate.property == PropertyName.PSM


def test_term_cap():
    small = Caps.from_settings().model_copy(update={"max_terms": 8})
    explorer = ExploreService(positivity=PositivityService(small))
    with pytest.raises(CapExceeded):
        explorer.run(explore_config(depth=2, n=9, caps=small))


def test_rejects_non_positive_exponent(explorer):
    with pytest.raises(InvalidParams):
        explorer.run(explore_config(r=0, s=1))


def test_psm_uses_configured_grid(explorer):
    report = explorer.run(explore_config(r=1, s=1, symbolic_q=True, sm_order=1, q_grid=["1/2", "2"]))
    assert report.checks[0].certificate.q_grid == ["1/2", "2"]
    assert report.config.q_grid == ["1/2", "2"]
