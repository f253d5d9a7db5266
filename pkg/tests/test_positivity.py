import pytest

from app.errors import CapExceeded, InsufficientTerms, NegativeQValue, NonNumericEntries, NotSquare, NotSymmetric
from app.models.schemas import Caps, CheckMethod, PropertyName
from app.services.families.factory import SequenceFactory
from app.services.matrices import ExactMatrix, hankel, minor, shift
from app.services.positivity import INDETERMINATE_NOTE, PositivityService
from app.services.qpoly import QPoly

q = QPoly.q()


def terms(name, count):
    return SequenceFactory.get_family(name).terms(count)


def small_caps(**overrides) -> Caps:
    base = dict(max_terms=64, max_depth=6, max_hankel_order=12, max_minor_order=5, max_qtp_matrix_size=10)
    base.update(overrides)
    return Caps(**base)


def test_catalan_is_sm(positivity):
    cert = positivity.check_sm(terms("catalan", 10), 4)
    assert cert.passed
    assert cert.property == PropertyName.SM
    assert cert.matrix_size == 5
    assert cert.method == CheckMethod.LEADING_MINORS
    assert "verified to order 4" in cert.statement


def test_constant_sequence_is_singular(positivity):
    cert = positivity.check_sm([1] * 6, 2)
    assert not cert.passed
    assert cert.indeterminate
    assert INDETERMINATE_NOTE in cert.notes
    assert cert.witness.rows == [0, 1]
    assert cert.witness.value == [0]
    assert cert.witness.matrix == "hankel"


def test_definite_failure_has_negative_witness(positivity):
    cert = positivity.check_sm([1, 2, 1, 2], 1)
    assert not cert.passed
    assert not cert.indeterminate
    assert cert.witness.value == [-3]
    assert cert.witness.rows == [0, 1]


def test_symmetric_measure_is_hamburger_but_not_stieltjes(positivity):
    # moments of unit atoms at -1, 1 and 2, then of atoms at -1 and 1
    seq = [3, 2, 6, 8, 18, 32]
    assert positivity.check_hamburger(seq, 1).passed
    sym = [1, 0, 1, 0]
    assert positivity.check_hamburger(sym, 1).passed
    cert = positivity.check_sm(sym, 1)
    assert not cert.passed
    assert cert.witness.matrix == "shifted_hankel"
    assert cert.witness.value == [-1]


def test_sm_needs_enough_terms(positivity):
    with pytest.raises(InsufficientTerms):
        positivity.check_sm([1, 1, 2, 5, 14], 2)


def test_pos_def_input_validation(positivity):
    with pytest.raises(NotSquare):
        positivity.check_pos_def(ExactMatrix.from_rows([[1, 2, 3], [2, 1, 0]]))
    with pytest.raises(NotSymmetric):
        positivity.check_pos_def(ExactMatrix.from_rows([[1, 2], [3, 4]]))
    with pytest.raises(NonNumericEntries):
        positivity.check_pos_def(ExactMatrix.from_rows([[1, q], [q, 1]]))


def test_hankel_order_cap():
    service = PositivityService(small_caps(max_hankel_order=3))
    with pytest.raises(CapExceeded):
        service.check_sm(terms("catalan", 10), 4)


def test_tp_enumeration_finds_first_negative_minor(positivity):
    cert = positivity.check_tp(ExactMatrix.from_rows([[1, 2], [3, 4]]), 2)
    assert not cert.passed
    assert cert.property == PropertyName.TP
    assert (cert.witness.rows, cert.witness.cols, cert.witness.value) == ([0, 1], [0, 1], [-2])


def test_tp_order_is_clamped(positivity):
    cert = positivity.check_tp(ExactMatrix.from_rows([[1, 1], [1, 2]]), 5)
    assert cert.passed
    assert cert.minor_order == 2
    assert cert.notes == ["minor order clamped from 5 to 2"]


def test_tp_minor_order_cap():
    service = PositivityService(small_caps(max_minor_order=2))
    with pytest.raises(CapExceeded):
        service.check_tp(hankel(terms("catalan", 5), 2), 3)


def test_tp_matrix_size_cap():
    service = PositivityService(small_caps(max_qtp_matrix_size=3))
    with pytest.raises(CapExceeded):
        service.check_tp(hankel(terms("catalan", 7), 3), 2)


def test_catalan_hankel_is_tp(positivity):
    assert positivity.check_tp(hankel(terms("catalan", 7), 3), 4).passed
    assert positivity.check_tp2(hankel(terms("catalan", 7), 3)).property == PropertyName.TP2


def test_q_sm_of_q_schroder(positivity):
    cert = positivity.check_q_sm(terms("q_schroder", 7), 3, 3)
    assert cert.passed
    assert cert.property == PropertyName.Q_SM
    assert cert.minor_order == 3


def test_q_sm_failure_is_a_polynomial_witness(positivity):
    cert = positivity.check_q_sm([QPoly.one(), q, QPoly.one()], 1, 2)
    assert not cert.passed
    assert cert.witness.value == [1, 0, -1]


def test_psm_resolves_point_mass_at_zero(positivity):
    cert = positivity.check_psm(terms("bell_poly", 8), 3, ["0", "1/2", "1", "2"])
    assert cert.passed
    assert cert.q_grid == ["0", "1/2", "1", "2"]
    assert any(note.startswith("q=0: singular Hankel") for note in cert.notes)


def test_psm_stays_indeterminate_under_tight_caps():
    service = PositivityService(small_caps(max_minor_order=2))
    cert = service.check_psm(terms("bell_poly", 8), 3, ["0", "1"])
    assert not cert.passed
    assert cert.indeterminate
    assert cert.witness.q == "0"


def test_psm_rejects_negative_grid(positivity):
    with pytest.raises(NegativeQValue):
        positivity.check_psm(terms("bell_poly", 4), 1, ["1", "-1/2"])


def test_log_convexity(positivity):
    assert positivity.check_log_convex(terms("catalan", 10), strict=True).passed
    assert positivity.check_log_convex([1, 1, 1]).passed
    assert not positivity.check_log_convex([1, 1, 1], strict=True).passed
    cert = positivity.check_log_convex([1, 2, 1])
    assert (cert.witness.index, cert.witness.value) == (0, [-3])


def test_log_concavity(positivity):
    assert positivity.check_log_concave([1, 4, 6, 4, 1]).passed
    cert = positivity.check_log_concave([1, 1, 2])
    assert (cert.witness.index, cert.witness.value) == (0, [-1])


def test_log_convexity_matches_hankel_tp2(positivity, rng):
    for _ in range(60):
        seq = [rng.randint(1, 9) for _ in range(7)]
        convex = positivity.check_log_convex(seq).passed
        assert convex == positivity.check_tp2(hankel(seq, 3)).passed


def test_polya_frequency(positivity):
    assert positivity.check_pf([1, 3, 3, 1], 4).passed
    cert = positivity.check_pf([1, 1, 1, 0, 0], 3)
    assert not cert.passed
    assert cert.property == PropertyName.PF
    assert len(cert.witness.rows) == 3
    assert cert.witness.matrix == "toeplitz"


def test_tp2_witness_on_small_hankel(positivity):
    cert = positivity.check_tp2(hankel([1, 3, 4, 5, 6], 1))
    assert not cert.passed
    assert cert.witness.rows == [0, 1] and cert.witness.cols == [0, 1]
    assert cert.witness.value == [-5]


def _moment_terms(rng, count, support):
    points = rng.sample(range(1, 10), support)
    weights = [rng.randint(1, 4) for _ in points]
    return [sum(w * x ** i for w, x in zip(weights, points)) for i in range(count)]


def test_tp_witness_is_a_negative_minor(positivity, rng):
    failures = 0
    for _ in range(40):
        size = rng.randint(2, 4)
        m = ExactMatrix.from_rows([[rng.randint(-2, 9) for _ in range(size)] for _ in range(size)])
        cert = positivity.check_tp(m, size)
        if cert.passed:
            continue
        failures += 1
        value = minor(m, cert.witness.rows, cert.witness.cols)
        assert value.to_json() == cert.witness.value
        assert not value.is_nonneg()
    assert failures > 0


def test_sm_witness_is_a_violating_leading_minor(positivity, rng):
    failures = 0
    for _ in range(60):
        n = rng.randint(1, 3)
        seq = [rng.randint(1, 15) for _ in range(2 * n + 2)]
        cert = positivity.check_sm(seq, n)
        if cert.passed:
            continue
        failures += 1
        source = seq if cert.witness.matrix == "hankel" else shift(seq)
        value = minor(hankel(source, n), cert.witness.rows, cert.witness.cols)
        assert value.to_json() == cert.witness.value
        assert value.constant_term <= 0
    assert failures > 0


def test_sm_pass_holds_at_every_lower_order(positivity, rng):
    passes = 0
    for trial in range(60):
        seq = _moment_terms(rng, 8, 5) if trial % 2 else [rng.randint(1, 30) for _ in range(8)]
        if not positivity.check_sm(seq, 3).passed:
            continue
        passes += 1
        assert all(positivity.check_sm(seq, m).passed for m in range(3))
    assert passes >= 30


def test_sm_with_negative_term_fails_at_first_minor(positivity):
    cert = positivity.check_sm([-1, 1, 1, 1], 1)
    assert not cert.passed
    assert not cert.indeterminate
    assert cert.witness.rows == [0] and cert.witness.value == [-1]
