import pytest

from app.errors import EmptySequence, InsufficientTerms, TooShort
from app.models.schemas import CheckMethod, PropertyName
from app.services.families.factory import SequenceFactory, TriangleFactory
from app.services.operators import (
    SLCX_BOUNDARY_NOTE,
    apply_convolution,
    apply_transform,
    binomial_convolution,
    certify_m_log_convex,
    check_q_slcx,
    check_transform_hypothesis,
    iterate_logconcave,
    iterate_logconvex,
    op_logconcave,
    op_logconvex,
    row_polynomials,
)
from app.services.matrices import shift
from app.services.qpoly import QPoly

q = QPoly.q()


def terms(name, count, **params):
    return SequenceFactory.get_family(name, **params).terms(count)


def constants(values):
    return [QPoly.constant(v) for v in values]


def test_op_logconvex():
    assert op_logconvex([1, 1, 2, 5, 14]) == constants([1, 1, 3])
    with pytest.raises(TooShort):
        op_logconvex([1, 2])


def test_op_logconcave_pads_with_zeros():
    assert op_logconcave([1, 2, 1]) == constants([1, 3, 1])
    assert op_logconcave([5]) == constants([25])
    with pytest.raises(EmptySequence):
        op_logconcave([])


def test_iterate_logconvex_levels():
    report = iterate_logconvex(terms("catalan", 11), 2)
    assert report.passed
    assert [level.length for level in report.levels] == [9, 7]
    assert report.levels[0].terms[:3] == [[1], [1], [3]]
    assert not report.q_mode
    assert report.statement.startswith("verified to order 2")


def test_iterate_logconvex_reports_first_failure():
    report = iterate_logconvex([1, 2, 1, 2, 1], 2)
    assert not report.passed
    assert report.levels[0].first_failing_index == 0
    assert report.levels[0].terms[0] == [-3]


def test_iterate_logconvex_needs_terms():
    with pytest.raises(InsufficientTerms):
        iterate_logconvex([1, 1, 2, 5], 2)


def test_q_mode_strictness():
    powers = terms("binomial_powers", 5)
    relaxed = iterate_logconvex(powers, 1)
    assert relaxed.passed and relaxed.q_mode
    assert not relaxed.levels[0].positive
    assert not iterate_logconvex(powers, 1, strict=True).passed


def test_iterate_logconcave_on_pf_sequence():
    report = iterate_logconcave([1, 3, 3, 1], 3)
    assert report.passed
    assert report.levels[0].terms == [[1], [6], [6], [1]]
    assert report.levels[1].terms == [[1], [30], [30], [1]]
    assert all(level.length == 4 for level in report.levels)


def test_m_log_convex_certificate():
    cert = certify_m_log_convex(terms("schroder", 9), 3)
    assert cert.passed
    assert cert.property == PropertyName.M_LOG_CONVEX
    assert cert.method == CheckMethod.ITERATION
    failing = certify_m_log_convex([1, 2, 1, 2, 1], 1)
    assert (failing.witness.level, failing.witness.index, failing.witness.value) == (1, 0, [-3])


def test_q_slcx():
    cert = check_q_slcx(terms("apery_general", 6, r=1, s=1))
    assert cert.passed
    assert cert.property == PropertyName.STRONG_Q_LOG_CONVEX
    assert SLCX_BOUNDARY_NOTE in cert.notes
    assert check_q_slcx(terms("binomial_powers", 6)).passed


def test_q_slcx_witness_pair():
    cert = check_q_slcx([1, 1, 3, 1])
    assert not cert.passed
    assert cert.witness.pair == [2, 1]
    assert cert.witness.value == [-2]


def test_transforms():
    pascal = TriangleFactory.get_triangle("pascal")
    assert apply_transform(pascal, [1] * 5, 5) == constants([1, 2, 4, 8, 16])
    shifted = TriangleFactory.get_triangle("shifted_binomial")
    assert apply_transform(shifted, [1] * 6, 6) == constants([1, 2, 5, 13, 34, 89])
    assert apply_transform(shifted, terms("catalan", 5), 5) == constants([1, 2, 6, 22, 90])


def test_transform_needs_terms():
    with pytest.raises(InsufficientTerms):
        apply_transform(TriangleFactory.get_triangle("pascal"), [1, 1], 3)


def test_binomial_convolution_of_factorials():
    factorials = terms("factorial", 5)
    expected = constants([1, 2, 6, 24, 120])
    assert binomial_convolution(factorials, factorials, 5) == expected
    assert apply_convolution(TriangleFactory.get_triangle("pascal"), factorials, factorials, 5) == expected


def test_transform_of_polynomial_sequence():
    pascal = TriangleFactory.get_triangle("pascal")
    assert apply_transform(pascal, terms("binomial_powers", 3), 3)[2] == (2 + q) ** 2


def test_row_polynomials():
    rows = row_polynomials(TriangleFactory.get_triangle("eulerian_A"), 4)
    assert rows == [QPoly.one(), q, q + q ** 2, q + 4 * q ** 2 + q ** 3]


def test_transform_hypothesis_for_pascal(positivity):
    cert = check_transform_hypothesis(TriangleFactory.get_triangle("pascal"), 2, ["0", "1", "2"], positivity)
    assert cert.passed
    assert cert.property == PropertyName.PSM
    assert "row polynomials of pascal" in cert.notes


def test_logconvex_operator_commutes_with_shift(rng):
    for _ in range(30):
        a = [QPoly(tuple(rng.randint(-5, 9) for _ in range(rng.randint(1, 3)))) for _ in range(rng.randint(4, 9))]
        assert op_logconvex(shift(a)) == shift(op_logconvex(a))


@pytest.mark.parametrize("m", range(1, 9))
def test_binomial_rows_stay_nonnegative_under_logconcave_iteration(m):
    row = list(((1 + q) ** m).coeffs)
    report = iterate_logconcave(row, 3)
    assert report.passed
    assert all(level.nonnegative for level in report.levels)


def test_apery_b_numbers_are_two_log_convex():
    b_numbers = [t.evaluate(1) for t in terms("apery_general", 40, r=2, s=1)]
    report = iterate_logconvex(b_numbers, 2)
    assert report.passed
    assert [level.length for level in report.levels] == [38, 36]
