"""
Finite certification of total positivity and moment properties.

Every certificate states the finite range it checked. Numeric and q-mode share
one code path: a constant polynomial is q-nonnegative exactly when its value
is nonnegative.
"""
from itertools import combinations
from typing import Optional, Sequence

from app.errors import (
    CapExceeded,
    InsufficientTerms,
    NegativeQValue,
    NonNumericEntries,
    NotSquare,
    NotSymmetric,
    TooShort,
)
from app.logging_config import get_logger
from app.models.schemas import (
    Caps,
    Certificate,
    CertificateResult,
    CheckMethod,
    PropertyName,
    Witness,
)
from app.services.matrices import ExactMatrix, det_bareiss, hankel, leading_principal_minors, shift, toeplitz
from app.services.qpoly import QPoly, as_qpolys, format_rational, normalize_rational, parse_rational

logger = get_logger(__name__)

INDETERMINATE_NOTE = "indeterminate at this order"


def _fail(prop: PropertyName, witness: Witness, **fields) -> Certificate:
    return Certificate(property=prop, result=CertificateResult.FAIL, witness=witness, **fields)


def _pass(prop: PropertyName, **fields) -> Certificate:
    return Certificate(property=prop, result=CertificateResult.PASS, **fields)


class PositivityService:
    """
    Certifies TP2, TP, positive definiteness, SM, q-SM, PSM and the
    log-convexity family of properties on finite truncations.

    Minor enumeration is sequential so the reported witness is always the
    first failing minor in (order, rows, cols) lexicographic order.
    """

    def __init__(self, caps: Optional[Caps] = None):
        self.caps = caps or Caps.from_settings()

    # ------------------------------------------------------------------
    # Caps
    # ------------------------------------------------------------------

    def _check_enumeration_caps(self, m: ExactMatrix, max_order: int) -> None:
        size = max(m.rows, m.cols)
        if size > self.caps.max_qtp_matrix_size:
            raise CapExceeded(
                f"Minor enumeration on a {m.rows}x{m.cols} matrix exceeds the "
                f"matrix size cap {self.caps.max_qtp_matrix_size}"
            )
        if max_order > self.caps.max_minor_order:
            raise CapExceeded(
                f"Minor order {max_order} exceeds the cap {self.caps.max_minor_order}"
            )

    def _check_hankel_cap(self, n: int) -> None:
        if n > self.caps.max_hankel_order:
            raise CapExceeded(f"Hankel order {n} exceeds the cap {self.caps.max_hankel_order}")

    # ------------------------------------------------------------------
    # Total positivity
    # ------------------------------------------------------------------

    def _first_negative_minor(
        self, m: ExactMatrix, max_order: int
    ) -> Optional[tuple[list[int], list[int], QPoly]]:
        for order in range(1, max_order + 1):
            checked = 0
            for rows in combinations(range(m.rows), order):
                for cols in combinations(range(m.cols), order):
                    value = det_bareiss(m.submatrix(rows, cols))
                    checked += 1
                    if not value.is_nonneg():
                        return list(rows), list(cols), value
            logger.debug(f"Order {order}: {checked} minors nonnegative")
        return None

    def check_tp(
        self,
        m: ExactMatrix,
        max_order: int,
        prop: Optional[PropertyName] = None,
        matrix_label: str = "matrix",
    ) -> Certificate:
        """
        Enumerate every minor of order <= max_order.

        Args:
            m: Matrix with QPoly entries (constant entries give the numeric check)
            max_order: Largest minor order; clamped to min(rows, cols)
            prop: Property to report (defaults to TP, or qTP for polynomial entries)
            matrix_label: Name recorded in the witness

        Returns:
            Certificate whose witness is the first minor that is not q-nonnegative
        """
        q_mode = not m.is_numeric
        prop = prop or (PropertyName.Q_TP if q_mode else PropertyName.TP)
        notes = []
        limit = min(m.rows, m.cols)
        if max_order > limit:
            notes.append(f"minor order clamped from {max_order} to {limit}")
            max_order = limit
        self._check_enumeration_caps(m, max_order)

        fields = dict(
            matrix_size=max(m.rows, m.cols),
            minor_order=max_order,
            method=CheckMethod.ENUMERATION,
            notes=notes,
        )
        found = self._first_negative_minor(m, max_order)
        kind = "q-nonnegative" if q_mode else "nonnegative"
        if found is None:
            cert = _pass(
                prop,
                statement=(
                    f"verified to order {max_order}: every minor of order <= {max_order} "
                    f"of the {m.rows}x{m.cols} {matrix_label} is {kind}"
                ),
                **fields,
            )
        else:
            rows, cols, value = found
            cert = _fail(
                prop,
                Witness(rows=rows, cols=cols, value=value.to_json(), matrix=matrix_label),
                statement=f"minor on rows {rows}, cols {cols} of the {matrix_label} is not {kind}",
                **fields,
            )
        logger.info("TP check", extra={"property": prop.value, "result": cert.result.value})
        return cert

    def check_tp2(self, m: ExactMatrix) -> Certificate:
        return self.check_tp(m, 2, prop=PropertyName.TP2)

    # ------------------------------------------------------------------
    # Positive definiteness and SM
    # ------------------------------------------------------------------

    def _pos_def_scan(self, m: ExactMatrix) -> tuple[Optional[int], Optional[int], list[QPoly]]:
        """Return (first negative index, first zero index, minors)."""
        if not m.is_square:
            raise NotSquare(f"Positive definiteness of a {m.rows}x{m.cols} matrix")
        if not m.is_numeric:
            raise NonNumericEntries("Positive definiteness needs numeric entries")
        if not m.is_symmetric():
            raise NotSymmetric("Positive definiteness needs a symmetric matrix")
        minors = leading_principal_minors(m)
        negative = next((k for k, d in enumerate(minors) if d.constant_term < 0), None)
        zero = next((k for k, d in enumerate(minors) if d.is_zero), None)
        return negative, zero, minors

    def check_pos_def(self, m: ExactMatrix, matrix_label: str = "matrix") -> Certificate:
        """Strictly positive leading principal minors.

        A zero minor with no negative one fails with ``indeterminate`` set: the
        matrix may still be positive semidefinite.
        """
        negative, zero, minors = self._pos_def_scan(m)
        fields = dict(
            matrix_size=m.rows,
            minor_order=m.rows,
            method=CheckMethod.LEADING_MINORS,
        )
        if negative is None and zero is None:
            cert = _pass(
                PropertyName.POS_DEF,
                statement=f"verified to order {m.rows}: all leading principal minors are positive",
                **fields,
            )
        else:
            k = negative if negative is not None else zero
            idx = list(range(k + 1))
            cert = _fail(
                PropertyName.POS_DEF,
                Witness(rows=idx, cols=idx, value=minors[k].to_json(), matrix=matrix_label),
                statement=f"leading principal minor of size {k + 1} is not positive",
                indeterminate=negative is None,
                notes=[INDETERMINATE_NOTE] if negative is None else [],
                **fields,
            )
        logger.info("Positive definiteness check", extra={"property": "PosDef", "result": cert.result.value})
        return cert

    def check_hamburger(self, seq: Sequence, n: int) -> Certificate:
        """Positive definiteness of hankel(seq, n) alone."""
        self._check_hankel_cap(n)
        cert = self.check_pos_def(hankel(seq, n), matrix_label="hankel")
        statement = cert.statement
        if cert.passed:
            statement = f"verified to order {n}: hankel(seq, {n}) is positive definite"
        return cert.model_copy(update={"statement": statement})

    def check_sm(self, seq: Sequence, n: int) -> Certificate:
        """
        Positive definiteness of both hankel(seq, n) and hankel(shift(seq), n).

        Terms are not checked for sign up front: a_0 .. a_{2n+1} lie on the
        diagonals of the two matrices, so a negative term always shows up as a
        failing leading minor.

        Args:
            seq: Numeric terms a_0 .. a_{2n+1} (rationals or constant QPolys)
            n: Hankel order; both matrices are (n+1)x(n+1)

        Returns:
            SM certificate verified to order n
        """
        self._check_hankel_cap(n)
        terms = as_qpolys(seq)
        if len(terms) < 2 * n + 2:
            raise InsufficientTerms(f"SM check at order {n} needs {2 * n + 2} terms, got {len(terms)}")

        results = [
            (label, self._pos_def_scan(hankel(s, n)))
            for label, s in (("hankel", terms), ("shifted_hankel", shift(terms)))
        ]
        fields = dict(matrix_size=n + 1, minor_order=n + 1, method=CheckMethod.LEADING_MINORS)

        definite = next(((lbl, neg, mins) for lbl, (neg, _, mins) in results if neg is not None), None)
        singular = next(((lbl, zero, mins) for lbl, (_, zero, mins) in results if zero is not None), None)
        if definite is None and singular is None:
            cert = _pass(
                PropertyName.SM,
                statement=(
                    f"verified to order {n}: both hankel(seq, {n}) and hankel(shift(seq), {n}) "
                    "are positive definite"
                ),
                **fields,
            )
        else:
            label, k, minors = definite if definite is not None else singular
            idx = list(range(k + 1))
            indeterminate = definite is None
            cert = _fail(
                PropertyName.SM,
                Witness(rows=idx, cols=idx, value=minors[k].to_json(), matrix=label),
                statement=f"leading principal minor of size {k + 1} of the {label} matrix is not positive",
                indeterminate=indeterminate,
                notes=[INDETERMINATE_NOTE] if indeterminate else [],
                **fields,
            )
        logger.info("SM check", extra={"property": "SM", "result": cert.result.value})
        return cert

    def check_q_sm(self, seq: Sequence, n: int, max_order: int) -> Certificate:
        """q-TP of hankel(seq, n) up to the given minor order."""
        self._check_hankel_cap(n)
        cert = self.check_tp(hankel(seq, n), max_order, prop=PropertyName.Q_SM, matrix_label="hankel")
        return cert

    def check_psm(self, seq: Sequence, n: int, qvalues: Sequence) -> Certificate:
        """
        check_sm at each sampled q >= 0.

        Points where the SM check is indeterminate (a singular Hankel) are
        resolved by full TP enumeration of both Hankel matrices when the caps
        allow it.
        """
        grid = [normalize_rational(parse_rational(x)) for x in qvalues]
        negative = [x for x in grid if x < 0]
        if negative:
            raise NegativeQValue(f"PSM grid contains negative values: {[format_rational(x) for x in negative]}")
        self._check_hankel_cap(n)
        polys = as_qpolys(seq)
        grid_labels = [format_rational(x) for x in grid]
        notes: list[str] = []
        fields = dict(
            matrix_size=n + 1,
            minor_order=n + 1,
            q_grid=grid_labels,
            method=CheckMethod.GRID,
        )

        for x, label in zip(grid, grid_labels):
            values = [p.evaluate(x) for p in polys]
            point = self.check_sm(values, n)
            if point.passed:
                continue
            if point.indeterminate:
                resolved = self._resolve_singular(values, n)
                if resolved is True:
                    notes.append(f"q={label}: singular Hankel, both Hankel matrices totally positive by enumeration")
                    continue
                if resolved is None:
                    notes.append(f"q={label}: {INDETERMINATE_NOTE}, enumeration exceeds the minor order cap")
                    witness = point.witness.model_copy(update={"q": label})
                    cert = _fail(
                        PropertyName.PSM,
                        witness,
                        statement=f"SM at q={label} is {INDETERMINATE_NOTE}",
                        indeterminate=True,
                        notes=notes,
                        **fields,
                    )
                    logger.info("PSM check", extra={"property": "PSM", "result": cert.result.value})
                    return cert
                point = resolved
            witness = point.witness.model_copy(update={"q": label})
            cert = _fail(
                PropertyName.PSM,
                witness,
                statement=f"the specialization at q={label} is not SM to order {n}",
                notes=notes,
                **fields,
            )
            logger.info("PSM check", extra={"property": "PSM", "result": cert.result.value})
            return cert

        cert = _pass(
            PropertyName.PSM,
            statement=f"verified to order {n} at q in {{{', '.join(grid_labels)}}}",
            notes=notes,
            **fields,
        )
        logger.info("PSM check", extra={"property": "PSM", "result": cert.result.value})
        return cert

    def _resolve_singular(self, values: list, n: int):
        """True if both Hankels are TP, a failing Certificate if not, None if capped."""
        order = n + 1
        if order > self.caps.max_minor_order or order > self.caps.max_qtp_matrix_size:
            return None
        for label, s in (("hankel", values), ("shifted_hankel", shift(values))):
            cert = self.check_tp(hankel(s, n), order, matrix_label=label)
            if not cert.passed:
                return cert
        return True

    # ------------------------------------------------------------------
    # Window inequalities
    # ------------------------------------------------------------------

    def check_log_convex(self, seq: Sequence, strict: bool = False) -> Certificate:
        """a_k a_{k+2} - a_{k+1}^2 >=_q 0 (or nonzero and >=_q 0 when strict)."""
        terms = as_qpolys(seq)
        if len(terms) < 3:
            raise TooShort("Log-convexity needs at least 3 terms")
        for k in range(len(terms) - 2):
            diff = terms[k] * terms[k + 2] - terms[k + 1] * terms[k + 1]
            if not diff.is_nonneg() or (strict and diff.is_zero):
                cert = _fail(
                    PropertyName.LOG_CONVEX,
                    Witness(index=k, value=diff.to_json()),
                    matrix_size=len(terms),
                    method=CheckMethod.WINDOW,
                    statement=f"a_{k} a_{k + 2} - a_{k + 1}^2 is not {'positive' if strict else 'nonnegative'}",
                )
                logger.info("Log-convexity check", extra={"property": "LogConvex", "result": "fail"})
                return cert
        word = "positive" if strict else "nonnegative"
        logger.info("Log-convexity check", extra={"property": "LogConvex", "result": "pass"})
        return _pass(
            PropertyName.LOG_CONVEX,
            matrix_size=len(terms),
            method=CheckMethod.WINDOW,
            statement=f"verified to order {len(terms)}: every window a_k a_(k+2) - a_(k+1)^2 is {word}",
        )

    def check_log_concave(self, seq: Sequence) -> Certificate:
        terms = as_qpolys(seq)
        if len(terms) < 3:
            raise TooShort("Log-concavity needs at least 3 terms")
        for k in range(len(terms) - 2):
            diff = terms[k + 1] * terms[k + 1] - terms[k] * terms[k + 2]
            if not diff.is_nonneg():
                logger.info("Log-concavity check", extra={"property": "LogConcave", "result": "fail"})
                return _fail(
                    PropertyName.LOG_CONCAVE,
                    Witness(index=k, value=diff.to_json()),
                    matrix_size=len(terms),
                    method=CheckMethod.WINDOW,
                    statement=f"a_{k + 1}^2 - a_{k} a_{k + 2} is negative",
                )
        logger.info("Log-concavity check", extra={"property": "LogConcave", "result": "pass"})
        return _pass(
            PropertyName.LOG_CONCAVE,
            matrix_size=len(terms),
            method=CheckMethod.WINDOW,
            statement=f"verified to order {len(terms)}: every window a_(k+1)^2 - a_k a_(k+2) is nonnegative",
        )

    def check_pf(self, seq: Sequence, max_order: int) -> Certificate:
        """Polya frequency: minors of the finite Toeplitz matrix up to max_order."""
        terms = as_qpolys(seq)
        if not terms:
            raise TooShort("PF check needs at least one term")
        return self.check_tp(toeplitz(terms, len(terms) - 1), max_order, prop=PropertyName.PF, matrix_label="toeplitz")
