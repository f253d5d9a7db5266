"""
Built-in recursive specs and their stated bidiagonal certificates.

Preset names match the closed-form family names so each preset's
q-Catalan-like numbers can be compared with its family.
"""
from dataclasses import dataclass
from typing import Optional

from app.errors import UnknownPreset
from app.models.schemas import Certificate
from app.services.positivity import PositivityService
from app.services.qpoly import QPoly
from app.services.recursive.bidiagonal import BidiagonalCertificate, certify_jacobi
from app.services.recursive.recursive_matrix import IndexPolynomial, RecursiveSpec, jacobi_of

q = QPoly.q()
_ONE = QPoly.one()
_ZERO = QPoly.zero()


@dataclass(frozen=True)
class RecursivePreset:
    spec: RecursiveSpec
    certificate: Optional[BidiagonalCertificate]
    description: str

    @property
    def name(self) -> str:
        return self.spec.name


def _preset(name, sigma, tau, certificate, description) -> RecursivePreset:
    return RecursivePreset(RecursiveSpec(name, sigma, tau), certificate, description)


_PRESETS: dict[str, RecursivePreset] = {
    p.name: p
    for p in (
        _preset(
            "bell_poly",
            IndexPolynomial.affine(q, 1),  # k + q
            IndexPolynomial.affine(0, q),  # k q
            BidiagonalCertificate(IndexPolynomial.affine(-1, 1), IndexPolynomial.constant(q)),
            "s_k = k+q, t_k = kq; b_k = k-1, c_k = q",
        ),
        _preset(
            "eulerian_poly",
            IndexPolynomial.affine(q, q + 1),  # (k+1)q + k
            IndexPolynomial((0, 0, q)),  # k^2 q
            BidiagonalCertificate(IndexPolynomial.affine(-q, q), IndexPolynomial.affine(0, 1)),
            "s_k = (k+1)q+k, t_k = k^2 q; b_k = (k-1)q, c_k = k",
        ),
        _preset(
            "q_schroder",
            IndexPolynomial.constant(2 * q + 1, {0: q + 1}),
            IndexPolynomial.constant(q * (q + 1)),
            BidiagonalCertificate(IndexPolynomial.constant(q, {1: _ZERO}), IndexPolynomial.constant(q + 1)),
            "s_0 = q+1, s_k = 2q+1, t_k = q(q+1); b_1 = 0, b_(k+1) = q, c_k = q+1",
        ),
        _preset(
            "q_delannoy",
            IndexPolynomial.constant(2 * q + 1),
            IndexPolynomial.constant(q * (q + 1), {1: 2 * q * (q + 1)}),
            BidiagonalCertificate(
                IndexPolynomial.constant(q + 1, {1: _ONE}),
                IndexPolynomial.constant(q, {1: 2 * q}),
            ),
            "s_k = 1+2q, t_1 = 2q(1+q), t_k = q(1+q); b_1 = 1, b_(k+1) = q+1, c_1 = 2q, c_(k+1) = q",
        ),
        _preset(
            "narayana",
            IndexPolynomial.constant(q + 1, {0: q}),
            IndexPolynomial.constant(q),
            BidiagonalCertificate(IndexPolynomial.constant(1), IndexPolynomial.constant(q)),
            "s_0 = q, s_k = 1+q, t_k = q; b_k = 1, c_k = q",
        ),
        _preset(
            "narayana_B",
            IndexPolynomial.constant(q + 1),
            IndexPolynomial.constant(q, {1: 2 * q}),
            None,
            "s_k = 1+q, t_1 = 2q, t_k = q; certified through its contiguous minors",
        ),
        _preset(
            "morgan_voyce",
            IndexPolynomial.constant(1, {0: q + 1}),
            IndexPolynomial.constant(0, {1: q}),
            BidiagonalCertificate(IndexPolynomial.constant(1), IndexPolynomial.constant(0, {1: q})),
            "s_0 = q+1, s_k = 1, t_1 = q, t_(k+1) = 0; b_k = 1, c_1 = q, c_(k+1) = 0",
        ),
    )
}


def get_preset(name: str) -> RecursivePreset:
    if name not in _PRESETS:
        raise UnknownPreset(f"Unknown recursive preset: {name}. Available: {', '.join(available_presets())}")
    return _PRESETS[name]


def available_presets() -> list[str]:
    return list(_PRESETS)


def certify_preset(preset: RecursivePreset, size: int, positivity: Optional[PositivityService] = None) -> Certificate:
    """q-TP certificate for the preset's size x size Jacobi matrix."""
    return certify_jacobi(jacobi_of(preset.spec, size), preset.certificate, positivity)
