"""Quantum geometric tensor, QFIM, incompatibility coefficient and the
normalized square-root information regrets of the two-mode coherent model.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CrbViolation, DegenerateTensor, OutOfRangeMu
from .model import EncodingParams, SignalParams, coherent_amplitudes

PSD_SLACK = 1e-12
CRB_SLACK = 1e-12
ORACLE_PSD_SLACK = 1e-8


@dataclass(frozen=True)
class GeometricTensor:
    q11: float
    q22: float
    q12: complex
    # finite-difference tensors at mu = 1 sit on the PSD boundary up to rounding
    psd_tol: float = field(default=PSD_SLACK, compare=False, repr=False)

    def __post_init__(self):
        if self.q11 < -self.psd_tol or self.q22 < -self.psd_tol:
            raise ValueError("diagonal entries must be non-negative")
        if np.linalg.eigvalsh(self.matrix()).min() < -self.psd_tol:
            raise ValueError("geometric tensor is not positive semidefinite")

    @property
    def q21(self) -> complex:
        return self.q12.conjugate()

    def matrix(self) -> np.ndarray:
        return np.array([[self.q11, self.q12], [self.q21, self.q22]], dtype=complex)

    def scaled(self, k: float) -> "GeometricTensor":
        return GeometricTensor(k * self.q11, k * self.q22, k * self.q12)


@dataclass(frozen=True)
class FisherMatrix:
    f11: float
    f12: float
    f22: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.f11, self.f12], [self.f12, self.f22]])

    @classmethod
    def from_array(cls, m) -> "FisherMatrix":
        m = np.asarray(m, dtype=float)
        return cls(float(m[0, 0]), float(0.5 * (m[0, 1] + m[1, 0])), float(m[1, 1]))


@dataclass(frozen=True)
class RegretPair:
    d1: float
    d2: float


def _check_mu(mu):
    if not 0.0 <= mu <= 1.0:
        raise OutOfRangeMu(f"mu must lie in [0, 1], got {mu}")


def geometric_tensor(mu: float) -> GeometricTensor:
    """Closed form ``2 * [[1, i mu], [-i mu, 1]]`` in rescaled units."""
    _check_mu(mu)
    return GeometricTensor(2.0, 2.0, 2j * mu)


def _amplitudes(mu, theta):
    st = coherent_amplitudes(mu, theta[0], theta[1])
    return np.array([st.alpha1, st.alpha2])


def _log_overlap(bra, delta):
    """log <bra|bra + delta> summed over modes.

    Same value as ``-|a|^2/2 - |b|^2/2 + conj(a) b`` but written in terms of
    the displacement ``delta = b - a`` so nothing of size ``|a|^2`` cancels.
    """
    return complex(np.sum(-0.5 * np.abs(delta) ** 2 + 1j * (bra.conjugate() * delta).imag))


def geometric_tensor_oracle(enc: EncodingParams, sig: SignalParams, h: float = 1e-4) -> GeometricTensor:
    """Numerical geometric tensor from coherent-state overlaps.

    Let ``L(s, t) = log <psi(s)|psi(t)>``. On the diagonal ``L = 0``,
    ``d_t L = <psi|d psi>``, ``d_s L = <d psi|psi>`` and
    ``d_s d_t exp(L) = <d psi|d psi>``, so the pure-state tensor
    ``4(<d_j psi|d_k psi> - <d_j psi|psi><psi|d_k psi>)`` collapses to
    ``4 d_{s_j} d_{t_k} L``. That mixed derivative is taken by a 4-point
    central stencil with step ``h``.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    mu = enc.mu
    theta = np.array([sig.a_resc, sig.b_resc], dtype=float)
    eye = np.eye(2) * h

    def lg(ds, dt):
        # amplitudes are linear in (A', B'), so the ket-bra displacement is
        # the image of dt - ds
        return _log_overlap(_amplitudes(mu, theta + ds), _amplitudes(mu, dt - ds))

    q = np.empty((2, 2), dtype=complex)
    for j in range(2):
        for k in range(2):
            q[j, k] = (
                lg(eye[j], eye[k]) - lg(eye[j], -eye[k]) - lg(-eye[j], eye[k]) + lg(-eye[j], -eye[k])
            ) / (h * h)
    q = 0.5 * (q + q.conj().T)
    return GeometricTensor(float(q[0, 0].real), float(q[1, 1].real), complex(q[0, 1]), psd_tol=ORACLE_PSD_SLACK)


def qfim(gt: GeometricTensor) -> FisherMatrix:
    return FisherMatrix(gt.q11, gt.q12.real, gt.q22)


def incompatibility(gt: GeometricTensor) -> float:
    if gt.q11 <= 0 or gt.q22 <= 0:
        raise DegenerateTensor("incompatibility needs positive diagonal entries")
    return abs(gt.q12.imag) / math.sqrt(gt.q11 * gt.q22)


def regrets(qf: FisherMatrix, cf: FisherMatrix) -> RegretPair:
    """Normalized square-root regrets ``sqrt((F_q - F_c) / F_q)`` per parameter."""
    out = []
    for fq, fc in ((qf.f11, cf.f11), (qf.f22, cf.f22)):
        if fc > fq + CRB_SLACK:
            raise CrbViolation(f"classical information {fc} exceeds quantum {fq}")
        if fq <= 0:
            raise DegenerateTensor("quantum Fisher information must be positive")
        out.append(math.sqrt(max(0.0, (fq - fc) / fq)))
    return RegretPair(*out)
