"""From device susceptibilities and a monochromatic signal to the two-mode
coherent state that carries the rescaled amplitudes (A', B').

All downstream math works in rescaled units A' = norm * A, B' = norm * B, in
which the quantum Fisher information is exactly 2 * identity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateDevice

MU_SLACK = 1e-12


@dataclass(frozen=True)
class DeviceResponse:
    chi_x: complex
    chi_p: complex
    integration_time: float

    def __post_init__(self):
        if not self.integration_time > 0:
            raise ValueError("integration_time must be positive")
        if abs(self.chi_x) ** 2 + abs(self.chi_p) ** 2 == 0:
            raise DegenerateDevice("both susceptibilities vanish")


@dataclass(frozen=True)
class EncodingParams:
    norm: float
    mu: float
    mu_signed: float | None = None  # raw value before taking |.|, for debugging

    def __post_init__(self):
        if self.norm < 0:
            raise ValueError("norm must be non-negative")
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must lie in [0, 1], got {self.mu}")


@dataclass(frozen=True)
class SignalParams:
    a: float
    b: float
    a_resc: float
    b_resc: float

    @classmethod
    def from_physical(cls, a, b, norm):
        return cls(a, b, norm * a, norm * b)

    @classmethod
    def from_rescaled(cls, a_resc, b_resc, norm=1.0):
        if norm == 0:
            raise ValueError("cannot recover physical amplitudes with norm == 0")
        return cls(a_resc / norm, b_resc / norm, a_resc, b_resc)


@dataclass(frozen=True)
class TwoModeCoherentState:
    alpha1: complex
    alpha2: complex


def encoding_from_device(dev: DeviceResponse) -> EncodingParams:
    """Common norm of the signal vectors and the incompatibility mu.

    The defining expression for mu is signed; its magnitude is returned as
    ``mu`` and the raw value as ``mu_signed``. Rounding excess above 1 of at
    most ``MU_SLACK`` is clamped.
    """
    pi_t = math.pi * dev.integration_time
    norm2 = pi_t * (abs(dev.chi_x) ** 2 + abs(dev.chi_p) ** 2)
    if norm2 == 0:
        raise DegenerateDevice("both susceptibilities vanish")
    cx, cp = complex(dev.chi_x), complex(dev.chi_p)
    raw = 2.0 * pi_t / norm2 * (cp.real * cx.imag - cx.real * cp.imag)
    mu = abs(raw)
    if mu > 1.0 + MU_SLACK:
        raise DegenerateDevice(f"|mu| = {mu} exceeds 1; inconsistent susceptibilities")
    return EncodingParams(math.sqrt(norm2), min(mu, 1.0), raw)


def encode_state(enc: EncodingParams, sig: SignalParams) -> TwoModeCoherentState:
    return coherent_amplitudes(enc.mu, sig.a_resc, sig.b_resc)


def coherent_amplitudes(mu, a_resc, b_resc) -> TwoModeCoherentState:
    s = math.sqrt(2.0)
    return TwoModeCoherentState(
        complex(a_resc, mu * b_resc) / s,
        complex(math.sqrt(max(0.0, 1.0 - mu * mu)) * b_resc / s, 0.0),
    )
