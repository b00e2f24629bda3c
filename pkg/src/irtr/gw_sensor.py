"""Detuned interferometer: incompatibility from detuning and the
sensitivity frontier ``S = sqrt(e T) / norm`` for each signal quadrature.

The normalization ``norm`` is supplied by the caller. Frequencies only enter
through ratios, so any common unit works.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .tradeoff import QCRB, boundary_curve


@dataclass(frozen=True)
class DetunedConfig:
    signal_freq: float
    detuning: float
    bandwidth: float
    integration_time: float
    norm: float

    def __post_init__(self):
        if not self.signal_freq > 0:
            raise ValueError("signal frequency must be positive")
        if not self.detuning >= 0:
            raise ValueError("detuning must be non-negative")
        if not self.bandwidth > 0:
            raise ValueError("bandwidth must be positive")
        if not self.integration_time > 0:
            raise ValueError("integration time must be positive")
        if not self.norm > 0:
            raise ValueError("norm must be positive")


@dataclass(frozen=True)
class SensitivityPoint:
    s_a: float
    s_b: float


def mu_detuned(cfg: DetunedConfig) -> float:
    d, w, g = cfg.detuning, cfg.signal_freq, cfg.bandwidth
    return 2.0 * d * w / (g * g + d * d + w * w)


def sensitivity(e, cfg: DetunedConfig) -> float:
    return math.sqrt(e * cfg.integration_time) / cfg.norm


def sensitivity_frontier(cfg: DetunedConfig, n: int) -> list:
    curve = boundary_curve(mu_detuned(cfg), n)
    return [SensitivityPoint(sensitivity(p.e_a, cfg), sensitivity(p.e_b, cfg)) for p in curve.points]


def individual_qcrb_sensitivity(cfg: DetunedConfig) -> SensitivityPoint:
    s = sensitivity(QCRB, cfg)
    return SensitivityPoint(s, s)
