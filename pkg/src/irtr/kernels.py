"""Hot numeric kernels, each with a numba loop and a vectorized numpy twin.

The public names (``uniform_block``, ``normal_block``, ``holevo_objective``)
dispatch to whichever backend :mod:`irtr._accel` selected. The ``*_numba``
and ``*_numpy`` variants stay importable for tests and benchmarks.

Random stream: SplitMix64 evaluated in counter mode. Draw ``k`` of a stream
with seed ``s`` is ``mix(s + (k + 1) * GAMMA)`` in 64-bit wrapping
arithmetic, so any block of the stream can be generated independently and
both backends produce identical integers.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit

GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_INV53 = 1.0 / 9007199254740992.0  # 2**-53
_TWO_PI = 2.0 * math.pi


# --- SplitMix64 -------------------------------------------------------------

def _splitmix_numpy(seed, start, n):
    idx = np.arange(n, dtype=np.uint64) + np.uint64(start) + _ONE
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + idx * GAMMA
        z = (z ^ (z >> _S30)) * _M1
        z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def _mix_scalar(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


_mix = njit(_mix_scalar)


def _splitmix_loop(seed, start, n):
    out = np.empty(n, dtype=np.uint64)
    k = start
    for i in range(n):
        k += _ONE
        out[i] = _mix(seed + k * GAMMA)
    return out


def _normal_loop(seed, start, n_pairs):
    out = np.empty(2 * n_pairs)
    k = start
    for i in range(n_pairs):
        k += _ONE
        z1 = _mix(seed + k * GAMMA)
        k += _ONE
        z2 = _mix(seed + k * GAMMA)
        u1 = (np.float64(z1 >> _S11) + 1.0) * _INV53
        u2 = np.float64(z2 >> _S11) * _INV53
        r = math.sqrt(-2.0 * math.log(u1))
        t = _TWO_PI * u2
        out[2 * i] = r * math.cos(t)
        out[2 * i + 1] = r * math.sin(t)
    return out


def _normal_numpy(seed, start, n_pairs):
    raw = _splitmix_numpy(seed, start, 2 * n_pairs)
    u1 = ((raw[0::2] >> _S11).astype(np.float64) + 1.0) * _INV53
    u2 = (raw[1::2] >> _S11).astype(np.float64) * _INV53
    r = np.sqrt(-2.0 * np.log(u1))
    t = _TWO_PI * u2
    out = np.empty(2 * n_pairs)
    out[0::2] = r * np.cos(t)
    out[1::2] = r * np.sin(t)
    return out


def _uniform_numpy(seed, start, n):
    return (_splitmix_numpy(seed, start, n) >> _S11).astype(np.float64) * _INV53


def _uniform_loop(seed, start, n):
    out = np.empty(n)
    k = start
    for i in range(n):
        k += _ONE
        out[i] = np.float64(_mix(seed + k * GAMMA) >> _S11) * _INV53
    return out


# --- weighted secant-squared objective with pole masking --------------------

def _holevo_loop(phis, w, shift, pole_eps):
    out = np.empty(phis.shape[0])
    for i in range(phis.shape[0]):
        c1 = math.cos(phis[i])
        c2 = math.cos(phis[i] + shift)
        if abs(c1) < pole_eps or abs(c2) < pole_eps:
            out[i] = math.inf
        else:
            out[i] = w / (c1 * c1) + (1.0 - w) / (c2 * c2)
    return out


def _holevo_numpy(phis, w, shift, pole_eps):
    c1 = np.cos(phis)
    c2 = np.cos(phis + shift)
    with np.errstate(divide="ignore"):
        out = w / (c1 * c1) + (1.0 - w) / (c2 * c2)
    out[(np.abs(c1) < pole_eps) | (np.abs(c2) < pole_eps)] = np.inf
    return out


splitmix_numpy = _splitmix_numpy
uniform_block_numpy = _uniform_numpy
normal_block_numpy = _normal_numpy
holevo_objective_numpy = _holevo_numpy

splitmix_numba = njit(_splitmix_loop)
uniform_block_numba = njit(_uniform_loop)
normal_block_numba = njit(_normal_loop)
holevo_objective_numba = njit(_holevo_loop)

if USE_NUMBA:
    _splitmix_impl = splitmix_numba
    _uniform_impl = uniform_block_numba
    _normal_impl = normal_block_numba
    _holevo_impl = holevo_objective_numba
else:
    _splitmix_impl = splitmix_numpy
    _uniform_impl = uniform_block_numpy
    _normal_impl = normal_block_numpy
    _holevo_impl = holevo_objective_numpy


def splitmix(seed, start, n):
    """Raw 64-bit draws ``start .. start + n - 1`` of the stream ``seed``."""
    return _splitmix_impl(np.uint64(seed), np.uint64(start), int(n))


def uniform_block(seed, start, n):
    """Uniform doubles on [0, 1) with 53 random bits each."""
    return _uniform_impl(np.uint64(seed), np.uint64(start), int(n))


def normal_block(seed, start, n_pairs):
    """``2 * n_pairs`` standard normals by Box-Muller, consuming 2 draws per pair."""
    return _normal_impl(np.uint64(seed), np.uint64(start), int(n_pairs))


def holevo_objective(phis, w, shift, pole_eps=1e-6):
    """``w / cos(phi)**2 + (1 - w) / cos(phi + shift)**2``, +inf near either pole."""
    phis = np.ascontiguousarray(phis, dtype=np.float64)
    return _holevo_impl(phis, float(w), float(shift), float(pole_eps))
