"""Portable deterministic random generation.

A SplitMix64 mixer derives seeds and substreams; xoshiro256++ generates
the stream; Gaussian variates come from a rational-approximation inverse
normal CDF (Acklam's coefficients, max relative error ~1.15e-9). Only
64-bit integer arithmetic, sqrt, and log are used, so identical seeds
give identical output on every platform.

Substream derivation: substream k of seed s starts from the (k+1)-th
SplitMix64 output of s, optionally re-mixed with a redraw attempt
counter. Streams for different substream indices are independent; one
uniform is consumed per variate, in generation order.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer: avalanche one 64-bit word."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Minimal SplitMix64 sequence, used only for state expansion."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return mix64(self._state)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256pp:
    """xoshiro256++ stream with SplitMix64 state expansion."""

    def __init__(self, seed: int):
        sm = SplitMix64(seed)
        self._s = [sm.next_u64() for _ in range(4)]
        if not any(self._s):  # all-zero state is the one forbidden point
            self._s[0] = _GOLDEN

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s0 + s3) & _MASK64, 23) + s0) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def next_unit(self) -> float:
        """Uniform float strictly inside (0, 1), 53 significant bits."""
        return ((self.next_u64() >> 11) + 0.5) * (2.0 ** -53)

    def next_normal(self) -> float:
        """Standard normal variate via the inverse CDF; one uniform each."""
        return normal_ppf(self.next_unit())


def substream_seed(seed: int, index: int, attempt: int = 0) -> int:
    """Derive the root seed of substream ``index`` (redraw ``attempt``)."""
    root = mix64((seed + (index + 1) * _GOLDEN) & _MASK64)
    return mix64((root + attempt * _GOLDEN) & _MASK64)


def substream(seed: int, index: int, attempt: int = 0) -> Xoshiro256pp:
    """Independent generator for substream ``index`` of ``seed``."""
    return Xoshiro256pp(substream_seed(seed, index, attempt))


# Acklam's rational approximation of the inverse normal CDF.
_PPF_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
          1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_PPF_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
          6.680131188771972e+01, -1.328068155288572e+01)
_PPF_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
          -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_PPF_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
          3.754408661907416e+00)
_PPF_LOW = 0.02425
_PPF_HIGH = 1.0 - _PPF_LOW


def normal_ppf(p: float) -> float:
    """Inverse standard normal CDF for p in (0, 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"normal_ppf requires p in (0, 1), got {p!r}")
    a, b, c, d = _PPF_A, _PPF_B, _PPF_C, _PPF_D
    if p < _PPF_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        return ((((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
                / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0))
    if p > _PPF_HIGH:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        return -((((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
                 / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0))
    q = p - 0.5
    s = q * q
    return ((((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * q
            / (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0))
