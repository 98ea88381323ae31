"""Samplers and densities for the step-length and reference laws.

Everything samples by inverse CDF, so a draw consumes exactly one uniform
and unit tests can force the uniform.  Uniforms come from :class:`RngStream`,
a counter-based generator: draw ``i`` of stream ``k`` under seed ``s`` is

    u_i = mix64(base(s, k) + (i + 1) * GOLDEN) >> 11  scaled to [0, 1)
    base(s, k) = mix64(mix64(s) ^ mix64(k ^ STREAM_SALT))

where ``mix64`` is the splitmix64 finalizer and GOLDEN = 2^64 / phi.  The
mapping is pure 64-bit integer arithmetic, identical across platforms, and
random-access: a stream can be generated in vectorized blocks or one value
at a time with bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_STREAM_SALT = 0x632BE59BD9B4E019
_INV_2_53 = 1.0 / (1 << 53)


def _mix64(z: int) -> int:
    z = (z + _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z + np.uint64(_GOLDEN))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def stream_base(seed: int, stream_index: int) -> int:
    """64-bit base state of stream ``stream_index`` under ``seed``."""
    return _mix64(_mix64(seed & _MASK) ^ _mix64((stream_index ^ _STREAM_SALT) & _MASK))


@dataclass
class RngStream:
    """Deterministic uniform stream identified by (seed, stream_index)."""

    seed: int
    stream_index: int = 0

    def __post_init__(self) -> None:
        self._base = stream_base(self.seed, self.stream_index)
        self._counter = 0

    def next_uniform(self) -> float:
        u = self.uniforms(1)[0]
        return float(u)

    def uniforms(self, n: int) -> np.ndarray:
        """Next ``n`` uniforms on [0, 1) as a float64 array; advances the counter."""
        idx = np.arange(self._counter + 1, self._counter + n + 1, dtype=np.uint64)
        self._counter += n
        bits = _mix64_array(np.uint64(self._base) + idx * np.uint64(_GOLDEN))
        return (bits >> np.uint64(11)).astype(np.float64) * _INV_2_53


def uniform_block(seed: int, stream_indices: np.ndarray, count: int) -> np.ndarray:
    """Uniform matrix, one row per stream, ``count`` values per row.

    Row ``j`` equals ``RngStream(seed, stream_indices[j]).uniforms(count)``
    bit for bit; this is the bulk path used by ensemble simulation.
    """
    s = _mix64(seed & _MASK)
    bases = _mix64_array(
        np.uint64(s) ^ _mix64_array(stream_indices.astype(np.uint64)
                                    ^ np.uint64(_STREAM_SALT))
    )
    idx = np.arange(1, count + 1, dtype=np.uint64)
    states = bases[:, None] + idx[None, :] * np.uint64(_GOLDEN)
    bits = _mix64_array(states)
    return (bits >> np.uint64(11)).astype(np.float64) * _INV_2_53


# ---------------------------------------------------------------------------
# inverse CDFs (exact transforms of a single uniform)
# ---------------------------------------------------------------------------

def exponential_icdf(rate: float, u):
    """Inverse CDF of the exponential law: -log(1-u)/rate."""
    if rate <= 0:
        raise ValueError("rate must be > 0")
    return -np.log1p(-np.asarray(u)) / rate


def folded_cauchy_icdf(scale_a: float, u):
    """Inverse CDF of the folded Cauchy law with density (2/pi) a/(r^2+a^2).

    The CDF is (2/pi) arctan(r/a), hence r = a tan(pi u / 2).
    """
    if scale_a <= 0:
        raise ValueError("scale_a must be > 0")
    return scale_a * np.tan(0.5 * np.pi * np.asarray(u))


def circular_cauchy_radius_icdf(shape_b: float, u):
    """Radial inverse CDF of the circular bivariate Cauchy law.

    Integrating (b/2pi)(b^2+r^2)^{-3/2} over the disk of radius r gives
    F(r) = 1 - b/sqrt(b^2+r^2), so r = b sqrt((1-u)^{-2} - 1).
    """
    if shape_b <= 0:
        raise ValueError("shape_b must be > 0")
    one_minus = 1.0 - np.asarray(u)
    return shape_b * np.sqrt(one_minus ** -2 - 1.0)


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

def sample_exponential(rate: float, rng: RngStream) -> float:
    """One exponential draw with the given rate (mean 1/rate)."""
    return float(exponential_icdf(rate, rng.next_uniform()))


def sample_folded_cauchy(scale_a: float, rng: RngStream) -> float:
    """One folded-Cauchy draw with scale ``scale_a``."""
    return float(folded_cauchy_icdf(scale_a, rng.next_uniform()))


def sample_uniform_angle(rng: RngStream) -> float:
    """Angle uniform on [0, 2*pi)."""
    return 2.0 * math.pi * rng.next_uniform()


def sample_circular_cauchy(shape_b: float, rng: RngStream) -> tuple[float, float]:
    """One draw from the circular bivariate Cauchy law: radius by inverse
    CDF, direction uniform; consumes two uniforms (radius first)."""
    r = float(circular_cauchy_radius_icdf(shape_b, rng.next_uniform()))
    theta = sample_uniform_angle(rng)
    return (r * math.cos(theta), r * math.sin(theta))


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------

def folded_cauchy_pdf(r: float, scale_a: float) -> float:
    """Density (2/pi) a / (r^2 + a^2) on r >= 0."""
    if scale_a <= 0:
        raise ValueError("scale_a must be > 0")
    if r < 0:
        raise ValueError("r must be >= 0")
    return (2.0 / math.pi) * scale_a / (r * r + scale_a * scale_a)


def circular_cauchy_pdf(x1: float, x2: float, shape_b: float) -> float:
    """Density (1/2pi) b (b^2 + x1^2 + x2^2)^{-3/2} of the circular
    bivariate Cauchy law with shape ``shape_b``."""
    if shape_b <= 0:
        raise ValueError("shape_b must be > 0")
    return shape_b / (2.0 * math.pi * (shape_b * shape_b + x1 * x1 + x2 * x2) ** 1.5)
