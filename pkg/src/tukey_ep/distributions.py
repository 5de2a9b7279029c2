"""Random variate generation for the mutation operators.

The Tukey-lambda family is defined through its quantile function

    Q(p) = location + scale * (p**shape - (1-p)**shape) / shape

which has a closed form for every shape except zero, where the logistic
limit ``location + scale*log(p/(1-p))`` applies.  Sampling is by inverse
transform on uniform draws; the CDF is recovered numerically by bisecting
the monotone quantile.  Standard Gaussian and Cauchy samplers share the
same stream abstraction so callers can replay any draw sequence exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TukeyLambdaParams",
    "RngStream",
    "tukey_quantile",
    "tukey_sample",
    "tukey_cdf",
    "gaussian_sample",
    "cauchy_sample",
    "cauchy_quantile",
]

# Below this magnitude the power form of the quantile is numerically 0/0
# and the logistic limit is used instead.
SHAPE_EPS = 1e-8

# Uniform draws are clipped into [UNIT_EPS, 1 - UNIT_EPS] so quantiles of
# non-positive shapes never see the divergent endpoints.
UNIT_EPS = 2.0**-53

_CDF_MAX_ITER = 200


@dataclass(frozen=True)
class TukeyLambdaParams:
    """Location/scale/shape triple defining one Tukey-lambda distribution.

    ``shape`` may be any finite real; zero selects the logistic limit.
    ``scale`` must be strictly positive.
    """

    location: float
    scale: float
    shape: float

    def __post_init__(self) -> None:
        for name in ("location", "scale", "shape"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.scale <= 0.0:
            raise ValueError(f"scale must be > 0, got {self.scale!r}")


class RngStream:
    """Deterministic random stream keyed by (seed, stream).

    Backed by the counter-based Philox generator with the 128-bit key set
    to the pair, so identical ``(seed, stream)`` always replays the same
    variate sequence and distinct streams are statistically independent.
    Distinct streams may be consumed concurrently; a single stream must
    not be shared between concurrent callers.
    """

    def __init__(self, seed: int, stream: int = 0):
        if not 0 <= int(seed) < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
        if int(stream) < 0:
            raise ValueError(f"stream must be non-negative, got {stream!r}")
        self.seed = int(seed)
        self.stream = int(stream)
        key = np.array([self.seed, self.stream % 2**64], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream={self.stream})"

    def uniform(self, size: int | tuple[int, ...] | None = None):
        """Uniform draw(s) on [0, 1)."""
        return self._gen.random(size)

    def normal(self, size: int | tuple[int, ...] | None = None):
        """Standard normal draw(s)."""
        return self._gen.standard_normal(size)

    def integers(self, low: int, high: int, size: int | tuple[int, ...] | None = None):
        """Integer draw(s) uniform on [low, high)."""
        return self._gen.integers(low, high, size=size)


def _clip_unit(u):
    return np.clip(u, UNIT_EPS, 1.0 - UNIT_EPS)


def _quantile_core(params: TukeyLambdaParams, p):
    lam = params.shape
    if abs(lam) < SHAPE_EPS:
        core = np.log(p / (1.0 - p))
    else:
        core = (np.power(p, lam) - np.power(1.0 - p, lam)) / lam
    return params.location + params.scale * core


def tukey_quantile(params: TukeyLambdaParams, p):
    """Evaluate the quantile function at probability ``p`` (scalar or array).

    Strictly increasing on (0, 1); probabilities at or beyond the endpoints
    raise ``ValueError`` because the quantile diverges there for shapes <= 0.
    """
    p_arr = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(p_arr)) or np.any(p_arr <= 0.0) or np.any(p_arr >= 1.0):
        raise ValueError("p must lie strictly inside (0, 1)")
    result = _quantile_core(params, p_arr)
    if np.ndim(p) == 0:
        return float(result)
    return result


def tukey_sample(params: TukeyLambdaParams, rng: RngStream, size: int | None = None):
    """Inverse-transform sample(s): quantile applied to clipped uniform draws."""
    u = _clip_unit(rng.uniform(size))
    result = _quantile_core(params, u)
    if size is None:
        return float(result)
    return result


def tukey_cdf(params: TukeyLambdaParams, x: float, tol: float = 1e-12) -> float:
    """Invert the quantile at ``x`` by bisection in probability space.

    Converges unconditionally because the quantile is strictly monotone.
    For positive shapes the support is the finite interval
    ``location +- scale/shape``; arguments at or beyond its edges saturate
    to probability 0 or 1.
    """
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol!r}")

    if params.shape >= SHAPE_EPS:
        half_width = params.scale / params.shape
        if x <= params.location - half_width:
            return 0.0
        if x >= params.location + half_width:
            return 1.0

    lo, hi = UNIT_EPS, 1.0 - UNIT_EPS
    if x <= _quantile_core(params, lo):
        return lo
    if x >= _quantile_core(params, hi):
        return hi
    for _ in range(_CDF_MAX_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if _quantile_core(params, mid) < x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gaussian_sample(rng: RngStream, size: int | None = None):
    """Standard normal sample(s) from the stream."""
    result = rng.normal(size)
    if size is None:
        return float(result)
    return result


def cauchy_quantile(u):
    """Standard Cauchy quantile tan(pi*(u - 1/2)) of probabilities ``u``."""
    return np.tan(np.pi * (np.asarray(u, dtype=float) - 0.5))


def cauchy_sample(rng: RngStream, size: int | None = None):
    """Standard Cauchy sample(s) by inverse transform on clipped uniforms."""
    u = _clip_unit(rng.uniform(size))
    result = cauchy_quantile(u)
    if size is None:
        return float(result)
    return result
