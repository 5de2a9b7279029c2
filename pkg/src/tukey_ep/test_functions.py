"""Benchmark objectives with known optima and conventional box bounds.

Analytic gradients are provided purely so the test suite can cross-check
each objective against finite differences; the optimizer never uses them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "ackley",
    "rosenbrock",
    "sphere",
    "ackley_gradient",
    "rosenbrock_gradient",
    "sphere_gradient",
    "BenchmarkSpec",
    "get_benchmark",
    "BENCHMARK_NAMES",
]


def ackley(x) -> float:
    x = np.asarray(x, dtype=float)
    if x.size < 1:
        raise ValueError("ackley requires dimension >= 1")
    out = (
        -20.0 * np.exp(-0.2 * np.sqrt(np.mean(x**2)))
        - np.exp(np.mean(np.cos(2.0 * np.pi * x)))
        + 20.0
        + np.e
    )
    return float(out)


def ackley_gradient(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    n = x.size
    s = np.sqrt(np.mean(x**2))
    c = np.mean(np.cos(2.0 * np.pi * x))
    # radial term is singular at the origin; callers sample away from it
    radial = 4.0 * np.exp(-0.2 * s) * x / (n * s)
    cosine = (2.0 * np.pi / n) * np.exp(c) * np.sin(2.0 * np.pi * x)
    return radial + cosine


def rosenbrock(x) -> float:
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        raise ValueError("rosenbrock requires dimension >= 2")
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


def rosenbrock_gradient(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    grad = np.zeros_like(x)
    diff = x[1:] - x[:-1] ** 2
    grad[:-1] += -400.0 * x[:-1] * diff - 2.0 * (1.0 - x[:-1])
    grad[1:] += 200.0 * diff
    return grad


def sphere(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(x**2))


def sphere_gradient(x) -> np.ndarray:
    return 2.0 * np.asarray(x, dtype=float)


@dataclass(frozen=True)
class BenchmarkSpec:
    """One registered benchmark: objective, gradient, bounds, and optimum."""

    name: str
    dimension: int
    bounds: tuple[tuple[float, float], ...]
    optimum_location: tuple[float, ...]
    optimum_value: float
    objective: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]


_REGISTRY = {
    "ackley": (ackley, ackley_gradient, (-32.768, 32.768), 20),
    "rosenbrock": (rosenbrock, rosenbrock_gradient, (-2.048, 2.048), 2),
    "sphere": (sphere, sphere_gradient, (-5.12, 5.12), 2),
}

BENCHMARK_NAMES = tuple(sorted(_REGISTRY))


def get_benchmark(name: str, dimension: int | None = None) -> BenchmarkSpec:
    """Look up a benchmark by name, with its conventional default dimension."""
    try:
        objective, gradient, box, default_dim = _REGISTRY[name.lower()]
    except KeyError:
        raise ValueError(f"unknown benchmark {name!r}; choose from {BENCHMARK_NAMES}") from None
    dim = default_dim if dimension is None else int(dimension)
    if dim < 1 or (name.lower() == "rosenbrock" and dim < 2):
        raise ValueError(f"invalid dimension {dim} for benchmark {name!r}")
    optimum = tuple(1.0 for _ in range(dim)) if name.lower() == "rosenbrock" else tuple(0.0 for _ in range(dim))
    return BenchmarkSpec(
        name=name.lower(),
        dimension=dim,
        bounds=tuple(box for _ in range(dim)),
        optimum_location=optimum,
        optimum_value=0.0,
        objective=objective,
        gradient=gradient,
    )
