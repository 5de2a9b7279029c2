"""Multi-trial execution and trajectory aggregation.

Each trial runs on its own random stream derived as (seed, trial index),
so results are independent of execution order and worker count.  Workers
come from the TUKEY_EP_WORKERS environment variable when set, else from
the configuration.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable

import numpy as np

from ..distributions import RngStream
from ..dragonian import DragonianGivens, DragonianVars, FitnessConfig, dragonian_fitness
from ..ep_engine import RunResult, evolve
from ..errors import ConfigurationError
from ..test_functions import get_benchmark
from .config import ExperimentConfig

__all__ = ["AggregateResult", "run_experiment", "aggregate_results", "build_objective"]

WORKERS_ENV_VAR = "TUKEY_EP_WORKERS"


@dataclass
class AggregateResult:
    """Per-generation statistics of best-so-far across trials."""

    generations: list[int]
    evaluations: list[int]
    overall_best: list[float]
    mean_best: list[float]
    std_best: list[float]


def _antenna_objective(x, givens: DragonianGivens, fc: FitnessConfig) -> float:
    return dragonian_fitness(givens, DragonianVars(float(x[0]), float(x[1])), fc)


def build_objective(config: ExperimentConfig) -> Callable[[np.ndarray], float]:
    """Resolve the configured objective to a picklable callable."""
    if config.objective == "dragonian":
        return partial(
            _antenna_objective,
            givens=config.dragonian.givens(),
            fc=config.dragonian.fitness_config(),
        )
    return get_benchmark(config.objective, config.resolved_dimension()).objective


def _run_trial(config: ExperimentConfig, trial: int) -> RunResult:
    objective = build_objective(config)
    return evolve(
        objective,
        config.evolution_config(),
        config.scheme_config(),
        rng=RngStream(config.seed, trial),
    )


def _resolve_workers(config: ExperimentConfig) -> int:
    env = os.environ.get(WORKERS_ENV_VAR)
    if env is not None:
        try:
            workers = int(env)
        except ValueError:
            raise ConfigurationError(
                f"{WORKERS_ENV_VAR} must be an integer, got {env!r}"
            ) from None
    else:
        workers = config.workers
    if workers < 1:
        raise ConfigurationError(f"worker count must be >= 1, got {workers}")
    return workers


def run_experiment(config: ExperimentConfig) -> tuple[list[RunResult], AggregateResult]:
    """Run all trials on streams (seed, 0..trials-1) and aggregate them.

    Trial results are committed in trial-index order whatever the worker
    count, so output files are identical for any parallelism level.
    """
    config.validate()
    workers = min(_resolve_workers(config), config.trials)
    trials = range(config.trials)
    if workers == 1:
        results = [_run_trial(config, t) for t in trials]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(partial(_run_trial, config), trials))
    return results, aggregate_results(results)


def aggregate_results(results: list[RunResult]) -> AggregateResult:
    """Aggregate best-so-far trajectories, truncated to the common length."""
    if not results:
        raise ValueError("cannot aggregate an empty result list")
    common = min(len(r.records) for r in results)
    reference = results[0].records[:common]
    best = np.array([[rec.best_so_far for rec in r.records[:common]] for r in results])
    return AggregateResult(
        generations=[rec.generation for rec in reference],
        evaluations=[rec.evaluations for rec in reference],
        overall_best=[float(v) for v in best.min(axis=0)],
        mean_best=[float(v) for v in best.mean(axis=0)],
        std_best=[float(v) for v in best.std(axis=0)],
    )
