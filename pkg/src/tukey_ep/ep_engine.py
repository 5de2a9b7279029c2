"""Self-adaptive evolutionary programming with pluggable mutation operators.

Each individual is a pair of vectors: the solution ``x`` and per-component
step sizes ``eta``.  One offspring per parent is produced by log-normal
step-size adaptation

    eta'[j] = eta[j] * exp(tau_prime*N + tau*N_j)

followed by an additive perturbation ``x'[j] = x[j] + eta'[j]*Z_j`` where
``Z_j`` is a fresh standard Gaussian, standard Cauchy, or Tukey-lambda
draw depending on the operator assigned to the individual.  Survivors are
chosen by q-opponent tournament over the combined parent+offspring pool.

Three operator-selection schemes are supported:

* scheme 1 - every individual mutates with Tukey-lambda parameters drawn
  fresh for it each generation;
* scheme 2 - the population is split into three sub-populations, each
  sharing one freshly drawn (scale, shape) pair per generation;
* scheme 3 - the three sub-populations use exact Gaussian draws, exact
  Cauchy draws, and one freshly drawn Tukey-lambda pair, respectively.

Reproducibility contract: every stochastic step consumes the ``RngStream``
in a fixed documented order (operator assignment first, then per parent in
index order one adaptation call and one perturbation call, then one
tournament call), so a run is a pure function of (seed, configs, objective).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .distributions import (
    RngStream,
    TukeyLambdaParams,
    cauchy_sample,
    gaussian_sample,
    tukey_sample,
)
from .errors import ConfigurationError

__all__ = [
    "Scheme",
    "OperatorKind",
    "MutationOperator",
    "ScaleFactors",
    "SchemeConfig",
    "EvolutionConfig",
    "Individual",
    "GenerationRecord",
    "RunResult",
    "initialize_population",
    "self_adapt_eta",
    "mutate",
    "draw_tukey_params",
    "assign_operators",
    "subpopulation_sizes",
    "tournament_select",
    "evolve",
]


class Scheme(enum.IntEnum):
    """Operator/parameter selection policy."""

    PER_INDIVIDUAL = 1
    PER_SUBPOPULATION = 2
    FIXED_THIRDS = 3


class OperatorKind(enum.Enum):
    GAUSSIAN = "gaussian"
    CAUCHY = "cauchy"
    TUKEY = "tukey"


@dataclass(frozen=True)
class MutationOperator:
    """Per-individual mutation tag; Tukey tags carry their drawn parameters."""

    kind: OperatorKind
    params: TukeyLambdaParams | None = None

    def __post_init__(self) -> None:
        if self.kind is OperatorKind.TUKEY and self.params is None:
            raise ValueError("Tukey operator requires distribution parameters")


@dataclass(frozen=True)
class ScaleFactors:
    """Log-normal adaptation constants tau (per component) and tau' (shared)."""

    tau: float
    tau_prime: float

    @classmethod
    def for_dimension(cls, n: int) -> "ScaleFactors":
        if n < 1:
            raise ValueError(f"dimension must be >= 1, got {n}")
        return cls(tau=1.0 / math.sqrt(2.0 * math.sqrt(n)), tau_prime=1.0 / math.sqrt(2.0 * n))


@dataclass(frozen=True)
class SchemeConfig:
    """Scheme choice plus the affine ranges for drawn Tukey parameters.

    Drawn scale is ``beta_min + beta_range*u`` and drawn shape is
    ``lambda_min + lambda_range*u`` on fresh uniforms, so the defaults span
    scales [0.1, 2.1] and shapes [-1, 0.14] (Cauchy-like through
    Gaussian-like).  ``k`` fixes the sub-population size; leave ``None`` to
    derive it from the population size.
    """

    scheme: Scheme
    k: int | None = None
    beta_min: float = 0.1
    beta_range: float = 2.0
    lambda_min: float = -1.0
    lambda_range: float = 1.14

    def __post_init__(self) -> None:
        if self.beta_min <= 0.0 or self.beta_min + self.beta_range <= 0.0:
            raise ConfigurationError(
                "scale range must stay positive: "
                f"beta_min={self.beta_min}, beta_range={self.beta_range}"
            )
        for name in ("beta_min", "beta_range", "lambda_min", "lambda_range"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError(f"{name} must be finite")
        if self.k is not None and self.k < 1:
            raise ConfigurationError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class EvolutionConfig:
    """Population size, budget, bounds, and step-size policy for one run."""

    mu: int
    bounds: tuple[tuple[float, float], ...]
    max_evaluations: int
    q: int = 10
    eta_floor: float = 1e-6
    eta_init: float | None = None
    repair: str = "clamp"
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "bounds", tuple((float(lo), float(hi)) for lo, hi in self.bounds))
        self.validate()

    def validate(self) -> None:
        problems = []
        if self.mu < 2:
            problems.append(f"mu must be >= 2, got {self.mu}")
        if self.q < 1:
            problems.append(f"q must be >= 1, got {self.q}")
        if not self.bounds:
            problems.append("bounds must define at least one dimension")
        for j, (lo, hi) in enumerate(self.bounds):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                problems.append(f"bounds[{j}] must satisfy low < high, got ({lo}, {hi})")
        if self.max_evaluations < self.mu:
            problems.append(
                f"max_evaluations must cover the initial population: "
                f"{self.max_evaluations} < mu={self.mu}"
            )
        if self.eta_floor <= 0.0:
            problems.append(f"eta_floor must be > 0, got {self.eta_floor}")
        if self.eta_init is not None and self.eta_init <= 0.0:
            problems.append(f"eta_init must be > 0, got {self.eta_init}")
        if self.repair not in ("clamp", "reflect"):
            problems.append(f"repair must be 'clamp' or 'reflect', got {self.repair!r}")
        if not 0 <= self.seed < 2**64:
            problems.append(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if problems:
            raise ConfigurationError("; ".join(problems))

    @property
    def dimension(self) -> int:
        return len(self.bounds)

    def eta_init_vector(self) -> np.ndarray:
        """Initial step sizes: explicit value, else min(3, span/10) per dimension."""
        if self.eta_init is not None:
            return np.full(self.dimension, float(self.eta_init))
        spans = np.array([hi - lo for lo, hi in self.bounds])
        return np.minimum(3.0, spans / 10.0)


@dataclass
class Individual:
    """Solution vector paired with its self-adaptive step sizes."""

    x: np.ndarray
    eta: np.ndarray
    fitness: float | None = None


class GenerationRecord(NamedTuple):
    generation: int
    evaluations: int
    best_of_generation: float
    best_so_far: float


@dataclass
class RunResult:
    """Trajectory and outcome of a single run.

    ``best_of_generation`` is the best fitness among the candidates
    evaluated in that generation (the initial population for generation 0,
    the offspring afterwards); ``best_so_far`` is the running minimum over
    everything evaluated, hence non-increasing.
    """

    records: list[GenerationRecord]
    best_x: np.ndarray
    best_fitness: float
    final_population: list[Individual]
    evaluations: int
    generations: int
    seed: int
    stream: int
    nonfinite_evaluations: int = 0
    diagnostics: dict = field(default_factory=dict)


def initialize_population(config: EvolutionConfig, rng: RngStream) -> list[Individual]:
    """Uniform random population inside the bounds, step sizes at their initial value."""
    lows = np.array([lo for lo, _ in config.bounds])
    highs = np.array([hi for _, hi in config.bounds])
    eta0 = config.eta_init_vector()
    u = np.asarray(rng.uniform((config.mu, config.dimension)))
    xs = lows + (highs - lows) * u
    return [Individual(x=xs[i].copy(), eta=eta0.copy()) for i in range(config.mu)]


def self_adapt_eta(
    eta: np.ndarray,
    scales: ScaleFactors,
    rng: RngStream,
    eta_floor: float = 1e-6,
) -> np.ndarray:
    """Log-normal step-size update with one shared and n per-component draws.

    Consumes exactly one normal(size=n+1) call: the first draw is shared
    across components (the tau' term), the rest are per-component.
    Results are floored at ``eta_floor``.
    """
    eta = np.asarray(eta, dtype=float)
    draws = np.atleast_1d(rng.normal(eta.size + 1))
    shared, per_component = draws[0], draws[1:]
    updated = eta * np.exp(scales.tau_prime * shared + scales.tau * per_component)
    return np.maximum(updated, eta_floor)


def _repair(x: np.ndarray, lows: np.ndarray, highs: np.ndarray, mode: str) -> np.ndarray:
    if mode == "clamp":
        return np.clip(x, lows, highs)
    # reflect: fold into [low, high] with period 2*span, valid for any overshoot
    spans = highs - lows
    t = np.mod(x - lows, 2.0 * spans)
    return lows + np.where(t > spans, 2.0 * spans - t, t)


def mutate(
    parent: Individual,
    operator: MutationOperator,
    scales: ScaleFactors,
    config: EvolutionConfig,
    rng: RngStream,
) -> Individual:
    """Create one offspring: adapt step sizes, perturb, repair into bounds.

    The perturbation is always centred at zero; a Tukey tag contributes
    only its scale and shape.  Draw order is the adaptation call followed
    by one perturbation call.
    """
    n = parent.x.size
    new_eta = self_adapt_eta(parent.eta, scales, rng, config.eta_floor)
    if operator.kind is OperatorKind.GAUSSIAN:
        z = gaussian_sample(rng, n)
    elif operator.kind is OperatorKind.CAUCHY:
        z = cauchy_sample(rng, n)
    else:
        p = operator.params
        centred = TukeyLambdaParams(location=0.0, scale=p.scale, shape=p.shape)
        z = tukey_sample(centred, rng, n)
    lows = np.array([lo for lo, _ in config.bounds])
    highs = np.array([hi for _, hi in config.bounds])
    x = _repair(parent.x + new_eta * np.asarray(z), lows, highs, config.repair)
    return Individual(x=x, eta=new_eta)


def draw_tukey_params(scheme_config: SchemeConfig, rng: RngStream) -> TukeyLambdaParams:
    """Draw (scale, shape) from the configured affine ranges; location is zero.

    Consumes two uniforms, scale first.
    """
    scale = scheme_config.beta_min + scheme_config.beta_range * float(rng.uniform())
    shape = scheme_config.lambda_min + scheme_config.lambda_range * float(rng.uniform())
    return TukeyLambdaParams(location=0.0, scale=scale, shape=shape)


def subpopulation_sizes(scheme_config: SchemeConfig, population_size: int) -> tuple[int, ...]:
    """Resolve the sub-population split for a population of the given size.

    With explicit ``k`` the population must be exactly k (scheme 1) or 3k
    (schemes 2 and 3).  With ``k`` derived, schemes 2 and 3 use
    ``k = population_size // 3`` and any remainder joins the last
    sub-population, so divisible sizes split exactly (k, k, k).
    """
    if population_size < 1:
        raise ConfigurationError(f"population_size must be >= 1, got {population_size}")
    if scheme_config.scheme is Scheme.PER_INDIVIDUAL:
        if scheme_config.k is not None and scheme_config.k != population_size:
            raise ConfigurationError(
                f"scheme 1 requires population_size == k: {population_size} != {scheme_config.k}"
            )
        return (population_size,)
    if scheme_config.k is not None:
        if population_size != 3 * scheme_config.k:
            raise ConfigurationError(
                f"schemes 2 and 3 require population_size == 3k: "
                f"{population_size} != 3*{scheme_config.k}"
            )
        k = scheme_config.k
    else:
        if population_size < 3:
            raise ConfigurationError(
                f"schemes 2 and 3 need population_size >= 3, got {population_size}"
            )
        k = population_size // 3
    return (k, k, population_size - 2 * k)


def assign_operators(
    scheme_config: SchemeConfig,
    population_size: int,
    rng: RngStream,
) -> list[MutationOperator]:
    """Tag every individual with this generation's mutation operator.

    Scheme 1 draws a fresh Tukey pair per individual in index order.
    Scheme 2 draws one fresh pair per sub-population, in sub-population
    order.  Scheme 3 tags the sub-populations Gaussian, Cauchy, and Tukey
    with a single fresh pair for the last.
    """
    sizes = subpopulation_sizes(scheme_config, population_size)
    if scheme_config.scheme is Scheme.PER_INDIVIDUAL:
        return [
            MutationOperator(OperatorKind.TUKEY, draw_tukey_params(scheme_config, rng))
            for _ in range(population_size)
        ]
    if scheme_config.scheme is Scheme.PER_SUBPOPULATION:
        operators: list[MutationOperator] = []
        for size in sizes:
            params = draw_tukey_params(scheme_config, rng)
            operators.extend(MutationOperator(OperatorKind.TUKEY, params) for _ in range(size))
        return operators
    gaussian = [MutationOperator(OperatorKind.GAUSSIAN) for _ in range(sizes[0])]
    cauchy = [MutationOperator(OperatorKind.CAUCHY) for _ in range(sizes[1])]
    shared = draw_tukey_params(scheme_config, rng)
    tukey = [MutationOperator(OperatorKind.TUKEY, shared) for _ in range(sizes[2])]
    return gaussian + cauchy + tukey


def tournament_select(
    combined: Sequence[Individual],
    q: int,
    rng: RngStream,
) -> list[Individual]:
    """Select the better half of a parent+offspring pool by q-opponent tournament.

    Every individual plays q uniformly drawn opponents (with replacement)
    and scores a win when its fitness is <= the opponent's.  Survivors are
    the highest win counts, ties broken by lower fitness then lower index,
    which keeps the pool's best individual alive unconditionally.
    """
    m = len(combined)
    mu = m // 2
    fitness = np.array([ind.fitness for ind in combined], dtype=float)
    if np.any(np.isnan(fitness)):
        raise ValueError("tournament requires evaluated fitness for every individual")
    opponents = np.asarray(rng.integers(0, m, (m, q)))
    wins = np.sum(fitness[:, None] <= fitness[opponents], axis=1)
    order = np.lexsort((np.arange(m), fitness, -wins))
    return [combined[i] for i in order[:mu]]


def _evaluate(objective: Callable[[np.ndarray], float], x: np.ndarray) -> tuple[float, bool]:
    value = float(objective(x))
    if math.isfinite(value):
        return value, False
    return math.inf, True


def evolve(
    objective: Callable[[np.ndarray], float],
    config: EvolutionConfig,
    scheme_config: SchemeConfig,
    rng: RngStream | None = None,
) -> RunResult:
    """Run the generational loop until the evaluation budget is exhausted.

    Generations are produced while a full one still fits in the budget, so
    the reported evaluation count is mu*(generations+1) and never exceeds
    ``max_evaluations``.  Non-finite objective values count as +inf fitness
    and are tallied in ``nonfinite_evaluations``.
    """
    if rng is None:
        rng = RngStream(config.seed, 0)
    subpopulation_sizes(scheme_config, config.mu)  # fail fast on inconsistent configs
    scales = ScaleFactors.for_dimension(config.dimension)

    population = initialize_population(config, rng)
    nonfinite = 0
    for ind in population:
        ind.fitness, bad = _evaluate(objective, ind.x)
        nonfinite += bad
    evaluations = config.mu

    best_index = min(range(config.mu), key=lambda i: population[i].fitness)
    best_fitness = population[best_index].fitness
    best_x = population[best_index].x.copy()
    records = [GenerationRecord(0, evaluations, best_fitness, best_fitness)]

    generation = 0
    while evaluations + config.mu <= config.max_evaluations:
        operators = assign_operators(scheme_config, config.mu, rng)
        offspring = [
            mutate(population[i], operators[i], scales, config, rng)
            for i in range(config.mu)
        ]
        best_of_generation = math.inf
        for child in offspring:
            child.fitness, bad = _evaluate(objective, child.x)
            nonfinite += bad
            if child.fitness < best_of_generation:
                best_of_generation = child.fitness
            if child.fitness < best_fitness:
                best_fitness = child.fitness
                best_x = child.x.copy()
        evaluations += config.mu
        generation += 1
        population = tournament_select(list(population) + offspring, config.q, rng)
        records.append(
            GenerationRecord(generation, evaluations, best_of_generation, best_fitness)
        )

    return RunResult(
        records=records,
        best_x=best_x,
        best_fitness=best_fitness,
        final_population=population,
        evaluations=evaluations,
        generations=generation,
        seed=rng.seed,
        stream=rng.stream,
        nonfinite_evaluations=nonfinite,
    )
