"""Experiment configuration: a JSON-serializable mirror of one run."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from ..dragonian import DragonianGivens, FeedSign, FitnessConfig
from ..ep_engine import EvolutionConfig, Scheme, SchemeConfig
from ..errors import ConfigurationError
from ..test_functions import BENCHMARK_NAMES, get_benchmark

__all__ = ["DragonianSettings", "ExperimentConfig", "DEFAULT_POPULATIONS"]

# Populations used when none is configured, per scheme.
DEFAULT_POPULATIONS = {1: 120, 2: 60, 3: 60}

_DEFAULT_DIMENSIONS = {"ackley": 20, "rosenbrock": 2, "sphere": 2}


@dataclass
class DragonianSettings:
    """Antenna givens, fitness thresholds, and the (theta_0, f12) search box."""

    diameter: float = 100.0
    theta_e: float = 30.0
    theta_p: float = -170.0
    d_cf0: float = 1.0
    d_cs0: float = 1.0
    penalty: float = 1000.0
    feed_sign: str | None = None  # "front" | "side" | None = keyed on theta_p
    theta0_low: float = -90.0
    theta0_high: float = -70.0
    f12_low: float = 85.0
    f12_high: float = 105.0

    def givens(self) -> DragonianGivens:
        return DragonianGivens(self.diameter, self.theta_e, self.theta_p)

    def fitness_config(self) -> FitnessConfig:
        sign = None
        if self.feed_sign is not None:
            try:
                sign = {"front": FeedSign.FRONT, "side": FeedSign.SIDE}[self.feed_sign]
            except KeyError:
                raise ConfigurationError(
                    f"feed_sign must be 'front' or 'side', got {self.feed_sign!r}"
                ) from None
        return FitnessConfig(self.d_cf0, self.d_cs0, self.penalty, sign)

    def search_bounds(self) -> list[list[float]]:
        return [[self.theta0_low, self.theta0_high], [self.f12_low, self.f12_high]]


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce a multi-trial run bit for bit."""

    objective: str = "ackley"
    scheme: int = 2
    population: int | None = None
    trials: int = 25
    budget: int = 60_000
    seed: int = 0
    dimension: int | None = None
    q: int = 10
    eta_floor: float = 1e-6
    eta_init: float | None = None
    repair: str = "clamp"
    beta_min: float = 0.1
    beta_range: float = 2.0
    lambda_min: float = -1.0
    lambda_range: float = 1.14
    k: int | None = None
    bounds: list[list[float]] | None = None
    dragonian: DragonianSettings = field(default_factory=DragonianSettings)
    workers: int = 1

    def validate(self) -> None:
        problems = []
        if self.objective not in BENCHMARK_NAMES + ("dragonian",):
            problems.append(
                f"objective must be one of {BENCHMARK_NAMES + ('dragonian',)}, "
                f"got {self.objective!r}"
            )
        if self.scheme not in (1, 2, 3):
            problems.append(f"scheme must be 1, 2, or 3, got {self.scheme!r}")
        if self.trials < 1:
            problems.append(f"trials must be >= 1, got {self.trials}")
        population = self.resolved_population()
        if population < 2:
            problems.append(f"population must be >= 2, got {population}")
        if self.budget < population:
            problems.append(f"budget {self.budget} smaller than population {population}")
        if not 0 <= self.seed < 2**64:
            problems.append(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.workers < 1:
            problems.append(f"workers must be >= 1, got {self.workers}")
        if self.bounds is not None:
            for j, pair in enumerate(self.bounds):
                if len(pair) != 2 or not all(math.isfinite(v) for v in pair) or pair[0] >= pair[1]:
                    problems.append(f"bounds[{j}] must be a finite [low, high] pair, got {pair!r}")
        if problems:
            raise ConfigurationError("; ".join(problems))

    def resolved_population(self) -> int:
        if self.population is not None:
            return self.population
        return DEFAULT_POPULATIONS.get(self.scheme, 60)

    def resolved_dimension(self) -> int:
        if self.objective == "dragonian":
            return 2
        if self.dimension is not None:
            return self.dimension
        return _DEFAULT_DIMENSIONS[self.objective]

    def resolved_bounds(self) -> list[list[float]]:
        if self.bounds is not None:
            return [list(pair) for pair in self.bounds]
        if self.objective == "dragonian":
            return self.dragonian.search_bounds()
        spec = get_benchmark(self.objective, self.resolved_dimension())
        return [list(pair) for pair in spec.bounds]

    def scheme_config(self) -> SchemeConfig:
        return SchemeConfig(
            scheme=Scheme(self.scheme),
            k=self.k,
            beta_min=self.beta_min,
            beta_range=self.beta_range,
            lambda_min=self.lambda_min,
            lambda_range=self.lambda_range,
        )

    def evolution_config(self) -> EvolutionConfig:
        return EvolutionConfig(
            mu=self.resolved_population(),
            bounds=tuple((lo, hi) for lo, hi in self.resolved_bounds()),
            max_evaluations=self.budget,
            q=self.q,
            eta_floor=self.eta_floor,
            eta_init=self.eta_init,
            repair=self.repair,
            seed=self.seed,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = dict(data)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown configuration fields: {sorted(unknown)}")
        if "dragonian" in data and isinstance(data["dragonian"], dict):
            sub_known = {f.name for f in fields(DragonianSettings)}
            sub_unknown = set(data["dragonian"]) - sub_known
            if sub_unknown:
                raise ConfigurationError(
                    f"unknown dragonian configuration fields: {sorted(sub_unknown)}"
                )
            data["dragonian"] = DragonianSettings(**data["dragonian"])
        return cls(**data)

    @classmethod
    def from_json_file(cls, path: str | Path) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigurationError(f"config file {path} must hold a JSON object")
        return cls.from_dict(data)
