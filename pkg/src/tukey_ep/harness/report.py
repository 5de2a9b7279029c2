"""Result persistence: delimited trajectories, JSON manifests, and figures.

CSV headers are part of the external contract:

    trial,generation,evaluations,best_of_generation,best_so_far
    generation,evaluations,overall_best,mean_best,std_best

Floats are written with 17 significant digits so every emitted file can be
re-parsed to the exact in-memory values.  Figures are rendered with the
non-interactive matplotlib backend next to the delimited output.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from ..dragonian import CrossSection, DragonianDerived
from ..ep_engine import RunResult
from .config import ExperimentConfig
from .runner import AggregateResult

__all__ = [
    "emit_results",
    "write_trials_csv",
    "write_aggregate_csv",
    "write_manifest",
    "read_trials_csv",
    "read_aggregate_csv",
    "render_convergence_figure",
    "render_cross_section_figure",
    "render_histogram_figure",
    "write_cross_section_csv",
    "geometry_record",
]

TRIALS_HEADER = ["trial", "generation", "evaluations", "best_of_generation", "best_so_far"]
AGGREGATE_HEADER = ["generation", "evaluations", "overall_best", "mean_best", "std_best"]


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def write_trials_csv(results: list[RunResult], path: Path) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRIALS_HEADER)
        for trial, result in enumerate(results):
            for rec in result.records:
                writer.writerow(
                    [
                        trial,
                        rec.generation,
                        rec.evaluations,
                        _fmt(rec.best_of_generation),
                        _fmt(rec.best_so_far),
                    ]
                )


def write_aggregate_csv(aggregate: AggregateResult, path: Path) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(AGGREGATE_HEADER)
        for i, gen in enumerate(aggregate.generations):
            writer.writerow(
                [
                    gen,
                    aggregate.evaluations[i],
                    _fmt(aggregate.overall_best[i]),
                    _fmt(aggregate.mean_best[i]),
                    _fmt(aggregate.std_best[i]),
                ]
            )


def read_trials_csv(path: Path) -> dict[int, list[tuple[int, int, float, float]]]:
    """Parse a per-trial CSV back into trajectories keyed by trial index."""
    trajectories: dict[int, list[tuple[int, int, float, float]]] = {}
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != TRIALS_HEADER:
            raise ValueError(f"unexpected trials header {header!r}")
        for row in reader:
            trajectories.setdefault(int(row[0]), []).append(
                (int(row[1]), int(row[2]), float(row[3]), float(row[4]))
            )
    return trajectories


def read_aggregate_csv(path: Path) -> list[tuple[int, int, float, float, float]]:
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != AGGREGATE_HEADER:
            raise ValueError(f"unexpected aggregate header {header!r}")
        return [
            (int(r[0]), int(r[1]), float(r[2]), float(r[3]), float(r[4])) for r in reader
        ]


def _trials_payload(results: list[RunResult]) -> list[dict]:
    return [
        {
            "trial": trial,
            "seed": result.seed,
            "stream": result.stream,
            "generations": result.generations,
            "evaluations": result.evaluations,
            "nonfinite_evaluations": result.nonfinite_evaluations,
            "best_fitness": result.best_fitness,
            "best_x": [float(v) for v in result.best_x],
        }
        for trial, result in enumerate(results)
    ]


def write_manifest(
    results: list[RunResult],
    aggregate: AggregateResult,
    config: ExperimentConfig | None,
    path: Path,
) -> None:
    from .. import __version__

    manifest = {
        "library": {"name": "tukey-ep", "version": __version__},
        "config": None if config is None else config.to_dict(),
        "trials": _trials_payload(results),
        "final": {
            "overall_best": aggregate.overall_best[-1],
            "mean_best": aggregate.mean_best[-1],
            "std_best": aggregate.std_best[-1],
            "evaluations": aggregate.evaluations[-1],
        },
    }
    path.write_text(json.dumps(manifest, indent=2) + "\n")


def emit_results(
    results: list[RunResult],
    aggregate: AggregateResult,
    out_dir: str | Path,
    fmt: str = "csv",
    config: ExperimentConfig | None = None,
    plot: bool = True,
    title: str = "",
) -> list[Path]:
    """Write trajectories, aggregate, manifest, and optional figure.

    ``fmt`` selects the trajectory container: ``csv`` for the two
    delimited files, ``json`` for equivalent JSON arrays.  The manifest is
    always JSON.
    """
    if not results:
        raise ValueError("emit_results requires at least one trial result")
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if fmt == "csv":
        trials_path, aggregate_path = out / "trials.csv", out / "aggregate.csv"
        write_trials_csv(results, trials_path)
        write_aggregate_csv(aggregate, aggregate_path)
    else:
        trials_path, aggregate_path = out / "trials.json", out / "aggregate.json"
        trials_payload = [
            {
                "trial": trial,
                "trajectory": [list(rec) for rec in result.records],
            }
            for trial, result in enumerate(results)
        ]
        trials_path.write_text(json.dumps(trials_payload, indent=2) + "\n")
        aggregate_path.write_text(
            json.dumps(
                {
                    "generations": aggregate.generations,
                    "evaluations": aggregate.evaluations,
                    "overall_best": aggregate.overall_best,
                    "mean_best": aggregate.mean_best,
                    "std_best": aggregate.std_best,
                },
                indent=2,
            )
            + "\n"
        )
    written += [trials_path, aggregate_path]

    manifest_path = out / "manifest.json"
    write_manifest(results, aggregate, config, manifest_path)
    written.append(manifest_path)

    if plot:
        figure_path = out / "convergence.png"
        render_convergence_figure(aggregate, figure_path, title=title)
        written.append(figure_path)
    return written


def render_convergence_figure(aggregate: AggregateResult, path: Path, title: str = "") -> None:
    """Mean best-so-far with a one-sigma band, plus the overall best curve."""
    plt = _pyplot()
    evals = np.asarray(aggregate.evaluations)
    mean = np.asarray(aggregate.mean_best)
    std = np.asarray(aggregate.std_best)
    overall = np.asarray(aggregate.overall_best)

    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(evals, mean, label="mean best-so-far", linewidth=2)
    ax.fill_between(evals, mean - std, mean + std, alpha=0.25, label="+/- 1 std")
    ax.plot(evals, overall, linestyle="--", label="overall best", linewidth=1.5)
    if np.all(overall > 0) and np.all(mean - std > 0):
        ax.set_yscale("log")
    ax.set_xlabel("fitness evaluations")
    ax.set_ylabel("best fitness")
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def render_cross_section_figure(section: CrossSection, path: Path, title: str = "") -> None:
    """Principal-plane layout: both reflector arcs, feed, focus, ray path."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 7))
    ax.plot(section.main_arc[:, 0], section.main_arc[:, 1], linewidth=2, label="main reflector")
    ax.plot(section.sub_arc[:, 0], section.sub_arc[:, 1], linewidth=2, label="subreflector")
    for name, marker in (("focus", "+"), ("feed", "*"), ("main_center", "."), ("sub_center", ".")):
        x, z = section.named_points()[name]
        ax.plot([x], [z], marker=marker, markersize=10, linestyle="none", label=name)
    ray_x = [section.main_center[0], section.sub_center[0], section.feed[0]]
    ray_z = [section.main_center[1], section.sub_center[1], section.feed[1]]
    ax.plot(ray_x, ray_z, linestyle=":", color="gray", linewidth=1, label="principal ray")
    ax.set_xlabel("x")
    ax.set_ylabel("z (main axis)")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def render_histogram_figure(samples: np.ndarray, path: Path, bins: int = 50, title: str = "") -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.hist(samples, bins=bins, density=True, alpha=0.8, edgecolor="black", linewidth=0.4)
    ax.set_xlabel("value")
    ax.set_ylabel("density")
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def write_cross_section_csv(section: CrossSection, path: Path) -> None:
    """Labelled (x, z) points: named markers first, then both sampled arcs."""
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "x", "z"])
        for name, (x, z) in section.named_points().items():
            writer.writerow([name, _fmt(x), _fmt(z)])
        for i, (x, z) in enumerate(section.main_arc):
            writer.writerow([f"main_arc_{i:03d}", _fmt(x), _fmt(z)])
        for i, (x, z) in enumerate(section.sub_arc):
            writer.writerow([f"sub_arc_{i:03d}", _fmt(x), _fmt(z)])


def geometry_record(derived: DragonianDerived) -> dict:
    """Machine-readable form of a derived geometry."""
    return {
        "valid": derived.valid,
        "gamma": derived.gamma,
        "alpha": derived.alpha_feed,
        "beta": derived.beta_tilt,
        "M": derived.M,
        "e": derived.e,
        "F_e": derived.F_e,
        "F": derived.F,
        "l_sm": derived.l_sm,
        "d_cf": derived.d_cf,
        "d_cs": derived.d_cs,
    }
