"""Phase-diagram sweep, concurrence/violation scatter and finite-bound table.

Work is split into fixed-size shards so that results (and the random streams
behind them) do not depend on how many worker processes run them.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .entanglement import concurrence, ef_band
from .errors import ConvergenceError
from .families import RNG_ALGORITHM, BellDiagonalParams, bell_diagonal_from_t, sample_bell_diagonal, werner_pd
from .quantum_state import correlation_matrix
from .steering import GEOMETRIES, LIMIT_BOUND, finite_bound, max_violation, singular_spectrum, steering_verdict

PHASES = ("separable", "entangled-unsteerable", "steerable")
BAND_SLACK = 1e-6
SCATTER_SHARD = 1000
SCATTER_TARGET_REL_ERR = 1e-7


@dataclass(frozen=True)
class SweepRecord:
    alpha: float
    eta: float
    f_value: float
    concurrence: float
    phase: str

    def consistent(self) -> bool:
        if self.phase == "steerable":
            return self.f_value > LIMIT_BOUND and self.concurrence > 0
        if self.phase == "entangled-unsteerable":
            return self.f_value <= LIMIT_BOUND + 1e-12 and self.concurrence > 0
        return self.concurrence == 0 and self.f_value <= LIMIT_BOUND + 1e-12


def record_fields(cls) -> list[str]:
    return [f.name for f in fields(cls)]


def steering_boundary(eta: float) -> float:
    """Smallest alpha for which the phase-damped Werner state is steerable."""
    if eta == 0:
        return 0.5
    if eta == 1:
        return 1.0
    s = np.sqrt(eta)
    return float(1 / (1 + (1 - eta) / s * np.log((1 + s) / np.sqrt(1 - eta))))


def entanglement_boundary(eta: float) -> float:
    """Alpha at which the phase-damped Werner state becomes entangled."""
    return float(1 / (1 + 2 * np.sqrt(1 - eta)))


def sweep_point(alpha: float, eta: float) -> SweepRecord:
    if eta == 1:
        # the general form degenerates; F(diag(0, 0, alpha)) = alpha / 2
        rho = werner_pd(alpha, eta)
        e = concurrence(rho).concurrence
        f, steerable = alpha / 2, False
    else:
        report = steering_verdict(werner_pd(alpha, eta))
        f, e, steerable = report.f_value, report.concurrence, report.steerable
    if steerable:
        phase = "steerable"
    elif e > 0:
        phase = "entangled-unsteerable"
    else:
        phase = "separable"
    return SweepRecord(float(alpha), float(eta), float(f), float(e), phase)


def _sweep_row(args) -> list[SweepRecord]:
    alpha, etas = args
    return [sweep_point(alpha, e) for e in etas]


def sweep(resolution: int, workers: int = 1) -> list[SweepRecord]:
    """Evenly spaced grid: alpha over [0, 1] (inclusive), eta over [0, 1).

    One shard per alpha row; records come back in row-major order.
    """
    if resolution < 2:
        raise ValueError("grid resolution must be >= 2")
    etas = np.arange(resolution) / resolution
    jobs = [(a, etas) for a in np.linspace(0, 1, resolution)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(job) for job in jobs]
    return [r for row in rows for r in row]


@dataclass(frozen=True)
class ScatterPoint:
    index: int
    c1: float
    c2: float
    c3: float
    concurrence: float
    f_value: float
    converged: bool


@dataclass(frozen=True)
class ScatterSummary:
    samples: int
    seed: int
    rng_algorithm: str
    band_violations: int
    concurrence_quarter_violations: int
    separable_violations: int
    convergence_failures: int

    def ok(self) -> bool:
        return not (self.band_violations or self.concurrence_quarter_violations
                    or self.separable_violations)


def _scatter_shard(args) -> list[ScatterPoint]:
    seed, shard, start, count, target = args
    rng = np.random.default_rng([seed, shard])
    points = []
    for k, c in enumerate(sample_bell_diagonal(count, rng)):
        rho = bell_diagonal_from_t(BellDiagonalParams(*c))
        e = concurrence(rho).concurrence
        spec = singular_spectrum(correlation_matrix(rho))
        try:
            f, ok = max_violation(spec, target).f_value, True
        except ConvergenceError as exc:
            f, ok = exc.estimate / (4 * np.pi), False
        points.append(ScatterPoint(start + k, *(float(x) for x in c), e, float(f), ok))
    return points


def scatter(samples: int, seed: int, workers: int = 1,
            target_rel_err: float = SCATTER_TARGET_REL_ERR) -> list[ScatterPoint]:
    """Concurrence and maximum violation for uniformly sampled Bell-diagonal states.

    Shard ``k`` draws from ``default_rng([seed, k])``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    jobs = [(seed, k, start, min(SCATTER_SHARD, samples - start), target_rel_err)
            for k, start in enumerate(range(0, samples, SCATTER_SHARD))]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(_scatter_shard, jobs))
    else:
        shards = [_scatter_shard(job) for job in jobs]
    return [p for shard in shards for p in shard]


def band_check(point: ScatterPoint, slack: float = BAND_SLACK) -> dict[str, bool]:
    """Which empirical concurrence/violation statements the point breaks."""
    e, f = point.concurrence, point.f_value
    lower, upper = ef_band(min(e, 1.0))
    return {
        "band": not (lower - slack <= f <= upper + slack),
        "quarter": e > 0.25 + slack and not f > LIMIT_BOUND,
        "separable": e == 0 and f > LIMIT_BOUND + slack,
    }


def summarize_scatter(points: list[ScatterPoint], seed: int) -> ScatterSummary:
    checks = [band_check(p) for p in points]
    return ScatterSummary(
        samples=len(points),
        seed=seed,
        rng_algorithm=RNG_ALGORITHM,
        band_violations=sum(c["band"] for c in checks),
        concurrence_quarter_violations=sum(c["quarter"] for c in checks),
        separable_violations=sum(c["separable"] for c in checks),
        convergence_failures=sum(not p.converged for p in points),
    )


def bounds_table(extra=()) -> list[tuple[str, float, float]]:
    """(geometry, N, C_N) for the catalog (plus ``extra`` geometries) and the N -> inf row."""
    geoms = list(GEOMETRIES.values()) + list(extra)
    rows = [(g.name, len(g), finite_bound(g)) for g in geoms]
    rows.append(("limit", float("inf"), LIMIT_BOUND))
    return rows
