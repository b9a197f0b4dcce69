"""Monte-Carlo harness: random scenarios, four-scheme runs, sweep tables.

Scenarios draw path cosines uniformly on [0, 1] and unit-variance complex
normal gains, with noise variance fixed at 1 so transmit power carries the
SNR. Sweeps share per-trial random scenarios across schemes and axis values
(common random numbers) so scheme comparisons are paired.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import PathComponent, Scenario, WAVELENGTH
from .sqp import Bounds, SCHEMES, grid_layout, optimize

AXES = ("snr", "psi_max", "r")

DEFAULT_SNR_DB_LIST = tuple(float(v) for v in range(-4, 13, 2))
DEFAULT_R_LIST = tuple(float(v) for v in range(1, 11))
DEFAULT_PSI_MAX_LIST = tuple(i * math.pi / 16 for i in range(1, 9))


@dataclass
class ExperimentConfig:
    """Sweep setup: array grid, user/path counts, axis grids, and fixed points.

    The fixed fields pin the axes that a given sweep does not vary.
    """

    n_x: int = 2
    n_z: int = 2
    k_users: int = 4
    l_paths: int = 4
    snr_db_list: tuple[float, ...] = DEFAULT_SNR_DB_LIST
    r_list: tuple[float, ...] = DEFAULT_R_LIST
    psi_max_list: tuple[float, ...] = DEFAULT_PSI_MAX_LIST
    snr_db_fixed: float = 1.0
    r_fixed: float = 4.0
    psi_max_fixed: float = math.pi / 4
    trials: int = 200
    seed: int = 1
    wavelength: float = WAVELENGTH

    def __post_init__(self):
        if self.n_x < 1 or self.n_z < 1:
            raise ValueError("grid factors must be >= 1")
        if self.k_users < 1 or self.l_paths < 1:
            raise ValueError("k_users and l_paths must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        for name in ("snr_db_list", "r_list", "psi_max_list"):
            values = tuple(float(v) for v in getattr(self, name))
            if not values:
                raise ValueError(f"{name} must be nonempty")
            setattr(self, name, values)
        if self.n_antennas < self.k_users:
            raise ValueError(
                f"need N >= K for zero forcing, got N={self.n_antennas}, "
                f"K={self.k_users}"
            )
        if self.wavelength <= 0:
            raise ValueError("wavelength must be positive")

    @property
    def n_antennas(self) -> int:
        return self.n_x * self.n_z


@dataclass
class SweepRow:
    scheme: str
    axis_value: float
    trial: int
    sum_rate: float
    iterations: int
    converged: bool


@dataclass
class SweepResult:
    """Per-(scheme, axis value, trial) sum rates for one sweep axis."""

    axis: str
    rows: list[SweepRow] = field(default_factory=list)


def generate_scenario(
    rng: np.random.Generator, config: ExperimentConfig, snr_db: float
) -> Scenario:
    """Draw one random scenario at the given SNR.

    Per user and path: theta, phi ~ U[0, 1] and beta circularly-symmetric
    complex normal with unit variance, drawn in that fixed order so a fixed
    generator state reproduces the scenario bit for bit. Noise variance is 1
    and power is 10^(snr_db / 10).
    """
    k, l = config.k_users, config.l_paths
    theta = rng.uniform(0.0, 1.0, size=(k, l))
    phi = rng.uniform(0.0, 1.0, size=(k, l))
    beta = (
        rng.standard_normal((k, l)) + 1j * rng.standard_normal((k, l))
    ) / np.sqrt(2.0)
    users = [
        [PathComponent(beta[i, j], theta[i, j], phi[i, j]) for j in range(l)]
        for i in range(k)
    ]
    return Scenario(
        users=users,
        wavelength=config.wavelength,
        power=10.0 ** (snr_db / 10.0),
        noise_var=1.0,
    )


def run_point(
    scenario: Scenario,
    scheme: str,
    r: float,
    psi_max: float,
    n_x: int = 2,
    n_z: int = 2,
) -> tuple[float, int, bool]:
    """Optimize one scheme on one scenario at movable region r * lambda/2 and
    rotation bound psi_max, from the standard grid start."""
    wavelength = scenario.wavelength
    bounds = Bounds(
        x_max=r * wavelength / 2.0,
        z_max=r * wavelength / 2.0,
        psi_theta_max=psi_max,
        psi_phi_max=psi_max,
    )
    init = grid_layout(n_x, n_z, wavelength)
    result = optimize(scenario, scheme, bounds, init)
    return result.sum_rate, result.iterations, result.converged


def _point_for(config: ExperimentConfig, axis: str, value: float):
    snr = value if axis == "snr" else config.snr_db_fixed
    r = value if axis == "r" else config.r_fixed
    psi = value if axis == "psi_max" else config.psi_max_fixed
    return snr, r, psi


def run_sweep(config: ExperimentConfig, axis: str) -> SweepResult:
    """Run the full cross product schemes x axis values x trials.

    Trial t reuses one spawned seed for every axis value and scheme, so the
    drawn paths are identical across the sweep and only the swept quantity
    changes. Rows come back sorted by (scheme, axis_value, trial).
    """
    if axis not in AXES:
        raise ValueError(f"unknown sweep axis {axis!r}, expected one of {AXES}")
    values = {
        "snr": config.snr_db_list,
        "psi_max": config.psi_max_list,
        "r": config.r_list,
    }[axis]
    seeds = np.random.SeedSequence(config.seed).spawn(config.trials)

    rows: list[SweepRow] = []
    for trial in range(config.trials):
        for value in values:
            snr, r, psi = _point_for(config, axis, value)
            rng = np.random.default_rng(seeds[trial])
            scenario = generate_scenario(rng, config, snr)
            for scheme in SCHEMES:
                rate, iterations, converged = run_point(
                    scenario, scheme, r, psi, config.n_x, config.n_z
                )
                rows.append(
                    SweepRow(
                        scheme=scheme,
                        axis_value=float(value),
                        trial=trial,
                        sum_rate=rate,
                        iterations=iterations,
                        converged=converged,
                    )
                )
    rows.sort(key=lambda row: (row.scheme, row.axis_value, row.trial))
    return SweepResult(axis=axis, rows=rows)


@dataclass
class AggregateRow:
    scheme: str
    axis_value: float
    mean_rate: float
    std_error: float
    n_trials: int


def aggregate(result: SweepResult) -> list[AggregateRow]:
    """Mean and standard error of the sum rate per (scheme, axis value)."""
    if not result.rows:
        raise ValueError("cannot aggregate an empty sweep result")
    grouped: dict[tuple[str, float], list[float]] = {}
    for row in result.rows:
        grouped.setdefault((row.scheme, row.axis_value), []).append(row.sum_rate)
    out = []
    for (scheme, value) in sorted(grouped):
        rates = np.asarray(grouped[(scheme, value)])
        stderr = 0.0
        if rates.size > 1:
            stderr = float(rates.std(ddof=1) / np.sqrt(rates.size))
        out.append(
            AggregateRow(
                scheme=scheme,
                axis_value=value,
                mean_rate=float(rates.mean()),
                std_error=stderr,
                n_trials=int(rates.size),
            )
        )
    return out
