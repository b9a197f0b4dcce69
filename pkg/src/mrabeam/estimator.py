"""scikit-learn style front door: fit a scenario, learn an antenna layout."""

from __future__ import annotations

import math

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .channel import build_channel_matrix
from .precoding import zf_sum_rate
from .sqp import Bounds, SCHEMES, grid_layout, optimize
from .validation import check_nonnegative, check_positive, check_scenario


class MovableAntennaOptimizer(BaseEstimator):
    """Optimizes antenna positions/rotations for the ZF downlink sum rate.

    Parameters mirror the experiment setup: the scheme picks which variables
    move (FPA, MA, RA, or MRA), ``n_x * n_z`` antennas start on a
    half-wavelength grid, the movable region is ``r`` half-wavelengths per
    axis, and rotations are bounded by ``psi_max``. ``fit`` consumes a
    :class:`~mrabeam.channel.Scenario` and exposes the optimized layout and
    rate through trailing-underscore attributes, so the class composes with
    scikit-learn tooling (``get_params``, ``set_params``, ``clone``).
    """

    def __init__(
        self,
        scheme: str = "MRA",
        n_x: int = 2,
        n_z: int = 2,
        r: float = 4.0,
        psi_max: float = math.pi / 4,
        max_iter: int = 100,
        tol: float = 1e-6,
    ):
        self.scheme = scheme
        self.n_x = n_x
        self.n_z = n_z
        self.r = r
        self.psi_max = psi_max
        self.max_iter = max_iter
        self.tol = tol

    def _validate_params(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if int(self.n_x) < 1 or int(self.n_z) < 1:
            raise ValueError("n_x and n_z must be >= 1")
        check_positive(self.r, "r")
        check_nonnegative(self.psi_max, "psi_max")
        check_positive(self.tol, "tol")
        if int(self.max_iter) < 1:
            raise ValueError("max_iter must be >= 1")

    def fit(self, scenario, y=None):
        """Run the SQP optimizer on one scenario from the grid start."""
        scenario = check_scenario(scenario)
        self._validate_params()
        wavelength = scenario.wavelength
        bounds = Bounds(
            x_max=self.r * wavelength / 2.0,
            z_max=self.r * wavelength / 2.0,
            psi_theta_max=self.psi_max,
            psi_phi_max=self.psi_max,
        )
        init = grid_layout(int(self.n_x), int(self.n_z), wavelength)
        result = optimize(
            scenario,
            self.scheme,
            bounds,
            init,
            max_iter=int(self.max_iter),
            tol=self.tol,
        )
        self.result_ = result
        self.layout_ = result.layout()
        self.sum_rate_ = result.sum_rate
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        self.max_violation_ = result.max_violation
        return self

    def score(self, scenario, y=None) -> float:
        """ZF sum rate the fitted layout achieves on the given scenario."""
        if not hasattr(self, "layout_"):
            raise NotFittedError(
                "This MovableAntennaOptimizer instance is not fitted yet."
            )
        scenario = check_scenario(scenario)
        H = build_channel_matrix(scenario, self.layout_)
        return zf_sum_rate(H, scenario.power, scenario.noise_var)
