"""Sequential quadratic programming over antenna positions and rotations.

The decision vector stacks [x; z; psi_theta; psi_phi] (length 4N). Each
iteration linearizes the pairwise spacing constraints, keeps the box bounds
exact, solves a convex QP for a step, backtracks on an l1 merit function, and
maintains curvature with a safeguarded DFP update. A per-scheme mask freezes
the variables a scheme may not touch: FPA freezes everything, MA frees the
positions, RA frees the rotations, MRA frees all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .channel import AntennaLayout, Scenario, element_gain
from .precoding import SingularGram, zf_sum_rate
from .qp import QpProblem, solve_qp, STATUS_INFEASIBLE

SCHEMES = ("FPA", "MA", "RA", "MRA")

#: Objective value standing in for a degenerate (singular-Gram) configuration.
SINGULAR_PENALTY = 1e9
_PENALTY_THRESHOLD = 1e8

#: l1 merit penalty weight and Armijo slope fraction.
MERIT_RHO = 100.0
ARMIJO_C1 = 1e-4

_FEAS_TOL = 1e-8
_ITERATE_FEAS_LIMIT = 1e-6


class InfeasibleInit(Exception):
    """The starting layout violates the spacing or box constraints."""


class NonFiniteGradient(Exception):
    """Finite differencing hit degenerate configurations on both sides."""


class CoincidentAntennas(Exception):
    """Two antennas are (numerically) at the same point; spacing gradient undefined."""


class StepFailed(Exception):
    """No backtracking step length achieved sufficient merit decrease."""


@dataclass
class OptVariables:
    """Flattened decision vector [x; z; psi_theta; psi_phi] plus a free-variable mask."""

    theta: np.ndarray
    active_mask: np.ndarray

    def __post_init__(self):
        self.theta = np.asarray(self.theta, dtype=float).reshape(-1)
        self.active_mask = np.asarray(self.active_mask, dtype=bool).reshape(-1)
        if self.theta.size % 4 != 0 or self.theta.size == 0:
            raise ValueError("theta length must be a positive multiple of 4")
        if self.active_mask.shape != self.theta.shape:
            raise ValueError("active_mask must match theta's shape")

    @property
    def n_antennas(self) -> int:
        return self.theta.size // 4

    def layout(self) -> AntennaLayout:
        return vector_to_layout(self.theta)


@dataclass
class Bounds:
    """Symmetric box bounds: |x| <= x_max, |z| <= z_max, |psi| <= psi_max."""

    x_max: float
    z_max: float
    psi_theta_max: float
    psi_phi_max: float

    def __post_init__(self):
        for name in ("x_max", "z_max", "psi_theta_max", "psi_phi_max"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    def per_coordinate(self, n_antennas: int) -> np.ndarray:
        return np.repeat(
            [self.x_max, self.z_max, self.psi_theta_max, self.psi_phi_max], n_antennas
        )


@dataclass
class OptResult:
    theta_opt: OptVariables
    sum_rate: float
    iterations: int
    converged: bool
    max_violation: float
    merit_history: list[float] = field(default_factory=list)

    def layout(self) -> AntennaLayout:
        return self.theta_opt.layout()


def layout_to_vector(layout: AntennaLayout) -> np.ndarray:
    return np.concatenate([layout.x, layout.z, layout.psi_theta, layout.psi_phi])


def vector_to_layout(vec: np.ndarray) -> AntennaLayout:
    vec = np.asarray(vec, dtype=float).reshape(-1)
    n = vec.size // 4
    return AntennaLayout(
        x=vec[:n].copy(),
        z=vec[n : 2 * n].copy(),
        psi_theta=vec[2 * n : 3 * n].copy(),
        psi_phi=vec[3 * n :].copy(),
    )


def scheme_mask(scheme: str, n_antennas: int) -> np.ndarray:
    """Free-variable mask for a scheme over the 4N stacked coordinates."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")
    mask = np.zeros(4 * n_antennas, dtype=bool)
    if scheme in ("MA", "MRA"):
        mask[: 2 * n_antennas] = True
    if scheme in ("RA", "MRA"):
        mask[2 * n_antennas :] = True
    return mask


def grid_layout(n_x: int, n_z: int, wavelength: float) -> AntennaLayout:
    """Uniform n_x-by-n_z grid at exactly half-wavelength pitch, centered at the
    origin, with zero rotations. Feasible for any movable region of at least
    half a wavelength."""
    if n_x < 1 or n_z < 1 or wavelength <= 0:
        raise ValueError("grid factors must be >= 1 and wavelength positive")
    xs = (np.arange(n_x) - (n_x - 1) / 2.0) * (wavelength / 2.0)
    zs = (np.arange(n_z) - (n_z - 1) / 2.0) * (wavelength / 2.0)
    n = n_x * n_z
    return AntennaLayout(
        x=np.repeat(xs, n_z),
        z=np.tile(zs, n_x),
        psi_theta=np.zeros(n),
        psi_phi=np.zeros(n),
    )


class _RateEvaluator:
    """Vectorized negative-sum-rate evaluator bound to one scenario.

    Precomputes the (K, L) path parameter tables so repeated objective calls
    during finite differencing and line searches stay cheap.
    """

    def __init__(self, scenario: Scenario):
        self.beta, self.path_theta, self.path_phi = scenario.path_arrays()
        self.k0 = 2.0 * np.pi / scenario.wavelength
        self.scale = np.sqrt(1.0 / scenario.n_paths)
        self.power = scenario.power
        self.noise_var = scenario.noise_var

    def channel_matrix(self, vec: np.ndarray) -> np.ndarray:
        n = vec.size // 4
        x, z = vec[:n], vec[n : 2 * n]
        psi_t, psi_p = vec[2 * n : 3 * n], vec[3 * n :]
        phase = np.exp(
            1j
            * self.k0
            * (self.path_phi[..., None] * x + self.path_theta[..., None] * z)
        )
        gain = element_gain(
            self.path_theta[..., None] - psi_t, self.path_phi[..., None] - psi_p
        )
        h = self.scale * (self.beta[..., None] * phase * gain).sum(axis=1)
        return np.conj(h)

    def neg_sum_rate(self, vec: np.ndarray) -> float:
        try:
            return -zf_sum_rate(self.channel_matrix(vec), self.power, self.noise_var)
        except SingularGram:
            return SINGULAR_PENALTY


def objective(theta: OptVariables, scenario: Scenario) -> float:
    """Negative ZF sum rate of the layout encoded by theta; degenerate
    configurations map to a large penalty instead of raising."""
    return _RateEvaluator(scenario).neg_sum_rate(theta.theta)


def gradient(
    theta: OptVariables, scenario: Scenario, *, _evaluator: _RateEvaluator | None = None
) -> np.ndarray:
    """Central-finite-difference gradient, exactly zero at masked coordinates.

    Step size is 1e-6 * max(1, |theta_i|) per coordinate. A coordinate whose
    probes are both degenerate yields 0 when the center is degenerate too
    (locally constant penalty region) and raises NonFiniteGradient otherwise;
    a single degenerate side falls back to a one-sided difference.
    """
    ev = _evaluator if _evaluator is not None else _RateEvaluator(scenario)
    vec = theta.theta
    grad = np.zeros(vec.size)
    center = ev.neg_sum_rate(vec)
    probe = vec.copy()
    for i in np.flatnonzero(theta.active_mask):
        h = 1e-6 * max(1.0, abs(vec[i]))
        probe[i] = vec[i] + h
        f_plus = ev.neg_sum_rate(probe)
        probe[i] = vec[i] - h
        f_minus = ev.neg_sum_rate(probe)
        probe[i] = vec[i]
        plus_bad = f_plus >= _PENALTY_THRESHOLD
        minus_bad = f_minus >= _PENALTY_THRESHOLD
        if plus_bad and minus_bad:
            if center >= _PENALTY_THRESHOLD:
                grad[i] = 0.0
                continue
            raise NonFiniteGradient(
                f"coordinate {i}: both probes degenerate around a finite point"
            )
        if plus_bad:
            grad[i] = (center - f_minus) / h
        elif minus_bad:
            grad[i] = (f_plus - center) / h
        else:
            grad[i] = (f_plus - f_minus) / (2.0 * h)
    return grad


def spacing_constraints(
    theta: OptVariables | np.ndarray, wavelength: float
) -> tuple[np.ndarray, np.ndarray]:
    """Pairwise spacing constraints g = lambda/2 - d_ij (<= 0 when feasible)
    and their analytic Jacobian over the 4N coordinates.

    Rows are ordered by the lexicographic pair order (0,1), (0,2), ...;
    rotation columns are identically zero. Raises CoincidentAntennas when a
    pair (numerically) coincides.
    """
    vec = theta.theta if isinstance(theta, OptVariables) else np.asarray(theta, float)
    n = vec.size // 4
    dim = vec.size
    if n < 2:
        return np.zeros(0), np.zeros((0, dim))
    x, z = vec[:n], vec[n : 2 * n]
    pairs = list(combinations(range(n), 2))
    values = np.empty(len(pairs))
    jac = np.zeros((len(pairs), dim))
    for row, (i, j) in enumerate(pairs):
        dx = x[i] - x[j]
        dz = z[i] - z[j]
        dist = np.hypot(dx, dz)
        if dist < 1e-12:
            raise CoincidentAntennas(f"antennas {i} and {j} coincide")
        values[row] = 0.5 * wavelength - dist
        jac[row, i] = -dx / dist
        jac[row, j] = dx / dist
        jac[row, n + i] = -dz / dist
        jac[row, n + j] = dz / dist
    return values, jac


def _spacing_violation_sum(vec: np.ndarray, wavelength: float) -> float:
    values, _ = spacing_constraints(vec, wavelength)
    return float(np.sum(np.maximum(values, 0.0))) if values.size else 0.0


def constraint_violation(
    vec: np.ndarray, bounds: Bounds, wavelength: float
) -> float:
    """Worst violation over spacing and box constraints (0 when feasible)."""
    vec = np.asarray(vec, dtype=float).reshape(-1)
    n = vec.size // 4
    worst = 0.0
    values, _ = spacing_constraints(vec, wavelength)
    if values.size:
        worst = max(worst, float(values.max()))
    box = np.abs(vec) - bounds.per_coordinate(n)
    worst = max(worst, float(box.max()))
    return max(worst, 0.0)


def build_qp_subproblem(
    theta: OptVariables,
    grad: np.ndarray,
    hessian: np.ndarray,
    bounds: Bounds,
    wavelength: float,
) -> QpProblem:
    """Quadratic step model at theta: linearized spacing rows, exact box rows
    for active coordinates, and a pinned pair of rows per masked coordinate.

    A feasible theta makes s = 0 feasible for every row.
    """
    vec = theta.theta
    dim = vec.size
    n = theta.n_antennas
    values, jac = spacing_constraints(theta, wavelength)
    bound_vec = bounds.per_coordinate(n)

    rows: list[np.ndarray] = [jac]
    rhs: list[np.ndarray] = [-values]
    for indices, pin in (
        (np.flatnonzero(theta.active_mask), False),
        (np.flatnonzero(~theta.active_mask), True),
    ):
        for i in indices:
            e = np.zeros(dim)
            e[i] = 1.0
            rows.append(np.stack([e, -e]))
            if pin:
                rhs.append(np.zeros(2))
            else:
                rhs.append(np.array([bound_vec[i] - vec[i], bound_vec[i] + vec[i]]))
    return QpProblem(
        U=hessian,
        c=np.asarray(grad, dtype=float),
        P_mat=np.vstack(rows),
        b=np.concatenate(rhs),
    )


def dfp_update(U: np.ndarray, d_theta: np.ndarray, d_grad: np.ndarray) -> np.ndarray:
    """Rank-two DFP curvature update with a positive-curvature safeguard.

    Returns U unchanged whenever d_grad . d_theta <= 1e-10 * |d_grad| |d_theta|,
    which keeps the matrix positive definite on nonconvex stretches.
    """
    U = np.asarray(U, dtype=float)
    s = np.asarray(d_theta, dtype=float).reshape(-1)
    y = np.asarray(d_grad, dtype=float).reshape(-1)
    curvature = float(y @ s)
    if curvature <= 1e-10 * np.linalg.norm(y) * np.linalg.norm(s):
        return U
    Uy = U @ y
    y_U_y = float(y @ Uy)
    if y_U_y <= 0.0:
        return U
    # Summing the rank-two correction first lets equal terms cancel exactly.
    return U + (np.outer(s, s) / curvature - np.outer(Uy, Uy) / y_U_y)


def line_search(
    theta: OptVariables,
    direction: np.ndarray,
    scenario: Scenario,
    bounds: Bounds,
    *,
    f0: float | None = None,
    slope: float | None = None,
    _evaluator: _RateEvaluator | None = None,
) -> float:
    """Backtracking Armijo search on the l1 merit f + rho * sum(g_+).

    Tries alpha in {1, 1/2, ..., 2^-30} and returns the first (largest) value
    that keeps the trial iterate within the 1e-6 feasibility envelope and
    achieves the Armijo decrease; raises StepFailed when none does.
    """
    ev = _evaluator if _evaluator is not None else _RateEvaluator(scenario)
    vec = theta.theta
    wavelength = scenario.wavelength
    if f0 is None:
        f0 = ev.neg_sum_rate(vec)
    if slope is None:
        slope = float(gradient(theta, scenario, _evaluator=ev) @ direction)
    merit0 = f0 + MERIT_RHO * _spacing_violation_sum(vec, wavelength)

    for k in range(31):
        alpha = 0.5**k
        trial = vec + alpha * direction
        try:
            worst = constraint_violation(trial, bounds, wavelength)
            viol_sum = _spacing_violation_sum(trial, wavelength)
        except CoincidentAntennas:
            continue
        if worst > _ITERATE_FEAS_LIMIT:
            continue
        merit_trial = ev.neg_sum_rate(trial) + MERIT_RHO * viol_sum
        # The 1e-12 slack absorbs float noise when the predicted decrease is
        # at rounding level; accepted merits stay within that of the previous.
        if merit_trial <= merit0 + ARMIJO_C1 * alpha * slope + 1e-12:
            return alpha
    raise StepFailed("no step length achieved sufficient merit decrease")


def optimize(
    scenario: Scenario,
    scheme: str,
    bounds: Bounds,
    init: AntennaLayout,
    *,
    max_iter: int = 100,
    tol: float = 1e-6,
) -> OptResult:
    """Maximize the ZF sum rate over the scheme's free variables by SQP.

    Starts from a feasible layout, iterates theta <- theta + alpha * s with s
    from the QP subproblem and alpha from the merit line search, refreshes
    curvature by the safeguarded DFP rule, and stops when the step norm or the
    objective change drops below ``tol`` (or after ``max_iter`` iterations, or
    on a failed step, both reported as converged=False). Masked coordinates
    are returned bit-identical to their initial values. FPA returns the
    initial layout's rate after zero iterations.
    """
    n = init.n_antennas
    if scenario.n_users > n:
        raise ValueError(
            f"zero forcing needs K <= N, got K={scenario.n_users}, N={n}"
        )
    wavelength = scenario.wavelength
    vec0 = layout_to_vector(init)
    init_violation = constraint_violation(vec0, bounds, wavelength)
    if init_violation > _FEAS_TOL:
        raise InfeasibleInit(
            f"initial layout violates constraints by {init_violation:.3g}"
        )
    mask = scheme_mask(scheme, n)
    ev = _RateEvaluator(scenario)

    f = ev.neg_sum_rate(vec0)
    merits = [f + MERIT_RHO * _spacing_violation_sum(vec0, wavelength)]
    if not mask.any():
        return OptResult(
            theta_opt=OptVariables(vec0, mask),
            sum_rate=_rate_from(f),
            iterations=0,
            converged=True,
            max_violation=init_violation,
            merit_history=merits,
        )

    vec = vec0.copy()
    grad = gradient(OptVariables(vec, mask), scenario, _evaluator=ev)
    U = np.eye(vec.size)
    iterations = 0
    converged = False
    for _ in range(max_iter):
        theta_now = OptVariables(vec, mask)
        problem = build_qp_subproblem(
            theta_now, grad, 0.5 * (U + U.T), bounds, wavelength
        )
        solution = solve_qp(problem)
        if solution.status == STATUS_INFEASIBLE:
            break
        step = solution.s.copy()
        step[~mask] = 0.0
        if np.linalg.norm(step) < tol:
            # Any alpha in (0, 1] moves less than tol, so the step-size
            # stopping rule already holds; stay at the current iterate.
            converged = True
            break
        try:
            alpha = line_search(
                theta_now, step, scenario, bounds,
                f0=f, slope=float(grad @ step), _evaluator=ev,
            )
        except StepFailed:
            break
        new_vec = vec + alpha * step
        new_vec[~mask] = vec0[~mask]
        f_new = ev.neg_sum_rate(new_vec)
        iterations += 1
        merits.append(f_new + MERIT_RHO * _spacing_violation_sum(new_vec, wavelength))
        d_vec = new_vec - vec
        d_obj = abs(f_new - f)
        if np.linalg.norm(d_vec) < tol or d_obj < tol:
            vec, f = new_vec, f_new
            converged = True
            break
        grad_new = gradient(OptVariables(new_vec, mask), scenario, _evaluator=ev)
        U = dfp_update(U, d_vec, grad_new - grad)
        vec, f, grad = new_vec, f_new, grad_new

    return OptResult(
        theta_opt=OptVariables(vec, mask),
        sum_rate=_rate_from(f),
        iterations=iterations,
        converged=converged,
        max_violation=constraint_violation(vec, bounds, wavelength),
        merit_history=merits,
    )


def _rate_from(neg_rate: float) -> float:
    if neg_rate >= _PENALTY_THRESHOLD:
        return 0.0
    return -neg_rate
