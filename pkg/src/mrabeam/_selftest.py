"""Fast self-contained invariant checks backing the ``validate`` CLI command."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .harness import ExperimentConfig, generate_scenario
from .precoding import sum_rate, zf_precoder, zf_sum_rate
from .qp import QpProblem, QpSolution, solve_qp
from .sqp import Bounds, dfp_update, grid_layout, optimize


def random_channel(rng: np.random.Generator, k: int, n: int) -> np.ndarray:
    return (rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))) / np.sqrt(2)


def random_qp(rng: np.random.Generator, max_dim: int = 4, max_rows: int = 6) -> QpProblem:
    """Random strictly convex QP with a feasible origin."""
    d = int(rng.integers(1, max_dim + 1))
    m = int(rng.integers(1, max_rows + 1))
    a = rng.standard_normal((d, d))
    U = a @ a.T + d * np.eye(d)
    c = rng.standard_normal(d)
    P = rng.standard_normal((m, d))
    b = rng.uniform(0.0, 1.0, size=m)  # origin strictly feasible
    return QpProblem(U=U, c=c, P_mat=P, b=b)


def brute_force_qp(problem: QpProblem) -> QpSolution:
    """Exhaustive active-set enumeration oracle for small strictly convex QPs.

    Solves the equality-constrained KKT system for every subset of
    constraints and returns the best feasible candidate with nonnegative
    multipliers. Independent of the primal active-set iteration.
    """
    U, c, P, b = problem.U, problem.c, problem.P_mat, problem.b
    d = problem.n_vars
    m = problem.n_constraints
    best = None
    best_obj = np.inf
    for size in range(0, min(m, d) + 1):
        for subset in combinations(range(m), size):
            A = P[list(subset)]
            kkt = np.block(
                [[U, A.T], [A, np.zeros((size, size))]]
            ) if size else U
            rhs = np.concatenate([-c, b[list(subset)]]) if size else -c
            try:
                sol = np.linalg.solve(kkt, rhs)
            except np.linalg.LinAlgError:
                continue
            s, mu = sol[:d], sol[d:]
            if mu.size and mu.min() < -1e-10:
                continue
            if m and np.max(P @ s - b) > 1e-8:
                continue
            obj = 0.5 * s @ U @ s + c @ s
            if obj < best_obj - 1e-12:
                best_obj = obj
                multipliers = np.zeros(m)
                multipliers[list(subset)] = mu
                best = QpSolution(
                    s=s,
                    active_set=sorted(subset),
                    iterations=0,
                    status="optimal",
                    multipliers=multipliers,
                )
    if best is None:
        raise RuntimeError("enumeration oracle found no KKT point")
    return best


def check_zf_closed_form(seed: int = 0, instances: int = 10) -> bool:
    rng = np.random.default_rng(seed)
    for _ in range(instances):
        H = random_channel(rng, 3, 4)
        power = float(rng.uniform(0.5, 10.0))
        noise = float(rng.uniform(0.5, 2.0))
        closed = zf_sum_rate(H, power, noise)
        piped = sum_rate(H, zf_precoder(H, power), noise)
        if abs(closed - piped) > 1e-9 * max(1.0, abs(closed)):
            return False
    return True


def check_zero_interference(seed: int = 0, instances: int = 10) -> bool:
    rng = np.random.default_rng(seed)
    for _ in range(instances):
        H = random_channel(rng, 3, 4)
        F = zf_precoder(H, 2.0).F
        cross = H @ F
        for i in range(H.shape[0]):
            for k in range(H.shape[0]):
                if i == k:
                    continue
                limit = 1e-9 * np.linalg.norm(H[i]) * np.linalg.norm(F[:, k])
                if abs(cross[i, k]) > limit:
                    return False
    return True


def check_qp_oracle(seed: int = 0, instances: int = 10) -> bool:
    rng = np.random.default_rng(seed)
    for _ in range(instances):
        problem = random_qp(rng)
        got = solve_qp(problem)
        want = brute_force_qp(problem)
        if got.status != "optimal":
            return False
        if np.max(np.abs(got.s - want.s)) > 1e-6:
            return False
        if abs(got.objective(problem) - want.objective(problem)) > 1e-6:
            return False
    return True


def check_dfp_identity() -> bool:
    rng = np.random.default_rng(7)
    v = rng.standard_normal(6)
    updated = dfp_update(np.eye(6), v, v)
    return bool(np.max(np.abs(updated - np.eye(6))) == 0.0)


def check_small_optimize() -> bool:
    config = ExperimentConfig(n_x=1, n_z=1, k_users=1, l_paths=1, trials=1)
    scenario = generate_scenario(np.random.default_rng(3), config, snr_db=1.0)
    bounds = Bounds(
        x_max=2 * config.wavelength,
        z_max=2 * config.wavelength,
        psi_theta_max=np.pi / 4,
        psi_phi_max=np.pi / 4,
    )
    init = grid_layout(1, 1, config.wavelength)
    fpa = optimize(scenario, "FPA", bounds, init)
    mra = optimize(scenario, "MRA", bounds, init)
    return (
        fpa.iterations == 0
        and mra.max_violation <= 1e-6
        and mra.sum_rate >= fpa.sum_rate - 1e-9
    )


#: (name, callable) pairs run by the validate command, in order.
CHECKS = (
    ("zf-closed-form-equivalence", check_zf_closed_form),
    ("zf-zero-interference", check_zero_interference),
    ("qp-active-set-vs-enumeration", check_qp_oracle),
    ("dfp-cancellation-identity", check_dfp_identity),
    ("sqp-small-run-dominance", check_small_optimize),
)


def run_all_checks(report=print) -> bool:
    ok = True
    for name, check in CHECKS:
        passed = bool(check())
        ok = ok and passed
        report(f"{'PASS' if passed else 'FAIL'}  {name}")
    return ok
