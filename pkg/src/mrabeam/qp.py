"""Primal active-set solver for convex inequality-constrained quadratic programs.

Minimizes 0.5 * s^T U s + c^T s subject to P s <= b, starting from s = 0.
The curvature matrix is regularized to positive definiteness if needed, the
working set starts empty, and ties are broken by lowest constraint index so
runs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

FEAS_TOL = 1e-8
MULTIPLIER_TOL = 1e-10

STATUS_OPTIMAL = "optimal"
STATUS_MAX_ITER = "max_iter"
STATUS_INFEASIBLE = "infeasible"


@dataclass
class QpProblem:
    """Standard-form data: curvature U, linear term c, constraints P s <= b."""

    U: np.ndarray
    c: np.ndarray
    P_mat: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.U = np.asarray(self.U, dtype=float)
        self.c = np.asarray(self.c, dtype=float).reshape(-1)
        d = self.c.shape[0]
        if self.U.shape != (d, d):
            raise ValueError(f"U must be {d}x{d}, got {self.U.shape}")
        if np.max(np.abs(self.U - self.U.T), initial=0.0) > 1e-10:
            raise ValueError("U must be symmetric")
        self.P_mat = np.asarray(self.P_mat, dtype=float).reshape(-1, d)
        self.b = np.asarray(self.b, dtype=float).reshape(-1)
        if self.P_mat.shape[0] != self.b.shape[0]:
            raise ValueError("P_mat and b row counts differ")

    @property
    def n_vars(self) -> int:
        return self.c.shape[0]

    @property
    def n_constraints(self) -> int:
        return self.b.shape[0]


@dataclass
class QpSolution:
    s: np.ndarray
    active_set: list[int]
    iterations: int
    status: str
    multipliers: np.ndarray | None = field(default=None, repr=False)

    def objective(self, problem: QpProblem) -> float:
        return float(0.5 * self.s @ problem.U @ self.s + problem.c @ self.s)


def regularize_curvature(U: np.ndarray) -> np.ndarray:
    """Return U itself if positive definite, else U + tau*I for the smallest
    tau in {1e-8, 1e-7, ...} that makes the Cholesky factorization succeed."""
    try:
        np.linalg.cholesky(U)
        return U
    except np.linalg.LinAlgError:
        pass
    tau = 1e-8
    eye = np.eye(U.shape[0])
    while True:
        try:
            np.linalg.cholesky(U + tau * eye)
            return U + tau * eye
        except np.linalg.LinAlgError:
            tau *= 10.0


def solve_qp(problem: QpProblem) -> QpSolution:
    """Solve the QP by a primal active-set method started at s = 0.

    Returns status "optimal" with multipliers satisfying
    U s + c + P^T mu = 0, mu >= 0, complementary slackness; "infeasible" when
    s = 0 violates a constraint (the only start considered); or "max_iter"
    after 100 * (D + M) working-set changes.
    """
    U = regularize_curvature(problem.U)
    c = problem.c
    P = problem.P_mat
    b = problem.b
    d_vars = problem.n_vars
    m = problem.n_constraints

    s = np.zeros(d_vars)
    if m and np.max(P @ s - b) > FEAS_TOL:
        return QpSolution(s=s, active_set=[], iterations=0,
                          status=STATUS_INFEASIBLE, multipliers=np.zeros(m))

    chol = np.linalg.cholesky(U)

    def u_solve(rhs):
        return np.linalg.solve(chol.T, np.linalg.solve(chol, rhs))

    def eqp_step(g, working):
        """Step d and multipliers mu of min 0.5 d^T U d + g^T d s.t. P_W d = 0,
        in the sign convention U d + g + P_W^T mu = 0. lstsq keeps degenerate
        working sets from blowing up."""
        if not working:
            return -u_solve(g), np.empty(0)
        A = P[working]
        u_inv_at = u_solve(A.T)
        mu, *_ = np.linalg.lstsq(A @ u_inv_at, -(A @ u_solve(g)), rcond=None)
        d = -u_solve(g + A.T @ mu)
        return d, mu

    in_working = np.zeros(m, dtype=bool)
    working: list[int] = []
    max_steps = 100 * (d_vars + m)
    for step in range(1, max_steps + 1):
        g = U @ s + c
        d, mu = eqp_step(g, working)

        # Ratio test over constraints outside the working set; the first
        # strict improvement wins, so equal blockers resolve to lowest index.
        alpha = 1.0
        blocking = -1
        if m and np.max(np.abs(d), initial=0.0) > 0.0:
            along = P @ d
            slack = b - P @ s
            for i in range(m):
                if in_working[i] or along[i] <= 1e-12:
                    continue
                ratio = max(slack[i], 0.0) / along[i]
                if ratio < alpha - 1e-15:
                    alpha = ratio
                    blocking = i
        if blocking >= 0:
            s = s + alpha * d
            working.append(blocking)
            in_working[blocking] = True
            continue

        # Unblocked full step lands on the working set's optimum, where the
        # step system's multipliers are exactly the KKT multipliers.
        s = s + d
        if mu.size == 0 or mu.min() >= -MULTIPLIER_TOL:
            multipliers = np.zeros(m)
            multipliers[working] = mu
            return QpSolution(s=s, active_set=sorted(working), iterations=step,
                              status=STATUS_OPTIMAL, multipliers=multipliers)
        # Drop the most negative multiplier; argmin takes the first
        # occurrence, i.e. the lowest working-set position on ties.
        drop = int(np.argmin(mu))
        in_working[working[drop]] = False
        working.pop(drop)

    return QpSolution(s=s, active_set=sorted(working), iterations=max_steps,
                      status=STATUS_MAX_ITER, multipliers=np.zeros(m))
