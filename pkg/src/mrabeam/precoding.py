"""Zero-forcing precoding and the closed-form sum rate it induces.

The precoder is the right pseudo-inverse of the stacked channel matrix with
per-user columns rescaled to an equal power share, which nulls inter-user
interference exactly. The resulting sum rate depends on the channel only
through the diagonal of the inverse Gram matrix, giving a closed form that
must agree with the SINR-by-SINR pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

#: Gram matrices with a larger condition number are treated as singular.
CONDITION_LIMIT = 1e12


class SingularGram(Exception):
    """The channel Gram matrix is numerically singular (degenerate geometry)."""


@dataclass
class PrecodingMatrix:
    """N x K precoder whose columns each carry power/K."""

    F: np.ndarray
    power: float

    def __post_init__(self):
        self.F = np.asarray(self.F, dtype=complex)
        if self.F.ndim != 2:
            raise ValueError("F must be a 2-D matrix")
        share = self.power / self.F.shape[1]
        norms2 = np.sum(np.abs(self.F) ** 2, axis=0)
        if not np.allclose(norms2, share, rtol=1e-9, atol=0.0):
            raise ValueError("each precoder column must carry power/K")


def _as_matrix(F) -> np.ndarray:
    if isinstance(F, PrecodingMatrix):
        return F.F
    return np.asarray(F, dtype=complex)


def _gram_inverse(H: np.ndarray) -> np.ndarray:
    """Inverse of H H^H via Cholesky; raises SingularGram on degeneracy."""
    gram = H @ H.conj().T
    gram = 0.5 * (gram + gram.conj().T)
    evals = np.linalg.eigvalsh(gram)
    if evals[0] <= 0.0 or evals[-1] / evals[0] > CONDITION_LIMIT:
        raise SingularGram("channel Gram matrix is numerically singular")
    try:
        factor = cho_factor(gram, lower=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - caught by eigvalsh
        raise SingularGram("Cholesky factorization failed") from exc
    return cho_solve(factor, np.eye(gram.shape[0], dtype=complex))


def zf_precoder(H: np.ndarray, power: float) -> PrecodingMatrix:
    """Zero-forcing precoder H^H (H H^H)^{-1} with equal power allocation.

    Columns are rescaled so ||f_k||^2 = power / K, which keeps the total
    transmit power at exactly ``power``.
    """
    H = np.asarray(H, dtype=complex)
    K, N = H.shape
    if K > N:
        raise ValueError(f"need K <= N for zero forcing, got K={K}, N={N}")
    if power <= 0:
        raise ValueError("power must be positive")
    raw = H.conj().T @ _gram_inverse(H)
    norms = np.linalg.norm(raw, axis=0)
    F = raw * (np.sqrt(power / K) / norms)[None, :]
    return PrecodingMatrix(F=F, power=power)


def sinr(H: np.ndarray, F, noise_var: float, k: int) -> float:
    """SINR of user k: |h_k^H f_k|^2 over interference plus noise."""
    H = np.asarray(H, dtype=complex)
    Fm = _as_matrix(F)
    if noise_var <= 0:
        raise ValueError("noise_var must be positive")
    if not 0 <= k < H.shape[0]:
        raise IndexError(f"user index {k} out of range for K={H.shape[0]}")
    powers = np.abs(H[k] @ Fm) ** 2  # row k is h_k^H, so this is |h_k^H f_i|^2
    signal = powers[k]
    interference = powers.sum() - signal
    return float(signal / (interference + noise_var))


def sum_rate(H: np.ndarray, F, noise_var: float) -> float:
    """Sum over users of log2(1 + SINR_k), in bits/s/Hz."""
    K = np.asarray(H).shape[0]
    return float(sum(np.log2(1.0 + sinr(H, F, noise_var, k)) for k in range(K)))


def zf_sum_rate(H: np.ndarray, power: float, noise_var: float) -> float:
    """Closed-form ZF sum rate from the inverse Gram diagonal.

    Equals sum_rate(H, zf_precoder(H, power), noise_var): under zero forcing
    user k's SINR is (power/K) / (noise_var * [(H H^H)^{-1}]_{kk}).
    """
    H = np.asarray(H, dtype=complex)
    K, N = H.shape
    if K > N:
        raise ValueError(f"need K <= N for zero forcing, got K={K}, N={N}")
    if power <= 0 or noise_var <= 0:
        raise ValueError("power and noise_var must be positive")
    inv_diag = np.real(np.diag(_gram_inverse(H)))
    snr = (power / K) / (noise_var * inv_diag)
    return float(np.sum(np.log2(1.0 + snr)))
