"""Geometric multipath channel model for a planar array of movable, rotatable antennas.

Each user channel is a sum of plane-wave paths. A path is described by a complex
gain and two directional cosines (virtual angles). The array response of a path
is the per-antenna phase ramp set by the antenna (x, z) positions, multiplied
elementwise by a cosine-lobe element gain that is steered by the per-antenna
rotation offsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0
CARRIER_FREQUENCY_HZ = 3e9
#: Default carrier wavelength in meters (3 GHz), ~0.09993 m.
WAVELENGTH = SPEED_OF_LIGHT / CARRIER_FREQUENCY_HZ


@dataclass(frozen=True)
class PathComponent:
    """One propagation path: complex gain plus two virtual angles.

    ``theta`` and ``phi`` are directional cosines, so both must lie in [-1, 1].
    """

    beta: complex
    theta: float
    phi: float

    def __post_init__(self):
        if abs(self.theta) > 1.0 or abs(self.phi) > 1.0:
            raise ValueError(
                f"virtual angles must lie in [-1, 1], got "
                f"theta={self.theta!r}, phi={self.phi!r}"
            )


@dataclass
class AntennaLayout:
    """Per-antenna x/z positions (meters) and two rotation offsets per antenna.

    Rotation offsets are expressed in the virtual-angle (directional-cosine)
    domain and are subtracted from a path's virtual angles before the element
    gain is evaluated.
    """

    x: np.ndarray
    z: np.ndarray
    psi_theta: np.ndarray
    psi_phi: np.ndarray

    def __post_init__(self):
        self.x = np.atleast_1d(np.asarray(self.x, dtype=float))
        self.z = np.atleast_1d(np.asarray(self.z, dtype=float))
        self.psi_theta = np.atleast_1d(np.asarray(self.psi_theta, dtype=float))
        self.psi_phi = np.atleast_1d(np.asarray(self.psi_phi, dtype=float))
        n = self.x.shape[0]
        if n < 1:
            raise ValueError("layout needs at least one antenna")
        for name in ("z", "psi_theta", "psi_phi"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"layout field {name!r} must have shape ({n},)")

    @property
    def n_antennas(self) -> int:
        return self.x.shape[0]

    def min_spacing(self) -> float:
        """Smallest pairwise antenna distance; inf for a single antenna."""
        n = self.n_antennas
        if n < 2:
            return float("inf")
        dx = self.x[:, None] - self.x[None, :]
        dz = self.z[:, None] - self.z[None, :]
        d = np.hypot(dx, dz)
        return float(d[np.triu_indices(n, k=1)].min())


@dataclass
class Scenario:
    """K users' path lists plus wavelength, transmit power, and noise variance.

    All users must have the same number of paths; ``power`` and ``noise_var``
    are linear (watts).
    """

    users: list[list[PathComponent]]
    wavelength: float = WAVELENGTH
    power: float = 1.0
    noise_var: float = 1.0

    def __post_init__(self):
        if len(self.users) < 1:
            raise ValueError("scenario needs at least one user")
        lengths = {len(paths) for paths in self.users}
        if lengths == {0} or len(lengths) != 1:
            raise ValueError("all users must have the same nonzero path count")
        if self.wavelength <= 0:
            raise ValueError("wavelength must be positive")
        if self.power <= 0:
            raise ValueError("power must be positive")
        if self.noise_var <= 0:
            raise ValueError("noise_var must be positive")

    @property
    def n_users(self) -> int:
        return len(self.users)

    @property
    def n_paths(self) -> int:
        return len(self.users[0])

    def path_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Path parameters as (K, L) arrays: gains, theta cosines, phi cosines."""
        beta = np.array([[p.beta for p in paths] for paths in self.users], dtype=complex)
        theta = np.array([[p.theta for p in paths] for paths in self.users], dtype=float)
        phi = np.array([[p.phi for p in paths] for paths in self.users], dtype=float)
        return beta, theta, phi


def virtual_angles(elevation: float, azimuth: float) -> tuple[float, float]:
    """Map physical elevation/azimuth (radians) to virtual angles.

    Returns ``(theta, phi)`` with theta = cos(elevation) and
    phi = cos(azimuth) * sin(elevation); both are directional cosines in [-1, 1].
    """
    theta = np.cos(elevation)
    phi = np.cos(azimuth) * np.sin(elevation)
    return float(theta), float(phi)


def element_gain(d_theta, d_phi):
    """Cosine-lobe element gain at a virtual-angle offset from boresight.

    u(a, b) = cos(pi*a/2) * cos(pi*b/2) on |a|, |b| <= 1 and zero outside, so
    the gain lives in [0, 1] with its unique maximum u(0, 0) = 1. Accepts
    scalars or arrays (broadcasting).
    """
    d_theta = np.asarray(d_theta, dtype=float)
    d_phi = np.asarray(d_phi, dtype=float)
    inside = (np.abs(d_theta) <= 1.0) & (np.abs(d_phi) <= 1.0)
    gain = np.where(
        inside,
        np.cos(0.5 * np.pi * d_theta) * np.cos(0.5 * np.pi * d_phi),
        0.0,
    )
    if gain.ndim == 0:
        return float(gain)
    return gain


def array_manifold(
    layout: AntennaLayout, theta: float, phi: float, wavelength: float
) -> np.ndarray:
    """Unit-modulus per-antenna phase response to a plane wave.

    Entry n is exp(j * 2*pi/wavelength * (phi*x_n + theta*z_n)).
    """
    if wavelength <= 0:
        raise ValueError("wavelength must be positive")
    phase = (2.0 * np.pi / wavelength) * (phi * layout.x + theta * layout.z)
    return np.exp(1j * phase)


def build_channel(
    paths: list[PathComponent], layout: AntennaLayout, wavelength: float
) -> np.ndarray:
    """Channel vector of one user: 1/sqrt(L)-scaled sum of per-path responses.

    Each path contributes beta * a(theta, phi) ⊙ u(theta - psi_theta,
    phi - psi_phi), where the element gain is evaluated per antenna at the
    rotation-shifted virtual angles.
    """
    if len(paths) == 0:
        raise ValueError("path list must be nonempty")
    if wavelength <= 0:
        raise ValueError("wavelength must be positive")
    beta = np.array([p.beta for p in paths], dtype=complex)
    theta = np.array([p.theta for p in paths], dtype=float)
    phi = np.array([p.phi for p in paths], dtype=float)

    k0 = 2.0 * np.pi / wavelength
    # (L, N) phase and gain tables, combined per path then summed.
    phase = np.exp(1j * k0 * (phi[:, None] * layout.x + theta[:, None] * layout.z))
    gain = element_gain(theta[:, None] - layout.psi_theta, phi[:, None] - layout.psi_phi)
    return np.sqrt(1.0 / len(paths)) * (beta[:, None] * phase * gain).sum(axis=0)


def build_channel_matrix(scenario: Scenario, layout: AntennaLayout) -> np.ndarray:
    """Stack all users' channels into a K x N matrix of conjugated rows.

    Row k is h_k^H, so (H F)[k, i] is user k's projection onto precoder
    column i.
    """
    rows = [
        np.conj(build_channel(paths, layout, scenario.wavelength))
        for paths in scenario.users
    ]
    return np.stack(rows, axis=0)
