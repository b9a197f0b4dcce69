"""Input validation helpers shared by the estimator, harness, and CLI."""

from __future__ import annotations

import numpy as np

from .channel import AntennaLayout, Scenario

#: Slack allowed on the half-wavelength spacing requirement (meters).
SPACING_TOL = 1e-9


def check_scenario(scenario) -> Scenario:
    if not isinstance(scenario, Scenario):
        raise TypeError(f"expected a Scenario, got {type(scenario).__name__}")
    return scenario


def check_layout(
    layout,
    wavelength: float | None = None,
    require_spacing: bool = False,
) -> AntennaLayout:
    """Validate a layout, optionally enforcing the half-wavelength spacing rule."""
    if not isinstance(layout, AntennaLayout):
        raise TypeError(f"expected an AntennaLayout, got {type(layout).__name__}")
    if require_spacing:
        if wavelength is None or wavelength <= 0:
            raise ValueError("spacing check needs a positive wavelength")
        if layout.min_spacing() < 0.5 * wavelength - SPACING_TOL:
            raise ValueError(
                f"antenna spacing {layout.min_spacing():.6g} m is below "
                f"half a wavelength ({0.5 * wavelength:.6g} m)"
            )
    return layout


def check_positive(value: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return value


def check_nonnegative(value: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be nonnegative and finite, got {value!r}")
    return value
