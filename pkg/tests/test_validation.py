import numpy as np
import pytest

from mrabeam import AntennaLayout, WAVELENGTH, check_layout, check_scenario, grid_layout
from mrabeam.validation import check_nonnegative, check_positive

from conftest import make_scenario


class TestCheckScenario:
    def test_passes_through(self):
        scenario = make_scenario(seed=90)
        assert check_scenario(scenario) is scenario

    def test_rejects_other_types(self):
        with pytest.raises(TypeError):
            check_scenario({"users": []})


class TestCheckLayout:
    def test_passes_through(self):
        layout = grid_layout(2, 2, WAVELENGTH)
        assert check_layout(layout) is layout

    def test_spacing_enforcement(self):
        layout = grid_layout(2, 2, WAVELENGTH)
        assert check_layout(layout, WAVELENGTH, require_spacing=True) is layout
        tight = AntennaLayout(
            x=layout.x * 0.5, z=layout.z * 0.5,
            psi_theta=layout.psi_theta, psi_phi=layout.psi_phi,
        )
        with pytest.raises(ValueError):
            check_layout(tight, WAVELENGTH, require_spacing=True)

    def test_spacing_check_needs_wavelength(self):
        with pytest.raises(ValueError):
            check_layout(grid_layout(2, 2, WAVELENGTH), require_spacing=True)

    def test_rejects_other_types(self):
        with pytest.raises(TypeError):
            check_layout(np.zeros((4, 2)))


class TestScalarChecks:
    def test_positive(self):
        assert check_positive(2.5, "x") == 2.5
        for bad in (0.0, -1.0, float("nan"), float("inf")):
            with pytest.raises(ValueError):
                check_positive(bad, "x")

    def test_nonnegative(self):
        assert check_nonnegative(0.0, "x") == 0.0
        with pytest.raises(ValueError):
            check_nonnegative(-0.1, "x")
