"""Joint antenna position and rotation optimization for multi-user downlink sum rate."""

from .channel import (
    AntennaLayout,
    PathComponent,
    Scenario,
    WAVELENGTH,
    array_manifold,
    build_channel,
    build_channel_matrix,
    element_gain,
    virtual_angles,
)
from .estimator import MovableAntennaOptimizer
from .harness import (
    AXES,
    AggregateRow,
    ExperimentConfig,
    SweepResult,
    SweepRow,
    aggregate,
    generate_scenario,
    run_point,
    run_sweep,
)
from .precoding import (
    PrecodingMatrix,
    SingularGram,
    sinr,
    sum_rate,
    zf_precoder,
    zf_sum_rate,
)
from .qp import QpProblem, QpSolution, solve_qp
from .validation import check_layout, check_scenario
from .sqp import (
    Bounds,
    CoincidentAntennas,
    InfeasibleInit,
    NonFiniteGradient,
    OptResult,
    OptVariables,
    SCHEMES,
    StepFailed,
    build_qp_subproblem,
    dfp_update,
    gradient,
    grid_layout,
    line_search,
    objective,
    optimize,
    spacing_constraints,
)

__version__ = "0.1.0"

__all__ = [
    "AntennaLayout",
    "PathComponent",
    "Scenario",
    "WAVELENGTH",
    "array_manifold",
    "build_channel",
    "build_channel_matrix",
    "element_gain",
    "virtual_angles",
    "MovableAntennaOptimizer",
    "AXES",
    "AggregateRow",
    "ExperimentConfig",
    "SweepResult",
    "SweepRow",
    "aggregate",
    "generate_scenario",
    "run_point",
    "run_sweep",
    "PrecodingMatrix",
    "SingularGram",
    "sinr",
    "sum_rate",
    "zf_precoder",
    "zf_sum_rate",
    "QpProblem",
    "QpSolution",
    "solve_qp",
    "check_layout",
    "check_scenario",
    "Bounds",
    "CoincidentAntennas",
    "InfeasibleInit",
    "NonFiniteGradient",
    "OptResult",
    "OptVariables",
    "SCHEMES",
    "StepFailed",
    "build_qp_subproblem",
    "dfp_update",
    "gradient",
    "grid_layout",
    "line_search",
    "objective",
    "optimize",
    "spacing_constraints",
]
