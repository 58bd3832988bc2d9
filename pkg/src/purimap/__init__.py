"""purimap: iterated two-qubit purification dynamics.

Simulator and analysis toolkit for the nonlinear dynamics induced by an
iterated measure-and-select purification step on two-qubit states:
exact state-space iteration (pure and mixed), the reduced rational map
on the family parameter plane, cycle and stability analysis in Pauli
coordinates, and parallel basin-of-attraction charts.
"""

from .basin import (
    BasinGrid,
    BasinLabel,
    GridSpec,
    boundary_dimension,
    classify_point,
    compute_basin,
    count_label_components,
    grid_to_csv,
    render_ppm,
    sensitivity_probe,
)
from .fano import (
    StabilityReport,
    find_mixed_cycles,
    from_fano,
    jacobian_cycle,
    step_fano,
    to_fano,
)
from .kernels import backend_name
from .protocol import (
    HADAMARD,
    LocalUnitary,
    StepOutcome,
    Trajectory,
    apply_local_unitary,
    circuit_oracle,
    protocol_step,
    run_trajectory,
    selection_step_mixed,
    selection_step_pure,
)
from .reduced import (
    Constants,
    CycleReport,
    ParityLabel,
    compute_constants,
    critical_points,
    find_cycles,
    fixed_points,
    iterate_reduced,
    step_map,
    step_map_derivative,
    two_step_map,
)
from .riemann import INFINITY, RiemannPoint
from .states import (
    DensityMatrix2Q,
    PureState2Q,
    density_from_state,
    entanglement_entropy,
    purity,
    state_from_zeta,
    trace_distance,
    werner_mix,
)

__version__ = "0.1.0"

__all__ = [
    "BasinGrid", "BasinLabel", "GridSpec", "boundary_dimension",
    "classify_point", "compute_basin", "count_label_components",
    "grid_to_csv", "render_ppm", "sensitivity_probe",
    "StabilityReport", "find_mixed_cycles", "from_fano", "jacobian_cycle",
    "step_fano", "to_fano", "backend_name",
    "HADAMARD", "LocalUnitary", "StepOutcome", "Trajectory",
    "apply_local_unitary", "circuit_oracle", "protocol_step",
    "run_trajectory", "selection_step_mixed", "selection_step_pure",
    "Constants", "CycleReport", "ParityLabel", "compute_constants",
    "critical_points", "find_cycles", "fixed_points", "iterate_reduced",
    "step_map", "step_map_derivative", "two_step_map",
    "INFINITY", "RiemannPoint",
    "DensityMatrix2Q", "PureState2Q", "density_from_state",
    "entanglement_entropy", "purity", "state_from_zeta", "trace_distance",
    "werner_mix",
]
