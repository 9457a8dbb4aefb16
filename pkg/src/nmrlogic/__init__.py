"""Single-spin NMR pulse simulator and boolean logic gate synthesis."""

from .spincore import (
    DensityMatrix,
    Magnetization,
    Pulse,
    commutator,
    commutes,
    magnetization,
    propagate,
    rot_axis,
    rot_phi,
    sequence_propagator,
    spin_operator,
    spin_vector,
    superposition_x_state,
    thermal_state,
)
from .observables import (
    GridSpec,
    InitialState,
    ObservableKind,
    observable_grid,
    single_pulse_from_x,
    single_pulse_from_z,
    two_pulse_mixed_fix_closed_form,
    two_pulse_observable,
    two_pulse_pi_half_closed_form,
)
from .gates import (
    ALL_GATES,
    CanalisingProfile,
    GateClass,
    TruthTable,
    canalising_counts,
    gate_class,
    is_canalising_value,
    orbit,
    parse_gate,
    truth_table,
)
from .synthesis import (
    GateAssignment,
    Scenario,
    achievable_classes,
    assignment_realizes,
    capability_checks,
    evaluate_scenario,
    synthesize,
    verify_reference_tables,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_GATES",
    "CanalisingProfile",
    "DensityMatrix",
    "GateAssignment",
    "GateClass",
    "GridSpec",
    "InitialState",
    "Magnetization",
    "ObservableKind",
    "Pulse",
    "Scenario",
    "TruthTable",
    "achievable_classes",
    "assignment_realizes",
    "canalising_counts",
    "capability_checks",
    "commutator",
    "commutes",
    "evaluate_scenario",
    "gate_class",
    "is_canalising_value",
    "magnetization",
    "observable_grid",
    "orbit",
    "parse_gate",
    "propagate",
    "rot_axis",
    "rot_phi",
    "sequence_propagator",
    "single_pulse_from_x",
    "single_pulse_from_z",
    "spin_operator",
    "spin_vector",
    "superposition_x_state",
    "synthesize",
    "thermal_state",
    "truth_table",
    "two_pulse_mixed_fix_closed_form",
    "two_pulse_observable",
    "two_pulse_pi_half_closed_form",
    "verify_reference_tables",
]
