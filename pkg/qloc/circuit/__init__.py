from qloc.circuit.backends import (
    ExecutionResult,
    QuantumStateFull,
    QuantumStateSector,
    SectorBasis,
    apply,
    gate_matrix,
    sample,
    sector_basis,
)
from qloc.circuit.ir import (
    Circuit,
    GateKind,
    GateOp,
    dumps,
    loads,
    two_qubit_depth,
    two_qubit_gate_count,
)
from qloc.circuit.shots import ShotSet
from qloc.circuit.trotter import (
    TrotterComparison,
    TrotterPlan,
    build_trotter_circuit,
    hopping_layers,
    state_distance,
    state_error,
    trotter_evolve,
    trotter_vs_exact,
)

__all__ = (
    "Circuit",
    "ExecutionResult",
    "GateKind",
    "GateOp",
    "QuantumStateFull",
    "QuantumStateSector",
    "SectorBasis",
    "ShotSet",
    "TrotterComparison",
    "TrotterPlan",
    "apply",
    "build_trotter_circuit",
    "dumps",
    "gate_matrix",
    "hopping_layers",
    "loads",
    "sample",
    "sector_basis",
    "state_distance",
    "state_error",
    "trotter_evolve",
    "trotter_vs_exact",
    "two_qubit_depth",
    "two_qubit_gate_count",
)
