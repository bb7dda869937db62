from qloc.stateprep.fidelity import IdealReference, classical_fidelity, ideal_reference
from qloc.stateprep.fusion import (
    FusionOutcome,
    MCMFF2Config,
    fusion_ops,
    mcmff1_circuit,
    mcmff1_run,
    mcmff1_success_rate,
    mcmff2_ideal_fidelity,
    mcmff2_success_probability,
    mcmff2_table,
    success_branch_fidelity,
)
from qloc.stateprep.tree import (
    AmplitudeTreePlan,
    TreeNode,
    synthesize_wavepacket_circuit,
    w_state,
)

__all__ = (
    "AmplitudeTreePlan",
    "FusionOutcome",
    "IdealReference",
    "MCMFF2Config",
    "TreeNode",
    "classical_fidelity",
    "fusion_ops",
    "ideal_reference",
    "mcmff1_circuit",
    "mcmff1_run",
    "mcmff1_success_rate",
    "mcmff2_ideal_fidelity",
    "mcmff2_success_probability",
    "mcmff2_table",
    "success_branch_fidelity",
    "synthesize_wavepacket_circuit",
    "w_state",
)
