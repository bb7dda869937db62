from qloc.xxz.ansatz import (
    AnsatzParameters,
    QuasiparticleWavepacketSpec,
    VariationalResult,
    adiabatic_initial_guess,
    ansatz_circuit,
    cell_momenta,
    energy_objective,
    exact_wavepacket_energy,
    initial_wavepacket_state,
    layer_sweep,
    optimize,
    singlet_amplitudes,
    singlet_wavepacket_amplitudes,
    singlet_wavepacket_circuit,
)
from qloc.xxz.dynamics import (
    EnergyDensity,
    evolve_energy_density,
    trotter_step,
    velocity,
    wavepacket_center,
)
from qloc.xxz.model import (
    XXZModel,
    bond_energies,
    energy,
    ground_state,
    translate,
    xxz_hamiltonian,
)
from qloc.xxz.spectrum import (
    MomentumLevel,
    MomentumSpectrum,
    exact_lowest_excitations,
    momentum_basis,
    momentum_grid,
)

__all__ = (
    "AnsatzParameters",
    "EnergyDensity",
    "MomentumLevel",
    "MomentumSpectrum",
    "QuasiparticleWavepacketSpec",
    "VariationalResult",
    "XXZModel",
    "adiabatic_initial_guess",
    "ansatz_circuit",
    "bond_energies",
    "cell_momenta",
    "energy",
    "energy_objective",
    "evolve_energy_density",
    "exact_lowest_excitations",
    "exact_wavepacket_energy",
    "ground_state",
    "initial_wavepacket_state",
    "layer_sweep",
    "momentum_basis",
    "momentum_grid",
    "optimize",
    "singlet_amplitudes",
    "singlet_wavepacket_amplitudes",
    "singlet_wavepacket_circuit",
    "translate",
    "trotter_step",
    "velocity",
    "wavepacket_center",
    "xxz_hamiltonian",
)
