from qloc.anderson.ensemble import (
    BinnedCurve,
    ipr_timeseries,
    ipr_timeseries_ensemble,
    ipr_vs_energy,
    overlap_histogram,
    scan_momentum,
    select_representative_disorder,
)
from qloc.anderson.lattice import (
    Chain,
    DisorderRealization,
    Lattice,
    Lattice2D,
    build_hamiltonian,
    dispersion,
)
from qloc.anderson.spectrum import (
    SpectrumResult,
    diagonalize,
    exact_evolve,
    spectrum_overlaps,
)
from qloc.anderson.states import (
    SingleParticleState,
    WavepacketSpec,
    build_wavepacket,
    ipr,
    plane_wave,
    probability_density,
)

__all__ = (
    "BinnedCurve",
    "Chain",
    "DisorderRealization",
    "Lattice",
    "Lattice2D",
    "SingleParticleState",
    "SpectrumResult",
    "WavepacketSpec",
    "build_hamiltonian",
    "build_wavepacket",
    "diagonalize",
    "dispersion",
    "exact_evolve",
    "ipr",
    "ipr_timeseries",
    "ipr_timeseries_ensemble",
    "ipr_vs_energy",
    "overlap_histogram",
    "plane_wave",
    "probability_density",
    "scan_momentum",
    "select_representative_disorder",
    "spectrum_overlaps",
)
