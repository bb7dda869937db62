from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import ring
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from qloc.circuit import QuantumStateSector, SectorBasis, sector_basis
from qloc.exceptions import InvalidInput

# Sector dimension above which iterative eigensolvers replace dense ones
DENSE_LIMIT: int = 1000


@dataclass(frozen=True)
class XXZModel:
    """Periodic XXZ chain −(1/2) Σ_i (X_iX_{i+1} + Y_iY_{i+1} − Δ Z_iZ_{i+1}) at half filling."""

    N: int
    delta: float

    def __post_init__(self):
        if self.N < 6 or self.N % 4 != 2:
            raise InvalidInput(f"Chain length must be 2 + 4n with n ≥ 1, got {self.N}.")

    def __ring_key__(self) -> str:
        return f"xxz:{self.N}:{self.delta!r}"

    @property
    def excitations(self) -> int:
        return self.N // 2

    @property
    def basis(self) -> SectorBasis:
        return sector_basis(self.N, self.excitations)

    def bonds(self) -> list[tuple[int, int]]:
        return [(i, (i + 1) % self.N) for i in range(self.N)]


def _zz(basis: SectorBasis, a: int, b: int) -> np.ndarray:
    return (1 - 2 * basis.bits(a)) * (1 - 2 * basis.bits(b))


def bond_operator(model: XXZModel, bond: int) -> scipy.sparse.csr_matrix:
    """Sector matrix of the bond term −(1/2)(XX + YY) + (Δ/2) ZZ on ``(bond, bond+1)``."""
    basis = model.basis
    a, b = model.bonds()[bond]
    _, flipped, partner = basis.pair(a, b)
    rows = np.flatnonzero(flipped)
    dim = len(basis)
    hopping = scipy.sparse.csr_matrix(
        (-np.ones(len(rows)), (rows, partner[rows])), shape=(dim, dim)
    )
    return hopping + scipy.sparse.diags(0.5 * model.delta * _zz(basis, a, b))


@ring.lru()
def xxz_hamiltonian(model: XXZModel) -> scipy.sparse.csr_matrix:
    """Return H on the C(N, N/2)-dimensional half-filling basis."""
    H = bond_operator(model, 0)
    for bond in range(1, model.N):
        H = H + bond_operator(model, bond)
    return H.tocsr()


def bond_energies(model: XXZModel, amplitudes: np.ndarray) -> np.ndarray:
    """Return ⟨h_n⟩ for every bond ``n``."""
    basis = model.basis
    probabilities = np.abs(amplitudes) ** 2
    energies = np.empty(model.N)
    for n, (a, b) in enumerate(model.bonds()):
        _, flipped, partner = basis.pair(a, b)
        hopping = -np.vdot(amplitudes[flipped], amplitudes[partner[flipped]]).real
        energies[n] = hopping + 0.5 * model.delta * float(probabilities @ _zz(basis, a, b))
    return energies


def energy(model: XXZModel, amplitudes: np.ndarray) -> float:
    return float(np.vdot(amplitudes, xxz_hamiltonian(model) @ amplitudes).real)


def translation(basis: SectorBasis) -> np.ndarray:
    """Return ``perm`` with ``perm[i]`` the index of state ``i`` shifted by one site."""
    n = basis.num_qubits
    full = (1 << n) - 1
    states = basis.states
    shifted = ((states << 1) & full) | (states >> (n - 1))
    return basis.index(shifted)


def translate(amplitudes: np.ndarray, basis: SectorBasis, sites: int = 1) -> np.ndarray:
    """Move every excitation ``sites`` sites to the right."""
    perm = translation(basis)
    result = np.asarray(amplitudes)
    for _ in range(sites % basis.num_qubits):
        moved = np.empty_like(result)
        moved[perm] = result
        result = moved
    return result


@ring.lru()
def dense_spectrum(model: XXZModel) -> tuple[np.ndarray, np.ndarray]:
    """Full eigendecomposition of the sector Hamiltonian."""
    return scipy.linalg.eigh(xxz_hamiltonian(model).toarray())


def ground_state(model: XXZModel) -> tuple[float, QuantumStateSector]:
    """Return the ground energy and state of the half-filling sector."""
    H = xxz_hamiltonian(model)
    if H.shape[0] <= DENSE_LIMIT:
        energies, vectors = dense_spectrum(model)
        value, vector = energies[0], vectors[:, 0]
    else:
        v0 = np.ones(H.shape[0])
        values, vectors = scipy.sparse.linalg.eigsh(H, k=1, which="SA", v0=v0)
        value, vector = values[0], vectors[:, 0]
    # Fix the sign for reproducible output
    vector = vector * np.sign(vector[np.argmax(np.abs(vector))])
    state = QuantumStateSector.from_amplitudes(model.N, model.excitations, vector)
    return float(value), state
