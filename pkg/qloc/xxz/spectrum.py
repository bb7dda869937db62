"""Momentum-resolved exact diagonalization of the XXZ chain.

Translation by one site commutes with H, so H splits into blocks labelled
by the momenta ``k = 2πm/N``. The block basis vector of an orbit
``r, T r, …, T^{P−1} r`` is ``Σ_l e^{ikl} T^l r / √P`` and exists when
``e^{ikP} = 1``; a particle at site ``x`` then carries the phase ``e^{ikx}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import ring
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from qloc import logger
from qloc.exceptions import InvalidInput
from qloc.utils.parallel import ordered_map
from qloc.xxz.model import DENSE_LIMIT, XXZModel, translation, xxz_hamiltonian

core_log = logger.Core.logger()

# Energy difference under which two levels form a multiplet
DEGENERACY_TOLERANCE: float = 1e-8
# Interaction strengths with symmetry-enforced degeneracies
DEGENERATE_DELTAS: tuple[float, ...] = (0.0, -0.5)


def momentum_grid(N: int) -> np.ndarray:
    """Return ``2πm/N`` for ``m = −N/2+1 … N/2``, in (−π, π]."""
    return 2 * np.pi * np.arange(-N // 2 + 1, N // 2 + 1) / N


def _orbits(perm: np.ndarray) -> list[np.ndarray]:
    seen = np.zeros(len(perm), dtype=bool)
    orbits: list[np.ndarray] = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        current = int(perm[start])
        while current != start:
            orbit.append(current)
            seen[current] = True
            current = int(perm[current])
        orbits.append(np.array(orbit))
    return orbits


def momentum_basis(model: XXZModel, m: int) -> scipy.sparse.csr_matrix:
    """Return the isometry ``V_k`` (sector dim × block dim) of momentum ``2πm/N``."""
    N = model.N
    k = 2 * np.pi * m / N
    rows: list[np.ndarray] = []
    columns: list[np.ndarray] = []
    values: list[np.ndarray] = []
    column: int = 0
    for orbit in _orbits(translation(model.basis)):
        period = len(orbit)
        if (m * period) % N:
            continue
        steps = np.arange(period)
        rows.append(orbit)
        columns.append(np.full(period, column))
        values.append(np.exp(1j * k * steps) / math.sqrt(period))
        column += 1
    if column == 0:
        return scipy.sparse.csr_matrix((len(model.basis), 0), dtype=complex)
    return scipy.sparse.csr_matrix(
        (np.concatenate(values), (np.concatenate(rows), np.concatenate(columns))),
        shape=(len(model.basis), column),
    )


@dataclass
class MomentumLevel:
    """Lowest level of one momentum block.

    ``multiplicity`` counts the levels within the degeneracy tolerance;
    ``states`` holds all of them as sector amplitude columns.
    """

    k: float
    energy: float
    excitation: float
    multiplicity: int
    states: np.ndarray = field(repr=False)

    @property
    def state(self) -> np.ndarray:
        return self.states[:, 0]


@dataclass
class MomentumSpectrum:
    model: XXZModel
    ground_energy: float
    entries: dict[float, MomentumLevel] = field(repr=False)

    def momenta(self) -> list[float]:
        return sorted(self.entries)

    def level(self, k: float) -> MomentumLevel:
        for momentum, level in self.entries.items():
            if math.isclose(momentum, k, abs_tol=1e-9):
                return level
        raise InvalidInput(f"k={k} is not on the momentum grid of N={self.model.N}.")

    def excitation(self, k: float) -> float:
        return self.level(k).excitation

    def rows(self) -> list[dict]:
        return [
            {
                "N": self.model.N,
                "delta": self.model.delta,
                "k": k,
                "excitation": self.entries[k].excitation,
                "multiplicity": self.entries[k].multiplicity,
            }
            for k in self.momenta()
        ]


def _lowest_levels(model: XXZModel, m: int) -> tuple[float, np.ndarray, np.ndarray]:
    V = momentum_basis(model, m)
    H_k = (V.conj().T @ xxz_hamiltonian(model) @ V).toarray()
    H_k = (H_k + H_k.conj().T) / 2
    if H_k.shape[0] > DENSE_LIMIT:
        count = min(6, H_k.shape[0] - 1)
        v0 = np.ones(H_k.shape[0], dtype=complex)
        energies, vectors = scipy.sparse.linalg.eigsh(H_k, k=count, which="SA", v0=v0)
        order = np.argsort(energies)
        energies, vectors = energies[order], vectors[:, order]
    else:
        energies, vectors = scipy.linalg.eigh(H_k)
    return 2 * np.pi * m / model.N, energies, V @ vectors


@ring.lru()
def exact_lowest_excitations(model: XXZModel, workers: int = 1) -> MomentumSpectrum:
    """Lowest energy of every momentum block, relative to the ground energy."""
    orders = list(range(-model.N // 2 + 1, model.N // 2 + 1))
    blocks = ordered_map(lambda m: _lowest_levels(model, m), orders, workers)
    ground = min(float(energies[0]) for _, energies, _ in blocks)

    entries: dict[float, MomentumLevel] = {}
    degenerate: list[float] = []
    for k, energies, vectors in blocks:
        multiplicity = int(np.sum(energies - energies[0] < DEGENERACY_TOLERANCE))
        if multiplicity > 1:
            degenerate.append(k)
        entries[float(k)] = MomentumLevel(
            k=float(k),
            energy=float(energies[0]),
            excitation=float(energies[0]) - ground,
            multiplicity=multiplicity,
            states=np.asarray(vectors[:, :multiplicity]),
        )

    if degenerate:
        message = (
            f"XXZ N={model.N} Δ={model.delta}: degenerate lowest levels at "
            f"k/π = {', '.join(f'{k / np.pi:.3f}' for k in degenerate)}."
        )
        if model.delta in DEGENERATE_DELTAS:
            core_log.info(None, message)
        else:
            core_log.warning(None, message)
    return MomentumSpectrum(model=model, ground_energy=ground, entries=entries)
