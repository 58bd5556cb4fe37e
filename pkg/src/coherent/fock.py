"""Exact pair-mode Fock space for small ensembles.

Each pair mode (k up, -k down) is a two-level system with basis |0> (empty)
and |1> (pair occupied). Pair operators on different modes commute, so the
2^M space is a plain Kronecker product; mode 0 is the most significant bit
of a basis index.
"""
import logging
from functools import reduce

import numpy as np
from scipy import sparse

from src.coherent.schemas import PairEnsemble
from src.coherent.validators import ensure_fock_size, ensure_uniform_grid
from src.core.exceptions import PreconditionError

log = logging.getLogger(__name__)

# pair annihilation |1> -> |0>
_S_MINUS = sparse.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
_N_PAIR = sparse.csr_matrix(np.diag([0.0, 1.0]))
_EYE2 = sparse.identity(2, format="csr")


def _embed(local: sparse.spmatrix, site: int, M: int) -> sparse.csr_matrix:
    factors = [_EYE2] * M
    factors[site] = local
    return reduce(lambda a, b: sparse.kron(a, b, format="csr"), factors)


class FockOracle:
    def __init__(self, thetas: np.ndarray):
        thetas = np.asarray(thetas, dtype=float)
        ensure_fock_size(thetas.size)
        self.M = int(thetas.size)
        self.dimension = 2**self.M
        self.thetas = thetas
        self.Omega = float(np.sum(thetas**2))
        if self.Omega == 0.0:
            raise PreconditionError("Collective mode is empty (all angles vanish)")

        self.S_minus = [_embed(_S_MINUS, k, self.M) for k in range(self.M)]
        self.S_plus = [op.T.tocsr() for op in self.S_minus]
        self.n_pair = [_embed(_N_PAIR, k, self.M) for k in range(self.M)]
        self.b = sum(t * op for t, op in zip(thetas, self.S_minus)) / np.sqrt(self.Omega)
        self.b_dag = self.b.conj().T.tocsr()

        indices = np.arange(self.dimension)
        self.pair_counts = np.array([bin(i).count("1") for i in indices])
        self.number = sparse.diags(2.0 * self.pair_counts.astype(float), format="csr")
        log.debug("Fock oracle with M=%d, dimension %d", self.M, self.dimension)

    @property
    def cooper_pair_number(self) -> sparse.csr_matrix:
        return (0.5 * self.number).tocsr()

    @property
    def commutator(self) -> sparse.csr_matrix:
        return (self.b @ self.b_dag - self.b_dag @ self.b).tocsr()

    @property
    def eta(self) -> sparse.csr_matrix:
        return (sparse.identity(self.dimension, format="csr") - self.commutator).tocsr()

    def state(self, phi: float) -> np.ndarray:
        """BCS product state prod_k (cos th_k |0> + e^{i phi} sin th_k |1>)."""
        phase = np.exp(1j * phi)
        factors = [np.array([np.cos(t), phase * np.sin(t)]) for t in self.thetas]
        return reduce(np.kron, factors)

    @staticmethod
    def expectation(op: sparse.spmatrix, psi: np.ndarray) -> complex:
        return complex(np.vdot(psi, op @ psi))

    def eta_moments(self, phi: float = 0.0) -> tuple[float, float]:
        psi = self.state(phi)
        eta = self.eta
        mean = self.expectation(eta, psi)
        second = self.expectation(eta @ eta, psi)
        return float(mean.real), float((second - mean**2).real)

    def number_phase_derivative_check(
        self,
        n_target: int,
        phi_grid,
        operator: str = "N",
    ) -> float:
        """Max |<phi|N|n> - 2i d/dphi <phi|n>| over basis states with n_target particles.

        Central differences on the interior of ``phi_grid``. With
        ``operator="Nc"`` the Cooper-pair number N/2 is compared against
        i d/dphi instead.
        """
        h = ensure_uniform_grid(phi_grid)
        if n_target < 0:
            raise PreconditionError("Particle number must be non-negative")
        if operator not in ("N", "Nc"):
            raise PreconditionError(f"Unknown number operator: {operator}")
        grid = np.asarray(phi_grid, dtype=float)
        # bras <phi| as rows
        bras = np.array([self.state(phi) for phi in grid]).conj()
        if n_target % 2:
            # the pair space holds no odd-particle states, every overlap vanishes
            return 0.0
        selected = np.flatnonzero(2 * self.pair_counts == n_target)
        if selected.size == 0:
            return 0.0
        overlaps = bras[:, selected]
        if operator == "N":
            diagonal, prefactor = self.number.diagonal()[selected], 2j
        else:
            diagonal, prefactor = self.cooper_pair_number.diagonal()[selected], 1j
        lhs = overlaps[1:-1] * diagonal
        derivative = (overlaps[2:] - overlaps[:-2]) / (2.0 * h)
        return float(np.max(np.abs(lhs - prefactor * derivative)))

    @classmethod
    def from_ensemble(cls, ens: PairEnsemble) -> "FockOracle":
        return cls(ens.thetas)
