import math

import numpy as np

from src.chain.schemas import ChainSpec
from src.chain.service import JosephsonChain
from src.coherent.schemas import AngleConvention, PairEnsemble
from src.core.schemas import PhysicalParams
from src.core.service import CoreModel
from src.gap.solver import GapSolver


def _solve(ratio: float, params: PhysicalParams | None = None, **kwargs):
    params = params or PhysicalParams()
    Uc = CoreModel.critical_coupling(params)
    return GapSolver.solve_self_consistent(ratio * Uc, params.n, params=params, **kwargs)


def _make_ensemble(
    rng: np.random.Generator,
    M: int,
    *,
    phi: float | None = None,
    convention: AngleConvention = AngleConvention.half_angle,
) -> PairEnsemble:
    eps = rng.uniform(-1.0, 1.0, M)
    gap = rng.uniform(0.05, 1.0, M)
    if phi is None:
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
    return PairEnsemble.from_modes(eps, gap, phi=phi, convention=convention)


def _make_chain(N: int = 6, *, G: float = 1.0, U: float = 1.0, Delta: float = 0.2, E_c: float = 0.05) -> ChainSpec:
    return ChainSpec(
        N=N,
        E_c=E_c,
        E_J=JosephsonChain.josephson_energy(G, U, Delta, Delta),
        G=G,
        U=U,
        Delta=[Delta] * N,
    )
