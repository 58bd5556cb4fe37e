import enum

from pydantic import BaseModel, ConfigDict

from src.chain.schemas import CoherenceLabel


class PairingLabel(str, enum.Enum):
    BCS = "BCS"
    BEC = "BEC"
    boundary = "boundary"


class RegimeLabel(BaseModel):
    model_config = ConfigDict(frozen=True)

    pairing: PairingLabel
    coherence: CoherenceLabel


class DiagramCell(BaseModel):
    """Одна точка диаграммы (U, E_c, G).

    ``E_c``, ``G``, ``gap_energy`` и ``E_J`` в энергетической единице диаграммы
    (мкэВ в физическом режиме, иначе eps0); ``mu`` и ``Delta0`` в единицах
    решателя. ``label`` равен None, если уравнение щели не решилось.
    """

    model_config = ConfigDict(frozen=True)

    U: float
    U_over_Uc: float
    n: float
    E_c: float
    G: float
    mu: float
    Delta0: float
    mu_over_epsF: float
    gap_energy: float
    E_J: float
    sigma2: float
    tol_gap: float
    tol_number: float
    converged: bool
    label: RegimeLabel | None = None
    error: str | None = None


class BoundaryPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    U_over_Uc: float
    mu: float
    mu_over_epsF: float
    E_c: float
    G_closed_form: float
    G_bisection: float
    E_J_over_2E_c: float
