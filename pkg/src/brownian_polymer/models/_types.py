"""Value types produced and consumed by the numerical models."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np


class PolygammaMethod(Enum):
    """Evaluation path used for a polygamma value."""

    RECURRENCE_PLUS_ASYMPTOTIC = "recurrence_plus_asymptotic"
    POWER_SERIES = "power_series"


@dataclass(frozen=True)
class PolygammaResult:
    """A digamma, trigamma or tetragamma value with the route taken to compute it."""

    value: float
    method: PolygammaMethod
    shift_count: int = 0


class FreeEnergyBranch(Enum):
    EXACT = "exact"
    SMALL_BETA_SERIES = "small_beta_series"


@dataclass(frozen=True)
class FreeEnergyPoint:
    """
    Evaluation of the free energy density at one inverse temperature.

    Parameters
    ----------
    beta : float
    value : float
    maximizer_a : float, optional
        The a > 0 solving trigamma(a) = beta**2. Absent on the small-beta series branch.
    branch : FreeEnergyBranch
    """

    beta: float
    value: float
    maximizer_a: Optional[float]
    branch: FreeEnergyBranch


@dataclass(frozen=True)
class RatePoint:
    """A convex conjugate value together with the argument achieving the supremum."""

    arg: float
    value: float
    optimizer_theta: float


@dataclass(frozen=True, eq=False)
class BrownianLattice:
    """
    Independent standard Brownian paths sampled on a shared uniform time grid.

    ``values[i, j]`` is path ``i`` at time ``t_min + j * dt``; every path vanishes at ``anchor_index``.
    The values array is read-only once the lattice is constructed.
    """

    n_paths: int
    t_min: float
    t_max: float
    dt: float
    values: np.ndarray
    seed: int
    anchor_index: int
    replica: int = 0

    def __post_init__(self) -> None:
        if self.values.shape != (self.n_paths, self.grid_size + 1):
            raise ValueError(
                f"Lattice values have shape {self.values.shape}, expected ({self.n_paths}, {self.grid_size + 1})."
            )
        self.values.flags.writeable = False

    @property
    def grid_size(self) -> int:
        return int(round((self.t_max - self.t_min) / self.dt))

    @property
    def times(self) -> np.ndarray:
        return self.t_min + self.dt * np.arange(self.grid_size + 1)


@dataclass(frozen=True)
class EstimateRecord:
    """A Monte Carlo estimate with its provenance."""

    mean: float
    stderr: float
    replicas: int
    n: int
    dt: float
    seed: int
    quantity: str


class TransferMode(Enum):
    LOG_SUM_EXP = "log_sum_exp"
    MAX_PLUS = "max_plus"


@dataclass(frozen=True, eq=False)
class TransferProfile:
    """Recursion state after ``level`` paths: log partition profile or last-passage profile over the grid."""

    level: int
    log_values: np.ndarray
    mode: TransferMode


@dataclass(frozen=True)
class KacDiagnostic:
    """
    Grand-canonical summary of one environment.

    Parameters
    ----------
    m : float
    n : int
    log_xi : float
        (1/n) log of the grand-canonical partition function.
    argmax_x : float
        Maximizer of m*x + gamma_n(x) over the x grid.
    mass_window : float
        Kac-density mass within the declared window around -trigamma(m).
    replicas : int
        Number of environments averaged; the standard errors are zero for a single environment.
    """

    m: float
    n: int
    log_xi: float
    argmax_x: float
    mass_window: float
    replicas: int = 1
    log_xi_stderr: float = 0.0
    argmax_stderr: float = 0.0
    mass_stderr: float = 0.0


@dataclass(frozen=True)
class MomentIdentityResult:
    """Both sides of the order-statistics moment identity on one lattice."""

    lhs: float
    rhs: float
    lhs_stderr: float
    mc_samples: int


@dataclass(frozen=True)
class ChernoffPoint:
    theta: float
    tail_probability: float
    bound: float


@dataclass(frozen=True)
class QueueSample:
    """One realization of the stationary queue functional r(0)."""

    m: float
    r0: float
    horizon: float
    dt: float
    seed: int


@dataclass(frozen=True, eq=False)
class TandemResult:
    m: float
    n: int
    mean_r: float
    per_stage: np.ndarray


@dataclass(frozen=True)
class StatisticalVerdict:
    """One windowed comparison: ``passed`` iff ``|estimate - target| <= tolerance``."""

    name: str
    estimate: float
    target: float
    stderr: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class DepartureReport:
    m: float
    n_samples: int
    verdicts: tuple[StatisticalVerdict, ...]

    @property
    def passed(self) -> bool:
        return all(verdict.passed for verdict in self.verdicts)


@dataclass(frozen=True, eq=False)
class TridiagonalMatrix:
    """Real symmetric tridiagonal matrix stored by its diagonal and nonnegative off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self) -> None:
        if self.diag.ndim != 1 or len(self.diag) < 1:
            raise ValueError("The diagonal must be a non-empty vector.")
        if self.offdiag.shape != (len(self.diag) - 1,):
            raise ValueError(
                f"The off-diagonal of a {len(self.diag)}x{len(self.diag)} matrix must have length {len(self.diag) - 1}."
            )
        if np.any(self.offdiag < 0):
            raise ValueError("Off-diagonal entries must be nonnegative.")

    @property
    def size(self) -> int:
        return len(self.diag)


@dataclass(frozen=True)
class GueComparison:
    """Largest GUE eigenvalue against grid last-passage time on [0, 1] with n paths."""

    n: int
    replicas: int
    seed: int
    dt: float
    gue_mean: float
    gue_stderr: float
    lpp_mean: float
    lpp_stderr: float
    allowance: float
    agrees: bool
    one_sided: bool

    @property
    def verdict(self) -> bool:
        return self.agrees and self.one_sided
