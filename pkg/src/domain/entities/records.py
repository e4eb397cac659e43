"""
Result Entities - scans, solves, sweeps and searches
"""
from dataclasses import dataclass
from typing import Tuple
import numpy as np
from src.domain.entities.state import TwoQubitState
from src.domain.value_objects.observable import QubitObservable, ObservablePair
from src.error_trace.exceptions import ValidationError


@dataclass(frozen=True)
class ResidualRecord:
    """No-causal-order functional equation residual at one grid point"""

    q1: float
    q2: float
    residual: float

    def __post_init__(self):
        if self.q1 < 0 or self.q2 < 0 or self.q1 + self.q2 > 1.0 + 1e-12:
            raise ValidationError("Residual record needs q1, q2 >= 0 and q1 + q2 <= 1")
        if self.residual < 0:
            raise ValidationError("Residual must be non-negative")


@dataclass(frozen=True)
class GridScan:
    """Residual scan over the triangular grid"""

    max_residual: float
    argmax: ResidualRecord
    records: Tuple[ResidualRecord, ...]
    grid: int

    def to_rows(self) -> list:
        return [(r.q1, r.q2, r.residual) for r in self.records]


@dataclass(frozen=True)
class AdditivityResult:
    """Maxima of the summed-pair and Cauchy additivity deviations"""

    summed_pair_max: float
    cauchy_max: float


@dataclass(frozen=True, eq=False)
class RuleSolution:
    """Discretized probability rule reconstructed on {i/n}"""

    grid: np.ndarray
    values: np.ndarray
    sup_distance: float
    residual_norm: float
    iterations: int

    def to_rows(self) -> list:
        return list(zip(self.grid.tolist(), self.values.tolist()))


@dataclass(frozen=True)
class ViolationResult:
    """State maximizing the order dependence of a box"""

    state: TwoQubitState
    max_violation: float


@dataclass(frozen=True)
class SweepRow:
    """One exponent of the CHSH sweep"""

    m: float
    chsh_engine: float
    chsh_closed_form: float
    nco_residual: float

    def as_tuple(self) -> tuple:
        return (self.m, self.chsh_engine, self.chsh_closed_form, self.nco_residual)


@dataclass(frozen=True)
class ObservableSearchResult:
    """Best observables found by the order-independence search"""

    alice: ObservablePair
    bob: ObservablePair
    residual: float
    chsh: float
    restarts: int
    seed: int
    best_restart: int

    @property
    def observables(self) -> Tuple[QubitObservable, QubitObservable, QubitObservable, QubitObservable]:
        return (*self.alice, *self.bob)

    def to_dict(self) -> dict:
        """Convert to the search result document"""
        labels = ("alice_x0", "alice_x1", "bob_y0", "bob_y1")
        return {
            "angles": {
                label: {"theta": obs.theta, "phi": obs.phi}
                for label, obs in zip(labels, self.observables)
            },
            "residual": self.residual,
            "chsh": self.chsh,
            "restarts": self.restarts,
            "seed": self.seed,
            "best_restart": self.best_restart
        }
