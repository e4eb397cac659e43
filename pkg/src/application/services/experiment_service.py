"""
Experiment Service - CHSH sweep over the power rule and the search for
order-independent observables on entangled states
"""
import math
from pathlib import Path
from typing import List, Optional, Sequence, Union
import numpy as np
from src.config.constants import MeasurementOrder
from src.config.settings import Settings, get_settings
from src.domain.entities.records import ObservableSearchResult, SweepRow
from src.domain.entities.state import TwoQubitState, bell_state
from src.domain.value_objects.observable import QubitObservable, chsh_observables, eigenbases
from src.domain.value_objects.probability_rule import ProbabilityRule
from src.application.services.measurement_service import MeasurementService
from src.application.services.box_analysis_service import BoxAnalysisService
from src.adapters.files.csv_export import write_sweep_csv
from src.adapters.files.svg_chart import write_sweep_svg
from src.error_trace.exceptions import (
    DomainError,
    EmptySweepError,
    NotEntangledError,
    ValidationError
)
from src.models.local_search import LocalSearch
from src.utilities.logger import get_logger

logger = get_logger(__name__)

_SQRT_PLUS = math.sqrt(2.0 + math.sqrt(2.0))
_SQRT_MINUS = math.sqrt(2.0 - math.sqrt(2.0))


def closed_form_chsh(m: float) -> float:
    """
    CHSH value of the Bell state under the power rule

    B = 4 (a^m - b^m) / (a^m + b^m), a = sqrt(2 + sqrt2), b = sqrt(2 - sqrt2),
    evaluated as 4 (1 - t) / (1 + t) with t = (b/a)^m.
    """
    if not m > 0:
        raise DomainError("Exponent m must be positive", details={"m": m})
    t = (_SQRT_MINUS / _SQRT_PLUS) ** m
    return 4.0 * (1.0 - t) / (1.0 + t)


def _pairs_from_angles(params: np.ndarray):
    observables = [
        QubitObservable.from_angles(params[2 * k], params[2 * k + 1]) for k in range(4)
    ]
    return (observables[0], observables[1]), (observables[2], observables[3])


def _angles_from_pairs(alice, bob) -> np.ndarray:
    return np.array([angle for obs in (*alice, *bob) for angle in obs.angles()])


class ExperimentService:
    """Runs the CHSH sweep and the observable search"""

    def __init__(
        self,
        settings: Optional[Settings] = None,
        measurement: Optional[MeasurementService] = None,
        analysis: Optional[BoxAnalysisService] = None
    ):
        self.settings = settings or get_settings()
        self.measurement = measurement or MeasurementService(self.settings)
        self.analysis = analysis or BoxAnalysisService(self.settings)
        self.table_tolerance = self.settings.table_tolerance
        self.angle_search = LocalSearch(min_step=self.settings.angle_search_min_step)

    def sweep_row(self, m: float) -> SweepRow:
        """Engine and closed-form CHSH for the Bell state at one exponent"""
        alice, bob = chsh_observables()
        box = self.measurement.assemble_box(bell_state(), alice, bob, ProbabilityRule.power(m))
        engine = self.analysis.chsh_value(box, MeasurementOrder.ALICE_FIRST)
        bob_first = self.analysis.chsh_value(box, MeasurementOrder.BOB_FIRST)
        if abs(bob_first - engine) > self.table_tolerance:
            logger.warning(f"Bob-first CHSH {bob_first:.12f} differs from Alice-first {engine:.12f} at m={m:g}")
        return SweepRow(
            m=float(m),
            chsh_engine=engine,
            chsh_closed_form=closed_form_chsh(m),
            nco_residual=self.analysis.order_residual(box)
        )

    def chsh_sweep(self, m_start: float, m_end: float, steps: int) -> List[SweepRow]:
        """
        CHSH value against the exponent on a uniform grid

        Args:
            m_start: First exponent (> 0)
            m_end: Last exponent (> m_start)
            steps: Number of grid points (>= 2)

        Returns:
            Rows ordered by m
        """
        if not 0 < m_start < m_end:
            raise ValidationError("Need 0 < m_start < m_end", details={"m_start": m_start, "m_end": m_end})
        if steps < 2:
            raise ValidationError("Need at least 2 steps", details={"steps": steps})

        rows = [self.sweep_row(float(m)) for m in np.linspace(m_start, m_end, steps)]
        worst = max(abs(r.chsh_engine - r.chsh_closed_form) for r in rows)
        logger.info(f"Sweep over [{m_start:g}, {m_end:g}] with {steps} points, max closed-form gap {worst:.2e}")
        return rows

    def nco_observable_search(
        self,
        state: TwoQubitState,
        rule: ProbabilityRule,
        restarts: int,
        seed: int
    ) -> ObservableSearchResult:
        """
        Look for observables making the box order independent

        Minimizes max |P_A - P_B| over the 8 Bloch angles. Restart 0 starts from
        the CHSH settings, the others from uniformly random angles. A restart
        stops once its residual is within the table tolerance. The best point
        found is reported as is; no global optimality is claimed.

        Raises:
            NotEntangledError: If the state is a product state
        """
        if restarts < 1:
            raise ValidationError("restarts must be positive", details={"restarts": restarts})
        if not state.is_entangled():
            raise NotEntangledError(state.schmidt_coefficients())

        matrix = state.matrix

        def objective(params: np.ndarray) -> float:
            bases = eigenbases(params[0::2], params[1::2])
            alice_first, bob_first = self.measurement.basis_order_tables(matrix, bases[:2], bases[2:], rule)
            return float(np.max(np.abs(alice_first - bob_first)))

        starts = [_angles_from_pairs(*chsh_observables())]
        for rng in self.angle_search.restart_generators(seed, restarts)[1:]:
            thetas = rng.uniform(0.0, math.pi, size=4)
            phis = rng.uniform(0.0, 2.0 * math.pi, size=4)
            starts.append(np.column_stack([thetas, phis]).ravel())

        best = self.angle_search.run(objective, starts, target=self.table_tolerance)
        alice, bob = _pairs_from_angles(best.x)
        box = self.measurement.assemble_box(state, alice, bob, rule)
        result = ObservableSearchResult(
            alice=alice,
            bob=bob,
            residual=self.analysis.order_residual(box),
            chsh=self.analysis.chsh_value(box, MeasurementOrder.ALICE_FIRST),
            restarts=restarts,
            seed=seed,
            best_restart=best.restart
        )
        logger.info(
            f"Observable search ({rule.name}): residual {result.residual:.3e}, "
            f"CHSH {result.chsh:.6f}, best restart {result.best_restart}"
        )
        return result

    @staticmethod
    def emit_sweep_csv(rows: Sequence[SweepRow], path: Union[str, Path]) -> Path:
        """Write the sweep as CSV (m, chsh_engine, chsh_closed_form, nco_residual)"""
        if not rows:
            raise EmptySweepError()
        return write_sweep_csv(rows, path)

    @staticmethod
    def emit_sweep_svg(rows: Sequence[SweepRow], path: Union[str, Path]) -> Path:
        """Write the sweep as a line chart of B against m"""
        if not rows:
            raise EmptySweepError()
        return write_sweep_svg(rows, path)


_service = ExperimentService()

sweep_row = _service.sweep_row
chsh_sweep = _service.chsh_sweep
nco_observable_search = _service.nco_observable_search
emit_sweep_csv = _service.emit_sweep_csv
emit_sweep_svg = _service.emit_sweep_svg
