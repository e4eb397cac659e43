"""
Born Uniqueness Service - numerical checks that order independence forces H(p) = p

Setting alpha_3 = 0 reduces P_A(00|00) = P_B(00|00) to
H(q1 + q2) H(q1 / (q1 + q2)) = H(q1) with q1 = |alpha_1|^2, q2 = |alpha_2|^2.
The checks below work in these probability coordinates.
"""
import math
from typing import Optional, Sequence
import numpy as np
from src.config.settings import Settings, get_settings
from src.domain.entities.records import (
    AdditivityResult,
    GridScan,
    ResidualRecord,
    RuleSolution,
    ViolationResult
)
from src.domain.entities.state import TwoQubitState, random_state
from src.domain.value_objects.observable import ObservablePair
from src.domain.value_objects.probability_rule import ProbabilityRule
from src.application.services.measurement_service import MeasurementService
from src.error_trace.exceptions import DomainError, ValidationError
from src.models.local_search import LocalSearch
from src.models.rule_solver import RuleSolver
from src.utilities.logger import get_logger

logger = get_logger(__name__)


def _triangular_grid(n: int):
    """Index pairs (i, j) with 1 <= i + j <= n, in lexicographic order"""
    if n < 2:
        raise ValidationError("Grid resolution must be at least 2", details={"n": n})
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    mask = (i + j >= 1) & (i + j <= n)
    return i[mask], j[mask]


def _vector_to_state(params: np.ndarray) -> TwoQubitState:
    return TwoQubitState.from_vector(params[:4] + 1j * params[4:])


def _normalize(params: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(params)
    if norm < 1e-12:
        return np.array([1.0, 0, 0, 0, 0, 0, 0, 0])
    return params / norm


def state_from_weights(q1: float, q2: float) -> TwoQubitState:
    """alpha_3 = 0 state with |alpha_1|^2 = q1, |alpha_2|^2 = q2"""
    rest = max(1.0 - q1 - q2, 0.0)
    return TwoQubitState.from_vector([math.sqrt(q1), math.sqrt(q2), 0.0, math.sqrt(rest)])


class UniquenessService:
    """Functional-equation scans, rule reconstruction and order-violation search"""

    def __init__(
        self,
        settings: Optional[Settings] = None,
        measurement: Optional[MeasurementService] = None
    ):
        self.settings = settings or get_settings()
        self.measurement = measurement or MeasurementService(self.settings)
        self.default_grid = self.settings.default_grid
        self.search = LocalSearch()

    @staticmethod
    def nco_residual(rule: ProbabilityRule, q1: float, q2: float) -> float:
        """
        |H(q1 + q2) H(q1 / (q1 + q2)) - H(q1)|

        Raises:
            DomainError: If q1 + q2 = 0 or the point lies outside the simplex
        """
        s = q1 + q2
        if q1 < 0 or q2 < 0 or s > 1.0 + 1e-12:
            raise DomainError("Need q1, q2 >= 0 and q1 + q2 <= 1", details={"q1": q1, "q2": q2})
        if s <= 0:
            raise DomainError("The equation degenerates at q1 + q2 = 0", details={"q1": q1, "q2": q2})
        return abs(rule(s) * rule(q1 / s) - rule(q1))

    def residual_grid(self, rule: ProbabilityRule, n: Optional[int] = None) -> GridScan:
        """
        Evaluate the functional-equation residual on {(i/n, j/n)}

        Ties for the maximum go to the lexicographically first grid index.
        """
        n = n or self.default_grid
        i, j = _triangular_grid(n)
        q1 = i / n
        q2 = j / n
        s = q1 + q2
        residual = np.abs(rule.evaluate(s) * rule.evaluate(q1 / s) - rule.evaluate(q1))

        best = int(np.argmax(residual))
        records = tuple(
            ResidualRecord(q1=float(a), q2=float(b), residual=float(r))
            for a, b, r in zip(q1, q2, residual)
        )
        scan = GridScan(
            max_residual=float(residual[best]),
            argmax=records[best],
            records=records,
            grid=n
        )
        logger.info(
            f"Residual grid {rule.name} n={n}: max {scan.max_residual:.3e} "
            f"at ({scan.argmax.q1:g}, {scan.argmax.q2:g})"
        )
        return scan

    def additivity_check(self, rule: ProbabilityRule, n: Optional[int] = None) -> AdditivityResult:
        """
        Deviations from additivity over the triangular grid

        summed_pair: |H(s)[H(q1/s) + H(q2/s)] - H(q1) - H(q2)|, the equation plus its
        q1 <-> q2 swap; cauchy: |H(s) - H(q1) - H(q2)|. With complement symmetry
        the two coincide.
        """
        n = n or self.default_grid
        i, j = _triangular_grid(n)
        q1 = i / n
        q2 = j / n
        s = q1 + q2
        h_s = rule.evaluate(s)
        h_1 = rule.evaluate(q1)
        h_2 = rule.evaluate(q2)
        summed_pair = np.abs(h_s * (rule.evaluate(q1 / s) + rule.evaluate(q2 / s)) - h_1 - h_2)
        cauchy = np.abs(h_s - h_1 - h_2)
        return AdditivityResult(summed_pair_max=float(summed_pair.max()), cauchy_max=float(cauchy.max()))

    @staticmethod
    def solve_rule(n: int, initial: Optional[np.ndarray] = None) -> RuleSolution:
        """
        Reconstruct H on {i/n} from the functional equation

        Args:
            n: Grid resolution (>= 4)
            initial: Optional starting grid function; flat H = 1/2 by default

        Raises:
            NonConvergenceError: If the residual norm does not reach 1e-10
        """
        return RuleSolver(n).solve(initial)

    def nco_violation(
        self,
        state: TwoQubitState,
        rule: ProbabilityRule,
        x_pair: ObservablePair,
        y_pair: ObservablePair
    ) -> float:
        """max |P_A(ab|xy) - P_B(ab|xy)| of the box generated by a state"""
        alice_first, bob_first = self.measurement.order_tables(state, x_pair, y_pair, rule)
        return float(np.max(np.abs(alice_first - bob_first)))

    def max_nco_violation(
        self,
        rule: ProbabilityRule,
        x_pair: ObservablePair,
        y_pair: ObservablePair,
        restarts: int,
        seed: int,
        extra_starts: Sequence[TwoQubitState] = ()
    ) -> ViolationResult:
        """
        Search for the state whose box depends most on measurement order

        Multi-start coordinate perturbation over the 8 real amplitude
        components, renormalizing after every move.

        Args:
            rule: Probability rule
            x_pair: Alice's observables
            y_pair: Bob's observables
            restarts: Number of random starting states
            seed: Seed for the restart generators (non-negative)
            extra_starts: Additional states tried after the random ones

        Returns:
            Best state and its violation
        """
        if restarts < 1:
            raise ValidationError("restarts must be positive", details={"restarts": restarts})
        if rule.is_born:
            logger.info("Born rule: any violation found is round-off")

        def objective(params: np.ndarray) -> float:
            return -self.nco_violation(_vector_to_state(params), rule, x_pair, y_pair)

        starts = []
        for rng in self.search.restart_generators(seed, restarts):
            vector = random_state(rng).vector
            starts.append(np.concatenate([vector.real, vector.imag]))
        for state in extra_starts:
            starts.append(np.concatenate([state.vector.real, state.vector.imag]))

        best = self.search.run(objective, starts, project=_normalize)
        result = ViolationResult(state=_vector_to_state(best.x), max_violation=-best.value)
        logger.info(
            f"Max order violation for {rule.name}: {result.max_violation:.6f} "
            f"(restart {best.restart} of {len(starts)})"
        )
        return result


_service = UniquenessService()

nco_residual = _service.nco_residual
residual_grid = _service.residual_grid
additivity_check = _service.additivity_check
solve_rule = _service.solve_rule
nco_violation = _service.nco_violation
max_nco_violation = _service.max_nco_violation
