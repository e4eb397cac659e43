"""
Measurement Service - order-sensitive sequential measurement

The first party's local measurement collapses the shared state; the second
party then measures the conditional single-qubit remainder. Both steps use
the same probability rule.
"""
import json
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple
import numpy as np
from src.config.constants import MeasurementOrder, Party
from src.config.settings import Settings, get_settings
from src.domain.entities.box import Box, JointDistribution
from src.domain.entities.state import TwoQubitState
from src.domain.value_objects.observable import QubitObservable, ObservablePair
from src.domain.value_objects.probability_rule import ProbabilityRule
from src.error_trace.exceptions import ValidationError
from src.utilities.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Branch:
    """One outcome of the first measurement"""

    probability: float
    conditional: Optional[np.ndarray]

    @property
    def used(self) -> bool:
        return self.conditional is not None


def _bases(observables: Sequence[QubitObservable]) -> np.ndarray:
    """Eigenvectors stacked as [setting, outcome, component]"""
    return np.array([obs.eigenvectors for obs in observables])


class MeasurementService:
    """Builds joint outcome tables for both measurement orders"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.branch_threshold = self.settings.branch_threshold
        self.construction_tolerance = self.settings.construction_tolerance

    def _snap(self, weights: np.ndarray) -> np.ndarray:
        """Clamp quantum weights into [0, 1], snapping near-degenerate values"""
        t = self.branch_threshold
        return np.where(weights <= t, 0.0, np.where(weights >= 1.0 - t, 1.0, weights))

    def _branches(
        self,
        matrix: np.ndarray,
        bases: np.ndarray,
        rule: ProbabilityRule
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        First-step outcomes for every setting of the measuring party

        Args:
            matrix: State amplitudes indexed [measuring party, other party]
            bases: Measuring party's eigenvectors [setting, outcome, component]
            rule: Probability rule

        Returns:
            probabilities [s, a], used mask [s, a], conditional states [s, a, component]
        """
        blocks = np.einsum("sai,ij->saj", bases.conj(), matrix)
        weight = self._snap(np.sum(np.abs(blocks[:, 0]) ** 2, axis=-1))
        p0 = np.asarray(rule.evaluate(weight), dtype=float)
        probabilities = np.stack([p0, 1.0 - p0], axis=1)
        used = np.stack([weight, 1.0 - weight], axis=1) > 0.0
        norms = np.where(used, np.linalg.norm(blocks, axis=-1), 1.0)
        conditional = blocks / norms[..., None]
        return probabilities, used, conditional

    def _sequential_tables(
        self,
        matrix: np.ndarray,
        first_bases: np.ndarray,
        second_bases: np.ndarray,
        rule: ProbabilityRule
    ) -> np.ndarray:
        """
        Tables indexed [first setting, second setting, first outcome, second outcome]

        The second column of each row is the branch probability minus the
        first, so every row sums to its first-step probability up to one rounding.
        """
        probabilities, used, conditional = self._branches(matrix, first_bases, rule)
        overlap = np.abs(np.einsum("tj,saj->sat", second_bases[:, 0].conj(), conditional)) ** 2
        h = np.asarray(rule.evaluate(self._snap(overlap)), dtype=float)

        live = (used & (probabilities > 0.0))[..., None]
        branch = probabilities[..., None]
        outcome0 = np.where(live, branch * h, 0.0)
        outcome1 = np.where(live, branch - outcome0, 0.0)
        # [s, a, t, b] -> [s, t, a, b]
        return np.stack([outcome0, outcome1], axis=-1).transpose(0, 2, 1, 3)

    def first_step(
        self,
        state: TwoQubitState,
        obs: QubitObservable,
        party: Party,
        rule: ProbabilityRule
    ) -> Dict[int, Branch]:
        """
        Measure one party first

        Args:
            state: Shared state
            obs: Observable of the measuring party
            party: Who measures
            rule: Probability rule

        Returns:
            Outcome -> (probability, normalized state of the other party, or
            None when the branch is empty)
        """
        matrix = state.matrix if party is Party.ALICE else state.matrix.T
        probabilities, used, conditional = self._branches(matrix, _bases([obs]), rule)
        return {
            outcome: Branch(
                probability=float(probabilities[0, outcome]),
                conditional=conditional[0, outcome] if used[0, outcome] else None
            )
            for outcome in (0, 1)
        }

    def joint_table(
        self,
        state: TwoQubitState,
        x_obs: QubitObservable,
        y_obs: QubitObservable,
        rule: ProbabilityRule,
        order: MeasurementOrder
    ) -> np.ndarray:
        """Raw 2x2 outcome table P(ab) for one input pair in one measurement order"""
        alice, bob = _bases([x_obs]), _bases([y_obs])
        if order.first_party is Party.ALICE:
            return self._sequential_tables(state.matrix, alice, bob, rule)[0, 0]
        return self._sequential_tables(state.matrix.T, bob, alice, rule)[0, 0].T

    def joint_distribution(
        self,
        state: TwoQubitState,
        x_obs: QubitObservable,
        y_obs: QubitObservable,
        rule: ProbabilityRule,
        order: MeasurementOrder
    ) -> JointDistribution:
        """Joint outcome table P(ab) for one input pair in one measurement order"""
        return JointDistribution(
            self.joint_table(state, x_obs, y_obs, rule, order),
            self.construction_tolerance
        )

    def joint_alice_first(
        self,
        state: TwoQubitState,
        x_obs: QubitObservable,
        y_obs: QubitObservable,
        rule: ProbabilityRule
    ) -> JointDistribution:
        """P_A(ab|xy): Alice measures, then Bob measures his conditional state"""
        return self.joint_distribution(state, x_obs, y_obs, rule, MeasurementOrder.ALICE_FIRST)

    def joint_bob_first(
        self,
        state: TwoQubitState,
        x_obs: QubitObservable,
        y_obs: QubitObservable,
        rule: ProbabilityRule
    ) -> JointDistribution:
        """P_B(ab|xy): Bob measures, then Alice measures her conditional state"""
        return self.joint_distribution(state, x_obs, y_obs, rule, MeasurementOrder.BOB_FIRST)

    def order_tables(
        self,
        state: TwoQubitState,
        x_pair: ObservablePair,
        y_pair: ObservablePair,
        rule: ProbabilityRule
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Alice-first and Bob-first tables as [x, y, a, b] arrays, without box validation"""
        return self.basis_order_tables(state.matrix, _bases(x_pair), _bases(y_pair), rule)

    def basis_order_tables(
        self,
        matrix: np.ndarray,
        alice_bases: np.ndarray,
        bob_bases: np.ndarray,
        rule: ProbabilityRule
    ) -> Tuple[np.ndarray, np.ndarray]:
        """order_tables on a raw [alice, bob] amplitude matrix and stacked eigenbases"""
        alice_first = self._sequential_tables(matrix, alice_bases, bob_bases, rule)
        bob_first = self._sequential_tables(matrix.T, bob_bases, alice_bases, rule).transpose(1, 0, 3, 2)
        return alice_first, bob_first

    @staticmethod
    def describe_setup(
        state: TwoQubitState,
        x_pair: ObservablePair,
        y_pair: ObservablePair,
        rule: ProbabilityRule
    ) -> str:
        """Provenance tag recording how a box was produced"""
        return json.dumps({
            "state": state.to_list(),
            "rule": rule.name,
            "observables": [list(obs.angles()) for obs in (*x_pair, *y_pair)]
        }, separators=(",", ":"))

    def assemble_box(
        self,
        state: TwoQubitState,
        x_pair: ObservablePair,
        y_pair: ObservablePair,
        rule: ProbabilityRule
    ) -> Box:
        """
        Build the full box for a state, observable pairs and rule

        Args:
            state: Shared state
            x_pair: Alice's observables indexed by x
            y_pair: Bob's observables indexed by y
            rule: Probability rule

        Returns:
            Box with all four input pairs in both orders
        """
        alice_first, bob_first = self.order_tables(state, x_pair, y_pair, rule)
        return Box.from_arrays(
            alice_first,
            bob_first,
            provenance=self.describe_setup(state, x_pair, y_pair, rule),
            tolerance=self.construction_tolerance
        )

    @staticmethod
    def sample(
        box: Box,
        order: MeasurementOrder,
        x: int,
        y: int,
        count: int,
        seed: int
    ) -> Dict[Tuple[int, int], int]:
        """
        Draw outcome pairs from one table of a box

        Args:
            box: Box to sample
            order: Which order's table to use
            x: Alice's input
            y: Bob's input
            count: Number of draws (positive)
            seed: Generator seed (non-negative)

        Returns:
            (a, b) -> count, summing to count
        """
        if count <= 0:
            raise ValidationError("count must be positive", details={"count": count})
        if seed < 0:
            raise ValidationError("seed must be non-negative", details={"seed": seed})
        rng = np.random.default_rng(seed)
        probabilities = np.clip(box.distribution(order, x, y).table.flatten(), 0.0, None)
        probabilities = probabilities / probabilities.sum()
        counts = rng.multinomial(count, probabilities)
        logger.debug(f"Sampled {count} outcomes from {order.value} table ({x},{y})")
        return {(a, b): int(counts[2 * a + b]) for a in (0, 1) for b in (0, 1)}


_service = MeasurementService()

first_step = _service.first_step
joint_table = _service.joint_table
joint_distribution = _service.joint_distribution
joint_alice_first = _service.joint_alice_first
joint_bob_first = _service.joint_bob_first
order_tables = _service.order_tables
describe_setup = _service.describe_setup
assemble_box = _service.assemble_box
sample = _service.sample
