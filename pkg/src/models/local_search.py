"""
Multi-start perturbation descent

Coordinate-wise pattern search: each sweep tries +/- step on every
coordinate and keeps the first improving move; a sweep without improvement
halves the step. Suited to cheap, low-dimensional, possibly non-smooth
objectives.
"""
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence
import numpy as np
from src.config.settings import get_settings
from src.error_trace.exceptions import ValidationError
from src.utilities.logger import get_logger

logger = get_logger(__name__)

Objective = Callable[[np.ndarray], float]
Projection = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class SearchOutcome:
    """Result of one descent run"""

    x: np.ndarray
    value: float
    sweeps: int
    evaluations: int
    restart: int = 0


class LocalSearch:
    """Pattern-search minimizer with seeded restarts"""

    def __init__(
        self,
        initial_step: Optional[float] = None,
        min_step: Optional[float] = None,
        max_sweeps: Optional[int] = None,
        tie_tolerance: float = 1e-12
    ):
        settings = get_settings()
        self.initial_step = initial_step or settings.search_initial_step
        self.min_step = min_step or settings.search_min_step
        self.max_sweeps = max_sweeps or settings.search_max_sweeps
        self.tie_tolerance = tie_tolerance

    def descend(
        self,
        objective: Objective,
        x0: np.ndarray,
        project: Optional[Projection] = None,
        target: Optional[float] = None
    ) -> SearchOutcome:
        """
        Minimize an objective from one starting point

        Args:
            objective: Function to minimize
            x0: Starting point
            project: Optional map back onto the feasible set, applied to every candidate
            target: Stop as soon as the value is at or below this

        Returns:
            Best point and value found
        """
        project = project or (lambda v: v)
        step = self.initial_step

        x = project(np.array(x0, dtype=float))
        value = objective(x)
        evaluations = 1
        sweeps = 0

        while sweeps < self.max_sweeps and step >= self.min_step:
            if target is not None and value <= target:
                break
            sweeps += 1
            improved = False
            for i in range(x.size):
                for sign in (1.0, -1.0):
                    candidate = x.copy()
                    candidate[i] += sign * step
                    candidate = project(candidate)
                    candidate_value = objective(candidate)
                    evaluations += 1
                    if candidate_value < value:
                        x, value = candidate, candidate_value
                        improved = True
                        break
            if not improved:
                step /= 2.0

        return SearchOutcome(x=x, value=float(value), sweeps=sweeps, evaluations=evaluations)

    def run(
        self,
        objective: Objective,
        starts: Sequence[np.ndarray],
        project: Optional[Projection] = None,
        target: Optional[float] = None
    ) -> SearchOutcome:
        """
        Descend from every start and keep the best

        Ties within tie_tolerance go to the lowest restart index.
        """
        outcomes = []
        for index, start in enumerate(starts):
            outcome = self.descend(objective, start, project=project, target=target)
            logger.debug(
                f"Restart {index}: value {outcome.value:.6e} after {outcome.sweeps} sweeps"
            )
            outcomes.append(SearchOutcome(
                x=outcome.x,
                value=outcome.value,
                sweeps=outcome.sweeps,
                evaluations=outcome.evaluations,
                restart=index
            ))

        best_value = min(outcome.value for outcome in outcomes)
        return next(o for o in outcomes if o.value <= best_value + self.tie_tolerance)

    @staticmethod
    def restart_generators(seed: int, restarts: int) -> List[np.random.Generator]:
        """
        Independent generators, one per restart, derived from (seed, restart index)

        Raises:
            ValidationError: If the seed is negative
        """
        if seed < 0:
            raise ValidationError("seed must be non-negative", details={"seed": seed})
        children = np.random.SeedSequence(seed).spawn(restarts)
        return [np.random.default_rng(child) for child in children]


def perturbation_descent(
    objective: Objective,
    x0: np.ndarray,
    project: Optional[Projection] = None,
    initial_step: Optional[float] = None,
    min_step: Optional[float] = None,
    max_sweeps: Optional[int] = None,
    target: Optional[float] = None
) -> SearchOutcome:
    """Single descent with the given (or configured) step schedule"""
    search = LocalSearch(initial_step=initial_step, min_step=min_step, max_sweeps=max_sweeps)
    return search.descend(objective, x0, project=project, target=target)


def multi_start(
    objective: Objective,
    starts: Sequence[np.ndarray],
    project: Optional[Projection] = None,
    tie_tolerance: float = 1e-12,
    target: Optional[float] = None
) -> SearchOutcome:
    """Descent from every start with the configured step schedule"""
    return LocalSearch(tie_tolerance=tie_tolerance).run(objective, starts, project=project, target=target)


restart_generators = LocalSearch.restart_generators
