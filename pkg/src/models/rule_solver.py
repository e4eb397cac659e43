"""
Discretized probability-rule solver

Unknown: H on the grid {i/n}, piecewise linear in between. H(0)=0 and
H(1)=1 are pinned and H(1-p) = 1 - H(p) holds by parametrizing only the
lower half of the grid. The no-causal-order equation
H(s) H(q1/s) = H(q1), s = q1 + q2, is imposed as least-squares residuals
over every grid pair; monotonicity is restored by projection after each
damped Gauss-Newton step.
"""
from typing import Optional
import numpy as np
from src.config.settings import get_settings
from src.domain.entities.records import RuleSolution
from src.error_trace.exceptions import NonConvergenceError, ValidationError
from src.utilities.logger import get_logger

logger = get_logger(__name__)
settings = get_settings()


def interpolation_matrix(points: np.ndarray, n: int) -> np.ndarray:
    """Rows of linear-interpolation weights on the grid {i/n} for each point"""
    scaled = np.clip(points, 0.0, 1.0) * n
    lower = np.minimum(np.floor(scaled).astype(int), n - 1)
    frac = scaled - lower
    weights = np.zeros((points.size, n + 1))
    rows = np.arange(points.size)
    weights[rows, lower] = 1.0 - frac
    weights[rows, lower + 1] += frac
    return weights


class RuleSolver:
    """Projected Levenberg-Marquardt solve of the no-causal-order equation"""

    def __init__(
        self,
        n: int,
        max_iterations: Optional[int] = None,
        target: Optional[float] = None
    ):
        if n < 4:
            raise ValidationError("Grid resolution must be at least 4", details={"n": n})
        self.n = n
        self.max_iterations = max_iterations or settings.solver_max_iterations
        self.target = target or settings.solver_residual_target
        self.grid = np.arange(n + 1) / n

        i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
        mask = (i + j >= 1) & (i + j <= n)
        i, j = i[mask], j[mask]
        s = (i + j) / n
        self._w_sum = interpolation_matrix(s, n)
        self._w_ratio = interpolation_matrix(i / (i + j), n)
        self._w_first = interpolation_matrix(i / n, n)

        # h = offset + basis @ z, z = free values H(1/n) .. H(half/n)
        self.free = (n - 1) // 2
        self._offset = np.zeros(n + 1)
        self._basis = np.zeros((n + 1, self.free))
        self._offset[n] = 1.0
        for k in range(1, self.free + 1):
            self._basis[k, k - 1] = 1.0
            self._basis[n - k, k - 1] = -1.0
            self._offset[n - k] = 1.0
        if n % 2 == 0:
            self._offset[n // 2] = 0.5

    def expand(self, z: np.ndarray) -> np.ndarray:
        """Full grid function from the free half"""
        return self._offset + self._basis @ z

    def restrict(self, values: np.ndarray) -> np.ndarray:
        """Free half of a full grid function, symmetrized"""
        values = np.asarray(values, dtype=float)
        if values.shape != (self.n + 1,):
            raise ValidationError("Initial function must have n + 1 grid values")
        k = np.arange(1, self.free + 1)
        return (values[k] + 1.0 - values[self.n - k]) / 2.0

    def project(self, z: np.ndarray) -> np.ndarray:
        """Clip to [0, 1/2] and sort, giving a monotone complement-symmetric function"""
        return np.sort(np.clip(z, 0.0, 0.5))

    def residuals(self, values: np.ndarray) -> np.ndarray:
        """H(s) H(q1/s) - H(q1) over all grid pairs"""
        return (self._w_sum @ values) * (self._w_ratio @ values) - self._w_first @ values

    def jacobian(self, values: np.ndarray) -> np.ndarray:
        """Jacobian of the residuals with respect to the free half"""
        jac = (
            (self._w_ratio @ values)[:, None] * self._w_sum
            + (self._w_sum @ values)[:, None] * self._w_ratio
            - self._w_first
        )
        return jac @ self._basis

    def flat_start(self) -> np.ndarray:
        """H = 1/2 on every interior point"""
        values = np.full(self.n + 1, 0.5)
        values[0], values[-1] = 0.0, 1.0
        return values

    def solve(self, initial: Optional[np.ndarray] = None) -> RuleSolution:
        """
        Run the projected descent

        Args:
            initial: Optional starting grid function (defaults to the flat start)

        Returns:
            Discretized rule and its sup-distance from the identity

        Raises:
            NonConvergenceError: If the residual norm stays above target
        """
        z = self.project(self.restrict(self.flat_start() if initial is None else initial))
        values = self.expand(z)
        residual = self.residuals(values)
        norm = float(np.linalg.norm(residual))
        damping = 1e-3
        iterations = 0

        while norm >= self.target and iterations < self.max_iterations:
            iterations += 1
            jac = self.jacobian(values)
            normal = jac.T @ jac
            gradient = jac.T @ residual
            step = np.linalg.solve(normal + damping * np.eye(self.free), -gradient)

            candidate = self.project(z + step)
            candidate_values = self.expand(candidate)
            candidate_residual = self.residuals(candidate_values)
            candidate_norm = float(np.linalg.norm(candidate_residual))

            if candidate_norm < norm:
                z, values, residual, norm = candidate, candidate_values, candidate_residual, candidate_norm
                damping = max(damping / 3.0, 1e-15)
            else:
                damping *= 4.0
                if damping > 1e12:
                    break
            logger.debug(f"Iteration {iterations}: residual norm {norm:.3e}, damping {damping:.1e}")

        if norm >= self.target:
            raise NonConvergenceError(iterations, norm, self.target)

        sup_distance = float(np.max(np.abs(values - self.grid)))
        logger.info(
            f"Rule solve on n={self.n} converged in {iterations} iterations, "
            f"sup-distance from identity {sup_distance:.3e}"
        )
        return RuleSolution(
            grid=self.grid.copy(),
            values=values,
            sup_distance=sup_distance,
            residual_norm=norm,
            iterations=iterations
        )


def monotone_symmetric_start(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random monotone complement-symmetric grid function with pinned endpoints"""
    solver_free = (n - 1) // 2
    z = np.sort(rng.uniform(0.0, 0.5, size=solver_free))
    values = np.zeros(n + 1)
    values[n] = 1.0
    for k in range(1, solver_free + 1):
        values[k] = z[k - 1]
        values[n - k] = 1.0 - z[k - 1]
    if n % 2 == 0:
        values[n // 2] = 0.5
    return values
