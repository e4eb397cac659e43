"""
Two-Qubit State Entity

Pure bipartite state written in the x=0 (x) y=0 product basis, amplitudes
ordered as |00>, |01>, |10>, |11> (Alice's index first).
"""
import math
from dataclasses import dataclass
from typing import Sequence, Tuple
import numpy as np
from src.config.constants import ZERO_NORM_THRESHOLD, ENTANGLEMENT_THRESHOLD
from src.config.settings import get_settings
from src.domain.value_objects.amplitude import Amplitude
from src.error_trace.exceptions import AllZeroStateError, ValidationError


@dataclass(frozen=True)
class TwoQubitState:
    """Normalized two-qubit pure state"""

    amplitudes: Tuple[Amplitude, Amplitude, Amplitude, Amplitude]

    def __post_init__(self):
        """Validate size and normalization"""
        if len(self.amplitudes) != 4:
            raise ValidationError("A two-qubit state needs exactly 4 amplitudes")
        norm = sum(a.weight for a in self.amplitudes)
        tolerance = get_settings().construction_tolerance
        if abs(norm - 1.0) > tolerance:
            raise ValidationError(
                "State is not normalized; use make_state",
                details={"norm": norm}
            )

    @property
    def vector(self) -> np.ndarray:
        """Amplitudes as a complex vector of length 4"""
        return np.array([a.value for a in self.amplitudes], dtype=complex)

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes as a 2x2 matrix indexed [alice, bob]"""
        return self.vector.reshape(2, 2)

    @property
    def weights(self) -> np.ndarray:
        """Squared moduli |alpha_i|^2"""
        return np.abs(self.vector) ** 2

    def schmidt_coefficients(self) -> Tuple[float, float]:
        """Schmidt coefficients in descending order"""
        singular = np.linalg.svd(self.matrix, compute_uv=False)
        return float(singular[0]), float(singular[1])

    def is_entangled(self) -> bool:
        """Both Schmidt weights nonzero within tolerance"""
        return self.schmidt_coefficients()[1] ** 2 > ENTANGLEMENT_THRESHOLD

    def to_list(self) -> list:
        """Amplitudes as [re, im] pairs"""
        return [[a.re, a.im] for a in self.amplitudes]

    @classmethod
    def from_vector(cls, vector: Sequence[complex]) -> "TwoQubitState":
        """Create (normalizing) from four complex numbers"""
        if len(vector) != 4:
            raise ValidationError("A two-qubit state needs exactly 4 amplitudes")
        return make_state(*(Amplitude.from_complex(z) for z in vector))


def state_norm(*amplitudes: Amplitude) -> float:
    """Euclidean norm of raw amplitudes, free of overflow for large components"""
    return math.hypot(*(c for a in amplitudes for c in (a.re, a.im)))


def make_state(a1: Amplitude, a2: Amplitude, a3: Amplitude, a4: Amplitude) -> TwoQubitState:
    """
    Build a unit-norm state from raw amplitudes

    Relative phases are preserved.

    Raises:
        AllZeroStateError: If the norm is below 1e-14
    """
    norm = state_norm(a1, a2, a3, a4)
    if norm < ZERO_NORM_THRESHOLD:
        raise AllZeroStateError(norm)
    scaled = tuple(Amplitude(re=a.re / norm, im=a.im / norm) for a in (a1, a2, a3, a4))
    return TwoQubitState(amplitudes=scaled)


def bell_state() -> TwoQubitState:
    """(|00> + |11>)/sqrt2"""
    r = math.sqrt(0.5)
    zero = Amplitude(0.0)
    return TwoQubitState(amplitudes=(Amplitude(r), zero, zero, Amplitude(r)))


def product_state() -> TwoQubitState:
    """|00>"""
    zero = Amplitude(0.0)
    return TwoQubitState(amplitudes=(Amplitude(1.0), zero, zero, zero))


def random_state(rng: np.random.Generator) -> TwoQubitState:
    """Haar-random pure state from normalized complex Gaussian draws"""
    draws = rng.normal(size=4) + 1j * rng.normal(size=4)
    return TwoQubitState.from_vector(draws)


def random_product_state(rng: np.random.Generator) -> TwoQubitState:
    """Random product state |u> (x) |v>"""
    u = rng.normal(size=2) + 1j * rng.normal(size=2)
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return TwoQubitState.from_vector(np.kron(u, v))
