"""
Helper Utility Functions - parsing of command-line specs
"""
from typing import List, Tuple
from src.config.settings import get_settings
from src.domain.entities.state import TwoQubitState, bell_state, product_state, make_state, state_norm
from src.domain.value_objects.amplitude import Amplitude
from src.domain.value_objects.observable import QubitObservable, ObservablePair, chsh_observables
from src.domain.value_objects.probability_rule import ProbabilityRule
from src.error_trace.exceptions import ValidationError
from src.utilities.logger import get_logger

logger = get_logger(__name__)


def parse_state_spec(spec: str) -> TwoQubitState:
    """
    Parse a state flag

    Args:
        spec: 'bell', 'product' (|00>) or four comma-separated re:im amplitudes
              in basis order |00>, |01>, |10>, |11>

    Returns:
        Normalized state; a warning is logged when the input norm is off by more than 1e-6

    Raises:
        ValidationError: On malformed input
        AllZeroStateError: If every amplitude is zero
    """
    text = spec.strip().lower()
    if text == "bell":
        return bell_state()
    if text == "product":
        return product_state()

    parts = text.split(",")
    if len(parts) != 4:
        raise ValidationError(
            f"Expected 4 amplitudes, got {len(parts)}",
            details={"spec": spec}
        )
    amplitudes = [Amplitude.from_string(part) for part in parts]
    norm = state_norm(*amplitudes)
    if abs(norm - 1.0) > get_settings().norm_warning_threshold:
        logger.warning(f"Input state norm is {norm:.9g}; normalizing")
    return make_state(*amplitudes)


def parse_observables_spec(spec: str) -> Tuple[ObservablePair, ObservablePair]:
    """
    Parse an observables flag

    Args:
        spec: 'chsh' or 8 comma-separated angles
              theta,phi for Alice x=0, x=1, then Bob y=0, y=1

    Returns:
        (Alice pair, Bob pair)
    """
    text = spec.strip().lower()
    if text == "chsh":
        return chsh_observables()

    try:
        angles = [float(part) for part in text.split(",")]
    except ValueError:
        raise ValidationError(f"Invalid observables: {spec!r}")
    if len(angles) != 8:
        raise ValidationError(
            f"Expected 8 angles, got {len(angles)}",
            details={"spec": spec}
        )
    observables = [QubitObservable(theta=angles[2 * k], phi=angles[2 * k + 1]) for k in range(4)]
    return (observables[0], observables[1]), (observables[2], observables[3])


def parse_rule_list(spec: str) -> List[ProbabilityRule]:
    """Comma-separated rule specs, e.g. 'born,power:m=4,step'"""
    rules = [ProbabilityRule.from_string(part) for part in spec.split(",") if part.strip()]
    if not rules:
        raise ValidationError("No rules given")
    return rules
