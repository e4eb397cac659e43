"""
Application Constants
"""
import math
from enum import Enum, IntEnum


class Party(str, Enum):
    """Measuring party"""
    ALICE = "alice"
    BOB = "bob"

    @property
    def other(self) -> "Party":
        return Party.BOB if self is Party.ALICE else Party.ALICE


class MeasurementOrder(str, Enum):
    """Which party measures first in the chosen frame"""
    ALICE_FIRST = "alice_first"
    BOB_FIRST = "bob_first"

    @property
    def first_party(self) -> Party:
        return Party.ALICE if self is MeasurementOrder.ALICE_FIRST else Party.BOB


class RuleKind(str, Enum):
    """Named outcome-probability assignments"""
    BORN = "born"
    POWER = "power"
    STEP = "step"


class CorrelationRegime(str, Enum):
    """Region of the CHSH value"""
    LOCAL = "local"
    QUANTUM = "quantum"
    SUPERQUANTUM = "superquantum"
    INVALID = "invalid"


class ExitCode(IntEnum):
    """Command-line exit codes"""
    OK = 0
    CHECK_FAILED = 1
    USAGE_ERROR = 2
    INPUT_ERROR = 3
    DOMAIN_ERROR = 4


# Outcome and input labels
BITS = (0, 1)
INPUT_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))
INPUT_KEYS = tuple(f"{x}{y}" for x, y in INPUT_PAIRS)

# CHSH bounds
LOCAL_BOUND = 2.0
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)
NO_SIGNALING_BOUND = 4.0

# Numerical thresholds fixed by the model
ZERO_NORM_THRESHOLD = 1e-14
ORTHONORMALITY_TOLERANCE = 1e-14
DOMAIN_SLACK = 1e-12
STEP_TIE_BAND = 1e-12
ENTANGLEMENT_THRESHOLD = 1e-12
BOX_LOAD_TOLERANCE = 1e-9

# Output formats
CSV_FLOAT_FORMAT = "%.15g"
SWEEP_COLUMNS = ["m", "chsh_engine", "chsh_closed_form", "nco_residual"]
GRID_COLUMNS = ["q1", "q2", "residual"]
SOLUTION_COLUMNS = ["p", "H"]

# Provenance tags for builtin boxes
PROVENANCE_PR = "builtin:pr"
PROVENANCE_ANTI_PR = "builtin:anti-pr"
PROVENANCE_MIXED_ORDER = "builtin:mixed-order"
