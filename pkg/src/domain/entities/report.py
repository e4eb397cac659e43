"""
Analysis Entities - causality condition results
"""
from dataclasses import dataclass, field
from typing import List
from src.config.constants import MeasurementOrder


@dataclass(frozen=True)
class ConditionResult:
    """Pass/fail of one causality condition"""

    passed: bool
    max_residual: float

    def to_dict(self) -> dict:
        return {"pass": self.passed, "max_residual": self.max_residual}

    @classmethod
    def from_residual(cls, residual: float, tolerance: float) -> "ConditionResult":
        return cls(passed=residual <= tolerance, max_residual=float(residual))


@dataclass(frozen=True)
class CausalityReport:
    """Results of the three causality conditions for a box"""

    no_signaling_alice_first: ConditionResult
    no_signaling_bob_first: ConditionResult
    local_measurement: ConditionResult
    no_causal_order: ConditionResult
    tolerance: float

    @property
    def all_passed(self) -> bool:
        return all(
            result.passed for result in (
                self.no_signaling_alice_first,
                self.no_signaling_bob_first,
                self.local_measurement,
                self.no_causal_order
            )
        )

    def to_dict(self) -> dict:
        """Convert to dictionary"""
        return {
            "no_signaling_alice_first": self.no_signaling_alice_first.to_dict(),
            "no_signaling_bob_first": self.no_signaling_bob_first.to_dict(),
            "local_measurement": self.local_measurement.to_dict(),
            "no_causal_order": self.no_causal_order.to_dict(),
            "tolerance": self.tolerance,
            "all_pass": self.all_passed
        }


@dataclass(frozen=True)
class SignalingFinding:
    """Joint occurrence of signaling and no causal order in one box"""

    signaling_orders: List[MeasurementOrder] = field(default_factory=list)
    no_causal_order: bool = False
    nco_residual: float = 0.0
    signaling_residual_alice_first: float = 0.0
    signaling_residual_bob_first: float = 0.0

    @property
    def flagged(self) -> bool:
        """Signaling together with no causal order contradicts causality"""
        return bool(self.signaling_orders) and self.no_causal_order

    @property
    def explanation(self) -> str:
        if self.flagged:
            orders = ", ".join(order.value for order in self.signaling_orders)
            return (
                f"signals in {orders} while both orders agree: the receiver would "
                "know the sender's input before the sender operates"
            )
        if self.signaling_orders:
            return "signals, but the orders disagree, so no contradiction arises"
        return "no signaling"

    def to_dict(self) -> dict:
        return {
            "flagged": self.flagged,
            "signaling_orders": [order.value for order in self.signaling_orders],
            "no_causal_order": self.no_causal_order,
            "nco_residual": self.nco_residual,
            "signaling_residual_alice_first": self.signaling_residual_alice_first,
            "signaling_residual_bob_first": self.signaling_residual_bob_first,
            "explanation": self.explanation
        }
