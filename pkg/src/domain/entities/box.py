"""
Box Entity - order-labeled behaviors P_A(ab|xy) and P_B(ab|xy)
"""
from dataclasses import dataclass, field
from typing import Tuple, Mapping
import numpy as np
from src.config.constants import MeasurementOrder, Party, INPUT_PAIRS, DOMAIN_SLACK
from src.error_trace.exceptions import ValidationError

InputPair = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Outcome table P(ab) for one input pair and one measurement order"""

    table: np.ndarray
    tolerance: float = field(default=1e-12, repr=False)

    def __post_init__(self):
        """Validate shape, range and normalization"""
        table = np.array(self.table, dtype=float)
        if table.shape != (2, 2):
            raise ValidationError("Joint distribution must be a 2x2 table", details={"shape": list(table.shape)})
        if np.any(~np.isfinite(table)) or np.any(table < -DOMAIN_SLACK) or np.any(table > 1.0 + DOMAIN_SLACK):
            raise ValidationError("Joint probabilities must lie in [0, 1]", details={"table": table.tolist()})
        total = float(table.sum())
        if abs(total - 1.0) > self.tolerance:
            raise ValidationError("Joint probabilities must sum to 1", details={"sum": total})
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def probability(self, a: int, b: int) -> float:
        return float(self.table[a, b])

    def marginal(self, party: Party) -> np.ndarray:
        """Single-party outcome marginal"""
        return self.table.sum(axis=1) if party is Party.ALICE else self.table.sum(axis=0)

    @property
    def correlator(self) -> float:
        """E = sum_ab (-1)^(a xor b) P(ab)"""
        t = self.table
        return float(t[0, 0] + t[1, 1] - t[0, 1] - t[1, 0])

    def to_list(self) -> list:
        return self.table.tolist()


@dataclass(frozen=True, eq=False)
class Box:
    """Complete nonlocal behavior for both measurement orders"""

    alice_first: Mapping[InputPair, JointDistribution]
    bob_first: Mapping[InputPair, JointDistribution]
    provenance: str = ""

    def __post_init__(self):
        """Validate that all eight tables are present"""
        for order, tables in ((MeasurementOrder.ALICE_FIRST, self.alice_first),
                              (MeasurementOrder.BOB_FIRST, self.bob_first)):
            missing = [pair for pair in INPUT_PAIRS if pair not in tables]
            if missing:
                raise ValidationError(
                    f"Box is missing {order.value} tables",
                    details={"missing": [f"{x}{y}" for x, y in missing]}
                )
        object.__setattr__(self, "alice_first", dict(self.alice_first))
        object.__setattr__(self, "bob_first", dict(self.bob_first))

    def tables(self, order: MeasurementOrder) -> Mapping[InputPair, JointDistribution]:
        return self.alice_first if order is MeasurementOrder.ALICE_FIRST else self.bob_first

    def distribution(self, order: MeasurementOrder, x: int, y: int) -> JointDistribution:
        return self.tables(order)[(x, y)]

    def array(self, order: MeasurementOrder) -> np.ndarray:
        """Tables stacked as an array indexed [x, y, a, b]"""
        tables = self.tables(order)
        result = np.zeros((2, 2, 2, 2))
        for x, y in INPUT_PAIRS:
            result[x, y] = tables[(x, y)].table
        return result

    @classmethod
    def from_arrays(
        cls,
        alice_first: np.ndarray,
        bob_first: np.ndarray,
        provenance: str = "",
        tolerance: float = 1e-12
    ) -> "Box":
        """Create from two [x, y, a, b] arrays"""
        alice_first = np.asarray(alice_first, dtype=float)
        bob_first = np.asarray(bob_first, dtype=float)
        if alice_first.shape != (2, 2, 2, 2) or bob_first.shape != (2, 2, 2, 2):
            raise ValidationError("Box arrays must have shape (2, 2, 2, 2)")
        return cls(
            alice_first={(x, y): JointDistribution(alice_first[x, y], tolerance) for x, y in INPUT_PAIRS},
            bob_first={(x, y): JointDistribution(bob_first[x, y], tolerance) for x, y in INPUT_PAIRS},
            provenance=provenance
        )

    @classmethod
    def symmetric(cls, tables: np.ndarray, provenance: str = "") -> "Box":
        """Box whose two orders share the same tables"""
        return cls.from_arrays(tables, tables, provenance)

    def relabeled(self) -> "Box":
        """Box with both outcomes flipped, a -> a xor 1 and b -> b xor 1"""
        return Box.from_arrays(
            self.array(MeasurementOrder.ALICE_FIRST)[:, :, ::-1, ::-1],
            self.array(MeasurementOrder.BOB_FIRST)[:, :, ::-1, ::-1],
            provenance=f"{self.provenance}|relabeled"
        )

    def to_dict(self) -> dict:
        """Convert to the box file document"""
        return {
            "provenance": self.provenance,
            "alice_first": {f"{x}{y}": d.to_list() for (x, y), d in sorted(self.alice_first.items())},
            "bob_first": {f"{x}{y}": d.to_list() for (x, y), d in sorted(self.bob_first.items())}
        }
