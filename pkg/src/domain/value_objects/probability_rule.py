"""
Probability Rule Value Object

An outcome-probability assignment H: [0, 1] -> [0, 1] applied to the
quantum weight p = |c|^2 of outcome 0. Outcome 1 receives 1 - H(p).
"""
import math
import re
from dataclasses import dataclass
from typing import Optional, Union
import numpy as np
from src.config.constants import RuleKind, DOMAIN_SLACK, STEP_TIE_BAND
from src.error_trace.exceptions import ValidationError, DomainError

ArrayLike = Union[float, np.ndarray]

_POWER_SPEC = re.compile(r"^power:m=(?P<m>[^,\s]+)$")


@dataclass(frozen=True)
class ProbabilityRule:
    """Probability assignment value object - immutable"""

    kind: RuleKind
    m: Optional[float] = None

    def __post_init__(self):
        """Validate rule parameters"""
        if not isinstance(self.kind, RuleKind):
            raise ValidationError("Invalid rule kind", details={"kind": str(self.kind)})
        if self.kind is RuleKind.POWER:
            if self.m is None or not math.isfinite(self.m) or self.m <= 0:
                raise ValidationError(
                    "Power rule needs a finite exponent m > 0",
                    details={"m": self.m}
                )
        elif self.m is not None:
            raise ValidationError(f"{self.kind.value} rule takes no exponent")

    @property
    def name(self) -> str:
        """Flag-style name, e.g. 'power:m=4'"""
        if self.kind is RuleKind.POWER:
            return f"power:m={self.m:g}"
        return self.kind.value

    @property
    def is_born(self) -> bool:
        return self.kind is RuleKind.BORN or (self.kind is RuleKind.POWER and self.m == 2.0)

    def evaluate(self, p: ArrayLike) -> ArrayLike:
        """
        Evaluate H without domain checks

        Inputs are clipped to [0, 1]; arrays are evaluated element-wise.
        """
        values = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)

        if self.kind is RuleKind.BORN:
            result = values
        elif self.kind is RuleKind.STEP:
            result = np.where(
                np.abs(values - 0.5) <= STEP_TIE_BAND,
                0.5,
                np.where(values > 0.5, 1.0, 0.0)
            )
        else:
            # factor out max(p, 1-p) so that large m neither overflows nor underflows
            complement = 1.0 - values
            high = np.maximum(values, complement)
            low = np.minimum(values, complement)
            ratio = (low / high) ** (self.m / 2.0)
            result = np.where(values >= complement, 1.0 / (1.0 + ratio), ratio / (1.0 + ratio))

        if np.ndim(result) == 0:
            return float(result)
        return result

    def __call__(self, p: ArrayLike) -> ArrayLike:
        return eval_rule(self, p)

    @classmethod
    def born(cls) -> "ProbabilityRule":
        return cls(kind=RuleKind.BORN)

    @classmethod
    def power(cls, m: float) -> "ProbabilityRule":
        return cls(kind=RuleKind.POWER, m=float(m))

    @classmethod
    def step(cls) -> "ProbabilityRule":
        return cls(kind=RuleKind.STEP)

    @classmethod
    def from_string(cls, spec: str) -> "ProbabilityRule":
        """Create from 'born', 'step' or 'power:m=<real>'"""
        text = spec.strip().lower()
        if text == RuleKind.BORN.value:
            return cls.born()
        if text == RuleKind.STEP.value:
            return cls.step()
        match = _POWER_SPEC.match(text)
        if match:
            try:
                return cls.power(float(match.group("m")))
            except ValueError:
                pass
        raise ValidationError(
            f"Invalid rule: {spec!r}",
            details={"expected": "born | step | power:m=<real>"}
        )


def eval_rule(rule: ProbabilityRule, p: ArrayLike) -> ArrayLike:
    """
    Evaluate a probability rule on a quantum weight

    Args:
        rule: Probability rule
        p: Weight(s) in [0, 1]; 1e-12 slack is tolerated and clipped

    Returns:
        H(p), same shape as p

    Raises:
        DomainError: If p lies outside [0, 1] beyond the slack
    """
    values = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(values)) or np.any(values < -DOMAIN_SLACK) or np.any(values > 1.0 + DOMAIN_SLACK):
        raise DomainError(
            "Probability argument outside [0, 1]",
            details={"rule": rule.name, "min": float(np.min(values)), "max": float(np.max(values))}
        )
    return rule.evaluate(p)
