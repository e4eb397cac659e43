"""
Amplitude Value Object
"""
import math
from dataclasses import dataclass
from src.error_trace.exceptions import ValidationError


@dataclass(frozen=True)
class Amplitude:
    """Complex amplitude value object - immutable"""

    re: float
    im: float = 0.0

    def __post_init__(self):
        """Validate components"""
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValidationError(
                "Amplitude components must be finite",
                details={"re": self.re, "im": self.im}
            )

    @property
    def value(self) -> complex:
        """Amplitude as a Python complex"""
        return complex(self.re, self.im)

    @property
    def weight(self) -> float:
        """Squared modulus"""
        return self.re * self.re + self.im * self.im

    @classmethod
    def from_complex(cls, z: complex) -> "Amplitude":
        """Create from a complex number"""
        z = complex(z)
        return cls(re=z.real, im=z.imag)

    @classmethod
    def from_string(cls, text: str) -> "Amplitude":
        """Create from a 're:im' pair (a bare real is accepted too)"""
        parts = text.strip().split(":")
        try:
            if len(parts) == 1:
                return cls(re=float(parts[0]))
            if len(parts) == 2:
                return cls(re=float(parts[0]), im=float(parts[1]))
        except ValueError:
            pass
        raise ValidationError(f"Invalid amplitude: {text!r}", details={"expected": "re:im"})
