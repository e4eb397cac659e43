"""
Qubit Observable Value Object

A binary projective measurement given by a Bloch direction. Outcome 0 is
the eigenvector along +direction, outcome 1 the one along -direction.
"""
import math
from dataclasses import dataclass
from typing import Tuple
import numpy as np
from src.config.constants import ORTHONORMALITY_TOLERANCE
from src.error_trace.exceptions import ValidationError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QubitObservable:
    """Bloch-direction observable - immutable"""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        """Validate angles and the implied eigenbasis"""
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValidationError("Observable angles must be finite")
        if not 0.0 <= self.theta <= math.pi:
            raise ValidationError(
                f"theta must lie in [0, pi], got {self.theta}",
                details={"theta": self.theta}
            )
        if not 0.0 <= self.phi < TWO_PI:
            raise ValidationError(
                f"phi must lie in [0, 2pi), got {self.phi}",
                details={"phi": self.phi}
            )
        e0, e1 = self.eigenvectors
        overlap = abs(np.vdot(e0, e1))
        if overlap > ORTHONORMALITY_TOLERANCE:
            raise ValidationError(
                "Eigenvectors are not orthonormal",
                details={"overlap": float(overlap)}
            )

    @property
    def eigenvectors(self) -> Tuple[np.ndarray, np.ndarray]:
        """Eigenvectors (e0, e1) for outcomes 0 and 1"""
        c = math.cos(self.theta / 2.0)
        s = math.sin(self.theta / 2.0)
        phase = complex(math.cos(self.phi), math.sin(self.phi))
        e0 = np.array([c, phase * s], dtype=complex)
        e1 = np.array([s, -phase * c], dtype=complex)
        return e0, e1

    def eigenvector(self, outcome: int) -> np.ndarray:
        """Eigenvector attached to an outcome label"""
        return self.eigenvectors[outcome]

    def flipped(self) -> "QubitObservable":
        """Same measurement with outcome labels exchanged"""
        return QubitObservable.from_angles(math.pi - self.theta, self.phi + math.pi)

    def angles(self) -> Tuple[float, float]:
        return self.theta, self.phi

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "QubitObservable":
        """Create from unconstrained angles, folding them into the canonical ranges"""
        theta = math.fmod(theta, TWO_PI)
        if theta < 0.0:
            theta += TWO_PI
        if theta > math.pi:
            # reflect through the pole: same direction with phi shifted by pi
            theta = TWO_PI - theta
            phi += math.pi
        phi = math.fmod(phi, TWO_PI)
        if phi < 0.0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        return cls(theta=min(max(theta, 0.0), math.pi), phi=phi)

    @classmethod
    def sigma_z(cls) -> "QubitObservable":
        return cls(theta=0.0, phi=0.0)

    @classmethod
    def sigma_x(cls) -> "QubitObservable":
        return cls(theta=math.pi / 2.0, phi=0.0)


ObservablePair = Tuple[QubitObservable, QubitObservable]


def eigenbases(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """
    Eigenvectors for arrays of unconstrained Bloch angles

    Returns:
        Array indexed [setting, outcome, component]; rows match
        QubitObservable.from_angles up to a global phase per eigenvector
    """
    half = np.asarray(thetas, dtype=float) / 2.0
    c = np.cos(half)
    s = np.sin(half)
    phase = np.exp(1j * np.asarray(phis, dtype=float))
    e0 = np.stack([c + 0j, phase * s], axis=-1)
    e1 = np.stack([s + 0j, -phase * c], axis=-1)
    return np.stack([e0, e1], axis=1)


def chsh_observables() -> Tuple[ObservablePair, ObservablePair]:
    """
    Standard Bell-CHSH settings

    Alice: x=0 -> sigma_z, x=1 -> sigma_x.
    Bob: y=0 -> (sigma_z + sigma_x)/sqrt2, y=1 -> the (sigma_x - sigma_z)/sqrt2
    line with outcome 0 on its -1 eigenvector, i.e. direction (sigma_z - sigma_x)/sqrt2.
    This labelling makes the Bell state saturate E00 + E01 + E10 - E11.

    Returns:
        (Alice pair indexed by x, Bob pair indexed by y)
    """
    alice = (QubitObservable.sigma_z(), QubitObservable.sigma_x())
    bob = (
        QubitObservable(theta=math.pi / 4.0, phi=0.0),
        QubitObservable(theta=math.pi / 4.0, phi=math.pi)
    )
    return alice, bob


def random_observable(rng: np.random.Generator) -> QubitObservable:
    """Observable with a direction uniform on the Bloch sphere"""
    theta = math.acos(rng.uniform(-1.0, 1.0))
    phi = rng.uniform(0.0, TWO_PI)
    return QubitObservable.from_angles(theta, phi)
