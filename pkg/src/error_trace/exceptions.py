"""
Custom Exception Classes
"""
from typing import Optional, Dict, Any


class BellBoxException(Exception):
    """Base exception for the nonlocal box simulator"""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary"""
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "error_code": self.error_code,
            "details": self.details
        }


class ValidationError(BellBoxException):
    """Exception raised when constructor input is invalid"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, error_code="VALIDATION_ERROR", details=details)


class AllZeroStateError(BellBoxException):
    """Exception raised when a state has (numerically) zero norm"""

    def __init__(self, norm: float):
        super().__init__(
            message=f"State amplitudes are all zero (norm {norm:.3e})",
            error_code="ALL_ZERO",
            details={"norm": norm}
        )


class DomainError(BellBoxException):
    """Exception raised when an argument lies outside the function's domain"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, error_code="DOMAIN_ERROR", details=details)


class NonConvergenceError(BellBoxException):
    """Exception raised when an iterative solver exhausts its budget"""

    def __init__(self, iterations: int, residual_norm: float, target: float):
        super().__init__(
            message=(
                f"Solver did not reach residual {target:.1e} "
                f"within {iterations} iterations (last {residual_norm:.3e})"
            ),
            error_code="NON_CONVERGENCE",
            details={
                "iterations": iterations,
                "residual_norm": residual_norm,
                "target": target
            }
        )


class NotEntangledError(BellBoxException):
    """Exception raised when an entangled state is required"""

    def __init__(self, schmidt_coefficients: tuple):
        super().__init__(
            message="State is a product state; the observable search is vacuous",
            error_code="NOT_ENTANGLED",
            details={"schmidt_coefficients": list(schmidt_coefficients)}
        )


class EmptySweepError(BellBoxException):
    """Exception raised when emitting an empty sweep"""

    def __init__(self):
        super().__init__("Sweep has no rows", error_code="EMPTY_SWEEP")


class BoxFormatError(BellBoxException):
    """Exception raised when a box file cannot be loaded"""

    def __init__(self, message: str, source: Optional[str] = None):
        super().__init__(
            message,
            error_code="BOX_FORMAT_ERROR",
            details={"source": source} if source else {}
        )
