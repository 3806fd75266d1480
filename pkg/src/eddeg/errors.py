"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations

from typing import Any, Optional


class EDDegreeError(RuntimeError):
    """Base error for all eddeg failures."""


class DegenerateSpectrum(EDDegreeError):
    """Raised when a sorted eigendecomposition finds (near) repeated eigenvalues."""

    def __init__(self, message: str, gap: float) -> None:
        super().__init__(message)
        self.gap = gap


class DecompositionFailure(EDDegreeError):
    """Raised when LAPACK fails to factor a matrix."""


class EnumerationOverflow(EDDegreeError):
    """Raised when an enumeration would exceed the configured cap."""

    def __init__(self, message: str, count: int, cap: int) -> None:
        super().__init__(message)
        self.count = count
        self.cap = cap


class ShapeMismatch(EDDegreeError):
    """Raised for matrices whose shape does not fit the model or operation."""


class NotSymmetric(ShapeMismatch):
    """Raised when a symmetric matrix is required and the input is not."""


class InvalidModel(EDDegreeError):
    """Raised when model parameters violate their constraints."""


class MalformedFile(EDDegreeError):
    """Raised for unreadable or schema-violating matrix / descriptor files."""


class NotOnManifold(EDDegreeError):
    """Raised when a point is too far from the model for a local operation."""

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(message)
        self.residual = residual


class NotNested(EDDegreeError):
    """Raised by adapted_frame when U is not contained in W."""


class RankDeficient(EDDegreeError):
    """Raised when a basis matrix does not have full column rank."""


class DegenerateInput(EDDegreeError):
    """Raised when an anchor fails the model's genericity predicate."""

    def __init__(self, message: str, predicate: str) -> None:
        super().__init__(message)
        self.predicate = predicate


class ParameterOrderViolation(EDDegreeError):
    """Raised when closed-form nearest points need sorted model parameters."""


class NoConvergence(EDDegreeError):
    """Raised when descent stops without reaching the gradient tolerance."""

    def __init__(
        self, message: str, residual: float, result: Optional[Any] = None
    ) -> None:
        super().__init__(message)
        self.residual = residual
        self.result = result
