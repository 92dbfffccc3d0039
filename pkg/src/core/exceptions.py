"""
Custom exception classes for the toolkit.

This module defines a hierarchy of custom exceptions
for better error handling and debugging.
"""

from __future__ import annotations

from typing import Any


class AppException(Exception):
    """
    Base exception for all toolkit-specific errors.

    Attributes:
        message: Human-readable error message
        code: Optional error code for programmatic handling
        details: Optional dictionary with additional error details
    """

    def __init__(
        self,
        message: str,
        code: str | None = None,
        details: dict[str, Any] | None = None
    ) -> None:
        super().__init__(message)
        self.message = message
        self.code = code
        self.details = details or {}

    def __str__(self) -> str:
        if self.code:
            return f"[{self.code}] {self.message}"
        return self.message

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to dictionary for serialization."""
        return {
            "type": self.__class__.__name__,
            "message": self.message,
            "code": self.code,
            "details": self.details,
        }


class ConfigurationError(AppException):
    """
    Raised when there's an error in configuration.

    Examples:
        - Configuration file not found or not valid JSON
        - RunConfig violates its invariants (see ``violations``)
    """

    def __init__(
        self,
        message: str,
        key: str | None = None,
        violations: list[str] | None = None,
        details: dict[str, Any] | None = None
    ) -> None:
        super().__init__(message, code="CONFIG_ERROR", details=details)
        self.key = key
        self.violations = list(violations or [])


class ServiceError(AppException):
    """
    Raised when a service operation fails.

    Examples:
        - Service not initialized
        - Environment backend not registered
    """

    def __init__(
        self,
        message: str,
        service_name: str | None = None,
        details: dict[str, Any] | None = None
    ) -> None:
        super().__init__(message, code="SERVICE_ERROR", details=details)
        self.service_name = service_name


class ValidationError(AppException):
    """
    Raised when a model fails validation.

    Examples:
        - Negative novelty score
        - Eligibility flags disagreeing with descriptor values
    """

    def __init__(
        self,
        message: str,
        field: str | None = None,
        value: Any = None,
        details: dict[str, Any] | None = None
    ) -> None:
        super().__init__(message, code="VALIDATION_ERROR", details=details)
        self.field = field
        self.value = value


class StructuralError(ValidationError):
    """Raised when a genome or trajectory has the wrong shape."""

    def __init__(
        self,
        message: str,
        expected: int | None = None,
        actual: int | None = None,
    ) -> None:
        super().__init__(message, details={"expected": expected, "actual": actual})
        self.code = "STRUCTURAL_ERROR"
        self.expected = expected
        self.actual = actual


class ContractViolation(AppException):
    """
    Raised when an operation is called outside its preconditions.

    Examples:
        - Distance queried on an ineligible descriptor slot
        - k = 0 neighbors
        - Sampling more individuals than the pool holds
    """

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message, code="CONTRACT_ERROR", details=details)


class RepositoryError(AppException):
    """
    Raised when a repository operation fails.

    Examples:
        - Malformed record line
        - Storage access error
    """

    def __init__(
        self,
        message: str,
        path: str | None = None,
        line_number: int | None = None,
        details: dict[str, Any] | None = None
    ) -> None:
        super().__init__(message, code="REPO_ERROR", details=details)
        self.path = path
        self.line_number = line_number


class IncompatibleArtifactError(RepositoryError):
    """Raised when an artifact's format version or config hash does not match."""

    def __init__(
        self,
        message: str,
        path: str | None = None,
        expected: str | None = None,
        found: str | None = None,
    ) -> None:
        super().__init__(message, path=path, details={"expected": expected, "found": found})
        self.code = "INCOMPATIBLE_ARTIFACT"
        self.expected = expected
        self.found = found


class DataIntegrityError(AppException):
    """
    Raised when stored results contradict the environment.

    Examples:
        - A success without a first-contact point
        - A success-archive entry that does not replay to success
    """

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message, code="DATA_INTEGRITY", details=details)
