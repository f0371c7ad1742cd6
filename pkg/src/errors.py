"""
Exception hierarchy for energycov

Library code raises these; only main.py turns them into process exit codes.
"""

from typing import Any, List, Optional

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTATION = 3
EXIT_VERIFICATION = 4


class EnergyCovError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = EXIT_COMPUTATION


class ConfigError(EnergyCovError):
    """
    Invalid configuration.

    Args:
        errors: Field-located messages, one per problem ("noise.sigma2: ...")
    """

    exit_code = EXIT_CONFIG

    def __init__(self, errors: List[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors) if self.errors else "invalid config")


class ComputationError(EnergyCovError):
    exit_code = EXIT_COMPUTATION


class DimensionMismatchError(ComputationError, ValueError):
    pass


class InvalidSpectrumError(ComputationError, ValueError):
    pass


class DomainError(ComputationError, ValueError):
    """Argument outside the supported range of a routine."""


class GeometryMismatchError(ComputationError, ValueError):
    pass


class ConvergenceError(ComputationError):
    pass


class CholeskyError(ComputationError):
    pass


class VerificationFailure(EnergyCovError):
    """
    A verification or statistical check failed.

    Args:
        message: Short description of the failing check
        report: Full report that was produced before failing
    """

    exit_code = EXIT_VERIFICATION

    def __init__(self, message: str, report: Optional[Any] = None):
        self.report = report
        super().__init__(message)
