"""Check results and verification reports."""

from .results import CheckResult, VerificationReport

__all__ = ["CheckResult", "VerificationReport"]
