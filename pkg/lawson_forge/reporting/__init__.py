"""
Reporting module for lawson-forge.

Builds machine-readable verification reports for generated, loaded and
corresponding nets.
"""

from .verification import (
    Check,
    VerificationReport,
    verify_r3,
    verify_s3,
    verify_sphere,
    verify_net,
    verify_lawson,
    net_from_file,
)

__all__ = [
    "Check",
    "VerificationReport",
    "verify_r3",
    "verify_s3",
    "verify_sphere",
    "verify_net",
    "verify_lawson",
    "net_from_file",
]
