"""
Report module for energycov
Output documents of the spectrum, solve, verify and simulate commands
"""

from .report_generator import ReportGenerator, mode_records, SCHEMA_VERSION

__all__ = ["ReportGenerator", "mode_records", "SCHEMA_VERSION"]
