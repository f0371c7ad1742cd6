"""
Storage module for energycov
Logging setup and output serialization (JSON, CSV)
"""

from .logging_config import setup_logging
from .serialization import dumps_json, render_output, write_output, write_csv_rows, matrix_rows

__all__ = [
    "setup_logging",
    "dumps_json",
    "render_output",
    "write_output",
    "write_csv_rows",
    "matrix_rows",
]
