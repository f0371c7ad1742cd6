"""
CLI module for energycov
Configuration-driven commands tying geometry, noise, solve, verification and simulation together
"""

from .commands import (
    cmd_spectrum,
    cmd_solve,
    cmd_verify,
    cmd_simulate,
    run_command,
    COMMANDS,
    RunContext,
)

__all__ = [
    "cmd_spectrum",
    "cmd_solve",
    "cmd_verify",
    "cmd_simulate",
    "run_command",
    "COMMANDS",
    "RunContext",
]
