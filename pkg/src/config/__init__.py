"""
Config module for energycov
Line-oriented key = value configuration files validated into RunConfig
"""

from .config_manager import ConfigManager, KNOWN_KEYS
from .models import (
    RunConfig,
    QuadratureOrders,
    NoiseConfig,
    SimSection,
    VerifySection,
    OutputSection,
    OutputFormat,
)

__all__ = [
    "ConfigManager",
    "KNOWN_KEYS",
    "RunConfig",
    "QuadratureOrders",
    "NoiseConfig",
    "SimSection",
    "VerifySection",
    "OutputSection",
    "OutputFormat",
]
