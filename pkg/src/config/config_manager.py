"""
Config Manager implementation
"""

import logging
import re
from typing import Any, Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ValidationError

from ..eigenbases.modes import Geometry
from ..errors import ConfigError
from .models import RunConfig

logger = logging.getLogger(__name__)

_KEY_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z_][A-Za-z0-9_]*)?$")


def _known_keys() -> List[str]:
    keys = []
    for name, info in RunConfig.model_fields.items():
        annotation = info.annotation
        if isinstance(annotation, type) and issubclass(annotation, BaseModel):
            keys.extend(f"{name}.{sub}" for sub in annotation.model_fields)
        else:
            keys.append(name)
    return keys


KNOWN_KEYS = frozenset(_known_keys())


class ConfigManager:
    """
    Loads run configurations from line-oriented `key = value` files.

    Keys are flat and dotted (noise.sigma2); `#` starts a comment; --set overrides are
    applied after the file in the order given.
    """

    def __init__(self):
        logger.debug(f"ConfigManager initialized with {len(KNOWN_KEYS)} known keys")

    def parse_text(self, text: str, source: str = "<config>") -> Dict[str, Tuple[str, int]]:
        """
        Parse config text.

        Args:
            text: File contents
            source: Name used in error messages

        Returns:
            Dict mapping key to (raw value, line number)
        """
        entries: Dict[str, Tuple[str, int]] = {}
        errors = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                errors.append(f"{source}:{line_no}: expected 'key = value', got {raw.strip()!r}")
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            if not _KEY_RE.match(key):
                errors.append(f"{source}:{line_no}: malformed key {key!r}")
                continue
            if key in entries:
                errors.append(
                    f"{key}: duplicate key on lines {entries[key][1]} and {line_no} of {source}"
                )
                continue
            entries[key] = (value, line_no)
        if errors:
            raise ConfigError(errors)
        return entries

    @staticmethod
    def parse_override(item: str) -> Tuple[str, str]:
        """Split a --set KEY=VALUE argument."""
        if "=" not in item:
            raise ConfigError([f"--set {item!r}: expected KEY=VALUE"])
        key, value = (part.strip() for part in item.split("=", 1))
        if not key:
            raise ConfigError([f"--set {item!r}: empty key"])
        return key, value

    def load(self, path: Optional[str] = None, overrides: Iterable[str] = ()) -> RunConfig:
        """
        Load a configuration file and apply overrides.

        Args:
            path: Config file, None for defaults only
            overrides: KEY=VALUE strings

        Returns:
            Validated RunConfig
        """
        flat: Dict[str, str] = {}
        if path is not None:
            try:
                with open(path, "r", encoding="utf-8") as f:
                    text = f.read()
            except (OSError, UnicodeDecodeError) as e:
                raise ConfigError([f"cannot read config file {path}: {e}"]) from e
            flat = {key: value for key, (value, _) in self.parse_text(text, path).items()}
        for item in overrides:
            key, value = self.parse_override(item)
            flat[key] = value

        config = self.build(flat)
        logger.info(
            f"Loaded config: geometry={config.geometry.value}, modes={config.mode_count}, "
            f"noise={config.noise.kind.value}"
        )
        for warning in self._warnings(config):
            logger.warning(warning)
        return config

    def build(self, flat: Dict[str, Any]) -> RunConfig:
        """Validate flat dotted keys into a RunConfig, raising ConfigError on any problem."""
        unknown = sorted(set(flat) - KNOWN_KEYS)
        if unknown:
            raise ConfigError([f"{key}: unknown key" for key in unknown])

        nested: Dict[str, Any] = {}
        for key, value in flat.items():
            if "." in key:
                section, name = key.split(".", 1)
                nested.setdefault(section, {})[name] = value
            else:
                nested[key] = value
        try:
            return RunConfig.model_validate(nested)
        except ValidationError as e:
            raise ConfigError(self._format_errors(e)) from e

    @staticmethod
    def _format_errors(error: ValidationError) -> List[str]:
        messages = []
        for item in error.errors():
            msg = item["msg"]
            if msg.startswith("Value error, "):
                msg = msg[len("Value error, "):]
            loc = ".".join(str(part) for part in item["loc"])
            if re.match(r"^[A-Za-z_][\w.]*: ", msg) or not loc:
                messages.append(msg)
            else:
                messages.append(f"{loc}: {msg}")
        return messages

    @staticmethod
    def _warnings(config: RunConfig) -> List[str]:
        warnings = []
        if config.geometry == Geometry.OSCILLATOR and config.gamma <= config.d / 2:
            warnings.append(
                f"gamma: {config.gamma} <= d/2 = {config.d / 2} for the oscillator; accepted, "
                f"all eigenvalues remain negative"
            )
        if config.sim.method.value == "euler":
            warnings.append("sim.method: euler carries a time-step bias; use exact for acceptance runs")
        return warnings

    def validate_config(self, flat: Dict[str, Any]) -> Dict[str, Any]:
        """
        Validate flat keys without raising.

        Args:
            flat: Dotted key to value

        Returns:
            Validation result with valid flag, errors and warnings
        """
        try:
            config = self.build(flat)
        except ConfigError as e:
            return {"valid": False, "errors": e.errors, "warnings": []}
        return {"valid": True, "errors": [], "warnings": self._warnings(config)}

    @staticmethod
    def to_flat(config: RunConfig) -> Dict[str, Any]:
        """Resolved configuration as flat dotted keys, for echoing into reports."""
        flat: Dict[str, Any] = {}
        for name, value in config.model_dump(mode="json").items():
            if isinstance(value, dict):
                for sub, sub_value in value.items():
                    flat[f"{name}.{sub}"] = sub_value
            else:
                flat[name] = value
        return flat
