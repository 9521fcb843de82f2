"""
Configuration loader for loading and validating run configurations.

Supports YAML and JSON files, plain dictionaries (for testing) and dotted
``key=value`` overrides from the command line.
"""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional

import yaml
from pydantic import ValidationError

from idmix.config.models import RunConfig
from idmix.errors import SchemaError


class ConfigLoader:
    """Loader for run configurations with validation."""

    @staticmethod
    def load_from_dict(config_dict: Dict[str, Any]) -> RunConfig:
        """
        Load configuration from a dictionary.

        Args:
            config_dict: Configuration dictionary matching RunConfig schema

        Returns:
            Validated RunConfig instance

        Raises:
            SchemaError: If configuration is invalid
        """
        try:
            return RunConfig.model_validate(config_dict)
        except ValidationError as e:
            raise SchemaError(f"invalid configuration: {_describe(e)}") from e

    @staticmethod
    def read_file(file_path: str) -> Dict[str, Any]:
        """Read a YAML or JSON document into a dictionary."""
        path = Path(file_path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                if path.suffix in (".yaml", ".yml"):
                    data = yaml.safe_load(f)
                elif path.suffix == ".json":
                    data = json.load(f)
                else:
                    raise SchemaError(f"unsupported config format '{path.suffix}'", path)
        except OSError as e:
            raise SchemaError(f"cannot read config: {e}", path) from e
        except (yaml.YAMLError, json.JSONDecodeError) as e:
            raise SchemaError(f"cannot parse config: {e}", path) from e

        if data is None:
            return {}
        if not isinstance(data, dict):
            raise SchemaError("config root must be a mapping", path)
        return data

    @classmethod
    def load(
        cls,
        file_path: Optional[str] = None,
        overrides: Iterable[str] = (),
        seed: Optional[int] = None,
        literals: Optional[Mapping[str, Any]] = None,
    ) -> RunConfig:
        """
        Resolve a configuration from an optional file plus overrides.

        Args:
            file_path: YAML/JSON config file, or None for pure defaults
            overrides: ``dotted.key=value`` strings, applied in order
            seed: If given, replaces ``train.seed``
            literals: Top-level keys set to the given values as-is, after the
                overrides, without YAML scalar parsing

        Returns:
            Validated RunConfig instance

        Raises:
            SchemaError: If the file, an override or the result is invalid
        """
        data = cls.read_file(file_path) if file_path else {}
        for item in overrides:
            apply_override(data, item)
        data.update(literals or {})
        if seed is not None:
            data.setdefault("train", {})
            if not isinstance(data["train"], dict):
                raise SchemaError("'train' must be a mapping")
            data["train"]["seed"] = seed
        return cls.load_from_dict(data)

    @staticmethod
    def dump(config: RunConfig, file_path: Path) -> None:
        """Write the fully resolved configuration as YAML."""
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, "w", encoding="utf-8") as f:
            yaml.safe_dump(
                config.model_dump(mode="json"), f, sort_keys=True, default_flow_style=False
            )


def apply_override(data: Dict[str, Any], item: str) -> None:
    """
    Apply one ``dotted.key=value`` override in place.

    The value is parsed with YAML scalar rules, so ``0.5``, ``true`` and
    ``null`` get their natural types.
    """
    if "=" not in item:
        raise SchemaError(f"override '{item}' must look like key=value")
    key, raw = item.split("=", 1)
    parts = [p for p in key.strip().split(".") if p]
    if not parts:
        raise SchemaError(f"override '{item}' has an empty key")
    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError as e:
        raise SchemaError(f"override '{item}': cannot parse value: {e}") from e

    node = data
    for part in parts[:-1]:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise SchemaError(f"override '{item}': '{part}' is not a section")
        node = child
    node[parts[-1]] = value


def _describe(error: ValidationError) -> str:
    messages = []
    for err in error.errors():
        location = ".".join(str(part) for part in err["loc"])
        messages.append(f"{location}: {err['msg']}")
    return "; ".join(messages)
