"""
Configuration schema definition using Pydantic.

This module defines the declarative runtime settings that serve as the
single source of truth for process-wide configuration. Case data (mesh,
parameters, time grid, reduction sizes) lives in case config files instead.
"""

from typing import Any, Optional

from pydantic import BaseModel, Field, field_validator


class RuntimeSettings(BaseModel):
    """
    Declarative runtime settings.

    Each field can be set via environment variables or CLI arguments.
    """

    workers: int = Field(
        1,
        ge=1,
        le=64,
        description="Number of concurrent full-order solves during offline runs",
        json_schema_extra={
            "env_var": "SPACETIME_ROM_WORKERS",
            "cli_arg": "workers",
        },
    )

    seed: Optional[int] = Field(
        None,
        ge=0,
        description="Override of the case sampling seed",
        json_schema_extra={
            "env_var": "SPACETIME_ROM_SEED",
            "cli_arg": "seed",
        },
    )

    scratch_dir: Optional[str] = Field(
        None,
        description="Directory receiving spilled snapshot matrices (snapshots stay in memory only when unset)",
        json_schema_extra={
            "env_var": "SPACETIME_ROM_SCRATCH_DIR",
            "cli_arg": "scratch_dir",
        },
    )

    log_json_events: bool = Field(
        True,
        description="Emit machine-readable SOLVE/STAGE/ONLINE log records",
        json_schema_extra={
            "env_var": "SPACETIME_ROM_LOG_EVENTS",
            "cli_arg": "log_events",
            "cli_choices": ["true", "false"],
        },
    )

    @field_validator("log_json_events", mode="before")
    @classmethod
    def parse_bool(cls, v: Any) -> bool:
        """Parse boolean from string values."""
        if isinstance(v, bool):
            return v
        if isinstance(v, str):
            v_lower = v.strip().lower()
            if v_lower in ("1", "true", "yes", "on"):
                return True
            elif v_lower in ("0", "false", "no", "off"):
                return False
            else:
                raise ValueError(f"Invalid boolean value: {v}")
        return bool(v)

    model_config = {
        "validate_assignment": True,
        "extra": "forbid",
    }
