"""Settings models and loading.

Settings come from a YAML file validated by pydantic.

Models:
    - SearchSettings: Solution enumeration
    - PrecisionSettings: Digits of π and numeric checks
    - BoundsSettings: The bounds engine
    - LoggingSettings: Log level of the CLI
    - MachinSettings: Root configuration model

Functions:
    - load_settings: Load and validate settings from a YAML file
    - resolve_settings: Settings for the CLI (explicit file, ./settings.yml, defaults)
"""

from pathlib import Path
from typing import Literal

import structlog
import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator

DEFAULT_SETTINGS_FILE = "settings.yml"

logger = structlog.get_logger()


class SearchSettings(BaseModel):
    """Settings for enumerating smooth solutions.

    Attributes:
        x_max: Upper end of the scanned x range.
        method: "trial" divides x²+1 by each modulus; "sieve" sieves blocks.
        workers: Worker processes for block scanning (1 scans in-process).
        block_size: Width of one scanned block of x.
    """

    model_config = ConfigDict(extra="forbid")

    x_max: int = Field(default=1_000_000, ge=1)
    method: Literal["trial", "sieve"] = "trial"
    workers: int = Field(default=1, ge=1)
    block_size: int = Field(default=100_000, ge=1)


class PrecisionSettings(BaseModel):
    """Settings for high-precision evaluation.

    Attributes:
        digits: Decimals of π printed by default.
        guard_digits: Extra decimals carried internally.
        binary_split_threshold: Digits above which arctan uses binary splitting.
        reference_relation: Named relation supplying π for numeric checks.
        fallback_reference_relation: Used when the checked relation is the
            reference itself.
    """

    model_config = ConfigDict(extra="forbid")

    digits: int = Field(default=1000, ge=1)
    guard_digits: int = Field(default=10, ge=1)
    binary_split_threshold: int = Field(default=200, ge=1)
    reference_relation: str = "machin"
    fallback_reference_relation: str = "gauss"

    @model_validator(mode="after")
    def _distinct_references(self) -> "PrecisionSettings":
        if self.reference_relation == self.fallback_reference_relation:
            raise ValueError("reference and fallback relations must differ")
        return self


class BoundsSettings(BaseModel):
    """Settings for the bounds engine.

    Attributes:
        mode: "as-published" uses printed constants, "recompute" rebuilds them.
        dps: Significant digits of mpmath arithmetic (at least 30).
        exponent_symbol: Power of log Y in the theorem pipelines, ψ or μ.
        c1_policy: "implied" backs C1 out of each row; "fixed" uses c1_value.
        c1_value: C1 for the fixed policy.
        fixed_point_tolerance: Relative change that ends an iteration.
        max_iterations: Iteration cap of fixed points and bisections.
    """

    model_config = ConfigDict(extra="forbid")

    mode: Literal["as-published", "recompute"] = "as-published"
    dps: int = Field(default=40, ge=30)
    exponent_symbol: Literal["psi", "mu"] = "psi"
    c1_policy: Literal["implied", "fixed"] = "implied"
    c1_value: float | None = Field(default=None, gt=0)
    fixed_point_tolerance: float = Field(default=1e-6, gt=0, lt=1)
    max_iterations: int = Field(default=500, ge=1)

    @model_validator(mode="after")
    def _fixed_needs_value(self) -> "BoundsSettings":
        if self.c1_policy == "fixed" and self.c1_value is None:
            raise ValueError("c1_policy 'fixed' requires c1_value")
        return self


class LoggingSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"


class MachinSettings(BaseModel):
    """Root configuration model.

    Attributes:
        version: Configuration schema version.
        search: Enumeration settings.
        precision: High-precision settings.
        bounds: Bounds engine settings.
        logging: Logging settings.
    """

    model_config = ConfigDict(extra="forbid")

    version: str = "1"
    search: SearchSettings = Field(default_factory=SearchSettings)
    precision: PrecisionSettings = Field(default_factory=PrecisionSettings)
    bounds: BoundsSettings = Field(default_factory=BoundsSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


def load_settings(path: str | Path) -> MachinSettings:
    """Load and validate settings from a YAML file.

    Args:
        path: Path to the settings.yml file.

    Returns:
        Validated MachinSettings instance.

    Raises:
        FileNotFoundError: If the settings file does not exist.
        yaml.YAMLError: If the file contains invalid YAML.
        pydantic.ValidationError: If the configuration is invalid.
        ValueError: If the file does not hold a mapping.

    Example:
        >>> settings = load_settings("settings.yml")
        >>> settings.search.method
        'trial'
    """
    path = Path(path)

    if not path.exists():
        raise FileNotFoundError(f"Settings file not found: {path}")

    with path.open() as f:
        data = yaml.safe_load(f)

    # Handle empty file
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ValueError(f"Settings file must contain a mapping: {path}")

    return MachinSettings.model_validate(data)


def resolve_settings(path: str | Path | None = None) -> MachinSettings:
    """Return settings from `path`, else ./settings.yml if present, else defaults.

    Raises:
        FileNotFoundError: If an explicit path does not exist.
    """
    if path is not None:
        return load_settings(path)
    default = Path.cwd() / DEFAULT_SETTINGS_FILE
    if default.exists():
        logger.debug("settings_found_in_cwd", path=str(default))
        return load_settings(default)
    return MachinSettings()
