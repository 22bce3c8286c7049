"""
Configuration management for lattice enumeration and checking.

This module provides centralized configuration with validation, default
values and type safety for size guards, series truncation and the check
harness.
"""

import os
from dataclasses import dataclass, field

from fibolattice.family import INFINITY, FamilyParam

# Paths are packed into Python ints; the text format is the interchange form.
MAX_PACKED_SEMILENGTH = 64


@dataclass
class SizeGuardConfig:
    """Limits on how much an operation may materialize."""

    max_elements: int = 2**23
    max_comparisons: int = 10**9
    max_semilength: int = MAX_PACKED_SEMILENGTH
    max_mobius_elements: int = 4096

    def __post_init__(self) -> None:
        """Validate configuration after initialization."""
        if self.max_elements <= 0:
            raise ValueError("Max elements must be positive")
        if self.max_comparisons <= 0:
            raise ValueError("Max comparisons must be positive")
        if not 0 < self.max_semilength <= MAX_PACKED_SEMILENGTH:
            raise ValueError(
                f"Max semilength must be between 1 and {MAX_PACKED_SEMILENGTH}"
            )
        if self.max_mobius_elements <= 0:
            raise ValueError("Max mobius elements must be positive")


@dataclass
class SeriesConfig:
    """Configuration for truncated series expansions."""

    order: int = 30

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("Series order must be positive")


@dataclass
class CheckConfig:
    """Configuration for the brute force versus closed form harness."""

    n_max: int = 8
    p_values: tuple[FamilyParam, ...] = (FamilyParam(2), FamilyParam(3), INFINITY)
    workers: int = 1
    enable_progress_bar: bool = True
    # Motzkin round trips and recursive Mobius values grow fastest
    motzkin_n_max: int = 8
    mobius_n_max: int = 7

    def __post_init__(self) -> None:
        """Validate configuration after initialization."""
        if not 0 <= self.n_max <= 16:
            raise ValueError("Check n_max must be between 0 and 16")
        if not self.p_values:
            raise ValueError("Check p_values cannot be empty")
        self.p_values = tuple(FamilyParam.of(p) for p in self.p_values)
        if self.workers < 1:
            raise ValueError("Number of workers must be positive")
        if self.motzkin_n_max < 0:
            raise ValueError("Motzkin n_max cannot be negative")
        if self.mobius_n_max < 0:
            raise ValueError("Mobius n_max cannot be negative")


@dataclass
class AppConfig:
    """Main configuration class combining all sections."""

    guards: SizeGuardConfig = field(default_factory=SizeGuardConfig)
    series: SeriesConfig = field(default_factory=SeriesConfig)
    check: CheckConfig = field(default_factory=CheckConfig)

    @classmethod
    def create_default(cls) -> "AppConfig":
        """Create a configuration with all default values."""
        return cls()

    @classmethod
    def from_env(cls) -> "AppConfig":
        """Load overrides from FIBOLATTICE_* environment variables."""
        guards = SizeGuardConfig(
            max_elements=_env_int("FIBOLATTICE_MAX_ELEMENTS", 2**23),
            max_comparisons=_env_int("FIBOLATTICE_MAX_COMPARISONS", 10**9),
        )
        series = SeriesConfig(order=_env_int("FIBOLATTICE_SERIES_ORDER", 30))
        p_text = os.getenv("FIBOLATTICE_CHECK_P")
        check = CheckConfig(
            n_max=_env_int("FIBOLATTICE_CHECK_N_MAX", 8),
            workers=_env_int("FIBOLATTICE_CHECK_WORKERS", 1),
            **({"p_values": FamilyParam.parse_list(p_text)} if p_text else {}),
        )
        return cls(guards=guards, series=series, check=check)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from exc


DEFAULT_GUARD = SizeGuardConfig()
