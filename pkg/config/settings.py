"""
Configuration management for plan-order.

This module uses Pydantic Settings for type-safe configuration
with automatic environment variable loading and validation.

Environment variables can be set in:
- Shell environment
- .env file in project root

Example:
    >>> from config.settings import settings
    >>> print(settings.BRUTEFORCE_MAX_ACTIONS)
    10
"""

from __future__ import annotations

from functools import lru_cache
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings with environment variable support.

    No prefix is used, so ORACLE_MAX_NODES maps directly to the
    ORACLE_MAX_NODES env var.

    Attributes:
        BRUTEFORCE_MAX_ACTIONS: Size guard for sorting-enumeration validity.
        ORACLE_MAX_ACTIONS: Default action guard for the exact oracles.
        ORACLE_MAX_NODES: Default search-node cap for the exact oracles.
        MMCR_MAX_ACTIONS: Action guard for reordering enumeration.
        MMCR_MAX_NODES: Node cap for reordering enumeration.
        GAP_MAX_ACTIONS: Construction guard for the gap family generator.
        ORDER_SIZE_MEASURE: Whether order sizes count closure or reduction pairs.
        LOG_LEVEL: Logging verbosity level.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Validity checking
    BRUTEFORCE_MAX_ACTIONS: int = Field(
        default=10,
        description="Largest plan checked by enumerating topological sorts"
    )

    # Exact oracles
    ORACLE_MAX_ACTIONS: int = Field(
        default=24,
        description="Default action guard for exact oracles"
    )
    ORACLE_MAX_NODES: int = Field(
        default=2_000_000,
        description="Default search-node cap for exact oracles"
    )
    MMCR_MAX_ACTIONS: int = Field(
        default=5,
        description="Action guard for partial-order enumeration"
    )
    MMCR_MAX_NODES: int = Field(
        default=100_000,
        description="Node cap for partial-order enumeration"
    )

    # Generators
    GAP_MAX_ACTIONS: int = Field(
        default=400,
        description="Largest gap-family instance that will be built"
    )

    # Order size measure
    ORDER_SIZE_MEASURE: Literal["closure", "reduction"] = Field(
        default="closure",
        description="Count closure pairs or reduction pairs as |order|"
    )

    # Logging
    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="INFO",
        description="Logging verbosity"
    )

    @field_validator(
        "BRUTEFORCE_MAX_ACTIONS",
        "ORACLE_MAX_ACTIONS",
        "ORACLE_MAX_NODES",
        "MMCR_MAX_ACTIONS",
        "MMCR_MAX_NODES",
        "GAP_MAX_ACTIONS",
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Ensure guards and caps are positive."""
        if v <= 0:
            raise ValueError("size guards and node caps must be positive")
        return v


@lru_cache
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Returns:
        Singleton Settings instance.
    """
    return Settings()


# Global settings instance
settings = get_settings()
