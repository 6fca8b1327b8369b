"""
LE-ALC Reasoner Configuration
Environment and run settings using Pydantic Settings
"""

from pydantic_settings import BaseSettings
from pydantic import Field
from typing import Optional
from functools import lru_cache


class Settings(BaseSettings):
    """Reasoner settings with environment variable support (prefix LE_ALC_)"""

    # Application
    debug: bool = False
    log_level: str = "WARNING"

    # Saturation safety limit. When unset, the limit is derived from the
    # termination bound times step_bound_slack, floored at min_step_limit.
    max_steps: Optional[int] = Field(default=None, ge=1)
    step_bound_slack: int = Field(default=4, ge=1)
    min_step_limit: int = Field(default=10_000, ge=1)
    stop_at_first_clash: bool = True

    # Brute-force oracle and lattice enumeration guards
    oracle_max_carrier: int = Field(default=3, ge=0)
    lattice_max_elements: int = Field(default=12, ge=0)

    # Batch mode
    batch_parallelism: int = Field(default=4, ge=1)

    class Config:
        env_prefix = "LE_ALC_"
        env_file = ".env"
        env_file_encoding = "utf-8"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
