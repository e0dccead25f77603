"""
Configuration management for the gdpart CLI.
Loads operator defaults from GDPART_* environment variables and .env.
"""

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """CLI defaults; explicit flags always win."""

    model_config = SettingsConfigDict(
        env_prefix='GDPART_',
        env_file='.env',
        case_sensitive=False,
        extra='ignore',
    )

    # Logging
    log_level: str = 'WARNING'

    # Solver defaults
    default_threads: int = 1
    default_round_trials: int = 8
    default_weight_spec: str = 'unit,degree'

    # Output
    float_format: str = '%.17g'  # Weights TSV


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance.
    Call get_settings.cache_clear() after changing the environment.
    """
    return Settings()
