"""Environment-driven defaults for the framemult command line.

Values come from ``FRAMEMULT_*`` environment variables or a ``.env`` file
in the working directory; command-line flags override them.
"""

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="FRAMEMULT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    tol_frame: float = Field(default=1e-12, gt=0)
    e: float = Field(default=1e-8, gt=0)
    seed: int = 0
    log_level: LogLevel = "WARNING"
    perturbation_ratio: float = Field(default=0.1, ge=0, lt=1)


def load_settings(**overrides) -> Settings:
    """Build settings, letting non-None keyword overrides win over the environment."""
    settings = Settings()
    values = {key: value for key, value in overrides.items() if value is not None}
    if not values:
        return settings
    return settings.model_copy(update=values)
