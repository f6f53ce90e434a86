"""Runtime configuration loaded from environment variables via pydantic-settings."""

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """All runtime settings for hkq.

    Values are loaded from environment variables or a .env file.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Reproducibility: HKQ_SEED sets the default for --seed
    hkq_seed: int = 0

    # Gröbner engine
    groebner_method: Literal["buchberger", "f5b"] = "buchberger"
    # Degree bound for Hilbert functions of rings that are not Artinian
    hilbert_max_degree: int = Field(default=12, ge=1)

    # Cogenerator calculus
    interpolation_margin: int = Field(default=3, ge=1)
    char_check_points: int = Field(default=1000, ge=1)
    large_offset: int = Field(default=10**6, ge=10)

    # Annihilator fingerprints
    fingerprint_max_candidates: int = Field(default=2**14, ge=1)

    # Verification suite
    max_concurrency: int = Field(default=4, ge=1)

    # Logging
    log_level: str = "INFO"
    log_file: str | None = None


settings = Settings()
