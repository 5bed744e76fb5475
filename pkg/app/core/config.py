import os
from functools import lru_cache

from dotenv import load_dotenv

load_dotenv()


class Settings:
    """Toolkit configuration, read from environment variables."""

    LOG_LEVEL: str = os.getenv("ACMTETRA_LOG_LEVEL", "WARNING")

    # Worker processes for enumerate/crosscheck; --jobs overrides.
    JOBS: int = int(os.getenv("ACMTETRA_JOBS", "1"))

    # Resource caps. Every capped operation accepts an explicit override.
    HOMOLOGY_MAX_VERTICES: int = int(os.getenv("ACMTETRA_HOMOLOGY_MAX_VERTICES", "16"))
    BETTI_MAX_VERTICES: int = int(os.getenv("ACMTETRA_BETTI_MAX_VERTICES", "14"))
    TRANSVERSAL_CAP: int = int(os.getenv("ACMTETRA_TRANSVERSAL_CAP", "200000"))
    CYCLE_MAX_VERTICES: int = int(os.getenv("ACMTETRA_CYCLE_MAX_VERTICES", "24"))
    MAX_EXPONENT: int = int(os.getenv("ACMTETRA_MAX_EXPONENT", "64"))

    def validate(self) -> bool:
        for name in (
            "JOBS",
            "HOMOLOGY_MAX_VERTICES",
            "BETTI_MAX_VERTICES",
            "TRANSVERSAL_CAP",
            "CYCLE_MAX_VERTICES",
            "MAX_EXPONENT",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"ACMTETRA_{name} must be a positive integer")
        return True


@lru_cache()
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
