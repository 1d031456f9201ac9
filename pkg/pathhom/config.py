from typing import List

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    PROJECT_NAME: str = "pathhom - exact GLMY path homology"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    # Chain complex
    LEVEL_CAP: int = 16
    DEFAULT_FIELDS: List[str] = ["Q", "F2"]

    # Random multisquare-free corpus
    CORPUS_SIZE: int = 200
    CORPUS_MAX_VERTICES: int = 10
    CORPUS_SEED: int = 20240917
    CORPUS_ARROW_PROBABILITY: float = 0.3
    CORPUS_MAX_LEVEL: int = 5

    # Re-verify every linear-algebra result (rank-nullity, U*A*V = D, ...)
    CHECK_INVARIANTS: bool = False

    model_config = SettingsConfigDict(env_prefix="PATHHOM_", case_sensitive=True)


settings = Settings()
