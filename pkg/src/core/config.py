from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    log_level: str = "INFO"
    data_dir: Path = Path("data")
    cors_origins: list[str] = ["*"]

    similarity_threshold: float = Field(default=0.5, gt=0.0, le=1.0)
    radius: float = Field(default=3.0, ge=1.0)
    contrast: float = Field(default=0.25, gt=0.0, le=1.0)
    line_mode: Literal["tangent", "normal"] = "tangent"
    tol: float = Field(default=1e-10, gt=0.0)
    max_iter: int = Field(default=100_000, ge=1)
    community_method: Literal["greedy_modularity", "label_propagation"] = "greedy_modularity"
    seed: int = 42

    model_config = SettingsConfigDict(
        env_prefix="CNV_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @property
    def results_dir(self) -> Path:
        return self.data_dir / "results"


@lru_cache
def get_settings() -> Settings:
    return Settings()
