from datetime import datetime

try:
    from datetime import UTC
except ImportError:  # Python < 3.11
    from datetime import timezone

    UTC = timezone.utc
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum
from typing import Any

from pydantic import BaseModel, Field, computed_field

from models.simulation import TopologyModel, Workload


class JobStatus(StrEnum):
    QUEUED = "queued"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


class SweepConfig(BaseModel):
    models: list[TopologyModel] = Field(default_factory=lambda: list(TopologyModel))
    n: int = Field(default=64, ge=2)
    seeds: int = Field(default=1, ge=1, le=1000)
    base_seed: int = 42
    p: float = Field(default=0.1, ge=0.0, le=1.0)
    k: int = Field(default=4, ge=2)
    p_rew: float = Field(default=0.1, ge=0.0, le=1.0)
    m: int = Field(default=2, ge=1)
    retry: bool = True
    workload: Workload = Field(
        default_factory=lambda: Workload(frames=100, t_proc=1.0, t_hop=0.05)
    )

    def runs(self) -> list[tuple[TopologyModel, int]]:
        """(model, seed) pairs in execution order: every seed of a model before the next."""
        return [
            (model, self.base_seed + offset)
            for model in self.models
            for offset in range(self.seeds)
        ]


class SweepJobState(BaseModel):
    job_id: str
    status: JobStatus = JobStatus.QUEUED
    runs_total: int = Field(default=0, ge=0)
    runs_done: int = Field(default=0, ge=0)
    current_run: str | None = None
    created_at: datetime = Field(default_factory=lambda: datetime.now(UTC))
    completed_at: datetime | None = None
    error: str | None = None
    results_path: str | None = None
    result: dict[str, Any] | None = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def progress(self) -> float:
        return self.runs_done / self.runs_total if self.runs_total else 0.0
