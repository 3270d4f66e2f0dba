from fastapi import APIRouter
from pydantic import BaseModel

from api.deps import SettingsDep
from pipeline import job_store

router = APIRouter()


class HealthResponse(BaseModel):
    status: str = "ok"
    active_sweeps: int
    results_dir: str


@router.get("/health", response_model=HealthResponse, tags=["health"])
async def health(settings: SettingsDep) -> HealthResponse:
    """Liveness plus the number of queued or running sweep jobs."""
    return HealthResponse(
        active_sweeps=job_store.active_jobs(), results_dir=str(settings.results_dir)
    )
