from pathlib import Path
from typing import Annotated, Any, cast

from fastapi import APIRouter, BackgroundTasks, Depends, HTTPException
from fastapi.responses import FileResponse

from api.deps import get_pipeline
from models.pipeline import JobStatus, SweepConfig, SweepJobState
from pipeline import job_store
from pipeline.runner import SweepPipeline

router = APIRouter(prefix="/api/v1/sweep", tags=["sweep"])


def _job_or_404(job_id: str) -> SweepJobState:
    job = job_store.get_job(job_id)
    if job is None:
        raise HTTPException(status_code=404, detail="Job not found")
    return job


@router.post("/run", response_model=SweepJobState, status_code=202)
async def run_sweep_job(
    config: SweepConfig,
    background_tasks: BackgroundTasks,
    pipeline: Annotated[SweepPipeline, Depends(get_pipeline)],
) -> SweepJobState:
    job = job_store.create_job(config)
    background_tasks.add_task(pipeline.run, job.job_id, config)
    return job


@router.get("/{job_id}/status", response_model=SweepJobState)
async def get_sweep_status(job_id: str) -> SweepJobState:
    """Job state with ``runs_done`` of ``runs_total`` and the run in progress."""
    job = _job_or_404(job_id)
    return job.model_copy(update={"result": None})


@router.get("/{job_id}/result")
async def get_sweep_result(job_id: str) -> dict[str, Any]:
    job = _job_or_404(job_id)
    if job.status is JobStatus.FAILED:
        raise HTTPException(status_code=409, detail=f"Sweep failed: {job.error}")
    if job.result is None:
        raise HTTPException(status_code=404, detail="Result not available yet")
    return cast(dict[str, Any], job.result)


@router.get("/{job_id}/results.csv", response_class=FileResponse)
async def download_sweep_csv(job_id: str) -> FileResponse:
    job = _job_or_404(job_id)
    if job.results_path is None or not Path(job.results_path).is_file():
        raise HTTPException(status_code=404, detail="Results file not available yet")
    return FileResponse(job.results_path, media_type="text/csv", filename=f"sweep_{job_id}.csv")
