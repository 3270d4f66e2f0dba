"""Process-local registry of sweep jobs.

Jobs live in memory only: they vanish on restart and are not shared between
uvicorn workers. Background tasks run in the threadpool, so every access
goes through one lock.
"""

import threading
import uuid
from datetime import datetime

try:
    from datetime import UTC
except ImportError:  # Python < 3.11
    from datetime import timezone

    UTC = timezone.utc
from typing import Any

from models.pipeline import JobStatus, SweepConfig, SweepJobState

_jobs: dict[str, SweepJobState] = {}
_lock = threading.Lock()

_ACTIVE = (JobStatus.QUEUED, JobStatus.RUNNING)


def create_job(config: SweepConfig) -> SweepJobState:
    job = SweepJobState(job_id=str(uuid.uuid4()), runs_total=len(config.runs()))
    with _lock:
        _jobs[job.job_id] = job
    return job


def get_job(job_id: str) -> SweepJobState | None:
    with _lock:
        return _jobs.get(job_id)


def active_jobs() -> int:
    with _lock:
        return sum(1 for job in _jobs.values() if job.status in _ACTIVE)


def _update(job_id: str, **changes: Any) -> None:
    with _lock:
        job = _jobs.get(job_id)
        if job is not None:
            _jobs[job_id] = job.model_copy(update=changes)


def start_job(job_id: str) -> None:
    _update(job_id, status=JobStatus.RUNNING)


def record_progress(job_id: str, runs_done: int, current_run: str) -> None:
    _update(job_id, runs_done=runs_done, current_run=current_run)


def complete_job(job_id: str, runs_done: int, results_path: str, result: dict[str, Any]) -> None:
    _update(
        job_id,
        status=JobStatus.COMPLETED,
        completed_at=datetime.now(UTC),
        runs_done=runs_done,
        current_run=None,
        results_path=results_path,
        result=result,
    )


def fail_job(job_id: str, error: str) -> None:
    _update(
        job_id,
        status=JobStatus.FAILED,
        completed_at=datetime.now(UTC),
        current_run=None,
        error=error,
    )
