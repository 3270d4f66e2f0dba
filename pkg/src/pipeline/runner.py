import logging

from core.config import Settings
from core.exceptions import NetVisionError
from models.pipeline import SweepConfig
from pipeline import job_store
from simulation.sweep import export_results_csv, run_sweep
from utils.tables import convert_types

logger = logging.getLogger(__name__)


class SweepPipeline:
    def __init__(self, settings: Settings) -> None:
        self.settings = settings

    def run(self, job_id: str, config: SweepConfig) -> None:
        """Run a sweep as a BackgroundTask, reporting each finished run to the job store."""
        job_store.start_job(job_id)
        logger.info("Sweep job %s started: %d runs", job_id, len(config.runs()))

        try:
            results = run_sweep(
                config,
                on_run=lambda done, label: job_store.record_progress(job_id, done, label),
            )
            out_path = self.settings.results_dir / f"sweep_{job_id}.csv"
            export_results_csv(results, out_path)
            logger.info("Sweep job %s wrote %d rows to %s", job_id, len(results), out_path)

            job_store.complete_job(
                job_id,
                runs_done=len(results),
                results_path=str(out_path),
                result={
                    "runs": len(results),
                    "rows": [
                        {key: convert_types(value) for key, value in row.items()}
                        for row in results.to_dict(orient="records")
                    ],
                },
            )

        except NetVisionError as exc:
            logger.warning("Sweep job %s rejected: %s", job_id, exc)
            job_store.fail_job(job_id, exc.message)
        except Exception as exc:
            logger.exception("Sweep job %s failed", job_id)
            job_store.fail_job(job_id, str(exc))
