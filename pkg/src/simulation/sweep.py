"""Parameter sweeps over topology models and simulator config files."""

import logging
from collections.abc import Callable
from pathlib import Path

import pandas as pd
from dotenv import dotenv_values
from pydantic import ValidationError
from tqdm import tqdm

from core.exceptions import ConfigurationError
from models.pipeline import SweepConfig
from models.simulation import SimulationConfig, TopologyModel, TopologySpec
from simulation.stream import simulate_stream
from simulation.topology import describe_topology, generate_connected_topology, lattice_shape
from utils.tables import write_csv

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ("model", "N", "seed", "makespan", "speedup", "avg_path_len")


def load_simulation_config(path: Path) -> SimulationConfig:
    """Read a flat ``key = value`` simulator config (``#`` starts a comment)."""
    if not path.is_file():
        raise ConfigurationError(f"Config file not found: {path}")
    try:
        return SimulationConfig.from_flat(dotenv_values(path))
    except ValidationError as exc:
        raise ConfigurationError(
            f"Invalid simulator config {path}: {exc.errors()[0]['msg']}"
        ) from exc
    except ValueError as exc:
        raise ConfigurationError(f"Invalid simulator config {path}: {exc}") from exc


def sweep_spec(config: SweepConfig, model: TopologyModel, seed: int) -> TopologySpec:
    match model:
        case TopologyModel.RANDOM:
            return TopologySpec(model=model, n=config.n, p=config.p, seed=seed)
        case TopologyModel.SMALL_WORLD:
            return TopologySpec(model=model, n=config.n, k=config.k, p_rew=config.p_rew, seed=seed)
        case TopologyModel.SCALE_FREE:
            return TopologySpec(model=model, n=config.n, m=config.m, seed=seed)
        case TopologyModel.LATTICE:
            rows, cols = lattice_shape(config.n)
            return TopologySpec(model=model, n=config.n, rows=rows, cols=cols, seed=seed)


def run_sweep(
    config: SweepConfig,
    progress: bool = False,
    on_run: Callable[[int, str], None] | None = None,
) -> pd.DataFrame:
    """One row per (model, seed): makespan, speed-up and average path length.

    ``on_run(done, label)`` is called before each run with the number of runs
    already finished and a ``model:seed`` label.
    """
    rows = []
    for done, (model, seed) in enumerate(tqdm(config.runs(), desc="Sweep", disable=not progress)):
        if on_run is not None:
            on_run(done, f"{model}:{seed}")
        graph, used = generate_connected_topology(sweep_spec(config, model, seed), config.retry)
        result = simulate_stream(graph, config.workload)
        rows.append(
            {
                "model": str(model),
                "N": graph.node_count,
                "seed": used.seed,
                "makespan": result.makespan,
                "speedup": result.speedup,
                "avg_path_len": describe_topology(graph).avg_path_len,
            }
        )
    logger.info("Sweep finished: %d runs", len(rows))
    return pd.DataFrame(rows, columns=list(RESULT_COLUMNS))


def export_results_csv(results: pd.DataFrame, path: Path) -> None:
    write_csv(results, path)
