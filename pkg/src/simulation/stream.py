"""Discrete-event simulation of a frame stream dispatched over a processor topology."""

import logging
from collections.abc import Generator
from typing import Any

import simpy

from core.exceptions import SimulationError
from graphs.spatial_graph import SpatialGraph
from models.simulation import ArrivalMode, SimResult, Workload

logger = logging.getLogger(__name__)


def select_master(topology: SpatialGraph) -> int:
    """Highest-degree node; lowest id among equals."""
    return min(range(topology.node_count), key=lambda u: (-topology.degree(u), u))


def speedup(result: SimResult, w: Workload) -> float:
    if result.makespan <= 0.0:
        raise SimulationError("speed-up undefined for a zero makespan")
    return w.serial_time() / result.makespan


def simulate_stream(
    topology: SpatialGraph, w: Workload, master: int | None = None
) -> SimResult:
    """Dispatch each frame to the processor with the earliest predicted completion.

    Predicted completion is max(now, free) + transfer + t_proc, where transfer
    covers the hops from the master plus frame_bits / bandwidth (zero on the
    master itself). Every processor is a FIFO ``simpy.Resource`` of capacity
    one, held for the transfer and the processing of a frame.
    """
    n = topology.node_count
    if n == 0:
        raise SimulationError("topology has no processors")
    if not topology.is_connected():
        raise SimulationError(
            "topology is disconnected", details={"components": topology.connected_components()[0]}
        )
    if master is None:
        master = select_master(topology)
    elif not 0 <= master < n:
        raise SimulationError("master is not a node of the topology", {"master": master})

    hops = topology.shortest_path_lengths(master)
    transfer = [0.0 if u == master else w.transfer_time(int(hops[u] or 0)) for u in range(n)]

    env = simpy.Environment()
    processors = [simpy.Resource(env, capacity=1) for _ in range(n)]
    predicted_free = [0.0] * n
    frames_per_node = [0] * n
    busy_time = [0.0] * n
    finish_times: list[float] = []

    def handle(proc: int) -> Generator[Any, Any, None]:
        with processors[proc].request() as slot:
            yield slot
            yield env.timeout(transfer[proc] + w.t_proc)
            busy_time[proc] += transfer[proc] + w.t_proc
            finish_times.append(env.now)

    def dispatch() -> Generator[Any, Any, None]:
        for frame in range(w.frames):
            if w.arrival is ArrivalMode.INTERVAL and frame:
                yield env.timeout(frame * float(w.interval) - env.now)  # type: ignore[arg-type]
            now = env.now
            completion, proc = min(
                (max(now, predicted_free[u]) + transfer[u] + w.t_proc, u) for u in range(n)
            )
            predicted_free[proc] = completion
            frames_per_node[proc] += 1
            env.process(handle(proc))

    env.process(dispatch())
    env.run()

    makespan = max(finish_times)
    result = SimResult(
        makespan=makespan,
        master=master,
        busy_time=busy_time,
        frames_per_node=frames_per_node,
        speedup=w.serial_time() / makespan,
    )
    logger.debug(
        "Simulated %d frames on %d processors: makespan %.6g, speed-up %.4g",
        w.frames,
        n,
        makespan,
        result.speedup,
    )
    return result
