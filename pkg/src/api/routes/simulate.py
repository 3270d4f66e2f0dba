from http import HTTPStatus

from fastapi import APIRouter, HTTPException

from core.exceptions import SimulationError, TopologyError
from models.requests import SimulateResponse
from models.simulation import SimulationConfig
from simulation.stream import simulate_stream
from simulation.topology import describe_topology, generate_connected_topology

router = APIRouter(prefix="/api/v1", tags=["simulation"])


@router.post("/simulate", response_model=SimulateResponse)
def simulate(body: SimulationConfig) -> SimulateResponse:
    try:
        graph, _ = generate_connected_topology(body.topology, body.retry)
        result = simulate_stream(graph, body.workload, master=body.master)
    except (TopologyError, SimulationError) as exc:
        raise HTTPException(
            status_code=HTTPStatus.UNPROCESSABLE_ENTITY, detail=exc.message
        ) from exc
    return SimulateResponse(result=result, stats=describe_topology(graph))
