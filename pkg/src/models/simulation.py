import math
from collections.abc import Mapping
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, field_validator, model_validator


class TopologyModel(StrEnum):
    RANDOM = "random"
    SMALL_WORLD = "small_world"
    SCALE_FREE = "scale_free"
    LATTICE = "lattice"


class ArrivalMode(StrEnum):
    BATCH = "batch"
    INTERVAL = "interval"


class TopologySpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    model: TopologyModel
    n: int = Field(ge=1, validation_alias=AliasChoices("n", "N"))
    p: float | None = None
    k: int | None = None
    p_rew: float | None = None
    m: int | None = None
    rows: int | None = None
    cols: int | None = None
    seed: int = 42

    @model_validator(mode="after")
    def _check_parameters(self) -> Self:
        problems = topology_problems(self)
        if problems:
            raise ValueError("; ".join(problems))
        return self


def topology_problems(spec: TopologySpec) -> list[str]:
    """Parameter-range violations for the chosen model; empty when valid."""
    problems: list[str] = []
    n = spec.n
    match spec.model:
        case TopologyModel.RANDOM:
            if spec.p is None or not 0.0 <= spec.p <= 1.0:
                problems.append("random model needs p in [0, 1]")
        case TopologyModel.SMALL_WORLD:
            if spec.k is None or spec.k % 2 or not 2 <= spec.k < n:
                problems.append("small_world model needs an even k with 2 <= k < N")
            if spec.p_rew is None or not 0.0 <= spec.p_rew <= 1.0:
                problems.append("small_world model needs p_rew in [0, 1]")
        case TopologyModel.SCALE_FREE:
            if spec.m is None or not 1 <= spec.m < n:
                problems.append("scale_free model needs 1 <= m < N")
        case TopologyModel.LATTICE:
            if spec.rows is None or spec.cols is None or spec.rows * spec.cols != n:
                problems.append("lattice model needs rows * cols = N")
    return problems


class Workload(BaseModel):
    frames: int = Field(ge=1)
    t_proc: float = Field(gt=0.0)
    t_hop: float = Field(default=0.0, ge=0.0)
    frame_bits: float = Field(default=0.0, ge=0.0)
    bandwidth: float = Field(default=math.inf, gt=0.0)
    arrival: ArrivalMode = ArrivalMode.BATCH
    interval: float | None = Field(default=None, gt=0.0)

    @field_validator("bandwidth", mode="before")
    @classmethod
    def _parse_infinity(cls, value: object) -> object:
        if isinstance(value, str) and value.strip().lower() in {"inf", "infinity", "∞"}:
            return math.inf
        return value

    @model_validator(mode="after")
    def _check_interval(self) -> Self:
        if self.arrival is ArrivalMode.INTERVAL and self.interval is None:
            raise ValueError("interval arrival needs a positive interval")
        return self

    def transfer_time(self, hops: int) -> float:
        return hops * self.t_hop + self.frame_bits / self.bandwidth

    def serial_time(self) -> float:
        return self.frames * self.t_proc


class SimResult(BaseModel):
    makespan: float = Field(ge=0.0)
    master: int
    busy_time: list[float]
    frames_per_node: list[int]
    speedup: float = Field(gt=0.0)


class TopologyStats(BaseModel):
    node_count: int
    edge_count: int
    mean_degree: float
    mean_clustering: float
    avg_path_len: float
    components: int


_TOPOLOGY_KEYS = ("model", "N", "n", "p", "k", "p_rew", "m", "rows", "cols", "seed")
_WORKLOAD_KEYS = (
    "frames",
    "t_proc",
    "t_hop",
    "frame_bits",
    "bandwidth",
    "arrival",
    "interval",
)


class SimulationConfig(BaseModel):
    topology: TopologySpec
    workload: Workload
    master: int | None = Field(default=None, ge=0)
    retry: bool = False

    @classmethod
    def from_flat(cls, values: Mapping[str, str | None]) -> "SimulationConfig":
        """Build from flat ``key = value`` pairs; blank values count as unset."""
        present = {k: v for k, v in values.items() if v not in (None, "")}
        unknown = set(present) - set(_TOPOLOGY_KEYS) - set(_WORKLOAD_KEYS) - {"master", "retry"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls.model_validate(
            {
                "topology": {k: present[k] for k in _TOPOLOGY_KEYS if k in present},
                "workload": {k: present[k] for k in _WORKLOAD_KEYS if k in present},
                **{k: present[k] for k in ("master", "retry") if k in present},
            }
        )
