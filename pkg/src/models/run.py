from pathlib import Path
from typing import Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, Field, model_validator

from models.pipeline import SweepConfig

Subcommand = Literal[
    "build",
    "measure",
    "saliency",
    "segment",
    "texture",
    "gen-topo",
    "simulate",
    "sweep",
    "evaluate",
]


class RunConfig(BaseModel):
    """Resolved options of one CLI invocation."""

    subcommand: Subcommand
    inputs: dict[str, Path] = Field(default_factory=dict)
    outputs: dict[str, Path] = Field(default_factory=dict)

    builder: Literal["similarity", "lines"] = "similarity"
    threshold: float = Field(default=0.5, gt=0.0, le=1.0)
    radius: float = Field(default=3.0, ge=1.0)
    contrast: float = Field(default=0.25, gt=0.0, le=1.0)
    mode: Literal["tangent", "normal"] = "tangent"
    tol: float = Field(default=1e-10, gt=0.0)
    max_iter: int = Field(default=100_000, ge=1)
    method: Literal["greedy_modularity", "label_propagation"] = "greedy_modularity"
    seed: int = 42
    min_size: int = Field(default=0, ge=0)
    tile: int | None = Field(default=None, ge=1)
    master: int | None = Field(default=None, ge=0)
    retry: bool = False
    sweep: SweepConfig | None = None

    @model_validator(mode="after")
    def _check_paths(self) -> Self:
        for role, path in {**self.inputs, **self.outputs}.items():
            if not str(path).strip():
                raise ValueError(f"path for {role} must be non-empty")
        return self
