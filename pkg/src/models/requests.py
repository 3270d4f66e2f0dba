from typing import Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, Field, model_validator

from models.image import GrayImage
from models.simulation import SimResult, TopologyStats


class ImagePayload(BaseModel):
    width: int = Field(gt=0)
    height: int = Field(gt=0)
    samples: list[float]

    @model_validator(mode="after")
    def _check_length(self) -> Self:
        if len(self.samples) != self.width * self.height:
            raise ValueError("samples length must equal width * height")
        return self

    def to_image(self) -> GrayImage:
        samples = np.asarray(self.samples, dtype=float).reshape(self.height, self.width)
        return GrayImage(width=self.width, height=self.height, samples=samples)


class SaliencyRequest(BaseModel):
    image: ImagePayload
    contrast: float | None = Field(default=None, gt=0.0, le=1.0)
    mode: Literal["tangent", "normal"] | None = None
    tol: float | None = Field(default=None, gt=0.0)
    max_iter: int | None = Field(default=None, ge=1)


class SaliencyResponse(BaseModel):
    edge_pixels: list[tuple[int, int]]
    q: list[float]
    saliency_map: list[int]
    iterations: int


class SegmentRequest(BaseModel):
    image: ImagePayload
    threshold: float | None = Field(default=None, gt=0.0, le=1.0)
    radius: float | None = Field(default=None, ge=1.0)
    method: Literal["greedy_modularity", "label_propagation"] | None = None
    seed: int | None = None
    min_size: int = Field(default=0, ge=0)


class SegmentResponse(BaseModel):
    labels: list[int]
    communities: int
    modularity: float | None


class SimulateResponse(BaseModel):
    result: SimResult
    stats: TopologyStats


class EvaluateRequest(BaseModel):
    predicted_path: str
    truth_path: str
