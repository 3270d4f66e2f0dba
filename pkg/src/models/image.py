from typing import Final

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# Label of pixels that carry no graph node.
BACKGROUND: Final = -1


def _frozen_array(values: np.ndarray, dtype: type) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


class GrayImage(BaseModel):
    """Row-major intensity grid; ``samples[y, x]`` in [0, 255]."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    width: int = Field(gt=0)
    height: int = Field(gt=0)
    samples: np.ndarray

    @model_validator(mode="after")
    def _check_samples(self) -> Self:
        if self.samples.shape != (self.height, self.width):
            raise ValueError(
                f"samples shape {self.samples.shape} != ({self.height}, {self.width})"
            )
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")
        if self.samples.min() < 0.0 or self.samples.max() > 255.0:
            raise ValueError("samples must lie in [0, 255]")
        object.__setattr__(self, "samples", _frozen_array(self.samples, float))
        return self

    @classmethod
    def from_array(cls, samples: object) -> "GrayImage":
        arr = np.asarray(samples, dtype=float)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2D array, got {arr.ndim} dimensions")
        return cls(width=arr.shape[1], height=arr.shape[0], samples=arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.height, self.width


class GradientField(BaseModel):
    """Per-pixel Sobel response; orientation is the normal direction folded into [0, pi)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    magnitude: np.ndarray
    orientation: np.ndarray
    gx: np.ndarray
    gy: np.ndarray

    @model_validator(mode="after")
    def _check_shapes(self) -> Self:
        shape = self.magnitude.shape
        if any(a.shape != shape for a in (self.orientation, self.gx, self.gy)):
            raise ValueError("gradient components must share one shape")
        if np.any(self.magnitude < 0.0):
            raise ValueError("magnitude must be non-negative")
        if np.any((self.orientation < 0.0) | (self.orientation >= np.pi)):
            raise ValueError("orientation must lie in [0, pi)")
        return self

    @property
    def shape(self) -> tuple[int, int]:
        h, w = self.magnitude.shape
        return int(h), int(w)


class EdgePixelSet(BaseModel):
    """High-contrast pixels in scan-line order; ``coords[i] = (x, y)``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    coords: np.ndarray
    orientation: np.ndarray
    magnitude: np.ndarray
    threshold: float = 0.0

    @model_validator(mode="after")
    def _check_pixels(self) -> Self:
        coords = np.asarray(self.coords, dtype=np.int64).reshape(-1, 2)
        n = len(coords)
        if len(self.orientation) != n or len(self.magnitude) != n:
            raise ValueError("coords, orientation and magnitude lengths differ")
        if n and len(np.unique(coords, axis=0)) != n:
            raise ValueError("edge pixel coordinates must be unique")
        if n and np.any(np.asarray(self.magnitude) < self.threshold):
            raise ValueError("edge pixel below the contrast threshold")
        object.__setattr__(self, "coords", _frozen_array(coords, np.int64))
        object.__setattr__(self, "orientation", _frozen_array(self.orientation, float))
        object.__setattr__(self, "magnitude", _frozen_array(self.magnitude, float))
        return self

    def __len__(self) -> int:
        return len(self.coords)


class LabelImage(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    width: int = Field(gt=0)
    height: int = Field(gt=0)
    labels: np.ndarray

    @model_validator(mode="after")
    def _check_labels(self) -> Self:
        if self.labels.shape != (self.height, self.width):
            raise ValueError("label grid does not match image dimensions")
        object.__setattr__(self, "labels", _frozen_array(self.labels, np.int64))
        return self

    @property
    def region_count(self) -> int:
        return len(np.unique(self.labels[self.labels != BACKGROUND]))
