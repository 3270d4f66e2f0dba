try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, Field, model_validator

FEATURE_NAMES: tuple[str, ...] = ("degree", "strength", "clustering", "hdeg2", "hdeg3")
REGION_COLUMNS: tuple[str, ...] = (
    "deg_mu",
    "deg_sd",
    "str_mu",
    "str_sd",
    "cc_mu",
    "cc_sd",
    "h2_mu",
    "h2_sd",
    "h3_mu",
    "h3_sd",
)


class DegreeHistogram(BaseModel):
    counts: dict[int, int] = Field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


class NodeFeatureVector(BaseModel):
    degree: int = Field(ge=0)
    strength: float = Field(ge=0.0)
    clustering: float = Field(ge=0.0, le=1.0)
    hdeg2: int = Field(ge=0)
    hdeg3: int = Field(ge=0)

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.degree, self.strength, self.clustering, self.hdeg2, self.hdeg3], dtype=float
        )


class RegionFeature(BaseModel):
    """Mean and population std of the five node measurements over a region."""

    means: tuple[float, float, float, float, float]
    stds: tuple[float, float, float, float, float]

    @model_validator(mode="after")
    def _check_stds(self) -> Self:
        if any(s < 0.0 for s in self.stds):
            raise ValueError("standard deviations must be non-negative")
        return self

    def as_array(self) -> np.ndarray:
        """Interleaved (mu, sd) per measurement, matching ``REGION_COLUMNS``."""
        return np.array([v for pair in zip(self.means, self.stds, strict=True) for v in pair])

    @classmethod
    def from_array(cls, values: np.ndarray) -> "RegionFeature":
        arr = np.asarray(values, dtype=float)
        if arr.shape != (10,):
            raise ValueError(f"expected 10 values, got shape {arr.shape}")
        return cls(
            means=tuple(float(v) for v in arr[0::2]),  # type: ignore[arg-type]
            stds=tuple(float(v) for v in arr[1::2]),  # type: ignore[arg-type]
        )


class SimilarityFeatures(BaseModel):
    """Weights of the per-pair feature distance; gray level only by default."""

    gray: float = Field(default=1.0, ge=0.0)
    gradient: float = Field(default=0.0, ge=0.0)
    orientation: float = Field(default=0.0, ge=0.0)
    dispersion: float = Field(default=0.0, ge=0.0)
    dispersion_window: int | None = Field(default=None, ge=3)
    distance_decay: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def _check_dispersion(self) -> Self:
        if self.dispersion > 0.0:
            if self.dispersion_window is None:
                raise ValueError("dispersion weighting needs an explicit dispersion_window")
            if self.dispersion_window % 2 == 0:
                raise ValueError("dispersion_window must be odd")
        return self

    @property
    def needs_gradient(self) -> bool:
        return self.gradient > 0.0 or self.orientation > 0.0
