try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator


class OccupancyVector(BaseModel):
    """Stationary random-walk occupancy per walk node; sums to one."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray
    iterations: int = 0

    @model_validator(mode="after")
    def _check_values(self) -> Self:
        if self.values.ndim != 1 or np.any(self.values < 0.0):
            raise ValueError("occupancy must be a non-negative vector")
        if len(self.values) and abs(float(self.values.sum()) - 1.0) > 1e-9:
            raise ValueError("occupancy must sum to 1")
        return self

    def __len__(self) -> int:
        return len(self.values)


class SaliencyIndexVector(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray

    @model_validator(mode="after")
    def _check_positive(self) -> Self:
        if self.values.ndim != 1 or not np.all(np.isfinite(self.values) & (self.values > 0.0)):
            raise ValueError("saliency indices must be finite and strictly positive")
        return self

    @classmethod
    def uniform(cls, n: int) -> "SaliencyIndexVector":
        return cls(values=np.ones(n))
