try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator


class Partition(BaseModel):
    """Community label per node, dense from 0."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    labels: np.ndarray

    @model_validator(mode="after")
    def _check_dense(self) -> Self:
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if len(labels) and not np.array_equal(np.unique(labels), np.arange(labels.max() + 1)):
            raise ValueError("labels must be dense from 0")
        object.__setattr__(self, "labels", labels)
        return self

    @classmethod
    def from_labels(cls, labels: object) -> "Partition":
        """Re-densify arbitrary labels in order of first appearance."""
        raw = np.asarray(labels)
        mapping: dict[object, int] = {}
        dense = np.empty(len(raw), dtype=np.int64)
        for i, lab in enumerate(raw.tolist()):
            dense[i] = mapping.setdefault(lab, len(mapping))
        return cls(labels=dense)

    @property
    def community_count(self) -> int:
        return int(self.labels.max()) + 1 if len(self.labels) else 0

    def communities(self) -> list[list[int]]:
        groups: list[list[int]] = [[] for _ in range(self.community_count)]
        for node, lab in enumerate(self.labels.tolist()):
            groups[lab].append(node)
        return groups
