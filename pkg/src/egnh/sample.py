from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DataError


@dataclass(frozen=True, eq=False)
class Sample:
    """Positive lifetime observations with a provenance label.

    ``values`` keeps the original order; ``sorted_view`` is computed on first
    access and cached.
    """

    values: np.ndarray
    label: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        arr = np.array(self.values, dtype=float).ravel()
        if arr.size == 0:
            raise DataError("no observations")
        bad = ~np.isfinite(arr) | (arr <= 0)
        if np.any(bad):
            idx = int(np.flatnonzero(bad)[0])
            raise DataError(f"observation {idx} is not a positive finite number: {arr[idx]!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @cached_property
    def sorted_view(self) -> np.ndarray:
        out = np.sort(self.values)
        out.setflags(write=False)
        return out

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Sample):
            return NotImplemented
        return self.label == other.label and np.array_equal(self.values, other.values)

    def scaled(self, factor: float) -> "Sample":
        """Return a copy with every value multiplied by ``factor``."""
        return Sample(self.values * factor, label=f"{self.label}*{factor:g}")
