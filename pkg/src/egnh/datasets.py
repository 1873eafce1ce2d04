"""Reference lifetime datasets, embedded verbatim.

``aarset``: lifetimes of 50 components (bathtub-shaped hazard).
``kevlar``: stress-rupture lives of 49 kevlar 49/epoxy strands held at 70%
stress (the Andrews-Herzberg data).
"""

import numpy as np

from .errors import DataError
from .sample import Sample

_AARSET = (
    0.1, 7, 36, 67, 84, 0.2, 11, 40, 67, 84, 1, 12, 45, 67, 84, 1, 18, 46, 67, 85,
    1, 18, 47, 72, 85, 1, 18, 50, 75, 85, 1, 18, 55, 79, 85, 2, 18, 60, 82, 85,
    3, 21, 63, 82, 86, 6, 32, 63, 83, 86,
)

_KEVLAR = (
    1051, 1337, 1389, 1921, 1942, 2322, 3629, 4006, 4012, 4063, 4921, 5445, 5620,
    5817, 5905, 5956, 6068, 6121, 6473, 7501, 7886, 8108, 8546, 8666, 8831, 9106,
    9711, 9806, 10205, 10396, 10861, 11026, 11214, 11362, 11604, 11608, 11745,
    11762, 11895, 12044, 13520, 13670, 14110, 14496, 15395, 16179, 17092, 17568,
    17568,
)

# (n, min, max) from the published descriptive summary
_INTEGRITY = {
    "aarset": (50, 0.1, 86.0),
    "kevlar": (49, 1051.0, 17568.0),
}

_RAW = {"aarset": _AARSET, "kevlar": _KEVLAR}

NAMES = tuple(_RAW)


def _check(name, values):
    n, lo, hi = _INTEGRITY[name]
    assert len(values) == n and min(values) == lo and max(values) == hi, f"fixture {name} is corrupted"


for _name, _vals in _RAW.items():
    _check(_name, _vals)


def load(name: str) -> Sample:
    """Return a named fixture as a :class:`Sample`."""
    key = name.strip().lower()
    if key not in _RAW:
        raise DataError(f"unknown dataset {name!r}; choose one of {', '.join(NAMES)}")
    return Sample(np.array(_RAW[key], dtype=float), label=key)


def aarset() -> Sample:
    return load("aarset")


def kevlar() -> Sample:
    return load("kevlar")
