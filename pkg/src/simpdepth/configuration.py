"""Colored point configurations: d+1 color classes of points in R^d."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError


class ColoredConfiguration:
    """d+1 nonempty point classes, class i standing in for measure i.

    Immutable; classes are stored as read-only (n_i, d) float64 arrays.
    """

    __slots__ = ("classes",)

    def __init__(self, classes: Iterable[Sequence[Sequence[float]]]):
        arrays = []
        for cls in classes:
            arr = np.array(cls, dtype=np.float64, copy=True)
            if arr.ndim != 2 or arr.shape[0] < 1:
                raise InputError("each class must be a nonempty list of points")
            if not np.all(np.isfinite(arr)):
                raise InputError("non-finite coordinate in configuration")
            arr.flags.writeable = False
            arrays.append(arr)
        if not arrays:
            raise InputError("configuration needs at least one class")
        d = arrays[0].shape[1]
        if any(a.shape[1] != d for a in arrays):
            raise InputError("classes have mixed point dimensions")
        if len(arrays) != d + 1:
            raise InputError(
                f"configuration in R^{d} needs {d + 1} classes, got {len(arrays)}"
            )
        object.__setattr__(self, "classes", tuple(arrays))

    def __setattr__(self, name, value):
        raise AttributeError("ColoredConfiguration is immutable")

    @property
    def dim(self) -> int:
        return self.classes[0].shape[1]

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(a.shape[0] for a in self.classes)

    @property
    def total_tuples(self) -> int:
        return math.prod(self.class_sizes)

    def as_lists(self) -> list[list[list[float]]]:
        return [a.tolist() for a in self.classes]

    def all_points(self) -> np.ndarray:
        return np.concatenate(self.classes, axis=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredConfiguration):
            return NotImplemented
        return len(self.classes) == len(other.classes) and all(
            a.shape == b.shape and bool(np.all(a == b))
            for a, b in zip(self.classes, other.classes)
        )

    def __hash__(self):
        return hash(
            tuple((a.shape, a.tobytes()) for a in self.classes)
        )

    def __repr__(self):
        sizes = "x".join(str(n) for n in self.class_sizes)
        return f"ColoredConfiguration(dim={self.dim}, sizes={sizes})"
