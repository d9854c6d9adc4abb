"""Points, simplices, orientation, and closed containment."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError
from . import predicates

PointLike = Sequence[float]


class Orientation(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


@dataclass(frozen=True)
class Point:
    """A location in R^d; coordinates are finite binary64 values."""

    coords: tuple[float, ...]

    def __init__(self, coords: Iterable[float]):
        object.__setattr__(self, "coords", tuple(float(c) for c in coords))
        for c in self.coords:
            if not math.isfinite(c):
                raise InputError(f"non-finite coordinate {c!r}")
        if not self.coords:
            raise InputError("point needs at least one coordinate")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def as_point(p: PointLike | Point) -> Point:
    return p if isinstance(p, Point) else Point(p)


@dataclass(frozen=True)
class Simplex:
    """d+1 vertices in R^d."""

    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable[PointLike]):
        verts = tuple(as_point(v) for v in vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise InputError("empty simplex")
        d = verts[0].dim
        if any(v.dim != d for v in verts):
            raise InputError("simplex vertices have mixed dimensions")
        if len(verts) != d + 1:
            raise InputError(
                f"simplex in R^{d} needs {d + 1} vertices, got {len(verts)}"
            )

    @property
    def dim(self) -> int:
        return self.vertices[0].dim


def _coord_rows(points: Sequence[Point]) -> list[tuple[float, ...]]:
    return [p.coords for p in points]


def orientation(points: Sequence[PointLike]) -> Orientation:
    """Exact orientation sign of d+1 points in R^d."""
    pts = [as_point(p) for p in points]
    d = pts[0].dim
    if any(p.dim != d for p in pts):
        raise InputError("orientation: points have mixed dimensions")
    if len(pts) != d + 1:
        raise InputError(
            f"orientation in R^{d} needs {d + 1} points, got {len(pts)}"
        )
    return Orientation(predicates.orientation_sign(_coord_rows(pts)))


def _solve_barycentric(
    vertices: Sequence[tuple[float, ...]], q: tuple[float, ...]
) -> tuple[bool, list[Fraction] | None]:
    """Exact barycentric solve for affinely independent vertices.

    Returns (independent, lambdas).  lambdas is None when q is outside the
    affine hull; otherwise it lists the m barycentric coordinates (summing
    to 1) of q with respect to the vertices.
    """
    d = len(q)
    m = len(vertices)
    base = [Fraction(x) for x in vertices[0]]
    cols = m - 1
    # Augmented system: columns are v_i - v_0, right-hand side q - v_0.
    a = [
        [Fraction(vertices[j + 1][i]) - base[i] for j in range(cols)]
        + [Fraction(q[i]) - base[i]]
        for i in range(d)
    ]
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, d) if a[r][col] != 0), None)
        if pivot is None:
            return False, None
        a[row], a[pivot] = a[pivot], a[row]
        pv = a[row][col]
        for r in range(d):
            if r != row and a[r][col] != 0:
                factor = a[r][col] / pv
                for c in range(col, cols + 1):
                    a[r][c] -= factor * a[row][c]
        pivots.append(row)
        row += 1
    # Full column rank: consistency requires zero residual rows.
    for r in range(row, d):
        if a[r][cols] != 0:
            return True, None
    lams = [a[pivots[c]][cols] / a[pivots[c]][c] for c in range(cols)]
    return True, [Fraction(1) - sum(lams, Fraction(0))] + lams


def _hull_contains_exact(
    vertices: Sequence[tuple[float, ...]], q: tuple[float, ...]
) -> bool:
    """Closed convex hull membership, exact, any vertex count <= d+1."""
    if len(vertices) == 1:
        return all(Fraction(a) == Fraction(b) for a, b in zip(vertices[0], q))
    independent, lams = _solve_barycentric(vertices, q)
    if independent:
        if lams is None:
            return False
        return all(lam >= 0 for lam in lams)
    # Affinely dependent vertex set: its hull is the union of the hulls of
    # the facets obtained by dropping one vertex.
    return any(
        _hull_contains_exact(vertices[:i] + vertices[i + 1 :], q)
        for i in range(len(vertices))
    )


def contains(s: Simplex | Sequence[PointLike], q: PointLike) -> bool:
    """True iff q lies in the closed convex hull of the simplex vertices."""
    simplex = s if isinstance(s, Simplex) else Simplex(s)
    query = as_point(q)
    if query.dim != simplex.dim:
        raise InputError(
            f"query dimension {query.dim} != simplex dimension {simplex.dim}"
        )
    rows = _coord_rows(simplex.vertices)
    base_sign = predicates.orientation_sign(rows)
    if base_sign == 0:
        return _hull_contains_exact(
            [tuple(r) for r in rows], query.coords
        )
    for i in range(len(rows)):
        substituted = list(rows)
        substituted[i] = query.coords
        if predicates.orientation_sign(substituted) == -base_sign:
            return False
    return True
