"""Root distributions, parity distributions, and the map between them.

A root distribution assigns to each vertex one of the three lattice axes (the
axis whose roots at that vertex fail to have rank 2).  Each face then acquires
a parity: the number of its corners whose assigned axis differs from the axis
of the opposite edge, mod 2.  A distribution is even when every face computes
to parity 0.

Both kinds of distribution are partial maps with explicit domain errors, so
solver code can never silently read an unassigned vertex or face.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .lattice import (
    AxialPoint,
    Direction,
    Face,
    LatticeIso,
    Region,
    face_corners,
    opposite_edge_direction,
)

RANK_TWO = Fraction(2)
RANK_THREE_HALVES = Fraction(3, 2)


class MissingAssignment(KeyError):
    """A distribution was evaluated outside its domain."""


class RootDistribution:
    """Partial map vertex -> Direction (immutable after construction)."""

    __slots__ = ("_map",)

    def __init__(self, assignment: Mapping[AxialPoint, Direction]):
        self._map = dict(assignment)

    def __getitem__(self, x: AxialPoint) -> Direction:
        try:
            return self._map[x]
        except KeyError:
            raise MissingAssignment(f"no direction assigned at vertex {x}") from None

    def __contains__(self, x: AxialPoint) -> bool:
        return x in self._map

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootDistribution) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def __repr__(self) -> str:
        return f"RootDistribution({len(self._map)} vertices)"

    def domain(self) -> frozenset[AxialPoint]:
        return frozenset(self._map)

    def items(self) -> Iterator[tuple[AxialPoint, Direction]]:
        return iter(sorted(self._map.items()))

    def transform(self, iso: LatticeIso) -> "RootDistribution":
        """Push the distribution forward along a lattice isometry."""
        return RootDistribution(
            {iso.apply_point(x): iso.apply_direction(d) for x, d in self._map.items()}
        )

    def restrict(self, vertices: Iterable[AxialPoint]) -> "RootDistribution":
        return RootDistribution({x: self._map[x] for x in vertices})


class ParityDistribution:
    """Partial map face -> {0, 1} (immutable after construction)."""

    __slots__ = ("_map",)

    def __init__(self, assignment: Mapping[Face, int]):
        for f, p in assignment.items():
            if p not in (0, 1):
                raise ValueError(f"parity of {f} must be 0 or 1, got {p!r}")
        self._map = dict(assignment)

    def __getitem__(self, f: Face) -> int:
        try:
            return self._map[f]
        except KeyError:
            raise MissingAssignment(f"no parity assigned on face {f}") from None

    def __contains__(self, f: Face) -> bool:
        return f in self._map

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParityDistribution) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def __repr__(self) -> str:
        odd = sum(self._map.values())
        return f"ParityDistribution({len(self._map)} faces, {odd} odd)"

    def domain(self) -> frozenset[Face]:
        return frozenset(self._map)

    def items(self) -> Iterator[tuple[Face, int]]:
        from .lattice import _face_sort_key

        return iter(sorted(self._map.items(), key=lambda kv: _face_sort_key(kv[0])))

    def region(self) -> Region:
        return Region(frozenset(self._map))

    def transform(self, iso: LatticeIso) -> "ParityDistribution":
        return ParityDistribution({iso.apply_face(f): p for f, p in self._map.items()})

    @staticmethod
    def constant(region: Region, value: int) -> "ParityDistribution":
        return ParityDistribution({f: value for f in region.faces})


def face_parity(delta: RootDistribution, f: Face) -> int:
    """Parity of ``f`` under ``delta``: the number of corners whose assigned
    axis differs from the axis of the opposite edge, mod 2.

    Equivalently, the parity of the number of rank-2 corner roots determined
    by the side-2 triangle around ``f``.
    """
    mismatches = 0
    for x in face_corners(f):
        if delta[x] != opposite_edge_direction(f, x):
            mismatches += 1
    return mismatches & 1


def induced_parity(delta: RootDistribution, region: Region) -> ParityDistribution:
    """The parity distribution of ``delta`` on every face of ``region``."""
    return ParityDistribution({f: face_parity(delta, f) for f in region.faces})


def is_even(delta: RootDistribution, region: Region) -> bool:
    return all(face_parity(delta, f) == 0 for f in region.faces)


def direction_rank(delta: RootDistribution, x: AxialPoint, d: Direction) -> Fraction:
    """Rank of the roots along axis ``d`` at ``x``: 3/2 on the selected axis,
    2 on the other two."""
    return RANK_THREE_HALVES if delta[x] == d else RANK_TWO
