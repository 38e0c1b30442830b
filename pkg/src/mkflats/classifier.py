"""Classification of even root distributions on finite windows.

Two pattern families exhaust the even distributions of the whole plane: a
single exceptional pattern with the symmetries of one central face (built
from six 60-degree wedges of constant direction), and the unions of height-1
strips (one avoided axis, direction constant along every line parallel to
it).  The hinge between them is a pair of trapezoid "gliders": rank patterns
on seven vertices whose presence forces the rest of the plane by parity
propagation alone.

On a finite window the verdict is necessarily three-valued; windows too small
to contain a glider or to certify row structure come back Undetermined with a
machine-readable reason.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Mapping

from .distributions import ParityDistribution, RootDistribution, induced_parity
from .lattice import (
    DIRECTION_STEPS,
    AxialPoint,
    Direction,
    Face,
    LatticeIso,
    Region,
    _face_sort_key,
    face_corners,
    hexagon,
    iso_from_frames,
)
from .realizer import CONTRADICTION, Contradiction, _Problem, _propagate, _Stats

MIN_CLASSIFY_RADIUS = 4

_ALL_DIRECTIONS = (Direction.D0, Direction.D1, Direction.D2)


@dataclass(frozen=True)
class EvenWindow:
    """A region together with a root distribution certified all-even on it."""

    region: Region
    delta: RootDistribution

    def __post_init__(self) -> None:
        missing = self.region.vertex_set() - self.delta.domain()
        if missing:
            raise ValueError(f"delta undefined on {len(missing)} window vertices")
        parity = induced_parity(self.delta, self.region)
        odd = [f for f, p in parity.items() if p == 1]
        if odd:
            raise ValueError(f"window is not even: odd face {odd[0]}")


class UndeterminedReason(Enum):
    NO_GLIDER_NO_ROW_STRUCTURE = "NoGliderNoRowStructure"
    WINDOW_TOO_SMALL = "WindowTooSmall"
    BOUNDARY_AMBIGUOUS = "BoundaryAmbiguous"


@dataclass(frozen=True)
class TFlat:
    center: AxialPoint
    symmetry_checked: bool


@dataclass(frozen=True)
class StripUnion:
    axis: Direction
    row_assignment: tuple[tuple[int, Direction], ...]


@dataclass(frozen=True)
class Undetermined:
    reason: UndeterminedReason


Classification = TFlat | StripUnion | Undetermined


# ---------------------------------------------------------------------------
# Rows with respect to an axis.
# ---------------------------------------------------------------------------


def row_index(v: AxialPoint, axis: Direction) -> int:
    """Index of the line through ``v`` parallel to ``axis``."""
    if axis is Direction.D0:
        return v.b
    if axis is Direction.D1:
        return v.a
    return v.a + v.b


# ---------------------------------------------------------------------------
# Gliders.
# ---------------------------------------------------------------------------

# For a base along each axis, the two offsets from an interior base vertex to
# the interior top vertex (one per side).  The top side of the trapezoid is
# centered over the base, so the offset must make a 60-degree angle with the
# base step (Euclidean inner product 1/2).
_SIDE_OFFSETS = {
    Direction.D0: ((0, 1), (1, -1)),
    Direction.D1: ((-1, 1), (1, 0)),
    Direction.D2: ((1, 0), (0, -1)),
}


@dataclass(frozen=True, order=True)
class GliderHit:
    """A trapezoid rank pattern: interior base pair along ``axis`` plus the
    interior vertex of the parallel top side."""

    kind: str  # "t" (both base roots rank 2) or "t_prime" (exactly one)
    axis: Direction
    base: tuple[AxialPoint, AxialPoint]
    top: AxialPoint

    def support(self) -> tuple[AxialPoint, ...]:
        u = AxialPoint(*DIRECTION_STEPS[self.axis])
        v = self.base[0]
        w = self.top - v
        row = (v - u, v, v + u, v + u + u)
        return row + tuple(p + w for p in row[:3])

    def outline(self) -> tuple[AxialPoint, AxialPoint, AxialPoint, AxialPoint]:
        s = self.support()
        return (s[0], s[3], s[6], s[4])


def find_gliders(window: EvenWindow) -> list[GliderHit]:
    """All trapezoid placements in the window matching the t or t' rank
    pattern, in sorted order.  The whole 7-vertex support must lie in the
    window."""
    verts = window.region.vertex_set()
    delta = window.delta
    hits = []
    for v in verts:
        for axis in _ALL_DIRECTIONS:
            u = AxialPoint(*DIRECTION_STEPS[axis])
            v2 = v + u
            if v2 not in verts:
                continue
            for off in _SIDE_OFFSETS[axis]:
                top = v.step(*off)
                hit = GliderHit("?", axis, (v, v2), top)
                if not all(p in verts for p in hit.support()):
                    continue
                if delta[top] != axis:
                    continue
                rank2 = (delta[v] != axis) + (delta[v2] != axis)
                if rank2 == 2:
                    hits.append(GliderHit("t", axis, (v, v2), top))
                elif rank2 == 1:
                    hits.append(GliderHit("t_prime", axis, (v, v2), top))
    return sorted(hits)


# ---------------------------------------------------------------------------
# Parity propagation under the all-even target.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvenPropagation:
    """Fixpoint of all-even parity propagation from a partial assignment."""

    forced: RootDistribution
    free: tuple[tuple[AxialPoint, frozenset[Direction]], ...]

    def fully_forced(self) -> bool:
        return not self.free


def propagate_even(
    delta_partial: Mapping[AxialPoint, Direction] | RootDistribution,
    region: Region,
) -> EvenPropagation | Contradiction:
    """Propagate the all-even constraint from the seeded vertices; no search."""
    seeds = (
        dict(delta_partial.items())
        if isinstance(delta_partial, RootDistribution)
        else dict(delta_partial)
    )
    target = ParityDistribution.constant(region, 0)
    problem = _Problem(target, region)
    domains = [0b111] * len(problem.vertices)
    for v, d in seeds.items():
        if v not in problem.vindex:
            raise ValueError(f"seed vertex {v} is outside the region")
        domains[problem.vindex[v]] = 1 << int(d)
    if not _propagate(problem, domains, _Stats()):
        return CONTRADICTION
    forced = {}
    free = []
    for v, mask in zip(problem.vertices, domains):
        if mask & (mask - 1):
            free.append(
                (v, frozenset(d for d in _ALL_DIRECTIONS if mask & (1 << int(d))))
            )
        else:
            forced[v] = Direction(mask.bit_length() - 1)
    return EvenPropagation(RootDistribution(forced), tuple(free))


# The concrete trapezoid seed whose even propagation grows the exceptional
# flat: interior base pair rank 2, top vertex rank 3/2 along the base axis.
CANONICAL_T_SEED: dict[AxialPoint, Direction] = {
    AxialPoint(1, 0): Direction.D2,
    AxialPoint(2, 0): Direction.D1,
    AxialPoint(1, 1): Direction.D0,
}

# Same base, but the left base root has rank 3/2: forces a vertical half-strip
# instead of a sector.
CANONICAL_T_PRIME_SEED: dict[AxialPoint, Direction] = {
    AxialPoint(1, 0): Direction.D0,
    AxialPoint(2, 0): Direction.D2,
    AxialPoint(1, 1): Direction.D0,
}


def sector_region(height: int) -> Region:
    """The expanding trapezoid of faces above the canonical seed base: row k
    spans lattice columns -k..3."""
    if height < 1:
        raise ValueError("sector height must be >= 1")
    faces = []
    for k in range(height):
        for a in range(-k, 3):
            faces.append(Face.up(a, k))
        for a in range(-k - 1, 3):
            faces.append(Face.down(a, k))
    return Region(frozenset(faces))


# ---------------------------------------------------------------------------
# The exceptional flat in closed form: six 60-degree wedges around one face.
# ---------------------------------------------------------------------------

# (apex, first boundary ray, second boundary ray, direction filling the wedge)
_WEDGES = (
    (AxialPoint(1, 1), (0, 1), (-1, 1), Direction.D0),  # opens north
    (AxialPoint(0, 1), (-1, 1), (-1, 0), Direction.D1),  # west-northwest
    (AxialPoint(1, 0), (-1, 0), (0, -1), Direction.D2),  # south-southwest
    (AxialPoint(2, -1), (0, -1), (1, -1), Direction.D0),  # south
    (AxialPoint(2, 0), (1, -1), (1, 0), Direction.D1),  # south-southeast
    (AxialPoint(2, 1), (1, 0), (0, 1), Direction.D2),  # east-northeast
)

# The face whose three corners are the inner wedge apexes; the full symmetric
# group of this triangle preserves the pattern.
CANONICAL_T_FLAT_CENTER_FACE = Face.up(1, 0)


def t_flat_direction(v: AxialPoint, center: AxialPoint = AxialPoint(1, 0)) -> Direction:
    """Direction at ``v`` of the exceptional flat whose center face is
    Up(center).  Total on the plane."""
    p = v - (center - AxialPoint(1, 0))
    hits = []
    for apex, u, w, value in _WEDGES:
        da, db = p.a - apex.a, p.b - apex.b
        det = u[0] * w[1] - u[1] * w[0]
        s = (da * w[1] - db * w[0]) // det
        t = (u[0] * db - u[1] * da) // det
        if s * det == da * w[1] - db * w[0] and t * det == u[0] * db - u[1] * da:
            if s >= 0 and t >= 0:
                hits.append(value)
    if len(hits) != 1:
        raise RuntimeError(f"vertex {p} lies in {len(hits)} wedges, expected 1")
    return hits[0]


def t_flat_window_region(center: AxialPoint, radius: int) -> Region:
    """Union of the radius-``radius`` hexagons about the three corners of the
    center face Up(center); invariant under the face's symmetries."""
    region = Region(frozenset())
    for c in face_corners(Face.up(center.a, center.b)):
        region = region.union(hexagon(c, radius))
    return region


def build_t_flat(center: AxialPoint, radius: int) -> EvenWindow:
    """The even window of the exceptional flat, centered so its symmetric
    center triangle is Up(center)."""
    if radius < 2:
        raise ValueError("t-flat window radius must be >= 2 to contain the seed")
    region = t_flat_window_region(center, radius)
    delta = RootDistribution(
        {v: t_flat_direction(v, center) for v in region.vertex_set()}
    )
    return EvenWindow(region, delta)


# ---------------------------------------------------------------------------
# Strip unions.
# ---------------------------------------------------------------------------


def build_strip_union(
    axis: Direction, row_assignment: Mapping[int, Direction], window: Region
) -> EvenWindow:
    """The even window with delta constant on each line parallel to ``axis``,
    per the row assignment (values must avoid the axis)."""
    assignment = {}
    for v in window.vertex_set():
        row = row_index(v, axis)
        if row not in row_assignment:
            raise ValueError(f"row {row} (vertex {v}) has no assigned direction")
        d = row_assignment[row]
        if d == axis:
            raise ValueError(f"row {row} is assigned the strip axis {axis}")
        assignment[v] = d
    return EvenWindow(window, RootDistribution(assignment))


@dataclass(frozen=True)
class Strip:
    """Height-1 strip between vertex lines ``index`` and ``index + 1``."""

    index: int
    faces: tuple[Face, ...]


def strip_decomposition(window: EvenWindow, axis: Direction) -> list[Strip]:
    """Decompose the window into height-1 strips bounded by rank-2 lines
    parallel to ``axis``.  Fails when some vertex selects the axis itself."""
    for v in sorted(window.region.vertex_set()):
        if window.delta[v] == axis:
            raise ValueError(
                f"axis {axis} is not everywhere rank 2: selected at vertex {v}"
            )
    by_index: dict[int, list[Face]] = {}
    for f in window.region:
        k = min(row_index(c, axis) for c in face_corners(f))
        by_index.setdefault(k, []).append(f)
    return [
        Strip(k, tuple(sorted(by_index[k], key=_face_sort_key)))
        for k in sorted(by_index)
    ]


def _row_structure(window: EvenWindow) -> StripUnion | None:
    for axis in _ALL_DIRECTIONS:
        rows: dict[int, Direction] = {}
        ok = True
        for v in sorted(window.region.vertex_set()):
            d = window.delta[v]
            if d == axis:
                ok = False
                break
            k = row_index(v, axis)
            if rows.setdefault(k, d) != d:
                ok = False
                break
        if ok:
            return StripUnion(axis, tuple(sorted(rows.items())))
    return None


# ---------------------------------------------------------------------------
# Window classification.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def window_radius(region: Region) -> int:
    """Largest r such that some full radius-r hexagon of faces fits in the
    region (0 when not even a radius-1 hexagon fits)."""
    best = 0
    for v in region.vertex_set():
        r = best + 1
        while r * r * 6 <= len(region.faces) and hexagon(v, r).faces <= region.faces:
            best = r
            r += 1
    return best


_CANONICAL_T_FRAME = (AxialPoint(1, 0), AxialPoint(2, 0), AxialPoint(1, 1))


def _match_t_flat(window: EvenWindow, hits: list[GliderHit]) -> Face | None:
    """If the window coincides with the exceptional flat aligned on one of the
    t gliders, return the image of the canonical center face."""
    for hit in hits:
        if hit.kind != "t":
            continue
        for pair in (hit.base, hit.base[::-1]):
            try:
                iso = iso_from_frames(_CANONICAL_T_FRAME, (pair[0], pair[1], hit.top))
            except ValueError:
                continue
            inv = iso.inverse()
            if all(
                window.delta[p] == iso.apply_direction(t_flat_direction(inv.apply_point(p)))
                for p in window.region.vertex_set()
            ):
                return iso.apply_face(CANONICAL_T_FLAT_CENTER_FACE)
    return None


def _symmetry_holds(window: EvenWindow, center_face: Face) -> bool:
    """Order-3 rotational symmetry about the center face, checked on the part
    of the window that meets its own image."""
    c0, c1, c2 = face_corners(center_face)
    rot = iso_from_frames((c0, c1, c2), (c1, c2, c0))
    verts = window.region.vertex_set()
    overlap = [v for v in verts if rot.apply_point(v) in verts]
    return bool(overlap) and all(
        window.delta[rot.apply_point(v)] == rot.apply_direction(window.delta[v])
        for v in overlap
    )


def classify(window: EvenWindow) -> Classification:
    """Sort an even window into the exceptional-flat pattern, a strip union,
    or Undetermined with a reason.

    A determinate verdict needs window_radius >= MIN_CLASSIFY_RADIUS (room for
    a whole trapezoid glider plus full rows in every direction); smaller
    windows are Undetermined(WINDOW_TOO_SMALL).
    """
    if window_radius(window.region) < MIN_CLASSIFY_RADIUS:
        return Undetermined(UndeterminedReason.WINDOW_TOO_SMALL)
    hits = find_gliders(window)
    t_hits = [h for h in hits if h.kind == "t"]
    if t_hits:
        center_face = _match_t_flat(window, t_hits)
        if center_face is None:
            return Undetermined(UndeterminedReason.BOUNDARY_AMBIGUOUS)
        center = min(face_corners(center_face))
        return TFlat(center, _symmetry_holds(window, center_face))
    rows = _row_structure(window)
    if rows is not None:
        return rows
    return Undetermined(UndeterminedReason.NO_GLIDER_NO_ROW_STRUCTURE)
