"""Pauli X/Y/Z face labellings of regions.

A labelling is valid when, at every interior vertex, the cyclic word of the
six surrounding face labels (in rotational order) is one of the three relator
words XYXZYZ, YZYXZX, ZXZYXY up to rotation and reversal.  Each valid vertex
word singles out one lattice axis: the axis splitting the six faces into two
arcs of three that do NOT carry all three letters.  That axis is the root
distribution hiding in the labelling, and it is always even.

Conversely, an even root distribution together with a labelling of two
adjacent faces forces a unique labelling of the whole region.  The forcing is
pure constraint propagation: a face is labelled only when every completion of
some vertex word agrees on it, never by guessing.
"""

from __future__ import annotations

import heapq
from typing import Iterator, Mapping

from .distributions import (
    MissingAssignment,
    RootDistribution,
    face_parity,
)
from .lattice import (
    AxialPoint,
    Direction,
    Face,
    Region,
    _face_sort_key,
    face_corners,
    face_edge_neighbors,
    faces_around_vertex,
)
from .linkgraph import ALLOWED_WORDS, LABELS

# Positions of the two 3-face arcs that a root along each axis spans, in the
# fixed rotational order of faces_around_vertex.
_ARCS = {
    Direction.D0: ((0, 1, 2), (3, 4, 5)),
    Direction.D1: ((1, 2, 3), (4, 5, 0)),
    Direction.D2: ((2, 3, 4), (5, 0, 1)),
}


class LabellingIntegrityError(RuntimeError):
    """A structural impossibility for valid labellings was observed."""


class PuzzleContradiction(ValueError):
    """Label propagation ran into an inconsistency."""


class ExtensionStalled(ValueError):
    """Propagation stopped with part of the region unreachable."""

    def __init__(self, unreached: frozenset[Face]):
        self.unreached = unreached
        names = ", ".join(str(f) for f in sorted(unreached, key=_face_sort_key)[:4])
        more = "..." if len(unreached) > 4 else ""
        super().__init__(f"{len(unreached)} faces could not be forced: {names}{more}")


class PauliLabelling:
    """Partial map face -> one of "X", "Y", "Z" (immutable after construction)."""

    __slots__ = ("_map",)

    def __init__(self, labels: Mapping[Face, str]):
        for f, lab in labels.items():
            if lab not in LABELS:
                raise ValueError(f"label of {f} must be one of {LABELS}, got {lab!r}")
        self._map = dict(labels)

    def __getitem__(self, f: Face) -> str:
        try:
            return self._map[f]
        except KeyError:
            raise MissingAssignment(f"no label assigned on face {f}") from None

    def __contains__(self, f: Face) -> bool:
        return f in self._map

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PauliLabelling) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def __repr__(self) -> str:
        return f"PauliLabelling({len(self._map)} faces)"

    def domain(self) -> frozenset[Face]:
        return frozenset(self._map)

    def items(self) -> Iterator[tuple[Face, str]]:
        return iter(sorted(self._map.items(), key=lambda kv: _face_sort_key(kv[0])))


def word_direction(word: str) -> Direction:
    """The unique axis whose two arcs of the vertex word are both non-rainbow.

    Raises LabellingIntegrityError unless exactly one axis qualifies with both
    arcs agreeing (which is the case for every valid vertex word).
    """
    hits = []
    for d, (arc0, arc1) in _ARCS.items():
        rainbow0 = len({word[i] for i in arc0}) == 3
        rainbow1 = len({word[i] for i in arc1}) == 3
        if rainbow0 != rainbow1:
            raise LabellingIntegrityError(
                f"arcs of {word!r} disagree across axis {d}"
            )
        if not rainbow0:
            hits.append(d)
    if len(hits) != 1:
        raise LabellingIntegrityError(
            f"{len(hits)} axes qualify for word {word!r}, expected exactly 1"
        )
    return hits[0]


# Every allowed word determines one axis; precomputed once.
WORD_DIRECTIONS: dict[str, Direction] = {w: word_direction(w) for w in ALLOWED_WORDS}


def vertex_word(labelling: PauliLabelling, x: AxialPoint) -> str:
    return "".join(labelling[f] for f in faces_around_vertex(x))


def validate(labelling: PauliLabelling, region: Region) -> bool:
    """True iff every interior vertex of the region carries an allowed word."""
    for f in region.faces:
        if f not in labelling:
            raise MissingAssignment(f"labelling undefined on face {f}")
    return all(
        vertex_word(labelling, x) in ALLOWED_WORDS for x in region.interior_vertices()
    )


def induced_roots(labelling: PauliLabelling, region: Region) -> RootDistribution:
    """The root distribution read off the labelling at interior vertices."""
    out = {}
    for x in sorted(region.interior_vertices()):
        word = vertex_word(labelling, x)
        if word not in ALLOWED_WORDS:
            raise LabellingIntegrityError(f"invalid vertex word {word!r} at {x}")
        out[x] = WORD_DIRECTIONS[word]
    return RootDistribution(out)


def check_even(labelling: PauliLabelling, region: Region) -> bool:
    """True iff the induced root distribution makes every face whose corners
    are all interior vertices even."""
    if not validate(labelling, region):
        raise ValueError("labelling is not valid on the region")
    delta = induced_roots(labelling, region)
    covered = [
        f for f in region.faces if all(c in delta for c in face_corners(f))
    ]
    return all(face_parity(delta, f) == 0 for f in covered)


# ---------------------------------------------------------------------------
# The unique even extension.
# ---------------------------------------------------------------------------

Seed = tuple[tuple[Face, str], tuple[Face, str]]


def _candidate_words(
    ring: tuple[Face, ...],
    in_region: tuple[bool, ...],
    labels: dict[Face, str],
    direction: Direction | None,
) -> list[str]:
    pool = (
        [w for w, d in WORD_DIRECTIONS.items() if d == direction]
        if direction is not None
        else list(ALLOWED_WORDS)
    )
    out = []
    for w in pool:
        ok = True
        for i, f in enumerate(ring):
            if in_region[i] and f in labels and labels[f] != w[i]:
                ok = False
                break
        if ok:
            out.append(w)
    return out


def extend(
    delta: RootDistribution,
    region: Region,
    seed: Seed,
    reverse_order: bool = False,
) -> PauliLabelling:
    """The unique labelling of the region forced by an even root distribution
    and the labels of two adjacent seed faces.

    ``delta`` must make every face it covers even.  ``reverse_order`` flips
    the worklist priority; it exists so the order-independence of the forced
    fixpoint can be demonstrated, and never changes the result.
    """
    (f0, lab0), (f1, lab1) = seed
    for f in (f0, f1):
        if f not in region:
            raise ValueError(f"seed face {f} is outside the region")
    if f1 not in face_edge_neighbors(f0):
        raise ValueError(f"seed faces {f0} and {f1} do not share an edge")
    for lab in (lab0, lab1):
        if lab not in LABELS:
            raise ValueError(f"bad seed label {lab!r}")
    if lab0 == lab1:
        raise PuzzleContradiction(
            "adjacent faces with equal labels admit no valid vertex word"
        )
    for f in region.faces:
        covered = all(c in delta for c in face_corners(f))
        if covered and face_parity(delta, f) != 0:
            raise ValueError(f"root distribution is not even on face {f}")

    # Static worklist priority: face-adjacency distance from the seed pair.
    face_dist = {f0: 0, f1: 0}
    frontier = [f0, f1]
    while frontier:
        nxt = []
        for f in frontier:
            for g in face_edge_neighbors(f):
                if g in region.faces and g not in face_dist:
                    face_dist[g] = face_dist[f] + 1
                    nxt.append(g)
        frontier = nxt

    def vertex_priority(x: AxialPoint):
        ring = faces_around_vertex(x)
        d = min((face_dist[f] for f in ring if f in face_dist), default=10**9)
        key = (d, x.a, x.b)
        return tuple(-k for k in key) if reverse_order else key

    rings = {}
    for x in region.vertex_set():
        ring = faces_around_vertex(x)
        rings[x] = (ring, tuple(f in region.faces for f in ring))

    labels: dict[Face, str] = {f0: lab0, f1: lab1}
    heap: list[tuple] = []
    queued = set()

    def enqueue(x: AxialPoint) -> None:
        if x not in queued:
            queued.add(x)
            heapq.heappush(heap, (vertex_priority(x), x.a, x.b))

    for f in (f0, f1):
        for c in face_corners(f):
            if c in rings:
                enqueue(c)

    while heap:
        _, a, b = heapq.heappop(heap)
        x = AxialPoint(a, b)
        queued.discard(x)
        ring, in_region = rings[x]
        if sum(1 for f in ring if f in labels) < 2:
            continue
        direction = delta[x] if x in delta else None
        candidates = _candidate_words(ring, in_region, labels, direction)
        if not candidates:
            raise PuzzleContradiction(f"no valid vertex word fits at {x}")
        for i, f in enumerate(ring):
            if not in_region[i] or f in labels:
                continue
            forced = {w[i] for w in candidates}
            if len(forced) == 1:
                labels[f] = forced.pop()
                for c in face_corners(f):
                    if c in rings:
                        enqueue(c)

    missing = region.faces - labels.keys()
    if missing:
        raise ExtensionStalled(frozenset(missing))

    result = PauliLabelling({f: labels[f] for f in region.faces})
    if not validate(result, region):
        raise LabellingIntegrityError("forced labelling failed validation")
    derived = induced_roots(result, region)
    for x in region.interior_vertices():
        if x in delta and derived[x] != delta[x]:
            raise LabellingIntegrityError(f"derived roots disagree with input at {x}")
    return result
