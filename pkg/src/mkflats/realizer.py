"""Decide whether a parity distribution on a finite region is induced by some
root distribution.

The decision procedure is classic backtracking over vertex domains with
per-face generalized arc consistency.  Each face constraint has arity 3 over
domains of size at most 3, so full GAC is a cheap table check.  Branching is
deterministic: vertices ascending by (a, b), values in order D0 < D1 < D2, so
the first witness found is the lexicographically least one and Unsat outcomes
carry reproducible search statistics.

The module also bundles a parity pattern on a union of six radius-1 hexagons
that no root distribution realizes; exhausting its search tree is the
machine check that such patterns exist (the interesting negative result this
solver was built to confirm).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from itertools import product
from typing import Callable, Iterator, Mapping

from .distributions import (
    MissingAssignment,
    ParityDistribution,
    RootDistribution,
)
from .lattice import (
    AxialPoint,
    Direction,
    Face,
    Region,
    face_corners,
    opposite_edge_direction,
)

_FULL = 0b111
_ALL_DIRECTIONS = (Direction.D0, Direction.D1, Direction.D2)


class Contradiction:
    """Sentinel value returned by propagate when a domain empties."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Contradiction"


CONTRADICTION = Contradiction()


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    propagations: int


@dataclass(frozen=True)
class Sat:
    witness: RootDistribution


@dataclass(frozen=True)
class Unsat:
    stats: SearchStats


SolveOutcome = Sat | Unsat


@dataclass(frozen=True)
class CSPState:
    """Search state: per-vertex candidate sets against a target parity."""

    domains: Mapping[AxialPoint, frozenset[Direction]]
    target: ParityDistribution
    region: Region

    @staticmethod
    def initial(target: ParityDistribution, region: Region) -> "CSPState":
        full = frozenset(_ALL_DIRECTIONS)
        return CSPState(
            {v: full for v in sorted(region.vertex_set())}, target, region
        )


# ---------------------------------------------------------------------------
# Internal compiled form: integer indices and bitmask domains.
# ---------------------------------------------------------------------------


class _Problem:
    __slots__ = ("vertices", "vindex", "faces", "vertex_faces")

    def __init__(self, target: ParityDistribution, region: Region):
        for f in region.faces:
            if f not in target:
                raise MissingAssignment(f"target parity undefined on face {f}")
        extra = target.domain() - region.faces
        if extra:
            raise ValueError(f"target parity defined off the region: {sorted(extra)[:3]}")
        self.vertices = tuple(sorted(region.vertex_set()))
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        faces = []
        vertex_faces: list[list[int]] = [[] for _ in self.vertices]
        for f in region:
            corners = face_corners(f)
            idx = tuple(self.vindex[c] for c in corners)
            opp = tuple(int(opposite_edge_direction(f, c)) for c in corners)
            faces.append(idx + opp + (target[f],))
            for i in idx:
                vertex_faces[i].append(len(faces) - 1)
        self.faces = tuple(faces)
        self.vertex_faces = tuple(tuple(fs) for fs in vertex_faces)


def _parity_options(mask: int, opp: int) -> tuple[bool, bool]:
    """Whether the domain ``mask`` can contribute a match (parity 0) or a
    mismatch (parity 1) against the opposite-edge direction ``opp``."""
    can_match = bool(mask & (1 << opp))
    can_mismatch = bool(mask & ~(1 << opp) & _FULL)
    return can_match, can_mismatch


class _Stats:
    __slots__ = ("nodes", "propagations")

    def __init__(self):
        self.nodes = 0
        self.propagations = 0

    def frozen(self) -> SearchStats:
        return SearchStats(self.nodes, self.propagations)


def _propagate(problem: _Problem, domains: list[int], stats: _Stats, queue=None) -> bool:
    """Enforce per-face GAC to fixpoint.  Returns False on an emptied domain."""
    pending = set(range(len(problem.faces))) if queue is None else set(queue)
    while pending:
        fi = pending.pop()
        i0, i1, i2, o0, o1, o2, t = problem.faces[fi]
        idx = (i0, i1, i2)
        opp = (o0, o1, o2)
        for j in range(3):
            vj = idx[j]
            mask = domains[vj]
            ja, jb = (j + 1) % 3, (j + 2) % 3
            pa = _parity_options(domains[idx[ja]], opp[ja])
            pb = _parity_options(domains[idx[jb]], opp[jb])
            new = 0
            for d in range(3):
                bit = 1 << d
                if not mask & bit:
                    continue
                need = t ^ (d != opp[j])
                if (pa[0] and pb[need]) or (pa[1] and pb[1 - need]):
                    new |= bit
            if new != mask:
                stats.propagations += bin(mask & ~new).count("1")
                domains[vj] = new
                if new == 0:
                    return False
                pending.update(problem.vertex_faces[vj])
    return True


def _solutions(
    problem: _Problem,
    domains: list[int],
    stats: _Stats,
    value_order: Callable[[int], tuple[int, ...]] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Depth-first enumeration of all solutions, in lexicographic order of the
    assignment vector unless a custom per-vertex value order is supplied."""
    if not _propagate(problem, domains, stats):
        return
    stack = [(domains, 0)]
    while stack:
        dom, start = stack.pop()
        branch = None
        for i in range(start, len(dom)):
            if dom[i] & (dom[i] - 1):
                branch = i
                break
        if branch is None:
            yield tuple(d.bit_length() - 1 for d in dom)
            continue
        order = value_order(branch) if value_order else (0, 1, 2)
        # Children are pushed in reverse so the least value is explored first.
        children = []
        for d in order:
            bit = 1 << d
            if not dom[branch] & bit:
                continue
            stats.nodes += 1
            child = list(dom)
            child[branch] = bit
            if _propagate(problem, child, stats, problem.vertex_faces[branch]):
                children.append((child, branch + 1))
        stack.extend(reversed(children))


def _witness(problem: _Problem, assignment: tuple[int, ...]) -> RootDistribution:
    return RootDistribution(
        {v: Direction(d) for v, d in zip(problem.vertices, assignment)}
    )


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------


def propagate(state: CSPState) -> CSPState | Contradiction:
    """Per-face GAC fixpoint of the state, or CONTRADICTION if a domain empties."""
    problem = _Problem(state.target, state.region)
    domains = []
    for v in problem.vertices:
        mask = 0
        for d in state.domains.get(v, _ALL_DIRECTIONS):
            mask |= 1 << int(d)
        domains.append(mask)
    stats = _Stats()
    if not _propagate(problem, domains, stats):
        return CONTRADICTION
    new = {
        v: frozenset(d for d in _ALL_DIRECTIONS if m & (1 << int(d)))
        for v, m in zip(problem.vertices, domains)
    }
    return CSPState(new, state.target, state.region)


def realize(target: ParityDistribution, region: Region) -> SolveOutcome:
    """Sat with the lexicographically least witness, or Unsat after exhausting
    the search tree."""
    problem = _Problem(target, region)
    stats = _Stats()
    for assignment in _solutions(problem, [_FULL] * len(problem.vertices), stats):
        return Sat(_witness(problem, assignment))
    return Unsat(stats.frozen())


def enumerate_realizations(
    target: ParityDistribution, region: Region, limit: int | None = None
) -> list[RootDistribution]:
    """Up to ``limit`` witnesses in lexicographic order (all of them if None)."""
    problem = _Problem(target, region)
    stats = _Stats()
    out = []
    for assignment in _solutions(problem, [_FULL] * len(problem.vertices), stats):
        out.append(_witness(problem, assignment))
        if limit is not None and len(out) >= limit:
            break
    return out


def realize_with_domains(
    target: ParityDistribution,
    region: Region,
    fixed: Mapping[AxialPoint, Direction],
) -> SolveOutcome:
    """realize() with some vertices pinned to given directions beforehand."""
    problem = _Problem(target, region)
    domains = [_FULL] * len(problem.vertices)
    for v, d in fixed.items():
        domains[problem.vindex[v]] = 1 << int(d)
    stats = _Stats()
    for assignment in _solutions(problem, domains, stats):
        return Sat(_witness(problem, assignment))
    return Unsat(stats.frozen())


def sample_realization(
    target: ParityDistribution, region: Region, rng: random.Random
) -> RootDistribution | None:
    """One witness found with per-vertex random value order (reproducible for
    a seeded rng), or None when the target is not realizable."""
    problem = _Problem(target, region)
    orders = {}

    def value_order(i: int) -> tuple[int, ...]:
        if i not in orders:
            perm = [0, 1, 2]
            rng.shuffle(perm)
            orders[i] = tuple(perm)
        return orders[i]

    stats = _Stats()
    for assignment in _solutions(
        problem, [_FULL] * len(problem.vertices), stats, value_order
    ):
        return _witness(problem, assignment)
    return None


# ---------------------------------------------------------------------------
# The radius-1 hexagon check and the bundled non-realizable pattern.
# ---------------------------------------------------------------------------


def hexagon_pattern_outcomes() -> list[tuple[tuple[int, ...], SolveOutcome]]:
    """realize() on all 64 parity patterns of the radius-1 hexagon at the
    origin, patterns listed in the rotational face order."""
    from .lattice import faces_around_vertex, hexagon

    region = hexagon(AxialPoint(0, 0), 1)
    ring = faces_around_vertex(AxialPoint(0, 0))
    out = []
    for bits in product((0, 1), repeat=6):
        target = ParityDistribution(dict(zip(ring, bits)))
        out.append((bits, realize(target, region)))
    return out


def verify_hexagon_theorem() -> bool:
    """True iff every one of the 64 radius-1 parity patterns is realizable."""
    return all(isinstance(o, Sat) for _, o in hexagon_pattern_outcomes())


# The bundled pattern is supported on six radius-1 hexagons arranged with an
# order-3 rotational symmetry about the face Down(-1, 0); that face is the
# natural focus for case analysis.
COUNTEREXAMPLE_FOCUS_FACE = Face.down(-1, 0)


def counterexample_parity() -> ParityDistribution:
    """The bundled non-realizable parity pattern."""
    from .files import parse_pdist

    try:
        text = (
            resources.files("mkflats").joinpath("data/counterexample.pdist").read_text()
        )
    except FileNotFoundError as exc:
        raise FileNotFoundError("bundled counterexample data file is missing") from exc
    return parse_pdist(text)


def verify_counterexample() -> SolveOutcome:
    """Run the solver on the bundled pattern (expected outcome: Unsat)."""
    target = counterexample_parity()
    return realize(target, target.region())


def corner_assignments_with_parity(f: Face, parity: int) -> list[dict[AxialPoint, Direction]]:
    """All assignments of directions to the corners of ``f`` inducing the
    given face parity (13 even, 14 odd out of the 27)."""
    corners = face_corners(f)
    opp = [opposite_edge_direction(f, c) for c in corners]
    out = []
    for combo in product(_ALL_DIRECTIONS, repeat=3):
        mism = sum(1 for d, o in zip(combo, opp) if d != o)
        if mism & 1 == parity:
            out.append(dict(zip(corners, combo)))
    return out


def verify_disallowed_dozen() -> bool:
    """Case analysis at the focus face of the bundled pattern: each of its 13
    even corner assignments (the twelve with exactly two rank-2 corners plus
    the single all-matching one) must be refuted by exhaustive search."""
    target = counterexample_parity()
    region = target.region()
    face = COUNTEREXAMPLE_FOCUS_FACE
    if face not in region:
        raise ValueError("focus face missing from the bundled pattern")
    cases = corner_assignments_with_parity(face, 0)
    opp = {c: opposite_edge_direction(face, c) for c in face_corners(face)}
    two_rank2 = [c for c in cases if sum(1 for x, d in c.items() if d != opp[x]) == 2]
    all_match = [c for c in cases if all(d == opp[x] for x, d in c.items())]
    if len(two_rank2) != 12 or len(all_match) != 1 or len(cases) != 13:
        return False
    return all(
        isinstance(realize_with_domains(target, region, case), Unsat)
        for case in cases
    )
