"""Boundary growth bookkeeping with exact integer arithmetic.

Spheres around a vertex carry two kinds of boundary vertices, counted by a
and b; the next sphere's counts follow the linear recurrence with matrix
(6 2; 3 4), and its face count is f' = 18a + 15b.  The comparison of parity
freedom (2^f) against root freedom (8^a 16^b) reduces to comparing exponents,
f vs 3a + 4b, which stays strict with margin 12a + 7b per step.  Everything
is a Python int, so values stay exact at any depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class GrowthState:
    """Counts for one sphere: order-3 boundary vertices (a), order-4 boundary
    vertices (b), and faces (f)."""

    a: int
    b: int
    f: int = 0

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0 or self.f < 0:
            raise ValueError("growth counts must be nonnegative")


def step(s: GrowthState) -> GrowthState:
    return GrowthState(6 * s.a + 2 * s.b, 3 * s.a + 4 * s.b, 18 * s.a + 15 * s.b)


def margin(s: GrowthState) -> int:
    """Exponent gap 3a + 4b - f; positive means 2^f < 8^a 16^b."""
    return 3 * s.a + 4 * s.b - s.f


def iterate(seed: GrowthState, n: int) -> Iterator[tuple[int, GrowthState]]:
    """Yield (k, state_k) for k = 1..n, with state_1 = seed."""
    if n < 1:
        raise ValueError("need n >= 1")
    s = seed
    yield 1, s
    for k in range(2, n + 1):
        s = step(s)
        yield k, s


def check_inequality(seed: GrowthState, n: int) -> bool:
    """True iff f_k < 3 a_k + 4 b_k for every 2 <= k <= n along the iterated
    sequence (the seed's own f is not constrained)."""
    if seed.a + seed.b <= 0:
        raise ValueError("seed must have a + b > 0")
    if n < 1:
        raise ValueError("need n >= 1")
    return all(margin(s) > 0 for k, s in iterate(seed, n) if k >= 2)


def table(seed: GrowthState, n: int) -> list[tuple[int, int, int, int, int]]:
    """Rows (k, a_k, b_k, f_k, margin_k) for k = 1..n."""
    return [(k, s.a, s.b, s.f, margin(s)) for k, s in iterate(seed, n)]
