"""Cubic link graphs, root enumeration, and the rank formula.

The two graphs built here are the generalized Petersen graph GP(8,3) (the
unique cubic symmetric graph on 16 vertices) and the Cayley graph of the
group generated by the three Pauli matrices with respect to {X, Y, Z}.  The
Pauli group is enumerated with exact Gaussian-integer matrix arithmetic.

A root is an oriented embedded 3-edge geodesic path; its rank is
1 + N/q where N counts the other roots with the same ordered endpoints and
q is the degree of the start vertex minus 1 (so q = 2 throughout).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

LABELS = ("X", "Y", "Z")

# The three label words of the 6-cycles in a Pauli-labelled link, as group
# relations between the generators.
RELATORS = ("XYXZYZ", "YZYXZX", "ZXZYXY")


def _word_orbit(word: str) -> set[str]:
    out = set()
    for w in (word, word[::-1]):
        for k in range(len(w)):
            out.add(w[k:] + w[:k])
    return out


def allowed_vertex_words() -> frozenset[str]:
    """All rotations and reversals of the three relator words (18 words)."""
    out: set[str] = set()
    for rel in RELATORS:
        out |= _word_orbit(rel)
    return frozenset(out)


ALLOWED_WORDS = allowed_vertex_words()


class CubicGraph:
    """An undirected graph in which every vertex has degree exactly 3.

    ``labels``, when present, maps each edge (u, v) with u < v to one of
    "X", "Y", "Z".  The Cayley property (three distinct labels per vertex) is
    deliberately not enforced at construction so that verification functions
    can be exercised on perturbed labellings.
    """

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, edges, labels=None):
        adj: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            e = (min(u, v), max(u, v))
            if u == v or e in seen:
                raise ValueError(f"bad edge {u}-{v}")
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        for v, nbrs in enumerate(adj):
            if len(nbrs) != 3:
                raise ValueError(f"vertex {v} has degree {len(nbrs)}, graph is not cubic")
        self.n = n
        self.adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        if labels is not None:
            labels = dict(labels)
            for e in labels:
                if e not in seen:
                    raise ValueError(f"label on non-edge {e}")
            for lab in labels.values():
                if lab not in LABELS:
                    raise ValueError(f"bad edge label {lab!r}")
        self.labels = labels

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def edge_label(self, u: int, v: int) -> str:
        if self.labels is None:
            raise ValueError("graph has no edge labels")
        e = (min(u, v), max(u, v))
        if e not in self.labels:
            raise ValueError(f"edge {e} is unlabelled")
        return self.labels[e]

    def with_labels(self, labels) -> "CubicGraph":
        return CubicGraph(self.n, self.edges(), labels)


def moebius_kantor() -> CubicGraph:
    """The generalized Petersen graph GP(8,3): outer 8-cycle u0..u7 (vertices
    0..7), inner vertices w0..w7 (8..15), spokes u_i-w_i, chords w_i-w_{i+3}."""
    edges = []
    for i in range(8):
        edges.append((i, (i + 1) % 8))
        edges.append((i, 8 + i))
        edges.append((8 + i, 8 + (i + 3) % 8))
    return CubicGraph(16, edges)


# ---------------------------------------------------------------------------
# The Pauli group, with exact Gaussian-integer arithmetic.
# ---------------------------------------------------------------------------

# A Gaussian integer is an (re, im) pair; a matrix is a row-major 4-tuple.
def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _mmul(m, n):
    return (
        _gadd(_gmul(m[0], n[0]), _gmul(m[1], n[2])),
        _gadd(_gmul(m[0], n[1]), _gmul(m[1], n[3])),
        _gadd(_gmul(m[2], n[0]), _gmul(m[3], n[2])),
        _gadd(_gmul(m[2], n[1]), _gmul(m[3], n[3])),
    )


_ZERO, _ONE, _I = (0, 0), (1, 0), (0, 1)
_MINUS_ONE, _MINUS_I = (-1, 0), (0, -1)

PAULI_GENERATORS = {
    "X": (_ZERO, _ONE, _ONE, _ZERO),
    "Y": (_ZERO, _MINUS_I, _I, _ZERO),
    "Z": (_ONE, _ZERO, _ZERO, _MINUS_ONE),
}

IDENTITY_MATRIX = (_ONE, _ZERO, _ZERO, _ONE)


def pauli_group_elements() -> list[tuple]:
    """Closure of {X, Y, Z} under multiplication, in BFS discovery order."""
    order = [IDENTITY_MATRIX]
    seen = {IDENTITY_MATRIX}
    queue = deque([IDENTITY_MATRIX])
    while queue:
        g = queue.popleft()
        for lab in LABELS:
            h = _mmul(g, PAULI_GENERATORS[lab])
            if h not in seen:
                seen.add(h)
                order.append(h)
                queue.append(h)
    return order


def pauli_cayley() -> CubicGraph:
    """Cayley graph of the Pauli group with respect to {X, Y, Z}, with each
    edge labelled by its generator.  Vertex 0 is the identity matrix."""
    elements = pauli_group_elements()
    index = {g: i for i, g in enumerate(elements)}
    edges = []
    labels = {}
    for g, i in index.items():
        for lab in LABELS:
            j = index[_mmul(g, PAULI_GENERATORS[lab])]
            e = (min(i, j), max(i, j))
            labels[e] = lab
            if i < j:
                edges.append(e)
    return CubicGraph(len(elements), edges, labels)


# ---------------------------------------------------------------------------
# Roots and ranks.
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class LinkRoot:
    """An oriented embedded geodesic path of 3 edges (the start vertex is
    distinguished)."""

    path: tuple[int, int, int, int]


def bfs_distances(g: CubicGraph, src: int) -> list[int]:
    dist = [-1] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def girth(g: CubicGraph) -> int:
    best = g.n + 1
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def enumerate_roots(g: CubicGraph) -> list[LinkRoot]:
    """All embedded 3-edge paths whose endpoints are at graph distance 3.
    Both orientations of a path are distinct roots."""
    roots = []
    dist = [bfs_distances(g, v) for v in range(g.n)]
    for v0 in range(g.n):
        for v1 in g.adj[v0]:
            for v2 in g.adj[v1]:
                if v2 == v0:
                    continue
                for v3 in g.adj[v2]:
                    if v3 in (v0, v1):
                        continue
                    if dist[v0][v3] == 3:
                        roots.append(LinkRoot((v0, v1, v2, v3)))
    return sorted(roots)


def _check_root(g: CubicGraph, r: LinkRoot) -> None:
    p = r.path
    if len(set(p)) != 4:
        raise ValueError(f"root path {p} is not embedded")
    for u, v in zip(p, p[1:]):
        if v not in g.adj[u]:
            raise ValueError(f"root path {p} has non-edge {u}-{v}")
    if bfs_distances(g, p[0])[p[3]] != 3:
        raise ValueError(f"root path {p} is not geodesic")


def root_rank(g: CubicGraph, r: LinkRoot) -> Fraction:
    """Exact rank 1 + N/q of a root: N counts the other roots sharing both
    ordered endpoints, q is deg(start) - 1."""
    _check_root(g, r)
    v0, _, _, v3 = r.path
    same = 0
    for v1 in g.adj[v0]:
        for v2 in g.adj[v1]:
            if v2 != v0 and v3 in g.adj[v2] and v3 != v1:
                same += 1
    q = len(g.adj[v0]) - 1
    return 1 + Fraction(same - 1, q)


def root_label_word(g: CubicGraph, r: LinkRoot) -> str:
    p = r.path
    return "".join(g.edge_label(u, v) for u, v in zip(p, p[1:]))


def verify_rank_label_lemma(g: CubicGraph) -> bool:
    """True iff every root has rank 2 exactly when its three edge labels are
    pairwise distinct."""
    for r in enumerate_roots(g):
        rainbow = len(set(root_label_word(g, r))) == 3
        if (root_rank(g, r) == 2) != rainbow:
            return False
    return True


def six_cycles(g: CubicGraph) -> list[tuple[int, ...]]:
    """All 6-cycles, each reported once, starting at its minimal vertex with
    the smaller of the two neighbour directions second."""
    cycles = []

    def grow(path: list[int]) -> None:
        u = path[-1]
        if len(path) == 6:
            if path[0] in g.adj[u] and path[1] < path[-1]:
                cycles.append(tuple(path))
            return
        for v in g.adj[u]:
            if v > path[0] and v not in path:
                path.append(v)
                grow(path)
                path.pop()

    for s in range(g.n):
        grow([s])
    return sorted(cycles)


def cycle_label_word(g: CubicGraph, cycle: tuple[int, ...]) -> str:
    pairs = list(zip(cycle, cycle[1:] + cycle[:1]))
    return "".join(g.edge_label(u, v) for u, v in pairs)


def verify_relator_cycles(g: CubicGraph) -> bool:
    """True iff the label word of every 6-cycle is, cyclically and up to
    direction, one of the three relator words."""
    for cycle in six_cycles(g):
        if cycle_label_word(g, cycle) not in ALLOWED_WORDS:
            return False
    return True


def six_cycle_census(g: CubicGraph) -> list[int]:
    """Number of 6-cycles through each vertex."""
    counts = [0] * g.n
    for cycle in six_cycles(g):
        for v in cycle:
            counts[v] += 1
    return counts


# ---------------------------------------------------------------------------
# Isomorphism by brute-force search with distance-profile refinement.
# ---------------------------------------------------------------------------


def _vertex_signatures(g: CubicGraph) -> list[tuple]:
    sigs = []
    for v in range(g.n):
        dist = bfs_distances(g, v)
        hist: dict[int, int] = {}
        for d in dist:
            hist[d] = hist.get(d, 0) + 1
        sigs.append(tuple(sorted(hist.items())))
    # One refinement round: fold in the multiset of neighbour signatures.
    refined = []
    for v in range(g.n):
        refined.append((sigs[v], tuple(sorted(sigs[u] for u in g.adj[v]))))
    return refined


def _extend_isomorphism(g: CubicGraph, h: CubicGraph, sig_g, sig_h, mapping) -> bool:
    if len(mapping) == g.n:
        return True
    v = min(u for u in range(g.n) if u not in mapping)
    used = set(mapping.values())
    for w in range(h.n):
        if w in used or sig_g[v] != sig_h[w]:
            continue
        ok = True
        for u in range(g.n):
            if u in mapping:
                if (u in g.adj[v]) != (mapping[u] in h.adj[w]):
                    ok = False
                    break
        if ok:
            mapping[v] = w
            if _extend_isomorphism(g, h, sig_g, sig_h, mapping):
                return True
            del mapping[v]
    return False


def find_isomorphism(g: CubicGraph, h: CubicGraph) -> dict[int, int] | None:
    """A vertex bijection preserving adjacency, or None."""
    if g.n != h.n:
        return None
    sig_g, sig_h = _vertex_signatures(g), _vertex_signatures(h)
    if sorted(sig_g) != sorted(sig_h):
        return None
    mapping: dict[int, int] = {}
    if _extend_isomorphism(g, h, sig_g, sig_h, mapping):
        return dict(mapping)
    return None


def is_isomorphic(g: CubicGraph, h: CubicGraph) -> bool:
    return find_isomorphism(g, h) is not None


def is_vertex_transitive(g: CubicGraph) -> bool:
    """True iff for every vertex v there is an automorphism sending 0 to v."""
    sig = _vertex_signatures(g)
    for v in range(g.n):
        mapping = {0: v}
        if sig[0] != sig[v]:
            return False
        if not _extend_isomorphism(g, g, sig, sig, mapping):
            return False
    return True
