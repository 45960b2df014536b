"""Immutable simple graphs and the generic operations built on them.

Vertices are dense 0-based integers. Each vertex keeps its neighborhood both
as a sorted tuple (for deterministic iteration and output) and as an integer
bitmask (for fast set algebra in squares and multipartite checks).
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import ConstructionError, ContractViolation


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph on vertices ``0 .. vertex_count-1``."""

    __slots__ = ("_n", "_adj", "_masks")

    def __init__(self, vertex_count: int, masks: Sequence[int]):
        # Trusted constructor; use make_graph() for validated input.
        self._n = vertex_count
        self._masks = tuple(masks)
        self._adj = tuple(tuple(_bits(m)) for m in self._masks)

    @classmethod
    def from_masks(cls, vertex_count: int, masks: Sequence[int]) -> "Graph":
        full = (1 << vertex_count) - 1
        if len(masks) != vertex_count:
            raise ConstructionError("one adjacency mask per vertex is required")
        for v, m in enumerate(masks):
            if m & ~full:
                raise ConstructionError(f"vertex {v} has an out-of-range neighbor")
            if (m >> v) & 1:
                raise ConstructionError(f"self-loop at vertex {v}")
            for u in _bits(m):
                if not (masks[u] >> v) & 1:
                    raise ConstructionError(f"asymmetric adjacency between {v} and {u}")
        return cls(vertex_count, masks)

    @property
    def vertex_count(self) -> int:
        return self._n

    def __len__(self) -> int:
        return self._n

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def mask(self, v: int) -> int:
        return self._masks[v]

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._masks[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return [(u, v) for u in range(self._n) for v in self._adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def common_neighbors(self, u: int, v: int) -> list[int]:
        return _bits(self._masks[u] & self._masks[v])

    def without_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise ContractViolation(f"({u}, {v}) is not an edge")
        masks = list(self._masks)
        masks[u] &= ~(1 << v)
        masks[v] &= ~(1 << u)
        return Graph(self._n, masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self._n, self._masks))

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self._n}, edges={self.edge_count})"

    def to_json(self) -> dict:
        return {"n": self._n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Graph":
        try:
            n = int(data["n"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConstructionError(f"malformed graph JSON: {exc}") from exc
        return make_graph(n, edges)


def make_graph(vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicates and reversed pairs collapse."""
    if vertex_count < 0:
        raise ConstructionError("vertex_count must be nonnegative")
    masks = [0] * vertex_count
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ConstructionError(f"edge ({u}, {v}) has an endpoint outside [0, {vertex_count})")
        if u == v:
            raise ConstructionError(f"self-loop at vertex {u}")
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph(vertex_count, masks)


# -- small named graphs -------------------------------------------------------

def empty_graph(m: int) -> Graph:
    return Graph(m, [0] * m)


def complete_graph(m: int) -> Graph:
    full = (1 << m) - 1
    return Graph(m, [full & ~(1 << v) for v in range(m)])


def path_graph(m: int) -> Graph:
    return make_graph(m, [(v, v + 1) for v in range(m - 1)])


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise ConstructionError("a cycle needs at least 3 vertices")
    return make_graph(m, [(v, (v + 1) % m) for v in range(m)])


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and ``leaves`` leaves."""
    return make_graph(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def complete_multipartite(part_size: int, parts: int) -> tuple[Graph, "PartitionCertificate"]:
    """K_{part_size * parts}: ``parts`` independent sets of ``part_size`` vertices each."""
    n = part_size * parts
    groups = [frozenset(range(p * part_size, (p + 1) * part_size)) for p in range(parts)]
    full = (1 << n) - 1
    masks = [0] * n
    for g in groups:
        gm = mask_of(g)
        for v in g:
            masks[v] = full & ~gm
    return Graph(n, masks), PartitionCertificate(tuple(groups))


def complete_bipartite(a: int, b: int) -> Graph:
    return make_graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


# -- operations ---------------------------------------------------------------

def square(g: Graph) -> Graph:
    """Vertices at distance at most 2 in ``g`` become adjacent."""
    masks = g.masks
    out = []
    for v in g.vertices():
        m = masks[v]
        for u in g.neighbors(v):
            m |= masks[u]
        out.append(m & ~(1 << v))
    return Graph(g.vertex_count, out)


def subdivide(g: Graph) -> Graph:
    """Replace every edge by a path of length two through a new vertex.

    The new vertex for the i-th edge in ``g.edges()`` order gets index
    ``g.vertex_count + i``.
    """
    n = g.vertex_count
    new_edges = []
    for i, (u, v) in enumerate(g.edges()):
        new_edges.append((u, n + i))
        new_edges.append((v, n + i))
    return make_graph(n + g.edge_count, new_edges)


def total_graph(g: Graph) -> Graph:
    """Total graph on V(g) followed by E(g), in the same order as subdivide()."""
    n = g.vertex_count
    edges = g.edges()
    out = list(g.edges())
    for i, (u, v) in enumerate(edges):
        out.append((u, n + i))
        out.append((v, n + i))
    for (i, e), (j, f) in combinations(enumerate(edges), 2):
        if set(e) & set(f):
            out.append((n + i, n + j))
    return make_graph(n + len(edges), out)


def _check_range(g: Graph, s: Iterable[int]) -> list[int]:
    members = sorted(set(s))
    if members and (members[0] < 0 or members[-1] >= g.vertex_count):
        raise ContractViolation("vertex set is not contained in the graph's vertex range")
    return members


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph on ``s`` reindexed in ascending order, plus the old->new index map."""
    members = _check_range(g, s)
    index = {v: i for i, v in enumerate(members)}
    edges = [(index[u], index[v]) for u in members for v in g.neighbors(u) if u < v and v in index]
    return make_graph(len(members), edges), index


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    members = _check_range(g, s)
    sm = mask_of(members)
    return all(not (g.mask(v) & sm) for v in members)


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two-coloring witness, or None when ``g`` has an odd cycle.

    Each component's lowest-index vertex goes to side 0.
    """
    side = _two_color(g)[0]
    if side is None:
        return None
    return (frozenset(v for v in g.vertices() if side[v] == 0),
            frozenset(v for v in g.vertices() if side[v] == 1))


def odd_closed_walk(g: Graph) -> list[int] | None:
    """An odd closed walk ``[x0, x1, ..., x0]`` if ``g`` is not bipartite."""
    return _two_color(g)[1]


def _two_color(g: Graph) -> tuple[list[int] | None, list[int] | None]:
    side = [-1] * g.vertex_count
    parent = [-1] * g.vertex_count
    for root in g.vertices():
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    parent[u] = v
                    queue.append(u)
                elif side[u] == side[v]:
                    return None, _walk_through(parent, v, u)
    return side, None


def _walk_through(parent: list[int], v: int, u: int) -> list[int]:
    # BFS tree paths from v and u to the root plus the edge vu close an odd walk.
    def to_root(x: int) -> list[int]:
        path = [x]
        while parent[path[-1]] >= 0:
            path.append(parent[path[-1]])
        return path

    pv, pu = to_root(v), to_root(u)
    return pv + pu[::-1][1:] + [v]


# -- partitions ---------------------------------------------------------------

@dataclass(frozen=True)
class PartitionCertificate:
    """Ordered family of disjoint, non-empty vertex sets."""

    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))
        seen: set[int] = set()
        for i, p in enumerate(self.parts):
            if not p:
                raise ContractViolation(f"part {i} is empty")
            if seen & p:
                raise ContractViolation(f"part {i} overlaps an earlier part")
            seen |= p

    def __len__(self) -> int:
        return len(self.parts)

    def check_covers(self, g: Graph) -> None:
        union = set().union(*self.parts) if self.parts else set()
        if union != set(g.vertices()):
            raise ContractViolation("partition does not cover exactly the graph's vertex set")

    def part_index(self) -> dict[int, int]:
        return {v: i for i, p in enumerate(self.parts) for v in p}

    def to_json(self) -> list[list[int]]:
        return [sorted(p) for p in self.parts]


def is_complete_multipartite(g: Graph, cert: PartitionCertificate) -> bool:
    """True iff every part is independent and every cross-part pair is adjacent."""
    cert.check_covers(g)
    full = (1 << g.vertex_count) - 1
    for part in cert.parts:
        pm = mask_of(part)
        expected = full & ~pm
        if any(g.mask(v) != expected for v in part):
            return False
    return True


def degree_profile(g: Graph) -> Counter:
    """Multiset of vertex degrees as ``Counter({degree: count})``."""
    return Counter(g.degree(v) for v in g.vertices())


def degeneracy(g: Graph) -> int:
    """Largest minimum degree over all subgraphs (smallest-last ordering)."""
    deg = [g.degree(v) for v in g.vertices()]
    alive = set(g.vertices())
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        alive.remove(v)
        for u in g.neighbors(v):
            if u in alive:
                deg[u] -= 1
    return best


def is_connected(g: Graph, vertices: Iterable[int] | None = None) -> bool:
    members = set(g.vertices()) if vertices is None else set(vertices)
    if not members:
        return True
    allowed = mask_of(members)
    start = min(members)
    seen = 1 << start
    frontier = [start]
    while frontier:
        v = frontier.pop()
        new = g.mask(v) & allowed & ~seen
        seen |= new
        frontier.extend(_bits(new))
    return seen == allowed


def to_dot(g: Graph, labels: Sequence[str] | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        if labels is not None:
            lines.append(f'  {v} [label="{labels[v]}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
