"""Labeled bipartite graphs H_n, G and their iterated duplications.

All label indices (k, j, i, m, round, copy coordinates) are 1-based, exactly
as they appear in the vertex names v^{path}_{k,j}, w_{i,j}, u^{(r)}_{i,j} and
s_m. Graph vertex indices are dense and 0-based, in canonical order: P
vertices (by copy path, k, j), then Q hubs (i, j), then round hubs
(round, i, j), then S hubs (m).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import ConstructionError, ContractViolation
from .graph import Graph, PartitionCertificate, make_graph
from .latin import LatinSquare, mols_family, require_prime_order

ROLES = ("P", "Q", "U", "S")
_ROLE_RANK = {r: i for i, r in enumerate(ROLES)}


@dataclass(frozen=True)
class VertexLabel:
    role: str
    copy_path: tuple[int, ...] = ()
    k: int = 0
    j: int = 0
    i: int = 0
    round: int = 0
    m: int = 0

    def sort_key(self) -> tuple:
        r = _ROLE_RANK[self.role]
        if self.role == "P":
            return (r, self.copy_path, self.k, self.j)
        if self.role == "Q":
            return (r, (), self.i, self.j)
        if self.role == "U":
            return (r, (), self.round, self.i, self.j)
        return (r, (), self.m)

    def name(self) -> str:
        if self.role == "P":
            path = ",".join(map(str, self.copy_path))
            return f"v[{path}]_{self.k},{self.j}" if path else f"v_{self.k},{self.j}"
        if self.role == "Q":
            return f"w_{self.i},{self.j}"
        if self.role == "U":
            return f"u({self.round})_{self.i},{self.j}"
        return f"s_{self.m}"

    def to_json(self) -> dict:
        if self.role == "P":
            return {"role": "P", "copy_path": list(self.copy_path), "k": self.k, "j": self.j}
        if self.role == "Q":
            return {"role": "Q", "i": self.i, "j": self.j}
        if self.role == "U":
            return {"role": "U", "round": self.round, "i": self.i, "j": self.j}
        return {"role": "S", "m": self.m}

    @classmethod
    def from_json(cls, d: dict) -> "VertexLabel":
        role = d["role"]
        if role == "P":
            return cls("P", copy_path=tuple(d["copy_path"]), k=d["k"], j=d["j"])
        if role == "Q":
            return cls("Q", i=d["i"], j=d["j"])
        if role == "U":
            return cls("U", round=d["round"], i=d["i"], j=d["j"])
        if role == "S":
            return cls("S", m=d["m"])
        raise ConstructionError(f"unknown role {role!r}")


def P(copy_path: Sequence[int], k: int, j: int) -> VertexLabel:
    return VertexLabel("P", copy_path=tuple(copy_path), k=k, j=j)


def Q(i: int, j: int) -> VertexLabel:
    return VertexLabel("Q", i=i, j=j)


def U(rnd: int, i: int, j: int) -> VertexLabel:
    return VertexLabel("U", round=rnd, i=i, j=j)


def S(m: int) -> VertexLabel:
    return VertexLabel("S", m=m)


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: tuple[VertexLabel, ...]
    n: int
    rounds: int
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) != self.graph.vertex_count:
            raise ConstructionError("one label per vertex is required")
        index = {lab: v for v, lab in enumerate(self.labels)}
        if len(index) != len(self.labels):
            raise ConstructionError("vertex labels are not unique")
        object.__setattr__(self, "_index", index)

    def index(self, label: VertexLabel) -> int:
        return self._index[label]

    def __contains__(self, label: VertexLabel) -> bool:
        return label in self._index

    def vertices_where(self, role: str, **conds) -> list[int]:
        out = []
        for v, lab in enumerate(self.labels):
            if lab.role != role:
                continue
            if all(_label_attr(lab, key) == val for key, val in conds.items()):
                out.append(v)
        return out

    def p_vertices(self) -> list[int]:
        return self.vertices_where("P")

    def hub_vertices(self) -> list[int]:
        return [v for v, lab in enumerate(self.labels) if lab.role != "P"]

    def layer(self, l: int) -> list[int]:
        """P^l: P vertices whose first copy coordinate is ``l``."""
        return self.vertices_where("P", c1=l)

    def row_set(self, copy_path: Sequence[int], k: int) -> list[int]:
        """P_k^{copy_path}."""
        return self.vertices_where("P", copy_path=tuple(copy_path), k=k)

    def column_set(self, coord: int, l: int, m: int) -> list[int]:
        """P vertices with copy coordinate ``coord`` equal to ``l`` and column ``m``.

        ``coord=1`` gives T_{l,m}; ``coord=2`` gives the second-round sets
        of the twice-duplicated graph.
        """
        return self.vertices_where("P", **{f"c{coord}": l, "j": m})

    def role_counts(self) -> dict[str, int]:
        counts = {r: 0 for r in ROLES}
        for lab in self.labels:
            counts[lab.role] += 1
        return counts

    def to_json(self) -> dict:
        data = self.graph.to_json()
        data["prime"] = self.n
        data["rounds"] = self.rounds
        data["labels"] = [lab.to_json() for lab in self.labels]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "LabeledGraph":
        g = Graph.from_json(data)
        try:
            labels = tuple(VertexLabel.from_json(d) for d in data["labels"])
            return cls(g, labels, int(data["prime"]), int(data["rounds"]))
        except (KeyError, TypeError) as exc:
            raise ConstructionError(f"malformed labeled graph JSON: {exc}") from exc

    def with_graph(self, graph: Graph) -> "LabeledGraph":
        return LabeledGraph(graph, self.labels, self.n, self.rounds)


def _label_attr(lab: VertexLabel, key: str):
    if key.startswith("c") and key[1:].isdigit():
        pos = int(key[1:]) - 1
        return lab.copy_path[pos] if pos < len(lab.copy_path) else None
    return getattr(lab, key)


def _assemble(n: int, rounds: int, labels: Iterable[VertexLabel],
              edges: Iterable[tuple[VertexLabel, VertexLabel]]) -> LabeledGraph:
    ordered = tuple(sorted(labels, key=VertexLabel.sort_key))
    index = {lab: v for v, lab in enumerate(ordered)}
    g = make_graph(len(ordered), ((index[a], index[b]) for a, b in edges))
    return LabeledGraph(g, ordered, n, rounds)


def _hub_labels(n: int, rounds: int) -> list[VertexLabel]:
    labs = [Q(i, j) for i in range(1, n) for j in range(1, n + 1)]
    labs += [U(r, i, j) for r in range(1, rounds + 1) for i in range(1, n) for j in range(1, n + 1)]
    labs += [S(m) for m in range(1, n + 1)]
    return labs


def build_h(n: int) -> LabeledGraph:
    """H_n: rows P_k, hub families Q_1..Q_{n-1} and S; 2n^2 vertices."""
    require_prime_order(n)
    squares = mols_family(n)
    ks = range(1, n + 1)
    labels = [P((), k, j) for k in ks for j in ks] + _hub_labels(n, 0)
    edges = []
    for i, L in enumerate(squares, start=1):
        for j in ks:
            edges += [(Q(i, j), P((), k, L(j, k))) for k in ks]
    for j in ks:
        edges += [(S(j), P((), k, j)) for k in ks]
    return _assemble(n, 0, labels, edges)


def build_g(n: int) -> LabeledGraph:
    """G from the edge families E_1..E_n, E_{n+1}, E_{n+2}; n(n^2+2n-1) vertices."""
    require_prime_order(n)
    squares = mols_family(n)
    ks = range(1, n + 1)
    labels = [P((l,), k, j) for l in ks for k in ks for j in ks] + _hub_labels(n, 1)

    def T(l: int, m: int) -> list[VertexLabel]:
        return [P((l,), k, m) for k in ks]

    edges = []
    for l in ks:  # E_l
        for i, L in enumerate(squares, start=1):
            for j in ks:
                edges += [(Q(i, j), P((l,), k, L(j, k))) for k in ks]
    for i, L in enumerate(squares, start=1):  # E_{n+1}
        for j in ks:
            for l in ks:
                edges += [(U(1, i, j), y) for y in T(l, L(j, l))]
    for m in ks:  # E_{n+2}
        for l in ks:
            edges += [(S(m), y) for y in T(l, m)]
    return _assemble(n, 1, labels, edges)


def duplicate(g: Graph, v: int, copies: int = 1) -> Graph:
    """Append ``copies`` twins of ``v``: same neighborhood, not adjacent to ``v`` or each other."""
    if not 0 <= v < g.vertex_count:
        raise ContractViolation(f"vertex {v} does not exist")
    if copies < 1:
        raise ContractViolation("copies must be at least 1")
    return _duplicate_many(g, [v], copies)


def _duplicate_many(g: Graph, vertices: Sequence[int], copies: int) -> Graph:
    # Copies of vertices[a] occupy indices base + a*copies .. base + (a+1)*copies - 1.
    base = g.vertex_count
    total = base + len(vertices) * copies
    masks = list(g.masks) + [0] * (len(vertices) * copies)
    for a, v in enumerate(vertices):
        nb = g.mask(v)
        for c in range(copies):
            x = base + a * copies + c
            masks[x] = nb
            bit = 1 << x
            for u in g.neighbors(v):
                masks[u] |= bit
    return Graph(total, masks)


def duplicate_vertex(lg: LabeledGraph, v: int, copies: int,
                     labels: Sequence[VertexLabel]) -> LabeledGraph:
    """Duplicate a P vertex of a labeled graph; ``labels`` name the new twins."""
    if not 0 <= v < lg.graph.vertex_count:
        raise ContractViolation(f"vertex {v} does not exist")
    if lg.labels[v].role != "P":
        raise ContractViolation(f"only P vertices are duplicated (vertex {v} is {lg.labels[v].role})")
    if len(labels) != copies:
        raise ContractViolation("one label per copy is required")
    g = duplicate(lg.graph, v, copies)
    return LabeledGraph(g, lg.labels + tuple(labels), lg.n, lg.rounds)


def _relabel(lg: LabeledGraph) -> LabeledGraph:
    order = sorted(range(len(lg.labels)), key=lambda v: lg.labels[v].sort_key())
    new_index = {old: new for new, old in enumerate(order)}
    masks = [0] * len(order)
    for old in order:
        m = 0
        for u in lg.graph.neighbors(old):
            m |= 1 << new_index[u]
        masks[new_index[old]] = m
    return LabeledGraph(Graph(len(order), masks), tuple(lg.labels[v] for v in order), lg.n, lg.rounds)


def _attach_round_hubs(lg: LabeledGraph, rnd: int, squares: Sequence[LatinSquare]) -> LabeledGraph:
    n = lg.n
    p_by_key: dict[tuple[int, int], list[int]] = {}
    for v, lab in enumerate(lg.labels):
        if lab.role == "P":
            p_by_key.setdefault((lab.copy_path[rnd - 1], lab.j), []).append(v)
    base = lg.graph.vertex_count
    masks = list(lg.graph.masks)
    new_labels = []
    for i, L in enumerate(squares, start=1):
        for j in range(1, n + 1):
            x = base + len(new_labels)
            new_labels.append(U(rnd, i, j))
            nb = 0
            for c in range(1, n + 1):
                for y in p_by_key[(c, L(j, c))]:
                    nb |= 1 << y
                    masks[y] |= 1 << x
            masks.append(nb)
    return LabeledGraph(Graph(len(masks), masks), lg.labels + tuple(new_labels), n, rnd)


def build_iterated(n: int, rounds: int) -> LabeledGraph:
    """H_n followed by ``rounds`` layer-wise duplication rounds.

    Each round makes n-1 twins of every P vertex (the original takes copy
    coordinate 1, the twins 2..n) and then attaches n(n-1) new hubs; hub
    u^{(r)}_{i,j} sees every P vertex whose column equals L_i(j, c_r).
    """
    if rounds < 0:
        raise ContractViolation("rounds must be nonnegative")
    lg = build_h(n)
    squares = mols_family(n)
    for rnd in range(1, rounds + 1):
        p = lg.p_vertices()
        g = _duplicate_many(lg.graph, p, n - 1)
        labels = [lab if lab.role != "P" else P(lab.copy_path + (1,), lab.k, lab.j) for lab in lg.labels]
        for v in p:
            lab = lg.labels[v]
            labels += [P(lab.copy_path + (c,), lab.k, lab.j) for c in range(2, n + 1)]
        lg = _attach_round_hubs(LabeledGraph(g, tuple(labels), n, rnd), rnd, squares)
    return _relabel(lg)


def part_sets(lg: LabeledGraph) -> PartitionCertificate:
    """Rows P_k^{path}, then Q_i, then each round's hub family, then S."""
    n, t = lg.n, lg.rounds
    groups: dict[tuple, list[int]] = {}
    for v, lab in enumerate(lg.labels):
        if lab.role == "P":
            key = (0, lab.copy_path, lab.k)
        elif lab.role == "Q":
            key = (1, (), lab.i)
        elif lab.role == "U":
            key = (2, (lab.round,), lab.i)
        else:
            key = (3, (), 0)
        groups.setdefault(key, []).append(v)
    parts = PartitionCertificate(tuple(frozenset(groups[key]) for key in sorted(groups)))
    expected = n ** (t + 1) + (t + 1) * (n - 1) + 1
    if len(parts) != expected:
        raise ConstructionError(f"expected {expected} parts, found {len(parts)}")
    return parts


def expected_part_count(n: int, rounds: int) -> int:
    return n ** (rounds + 1) + (rounds + 1) * (n - 1) + 1
