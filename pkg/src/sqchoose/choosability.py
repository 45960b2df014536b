"""Exact list coloring: an L-colorability solver, bad-assignment search, and
a brute-force list chromatic number for tiny graphs.

Search for bad k-assignments is exhaustive over a reduced space. If some
k-assignment L is bad for G, shrink G to a vertex-minimal induced subgraph H
on which L is still bad. Then H is connected, every vertex of H has degree
at least k in H (otherwise color H - v first and v last), and no color in
L(v) is missing from all of v's neighbors' lists (otherwise the same
argument with that color). Conversely a bad assignment on any induced
subgraph extends to G with arbitrary lists elsewhere. So it suffices to
enumerate such "cores" H and, on each, assignments in which every color is
shared with a neighbor. Colors are generated in first-use order, which
removes most color renamings, and a core never needs more than k|H|/2
colors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterator, Mapping, Sequence

from .errors import ContractViolation, SizeGuardError
from .graph import Graph, PartitionCertificate, _bits, degeneracy, induced_subgraph, is_connected, mask_of

COLORABLE = "colorable"
UNCOLORABLE = "uncolorable"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "lists", tuple(frozenset(x) for x in self.lists))
        for v, lst in enumerate(self.lists):
            if any((not isinstance(c, int)) or c < 0 for c in lst):
                raise ContractViolation(f"list of vertex {v} has a color that is not a nonnegative integer")

    @classmethod
    def uniform(cls, vertex_count: int, colors) -> "ListAssignment":
        return cls(tuple(frozenset(colors) for _ in range(vertex_count)))

    def __len__(self) -> int:
        return len(self.lists)

    def palette(self) -> list[int]:
        return sorted(set().union(*self.lists)) if self.lists else []

    def to_json(self) -> dict:
        return {"lists": {str(v): sorted(lst) for v, lst in enumerate(self.lists)}}

    @classmethod
    def from_json(cls, data: Mapping, vertex_count: int | None = None) -> "ListAssignment":
        raw = data["lists"]
        if isinstance(raw, list):
            return cls(tuple(frozenset(x) for x in raw))
        keys = sorted(int(key) for key in raw)
        count = vertex_count if vertex_count is not None else (keys[-1] + 1 if keys else 0)
        if keys != list(range(count)):
            missing = sorted(set(range(count)) - set(keys))
            raise ContractViolation(f"no list given for vertices {missing}")
        return cls(tuple(frozenset(raw[str(v)]) for v in range(count)))


@dataclass(frozen=True)
class SolveResult:
    status: str
    coloring: tuple[int, ...] | None = None
    nodes: int = 0


def is_proper_coloring(g: Graph, coloring: Sequence[int], lists: ListAssignment | None = None) -> bool:
    """Independent validator: no monochromatic edge, and colors drawn from lists if given."""
    if len(coloring) != g.vertex_count:
        return False
    if any(coloring[u] == coloring[v] for u, v in g.edges()):
        return False
    if lists is not None:
        return all(coloring[v] in lists.lists[v] for v in g.vertices())
    return True


class _BudgetExceeded(Exception):
    pass


def solver_order(g: Graph) -> list[int]:
    """Descending degree, ties by index."""
    return sorted(g.vertices(), key=lambda v: (-g.degree(v), v))


def _solve_masks(g: Graph, order: Sequence[int], live: list[int], budget: int) -> tuple[list[int] | None, int]:
    """Backtracking with forward checking over per-vertex color bitmasks.

    ``live`` is consumed. Returns (color bit per vertex or None, nodes used).
    """
    pos = {v: p for p, v in enumerate(order)}
    later = [[u for u in g.neighbors(v) if pos[u] > pos[v]] for v in g.vertices()]
    color = [-1] * g.vertex_count
    nodes = 0
    if any(x == 0 for x in live):
        return None, 0

    def dfs(p: int) -> bool:
        nonlocal nodes
        if p == len(order):
            return True
        v = order[p]
        choices = live[v]
        while choices:
            low = choices & -choices
            choices ^= low
            nodes += 1
            if budget and nodes > budget:
                raise _BudgetExceeded
            changed = []
            ok = True
            for u in later[v]:
                if live[u] & low:
                    live[u] ^= low
                    changed.append(u)
                    if not live[u]:
                        ok = False
                        break
            if ok:
                color[v] = low.bit_length() - 1
                if dfs(p + 1):
                    return True
            for u in changed:
                live[u] |= low
        return False

    found = dfs(0)
    return (color if found else None), nodes


def is_l_colorable(g: Graph, lists: ListAssignment, budget: int = 0) -> SolveResult:
    """Decide whether ``g`` has a proper coloring from ``lists``.

    ``budget`` caps the number of search nodes (0 = unlimited); hitting it
    yields ``unknown``.
    """
    if len(lists) != g.vertex_count:
        raise ContractViolation(f"{len(lists)} lists given for {g.vertex_count} vertices")
    palette = lists.palette()
    bit = {c: i for i, c in enumerate(palette)}
    live = [mask_of(bit[c] for c in lst) for lst in lists.lists]
    try:
        found, nodes = _solve_masks(g, solver_order(g), live, budget)
    except _BudgetExceeded:
        return SolveResult(UNKNOWN, None, budget)
    if found is None:
        return SolveResult(UNCOLORABLE, None, nodes)
    coloring = tuple(palette[b] for b in found)
    if not is_proper_coloring(g, coloring, lists):
        raise AssertionError("solver produced an invalid coloring")
    return SolveResult(COLORABLE, coloring, nodes)


def naive_l_colorable(g: Graph, lists: ListAssignment) -> bool:
    """Reference check by enumerating every coloring in the product of the lists."""
    edges = g.edges()
    for coloring in product(*(sorted(lst) for lst in lists.lists)):
        if all(coloring[u] != coloring[v] for u, v in edges):
            return True
    return False


def chromatic_number(g: Graph) -> int:
    for k in range(0 if g.vertex_count == 0 else 1, g.vertex_count + 1):
        if is_l_colorable(g, ListAssignment.uniform(g.vertex_count, range(k))).status == COLORABLE:
            return k
    return g.vertex_count


def color_from_partition(g: Graph, cert: PartitionCertificate) -> tuple[int, ...]:
    """Color each vertex by the index of its part; parts must be independent in ``g``."""
    cert.check_covers(g)
    for idx, part in enumerate(cert.parts):
        pm = mask_of(part)
        for v in sorted(part):
            bad = g.mask(v) & pm
            if bad:
                u = _bits(bad)[0]
                raise ContractViolation(f"part {idx} is not independent: edge ({min(u, v)}, {max(u, v)})")
    index = cert.part_index()
    return tuple(index[v] for v in g.vertices())


# -- bad assignment search ---------------------------------------------------------

@dataclass(frozen=True)
class BadSearchResult:
    assignment: ListAssignment | None
    exhausted: bool
    candidates: int
    reason: str


def candidate_cores(g: Graph, k: int) -> list[tuple[int, ...]]:
    """Connected vertex sets of size > k whose induced subgraph has minimum degree >= k."""
    # Any such set lies inside the k-core, so peel that first.
    alive = set(g.vertices())
    changed = True
    while changed:
        changed = False
        am = mask_of(alive)
        for v in sorted(alive):
            if (g.mask(v) & am).bit_count() < k:
                alive.discard(v)
                changed = True
    base = sorted(alive)
    cores = []
    for size in range(k + 1, len(base) + 1):
        for subset in combinations(base, size):
            sm = mask_of(subset)
            if all((g.mask(v) & sm).bit_count() >= k for v in subset) and is_connected(g, subset):
                cores.append(subset)
    return cores


def _core_assignments(h: Graph, k: int, cap: int) -> Iterator[list[int]]:
    """Shared-color assignments of k-lists on ``h`` with colors in first-use order."""
    order = solver_order(h)
    pos = {v: p for p, v in enumerate(order)}
    has_later = [any(pos[u] > pos[v] for u in h.neighbors(v)) for v in h.vertices()]
    closers: list[list[int]] = [[] for _ in order]
    for v in h.vertices():
        last = max([pos[v]] + [pos[u] for u in h.neighbors(v)])
        closers[last].append(v)
    lists = [0] * h.vertex_count

    def shared(u: int) -> bool:
        seen = 0
        for x in h.neighbors(u):
            seen |= lists[x]
        return not (lists[u] & ~seen)

    def rec(p: int, used: int) -> Iterator[list[int]]:
        if p == len(order):
            yield lists
            return
        v = order[p]
        for a in range(min(k, used), -1, -1):
            new = k - a
            if new and not has_later[v]:
                continue
            if used + new > cap:
                continue
            fresh = mask_of(range(used, used + new))
            for old in combinations(range(used), a):
                lists[v] = mask_of(old) | fresh
                if all(shared(u) for u in closers[p]):
                    yield from rec(p + 1, used + new)
        lists[v] = 0

    yield from rec(0, 0)


def search_bad_assignment(g: Graph, k: int, palette_cap: int | None = None,
                          budget: int = 0) -> BadSearchResult:
    """Look for k-lists on ``g`` that admit no proper coloring.

    ``budget`` caps the number of candidate assignments tested (0 =
    unlimited). ``exhausted`` is True when the reduced space was fully
    explored without success, which proves that no bad assignment within the
    palette cap exists.
    """
    if k < 1:
        raise ContractViolation("list size k must be at least 1")
    cap = k * g.vertex_count if palette_cap is None else palette_cap
    if cap < k:
        raise ContractViolation(f"palette cap {cap} is smaller than the list size {k}")
    if k > degeneracy(g):
        return BadSearchResult(None, True, 0, "degeneracy")
    constant = ListAssignment.uniform(g.vertex_count, range(k))
    if is_l_colorable(g, constant).status == UNCOLORABLE:
        return BadSearchResult(constant, False, 1, "constant-lists")
    tested = 1
    for core in candidate_cores(g, k):
        h, index = induced_subgraph(g, core)
        order = solver_order(h)
        for lists in _core_assignments(h, k, min(cap, k * len(core) // 2)):
            if budget and tested >= budget:
                return BadSearchResult(None, False, tested, "budget")
            tested += 1
            found, _ = _solve_masks(h, order, list(lists), 0)
            if found is None:
                full = []
                for v in g.vertices():
                    full.append(frozenset(_bits(lists[index[v]])) if v in index else frozenset(range(k)))
                assignment = ListAssignment(tuple(full))
                if is_l_colorable(g, assignment).status != UNCOLORABLE:
                    raise AssertionError("core assignment did not extend to a bad assignment")
                return BadSearchResult(assignment, False, tested, "core-search")
    return BadSearchResult(None, True, tested, "exhausted")


def find_bad_assignment(g: Graph, k: int, palette_cap: int | None = None,
                        budget: int = 0) -> ListAssignment | None:
    return search_bad_assignment(g, k, palette_cap, budget).assignment


# -- oracle ---------------------------------------------------------------------------

def default_palette_cap(k: int, vertex_count: int) -> int:
    return k * vertex_count


@dataclass(frozen=True)
class OracleResult:
    list_chromatic: int | None  # None when undecided or above max_k
    chromatic: int
    status: str  # "exact" | "above-max-k" | "unknown"
    certificate: ListAssignment | None  # bad (list_chromatic - 1)-assignment
    searches: tuple[dict, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "list_chromatic": self.list_chromatic,
            "chromatic": self.chromatic,
            "status": self.status,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "searches": list(self.searches),
        }


def list_chromatic_oracle(g: Graph, max_k: int = 4,
                          palette_cap_rule: Callable[[int, int], int] = default_palette_cap,
                          size_guard: int = 8, budget: int = 0) -> OracleResult:
    """Least k <= max_k for which no bad k-assignment exists, by exhaustive search."""
    if g.vertex_count > size_guard:
        raise SizeGuardError(f"{g.vertex_count} vertices exceeds the oracle size guard of {size_guard}")
    if max_k < 1:
        raise ContractViolation("max_k must be at least 1")
    chi = chromatic_number(g)
    last_bad = None
    searches = []
    for k in range(1, max_k + 1):
        res = search_bad_assignment(g, k, palette_cap_rule(k, g.vertex_count), budget)
        searches.append({"k": k, "bad_found": res.assignment is not None, "exhausted": res.exhausted,
                         "candidates": res.candidates, "reason": res.reason})
        if res.assignment is not None:
            last_bad = res.assignment
            continue
        if res.exhausted:
            if k < chi:
                raise AssertionError("list chromatic number below chromatic number")
            return OracleResult(k, chi, "exact", last_bad, tuple(searches))
        return OracleResult(None, chi, "unknown", last_bad, tuple(searches))
    return OracleResult(None, chi, "above-max-k", last_bad, tuple(searches))
