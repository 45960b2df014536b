"""Deterministic graph corpora shared by several test modules."""
from itertools import combinations
from math import comb

from sqchoose.graph import (complete_bipartite, complete_graph, cycle_graph, make_graph,
                            path_graph, star_graph)


def all_graphs(nv):
    pairs = list(combinations(range(nv), 2))
    for mask in range(1 << len(pairs)):
        yield make_graph(nv, [p for b, p in enumerate(pairs) if (mask >> b) & 1])


def pseudorandom_graphs(count=100):
    """``count`` graphs on 6-8 vertices from a fixed multiplicative sequence."""
    out = []
    state = 0x2545F4914F6CDD1D
    for i in range(count):
        nv = 6 + i % 3
        bits = comb(nv, 2)
        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
        mask = state >> (64 - bits)
        pairs = list(combinations(range(nv), 2))
        out.append(make_graph(nv, [p for b, p in enumerate(pairs) if (mask >> b) & 1]))
    return out


def wheel(spokes):
    return make_graph(spokes + 1, [(0, v) for v in range(1, spokes + 1)]
                      + [(v, v % spokes + 1) for v in range(1, spokes + 1)])


def small_corpus():
    """Named graphs on at most 6 vertices."""
    return {
        "K3": complete_graph(3),
        "P4": path_graph(4),
        "C4": cycle_graph(4),
        "K4": complete_graph(4),
        "star3": star_graph(3),
        "C5": cycle_graph(5),
        "K23": complete_bipartite(2, 3),
        "K5-e": make_graph(5, [e for e in combinations(range(5), 2) if e != (0, 1)]),
        "C6": cycle_graph(6),
        "K33": complete_bipartite(3, 3),
        "W5": wheel(5),
        "prism": make_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]),
    }
