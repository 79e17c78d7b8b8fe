"""Exact Node Unique Label Cover with a forbidden set, on symmetric labeled digraphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .perm import LabeledDigraph, find_colorful_walk, has_colorful_walk, is_symmetric


@dataclass(frozen=True)
class UlcInstance:
    graph: LabeledDigraph
    budget: int
    forbidden: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))


def packing_lower_bound(D: LabeledDigraph, forbidden: Iterable[int] = ()) -> float:
    """Greedy count of colorful walks pairwise disjoint outside ``forbidden``.

    Returns ``inf`` when some colorful walk lies entirely inside ``forbidden``.
    """
    forbidden = frozenset(forbidden)
    count = 0
    G = D
    while True:
        wit = find_colorful_walk(G)
        if wit is None:
            return count
        free = wit.vertex_set(G) - forbidden
        if not free:
            return float("inf")
        count += 1
        G = G.remove(free)


def min_cover_branching(D: LabeledDigraph, forbidden: frozenset[int], budget: int) -> frozenset[int] | None:
    """Lexicographically smallest minimum cover avoiding ``forbidden`` of size at most ``budget``."""
    lb = packing_lower_bound(D, forbidden)
    if lb > budget:
        return None
    for level in range(int(lb), budget + 1):
        found: list[frozenset[int]] = []
        seen: set[frozenset[int]] = set()

        def rec(removed: frozenset[int], left: int) -> None:
            if removed in seen:
                return
            seen.add(removed)
            G = D.remove(removed)
            wit = find_colorful_walk(G)
            if wit is None:
                found.append(removed)
                return
            if left == 0:
                return
            for v in sorted(wit.vertex_set(G) - forbidden):
                rec(removed | {v}, left - 1)

        rec(frozenset(), level)
        if found:
            return min(found, key=lambda S: (len(S), sorted(S)))
    return None


def solve_node_ulc(inst: UlcInstance) -> frozenset[int] | None:
    D = inst.graph
    if not is_symmetric(D):
        raise ValueError("graph is not closed under doubling")
    if not inst.forbidden <= D.vertices:
        raise ValueError("forbidden set not contained in the graph")
    if not has_colorful_walk(D):
        return frozenset()
    return min_cover_branching(D, inst.forbidden, inst.budget)
