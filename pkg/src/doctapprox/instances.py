"""Parity (A-DOCT) and PSI instances with the polynomial odd-cycle test."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Digraph, strong_components
from .perm import LabeledDigraph


@dataclass(frozen=True)
class ParityInstance:
    """Digraph with 0/1 arc labels, positive vertex weights and a budget."""

    vertex_count: int
    arcs: tuple[tuple[int, int, int], ...]
    weights: tuple[int, ...]
    budget: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple((int(u), int(v), int(b)) for u, v, b in self.arcs))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.weights) != self.vertex_count:
            raise ValueError("one weight per vertex required")
        for v, w in enumerate(self.weights):
            if not 1 <= w <= 2 * self.budget + 1:
                raise ValueError(f"weight {w} of vertex {v} outside [1, 2k+1]")
        for u, v, b in self.arcs:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"arc ({u},{v}) out of range")
            if b not in (0, 1):
                raise ValueError(f"arc label {b} not in {{0,1}}")

    @property
    def graph(self) -> Digraph:
        return Digraph(self.vertex_count, tuple((u, v) for u, v, _ in self.arcs))

    def weight(self, X: Iterable[int]) -> int:
        return sum(self.weights[v] for v in set(X))

    def lifted(self) -> LabeledDigraph:
        """The two-label view: label 1 swaps the labels, label 0 keeps them."""
        return LabeledDigraph(
            self.vertex_count, 2, tuple((u, v, (1, 0) if b else (0, 1)) for u, v, b in self.arcs)
        )


def odd_closed_walk_components(
    vertex_count: int, arcs: Iterable[tuple[int, int, int]], removed: frozenset[int] = frozenset()
) -> list[frozenset[int]]:
    """Strong components (outside ``removed``) that carry a closed walk of odd label sum."""
    out: dict[int, list[tuple[int, int]]] = {v: [] for v in range(vertex_count) if v not in removed}
    for u, v, b in arcs:
        if u in out and v in out:
            out[u].append((v, b))
    succ = {u: [v for v, _ in lst] for u, lst in out.items()}
    bad = []
    for comp in strong_components(out.keys(), succ):
        cs = set(comp)
        root = comp[0]
        par = {root: 0}
        queue = deque([root])
        odd = False
        while queue and not odd:
            w = queue.popleft()
            for x, b in out[w]:
                if x not in cs:
                    continue
                want = par[w] ^ b
                if x not in par:
                    par[x] = want
                    queue.append(x)
                elif par[x] != want:
                    odd = True
                    break
        if odd:
            bad.append(frozenset(comp))
    return bad


def has_odd_labeled_cycle(inst: ParityInstance, removed: Iterable[int] = ()) -> bool:
    return bool(odd_closed_walk_components(inst.vertex_count, inst.arcs, frozenset(removed)))


def has_odd_cycle(D: Digraph, removed: Iterable[int] = ()) -> bool:
    arcs = tuple((u, v, 1) for u, v in D.arcs if u in D.vertices and v in D.vertices)
    gone = frozenset(removed) | (frozenset(range(D.vertex_count)) - D.vertices)
    return bool(odd_closed_walk_components(D.vertex_count, arcs, gone))


@dataclass(frozen=True)
class PsiInstance:
    """Host graph ``H`` colored by the vertices of the pattern graph ``G``."""

    g_count: int
    g_edges: frozenset[frozenset[int]]
    h_color: dict[int, int] = field(hash=False)
    h_edges: frozenset[frozenset[int]] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "g_edges", frozenset(frozenset(e) for e in self.g_edges))
        object.__setattr__(self, "h_edges", frozenset(frozenset(e) for e in self.h_edges))
        for e in self.g_edges:
            if len(e) != 2 or not all(0 <= a < self.g_count for a in e):
                raise ValueError(f"bad pattern edge {sorted(e)}")
        for h, c in self.h_color.items():
            if not 0 <= c < self.g_count:
                raise ValueError(f"host vertex {h} has color {c} outside the pattern")
        for e in self.h_edges:
            if len(e) != 2 or not all(a in self.h_color for a in e):
                raise ValueError(f"bad host edge {sorted(e)}")

    def g_degree(self, g: int) -> int:
        return sum(1 for e in self.g_edges if g in e)

    def color_class(self, g: int) -> list[int]:
        return sorted(h for h, c in self.h_color.items() if c == g)

    def is_colorful_mapping(self, phi: dict[int, int]) -> bool:
        for g in range(self.g_count):
            if g not in phi or self.h_color.get(phi[g]) != g:
                return False
        return all(frozenset(phi[a] for a in e) in self.h_edges for e in self.g_edges)
