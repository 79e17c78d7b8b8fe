"""Plain digraphs, reachability and strongly connected components."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

VertexSet = frozenset


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph on ids ``0..vertex_count-1``.

    ``vertices`` is the set of present vertices; removed vertices keep their
    ids so certificates stay in the caller's id space.
    """

    vertex_count: int
    arcs: tuple[tuple[int, int], ...] = ()
    vertices: frozenset[int] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        object.__setattr__(self, "arcs", tuple((int(u), int(v)) for u, v in self.arcs))
        if self.vertices is None:
            object.__setattr__(self, "vertices", frozenset(range(self.vertex_count)))
        else:
            object.__setattr__(self, "vertices", frozenset(self.vertices))
        for v in self.vertices:
            if not 0 <= v < self.vertex_count:
                raise ValueError(f"vertex {v} out of range")
        for u, v in self.arcs:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"arc ({u},{v}) has an endpoint outside the vertex set")

    def successors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            out[u].append(v)
        return out

    def predecessors(self) -> dict[int, list[int]]:
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            inc[v].append(u)
        return inc

    def induced(self, keep: Iterable[int]) -> "Digraph":
        keep = frozenset(keep) & self.vertices
        arcs = tuple((u, v) for u, v in self.arcs if u in keep and v in keep)
        return Digraph(self.vertex_count, arcs, keep)

    def remove(self, removed: Iterable[int]) -> "Digraph":
        return self.induced(self.vertices - frozenset(removed))

    def reversed(self) -> "Digraph":
        return Digraph(self.vertex_count, tuple((v, u) for u, v in self.arcs), self.vertices)


def _bfs(adj: dict[int, list[int]], sources: Iterable[int]) -> frozenset[int]:
    seen = set(s for s in sources if s in adj)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def reachable_from(D: Digraph, X: Iterable[int]) -> frozenset[int]:
    """Vertices reachable from some vertex of ``X`` (including ``X``)."""
    return _bfs(D.successors(), X)


def co_reachable_to(D: Digraph, X: Iterable[int]) -> frozenset[int]:
    """Vertices that can reach some vertex of ``X`` (including ``X``)."""
    return _bfs(D.predecessors(), X)


def strong_components(vertices: Iterable[int], succ: dict[int, list[int]]) -> list[list[int]]:
    """Iterative Tarjan; components come out sinks first."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in sorted(vertices):
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def scc_topological(D: Digraph) -> list[frozenset[int]]:
    """Strong components ordered so that no path leads from an earlier to a later one.

    Among valid orders, the component with the smallest vertex id is emitted first.
    """
    comps = strong_components(D.vertices, D.successors())
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    out_deg = [0] * len(comps)
    preds: list[set[int]] = [set() for _ in comps]
    succs: list[set[int]] = [set() for _ in comps]
    for u, v in D.arcs:
        cu, cv = comp_of[u], comp_of[v]
        if cu != cv and cv not in succs[cu]:
            succs[cu].add(cv)
            preds[cv].add(cu)
            out_deg[cu] += 1
    heap = [(min(c), i) for i, c in enumerate(comps) if out_deg[i] == 0]
    heapq.heapify(heap)
    order: list[frozenset[int]] = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(frozenset(comps[i]))
        for p in preds[i]:
            out_deg[p] -= 1
            if out_deg[p] == 0:
                heapq.heappush(heap, (min(comps[p]), p))
    return order


def has_path(succ: dict[int, list[int]], sources: Iterable[int], targets: Sequence[int] | frozenset[int]) -> bool:
    targets = frozenset(targets)
    return bool(_bfs(succ, sources) & targets)
