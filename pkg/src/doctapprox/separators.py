"""Vertex cuts, important separators and skew separators."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .graph import Digraph, reachable_from

INF = 1 << 30


class Inseparable(ValueError):
    """Raised when sources reach targets through undeletable vertices only."""


class _Network:
    """Unit vertex capacities via in/out splitting; ``2v`` is ``v_in`` and ``2v+1`` is ``v_out``."""

    def __init__(self, D: Digraph, X: frozenset[int], Y: frozenset[int], undeletable: frozenset[int]):
        self.D = D
        self.s = 2 * D.vertex_count
        self.t = self.s + 1
        cap: dict[int, dict[int, int]] = {self.s: {}, self.t: {}}
        for v in D.vertices:
            cap[2 * v] = {}
            cap[2 * v + 1] = {}
        hard = X | Y | undeletable

        def add(a: int, b: int, c: int) -> None:
            cap[a][b] = cap[a].get(b, 0) + c
            cap[b].setdefault(a, 0)

        for v in D.vertices:
            add(2 * v, 2 * v + 1, INF if v in hard else 1)
        for u, v in D.arcs:
            if u != v:
                add(2 * u + 1, 2 * v, INF)
        for x in X:
            add(self.s, 2 * x, INF)
        for y in Y:
            add(2 * y + 1, self.t, INF)
        self.cap = cap
        self.flow = 0

    def _augment(self) -> bool:
        cap, s, t = self.cap, self.s, self.t
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            a = queue.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if t not in parent:
            return False
        b = t
        while parent[b] is not None:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        self.flow += 1
        return True

    def run(self, limit: int) -> int:
        while self.flow < limit and self._augment():
            pass
        return self.flow

    def can_reach_sink(self) -> set[int]:
        rev: dict[int, list[int]] = {a: [] for a in self.cap}
        for a, nb in self.cap.items():
            for b, c in nb.items():
                if c > 0:
                    rev[b].append(a)
        seen = {self.t}
        queue = deque([self.t])
        while queue:
            b = queue.popleft()
            for a in rev[b]:
                if a not in seen:
                    seen.add(a)
                    queue.append(a)
        return seen

    def source_side(self) -> set[int]:
        seen = {self.s}
        queue = deque([self.s])
        while queue:
            a = queue.popleft()
            for b, c in self.cap[a].items():
                if c > 0 and b not in seen:
                    seen.add(b)
                    queue.append(b)
        return seen


def _check_separable(D: Digraph, X: frozenset[int], Y: frozenset[int], undeletable: frozenset[int]) -> None:
    hard = X | Y | undeletable
    reach = reachable_from(D.induced(hard), X)
    if reach & Y:
        raise Inseparable("sources reach targets through undeletable vertices")


def _prepare(D: Digraph, X: Iterable[int], Y: Iterable[int], undeletable: Iterable[int]):
    X, Y, U = frozenset(X), frozenset(Y), frozenset(undeletable)
    if X & Y:
        raise ValueError("source and target sets intersect")
    return X & D.vertices, Y & D.vertices, U & D.vertices


def min_vertex_cut(
    D: Digraph, X: Iterable[int], Y: Iterable[int], k: int, undeletable: Iterable[int] = ()
) -> frozenset[int] | None:
    """A minimum X-Y vertex separator avoiding ``X``, ``Y`` and ``undeletable`` if its size is at most ``k``."""
    X, Y, U = _prepare(D, X, Y, undeletable)
    _check_separable(D, X, Y, U)
    net = _Network(D, X, Y, U)
    if net.run(k + 1) > k:
        return None
    side = net.source_side()
    return frozenset(v for v in D.vertices if 2 * v in side and 2 * v + 1 not in side)


def is_separator(D: Digraph, X: Iterable[int], Y: Iterable[int], S: Iterable[int]) -> bool:
    return not (reachable_from(D.remove(S), X) & frozenset(Y))


def important_separators(
    D: Digraph, X: Iterable[int], Y: Iterable[int], k: int, undeletable: Iterable[int] = ()
) -> list[frozenset[int]]:
    """All important X-Y separators of size at most ``k``, sorted by size then vertex order."""
    X, Y, U = _prepare(D, X, Y, undeletable)
    _check_separable(D, X, Y, U)
    candidates: set[frozenset[int]] = set()

    def rec(src: frozenset[int], deleted: frozenset[int], budget: int) -> None:
        G = D.remove(deleted)
        net = _Network(G, src, Y, U)
        lam = net.run(budget + 1)
        if lam > budget:
            return
        if lam == 0:
            candidates.add(deleted)
            return
        to_sink = net.can_reach_sink()
        cut = sorted(v for v in G.vertices if 2 * v not in to_sink and 2 * v + 1 in to_sink)
        far = frozenset(v for v in G.vertices if 2 * v + 1 not in to_sink)
        v = cut[0]
        rec(far, deleted | {v}, budget - 1)
        try:
            _check_separable(G, far | {v}, Y, U)
        except Inseparable:
            return
        rec(far | {v}, deleted, budget)

    rec(X, frozenset(), k)
    minimal = [S for S in candidates if _is_minimal(D, X, Y, S)]
    reach = {S: reachable_from(D.remove(S), X) for S in minimal}
    result = [
        S
        for S in minimal
        if not any(T != S and len(T) <= len(S) and reach[S] <= reach[T] for T in minimal)
    ]
    result.sort(key=lambda S: (len(S), sorted(S)))
    return result


def _is_minimal(D: Digraph, X: frozenset[int], Y: frozenset[int], S: frozenset[int]) -> bool:
    if not is_separator(D, X, Y, S):
        return False
    return all(not is_separator(D, X, Y, S - {v}) for v in S)


def _direct_violation(D: Digraph, parts: Sequence[frozenset[int]]) -> bool:
    pos = {v: i for i, part in enumerate(parts) for v in part}
    return any(u in pos and v in pos and pos[u] < pos[v] for u, v in D.arcs)


def skew_separator(D: Digraph, parts: Sequence[Iterable[int]], k: int) -> frozenset[int] | None:
    """A set of at most ``k`` vertices outside the parts killing every earlier-to-later path."""
    parts = [frozenset(p) for p in parts]
    union: frozenset[int] = frozenset().union(*parts) if parts else frozenset()
    if sum(len(p) for p in parts) != len(union):
        raise ValueError("parts are not pairwise disjoint")
    if any(not p for p in parts):
        raise ValueError("empty part")
    if _direct_violation(D, parts):
        raise Inseparable("arc from an earlier part to a later part")

    def rec(G: Digraph, idx: int, budget: int) -> frozenset[int] | None:
        if idx >= len(parts) - 1:
            return frozenset()
        rest = frozenset().union(*parts[idx + 1 :])
        try:
            seps = important_separators(G, parts[idx], rest, budget, undeletable=union)
        except Inseparable:
            return None
        for S in seps:
            sub = rec(G.remove(S), idx + 1, budget - len(S))
            if sub is not None:
                return S | sub
        return None

    return rec(D, 0, k)
