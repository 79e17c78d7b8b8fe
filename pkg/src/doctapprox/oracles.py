"""Exhaustive solvers used as ground truth."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Digraph, reachable_from
from .instances import ParityInstance, PsiInstance, has_odd_cycle, odd_closed_walk_components
from .perm import LabeledDigraph, is_colorful_walk_cover

WITNESS_CAP = 100_000


@dataclass(frozen=True)
class WeightedCoverResult:
    min_weight: int
    witnesses: frozenset[frozenset[int]]
    truncated: bool = False


def brute_cwc(D: LabeledDigraph, max_size: int | None = None) -> WeightedCoverResult | None:
    """Minimum colorful walk covers by subset enumeration; ``None`` if larger than ``max_size``."""
    verts = sorted(D.vertices)
    limit = len(verts) if max_size is None else min(max_size, len(verts))
    for size in range(limit + 1):
        found = [frozenset(c) for c in itertools.combinations(verts, size) if is_colorful_walk_cover(D, c)]
        if found:
            return WeightedCoverResult(size, frozenset(found[:WITNESS_CAP]), len(found) > WITNESS_CAP)
    return None


def brute_doct(D: Digraph, max_size: int | None = None) -> int | None:
    """Minimum number of vertices meeting every directed odd cycle."""
    verts = sorted(D.vertices)
    limit = len(verts) if max_size is None else min(max_size, len(verts))
    for size in range(limit + 1):
        if any(not has_odd_cycle(D, c) for c in itertools.combinations(verts, size)):
            return size
    return None


def brute_arc_doct(D: Digraph, max_size: int | None = None) -> int | None:
    """Minimum number of arcs meeting every directed odd cycle."""
    m = len(D.arcs)
    limit = m if max_size is None else min(max_size, m)
    for size in range(limit + 1):
        for combo in itertools.combinations(range(m), size):
            drop = set(combo)
            rest = tuple(a for i, a in enumerate(D.arcs) if i not in drop)
            if not has_odd_cycle(Digraph(D.vertex_count, rest, D.vertices)):
                return size
    return None


def _odd_walk(inst: ParityInstance, removed: frozenset[int], light: frozenset[int]) -> list[int] | None:
    """Vertices of an odd closed walk in ``inst - removed`` with few light vertices.

    ``[]`` means no odd walk survives. Rooted at the heaviest vertex of an odd component.
    """
    comps = odd_closed_walk_components(inst.vertex_count, inst.arcs, removed)
    if not comps:
        return []
    comp = comps[0]
    root = max(comp, key=lambda v: (inst.weights[v], -v))
    out: dict[int, list[tuple[int, int]]] = {v: [] for v in comp}
    for u, v, b in inst.arcs:
        if u in comp and v in comp:
            out[u].append((v, b))
    start, goal = (root, 0), (root, 1)
    dist = {start: 0}
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    dq = deque([start])
    while dq:
        s = dq.popleft()
        w, p = s
        if s == goal:
            break
        for x, b in out[w]:
            t = (x, p ^ b)
            c = dist[s] + (1 if x in light else 0)
            if c < dist.get(t, 1 << 30):
                dist[t] = c
                parent[t] = s
                if x in light:
                    dq.append(t)
                else:
                    dq.appendleft(t)
    verts = {root}
    s = goal
    while s != start:
        verts.add(s[0])
        s = parent[s]
    return sorted(verts)


def adoct_minimal_covers(inst: ParityInstance, max_weight: int) -> set[frozenset[int]]:
    """Every inclusion-minimal odd-cycle transversal of weight at most ``max_weight``.

    Hitting-set branching over odd closed walks, restricted to vertices light enough to fit.
    """
    light = frozenset(v for v in range(inst.vertex_count) if inst.weights[v] <= max_weight)
    leaves: set[frozenset[int]] = set()
    seen: set[frozenset[int]] = set()
    stack = [frozenset()]
    while stack:
        X = stack.pop()
        if X in seen:
            continue
        seen.add(X)
        walk = _odd_walk(inst, X, light)
        if not walk:
            leaves.add(X)
            continue
        wX = inst.weight(X)
        for v in walk:
            if v in light and wX + inst.weights[v] <= max_weight:
                stack.append(X | {v})
    return {X for X in leaves if not any(Y < X for Y in leaves)}


def brute_adoct(inst: ParityInstance, max_weight: int) -> WeightedCoverResult | None:
    """Minimum weight of an odd-labeled-cycle transversal, with all optimal witnesses."""
    minimal = adoct_minimal_covers(inst, max_weight)
    if not minimal:
        return None
    best = min(inst.weight(X) for X in minimal)
    wit = sorted((X for X in minimal if inst.weight(X) == best), key=sorted)
    return WeightedCoverResult(best, frozenset(wit[:WITNESS_CAP]), len(wit) > WITNESS_CAP)


def adoct_covers_upto(inst: ParityInstance, max_weight: int) -> tuple[set[frozenset[int]], bool]:
    """All transversals of weight at most ``max_weight`` (upward closure of the minimal ones)."""
    light = sorted(v for v in range(inst.vertex_count) if inst.weights[v] <= max_weight)
    covers = set(adoct_minimal_covers(inst, max_weight))
    queue = deque(covers)
    while queue:
        X = queue.popleft()
        wX = inst.weight(X)
        for v in light:
            if v not in X and wX + inst.weights[v] <= max_weight:
                Y = X | {v}
                if Y not in covers:
                    if len(covers) >= WITNESS_CAP:
                        return covers, True
                    covers.add(Y)
                    queue.append(Y)
    return covers, False


def brute_skew(D: Digraph, parts: Sequence[Iterable[int]], k: int) -> frozenset[int] | None:
    """Smallest set outside the parts that kills every earlier-to-later path, if of size at most ``k``."""
    parts = [frozenset(p) for p in parts]
    union = frozenset().union(*parts) if parts else frozenset()
    free = sorted(D.vertices - union)
    for size in range(min(k, len(free)) + 1):
        for combo in itertools.combinations(free, size):
            G = D.remove(combo)
            if all(
                not (reachable_from(G, parts[i]) & frozenset().union(*parts[i + 1 :]))
                for i in range(len(parts) - 1)
            ):
                return frozenset(combo)
    return None


def brute_psi(inst: PsiInstance, cap: int = 1_000_000) -> dict[int, int] | None:
    classes = [inst.color_class(g) for g in range(inst.g_count)]
    total = 1
    for c in classes:
        total *= max(1, len(c))
    if total > cap:
        raise ValueError(f"search space {total} exceeds cap {cap}")
    if any(not c for c in classes):
        return None
    for choice in itertools.product(*classes):
        phi = dict(enumerate(choice))
        if inst.is_colorful_mapping(phi):
            return phi
    return None


def odd_cycles(inst: ParityInstance) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All directed simple cycles of odd label sum as (vertices, arc indices), rooted at their minimum vertex."""
    out: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(inst.vertex_count)}
    for idx, (u, v, b) in enumerate(inst.arcs):
        out[u].append((v, b, idx))
    found = []
    for s in range(inst.vertex_count):
        path = [s]
        arcs: list[int] = []
        on = {s}

        def dfs(u: int, parity: int) -> None:
            for v, b, idx in out[u]:
                if v == s:
                    if parity ^ b:
                        found.append((tuple(path), tuple(arcs + [idx])))
                elif v > s and v not in on:
                    on.add(v)
                    path.append(v)
                    arcs.append(idx)
                    dfs(v, parity ^ b)
                    arcs.pop()
                    path.pop()
                    on.discard(v)

        dfs(s, 0)
    return found
