"""Realizable permutations through a removed set and the labeled torso."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .perm import LabeledDigraph, Perm, identity


@dataclass(frozen=True)
class RealizableSet:
    pair: tuple[int, int]
    perms: frozenset[Perm]


def _through_reach(D: LabeledDigraph, Z: frozenset[int], u: int, alpha: int) -> set[tuple[int, int]]:
    """Survivor states ``(v, beta)`` hit by nonempty walks from ``(u, alpha)`` with internal vertices in ``Z``."""
    out = D.out_arcs
    hits: set[tuple[int, int]] = set()
    seen: set[tuple[int, int]] = set()
    queue: deque[tuple[int, int]] = deque()

    def visit(x: int, j: int) -> None:
        if x in Z:
            if (x, j) not in seen:
                seen.add((x, j))
                queue.append((x, j))
        else:
            hits.add((x, j))

    for x, p, _ in out[u]:
        visit(x, p[alpha])
    while queue:
        w, j = queue.popleft()
        for x, p, _ in out[w]:
            visit(x, p[j])
    return hits


def cycle_cover_with(arcs: set[tuple[int, int]], ell: int, forced: tuple[int, int]) -> Perm | None:
    """A permutation using only ``arcs`` and containing ``forced``, via bipartite matching."""
    a, b = forced
    succ = {i: sorted(j for (x, j) in arcs if x == i) for i in range(ell)}
    match_right: dict[int, int] = {b: a}

    def try_left(i: int, seen: set[int]) -> bool:
        for j in succ[i]:
            if j == b or j in seen:
                continue
            seen.add(j)
            if j not in match_right or try_left(match_right[j], seen):
                match_right[j] = i
                return True
        return False

    for i in range(ell):
        if i == a:
            continue
        if not try_left(i, set()):
            return None
    perm = [0] * ell
    for j, i in match_right.items():
        perm[i] = j
    return tuple(perm)


def _perms_from_pairs(pairs: set[tuple[int, int]], ell: int, covered: set[tuple[int, int]]) -> list[Perm]:
    out: list[Perm] = []
    for arc in sorted(pairs):
        if arc in covered:
            continue
        perm = cycle_cover_with(pairs, ell, arc)
        if perm is None:
            raise RuntimeError(f"no cycle cover contains {arc}")
        out.append(perm)
        covered.update((i, perm[i]) for i in range(ell))
    return out


def realizable_perms(D: LabeledDigraph, Z: Iterable[int], u: int, v: int) -> RealizableSet:
    """Permutations covering exactly the label pairs realizable by ``u``-``v`` walks through ``Z``."""
    Z = frozenset(Z)
    if u in Z or v in Z:
        raise ValueError("endpoints must lie outside Z")
    sub = D.induced(Z | {u, v})
    pairs = set()
    for alpha in range(D.ell):
        for x, beta in _through_reach(sub, Z, u, alpha):
            if x == v:
                pairs.add((alpha, beta))
    return RealizableSet((u, v), frozenset(_perms_from_pairs(pairs, D.ell, set())))


def labeled_torso(D: LabeledDigraph, Z: Iterable[int]) -> LabeledDigraph:
    """Delete ``Z`` and add arcs preserving every label action of walks through it."""
    Z = frozenset(Z) & D.vertices
    if not Z:
        return D
    survivors = D.vertices - Z
    kept = [a for a in D.arcs if a[0] in survivors and a[1] in survivors]
    direct: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for x, y, p in kept:
        direct.setdefault((x, y), set()).update((i, p[i]) for i in range(D.ell))
    ident = identity(D.ell)
    extra = []
    for u in sorted(survivors):
        if not any(x in Z for x, _, _ in D.out_arcs[u]):
            continue
        by_target: dict[int, set[tuple[int, int]]] = {}
        for alpha in range(D.ell):
            for v, beta in _through_reach(D, Z, u, alpha):
                by_target.setdefault(v, set()).add((alpha, beta))
        for v in sorted(by_target):
            pairs = by_target[v] | direct.get((u, v), set())
            covered = set(direct.get((u, v), set()))
            for perm in _perms_from_pairs(pairs, D.ell, covered):
                if u == v and perm == ident:
                    continue
                extra.append((u, v, perm))
    return LabeledDigraph(D.vertex_count, D.ell, tuple(kept) + tuple(extra), survivors)
