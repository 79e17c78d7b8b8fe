"""Independent reference computations shared by the test modules."""

from __future__ import annotations

import itertools
import random
from collections import deque

from doctapprox.graph import Digraph
from doctapprox.perm import LabeledDigraph, compose, identity
from doctapprox.generators import random_labeled_digraph, random_perm, random_strongly_connected

T2 = (1, 0)


def cycle(n: int, ell: int = 2, perm=None, start: int = 0, total: int | None = None) -> LabeledDigraph:
    perm = T2 if perm is None else perm
    total = n if total is None else total
    arcs = [(start + i, start + (i + 1) % n, perm) for i in range(n)]
    return LabeledDigraph(total, ell, tuple(arcs))


def walk_perms(D: LabeledDigraph, u: int, internal: frozenset[int] | None = None) -> dict[int, set]:
    """Every permutation realized by a nonempty walk from ``u``, grouped by end vertex.

    Closure over (vertex, whole permutation) states. With ``internal`` given, walks may
    only continue through those vertices.
    """
    out: dict[int, set] = {}
    start = [(v, p) for v, p, _ in D.out_arcs[u]]
    seen = set(start)
    queue = deque(start)
    while queue:
        v, p = queue.popleft()
        out.setdefault(v, set()).add(p)
        if internal is not None and v not in internal:
            continue
        for w, q, _ in D.out_arcs[v]:
            s = (w, compose(p, q))
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return out


def brute_colorful(D: LabeledDigraph) -> bool:
    """Some vertex has, for every label, a closed walk moving it, inside one strong component."""
    from doctapprox.graph import strong_components

    for comp in strong_components(D.vertices, D.plain_successors):
        sub = D.induced(comp)
        for v in comp:
            perms = walk_perms(sub, v).get(v, set())
            if all(any(p[i] != i for p in perms) for i in range(D.ell)):
                return True
    return False


def naive_reach(D: Digraph, src: int) -> set[int]:
    seen = {src}
    changed = True
    while changed:
        changed = False
        for u, v in D.arcs:
            if u in seen and v not in seen:
                seen.add(v)
                changed = True
    return seen


def brute_min_cover_avoiding(D: LabeledDigraph, forbidden: frozenset[int], k: int):
    from doctapprox.perm import is_colorful_walk_cover

    free = sorted(D.vertices - forbidden)
    for size in range(min(k, len(free)) + 1):
        found = [frozenset(c) for c in itertools.combinations(free, size) if is_colorful_walk_cover(D, c)]
        if found:
            return found
    return None


def consistent_instance(n: int, ell: int, density: float, rng: random.Random):
    """A labeled digraph built around a hidden consistent labeling."""
    gamma = {v: rng.randrange(ell) for v in range(n)}
    arcs = []
    for u, v in itertools.permutations(range(n), 2):
        if rng.random() < density:
            while True:
                p = random_perm(ell, rng)
                if p[gamma[u]] == gamma[v]:
                    break
            arcs.append((u, v, p))
    return LabeledDigraph(n, ell, tuple(arcs)), gamma


__all__ = [
    "T2", "cycle", "walk_perms", "brute_colorful", "naive_reach", "brute_min_cover_avoiding",
    "consistent_instance", "random_labeled_digraph", "random_strongly_connected", "identity",
]
