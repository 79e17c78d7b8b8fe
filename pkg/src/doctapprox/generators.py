"""Seeded random instances for tests, benchmarks and the ``gen`` command."""

from __future__ import annotations

import itertools
import random

from .graph import Digraph
from .instances import ParityInstance, PsiInstance
from .perm import LabeledDigraph, Perm, identity


def random_perm(ell: int, rng: random.Random, identity_bias: float = 0.0) -> Perm:
    if rng.random() < identity_bias:
        return identity(ell)
    p = list(range(ell))
    rng.shuffle(p)
    return tuple(p)


def random_digraph(n: int, density: float, rng: random.Random, bidirected: bool = False) -> Digraph:
    arcs = []
    for u, v in itertools.permutations(range(n), 2):
        if bidirected and u > v:
            continue
        if rng.random() < density:
            arcs.append((u, v))
            if bidirected:
                arcs.append((v, u))
    return Digraph(n, tuple(arcs))


def random_labeled_digraph(
    n: int, ell: int, density: float, rng: random.Random, identity_bias: float = 0.3
) -> LabeledDigraph:
    arcs = [
        (u, v, random_perm(ell, rng, identity_bias))
        for u, v in itertools.permutations(range(n), 2)
        if rng.random() < density
    ]
    return LabeledDigraph(n, ell, tuple(arcs))


def random_strongly_connected(n: int, ell: int, extra: float, rng: random.Random, identity_bias: float = 0.3) -> LabeledDigraph:
    """A Hamiltonian cycle in random order plus random extra arcs."""
    order = list(range(n))
    rng.shuffle(order)
    arcs = [(order[i], order[(i + 1) % n], random_perm(ell, rng, identity_bias)) for i in range(n)] if n > 1 else []
    arcs += [
        (u, v, random_perm(ell, rng, identity_bias))
        for u, v in itertools.permutations(range(n), 2)
        if rng.random() < extra
    ]
    return LabeledDigraph(n, ell, tuple(arcs))


def random_parity_instance(n: int, density: float, budget: int, rng: random.Random, max_weight: int = 3) -> ParityInstance:
    arcs = [
        (u, v, rng.randint(0, 1)) for u, v in itertools.permutations(range(n), 2) if rng.random() < density
    ]
    top = min(max_weight, 2 * budget + 1)
    return ParityInstance(n, tuple(arcs), tuple(rng.randint(1, top) for _ in range(n)), budget)


def planted_psi(g_count: int, n: int, rng: random.Random, edge_p: float = 0.5, noise: float = 0.3) -> tuple[PsiInstance, dict[int, int]]:
    """A pattern of maximum degree 3 with a planted colorful mapping into a noisy host."""
    g_edges: set[frozenset[int]] = set()
    deg = [0] * g_count
    pairs = list(itertools.combinations(range(g_count), 2))
    rng.shuffle(pairs)
    for a, b in pairs:
        if deg[a] < 3 and deg[b] < 3 and rng.random() < edge_p:
            g_edges.add(frozenset((a, b)))
            deg[a] += 1
            deg[b] += 1
    for g in range(g_count):
        if deg[g] == 0 and g_count > 1:
            h = next((x for x in range(g_count) if x != g and deg[x] < 3), None)
            if h is not None:
                g_edges.add(frozenset((g, h)))
                deg[g] += 1
                deg[h] += 1
    color: dict[int, int] = {}
    classes = []
    nxt = 0
    for g in range(g_count):
        classes.append(list(range(nxt, nxt + n)))
        for h in classes[-1]:
            color[h] = g
        nxt += n
    phi = {g: rng.choice(classes[g]) for g in range(g_count)}
    h_edges = {frozenset((phi[a], phi[b])) for a, b in (tuple(e) for e in g_edges)}
    for e in g_edges:
        a, b = tuple(e)
        for x in classes[a]:
            for y in classes[b]:
                if rng.random() < noise:
                    h_edges.add(frozenset((x, y)))
    return PsiInstance(g_count, frozenset(g_edges), color, frozenset(h_edges)), phi
