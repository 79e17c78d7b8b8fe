"""Hardness gadgets: clocks, synchronizers, the pattern-embedding reduction and related reductions."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .graph import Digraph
from .instances import ParityInstance, PsiInstance, has_odd_labeled_cycle

LIGHT = 10


class _Arena:
    """Accumulates named vertices and labeled arcs; shared roles merge by taking the heavier weight."""

    def __init__(self) -> None:
        self.weights: list[int] = []
        self.names: list[str] = []
        self.arcs: dict[tuple[int, int, int], None] = {}

    def vertex(self, name: str, weight: int, existing: int | None = None) -> int:
        if existing is not None:
            self.weights[existing] = max(self.weights[existing], weight)
            return existing
        self.weights.append(weight)
        self.names.append(name)
        return len(self.weights) - 1

    def arc(self, u: int, v: int, label: int = 0) -> None:
        self.arcs.setdefault((u, v, label), None)

    def both(self, u: int, v: int, label: int = 0) -> None:
        self.arc(u, v, label)
        self.arc(v, u, label)

    def instance(self, budget: int) -> ParityInstance:
        return ParityInstance(len(self.weights), tuple(self.arcs), tuple(self.weights), budget)


@dataclass(frozen=True)
class GadgetHandle:
    instance: ParityInstance
    role_index: dict[str, int] = field(hash=False)
    kind: str = ""
    n: int = 0
    pairs: frozenset[tuple[int, int]] = frozenset()

    def __getitem__(self, role: str) -> int:
        return self.role_index[role]

    @property
    def vertex_ids(self) -> frozenset[int]:
        return frozenset(self.role_index.values())


def _check(n: int, k: int) -> None:
    if n < 2:
        raise ValueError("gadgets need n >= 2")
    if k < 100:
        raise ValueError("gadgets need k >= 100")


def _binder(arena: _Arena, prefix: str, bind: Mapping[str, int]):
    roles: dict[str, int] = {}

    def node(role: str, weight: int) -> int:
        roles[role] = arena.vertex(prefix + role, weight, bind.get(role))
        return roles[role]

    return roles, node


def _path(arena: _Arena, seq: list[int]) -> None:
    for a, b in zip(seq, seq[1:]):
        arena.arc(a, b, 0)


def _build_forward(arena: _Arena, n: int, k: int, prefix: str = "", bind: Mapping[str, int] = {}) -> dict[str, int]:
    heavy = 2 * k + 1
    roles, node = _binder(arena, prefix, bind)
    x, y = node("x", heavy), node("y", heavy)
    rh = [node(f"r_hat[{i}]", heavy) for i in range(n + 1)]
    bh = [node(f"b_hat[{i}]", heavy) for i in range(n + 1)]
    th = [node(f"t_hat[{i},{n - i - 1}]", LIGHT) for i in range(n)]
    r = [node(f"r[{i}]", heavy) for i in range(n + 1)]
    b = [node(f"b[{i}]", heavy) for i in range(n + 1)]
    p = [None] + [node(f"p[{i}]", LIGHT) for i in range(1, n + 1)]
    a = [None] + [node(f"a[{i}]", LIGHT) for i in range(1, n + 1)]
    arena.both(x, rh[n], 1)
    arena.both(x, bh[n], 0)
    for i in range(n + 1):
        arena.both(bh[i], rh[n - i], 0)
    for i in range(n):
        arena.both(rh[i], th[i], 0)
        arena.both(bh[n - i - 1], th[i], 0)
    _path(arena, [v for i in range(n + 1) for v in ((p[i],) if i else ()) + (r[i],)])
    _path(arena, [v for i in range(n + 1) for v in ((a[i],) if i else ()) + (b[i],)])
    arena.arc(x, r[0], 0)
    arena.arc(x, b[0], 0)
    for i in range(n + 1):
        arena.arc(r[i], rh[i], 0)
        arena.arc(b[i], bh[i], 1)
    arena.arc(r[n], y, 0)
    arena.arc(b[n], y, 0)
    arena.arc(y, x, 1)
    return roles


def _build_reverse(arena: _Arena, n: int, k: int, prefix: str = "", bind: Mapping[str, int] = {}) -> dict[str, int]:
    heavy = 2 * k + 1
    roles, node = _binder(arena, prefix, bind)
    z, y = node("z", heavy), node("y", heavy)
    rh = [node(f"r_hat'[{i}]", heavy) for i in range(n + 1)]
    bh = [node(f"b_hat'[{i}]", heavy) for i in range(n + 1)]
    th = [None] + [node(f"t_hat'[{i},{n - i + 1}]", LIGHT) for i in range(1, n + 1)]
    r = [node(f"r'[{i}]", heavy) for i in range(n + 1)]
    b = [node(f"b'[{i}]", heavy) for i in range(n + 1)]
    p = [None] + [node(f"p'[{i}]", LIGHT) for i in range(1, n + 1)]
    a = [None] + [node(f"a'[{i}]", LIGHT) for i in range(1, n + 1)]
    arena.both(z, rh[0], 1)
    arena.both(z, bh[0], 0)
    for i in range(n + 1):
        arena.both(bh[i], rh[n - i], 0)
    for i in range(1, n + 1):
        arena.both(rh[i], th[i], 0)
        arena.both(bh[n - i + 1], th[i], 0)
    _path(arena, [v for i in range(n + 1) for v in ((p[i],) if i else ()) + (r[i],)])
    _path(arena, [v for i in range(n + 1) for v in ((a[i],) if i else ()) + (b[i],)])
    arena.arc(r[n], z, 0)
    arena.arc(b[n], z, 0)
    for i in range(n + 1):
        arena.arc(rh[i], r[i], 0)
        arena.arc(bh[i], b[i], 1)
    arena.arc(y, r[0], 0)
    arena.arc(y, b[0], 0)
    arena.arc(z, y, 1)
    return roles


def _build_double(arena: _Arena, n: int, k: int, prefix: str = "", bind: Mapping[str, int] = {}) -> dict[str, int]:
    fwd = _build_forward(arena, n, k, prefix, {r: v for r, v in bind.items() if r in ("x", "y")})
    rev_bind = {"y": fwd["y"]}
    if "z" in bind:
        rev_bind["z"] = bind["z"]
    rev = _build_reverse(arena, n, k, prefix, rev_bind)
    for i in range(n + 1):
        arena.arc(rev[f"r'[{i}]"], fwd[f"r[{i}]"], 1)
        arena.arc(rev[f"b'[{i}]"], fwd[f"b[{i}]"], 1)
    return {**fwd, **rev}


def _build_sync(
    arena: _Arena, n: int, k: int, pairs: frozenset[tuple[int, int]], prefix: str = "", bind: Mapping[str, int] = {}
) -> dict[str, int]:
    heavy = 2 * k + 1
    roles, node = _binder(arena, prefix, bind)
    x, y, z = node("x", heavy), node("y", heavy), node("z", heavy)
    hands = {}
    for tag in ("", "'", "~", "~'"):
        r = [node(f"r{tag}[{i}]", LIGHT) for i in range(n + 1)]
        p = [None] + [node(f"p{tag}[{i}]", LIGHT) for i in range(1, n + 1)]
        _path(arena, [v for i in range(n + 1) for v in ((p[i],) if i else ()) + (r[i],)])
        hands[tag] = r
    g = {
        (i, j): node(f"g[{i},{j}]", 1 if (i, j) in pairs else heavy)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }
    arena.arc(x, hands[""][0])
    arena.arc(x, hands["~"][0])
    arena.arc(hands[""][n], y)
    arena.arc(hands["~"][n], y)
    arena.arc(y, hands["'"][0])
    arena.arc(y, hands["~'"][0])
    arena.arc(hands["'"][n], z)
    arena.arc(hands["~'"][n], z)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i < n:
                arena.arc(g[i + 1, j], g[i, j], 0)
            if j < n:
                arena.arc(g[i, j + 1], g[i, j], 0)
    for i in range(1, n + 1):
        arena.arc(g[i, 1], hands[""][i], 1)
        arena.arc(hands["~'"][i - 1], g[n, i], 1)
        arena.arc(g[1, i], hands["~"][i], 0)
        arena.arc(hands["'"][i - 1], g[i, n], 0)
    return roles


def forward_clock(n: int, k: int) -> GadgetHandle:
    _check(n, k)
    arena = _Arena()
    roles = _build_forward(arena, n, k)
    return GadgetHandle(arena.instance(k), roles, "forward", n)


def reverse_clock(n: int, k: int) -> GadgetHandle:
    _check(n, k)
    arena = _Arena()
    roles = _build_reverse(arena, n, k)
    return GadgetHandle(arena.instance(k), roles, "reverse", n)


def double_clock(n: int, k: int) -> GadgetHandle:
    _check(n, k)
    arena = _Arena()
    roles = _build_double(arena, n, k)
    return GadgetHandle(arena.instance(k), roles, "double", n)


def _norm_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    out = frozenset((int(i), int(j)) for i, j in pairs)
    for i, j in out:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"pair ({i},{j}) outside [1,{n}]^2")
    return out


def synchronizer(n: int, k: int, pairs: Iterable[tuple[int, int]] = ()) -> GadgetHandle:
    _check(n, k)
    pairs = _norm_pairs(n, pairs)
    arena = _Arena()
    roles = _build_sync(arena, n, k, pairs)
    return GadgetHandle(arena.instance(k), roles, "sync", n, pairs)


def precise_cuts(handle: GadgetHandle) -> list[frozenset[int]]:
    """Every precise cut of the gadget, as vertex sets."""
    n, R = handle.n, handle.role_index
    cuts = []
    if handle.kind == "forward":
        for s in range(n):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i - 1 <= s and j <= n - s:
                        cuts.append(frozenset({R[f"p[{i}]"], R[f"a[{j}]"], R[f"t_hat[{s},{n - s - 1}]"]}))
    elif handle.kind == "reverse":
        for s in range(1, n + 1):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if s <= i and n - s + 1 <= j:
                        cuts.append(frozenset({R[f"p'[{i}]"], R[f"a'[{j}]"], R[f"t_hat'[{s},{n - s + 1}]"]}))
    elif handle.kind == "double":
        cuts = [double_clock_cut(handle, i) for i in range(1, n + 1)]
    elif handle.kind == "sync":
        cuts = [sync_cut(handle, i, j) for i, j in sorted(handle.pairs)]
    else:
        raise ValueError(f"unknown gadget kind {handle.kind!r}")
    return cuts


def double_clock_cut(handle: GadgetHandle, i: int) -> frozenset[int]:
    n, R = handle.n, handle.role_index
    m = n - i + 1
    return frozenset(
        R[r]
        for r in (f"p[{i}]", f"a[{m}]", f"p'[{i}]", f"a'[{m}]", f"t_hat[{i - 1},{n - i}]", f"t_hat'[{i},{m}]")
    )


def sync_cut(handle: GadgetHandle, i: int, j: int) -> frozenset[int]:
    R = handle.role_index
    return frozenset(R[r] for r in (f"p[{i}]", f"p'[{i}]", f"p~[{j}]", f"p~'[{j}]", f"g[{i},{j}]"))


def sync_quadruple(handle: GadgetHandle, i: int, j: int) -> frozenset[int]:
    R = handle.role_index
    return frozenset(R[r] for r in (f"p[{i}]", f"p'[{i}]", f"p~[{j}]", f"p~'[{j}]"))


def cuts_precisely(handle: GadgetHandle, X: Iterable[int]) -> bool:
    X = frozenset(X) & handle.vertex_ids
    return X in set(precise_cuts(handle))


def cuts_roughly(handle: GadgetHandle, X: Iterable[int]) -> bool:
    if handle.kind != "sync":
        raise ValueError("rough cuts are defined for synchronizers only")
    X = frozenset(X) & handle.vertex_ids
    if cuts_precisely(handle, X):
        return False
    n = handle.n
    return any(
        sync_quadruple(handle, i, j) <= X for i in range(1, n + 1) for j in range(1, n + 1)
    )


# Pattern-embedding reduction


@dataclass(frozen=True)
class PsiReduction:
    instance: ParityInstance
    clocks: dict[int, GadgetHandle] = field(hash=False)
    syncs: dict[tuple[int, int], GadgetHandle] = field(hash=False)
    classes: dict[int, list[int | None]] = field(hash=False)
    n: int
    source: PsiInstance
    shared: dict[str, int] = field(hash=False, default_factory=dict)


def normalize_psi(inst: PsiInstance) -> tuple[list[int], dict[int, list[int | None]], int]:
    """Kept pattern vertices, padded color classes and the common class size."""
    for g in range(inst.g_count):
        if inst.g_degree(g) > 3:
            raise ValueError(f"pattern vertex {g} has degree {inst.g_degree(g)} > 3")
    kept = []
    for g in range(inst.g_count):
        if inst.g_degree(g) == 0:
            if not inst.color_class(g):
                raise ValueError(f"no-instance: isolated pattern vertex {g} has an empty color class")
            continue
        kept.append(g)
    n = max([2] + [len(inst.color_class(g)) for g in kept])
    classes: dict[int, list[int | None]] = {}
    for g in kept:
        cls: list[int | None] = list(inst.color_class(g))
        classes[g] = cls + [None] * (n - len(cls))
    return kept, classes, n


def psi_to_adoct(inst: PsiInstance) -> PsiReduction:
    kept, classes, n = normalize_psi(inst)
    edges = sorted(tuple(sorted(e)) for e in inst.g_edges)
    k = 60 * len(kept) + len(edges)
    if len(kept) < 100:
        warnings.warn(
            f"pattern graph has {len(kept)} < 100 vertices; the construction is valid but the hardness regime assumes more",
            stacklevel=2,
        )
    arena = _Arena()
    heavy = 2 * k + 1
    shared = {r: arena.vertex(r, heavy) for r in ("x", "y", "z")}
    clock_roles = {g: _build_double(arena, n, k, f"C{g}.", shared) for g in kept}
    sync_roles = {}
    pairs_of = {}
    for g, h in edges:
        pairs = frozenset(
            (i, j)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            if classes[g][i - 1] is not None
            and classes[h][j - 1] is not None
            and frozenset((classes[g][i - 1], classes[h][j - 1])) in inst.h_edges
        )
        bind = dict(shared)
        cg, ch = clock_roles[g], clock_roles[h]
        for i in range(n + 1):
            bind[f"r[{i}]"] = cg[f"r[{i}]"]
            bind[f"r'[{i}]"] = cg[f"r'[{i}]"]
            bind[f"r~[{i}]"] = ch[f"r[{i}]"]
            bind[f"r~'[{i}]"] = ch[f"r'[{i}]"]
        for i in range(1, n + 1):
            bind[f"p[{i}]"] = cg[f"p[{i}]"]
            bind[f"p'[{i}]"] = cg[f"p'[{i}]"]
            bind[f"p~[{i}]"] = ch[f"p[{i}]"]
            bind[f"p~'[{i}]"] = ch[f"p'[{i}]"]
        sync_roles[g, h] = _build_sync(arena, n, k, pairs, f"S{g},{h}.", bind)
        pairs_of[g, h] = pairs
    instance = arena.instance(k)
    clocks = {g: GadgetHandle(instance, roles, "double", n) for g, roles in clock_roles.items()}
    syncs = {e: GadgetHandle(instance, roles, "sync", n, pairs_of[e]) for e, roles in sync_roles.items()}
    return PsiReduction(instance, clocks, syncs, classes, n, inst, shared)


def colorful_mapping_to_cover(red: PsiReduction, phi: Mapping[int, int]) -> frozenset[int]:
    """The explicit transversal built from a colorful mapping; validated before return."""
    phi = dict(phi)
    if not red.source.is_colorful_mapping(phi):
        raise ValueError("phi is not a colorful mapping")
    index = {g: red.classes[g].index(phi[g]) + 1 for g in red.clocks}
    X: set[int] = set()
    for g, handle in red.clocks.items():
        X |= double_clock_cut(handle, index[g])
    for (g, h), handle in red.syncs.items():
        X |= sync_cut(handle, index[g], index[h])
    X = frozenset(X)
    inst = red.instance
    if inst.weight(X) != inst.budget:
        raise RuntimeError(f"witness weight {inst.weight(X)} differs from budget {inst.budget}")
    if has_odd_labeled_cycle(inst, X):
        raise RuntimeError("witness leaves an odd labeled cycle")
    return X


# Annotation and arc-deletion reductions


@dataclass(frozen=True)
class AnnotationReduction:
    digraph: Digraph
    budget: int
    q_copies: dict[int, tuple[int, ...]] = field(hash=False)
    p_copies: dict[int, tuple[int, ...]] = field(hash=False)

    def __iter__(self):
        return iter((self.digraph, self.budget))

    def project(self, X: Iterable[int]) -> frozenset[int]:
        """Vertices of the source instance whose first copy lies in ``X``."""
        X = frozenset(X)
        return frozenset(v for v, qs in self.q_copies.items() if qs[0] in X)


def adoct_to_doct(inst: ParityInstance, alpha: Fraction | float | int = 1) -> AnnotationReduction:
    """Unlabeled, unweighted odd-cycle instance with the same budget."""
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    k = inst.budget
    copies = math.ceil(alpha * k) + 1
    nxt = 0
    q: dict[int, tuple[int, ...]] = {}
    for v in range(inst.vertex_count):
        q[v] = tuple(range(nxt, nxt + inst.weights[v]))
        nxt += inst.weights[v]
    p: dict[int, tuple[int, ...]] = {}
    for idx, (u, v, b) in enumerate(inst.arcs):
        if b == 0:
            p[idx] = tuple(range(nxt, nxt + copies))
            nxt += copies
    arcs = []
    for idx, (u, v, b) in enumerate(inst.arcs):
        if b == 0:
            for pa in p[idx]:
                arcs += [(qu, pa) for qu in q[u]]
                arcs += [(pa, qv) for qv in q[v]]
        else:
            arcs += [(qu, qv) for qu in q[u] for qv in q[v]]
    return AnnotationReduction(Digraph(nxt, tuple(arcs)), k, q, p)


def doct_to_arcdoct(D: Digraph) -> Digraph:
    """Split each vertex into an in/out arc and subdivide each original arc once."""
    n = D.vertex_count
    arcs = [(u, n + u) for u in sorted(D.vertices)]
    for j, (u, v) in enumerate(D.arcs):
        s = 2 * n + j
        arcs += [(n + u, s), (s, v)]
    return Digraph(2 * n + len(D.arcs), tuple(arcs))


def arcdoct_to_doct(D: Digraph, k: int) -> Digraph:
    """Subdivide each arc twice and give each original vertex ``k+1`` interchangeable copies."""
    n, c = D.vertex_count, k + 1
    base = n * c
    arcs = []
    for j, (u, v) in enumerate(D.arcs):
        s1, s2 = base + 2 * j, base + 2 * j + 1
        arcs += [(u * c + i, s1) for i in range(c)]
        arcs.append((s1, s2))
        arcs += [(s2, v * c + i) for i in range(c)]
    return Digraph(base + 2 * len(D.arcs), tuple(arcs))
