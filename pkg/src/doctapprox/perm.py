"""Permutation-labeled digraphs, colorful walks, doubling, consistent labelings and bundles.

Permutations are tuples of images over ``0..ell-1``: ``p[i]`` is the image of ``i``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .graph import Digraph, strong_components

Perm = tuple[int, ...]


def identity(ell: int) -> Perm:
    return tuple(range(ell))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(first: Perm, second: Perm) -> Perm:
    """Apply ``first`` then ``second``."""
    if len(first) != len(second):
        raise ValueError("permutations over different ell")
    return tuple(second[first[i]] for i in range(len(first)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def transposition(ell: int, i: int, j: int) -> Perm:
    p = list(range(ell))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


@dataclass(frozen=True)
class LabeledDigraph:
    """Digraph whose arcs carry permutations of ``0..ell-1``.

    Duplicate arcs (same tail, head and label) are dropped on construction.
    """

    vertex_count: int
    ell: int
    arcs: tuple[tuple[int, int, Perm], ...] = ()
    vertices: frozenset[int] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise ValueError("ell must be positive")
        if self.vertices is None:
            object.__setattr__(self, "vertices", frozenset(range(self.vertex_count)))
        else:
            object.__setattr__(self, "vertices", frozenset(self.vertices))
        seen = set()
        arcs = []
        for u, v, p in self.arcs:
            p = tuple(p)
            if len(p) != self.ell or not is_permutation(p):
                raise ValueError(f"arc ({u},{v}) label {p} is not a permutation of {self.ell} points")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"arc ({u},{v}) has an endpoint outside the vertex set")
            key = (u, v, p)
            if key not in seen:
                seen.add(key)
                arcs.append(key)
        object.__setattr__(self, "arcs", tuple(arcs))

    @property
    def graph(self) -> Digraph:
        return Digraph(self.vertex_count, tuple((u, v) for u, v, _ in self.arcs), self.vertices)

    @cached_property
    def out_arcs(self) -> dict[int, list[tuple[int, Perm, int]]]:
        out: dict[int, list[tuple[int, Perm, int]]] = {v: [] for v in self.vertices}
        for idx, (u, v, p) in enumerate(self.arcs):
            out[u].append((v, p, idx))
        return out

    @cached_property
    def plain_successors(self) -> dict[int, list[int]]:
        return {u: [v for v, _, _ in lst] for u, lst in self.out_arcs.items()}

    def induced(self, keep: Iterable[int]) -> "LabeledDigraph":
        keep = frozenset(keep) & self.vertices
        arcs = tuple(a for a in self.arcs if a[0] in keep and a[1] in keep)
        return LabeledDigraph(self.vertex_count, self.ell, arcs, keep)

    def remove(self, removed: Iterable[int]) -> "LabeledDigraph":
        removed = frozenset(removed)
        if not removed & self.vertices:
            return self
        return self.induced(self.vertices - removed)

    def with_arcs(self, extra: Iterable[tuple[int, int, Perm]]) -> "LabeledDigraph":
        return LabeledDigraph(self.vertex_count, self.ell, self.arcs + tuple(extra), self.vertices)


@dataclass(frozen=True)
class ColorfulWitness:
    """A vertex ``v`` and, for each label ``i``, a closed ``v``-walk moving ``i``."""

    vertex: int
    walks: tuple[tuple[int, ...], ...]

    def vertex_set(self, D: LabeledDigraph) -> frozenset[int]:
        vs = {self.vertex}
        for walk in self.walks:
            for idx in walk:
                vs.add(D.arcs[idx][0])
                vs.add(D.arcs[idx][1])
        return frozenset(vs)


def sigma_of_walk(D: LabeledDigraph, walk: Sequence[int]) -> Perm:
    p = identity(D.ell)
    prev_head = None
    for idx in walk:
        u, v, q = D.arcs[idx]
        if prev_head is not None and u != prev_head:
            raise ValueError("walk arcs are not contiguous")
        p = compose(p, q)
        prev_head = v
    return p


def build_aux(D: LabeledDigraph) -> Digraph:
    """The layered lift: vertex ``v`` with label ``i`` becomes ``v*ell + i``."""
    ell = D.ell
    arcs = tuple((u * ell + i, v * ell + p[i]) for u, v, p in D.arcs for i in range(ell))
    verts = frozenset(v * ell + i for v in D.vertices for i in range(ell))
    return Digraph(D.vertex_count * ell, arcs, verts)


def _lift_reach(D: LabeledDigraph, u: int, alpha: int, allowed: frozenset[int] | None = None) -> set[tuple[int, int]]:
    """States ``(w, j)`` reachable from ``(u, alpha)`` by a nonempty walk inside ``allowed``."""
    out = D.out_arcs
    seen: set[tuple[int, int]] = set()
    queue: deque[tuple[int, int]] = deque()
    for w, p, _ in out[u]:
        if allowed is None or w in allowed:
            s = (w, p[alpha])
            if s not in seen:
                seen.add(s)
                queue.append(s)
    while queue:
        w, j = queue.popleft()
        for x, p, _ in out[w]:
            if allowed is not None and x not in allowed:
                continue
            s = (x, p[j])
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return seen


def walk_realizes(D: LabeledDigraph, u: int, v: int, alpha: int, beta: int, allow_empty: bool = False) -> bool:
    """Whether some ``u``-``v`` walk maps ``alpha`` to ``beta``."""
    if allow_empty and u == v and alpha == beta:
        return True
    return (v, beta) in _lift_reach(D, u, alpha)


def _moving_path(D: LabeledDigraph, v: int, i: int, comp: frozenset[int]) -> tuple[int, ...] | None:
    """Shortest nonempty closed ``v``-walk in ``comp`` sending ``i`` elsewhere, as arc indices."""
    out = D.out_arcs
    parent: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {(v, i): None}
    queue = deque([(v, i)])
    while queue:
        state = queue.popleft()
        w, j = state
        for x, p, idx in out[w]:
            if x not in comp:
                continue
            nxt = (x, p[j])
            if x == v and nxt[1] != i:
                path = [idx]
                cur = state
                while parent[cur] is not None:
                    cur, a = parent[cur]
                    path.append(a)
                return tuple(reversed(path))
            if nxt not in parent:
                parent[nxt] = (state, idx)
                queue.append(nxt)
    return None


def _moves(D: LabeledDigraph, v: int, i: int, comp: frozenset[int]) -> bool:
    out = D.out_arcs
    seen = {(v, i)}
    queue = deque(seen)
    while queue:
        w, j = queue.popleft()
        for x, p, _ in out[w]:
            if x not in comp:
                continue
            k = p[j]
            if x == v and k != i:
                return True
            if (x, k) not in seen:
                seen.add((x, k))
                queue.append((x, k))
    return False


def _components(D: LabeledDigraph) -> list[frozenset[int]]:
    comps = [frozenset(c) for c in strong_components(D.vertices, D.plain_successors)]
    comps.sort(key=min)
    return comps


def _cyclic(D: LabeledDigraph, comp: frozenset[int]) -> bool:
    if len(comp) > 1:
        return True
    (v,) = comp
    return any(w == v for w, _, _ in D.out_arcs[v])


def find_colorful_walk(D: LabeledDigraph) -> ColorfulWitness | None:
    """First colorful-walk witness in vertex order, or ``None``.

    One root per strong component suffices: a strongly connected subgraph is
    colorful for every vertex as soon as it is for one.
    """
    for comp in _components(D):
        if not _cyclic(D, comp):
            continue
        v = min(comp)
        walks = []
        for i in range(D.ell):
            path = _moving_path(D, v, i, comp)
            if path is None:
                break
            walks.append(path)
        else:
            return ColorfulWitness(v, tuple(walks))
    return None


def has_colorful_walk(D: LabeledDigraph) -> bool:
    for comp in _components(D):
        if not _cyclic(D, comp):
            continue
        v = min(comp)
        if all(_moves(D, v, i, comp) for i in range(D.ell)):
            return True
    return False


def is_colorful_walk_cover(D: LabeledDigraph, S: Iterable[int]) -> bool:
    return not has_colorful_walk(D.remove(S))


def doubling(D: LabeledDigraph) -> LabeledDigraph:
    extra = tuple((v, u, inverse(p)) for u, v, p in D.arcs)
    return D.with_arcs(extra)


def is_symmetric(D: LabeledDigraph) -> bool:
    return set(doubling(D).arcs) == set(D.arcs)


def find_consistent_labeling(D: LabeledDigraph, pinned: Mapping[int, int] | None = None) -> dict[int, int] | None:
    """A labeling ``g`` with ``p[g[u]] == g[v]`` on every arc, extending ``pinned``."""
    pinned = dict(pinned or {})
    for v, val in pinned.items():
        if not 0 <= val < D.ell:
            raise ValueError(f"pinned value {val} for vertex {v} outside label range")
        if v not in D.vertices:
            raise ValueError(f"pinned vertex {v} not in graph")
    nbrs: dict[int, list[tuple[int, Perm]]] = {v: [] for v in D.vertices}
    for u, v, p in D.arcs:
        nbrs[u].append((v, p))
        nbrs[v].append((u, inverse(p)))
    result: dict[int, int] = {}
    done: set[int] = set()
    for root in sorted(D.vertices):
        if root in done:
            continue
        comp = []
        queue = deque([root])
        done.add(root)
        while queue:
            w = queue.popleft()
            comp.append(w)
            for x, _ in nbrs[w]:
                if x not in done:
                    done.add(x)
                    queue.append(x)
        pins = [w for w in sorted(comp) if w in pinned]
        if pins:
            starts = [(pins[0], pinned[pins[0]])]
        else:
            starts = [(min(comp), val) for val in range(D.ell)]
        for start, val in starts:
            lab = _propagate(nbrs, start, val, pinned)
            if lab is not None:
                result.update(lab)
                break
        else:
            return None
    return result


def _propagate(nbrs, start: int, val: int, pinned: Mapping[int, int]) -> dict[int, int] | None:
    lab = {start: val}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for x, p in nbrs[w]:
            want = p[lab[w]]
            have = lab.get(x)
            if have is None:
                if x in pinned and pinned[x] != want:
                    return None
                lab[x] = want
                queue.append(x)
            elif have != want:
                return None
    return lab


def is_consistent(D: LabeledDigraph, labeling: Mapping[int, int]) -> bool:
    return all(p[labeling[u]] == labeling[v] for u, v, p in D.arcs)


def bundle(D: LabeledDigraph, X: Iterable[int], chi: Mapping[int, int]) -> LabeledDigraph:
    """Join every ordered pair of ``X`` by an arc whose label maps ``chi(x1)`` to ``chi(x2)``."""
    xs = sorted(set(X))
    for x in xs:
        if x not in chi:
            raise ValueError(f"chi undefined on {x}")
        if x not in D.vertices:
            raise ValueError(f"vertex {x} not in graph")
    extra = [
        (a, b, transposition(D.ell, chi[a], chi[b]))
        for a in xs
        for b in xs
        if a != b
    ]
    return D.with_arcs(extra)
