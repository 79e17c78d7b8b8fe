"""The 2-approximation for colorful walk cover by iterative compression."""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .graph import Digraph, reachable_from, scc_topological
from .perm import (
    LabeledDigraph,
    bundle,
    doubling,
    find_consistent_labeling,
    has_colorful_walk,
    is_colorful_walk_cover,
    transposition,
    _lift_reach,
)
from .separators import Inseparable, skew_separator
from .shadow import MODES, CoverFamily, cover_family
from .torso import labeled_torso
from .ulc import UlcInstance, packing_lower_bound, solve_node_ulc


@dataclass(frozen=True)
class RestrictedInstance:
    graph: LabeledDigraph
    budget: int
    anchor: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "anchor", frozenset(self.anchor))


@dataclass(frozen=True)
class CompressionInstance:
    graph: LabeledDigraph
    budget: int
    known_cover: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "known_cover", frozenset(self.known_cover))


@dataclass
class SolverOutcome:
    cover: frozenset[int] | None
    stats: Counter = field(default_factory=Counter)
    wall_time: float = 0.0

    @property
    def verdict(self) -> str:
        return "Cover" if self.cover is not None else "NoWithinBudget"


@dataclass
class FamilyConfig:
    """How shadow-cover families are built inside the pipeline."""

    mode: str
    seed: int | None = None
    repetitions: int | None = None
    solution: frozenset[int] | None = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "oracle" and self.solution is None:
            raise ValueError("oracle mode needs a known solution")

    def family(self, D: LabeledDigraph, W: frozenset[int], k: int) -> CoverFamily:
        sol = None if self.solution is None else self.solution & D.vertices
        return cover_family(D.graph, W, k, self.mode, self.seed, self.repetitions, sol)


def solve_restricted(inst: RestrictedInstance, family: Iterable[frozenset[int]], stats: Counter | None = None) -> frozenset[int] | None:
    """Smallest cover avoiding the anchor, searched through the torsos of the candidate sets."""
    stats = Counter() if stats is None else stats
    D, W, k = inst.graph, inst.anchor, inst.budget
    if not has_colorful_walk(D):
        return frozenset()
    lb = packing_lower_bound(D, W)
    if lb > k:
        return None
    best: frozenset[int] | None = None
    tried: set[frozenset[int]] = set()
    for Z in family:
        if Z & W or Z in tried or not Z <= D.vertices:
            continue
        tried.add(Z)
        budget = k if best is None else len(best) - 1
        if budget < lb:
            break
        stats["shadow_candidates"] += 1
        torso = doubling(labeled_torso(D, Z))
        sol = solve_node_ulc(UlcInstance(torso, budget, W))
        if sol is not None and is_colorful_walk_cover(D, sol):
            best = sol
    return best


def _check_nice(D: LabeledDigraph, parts: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    comps = scc_topological(D.graph)
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    owners = []
    for part in parts:
        ids = {comp_of[v] for v in part}
        if len(ids) != 1:
            raise ValueError("a part is spread over several strong components")
        owners.append(ids.pop())
    if len(set(owners)) != len(owners):
        raise ValueError("two parts share a strong component")
    succ = D.plain_successors
    for i, part in enumerate(parts):
        later = frozenset().union(*parts[i + 1 :]) if i + 1 < len(parts) else frozenset()
        if later and reachable_from(D.graph, part) & later:
            raise ValueError("an earlier part reaches a later part")
    return [comps[o] for o in owners]


def solve_nice(
    D: LabeledDigraph,
    k: int,
    parts: Sequence[Iterable[int]],
    config: FamilyConfig,
    stats: Counter | None = None,
) -> frozenset[int] | None:
    """Per-component minima summed against the budget, for a graph with an empty skew separator."""
    stats = Counter() if stats is None else stats
    parts = [frozenset(p) for p in parts]
    comps = _check_nice(D, parts)
    total: set[int] = set()
    for part, comp in zip(parts, comps):
        sub = D.induced(comp)
        left = k - len(total)
        fam = config.family(sub, part, left)
        sol = solve_restricted(RestrictedInstance(sub, left, part), fam, stats)
        if sol is None:
            return None
        total |= sol
        if len(total) > k:
            return None
    if not is_colorful_walk_cover(D, total):
        return None
    return frozenset(total)


def ordered_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """Set partitions with fewest blocks first, then every order of the blocks."""
    items = list(items)
    by_size: dict[int, list[list[list[int]]]] = {}
    for p in _set_partitions(items):
        by_size.setdefault(len(p), []).append(p)
    for size in sorted(by_size):
        for p in by_size[size]:
            yield from (list(o) for o in itertools.permutations(p))


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1 :]


class _Compressor:
    """Guess enumeration for one compression step, with sound pruning of hopeless guesses."""

    def __init__(self, inst: CompressionInstance, config: FamilyConfig, stats: Counter):
        self.D = inst.graph
        self.k = inst.budget
        self.S = sorted(inst.known_cover)
        self.config = config
        self.stats = stats

    def run(self) -> frozenset[int] | None:
        D, k = self.D, self.k
        if not has_colorful_walk(D):
            return frozenset()
        for y_size in range(min(k, len(self.S)) + 1):
            for Y in itertools.combinations(self.S, y_size):
                res = self._with_deleted(frozenset(Y))
                if res is not None:
                    return res
        return None

    def _with_deleted(self, Y: frozenset[int]) -> frozenset[int] | None:
        budget = self.k - len(Y)
        DY = self.D.remove(Y)
        rest = [v for v in self.S if v not in Y]
        if packing_lower_bound(DY, rest) > budget:
            self.stats["pruned_y"] += 1
            return None
        if not rest:
            return Y if not has_colorful_walk(DY) else None
        block_ok: dict[frozenset[int], list[dict[int, int]] | None] = {}
        for parts in ordered_partitions(rest):
            fparts = [frozenset(p) for p in parts]
            labelings = []
            for part in fparts:
                if part not in block_ok:
                    block_ok[part] = self._part_labelings(DY, part, frozenset(rest))
                if not block_ok[part]:
                    break
                labelings.append(block_ok[part])
            else:
                if self._direct_violation(DY, fparts):
                    continue
                for combo in itertools.product(*labelings):
                    res = self._try_guess(DY, Y, fparts, combo, budget)
                    if res is not None:
                        return res
        return None

    @staticmethod
    def _direct_violation(D: LabeledDigraph, parts: list[frozenset[int]]) -> bool:
        pos = {v: i for i, p in enumerate(parts) for v in p}
        return any(u in pos and v in pos and pos[u] < pos[v] for u, v, _ in D.arcs)

    def _part_labelings(self, DY: LabeledDigraph, part: frozenset[int], rest: frozenset[int]) -> list[dict[int, int]]:
        """Labelings of one block that could extend to its strong component after the unknown deletion."""
        host = DY.remove(rest - part)
        members = sorted(part)
        if len(members) > 1:
            reach = reachable_from(host.graph, members[:1])
            back = reachable_from(host.graph.reversed(), members[:1])
            if not part <= (reach & back):
                return []
        ell = DY.ell
        lift = {(u, a): _lift_reach(host, u, a) for u in members for a in range(ell)}
        inner = DY.induced(part)
        out = []
        for values in itertools.product(range(ell), repeat=len(members)):
            gamma = dict(zip(members, values))
            if any(
                (v, gamma[v]) not in lift[u, gamma[u]]
                for u in members
                for v in members
                if u != v
            ):
                continue
            if find_consistent_labeling(inner, gamma) is None:
                continue
            out.append(gamma)
        return out

    def _try_guess(
        self, DY: LabeledDigraph, Y: frozenset[int], parts: list[frozenset[int]], gammas, budget: int
    ) -> frozenset[int] | None:
        self.stats["guesses"] += 1
        G = DY
        for part, gamma in zip(parts, gammas):
            G = bundle(G, part, gamma)
        for part in parts:
            succ = G.plain_successors
            assert all(v in succ[u] for u in part for v in part if u != v)
        self.stats["skew_calls"] += 1
        try:
            X = skew_separator(G.graph, parts, budget)
        except Inseparable:
            return None
        if X is None:
            return None
        Z = solve_nice(G.remove(X), budget, parts, self.config, self.stats)
        if Z is None:
            return None
        cover = Y | X | Z
        assert len(Y) + len(X) + len(Z) <= 2 * self.k
        if not is_colorful_walk_cover(self.D, cover):
            self.stats["rejected_covers"] += 1
            return None
        return cover


def compress(
    inst: CompressionInstance, mode: str, seed: int | None = None, repetitions: int | None = None,
    solution: Iterable[int] | None = None,
) -> SolverOutcome:
    """Shrink a known cover of size at most 2k+1 to one of size at most 2k, or report failure."""
    config = FamilyConfig(mode, seed, repetitions, None if solution is None else frozenset(solution))
    return _compress(inst, config, Counter())


def _compress(inst: CompressionInstance, config: FamilyConfig, stats: Counter) -> SolverOutcome:
    if len(inst.known_cover) > 2 * inst.budget + 1:
        raise ValueError("known cover larger than 2k+1")
    if not is_colorful_walk_cover(inst.graph, inst.known_cover):
        raise ValueError("known cover does not cover the graph")
    start = time.perf_counter()
    stats["compressions"] += 1
    cover = _Compressor(inst, config, stats).run()
    return SolverOutcome(cover, stats, time.perf_counter() - start)


def _shrink(D: LabeledDigraph, S: Iterable[int]) -> frozenset[int]:
    """Greedily drop vertices from a cover while it stays a cover."""
    cur = set(S)
    for v in sorted(cur, reverse=True):
        if is_colorful_walk_cover(D, cur - {v}):
            cur.discard(v)
    return frozenset(cur)


def _iterate(D: LabeledDigraph, k: int, order: list[int], config: FamilyConfig, stats: Counter) -> frozenset[int] | None:
    n = len(order)
    start = min(n, 2 * k + 1)
    S = frozenset(order[:start])
    for i in range(start, n + 1):
        Di = D.induced(order[:i])
        if i > start:
            S = S | {order[i - 1]}
        assert len(S) <= 2 * k + 1 and is_colorful_walk_cover(Di, S)
        if i < n:
            small = _shrink(Di, S)
            if len(small) <= 2 * k:
                S = small
                continue
        out = _compress(CompressionInstance(Di, k, S), config, stats)
        if out.cover is None:
            return None
        S = out.cover
    return S


def solve_cwc_approx(
    D: LabeledDigraph,
    k: int,
    mode: str,
    seed: int | None = None,
    repetitions: int | None = None,
    order: Sequence[int] | None = None,
    solution: Iterable[int] | None = None,
) -> SolverOutcome:
    """Cover of size at most ``2k`` (and at most twice the optimum), or ``NoWithinBudget``."""
    if k < 0:
        raise ValueError("budget must be non-negative")
    config = FamilyConfig(mode, seed, repetitions, None if solution is None else frozenset(solution))
    order = sorted(D.vertices) if order is None else list(order)
    if sorted(order) != sorted(D.vertices):
        raise ValueError("order must list every vertex once")
    stats: Counter = Counter()
    start = time.perf_counter()
    result = None
    for budget in range(k + 1):
        stats["budget_levels"] += 1
        result = _iterate(D, budget, order, config, stats)
        if result is not None:
            break
    if result is not None:
        assert len(result) <= 2 * k and is_colorful_walk_cover(D, result)
    return SolverOutcome(result, stats, time.perf_counter() - start)


def doct_labeling(D: Digraph) -> LabeledDigraph:
    """Two labels with every arc swapping them: colorful walks become odd closed walks."""
    if any(u == v for u, v in D.arcs):
        raise ValueError("self-loops are not allowed")
    swap = transposition(2, 0, 1)
    return LabeledDigraph(D.vertex_count, 2, tuple((u, v, swap) for u, v in D.arcs), D.vertices)


def solve_doct_approx(
    D: Digraph, k: int, mode: str, seed: int | None = None, repetitions: int | None = None
) -> SolverOutcome:
    return solve_cwc_approx(doct_labeling(D), k, mode, seed, repetitions)
