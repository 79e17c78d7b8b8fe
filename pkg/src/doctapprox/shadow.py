"""Shadows of deleted sets and candidate shadow-cover families."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal

from .graph import Digraph, co_reachable_to, reachable_from
from .separators import Inseparable, important_separators

Mode = Literal["exhaustive", "oracle", "randomized"]
MODES = ("exhaustive", "oracle", "randomized")
EXHAUSTIVE_LIMIT = 24


@dataclass(frozen=True)
class Shadow:
    forward: frozenset[int]
    reverse: frozenset[int]

    @property
    def union(self) -> frozenset[int]:
        return self.forward | self.reverse


def shadow_of(D: Digraph, T: Iterable[int], X: Iterable[int]) -> Shadow:
    """Vertices cut off from ``T`` (forward) and unable to reach ``T`` (reverse) in ``D - X``."""
    T, X = frozenset(T), frozenset(X)
    if T & X:
        raise ValueError("terminal set intersects the deleted set")
    G = D.remove(X)
    others = G.vertices - T
    forward = others - reachable_from(G, T)
    reverse = others - co_reachable_to(G, T)
    return Shadow(frozenset(forward), frozenset(reverse))


def default_repetitions(k: int) -> int:
    return max(1, 16 * k * 4**k)


@dataclass(frozen=True)
class CoverFamily:
    """Candidate sets ``Z_1..Z_t``; exhaustive and randomized families are generated lazily."""

    mode: str
    ground: frozenset[int]
    explicit: tuple[frozenset[int], ...] = ()
    seed: int | None = None
    repetitions: int = 0
    source: tuple[Digraph, frozenset[int], int] | None = field(default=None, compare=False, repr=False)

    def __iter__(self) -> Iterator[frozenset[int]]:
        if self.mode == "exhaustive":
            items = sorted(self.ground)
            for size in range(len(items) + 1):
                for combo in itertools.combinations(items, size):
                    yield frozenset(combo)
        elif self.mode == "randomized":
            assert self.source is not None
            D, W, k = self.source
            rng = random.Random(self.seed)
            for i in range(self.repetitions):
                yield frozenset() if i == 0 else _sample(D, W, k, rng)
        else:
            yield from self.explicit

    def __len__(self) -> int:
        if self.mode == "exhaustive":
            return 2 ** len(self.ground)
        if self.mode == "randomized":
            return self.repetitions
        return len(self.explicit)

    @property
    def candidates(self) -> list[frozenset[int]]:
        return list(self)


def cover_family(
    D: Digraph,
    W: Iterable[int],
    k: int,
    mode: str,
    seed: int | None = None,
    repetitions: int | None = None,
    solution: Iterable[int] | None = None,
) -> CoverFamily:
    W = frozenset(W)
    if not W <= D.vertices:
        raise ValueError("anchor set not contained in the graph")
    ground = D.vertices - W
    if mode == "exhaustive":
        if len(ground) > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive family over {len(ground)} vertices is too large")
        return CoverFamily("exhaustive", ground)
    if mode == "oracle":
        if solution is None:
            raise ValueError("oracle mode needs a known solution")
        S = frozenset(solution) & D.vertices
        if S & W:
            return CoverFamily("oracle", ground, ())
        return CoverFamily("oracle", ground, (shadow_of(D, W, S).union,))
    if mode == "randomized":
        t = default_repetitions(k) if repetitions is None else repetitions
        if t < 0:
            raise ValueError("repetitions must be non-negative")
        return CoverFamily("randomized", ground, (), seed, t, (D, W, k))
    raise ValueError(f"unknown mode {mode!r}")


def _sample(D: Digraph, W: frozenset[int], k: int, rng: random.Random) -> frozenset[int]:
    ground = sorted(D.vertices - W)
    A = frozenset(v for v in ground if rng.random() < 0.5)
    Z: set[int] = set()
    if not A:
        return frozenset()
    for G, src, dst in ((D, A, W), (D.reversed(), A, W)):
        budget = rng.randint(0, k)
        try:
            seps = important_separators(G, src, dst, budget)
        except Inseparable:
            continue
        if not seps:
            continue
        S = rng.choice(seps)
        Z |= shadow_of(D, W, S).union
    return frozenset(Z)
