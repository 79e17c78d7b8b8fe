import itertools
import random

import pytest

from doctapprox.generators import random_digraph
from doctapprox.graph import Digraph, reachable_from
from doctapprox.oracles import brute_skew
from doctapprox.separators import Inseparable, important_separators, is_separator, min_vertex_cut, skew_separator


def brute_important(D, X, Y, k):
    X, Y = frozenset(X), frozenset(Y)
    free = sorted(D.vertices - X - Y)
    seps = []
    for size in range(min(k, len(free)) + 1):
        for c in itertools.combinations(free, size):
            S = frozenset(c)
            if is_separator(D, X, Y, S) and all(not is_separator(D, X, Y, S - {v}) for v in S):
                seps.append(S)
    reach = {S: reachable_from(D.remove(S), X) for S in seps}
    out = [S for S in seps if not any(len(T) <= len(S) and reach[S] < reach[T] for T in seps)]
    return sorted(out, key=lambda S: (len(S), sorted(S)))


def test_path_separator():
    P = Digraph(3, ((0, 1), (1, 2)))
    assert min_vertex_cut(P, {0}, {2}, 1) == {1}
    assert important_separators(P, {0}, {2}, 1) == [frozenset({1})]
    assert important_separators(P, {0}, {2}, 0) == []


def test_two_routes_need_two():
    D = Digraph(4, ((0, 1), (1, 3), (0, 2), (2, 3)))
    assert min_vertex_cut(D, {0}, {3}, 1) is None
    assert important_separators(D, {0}, {3}, 2) == [frozenset({1, 2})]


def test_important_prefers_far_side():
    D = Digraph(4, ((0, 1), (1, 2), (2, 3)))
    assert important_separators(D, {0}, {3}, 1) == [frozenset({2})]


def test_empty_separator_when_disconnected():
    D = Digraph(3, ((0, 1),))
    assert important_separators(D, {0}, {2}, 2) == [frozenset()]


def test_direct_arc_is_inseparable():
    D = Digraph(2, ((0, 1),))
    with pytest.raises(Inseparable):
        important_separators(D, {0}, {1}, 3)
    with pytest.raises(ValueError):
        important_separators(D, {0}, {0}, 1)


def test_important_matches_definition():
    rng = random.Random(21)
    checked = 0
    while checked < 150:
        n = rng.randint(3, 10)
        D = random_digraph(n, rng.uniform(0.1, 0.35), rng)
        X = frozenset(rng.sample(range(n), rng.randint(1, 2)))
        Y = frozenset(rng.sample(sorted(set(range(n)) - X), 1))
        k = rng.randint(0, 3)
        try:
            got = important_separators(D, X, Y, k)
        except Inseparable:
            assert any(u in X and v in Y for u, v in D.arcs)
            continue
        assert got == brute_important(D, X, Y, k)
        assert len(got) <= 4**k
        checked += 1


def test_skew_examples():
    P = Digraph(3, ((0, 1), (1, 2)))
    assert skew_separator(P, [{0}, {2}], 1) == {1}
    assert skew_separator(P, [{2}, {0}], 0) == frozenset()
    assert skew_separator(P, [{0}, {2}], 0) is None
    with pytest.raises(Inseparable):
        skew_separator(P, [{0}, {1}], 2)
    with pytest.raises(ValueError):
        skew_separator(P, [{0}, {0}], 2)


def test_skew_matches_brute():
    rng = random.Random(22)
    checked = 0
    while checked < 200:
        n = rng.randint(3, 10)
        D = random_digraph(n, rng.uniform(0.1, 0.35), rng)
        r = rng.randint(2, 3)
        chosen = rng.sample(range(n), rng.randint(r, min(n, r + 2)))
        parts = [set() for _ in range(r)]
        for i, v in enumerate(chosen):
            parts[i % r].add(v)
        k = rng.randint(0, 3)
        try:
            got = skew_separator(D, parts, k)
        except Inseparable:
            continue
        want = brute_skew(D, parts, k)
        assert (got is None) == (want is None)
        if got is not None:
            assert len(got) <= k and not got & set().union(*parts)
            G = D.remove(got)
            for i in range(r):
                later = set().union(*parts[i + 1 :])
                assert not reachable_from(G, parts[i]) & later
        checked += 1
