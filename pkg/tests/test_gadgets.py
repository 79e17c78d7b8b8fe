import random
import warnings
from fractions import Fraction

import pytest

from doctapprox.gadgets import (
    adoct_to_doct,
    arcdoct_to_doct,
    colorful_mapping_to_cover,
    cuts_precisely,
    cuts_roughly,
    double_clock,
    doct_to_arcdoct,
    forward_clock,
    normalize_psi,
    precise_cuts,
    psi_to_adoct,
    reverse_clock,
    sync_cut,
    sync_quadruple,
    synchronizer,
)
from doctapprox.generators import planted_psi
from doctapprox.graph import Digraph
from doctapprox.instances import ParityInstance, PsiInstance, has_odd_labeled_cycle
from doctapprox.oracles import brute_adoct, brute_arc_doct, brute_doct, odd_cycles
from gadget_checks import clock_report, sync_report


def test_vertex_counts():
    assert len(forward_clock(3, 100).instance.weights) == 27
    assert len(synchronizer(3, 100, {(1, 1)}).instance.weights) == 40
    for n in (2, 4, 5):
        assert len(forward_clock(n, 100).instance.weights) == 7 * n + 6
        assert len(synchronizer(n, 100).instance.weights) == n * n + 8 * n + 7


def test_role_index_injective():
    for h in (forward_clock(3, 100), reverse_clock(3, 100), double_clock(3, 100), synchronizer(3, 100, {(2, 3)})):
        assert len(set(h.role_index.values())) == len(h.role_index)
        assert h.vertex_ids == frozenset(range(len(h.instance.weights)))


def test_parameter_errors():
    with pytest.raises(ValueError):
        forward_clock(3, 99)
    with pytest.raises(ValueError):
        double_clock(1, 100)
    with pytest.raises(ValueError):
        synchronizer(3, 100, {(0, 1)})


def test_weights_within_range():
    h = double_clock(3, 100)
    assert set(h.instance.weights) == {10, 201}


def test_precise_cut_counts():
    h = forward_clock(3, 100)
    assert len(precise_cuts(h)) == 10
    assert cuts_precisely(h, {h["p[1]"], h["a[3]"], h["t_hat[0,2]"]})
    assert not cuts_precisely(h, {h["p[3]"], h["a[3]"], h["t_hat[0,2]"]})
    assert len(precise_cuts(reverse_clock(3, 100))) == 10
    assert len(precise_cuts(double_clock(3, 100))) == 3


def test_forward_cycle_types():
    h = forward_clock(3, 100)
    inv = {v: r for r, v in h.role_index.items()}
    cycles = odd_cycles(h.instance)
    names = [{inv[v] for v in c} for c, _ in cycles]
    types = {1: 0, 2: 0, 3: 0, 4: 0, 5: 0}
    for s in names:
        if "y" in s and "r[0]" in s:
            types[1] += 1
        elif "y" in s and "b[0]" in s:
            types[2] += 1
        elif "r[0]" in s:
            types[3] += 1
        elif "b[0]" in s:
            types[4] += 1
        else:
            types[5] += 1
    # the hand-free cycle is found once per orientation
    assert types == {1: 1, 2: 1, 3: 4, 4: 4, 5: 2}
    assert len({frozenset(c) for c, _ in cycles}) == 11


@pytest.mark.parametrize("build", [forward_clock, reverse_clock, double_clock])
def test_clock_weight_bounds_n3(build):
    h = build(3, 100)
    rep = clock_report(h)
    assert rep["min_weight"] == (60 if h.kind == "double" else 30)
    assert rep["witnesses_are_precise_cuts"] and rep["below_gap_all_precise"]


def test_sync_weight_bounds_n3():
    h = synchronizer(3, 100, {(1, 2), (3, 3)})
    rep = sync_report(h)
    assert rep["cut_weights"] == {41} and rep["cuts_valid"] and rep["rough_below_42"] is None


def test_cuts_roughly():
    h = synchronizer(3, 100, {(1, 2)})
    assert not cuts_roughly(h, sync_cut(h, 1, 2))
    assert cuts_roughly(h, sync_quadruple(h, 2, 2))
    with pytest.raises(ValueError):
        cuts_roughly(forward_clock(3, 100), set())


def test_normalize_psi():
    inst = PsiInstance(3, {(0, 1)}, {0: 0, 1: 1, 2: 1, 3: 2})
    kept, classes, n = normalize_psi(inst)
    assert kept == [0, 1] and n == 2 and classes[0] == [0, None]
    with pytest.raises(ValueError):
        normalize_psi(PsiInstance(2, set(), {0: 0}))
    star = PsiInstance(5, {(0, 1), (0, 2), (0, 3), (0, 4)}, {i: i for i in range(5)})
    with pytest.raises(ValueError):
        normalize_psi(star)


def test_psi_k2_example():
    inst = PsiInstance(2, {(0, 1)}, {0: 0, 1: 0, 2: 1, 3: 1}, {(0, 2)})
    with pytest.warns(UserWarning):
        red = psi_to_adoct(inst)
    assert red.instance.budget == 121
    assert (len(red.clocks), len(red.syncs)) == (2, 1)
    X = colorful_mapping_to_cover(red, {0: 0, 1: 2})
    assert red.instance.weight(X) == 121 and not has_odd_labeled_cycle(red.instance, X)
    for h in red.clocks.values():
        assert cuts_precisely(h, X)
    for h in red.syncs.values():
        assert cuts_precisely(h, X)
    with pytest.raises(ValueError):
        colorful_mapping_to_cover(red, {0: 1, 1: 3})


def test_direction1_random():
    rng = random.Random(81)
    for _ in range(5):
        inst, phi = planted_psi(rng.randint(2, 4), rng.randint(2, 3), rng)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            red = psi_to_adoct(inst)
        X = colorful_mapping_to_cover(red, phi)
        assert red.instance.weight(X) == red.instance.budget


def test_budget_bounds_large_pattern():
    rng = random.Random(82)
    inst, _ = planted_psi(100, 2, rng, edge_p=0.03, noise=0.0)
    kept, _, _ = normalize_psi(inst)
    assert len(kept) >= 100
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        red = psi_to_adoct(inst)
    k = red.instance.budget
    assert 100 <= k <= 121 * len(inst.g_edges)


def test_adoct_to_doct_examples():
    one = ParityInstance(2, ((0, 1, 1),), (1, 1), 1)
    red = adoct_to_doct(one)
    assert red.digraph.vertex_count == 2 and len(red.digraph.arcs) == 1
    inst = ParityInstance(3, ((0, 1, 0), (1, 2, 1), (2, 0, 0)), (2, 1, 3), 1)
    red = adoct_to_doct(inst, Fraction(3, 2))
    assert red.digraph.vertex_count == (2 + 1) * 2 + 6
    tri = ParityInstance(3, ((0, 1, 1), (1, 2, 1), (2, 0, 1)), (1, 1, 1), 1)
    D, k = adoct_to_doct(tri)
    assert brute_doct(D) == 1 == brute_adoct(tri, 1).min_weight
    with pytest.raises(ValueError):
        adoct_to_doct(tri, Fraction(1, 2))


def test_arc_reductions_on_triangle():
    tri = Digraph(3, ((0, 1), (1, 2), (2, 0)))
    assert brute_arc_doct(doct_to_arcdoct(tri)) == 1
    sub = arcdoct_to_doct(tri, 1)
    assert brute_doct(sub) == 1
    # vertex copies aside, the three arcs become one cycle of length 9
    assert sub.vertex_count == 3 * 2 + 6
