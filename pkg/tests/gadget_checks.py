"""Brute-force checks of the gadget weight bounds, shared by unit and acceptance tests."""

from __future__ import annotations

from doctapprox.gadgets import GadgetHandle, cuts_precisely, precise_cuts, sync_quadruple
from doctapprox.instances import ParityInstance, has_odd_labeled_cycle
from doctapprox.oracles import adoct_covers_upto, brute_adoct

CLOCK_BOUNDS = {"forward": (30, 40), "reverse": (30, 40), "double": (60, 70)}


def clock_report(handle: GadgetHandle) -> dict[str, object]:
    """Minimum weight, whether witnesses equal the precise cuts, and whether every cover below the gap is precise."""
    best, gap = CLOCK_BOUNDS[handle.kind]
    inst = handle.instance
    res = brute_adoct(inst, gap - 1)
    covers, truncated = adoct_covers_upto(inst, gap - 1)
    return {
        "min_weight": None if res is None else res.min_weight,
        "witnesses_are_precise_cuts": res is not None and set(res.witnesses) == set(precise_cuts(handle)),
        "below_gap_all_precise": not truncated and all(cuts_precisely(handle, X) for X in covers),
    }


def _without(inst: ParityInstance, removed: frozenset[int]) -> ParityInstance:
    arcs = tuple(a for a in inst.arcs if a[0] not in removed and a[1] not in removed)
    return ParityInstance(inst.vertex_count, arcs, inst.weights, inst.budget)


def sync_report(handle: GadgetHandle) -> dict[str, object]:
    """Precise cut weights and validity, and the cheapest completion of any rough cut."""
    inst = handle.instance
    cuts = precise_cuts(handle)
    weights = {inst.weight(X) for X in cuts}
    valid = all(not has_odd_labeled_cycle(inst, X) for X in cuts)
    rough_min = None
    n = handle.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            Q = sync_quadruple(handle, i, j)
            base = inst.weight(Q)
            # completions cheaper than 42 add at most 41 - base on top of the quadruple
            extra, truncated = adoct_covers_upto(_without(inst, Q), 41 - base)
            assert not truncated
            for R in extra:
                X = Q | R
                if not cuts_precisely(handle, X):
                    w = inst.weight(X)
                    rough_min = w if rough_min is None else min(rough_min, w)
    return {"cut_weights": weights, "cuts_valid": valid, "rough_below_42": rough_min}
