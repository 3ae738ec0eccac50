import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hetcdc.coding_k3 import (CodedPacket, ShufflePlan, Summand, Undecodable,
                              achievable_load, check_decodable, g, plan_shuffle,
                              plan_to_json)
from hetcdc.model import derive_profile, make_allocation, validate_config

from conftest import random_allocation


def _fig2_alloc():
    cfg = validate_config(3, [6, 7, 7], 12)
    return make_allocation(cfg, [range(1, 7), list(range(7, 13)) + [1], range(2, 9)])


def _fig3_alloc():
    cfg = validate_config(3, [6, 7, 7], 12)
    return make_allocation(
        cfg, [range(1, 7), list(range(7, 13)) + [1], [2, 4, 5, 6, 7, 8, 9]])


@pytest.mark.parametrize("xs,expected", [
    ((1, 4, 3), 4),
    ((1, 5, 2), 5),
    ((0, 0, 0), 0),
    ((1, 1, 1), Fraction(3, 2)),
])
def test_g_values(xs, expected):
    assert g(*xs) == expected


def test_g_identity_exhaustive():
    # abs-value closed form vs max(max, sum/2) on [0, 20]^3; g asserts
    # the two agree internally.
    for x1 in range(21):
        for x2 in range(21):
            for x3 in range(21):
                value = g(x1, x2, x3)
                assert value == max(x1, x2, x3, Fraction(x1 + x2 + x3, 2))


def test_achievable_load_worked_examples():
    assert achievable_load(_fig2_alloc()) == 13
    assert achievable_load(_fig3_alloc()) == 12


def test_achievable_load_full_replication():
    cfg = validate_config(3, [4, 4, 4], 4)
    alloc = make_allocation(cfg, [range(1, 5)] * 3)
    assert achievable_load(alloc) == 0


def test_plan_fig3_structure():
    alloc = _fig3_alloc()
    plan = plan_shuffle(alloc)
    assert plan.total_load == 12
    uncoded = [p for p in plan.packets if len(p.summands) == 1]
    coded = [p for p in plan.packets if len(p.summands) == 2]
    assert len(uncoded) == 8 and len(coded) == 4
    # the paper's highlighted packet: node 1 sends v_{2,2} xor v_{3,1}
    wanted = {Summand(2, 2), Summand(3, 1)}
    assert any(p.sender == 1 and set(p.summands) == wanted for p in coded)
    assert check_decodable(alloc, plan).ok


def test_plan_fig2_load():
    alloc = _fig2_alloc()
    plan = plan_shuffle(alloc)
    assert plan.total_load == 13
    assert check_decodable(alloc, plan).ok


def test_plan_all_pairs_one_gives_half_packets():
    cfg = validate_config(3, [2, 2, 2], 3, sort_k3=False)
    alloc = make_allocation(cfg, [{1, 2}, {1, 3}, {2, 3}])
    plan = plan_shuffle(alloc)
    assert plan.total_load == Fraction(3, 2)
    assert len(plan.packets) == 3
    assert all(p.size == Fraction(1, 2) for p in plan.packets)
    assert {p.sender for p in plan.packets} == {1, 2, 3}
    assert check_decodable(alloc, plan).ok


def test_deleting_packet_breaks_exactly_its_values():
    alloc = _fig3_alloc()
    plan = plan_shuffle(alloc)
    wanted = {Summand(2, 2), Summand(3, 1)}
    kept = [p for p in plan.packets if not (p.sender == 1 and set(p.summands) == wanted)]
    assert len(kept) == len(plan.packets) - 1
    broken = ShufflePlan.from_packets(kept)
    with pytest.raises(Undecodable) as err:
        check_decodable(alloc, broken)
    missing = err.value.missing
    assert set(missing) == {2, 3}
    assert {f for f, _ in missing[2]} == {2}
    assert {f for f, _ in missing[3]} == {1}


def test_empty_plan_ok_for_full_replication():
    cfg = validate_config(3, [3, 3, 3], 3)
    alloc = make_allocation(cfg, [range(1, 4)] * 3)
    report = check_decodable(alloc, ShufflePlan.from_packets([]))
    assert report.ok


def test_sender_must_store_summands():
    cfg = validate_config(3, [2, 2, 2], 3, sort_k3=False)
    alloc = make_allocation(cfg, [{1, 2}, {1, 3}, {2, 3}])
    bogus = ShufflePlan.from_packets(
        [CodedPacket(1, (Summand(2, 3),), frozenset({2}))])
    with pytest.raises(ValueError):
        check_decodable(alloc, bogus)


def test_random_plans_decodable_and_exact():
    rng = random.Random(20240803)
    for _ in range(300):
        alloc = random_allocation(rng, 14)
        plan = plan_shuffle(alloc)
        assert plan.total_load == achievable_load(alloc)
        assert check_decodable(alloc, plan).ok


def test_monotonicity_adding_files_never_hurts():
    rng = random.Random(99)
    for _ in range(200):
        alloc = random_allocation(rng, 10)
        base = achievable_load(alloc)
        k = rng.randrange(3)
        missing = set(range(1, alloc.config.N + 1)) - alloc.sets[k]
        if not missing:
            continue
        extra = rng.choice(sorted(missing))
        sets = [set(s) for s in alloc.sets]
        sets[k].add(extra)
        cfg = validate_config(3, [len(s) for s in sets], alloc.config.N, sort_k3=False)
        bigger = make_allocation(cfg, sets)
        assert achievable_load(bigger) <= base


@given(st.permutations([1, 2, 3]), st.data())
def test_plan_load_permutation_invariant(perm, data):
    N = data.draw(st.integers(1, 10))
    owners = data.draw(st.lists(
        st.sets(st.integers(1, 3), min_size=1), min_size=N, max_size=N))
    sets = [set(), set(), set()]
    for n, who in enumerate(owners, start=1):
        for k in who:
            sets[k - 1].add(n)
    cfg = validate_config(3, [max(1, len(s)) for s in sets], N, sort_k3=False)
    alloc = make_allocation(cfg, sets)
    permuted_sets = [sets[perm[k] - 1] for k in range(3)]
    pcfg = validate_config(3, [max(1, len(s)) for s in permuted_sets], N, sort_k3=False)
    permuted = make_allocation(pcfg, permuted_sets)
    assert plan_shuffle(alloc).total_load == plan_shuffle(permuted).total_load


def test_plan_json_shape():
    plan = plan_shuffle(_fig3_alloc())
    blob = plan_to_json(plan)
    assert blob["load"] == {"num": 12, "den": 1}
    assert all(set(p) == {"sender", "xor"} for p in blob["packets"])
    assert all(set(s) == {"target", "file", "half"}
               for p in blob["packets"] for s in p["xor"])
