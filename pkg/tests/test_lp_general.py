from fractions import Fraction

import pytest

from hetcdc import lp_general as lp
from hetcdc.coding_k3 import achievable_load
from hetcdc.model import derive_profile, validate_config
from hetcdc.placement_k3 import optimal_load

from conftest import sorted_grid_configs


def _solve(K, M, N):
    cfg = validate_config(K, list(M), N, sort_k3=False)
    model = lp.build_model(cfg)
    return cfg, model, lp.solve(model)


def test_collections_k3_j1():
    cols = lp.enumerate_collections(3, 1)
    assert len(cols) == 1
    assert set(cols[0].members) == {frozenset({1}), frozenset({2}), frozenset({3})}


def test_collections_k4_j2_matches_hand_list():
    cols = lp.enumerate_collections(4, 2)
    got = {frozenset(c.members) for c in cols}
    expect = {
        frozenset({frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 4}), frozenset({3, 4})}),
        frozenset({frozenset({1, 2}), frozenset({1, 4}), frozenset({2, 3}), frozenset({3, 4})}),
        frozenset({frozenset({1, 3}), frozenset({1, 4}), frozenset({2, 3}), frozenset({2, 4})}),
    }
    assert got == expect


def test_collections_k4_j1():
    cols = lp.enumerate_collections(4, 1)
    assert len(cols) == 1 and len(cols[0].members) == 4


def test_collections_regularity_property():
    for K in (4, 5):
        for j in range(1, K - 1):
            for col in lp.enumerate_collections(K, j):
                assert len(col.members) == K
                assert len(set(col.members)) == K
                for k in range(1, K + 1):
                    assert sum(1 for t in col.members if k in t) == j


def test_k_max_guard():
    cfg = validate_config(7, [4] * 7, 10, sort_k3=False)
    with pytest.raises(lp.TooLarge):
        lp.build_model(cfg)


def test_model_shape_k3():
    cfg, model, _ = _solve(3, (6, 7, 7), 12)
    assert len(model.subset_order) == 7
    # one (zero-saving) j=1 variable plus the three pair variables
    assert model.coding_vars == ((1, 1), (2, 1), (2, 2), (2, 3))
    names = model.var_names()
    assert "S_123" in names and "x_21" in names


def test_model_objective_at_fig3_profile():
    # objective evaluated at S=(1,3,0,1,4,3,0) with maximal pair coding
    cfg, model, _ = _solve(3, (6, 7, 7), 12)
    values = {"S_1": 1, "S_2": 3, "S_3": 0, "S_12": 1, "S_13": 4, "S_23": 3,
              "S_123": 0, "x_11": 0, "x_21": 1, "x_22": 0, "x_23": 3}
    # x_21+x_22 <= S_12, x_21+x_23 <= S_13, x_22+x_23 <= S_23 hold; sum x = 4
    total = sum(c * values[n] for c, n in zip(model.objective, model.var_names()))
    assert total == 12


def test_lp_matches_theorem_on_examples():
    for M, N in [((6, 7, 7), 12), ((2, 2, 2), 3), ((1, 2, 6), 6), ((4, 5, 6), 6)]:
        cfg, _, sol = _solve(3, M, N)
        assert sol.status == "optimal"
        assert sol.optimum == optimal_load(cfg)


def test_lp_full_replication_zero():
    _, _, sol = _solve(3, (8, 8, 8), 8)
    assert sol.optimum == 0


def test_lp_k4_homogeneous_values():
    _, _, sol = _solve(4, (6, 6, 6, 6), 12)
    assert sol.optimum == 12
    _, _, sol = _solve(4, (12, 12, 12, 12), 12)
    assert sol.optimum == 0


def test_lp_grid_equals_theorem():
    for cfg in sorted_grid_configs(8):
        model = lp.build_model(cfg)
        sol = lp.solve(model)
        assert sol.status == "optimal"
        assert sol.optimum == optimal_load(cfg), (cfg.M, cfg.N)


def test_lp_never_beats_zero_or_uncoded():
    for cfg in sorted_grid_configs(5):
        sol = lp.solve(lp.build_model(cfg))
        uncoded = sum(cfg.N - min(m, cfg.N) for m in cfg.M)
        assert 0 <= sol.optimum <= uncoded


def test_removing_top_level_coding_never_helps():
    for M, N in [((6, 7, 7), 12), ((4, 5, 6), 6), ((3, 3, 4), 5)]:
        cfg = validate_config(3, list(M), N, sort_k3=False)
        model = lp.build_model(cfg)
        sol = lp.solve(model)
        # re-solve with the j=K-1 variables pinned to zero
        pinned_ub = list(model.a_ub)
        pinned_b = list(model.b_ub)
        nS = len(model.subset_order)
        for i, (j, q) in enumerate(model.coding_vars):
            if j == cfg.K - 1:
                row = [Fraction(0)] * model.num_vars
                row[nS + i] = Fraction(1)
                pinned_ub.append(tuple(row))
                pinned_b.append(Fraction(0))
        from hetcdc.simplex import solve_lp
        res = solve_lp(model.objective, model.a_eq, model.b_eq, pinned_ub, pinned_b)
        assert res.objective >= sol.optimum


def test_extract_allocation_round_trip_k3():
    cfg, model, sol = _solve(3, (6, 7, 7), 12)
    extracted = lp.extract_allocation(cfg, model, sol)
    alloc = extracted.allocation
    profile = derive_profile(alloc)
    for t, v in sol.subset_values.items():
        assert profile[t] == v * extracted.scale
    assert achievable_load(alloc) == sol.optimum * extracted.scale


def test_extract_allocation_integral_no_scaling():
    cfg, model, sol = _solve(3, (1, 2, 6), 6)
    extracted = lp.extract_allocation(cfg, model, sol)
    if all(v.denominator == 1 for v in sol.subset_values.values()) and \
       all(v.denominator == 1 for v in sol.coding_values.values()):
        assert extracted.scale == 1


def test_extract_allocation_half_integral_scales_by_two():
    cfg, model, sol = _solve(3, (2, 2, 2), 3)
    assert sol.optimum == Fraction(3, 2)
    extracted = lp.extract_allocation(cfg, model, sol)
    assert extracted.scale == 2
    assert achievable_load(extracted.allocation) == 3


def test_extract_allocation_k4_capacities():
    cfg, model, sol = _solve(4, (6, 6, 6, 6), 12)
    extracted = lp.extract_allocation(cfg, model, sol)
    alloc = extracted.allocation
    for k in range(4):
        assert len(alloc.sets[k]) <= cfg.M[k] * extracted.scale
    profile = derive_profile(alloc)
    for t, v in sol.subset_values.items():
        assert profile[t] == v * extracted.scale


def test_dump_model_lists_rows():
    cfg, model, _ = _solve(3, (6, 7, 7), 12)
    text = lp.dump_model(model)
    assert "minimize" in text and "subject to" in text
    assert text.count("=") >= 5 and "<=" in text
