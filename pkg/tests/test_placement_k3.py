from fractions import Fraction

import pytest

from hetcdc.coding_k3 import achievable_load
from hetcdc.model import derive_profile, validate_config
from hetcdc.placement_k3 import (Regime, build_placement, classify_regime,
                                 optimal_load, segment_lengths)

from conftest import sorted_grid_configs


@pytest.mark.parametrize("M,N,expected", [
    ((6, 7, 7), 12, Regime.R2),
    ((4, 5, 6), 6, Regime.R7),
    ((2, 2, 2), 6, Regime.R1),
    ((4, 4, 4), 6, Regime.R3),
    ((1, 2, 6), 6, Regime.R4),
    ((2, 5, 5), 6, Regime.R5),
    ((5, 5, 5), 6, Regime.R6),
])
def test_classify_regime(M, N, expected):
    assert classify_regime(validate_config(3, list(M), N)) is expected


@pytest.mark.parametrize("M,N,expected", [
    ((6, 7, 7), 12, Fraction(12)),
    ((5, 5, 5), 6, Fraction(3, 2)),
    ((4, 5, 6), 6, Fraction(2)),
    ((1, 2, 6), 6, Fraction(8)),
])
def test_optimal_load(M, N, expected):
    assert optimal_load(validate_config(3, list(M), N)) == expected


@pytest.mark.parametrize("M,N,lengths,doubled", [
    ((6, 7, 7), 12, (1, 1, 3, 3), False),
    ((2, 2, 2), 6, (2, 0, 2, 2), False),
    ((4, 5, 6), 6, (3, 0, 1, 2), False),
])
def test_segment_lengths(M, N, lengths, doubled):
    cfg = validate_config(3, list(M), N)
    layout = segment_lengths(cfg)
    assert layout.lengths == lengths
    assert layout.doubled is doubled


def test_segment_lengths_doubles_when_fractional():
    # R1 with odd M - N
    cfg = validate_config(3, [2, 3, 4], 6)
    layout = segment_lengths(cfg)
    assert layout.doubled
    assert all(v >= 0 for v in layout.lengths)


def test_build_placement_paper_example():
    cfg = validate_config(3, [6, 7, 7], 12)
    alloc = build_placement(cfg)
    assert derive_profile(alloc).as_k3_tuple() == (1, 3, 0, 1, 4, 3, 0)
    assert achievable_load(alloc) == 12


def test_build_placement_r1_no_pairs():
    cfg = validate_config(3, [2, 2, 2], 6)
    alloc = build_placement(cfg)
    assert derive_profile(alloc).as_k3_tuple() == (2, 2, 2, 0, 0, 0, 0)
    assert achievable_load(alloc) == 12


def test_build_placement_r3_value():
    cfg = validate_config(3, [4, 4, 4], 6)
    assert optimal_load(cfg) == 3
    alloc = build_placement(cfg)
    assert achievable_load(alloc) == 3


def _expected_profile(cfg, regime):
    """Published subset cardinalities per regime diagram."""
    M1, M2, M3 = cfg.M
    N, M = cfg.N, cfg.M_total
    if regime is Regime.R1:
        h = (M - N) // 2
        return (M1 - h, M2 - h, N - M1 - M2, 0, h, h, 0)
    if regime is Regime.R4:
        return (0, N - M3, N - M1 - M2, 0, M1, M2 + M3 - N, 0)
    if regime is Regime.R2:
        d = (M3 - (M1 + M2 - N)) // 2
        e = M1 + M2 - N
        return (M1 - 2 * e - d, N - M1 - d, 0, e, e + d, d, 0)
    if regime in (Regime.R3, Regime.R5):
        return (0, 2 * N - M, 0, M1 + M2 - N, N - M2, M2 + M3 - N, 0)
    return (0, 0, 0, N - M3, N - M2, N - M1, M - 2 * N)


def test_grid_placements_reproduce_published_profiles():
    for cfg in sorted_grid_configs(12):
        regime = classify_regime(cfg)
        alloc = build_placement(cfg)
        scale = alloc.config.N // cfg.N
        assert _expected_profile(alloc.config, regime) == \
            derive_profile(alloc).as_k3_tuple(), (cfg.M, cfg.N, regime)
        assert achievable_load(alloc) == scale * optimal_load(cfg), (cfg.M, cfg.N)


def test_grid_segment_lengths_nonnegative():
    for cfg in sorted_grid_configs(12):
        layout = segment_lengths(cfg)
        assert all(v >= 0 for v in layout.lengths)


def test_homogeneous_reduction():
    # M_k = r*N/3 for r = 1, 2, 3 gives loads 2N, N/2, 0
    N = 12
    for r, expected in [(1, 2 * N), (2, Fraction(N, 2)), (3, 0)]:
        cfg = validate_config(3, [r * N // 3] * 3, N)
        assert optimal_load(cfg) == expected
