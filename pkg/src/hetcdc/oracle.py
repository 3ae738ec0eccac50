"""Brute-force ground truth for K=3 minimum loads.

The achievable load depends on an allocation only through its subset
profile, so the search enumerates profiles (seven nonnegative counts
satisfying the storage accounting equations) rather than labeled
allocations.  Enumeration runs on the doubled instance so half-integer
optima are reachable, and the result is halved.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .coding_k3 import g
from .model import (FileAllocation, SubsetProfile, SystemConfig, double_instance,
                    make_allocation)

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"enumeration needs {required} steps, budget is {budget}")


def enumerate_profiles(cfg: SystemConfig):
    """Yield (s1, s2, s3, s12, s13, s23, s123) for every exact-capacity profile.

    Capacities are filled exactly: per-node stored counts equal
    min(M_k, N).  Three counts are free; the rest follow from the
    accounting equations.
    """
    assert cfg.K == 3
    N = cfg.N
    m1, m2, m3 = (min(m, N) for m in cfg.M)
    msum = m1 + m2 + m3
    for s123 in range(0, min(m1, m2, m3) + 1):
        for s12 in range(0, min(m1, m2) - s123 + 1):
            for s13 in range(0, min(m1, m3) - s123 - s12 + 1):
                s23 = msum - N - 2 * s123 - s12 - s13
                if s23 < 0:
                    continue
                s1 = m1 - s12 - s13 - s123
                s2 = m2 - s12 - s23 - s123
                s3 = m3 - s13 - s23 - s123
                if s1 < 0 or s2 < 0 or s3 < 0:
                    continue
                yield (s1, s2, s3, s12, s13, s23, s123)


def profile_count_bound(cfg: SystemConfig) -> int:
    """Upper bound on the enumeration loop size."""
    N = cfg.N
    m = [min(x, N) for x in cfg.M]
    return (min(m) + 1) * (min(m[0], m[1]) + 1) * (min(m[0], m[2]) + 1)


def allocation_from_k3_profile(cfg: SystemConfig,
                               profile: tuple[int, ...]) -> FileAllocation:
    """A canonical witness allocation: contiguous file ranges per subset."""
    s1, s2, s3, s12, s13, s23, s123 = profile
    order = [frozenset({1}), frozenset({2}), frozenset({3}),
             frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3}),
             frozenset({1, 2, 3})]
    sizes = dict(zip(order, profile))
    sets: list[set[int]] = [set(), set(), set()]
    nxt = 1
    for subset in order:
        for n in range(nxt, nxt + sizes[subset]):
            for k in subset:
                sets[k - 1].add(n)
        nxt += sizes[subset]
    assert nxt - 1 == cfg.N
    return make_allocation(cfg, sets)


def _profile_load(profile: tuple[int, ...]) -> Fraction:
    s1, s2, s3, s12, s13, s23, _ = profile
    return 2 * Fraction(s1 + s2 + s3) + g(s12, s13, s23)


def min_load_bruteforce(cfg: SystemConfig, budget: int = DEFAULT_BUDGET
                        ) -> tuple[Fraction, FileAllocation]:
    """Exact minimum load over all allocations, with one argmin witness.

    The search runs on the doubled instance (half-file granularity); the
    returned load is halved back and the witness lives on the doubled
    instance whenever the optimum requires half-granularity.
    """
    if cfg.K != 3:
        raise ValueError("oracle handles K=3 only")
    doubled = double_instance(cfg)
    required = profile_count_bound(doubled)
    if required > budget:
        raise BudgetExceeded(required, budget)

    best: Fraction | None = None
    best_profile: tuple[int, ...] | None = None
    for profile in enumerate_profiles(doubled):
        load = _profile_load(profile)
        if best is None or load < best:
            best, best_profile = load, profile
    assert best is not None, "every feasible instance admits a profile"
    witness = allocation_from_k3_profile(doubled, best_profile)
    return best / 2, witness


def min_load_raw_enumeration(cfg: SystemConfig, budget: int = DEFAULT_BUDGET
                             ) -> Fraction:
    """Minimum over labeled exact-capacity allocations (cross-check path).

    Exponential in N; intended only for tiny instances.  Whole-file
    granularity only (no doubling), so it may sit above the true optimum
    by a half-unit effect; callers compare it against the profile search
    on the same undoubled instance.
    """
    from .coding_k3 import achievable_load

    assert cfg.K == 3
    N = cfg.N
    m = [min(x, N) for x in cfg.M]
    files = range(1, N + 1)
    count = 1
    for mk in m:
        from math import comb
        count *= comb(N, mk)
    if count > budget:
        raise BudgetExceeded(count, budget)

    best: Fraction | None = None
    for a1 in combinations(files, m[0]):
        for a2 in combinations(files, m[1]):
            for a3 in combinations(files, m[2]):
                if len(set(a1) | set(a2) | set(a3)) != N:
                    continue
                alloc = make_allocation(cfg, [a1, a2, a3])
                load = achievable_load(alloc)
                if best is None or load < best:
                    best = load
    assert best is not None
    return best


def verify_theorem(cfg: SystemConfig, budget: int = DEFAULT_BUDGET) -> bool:
    """Oracle minimum equals the closed-form optimum, exactly."""
    from .placement_k3 import optimal_load

    oracle_min, _ = min_load_bruteforce(cfg, budget=budget)
    return oracle_min == optimal_load(cfg)
