"""Closed-form lower bounds on the K=3 shuffle load.

Four bounds cover the seven regimes: a per-allocation counting bound, a
pooled instance-level bound, a cut-set bound at the smallest node, and a
genie-aided refinement of the cut-set bound.  Their maximum meets the
achievable optimum on every instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import SubsetProfile, SystemConfig


@dataclass(frozen=True)
class BoundReport:
    pooled: Fraction
    cutset: Fraction
    genie: Fraction
    max_bound: Fraction
    # Allocation-specific counting bound, attached when a profile is known.
    corollary1: Fraction | None = None

    def active(self) -> list[str]:
        return [name for name in ("pooled", "cutset", "genie")
                if getattr(self, name) == self.max_bound]


def bound_corollary1(profile: SubsetProfile) -> Fraction:
    """Per-allocation bound: 2*(singles) + (pairs)/2.

    Also evaluated in the equivalent substituted form
    3N'/2 - M'/2 + singles (with N', M' recomputed from the profile) and
    asserted equal.
    """
    s1, s2, s3, s12, s13, s23, _ = profile.as_k3_tuple()
    direct = 2 * Fraction(s1 + s2 + s3) + Fraction(s12 + s13 + s23, 2)
    n_eff = profile.total_files
    m_eff = profile.total_storage
    rewritten = Fraction(3 * n_eff, 2) - Fraction(m_eff, 2) + (s1 + s2 + s3)
    assert direct == rewritten
    return direct


def lower_bound(cfg: SystemConfig) -> BoundReport:
    """Instance-level bounds over all allocations and coding schemes."""
    if cfg.K != 3:
        raise ValueError("bounds are defined for K=3")
    M1 = cfg.M[0]
    N, M = cfg.N, cfg.M_total
    # Pooled: 3N/2 - M/2 + (singles >= max(0, 2N - M)).
    pooled = Fraction(3 * N, 2) - Fraction(M, 2) + max(0, 2 * N - M)
    cutset = Fraction(N - M1)
    genie = Fraction(3 * N - (M1 + M))
    zero = Fraction(0)
    return BoundReport(
        pooled=max(pooled, zero),
        cutset=max(cutset, zero),
        genie=max(genie, zero),
        max_bound=max(pooled, cutset, genie, zero),
    )
