"""Regime classification, optimal load and achieving placements for K=3.

The parameter space (M1 <= M2 <= M3, N) splits into seven regimes, each
with a closed-form minimum load and an interval-based file placement that
achieves it.  Placements are built on the virtually doubled instance when
an interval endpoint would be fractional (this happens only when a
division by 2 in the recipe does not come out even).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .model import FileAllocation, SystemConfig, double_instance, make_allocation


class InternalContradiction(RuntimeError):
    """A regime recipe produced a negative segment length; classification bug."""


class Regime(enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    R6 = "R6"
    R7 = "R7"


@dataclass(frozen=True)
class SegmentLayout:
    """The four segment lengths of a regime's placement diagram."""

    regime: Regime
    lengths: tuple[int, int, int, int]
    doubled: bool


def _require_k3_sorted(cfg: SystemConfig) -> None:
    if cfg.K != 3:
        raise ValueError(f"K=3 required, got K={cfg.K}")
    if not (cfg.M[0] <= cfg.M[1] <= cfg.M[2]):
        raise ValueError(f"capacities must be sorted ascending, got {cfg.M}")


def classify_regime(cfg: SystemConfig) -> Regime:
    """Map a sorted K=3 instance to its regime.

    The R2/R3 split additionally uses the threshold M3 <= 3N - M1 - 3M2:
    both regimes share the same load formula but use different placement
    recipes, and the R2 recipe is valid exactly below that threshold.
    """
    _require_k3_sorted(cfg)
    M1, M2, M3 = cfg.M
    N = cfg.N
    M = cfg.M_total
    if M1 + M2 <= N:
        return Regime.R1 if M3 <= N + M1 - M2 else Regime.R4
    if M <= 2 * N:
        if M3 > N + M1 - M2:
            return Regime.R5
        return Regime.R2 if M3 <= 3 * N - M1 - 3 * M2 else Regime.R3
    return Regime.R6 if M3 <= N + M1 - M2 else Regime.R7


def optimal_load(cfg: SystemConfig) -> Fraction:
    """Minimum shuffle load (closed form, exact rational)."""
    _require_k3_sorted(cfg)
    M1, _, _ = cfg.M
    N, M = cfg.N, cfg.M_total
    regime = classify_regime(cfg)
    if regime in (Regime.R1, Regime.R2, Regime.R3):
        value = Fraction(7 * N, 2) - Fraction(3 * M, 2)
    elif regime in (Regime.R4, Regime.R5):
        value = Fraction(3 * N - (M1 + M))
    elif regime is Regime.R6:
        value = Fraction(3 * N, 2) - Fraction(M, 2)
    else:
        value = Fraction(N - M1)
    assert value >= 0
    return value


def _raw_segments(cfg: SystemConfig, regime: Regime) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    M1, M2, M3 = cfg.M
    N, M = cfg.N, cfg.M_total
    half = lambda v: Fraction(v, 2)
    if regime is Regime.R1:
        return (M1 - half(M - N), half(M - N), M2 - half(M - N), Fraction(N - (M1 + M2)))
    if regime is Regime.R4:
        return (Fraction(M1), Fraction(M2 + M3 - N), Fraction(N - M3), Fraction(N - (M1 + M2)))
    if regime is Regime.R2:
        d = half(M3 - (M1 + M2 - N))
        return (Fraction(M1 + M2 - N), M1 - 2 * (M1 + M2 - N) - d, d, N - M1 - d)
    if regime is Regime.R3:
        l1 = half(M - N) - (N - M2)
        return (l1, half(M - N) - (M2 + M3 - N), M2 + M3 - N - l1, Fraction(2 * N - M))
    if regime is Regime.R5:
        return (Fraction(M1 + M2 - N), Fraction(N - M2), Fraction(M2 + M3 - N - M1), Fraction(2 * N - M))
    # R6 and R7 share one diagram
    return (Fraction(M - 2 * N), Fraction(N - M3), Fraction(N - M2), Fraction(N - M1))


def segment_lengths(cfg: SystemConfig, regime: Regime | None = None) -> SegmentLayout:
    """Evaluate the regime's segment-length recipe.

    Recomputes on the doubled instance when any length is fractional, so
    the returned lengths are always nonnegative integers.
    """
    _require_k3_sorted(cfg)
    if regime is None:
        regime = classify_regime(cfg)
    values = _raw_segments(cfg, regime)
    doubled = any(v.denominator != 1 for v in values)
    if doubled:
        values = _raw_segments(double_instance(cfg), regime)
    if any(v < 0 or v.denominator != 1 for v in values):
        raise InternalContradiction(
            f"segment recipe for {regime} on {cfg.M}, N={cfg.N} gave {values}")
    lengths = tuple(int(v) for v in values)
    return SegmentLayout(regime=regime, lengths=lengths, doubled=doubled)


def _interval(a: int, b: int) -> list[int]:
    """Inclusive 1-based interval [a:b]; empty when b < a."""
    return list(range(a, b + 1))


def _placement_needs_doubling(cfg: SystemConfig, regime: Regime) -> bool:
    M1, M2, M3 = cfg.M
    N, M = cfg.N, cfg.M_total
    if regime is Regime.R1:
        return (M - N) % 2 != 0
    if regime is Regime.R2:
        return (M3 - (M1 + M2 - N)) % 2 != 0
    return False


def build_placement(cfg: SystemConfig) -> FileAllocation:
    """Construct the interval placement achieving the optimal load.

    The result lives on the doubled instance when the recipe's division
    by 2 is fractional; its Lemma-1 load is then exactly twice the
    original optimum.
    """
    _require_k3_sorted(cfg)
    regime = classify_regime(cfg)
    if _placement_needs_doubling(cfg, regime):
        cfg = double_instance(cfg)
    M1, M2, M3 = cfg.M
    N, M = cfg.N, cfg.M_total

    if regime in (Regime.R1, Regime.R4):
        s1 = _interval(1, M1)
        s2 = _interval(M1 + 1, M1 + M2)
        if regime is Regime.R1:
            h = (M - N) // 2
            s3 = _interval(M1 + M2 + 1, N) + _interval(M1 - h + 1, M1 + h)
        else:
            s3 = _interval(M1 + M2 + 1, N) + _interval(1, M - N)
    else:
        s1 = _interval(1, M1)
        s2 = _interval(M1 + 1, N) + _interval(1, M1 + M2 - N)
        if regime is Regime.R2:
            d = (M3 - (M1 + M2 - N)) // 2
            s3 = (_interval(M1 + M2 - N + 1, 2 * (M1 + M2 - N))
                  + _interval(M1 - d + 1, M1 + d))
        elif regime in (Regime.R3, Regime.R5):
            s3 = _interval(M1 + M2 - N + 1, M - N)
        else:  # R6, R7
            s3 = _interval(M1 + M2 - N + 1, N) + _interval(1, M - 2 * N)

    for name, s in (("M1", s1), ("M2", s2), ("M3", s3)):
        if len(set(s)) != len(s):
            raise InternalContradiction(f"{regime}: overlapping intervals in {name}")
    return make_allocation(cfg, [s1, s2, s3])
