"""Core domain types for heterogeneous coded-shuffle planning.

Instances are described by a node count K, per-node storage capacities M_k
and a file count N.  A concrete assignment of files to nodes is a
FileAllocation; its sufficient statistic for load computations is the
subset profile: for every nonempty set T of nodes, the number of files
stored by exactly the nodes in T.

All loads are exact rationals (fractions.Fraction); no floats appear
anywhere in the planning path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


class BadDimension(ValueError):
    """Instance dimensions are malformed (K < 2, nonpositive M_k or N)."""


class FeasibilityViolation(ValueError):
    """Total storage cannot cover all files (sum(M) < N)."""


@dataclass(frozen=True)
class SystemConfig:
    """A problem instance: K nodes with capacities M and N files.

    For K=3 the capacities are kept sorted ascending; ``perm`` records,
    for each sorted slot, the 1-based position in the user's original
    order so results can be reported back unsorted.
    """

    K: int
    M: tuple[int, ...]
    N: int
    perm: tuple[int, ...] | None = None

    @property
    def M_total(self) -> int:
        return sum(self.M)


def validate_config(K: int, M: Sequence[int], N: int, *, sort_k3: bool = True) -> SystemConfig:
    """Validate raw instance parameters and normalize node order for K=3.

    Raises BadDimension for malformed dimensions and FeasibilityViolation
    when the capacities cannot jointly store all N files.
    """
    if K < 2:
        raise BadDimension(f"need at least 2 nodes, got K={K}")
    if len(M) != K:
        raise BadDimension(f"expected {K} storage sizes, got {len(M)}")
    if N <= 0:
        raise BadDimension(f"file count must be positive, got N={N}")
    if any(m <= 0 for m in M):
        raise BadDimension(f"storage sizes must be positive, got M={tuple(M)}")
    if sum(M) < N:
        raise FeasibilityViolation(f"sum(M)={sum(M)} < N={N}: files cannot all be stored")

    # A node can usefully store at most N distinct files; clamping keeps
    # the closed-form load expressions valid for oversized capacities.
    M = tuple(min(int(m), N) for m in M)
    perm = None
    if K == 3 and sort_k3:
        order = sorted(range(K), key=lambda i: (M[i], i))
        perm = tuple(i + 1 for i in order)
        M = tuple(M[i] for i in order)
    return SystemConfig(K=K, M=M, N=int(N), perm=perm)


@dataclass(frozen=True)
class FileAllocation:
    """Which files (1-based indices) each node stores."""

    config: SystemConfig
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        cfg = self.config
        if len(self.sets) != cfg.K:
            raise BadDimension(f"expected {cfg.K} file sets, got {len(self.sets)}")
        union = frozenset().union(*self.sets)
        if union != frozenset(range(1, cfg.N + 1)):
            missing = sorted(set(range(1, cfg.N + 1)) - union)
            extra = sorted(union - set(range(1, cfg.N + 1)))
            raise FeasibilityViolation(
                f"allocation must cover files 1..{cfg.N} exactly; missing={missing}, extra={extra}")
        for k, s in enumerate(self.sets):
            if len(s) > cfg.M[k]:
                raise FeasibilityViolation(
                    f"node {k + 1} stores {len(s)} files, capacity is {cfg.M[k]}")


def make_allocation(cfg: SystemConfig, sets: Iterable[Iterable[int]]) -> FileAllocation:
    return FileAllocation(cfg, tuple(frozenset(s) for s in sets))


@dataclass(frozen=True)
class SubsetProfile:
    """Counts S_T: number of files stored by exactly the node set T."""

    K: int
    counts: dict[frozenset[int], int]

    def __getitem__(self, nodes: Iterable[int]) -> int:
        return self.counts.get(frozenset(nodes), 0)

    @property
    def total_files(self) -> int:
        return sum(self.counts.values())

    @property
    def total_storage(self) -> int:
        return sum(len(t) * s for t, s in self.counts.items())

    def singles(self) -> tuple[int, ...]:
        return tuple(self[{k}] for k in range(1, self.K + 1))

    def pairs(self) -> dict[frozenset[int], int]:
        return {frozenset(p): self[p] for p in combinations(range(1, self.K + 1), 2)}

    def as_k3_tuple(self) -> tuple[int, int, int, int, int, int, int]:
        """(S1, S2, S3, S12, S13, S23, S123); K=3 only."""
        assert self.K == 3
        return (self[{1}], self[{2}], self[{3}],
                self[{1, 2}], self[{1, 3}], self[{2, 3}], self[{1, 2, 3}])


def all_subsets(K: int) -> list[frozenset[int]]:
    """All nonempty node subsets in canonical (size, lexicographic) order."""
    out = []
    for size in range(1, K + 1):
        for combo in combinations(range(1, K + 1), size):
            out.append(frozenset(combo))
    return out


def derive_profile(alloc: FileAllocation) -> SubsetProfile:
    """Partition files by the exact set of nodes storing them."""
    K = alloc.config.K
    counts: dict[frozenset[int], int] = {t: 0 for t in all_subsets(K)}
    for n in range(1, alloc.config.N + 1):
        owners = frozenset(k + 1 for k in range(K) if n in alloc.sets[k])
        counts[owners] += 1
    return SubsetProfile(K=K, counts=counts)


def double_instance(cfg: SystemConfig) -> SystemConfig:
    """Scale the instance by 2 (virtual half-file granularity).

    Every load formula divides by at most 2, so one doubling makes all
    segment lengths integral; loads on the doubled instance are exactly
    twice the originals.
    """
    return SystemConfig(K=cfg.K, M=tuple(2 * m for m in cfg.M), N=2 * cfg.N, perm=cfg.perm)


def load_to_json(value: Fraction) -> dict:
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def load_from_json(obj: dict) -> Fraction:
    return Fraction(obj["num"], obj["den"])


def allocation_to_json(alloc: FileAllocation, *, regime: str | None = None,
                       load: Fraction | None = None) -> dict:
    cfg = alloc.config
    return {
        "K": cfg.K,
        "N": cfg.N,
        "M": list(cfg.M),
        "allocation": [sorted(s) for s in alloc.sets],
        "regime": regime,
        "load": load_to_json(load) if load is not None else None,
    }


def allocation_from_json(obj: dict) -> FileAllocation:
    cfg = validate_config(obj["K"], obj["M"], obj["N"], sort_k3=False)
    return make_allocation(cfg, obj["allocation"])


def allocation_dumps(alloc: FileAllocation, **kwargs) -> str:
    return json.dumps(allocation_to_json(alloc, **kwargs), indent=2)
