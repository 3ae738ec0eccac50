"""Achievable-load linear program for general K.

Variables are the subset counts S_T (one per nonempty node subset) and,
per subsystem level j, one coding variable per regular collection: a set
of K distinct j-subsets in which every node appears exactly j times.
Each coding unit at level j saves transmissions against the uncoded
baseline; the LP picks subset sizes and coding amounts minimizing total
load subject to storage accounting.

For K > 3 the result is achievable but not claimed optimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

from .model import FileAllocation, SystemConfig, all_subsets, make_allocation
from .simplex import OPTIMAL, SimplexResult, solve_lp

DEFAULT_K_MAX = 6
DEFAULT_COLLECTION_CAP = 100_000


class TooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class Collection:
    """K distinct j-subsets covering every node exactly j times."""

    j: int
    members: tuple[frozenset[int], ...]


def enumerate_collections(K: int, j: int, cap: int = DEFAULT_COLLECTION_CAP
                          ) -> list[Collection]:
    """All regular collections at level j, in canonical order.

    Backtracking over the sorted list of j-subsets; each node's remaining
    quota starts at j and every chosen subset decrements its members.
    """
    if not 1 <= j <= K - 1:
        raise ValueError(f"need 1 <= j <= K-1, got j={j}, K={K}")
    subsets = [frozenset(c) for c in combinations(range(1, K + 1), j)]
    results: list[Collection] = []
    quota = {k: j for k in range(1, K + 1)}

    def backtrack(start: int, chosen: list[frozenset[int]]) -> None:
        if len(results) > cap:
            raise TooLarge(f"more than {cap} collections at K={K}, j={j}")
        if len(chosen) == K:
            if all(q == 0 for q in quota.values()):
                results.append(Collection(j, tuple(chosen)))
            return
        remaining_slots = K - len(chosen)
        for i in range(start, len(subsets)):
            if len(subsets) - i < remaining_slots:
                break
            s = subsets[i]
            if any(quota[k] == 0 for k in s):
                continue
            for k in s:
                quota[k] -= 1
            chosen.append(s)
            backtrack(i + 1, chosen)
            chosen.pop()
            for k in s:
                quota[k] += 1

    backtrack(0, [])
    return results


@dataclass(frozen=True)
class LPModel:
    cfg: SystemConfig
    subset_order: tuple[frozenset[int], ...]
    coding_vars: tuple[tuple[int, int], ...]          # (j, q) labels
    collections: dict[int, list[Collection]]          # per level j
    objective: tuple[Fraction, ...]
    a_eq: tuple[tuple[Fraction, ...], ...]
    b_eq: tuple[Fraction, ...]
    a_ub: tuple[tuple[Fraction, ...], ...]
    b_ub: tuple[Fraction, ...]

    @property
    def num_vars(self) -> int:
        return len(self.subset_order) + len(self.coding_vars)

    def var_names(self) -> list[str]:
        names = ["S_" + "".join(str(k) for k in sorted(t)) for t in self.subset_order]
        names += [f"x_{j}{q}" for j, q in self.coding_vars]
        return names


@dataclass(frozen=True)
class LPSolution:
    status: str
    optimum: Fraction | None
    subset_values: dict[frozenset[int], Fraction] | None
    coding_values: dict[tuple[int, int], Fraction] | None


def build_model(cfg: SystemConfig, k_max: int = DEFAULT_K_MAX) -> LPModel:
    """Assemble objective and constraints for the achievability LP."""
    K = cfg.K
    if K < 3:
        raise ValueError(f"LP formulation needs K >= 3, got {K}")
    if K > k_max:
        raise TooLarge(f"K={K} exceeds the configured maximum {k_max}")
    subset_order = tuple(all_subsets(K))
    subset_index = {t: i for i, t in enumerate(subset_order)}

    collections: dict[int, list[Collection]] = {}
    coding_vars: list[tuple[int, int]] = []
    for j in range(1, K - 1):
        collections[j] = enumerate_collections(K, j)
        coding_vars += [(j, q + 1) for q in range(len(collections[j]))]
    # Level K-1 uses one variable per node-complement subset; variable
    # (K-1, q) consumes one file from every (K-1)-subset containing q.
    coding_vars += [(K - 1, q) for q in range(1, K + 1)]

    nS = len(subset_order)
    nvars = nS + len(coding_vars)
    xindex = {label: nS + i for i, label in enumerate(coding_vars)}

    objective = [Fraction(0)] * nvars
    for t, i in subset_index.items():
        j = len(t)
        if j < K:
            objective[i] = Fraction(K - j)
    for j in range(1, K - 1):
        saving = Fraction(K * (K - j)) * (1 - Fraction(1, j))
        for q in range(1, len(collections[j]) + 1):
            objective[xindex[(j, q)]] = -saving
    for q in range(1, K + 1):
        objective[xindex[(K - 1, q)]] = -Fraction(K - 2)

    a_ub: list[list[Fraction]] = []
    b_ub: list[Fraction] = []
    for j in range(1, K - 1):
        for t in (s for s in subset_order if len(s) == j):
            row = [Fraction(0)] * nvars
            for q, coll in enumerate(collections[j], start=1):
                if t in coll.members:
                    row[xindex[(j, q)]] = Fraction(1)
            if any(v != 0 for v in row):
                row[subset_index[t]] = Fraction(-1)
                a_ub.append(row)
                b_ub.append(Fraction(0))
    for t in (s for s in subset_order if len(s) == K - 1):
        row = [Fraction(0)] * nvars
        for q in range(1, K + 1):
            if q in t:
                row[xindex[(K - 1, q)]] = Fraction(1)
        row[subset_index[t]] = Fraction(-1)
        a_ub.append(row)
        b_ub.append(Fraction(0))

    a_eq: list[list[Fraction]] = []
    b_eq: list[Fraction] = []
    row = [Fraction(0)] * nvars
    for t, i in subset_index.items():
        row[i] = Fraction(1)
    a_eq.append(row)
    b_eq.append(Fraction(cfg.N))
    row = [Fraction(0)] * nvars
    for t, i in subset_index.items():
        row[i] = Fraction(len(t))
    a_eq.append(row)
    b_eq.append(Fraction(cfg.M_total))
    for k in range(1, K + 1):
        row = [Fraction(0)] * nvars
        for t, i in subset_index.items():
            if k in t:
                row[i] = Fraction(1)
        a_eq.append(row)
        b_eq.append(Fraction(cfg.M[k - 1]))

    return LPModel(
        cfg=cfg,
        subset_order=subset_order,
        coding_vars=tuple(coding_vars),
        collections=collections,
        objective=tuple(objective),
        a_eq=tuple(tuple(r) for r in a_eq),
        b_eq=tuple(b_eq),
        a_ub=tuple(tuple(r) for r in a_ub),
        b_ub=tuple(b_ub),
    )


def solve(model: LPModel) -> LPSolution:
    result: SimplexResult = solve_lp(
        model.objective, model.a_eq, model.b_eq, model.a_ub, model.b_ub)
    if result.status != OPTIMAL:
        return LPSolution(status=result.status, optimum=None,
                          subset_values=None, coding_values=None)
    assert result.objective is not None and result.objective >= 0
    nS = len(model.subset_order)
    subset_values = {t: result.x[i] for i, t in enumerate(model.subset_order)}
    coding_values = {label: result.x[nS + i]
                     for i, label in enumerate(model.coding_vars)}
    return LPSolution(status=OPTIMAL, optimum=result.objective,
                      subset_values=subset_values, coding_values=coding_values)


@dataclass(frozen=True)
class ExtractedAllocation:
    allocation: FileAllocation
    scale: int
    # (j, q) -> list of (subset, first_file, last_file) coded ranges.
    coded_ranges: dict[tuple[int, int], list[tuple[frozenset[int], int, int]]]


def extract_allocation(cfg: SystemConfig, model: LPModel,
                       sol: LPSolution) -> ExtractedAllocation:
    """Greedy allocation realizing the LP's subset sizes.

    The instance is scaled by the LCM of all solution denominators
    (virtual subpacketization), then contiguous 1-based file ranges are
    assigned to subsets in canonical order.  Coding variables are
    annotated with the file ranges they cover inside each member subset,
    carving from the front of that subset's range.
    """
    assert sol.status == OPTIMAL
    scale = 1
    for v in list(sol.subset_values.values()) + list(sol.coding_values.values()):
        scale = lcm(scale, v.denominator)

    sizes = {t: int(sol.subset_values[t] * scale) for t in model.subset_order}
    sets: list[set[int]] = [set() for _ in range(cfg.K)]
    start: dict[frozenset[int], int] = {}
    nxt = 1
    for t in model.subset_order:
        start[t] = nxt
        for n in range(nxt, nxt + sizes[t]):
            for k in t:
                sets[k - 1].add(n)
        nxt += sizes[t]
    assert nxt - 1 == cfg.N * scale

    cursor = dict(start)
    coded_ranges: dict[tuple[int, int], list[tuple[frozenset[int], int, int]]] = {}
    for (j, q), value in sol.coding_values.items():
        amount = int(value * scale)
        if amount == 0:
            continue
        if j < cfg.K - 1:
            members = model.collections[j][q - 1].members
        else:
            members = tuple(t for t in model.subset_order
                            if len(t) == cfg.K - 1 and q in t)
        ranges = []
        for t in members:
            lo = cursor[t]
            cursor[t] = lo + amount
            assert cursor[t] <= start[t] + sizes[t]
            ranges.append((t, lo, lo + amount - 1))
        coded_ranges[(j, q)] = ranges

    scaled_cfg = SystemConfig(K=cfg.K, M=tuple(m * scale for m in cfg.M),
                              N=cfg.N * scale, perm=cfg.perm)
    alloc = make_allocation(scaled_cfg, sets)
    return ExtractedAllocation(allocation=alloc, scale=scale, coded_ranges=coded_ranges)


def dump_model(model: LPModel) -> str:
    """Plain-text row/column listing for external cross-checking."""
    names = model.var_names()

    def term(coef: Fraction, name: str) -> str:
        if coef == 1:
            return f"+ {name}"
        if coef == -1:
            return f"- {name}"
        sign = "+" if coef >= 0 else "-"
        return f"{sign} {abs(coef)}*{name}"

    def row_str(row, rel, b) -> str:
        parts = [term(c, n) for c, n in zip(row, names) if c != 0]
        return f"{' '.join(parts)} {rel} {b}"

    lines = [f"# LP model: K={model.cfg.K}, M={list(model.cfg.M)}, N={model.cfg.N}",
             "minimize " + " ".join(term(c, n) for c, n in zip(model.objective, names) if c != 0),
             "subject to"]
    for row, b in zip(model.a_eq, model.b_eq):
        lines.append("  " + row_str(row, "=", b))
    for row, b in zip(model.a_ub, model.b_ub):
        lines.append("  " + row_str(row, "<=", b))
    lines.append("  all variables >= 0")
    return "\n".join(lines)
