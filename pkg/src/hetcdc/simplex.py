"""Two-phase primal simplex over exact rationals.

Standard form: minimize c.x subject to A_eq x = b_eq, A_ub x <= b_ub,
x >= 0.  Inequalities get slack variables; phase 1 minimizes the sum of
artificial variables.  Bland's rule is used throughout, so cycling is
impossible.  Everything is fractions.Fraction; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class Unbounded(RuntimeError):
    pass


@dataclass
class SimplexResult:
    status: str
    objective: Fraction | None
    x: list[Fraction] | None


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    for r, tr in enumerate(tableau):
        if r != row and tr[col] != 0:
            factor = tr[col]
            tableau[r] = [v - factor * p for v, p in zip(tr, tableau[row])]
    basis[row] = col


def _iterate(tableau: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """Run simplex iterations on a tableau whose last row is the objective."""
    while True:
        obj = tableau[-1]
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return OPTIMAL
        # Bland: smallest-index entering column; leaving row by min ratio,
        # ties broken on smallest basis index.
        best_row = None
        best_ratio = None
        for r in range(len(tableau) - 1):
            a = tableau[r][col]
            if a > 0:
                ratio = tableau[r][-1] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[r] < basis[best_row])):
                    best_ratio, best_row = ratio, r
        if best_row is None:
            return UNBOUNDED
        _pivot(tableau, basis, best_row, col)


def solve_lp(c: Sequence[Fraction],
             a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction],
             a_ub: Sequence[Sequence[Fraction]], b_ub: Sequence[Fraction]) -> SimplexResult:
    """Minimize c.x with x >= 0, equality and <= constraints."""
    nvars = len(c)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    nslack = len(a_ub)
    for row, b in zip(a_eq, b_eq):
        rows.append([Fraction(v) for v in row] + [Fraction(0)] * nslack)
        rhs.append(Fraction(b))
    for i, (row, b) in enumerate(zip(a_ub, b_ub)):
        slack = [Fraction(0)] * nslack
        slack[i] = Fraction(1)
        rows.append([Fraction(v) for v in row] + slack)
        rhs.append(Fraction(b))
    # Normalize to nonnegative right-hand sides.
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    m = len(rows)
    ncols = nvars + nslack
    nart = m
    # Phase 1 tableau: columns = [x | slack | artificial | rhs].
    tableau = []
    basis = []
    for i in range(m):
        art = [Fraction(0)] * nart
        art[i] = Fraction(1)
        tableau.append(rows[i] + art + [rhs[i]])
        basis.append(ncols + i)
    obj = [Fraction(0)] * (ncols + nart) + [Fraction(0)]
    for i in range(m):
        for j in range(ncols + nart + 1):
            obj[j] -= tableau[i][j]
    # Artificial columns cost 1; after subtracting the rows their reduced
    # costs are 0 as required for a basic feasible start.
    for i in range(nart):
        obj[ncols + i] += Fraction(1)
    tableau.append(obj)

    status = _iterate(tableau, basis, ncols + nart)
    assert status == OPTIMAL, "phase 1 objective is bounded below by 0"
    if tableau[-1][-1] != 0:
        return SimplexResult(INFEASIBLE, None, None)

    # Drive out or drop artificial variables still basic (redundant rows).
    for r in range(m - 1, -1, -1):
        if basis[r] >= ncols:
            col = next((j for j in range(ncols) if tableau[r][j] != 0), None)
            if col is None:
                del tableau[r]
                del basis[r]
                m -= 1
            else:
                _pivot(tableau, basis, r, col)

    # Phase 2: real objective, artificial columns removed.
    tableau = [row[:ncols] + [row[-1]] for row in tableau[:-1]]
    obj = [Fraction(ci) for ci in c] + [Fraction(0)] * nslack + [Fraction(0)]
    for r in range(m):
        coef = obj[basis[r]]
        if coef != 0:
            obj = [v - coef * p for v, p in zip(obj, tableau[r])]
    tableau.append(obj)

    status = _iterate(tableau, basis, ncols)
    if status == UNBOUNDED:
        return SimplexResult(UNBOUNDED, None, None)

    x = [Fraction(0)] * nvars
    for r in range(m):
        if basis[r] < nvars:
            x[basis[r]] = tableau[r][-1]
    objective = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return SimplexResult(OPTIMAL, objective, x)
