"""Exact feasibility LP over the rationals (phase-one simplex, Bland's rule)."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .exactpoly import as_rational

EQ = "="
GE = ">="


def lp_feasible(constraints: Sequence[tuple[Sequence, str, object]], nonneg: bool = False) -> Optional[list[Fraction]]:
    """Find ``x`` with ``a . x (= | >=) b`` for every row.

    Variables are free unless ``nonneg`` is set, in which case ``x >= 0``
    without splitting.  Returns a rational feasible point or ``None``.
    Deterministic: the same input always yields the same point.
    """
    rows = [([as_rational(c) for c in a], rel, as_rational(b)) for a, rel, b in constraints]
    if not rows:
        return []
    nvars = len(rows[0][0])
    for a, rel, _ in rows:
        if len(a) != nvars:
            raise ValueError("constraint vectors differ in length")
        if rel not in (EQ, GE):
            raise ValueError(f"unknown relation {rel!r}")

    # columns: x+ (nvars), x- (nvars unless nonneg), one surplus per >= row, one artificial per row
    n_ge = sum(1 for _, rel, _ in rows if rel == GE)
    m = len(rows)
    n_x = nvars if nonneg else 2 * nvars
    n_struct = n_x + n_ge
    ncols = n_struct + m
    tab: list[list[Fraction]] = []
    surplus = 0
    for r, (a, rel, b) in enumerate(rows):
        row = [Fraction(0)] * (ncols + 1)
        for j, c in enumerate(a):
            row[j] = c
            if not nonneg:
                row[nvars + j] = -c
        if rel == GE:
            row[n_x + surplus] = Fraction(-1)
            surplus += 1
        row[ncols] = b
        if b < 0:
            row = [-x for x in row]
        row[n_struct + r] = Fraction(1)
        tab.append(row)
    basis = [n_struct + r for r in range(m)]

    # objective: minimise sum of artificials; reduced costs kept in `obj`
    obj = [Fraction(0)] * (ncols + 1)
    for row in tab:
        for j in range(ncols + 1):
            obj[j] -= row[j]
    for r in range(m):
        obj[n_struct + r] = Fraction(0)

    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for r in range(m):
            c = tab[r][enter]
            if c > 0:
                ratio = tab[r][ncols] / c
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            # phase-one objective is bounded below by zero
            raise AssertionError("unbounded phase-one LP")
        _pivot(tab, obj, best[1], enter)
        basis[best[1]] = enter

    if obj[ncols] != 0:
        return None
    x = [Fraction(0)] * (2 * nvars)
    for r, j in enumerate(basis):
        if j < n_x:
            x[j] = tab[r][ncols]
    return [x[j] - x[nvars + j] for j in range(nvars)]


def _pivot(tab, obj, r, j):
    piv = tab[r][j]
    row = [x / piv for x in tab[r]]
    tab[r] = row
    for k in range(len(tab)):
        if k != r and tab[k][j] != 0:
            f = tab[k][j]
            tab[k] = [a - f * b for a, b in zip(tab[k], row)]
    if obj[j] != 0:
        f = obj[j]
        obj[:] = [a - f * b for a, b in zip(obj, row)]


def satisfies(x: Sequence[Fraction], constraints) -> bool:
    for a, rel, b in constraints:
        val = sum((as_rational(c) * xi for c, xi in zip(a, x)), Fraction(0))
        b = as_rational(b)
        if rel == EQ and val != b:
            return False
        if rel == GE and val < b:
            return False
    return True
