"""Combinatorial lower bound for the semidefinite extension degree.

For a finite sample ``S`` of a convex set ``K = conv(hull_generators)`` and
an integer ``d``, condition (*) asks that every ``d``-subset ``T`` of ``S``
be cut out by an affine functional nonnegative on ``K``: zero on ``T`` and
positive on ``S \\ T``.  Positivity is normalized to ``>= 1`` (the
functionals form a cone), so each subset is one exact LP.

A verdict on one finite sample is evidence only; the lower bound
``sxdeg(K) >= d + 1`` needs samples of unbounded size.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .exactpoly import as_rational
from .lp import EQ, GE, lp_feasible

CAVEAT = (
    "finite-sample evidence only: the bound sxdeg >= d+1 requires condition (*) "
    "on samples of arbitrarily large size; certified relative to conv(hull_generators)"
)


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: tuple[tuple[Fraction, ...], ...]
    hull_generators: Optional[tuple[tuple[Fraction, ...], ...]] = None

    def __post_init__(self):
        for p in self.points + (self.hull_generators or ()):
            if len(p) != self.dim:
                raise ValueError(f"point {p} does not have dimension {self.dim}")
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")

    @classmethod
    def of(cls, points, hull_generators=None) -> "PointSet":
        pts = tuple(tuple(as_rational(c) for c in p) for p in points)
        gens = None if hull_generators is None else tuple(tuple(as_rational(c) for c in p) for p in hull_generators)
        dim = len(pts[0]) if pts else 0
        return cls(dim, pts, gens)

    @property
    def generators(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.points if self.hull_generators is None else self.hull_generators

    def scaled(self, lam) -> "PointSet":
        lam = as_rational(lam)
        sc = lambda ps: tuple(tuple(lam * c for c in p) for p in ps)  # noqa: E731
        return PointSet(self.dim, sc(self.points), None if self.hull_generators is None else sc(self.hull_generators))


@dataclass(frozen=True)
class StarWitness:
    subset: tuple[int, ...]
    f_coeffs: tuple[Fraction, ...]  # (w_1..w_n, w_0): f(x) = w.x + w_0


@dataclass(frozen=True)
class ObstructionReport:
    holds: bool
    d: int
    witnesses: tuple[StarWitness, ...]
    failing_subset: Optional[tuple[int, ...]] = None
    note: str = CAVEAT


def affine_value(w: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(w, x)), Fraction(0)) + w[len(x)]


def star_constraints(S: PointSet, T: Sequence[int]):
    Tset = set(T)
    rows = []
    for k in T:
        rows.append((list(S.points[k]) + [1], EQ, 0))
    for k, y in enumerate(S.points):
        if k not in Tset:
            rows.append((list(y) + [1], GE, 1))
    for z in S.generators:
        rows.append((list(z) + [1], GE, 0))
    return rows


def witness_ok(S: PointSet, w: StarWitness) -> bool:
    """Re-substitute a witness into its defining constraints."""
    T = set(w.subset)
    if len(w.f_coeffs) != S.dim + 1:
        return False
    for k, x in enumerate(S.points):
        val = affine_value(w.f_coeffs, x)
        if (k in T and val != 0) or (k not in T and val < 1):
            return False
    return all(affine_value(w.f_coeffs, z) >= 0 for z in S.generators)


def _solve(args):
    S, T = args
    return lp_feasible(star_constraints(S, T))


def condition_star(S: PointSet, d: int, jobs: int = 1) -> ObstructionReport:
    if not 1 <= d < len(S.points):
        raise ValueError(f"d must satisfy 1 <= d < |S| = {len(S.points)}")
    subsets = list(combinations(range(len(S.points)), d))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            sols = list(pool.map(_solve, [(S, T) for T in subsets], chunksize=8))
    else:
        sols = [_solve((S, T)) for T in subsets]
    witnesses = []
    for T, sol in zip(subsets, sols):
        if sol is None:
            return ObstructionReport(False, d, tuple(witnesses), failing_subset=T)
        witnesses.append(StarWitness(T, tuple(sol)))
    return ObstructionReport(True, d, tuple(witnesses))


def moment_curve_points(n: int, count: int) -> PointSet:
    """``(t, t^2, ..., t^n)`` for ``t = 1..count``."""
    if n < 2 or n % 2:
        raise ValueError("n must be an even integer >= 2")
    if count < 1:
        raise ValueError("count must be positive")
    return PointSet.of([[Fraction(t) ** k for k in range(1, n + 1)] for t in range(1, count + 1)])


def rational_circle_points(count: int) -> PointSet:
    """Distinct rational points on the unit circle from ``s -> ((1-s^2), 2s)/(1+s^2)``."""
    params = [Fraction(0)]
    k = 1
    while len(params) < count:
        for s in (Fraction(1, k + 1), Fraction(-1, k + 1), Fraction(k + 1), Fraction(-(k + 1))):
            if len(params) < count and s not in params:
                params.append(s)
        k += 1
    return PointSet.of([[(1 - s * s) / (1 + s * s), 2 * s / (1 + s * s)] for s in params])
