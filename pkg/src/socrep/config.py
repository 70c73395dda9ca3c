"""Run configurations for the experiment scripts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class BuildConfig:
    cap: Fraction = Fraction(2, 5)
    precision: Fraction = Fraction(1, 1000)
    n_tangents: int = 21
    soundness_grid: int = 21


@dataclass(frozen=True)
class ObstructionConfig:
    circle_counts: tuple[int, ...] = (6, 8, 10)
    moment_degree: int = 4
    moment_counts: tuple[int, ...] = (5, 6, 7, 8)
    ds: tuple[int, ...] = (1, 2, 3)
    jobs: int = 1
