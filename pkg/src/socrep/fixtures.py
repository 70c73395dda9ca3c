"""Handcrafted decomposition for ``f(t) = t^2 - t^6``.

With ``p_i(u) = a^i + u^i`` and ``q_j(v) = a^j - v^j``::

    1 - u^4 - 2u^3 v - 3u^2 v^2 - 4u v^3 - 5v^4
        = 2 p_3 q_1 + 3 p_2 q_2 + 4 p_1 q_3 + p_4 + q_4

for every ``a``; all eight factors are nonnegative on ``[-a, a]`` as long
as ``28 a^4 <= 1``.
"""

from __future__ import annotations

from fractions import Fraction

from .exactpoly import UniPoly, as_rational
from .tensorcalc import TensorDecomposition, Term, taylor_remainder

T = UniPoly.t()
X2_MINUS_X6 = T**2 - T**6


def p_family(a, i: int) -> UniPoly:
    return UniPoly.monomial(i) + as_rational(a) ** i


def q_family(a, j: int) -> UniPoly:
    return UniPoly.const(as_rational(a) ** j) - UniPoly.monomial(j)


def p4(a) -> UniPoly:
    a = as_rational(a)
    return UniPoly([Fraction(1, 2) - 4 * a**4, -4 * a**3, -3 * a**2, -2 * a, -1])


def q4(a) -> UniPoly:
    a = as_rational(a)
    return UniPoly([Fraction(1, 2) - 5 * a**4, 2 * a**3, 3 * a**2, 4 * a, -5])


def x2_minus_x6_polys(a) -> list[UniPoly]:
    """The eight factors ``p_1..p_4, q_1..q_4``."""
    return [p_family(a, 1), p_family(a, 2), p_family(a, 3), p4(a), q_family(a, 1), q_family(a, 2), q_family(a, 3), q4(a)]


def x2_minus_x6_decomposition(a) -> TensorDecomposition:
    one = UniPoly.const(1)
    terms = (
        Term(0, 0, p_family(a, 3) * 2, q_family(a, 1)),
        Term(0, 0, p_family(a, 2) * 3, q_family(a, 2)),
        Term(0, 0, p_family(a, 1) * 4, q_family(a, 3)),
        Term(0, 0, p4(a), one),
        Term(0, 0, one, q4(a)),
    )
    return TensorDecomposition(base=taylor_remainder(X2_MINUS_X6), terms=terms, flat_order=0)
