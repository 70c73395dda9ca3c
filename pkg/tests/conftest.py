from fractions import Fraction

import hypothesis.strategies as st
import sympy as sp
from hypothesis import settings

from socrep.exactpoly import BiPoly, UniPoly

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

T = UniPoly.t()
U_SYM, V_SYM, T_SYM = sp.symbols("u v t")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def unipolys(max_degree=6, elements=rationals):
    return st.lists(elements, max_size=max_degree + 1).map(UniPoly)


def to_sympy_uni(p: UniPoly, x=T_SYM):
    return sp.Integer(0) + sum(sp.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs))


def to_sympy_bi(b: BiPoly):
    return sp.expand(
        sp.Integer(0)
        + sum(sp.Rational(c.numerator, c.denominator) * U_SYM**i * V_SYM**j for (i, j), c in b.terms.items())
    )


def from_sympy_bi(expr) -> BiPoly:
    poly = sp.Poly(sp.expand(expr), U_SYM, V_SYM)
    return BiPoly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})
