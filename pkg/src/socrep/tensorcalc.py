"""Tangent tensors of polynomial graphs and their positive decompositions.

For the graph ``x = t, y = f(t)`` the tangent tensor lives in
``Q[u, v]`` (``u`` the point, ``v`` the tangency parameter)::

    T(u, v) = f(u) - f(v) - (u - v) f'(v) = (u - v)**2 * R(u, v)

Everything downstream needs ``R`` written as a sum of products
``u**mu * v**mv * p(u) * q(v)`` with ``p(0), q(0) > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactpoly import BiPoly, UniPoly, differentiate, taylor_coefficient


class DecompositionError(ValueError):
    """Input does not admit the requested decomposition."""


@dataclass(frozen=True)
class Term:
    mu: int
    mv: int
    p: UniPoly
    q: UniPoly

    def expand(self) -> BiPoly:
        return BiPoly.monomial(self.mu, self.mv) * BiPoly.in_u(self.p) * BiPoly.in_v(self.q)


@dataclass(frozen=True)
class TensorDecomposition:
    base: BiPoly
    terms: tuple[Term, ...]
    flat_order: int = 0

    def expand(self) -> BiPoly:
        out = BiPoly()
        for term in self.terms:
            out = out + term.expand()
        return out

    def is_valid(self) -> bool:
        """Identity, positivity at the base point, and uniform flat order."""
        return (
            self.expand() == self.base
            and all(t.p(0) > 0 and t.q(0) > 0 for t in self.terms)
            and all(t.mu + t.mv == self.flat_order for t in self.terms)
        )

    def polys(self) -> list[UniPoly]:
        """All factors whose nonnegativity defines the validity radius."""
        out = []
        for t in self.terms:
            out.extend((t.p, t.q))
        return out


@dataclass(frozen=True)
class SPoly:
    m: int
    n: int
    value: BiPoly


def tangent_tensor(f: UniPoly) -> BiPoly:
    u, v = BiPoly.u(), BiPoly.v()
    fu = BiPoly.in_u(f)
    fv = BiPoly.in_v(f)
    dfv = BiPoly.in_v(f.derivative())
    return fu - fv - (u - v) * dfv


def taylor_remainder(f: UniPoly) -> BiPoly:
    """``sum_{k>=2} f^(k)(v)/k! * (u - v)**(k-2)``."""
    delta = BiPoly.u() - BiPoly.v()
    out = BiPoly()
    power = BiPoly.const(1)
    for k in range(2, f.degree + 1):
        out = out + BiPoly.in_v(taylor_coefficient(f, k)) * power
        power = power * delta
    return out


def s_polynomial(m: int, n: int) -> SPoly:
    if m < 1 or n <= m:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    terms: dict[tuple[int, int], int] = {}

    def add(i, j, c):
        terms[(i, j)] = terms.get((i, j), 0) + c

    for i in range(m - 1):
        add(i, n - i - 2, (n - m) * (i + 1))
    add(m - 1, n - m - 1, m * (n - m))
    for j in range(n - m - 1):
        add(n - 2 - j, j, m * (j + 1))
    return SPoly(m, n, BiPoly(terms))


def positive_residue_decompose(pairs: Sequence[tuple[UniPoly, UniPoly]]) -> TensorDecomposition:
    """Rewrite ``sum a_i(u) b_i(v)`` with every factor positive at 0.

    Requires ``sum a_i(0) b_i(0) > 0``.  Split ``a_i = c_i + alpha_i``,
    ``b_i = d_i + beta_i`` and use ``r = s = theta/4``, ``r_i = 1``,
    ``s_i = theta/(2N)`` so that ``r + s + sum r_i s_i = theta``.
    """
    pairs = list(pairs)
    base = BiPoly()
    for a, b in pairs:
        base = base + BiPoly.in_u(a) * BiPoly.in_v(b)
    theta = sum((a(0) * b(0) for a, b in pairs), Fraction(0))
    if theta <= 0:
        raise DecompositionError(f"residue not positive: {theta}")
    n = len(pairs)
    r = s = theta / 4
    r_i = Fraction(1)
    s_i = theta / (2 * n)

    out: list[tuple[UniPoly, UniPoly]] = []
    left = UniPoly.const(r)
    right = UniPoly.const(s)
    for a, b in pairs:
        c, d = a(0), b(0)
        alpha, beta = a - c, b - d
        out.append((alpha + r_i, beta + s_i))
        left = left + alpha * (d - s_i)
        right = right + beta * (c - r_i)
    out.append((left, UniPoly.const(1)))
    out.append((UniPoly.const(1), right))
    terms = tuple(Term(0, 0, p, q) for p, q in out if not p.is_zero() and not q.is_zero())
    return TensorDecomposition(base=base, terms=terms, flat_order=0)


def elementary_pairs(x: BiPoly) -> list[tuple[UniPoly, UniPoly]]:
    """One pair ``(u**j, g_j(v))`` per ``u``-degree."""
    return [(UniPoly.monomial(j), g) for j, g in x.u_slices().items()]


def merge_terms(terms: Sequence[Term]) -> tuple[Term, ...]:
    """Scale every ``p`` to ``p(0) = 1`` and add up terms sharing ``(mu, mv, p)``.

    Identity and positivity are preserved because only positive scalars move
    from ``p`` to ``q`` and sums of base-positive ``q`` stay base-positive.
    """
    merged: dict[tuple[int, int, UniPoly], UniPoly] = {}
    for t in terms:
        c = t.p(0)
        key = (t.mu, t.mv, t.p * (1 / c))
        merged[key] = merged.get(key, UniPoly()) + t.q * c
    return tuple(Term(mu, mv, p, q) for (mu, mv, p), q in merged.items() if not q.is_zero())


def strict_decompose(f: UniPoly) -> TensorDecomposition:
    if differentiate(f, 2)(0) <= 0:
        raise DecompositionError("not strictly convex at base point")
    rem = taylor_remainder(f)
    raw = positive_residue_decompose(elementary_pairs(rem))
    return TensorDecomposition(base=rem, terms=merge_terms(raw.terms), flat_order=0)


def flat_order_of(f: UniPoly) -> tuple[int, Fraction]:
    """``(m, c_m)`` with ``m >= 2`` the lowest nonzero exponent of ``f``."""
    for k in range(2, f.degree + 1):
        if f.coeff(k):
            return k, f.coeff(k)
    raise DecompositionError("f is affine; tangent tensor vanishes")


def flat_cofactors(f: UniPoly) -> tuple[int, list[BiPoly]]:
    """Split ``R`` over the generators ``u**(m-2-i) * v**i`` (``0 <= i <= m-2``).

    Monomial ``u^a v^b`` goes to ``i = min(b, m-2)``, the largest admissible
    index.
    """
    if f.coeff(0) or f.coeff(1):
        raise DecompositionError("affine part of f must vanish")
    m, cm = flat_order_of(f)
    if cm <= 0:
        raise DecompositionError(f"lowest coefficient c_{m} = {cm} is not positive")
    k = m - 2
    rem = taylor_remainder(f)
    parts: list[dict] = [dict() for _ in range(k + 1)]
    for (a, b), c in rem.terms.items():
        i = min(b, k)
        if a < k - i:
            raise AssertionError(f"monomial u^{a} v^{b} below the flat order")
        parts[i][(a - (k - i), b - i)] = c
    return m, [BiPoly(p) for p in parts]


def flat_decompose(f: UniPoly) -> TensorDecomposition:
    m, cofactors = flat_cofactors(f)
    if m == 2:
        return strict_decompose(f)
    k = m - 2
    terms: list[Term] = []
    for i, g in enumerate(cofactors):
        sub = positive_residue_decompose(elementary_pairs(g))
        terms.extend(merge_terms([Term(k - i, i, t.p, t.q) for t in sub.terms]))
    return TensorDecomposition(base=taylor_remainder(f), terms=tuple(terms), flat_order=k)


def decompose(f: UniPoly) -> TensorDecomposition:
    """Strict path when ``f''(0) > 0``, flat path otherwise."""
    if differentiate(f, 2)(0) > 0:
        return strict_decompose(f)
    return flat_decompose(f - UniPoly([f.coeff(0), f.coeff(1)]))


def tensor_at(f: UniPoly, u, v) -> Fraction:
    """Point value of the tangent tensor, computed from ``f`` directly."""
    return f(u) - f(v) - (Fraction(u) - Fraction(v)) * f.derivative()(v)

