"""Exact rational polynomials in one and two variables.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  ``UniPoly`` is dense in the variable ``t``; ``BiPoly`` is a
sparse map ``(i, j) -> c`` standing for ``c * u**i * v**j``.

Univariate nonnegativity on an interval is decided exactly with Sturm
sequences of the squarefree part and of the odd-multiplicity part.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, floor
from typing import Iterable, Mapping, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal; decimals are refused."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text.replace(" ", ""))


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class UniPoly:
    """Immutable dense univariate polynomial; ``coeffs[k]`` multiplies ``t**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def t(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return _format_terms(((c, k) for k, c in enumerate(self.coeffs)), lambda k: _pow("t", k))

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(as_rational(other))

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = as_rational(other)
            return UniPoly(c * x for x in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.lc
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quo), UniPoly(rem[: other.degree])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def shift(self, k: int) -> "UniPoly":
        """Multiply by ``t**k``."""
        if self.is_zero():
            return self
        return UniPoly([0] * k + list(self.coeffs))

    def low_order(self) -> int:
        """Exponent of the lowest nonzero coefficient (``-1`` for zero)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1


def differentiate(p: UniPoly, k: int = 1) -> UniPoly:
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    for _ in range(k):
        p = p.derivative()
    return p


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """``p / gcd(p, p')``, same leading sign as ``p``."""
    if p.degree <= 0:
        return p
    return p // poly_gcd(p, p.derivative())


def odd_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct roots of ``p`` having odd multiplicity.

    Yun's squarefree factorization ``p = c * prod f_i**i``; keep the odd ``i``.
    """
    if p.degree <= 0:
        return UniPoly.const(1)
    out = UniPoly.const(1)
    a0 = poly_gcd(p, p.derivative())
    b = p // a0
    c = p.derivative() // a0
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        fi = poly_gcd(b, d)
        if i % 2 == 1:
            out = out * fi
        b = b // fi
        c = d // fi
        d = c - b.derivative()
        i += 1
    return out.monic()


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    if seq[-1].is_zero():
        seq.pop()
    return seq


def _sign_changes(seq: Sequence[UniPoly], x: Fraction) -> int:
    signs = [v > 0 for v in (q(x) for q in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: UniPoly, lo, hi, *, open_right: bool = True) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi)`` (or ``(lo, hi]``)."""
    lo, hi = as_rational(lo), as_rational(hi)
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    if hi <= lo or p.degree <= 0:
        return 0
    s = squarefree_part(p)
    seq = sturm_sequence(s)
    n = _sign_changes(seq, lo) - _sign_changes(seq, hi)
    if open_right and s(hi) == 0:
        n -= 1
    return n


@dataclass(frozen=True)
class IntervalCert:
    """Certificate that ``poly >= 0`` on ``[lo, hi]``.

    ``odd_part`` collects the roots of odd multiplicity; acceptance requires
    it to have no root strictly inside the interval, nonnegative endpoint
    values and a nonnegative interior sample.
    """

    poly: UniPoly
    lo: Fraction
    hi: Fraction
    squarefree_part: UniPoly
    odd_part: UniPoly
    root_count_interior: int
    odd_root_count_interior: int
    endpoint_values: tuple[Fraction, Fraction]
    sample: Fraction
    sample_value: Fraction

    @property
    def accepted(self) -> bool:
        if self.poly.is_zero():
            return True
        return (
            self.endpoint_values[0] >= 0
            and self.endpoint_values[1] >= 0
            and self.odd_root_count_interior == 0
            and self.sample_value >= 0
        )


@dataclass(frozen=True)
class Refutation:
    """A rational point of ``[lo, hi]`` where ``poly`` is negative."""

    poly: UniPoly
    lo: Fraction
    hi: Fraction
    witness: Fraction
    value: Fraction

    accepted = False


def _nonroot_sample(p: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    # p has at most deg p roots, so one of deg+1 distinct interior points works
    steps = max(p.degree, 0) + 2
    for k in range(1, steps):
        x = lo + (hi - lo) * Fraction(k, steps)
        if p(x) != 0:
            return x
    return (lo + hi) / 2


def _has_negative(p: UniPoly, odd: UniPoly, lo: Fraction, hi: Fraction) -> bool:
    if p(lo) < 0 or p(hi) < 0:
        return True
    if lo == hi:
        return False
    if odd.degree > 0 and count_roots(odd, lo, hi) > 0:
        return True
    return p(_nonroot_sample(p, lo, hi)) < 0


def _negative_witness(p: UniPoly, odd: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    # caller guarantees p < 0 somewhere on [lo, hi]
    while True:
        if p(lo) < 0:
            return lo
        if p(hi) < 0:
            return hi
        mid = (lo + hi) / 2
        if p(mid) < 0:
            return mid
        if _has_negative(p, odd, lo, mid):
            hi = mid
        else:
            lo = mid


def nonneg_on_interval(p: UniPoly, lo, hi) -> IntervalCert | Refutation:
    """Decide ``p >= 0`` on ``[lo, hi]`` exactly.

    Returns an accepted :class:`IntervalCert` or a :class:`Refutation`
    carrying a rational point with ``p(w) < 0``.
    """
    lo, hi = as_rational(lo), as_rational(hi)
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    sq = squarefree_part(p) if not p.is_zero() else p
    odd = odd_part(p) if not p.is_zero() else UniPoly.const(1)
    if p.is_zero() or lo == hi:
        n_all = n_odd = 0
    else:
        n_all = count_roots(p, lo, hi)
        n_odd = count_roots(odd, lo, hi) if odd.degree > 0 else 0
    sample = _nonroot_sample(p, lo, hi) if lo < hi else lo
    cert = IntervalCert(
        poly=p,
        lo=lo,
        hi=hi,
        squarefree_part=sq,
        odd_part=odd,
        root_count_interior=n_all,
        odd_root_count_interior=n_odd,
        endpoint_values=(p(lo), p(hi)),
        sample=sample,
        sample_value=p(sample),
    )
    if cert.accepted:
        return cert
    w = _negative_witness(p, odd, lo, hi)
    return Refutation(poly=p, lo=lo, hi=hi, witness=w, value=p(w))


def certified_radius(ps: Sequence[UniPoly], cap, precision) -> Fraction:
    """Largest-ish ``a <= cap`` with every ``p >= 0`` on ``[-a, a]``.

    Bisection on the exact predicate; the returned value is always
    certified and is either ``cap`` or within ``precision`` of the supremum.
    The simplest rational left in the final bracket is tried last, so an
    exact supremum like ``1`` or ``2/5`` is usually hit on the nose.
    """
    cap, precision = as_rational(cap), as_rational(precision)
    if cap <= 0 or precision <= 0:
        raise ValueError("cap and precision must be positive")
    for p in ps:
        if p(0) <= 0:
            raise ValueError(f"not positive at base point: {p}")

    def ok(a: Fraction) -> bool:
        return all(nonneg_on_interval(p, -a, a).accepted for p in ps)

    if ok(cap):
        return cap
    lo, hi = cap / 2, cap
    while not ok(lo):
        lo, hi = lo / 2, lo
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    # the supremum is often a short rational; prefer it when it certifies
    nice = simplest_between(lo, hi)
    return nice if nice > lo and ok(nice) else lo


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in ``[lo, hi]`` (``0 < lo <= hi``)."""
    fl = floor(lo)
    if fl == lo or fl + 1 <= hi:
        return Fraction(fl if fl == lo else fl + 1)
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


class BiPoly:
    """Immutable sparse polynomial in ``u, v``: ``{(i, j): c}`` for ``c u^i v^j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            acc[(i, j)] = acc.get((i, j), Fraction(0)) + as_rational(c)
        object.__setattr__(self, "terms", {k: c for k, c in sorted(acc.items()) if c != 0})

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def u(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def v(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def in_u(cls, p: UniPoly) -> "BiPoly":
        return cls({(k, 0): c for k, c in enumerate(p.coeffs)})

    @classmethod
    def in_v(cls, p: UniPoly) -> "BiPoly":
        return cls({(0, k): c for k, c in enumerate(p.coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def __call__(self, u, v) -> Fraction:
        u, v = as_rational(u), as_rational(v)
        return sum((c * u**i * v**j for (i, j), c in self.terms.items()), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(("BiPoly", tuple(self.terms.items())))

    def __repr__(self):
        return f"BiPoly({ {k: str(c) for k, c in self.terms.items()} })"

    def __str__(self):
        return _format_terms(
            ((c, k) for k, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), -kv[0][0]))),
            lambda k: "*".join(x for x in (_pow("u", k[0]), _pow("v", k[1])) if x),
        )

    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        return BiPoly.const(as_rational(other))

    def __add__(self, other):
        o = self._coerce(other)
        return BiPoly(list(self.terms.items()) + list(o.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = as_rational(other)
            return BiPoly({k: c * x for k, x in self.terms.items()})
        acc: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                acc[key] = acc.get(key, Fraction(0)) + a * b
        return BiPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BiPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def swap(self) -> "BiPoly":
        """Exchange the roles of ``u`` and ``v``."""
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def u_slices(self) -> dict[int, UniPoly]:
        """Group by ``u``-degree: ``self = sum_j u**j * out[j](v)``."""
        rows: dict[int, dict[int, Fraction]] = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(i, {})[j] = c
        out = {}
        for i in sorted(rows):
            row = rows[i]
            out[i] = UniPoly(row.get(k, 0) for k in range(max(row) + 1))
        return out


def compose_uni_in_bi(p: UniPoly, x: BiPoly) -> BiPoly:
    """Evaluate ``p`` at the bivariate polynomial ``x`` (Horner)."""
    acc = BiPoly()
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def taylor_coefficient(p: UniPoly, k: int) -> UniPoly:
    """``p^(k) / k!``."""
    return differentiate(p, k) * Fraction(1, factorial(k))


def _pow(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _format_terms(items, mono) -> str:
    parts = []
    for c, k in items:
        if c == 0:
            continue
        m = mono(k)
        mag = abs(c)
        body = m if (m and mag == 1) else (f"{mag}*{m}" if m else f"{mag}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for s, b in parts[1:]:
        text += f" {s} {b}"
    return text
