"""Lifted representations built from 1x1 and 2x2 PSD blocks.

A :class:`ConicRep` describes ``{x : exists y, every block(x, y) is PSD}``
with blocks whose entries are affine in ``(x, y)``.  Linear equalities are
stored as pairs of 1x1 blocks ``e >= 0, -e >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactpoly import BiPoly, UniPoly, as_rational, differentiate, nonneg_on_interval, certified_radius
from .lp import EQ, GE, lp_feasible
from .tensorcalc import DecompositionError, TensorDecomposition, decompose, flat_order_of, taylor_remainder

ZERO = Fraction(0)


class NeedsExternalSolver(RuntimeError):
    """Certificate synthesis beyond the extreme-ray generators."""


@dataclass(frozen=True)
class AffineForm:
    const: Fraction
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]

    @classmethod
    def make(cls, n: int, m: int, const=0, x: dict | None = None, y: dict | None = None) -> "AffineForm":
        xs = [ZERO] * n
        ys = [ZERO] * m
        for i, c in (x or {}).items():
            xs[i] += as_rational(c)
        for j, c in (y or {}).items():
            ys[j] += as_rational(c)
        return cls(as_rational(const), tuple(xs), tuple(ys))

    def __add__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(
            self.const + other.const,
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.y, other.y)),
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AffineForm":
        c = as_rational(c)
        return AffineForm(c * self.const, tuple(c * a for a in self.x), tuple(c * b for b in self.y))

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        acc = self.const
        for c, xi in zip(self.x, x):
            acc += c * as_rational(xi)
        for c, yj in zip(self.y, y):
            acc += c * as_rational(yj)
        return acc

    def is_zero(self) -> bool:
        return self.const == 0 and not any(self.x) and not any(self.y)


@dataclass(frozen=True)
class Block:
    entries: tuple[tuple[AffineForm, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def evaluate(self, x, y) -> list[list[Fraction]]:
        return [[e(x, y) for e in row] for row in self.entries]


def block1(e: AffineForm) -> Block:
    return Block(((e,),))


def block2(a: AffineForm, b: AffineForm, c: AffineForm) -> Block:
    return Block(((a, b), (b, c)))


def is_psd(mat: Sequence[Sequence[Fraction]]) -> bool:
    """Exact PSD test for 1x1 and 2x2 symmetric matrices."""
    if len(mat) == 1:
        return mat[0][0] >= 0
    (a, b), (b2, c) = mat
    if b != b2:
        return False
    return a >= 0 and c >= 0 and a * c - b * b >= 0


@dataclass(frozen=True)
class ConicRep:
    kind: str
    n_vars: int
    n_lifts: int
    blocks: tuple[Block, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in ("set", "cone"):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.labels and len(self.labels) != len(self.blocks):
            raise ValueError("labels must parallel blocks")
        for blk in self.blocks:
            if blk.size not in (1, 2):
                raise ValueError("only 1x1 and 2x2 blocks are allowed")
            for row in blk.entries:
                for e in row:
                    if len(e.x) != self.n_vars or len(e.y) != self.n_lifts:
                        raise ValueError("affine form has wrong dimensions")

    def zero(self) -> AffineForm:
        return AffineForm.make(self.n_vars, self.n_lifts)

    def X(self, i: int) -> AffineForm:
        return AffineForm.make(self.n_vars, self.n_lifts, x={i: 1})

    def Y(self, j: int) -> AffineForm:
        return AffineForm.make(self.n_vars, self.n_lifts, y={j: 1})


def check_point(r: ConicRep, x: Sequence, y: Sequence = ()) -> bool:
    if len(x) != r.n_vars or len(y) != r.n_lifts:
        raise ValueError(f"expected point of size {r.n_vars} and lift of size {r.n_lifts}")
    return all(is_psd(b.evaluate(x, y)) for b in r.blocks)


def violated_blocks(r: ConicRep, x: Sequence, y: Sequence = ()) -> list[str]:
    out = []
    for k, b in enumerate(r.blocks):
        if not is_psd(b.evaluate(x, y)):
            out.append(r.labels[k] if r.labels else f"block[{k}]")
    return out


# --- re-expressing blocks in a new variable space -------------------------

def _transform(form: AffineForm, const_image: AffineForm, x_images: Sequence[AffineForm],
               y_images: Sequence[AffineForm]) -> AffineForm:
    out = const_image.scale(form.const)
    for c, img in zip(form.x, x_images):
        if c:
            out = out + img.scale(c)
    for c, img in zip(form.y, y_images):
        if c:
            out = out + img.scale(c)
    return out


def _map_blocks(r: ConicRep, const_image, x_images, y_images, tag: str = "") -> list[tuple[Block, str]]:
    out = []
    for k, blk in enumerate(r.blocks):
        entries = tuple(tuple(_transform(e, const_image, x_images, y_images) for e in row) for row in blk.entries)
        label = r.labels[k] if r.labels else f"block[{k}]"
        out.append((Block(entries), f"{tag}{label}"))
    return out


def _assemble(kind, n, m, pairs) -> ConicRep:
    return ConicRep(kind, n, m, tuple(b for b, _ in pairs), tuple(lbl for _, lbl in pairs))


def _equality(e: AffineForm, label: str) -> list[tuple[Block, str]]:
    return [(block1(e), f"{label} (>=)"), (block1(-e), f"{label} (<=)")]


def _space(n, m):
    one = AffineForm.make(n, m, const=1)
    X = [AffineForm.make(n, m, x={i: 1}) for i in range(n)]
    Y = [AffineForm.make(n, m, y={j: 1}) for j in range(m)]
    return one, X, Y


# --- combinators -------------------------------------------------------------

def intersect(r1: ConicRep, r2: ConicRep) -> ConicRep:
    if r1.n_vars != r2.n_vars:
        raise ValueError(f"dimension mismatch: {r1.n_vars} vs {r2.n_vars}")
    if r1.kind != "set" or r2.kind != "set":
        raise ValueError("intersect expects set representations")
    n, m = r1.n_vars, r1.n_lifts + r2.n_lifts
    one, X, Y = _space(n, m)
    pairs = _map_blocks(r1, one, X, Y[: r1.n_lifts], "L:") + _map_blocks(r2, one, X, Y[r1.n_lifts:], "R:")
    return _assemble("set", n, m, pairs)


def lift_intersect(y1: Sequence, y2: Sequence) -> list:
    return list(y1) + list(y2)


def product(r1: ConicRep, r2: ConicRep) -> ConicRep:
    if r1.kind != "set" or r2.kind != "set":
        raise ValueError("product expects set representations")
    n, m = r1.n_vars + r2.n_vars, r1.n_lifts + r2.n_lifts
    one, X, Y = _space(n, m)
    pairs = _map_blocks(r1, one, X[: r1.n_vars], Y[: r1.n_lifts], "L:")
    pairs += _map_blocks(r2, one, X[r1.n_vars:], Y[r1.n_lifts:], "R:")
    return _assemble("set", n, m, pairs)


lift_product = lift_intersect


def cone_hull(r: ConicRep) -> ConicRep:
    """Conic hull by homogenizing every block in a new lift ``s``.

    Lifts are ``(y, s, t)``; the blocks ``[[s, x_i], [x_i, t]]`` force
    ``s > 0`` whenever ``x != 0``.
    """
    if r.kind != "set":
        raise ValueError("cone_hull expects a set representation")
    n, m = r.n_vars, r.n_lifts + 2
    _, X, Y = _space(n, m)
    s, t = Y[r.n_lifts], Y[r.n_lifts + 1]
    pairs = _map_blocks(r, s, X, Y[: r.n_lifts], "hom:")
    pairs += [(block2(s, X[i], t), f"[[s,x{i}],[x{i},t]]") for i in range(n)]
    return _assemble("cone", n, m, pairs)


def lift_cone_hull(x0: Sequence, y0: Sequence, lam) -> list[Fraction]:
    """Lift for ``lam * x0`` given a witness ``y0`` of ``x0`` in the base set."""
    lam = as_rational(lam)
    if lam < 0:
        raise ValueError("scale must be nonnegative")
    if lam == 0:
        return [ZERO] * (len(y0) + 2)
    big = max((as_rational(c) ** 2 for c in x0), default=ZERO)
    return [lam * as_rational(c) for c in y0] + [lam, lam * big]


def _pinned(r: ConicRep) -> ConicRep:
    """``r x {1}`` inside ``R^(n+1)``."""
    n, m = r.n_vars + 1, r.n_lifts
    one, X, Y = _space(n, m)
    pairs = _map_blocks(r, one, X[: r.n_vars], Y)
    pairs += _equality(X[r.n_vars] - one, "x_last = 1")
    return _assemble("set", n, m, pairs)


def union_hull(r1: ConicRep, r2: ConicRep) -> ConicRep:
    """Closed convex hull of the union, as ``{x : (x, 1) in K~ + L~}``.

    Lifts: ``x'`` and ``x''`` in ``R^(n+1)`` (Minkowski summands), then
    the lifts of the two homogenized cones.
    """
    if r1.n_vars != r2.n_vars:
        raise ValueError(f"dimension mismatch: {r1.n_vars} vs {r2.n_vars}")
    if r1.kind != "set" or r2.kind != "set":
        raise ValueError("union_hull expects set representations")
    n = r1.n_vars
    c1, c2 = cone_hull(_pinned(r1)), cone_hull(_pinned(r2))
    m = 2 * (n + 1) + c1.n_lifts + c2.n_lifts
    one, X, Y = _space(n, m)
    xp, xpp = Y[: n + 1], Y[n + 1: 2 * (n + 1)]
    off = 2 * (n + 1)
    pairs = _map_blocks(c1, one, xp, Y[off: off + c1.n_lifts], "K~:")
    pairs += _map_blocks(c2, one, xpp, Y[off + c1.n_lifts:], "L~:")
    for i in range(n):
        pairs += _equality(X[i] - xp[i] - xpp[i], f"x{i} = x'{i} + x''{i}")
    pairs += _equality(xp[n] + xpp[n] - one, "lambda' + lambda'' = 1")
    return _assemble("set", n, m, pairs)


def lift_union_hull(x1, y1, x2, y2, lam) -> list[Fraction]:
    """Lift for ``lam * x1 + (1 - lam) * x2`` with witnesses ``y1``, ``y2``."""
    lam = as_rational(lam)
    if not 0 <= lam <= 1:
        raise ValueError("lam must lie in [0, 1]")
    p1 = [as_rational(c) for c in x1] + [Fraction(1)]
    p2 = [as_rational(c) for c in x2] + [Fraction(1)]
    xp = [lam * c for c in p1]
    xpp = [(1 - lam) * c for c in p2]
    return xp + xpp + lift_cone_hull(p1, y1, lam) + lift_cone_hull(p2, y2, 1 - lam)


# --- exact infeasibility certificates -----------------------------------------

def check_infeasibility(r: ConicRep, x: Sequence, Z: Sequence[Sequence[Sequence]]) -> bool:
    """Accept PSD multipliers ``Z`` proving that no lift makes ``x`` feasible.

    Requires ``sum <Z_k, block_k>`` to be free of lifts and negative at ``x``.
    """
    if len(Z) != len(r.blocks):
        return False
    zs = [[[as_rational(c) for c in row] for row in z] for z in Z]
    total = r.zero()
    for z, blk in zip(zs, r.blocks):
        if len(z) != blk.size or not is_psd(z):
            return False
        for i in range(blk.size):
            for j in range(blk.size):
                if z[i][j]:
                    total = total + blk.entries[i][j].scale(z[i][j])
    if any(total.y):
        return False
    return total(x, [ZERO] * r.n_lifts) < 0


def infeasibility_certificate(r: ConicRep, x: Sequence) -> Optional[list]:
    """Search diagonal multipliers by exact LP; ``None`` if none exist.

    Diagonal multipliers are complete for polyhedral parts; a ``None``
    does not prove feasibility.
    """
    x = [as_rational(c) for c in x]
    cols = []  # (block index, diagonal position)
    for k, blk in enumerate(r.blocks):
        for i in range(blk.size):
            cols.append((k, i))
    rows = []
    for j in range(r.n_lifts):
        rows.append(([r.blocks[k].entries[i][i].y[j] for k, i in cols], EQ, 0))
    at_x = [r.blocks[k].entries[i][i](x, [ZERO] * r.n_lifts) for k, i in cols]
    rows.append(([-v for v in at_x], GE, 1))
    sol = lp_feasible(rows, nonneg=True)
    if sol is None:
        return None
    Z = [[[ZERO] * b.size for _ in range(b.size)] for b in r.blocks]
    for (k, i), val in zip(cols, sol):
        Z[k][i][i] = val
    return Z


# --- support cone of an epigraph ----------------------------------------------

def tangent_line(f: UniPoly, v) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients ``(A, B, C)`` of ``A x + B y + C``, the tangent at ``(v, f(v))``."""
    v = as_rational(v)
    d = f.derivative()(v)
    return (-d, Fraction(1), v * d - f(v))


def vertical_line(a, sign: int) -> tuple[Fraction, Fraction, Fraction]:
    """``a + sign * x``."""
    return (Fraction(sign), ZERO, as_rational(a))


@dataclass(frozen=True)
class SupportConeRep:
    """Cone of affine functionals ``A x + B y + C`` nonnegative on ``K_a``.

    ``generators[0]`` is the constant 1; the others are
    ``t**(mu+mv) * p_i(t)``, one per decomposition term.
    """

    f: UniPoly
    a: Fraction
    decomp: TensorDecomposition
    generators: tuple[UniPoly, ...]
    degree: int
    rep: ConicRep

    @property
    def n_gram(self) -> int:
        return len(self.generators)


def support_generators(decomp: TensorDecomposition) -> tuple[UniPoly, ...]:
    return (UniPoly.const(1),) + tuple(t.p.shift(t.mu + t.mv) for t in decomp.terms)


def _support_rep(f: UniPoly, a: Fraction, gens: Sequence[UniPoly]) -> tuple[int, ConicRep]:
    deg = max([f.degree, 2] + [2 + g.degree for g in gens])
    n, m = 3, 1 + 3 * len(gens)
    _, _, Y = _space(n, m)
    # lifts: c, then (a_i, b_i, c_i) of g_i = a_i t^2 + 2 b_i t + c_i
    pairs = [(block2(Y[1 + 3 * i], Y[2 + 3 * i], Y[3 + 3 * i]), f"gram[{i}]") for i in range(len(gens))]
    pairs.append((block1(Y[0]), "c >= 0"))
    box = UniPoly([a * a, 0, -1])
    for k in range(deg + 1):
        xs = {0: 1 if k == 1 else 0, 1: f.coeff(k), 2: 1 if k == 0 else 0}
        ys = {0: -box.coeff(k)}
        for i, g in enumerate(gens):
            ys[1 + 3 * i] = -g.coeff(k - 2) if k >= 2 else ZERO
            ys[2 + 3 * i] = -2 * g.coeff(k - 1) if k >= 1 else ZERO
            ys[3 + 3 * i] = -g.coeff(k)
        e = AffineForm.make(n, m, x=xs, y=ys)
        if not e.is_zero():
            pairs += _equality(e, f"coeff t^{k}")
    return deg, _assemble("cone", n, m, pairs)


def support_rep_from(f: UniPoly, a, decomp: TensorDecomposition) -> SupportConeRep:
    a = as_rational(a)
    gens = support_generators(decomp)
    deg, rep = _support_rep(f, a, gens)
    return SupportConeRep(f=f, a=a, decomp=decomp, generators=gens, degree=deg, rep=rep)


def _check_convex_at_base(f: UniPoly):
    f2 = differentiate(f, 2)(0)
    if f2 > 0:
        return
    if f2 < 0:
        raise DecompositionError("not convex at base point")
    m, cm = flat_order_of(f)
    if m % 2 or cm < 0:
        raise DecompositionError("not convex at base point")


def build_support_rep(f: UniPoly, cap, precision, decomp: TensorDecomposition | None = None) -> SupportConeRep:
    """Decompose, certify a validity radius, and assemble the cone rep.

    ``decomp`` may be supplied (e.g. a handcrafted one); it must decompose
    the Taylor remainder of ``f`` with base-positive factors.
    """
    _check_convex_at_base(f)
    if decomp is None:
        decomp = decompose(f)
    elif decomp.base != taylor_remainder(f) or not decomp.is_valid():
        raise DecompositionError("supplied decomposition does not decompose the Taylor remainder of f")
    a = certified_radius(decomp.polys(), cap, precision)
    return support_rep_from(f, a, decomp)


Matrix2 = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def gram(a, b, c) -> Matrix2:
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    return ((a, b), (b, c))


ZERO_GRAM = gram(0, 0, 0)


def tangent_certificate(s: SupportConeRep, v) -> tuple[tuple, Fraction, list[Matrix2]]:
    """``(F, c, G)`` certifying the tangent at ``v`` (``|v| <= a``).

    Strict case: ``g_i(t) = q_i(v) (t - v)**2``.  In the flat case only the
    base tangent ``v = 0`` has a certificate of this shape.
    """
    v = as_rational(v)
    if abs(v) > s.a:
        raise ValueError(f"|v| = {abs(v)} exceeds the radius {s.a}")
    G = [ZERO_GRAM]
    for t in s.decomp.terms:
        if t.mv > 0 and v != 0:
            raise NeedsExternalSolver(f"flat tangent at v={v} is not an extreme-ray certificate of this form")
        w = t.q(v) * v ** t.mv
        G.append(gram(w, -w * v, w * v * v))
    return tangent_line(s.f, v), ZERO, G


def vertical_certificate(s: SupportConeRep, sign: int) -> tuple[tuple, Fraction, list[Matrix2]]:
    """``a + sign*t = ((a^2 - t^2) + (a + sign*t)^2) / (2a)``."""
    a = s.a
    k = 1 / (2 * a)
    G = [gram(k, k * sign * a, k * a * a)] + [ZERO_GRAM] * (s.n_gram - 1)
    return vertical_line(a, sign), k, G


def certificate_lift(s: SupportConeRep, c, G: Sequence[Matrix2]) -> list[Fraction]:
    if len(G) == s.n_gram - 1:
        G = [ZERO_GRAM] + list(G)
    if len(G) != s.n_gram:
        raise ValueError("wrong number of Gram matrices")
    y = [as_rational(c)]
    for g in G:
        y += [as_rational(g[0][0]), as_rational(g[0][1]), as_rational(g[1][1])]
    return y


def moment_rep(s: SupportConeRep) -> ConicRep:
    """Dual (moment) representation of ``K_a`` in the plane.

    Lifts are moments ``m_0..m_D``; blocks are the localizing matrices of
    every generator, ``<m, a^2 - t^2> >= 0``, ``m_0 = 1``, ``m_1 = x`` and
    ``y - <m, f> >= 0``.
    """
    D = s.degree
    n, m = 2, D + 1
    one, X, Y = _space(n, m)

    def pair(p: UniPoly) -> AffineForm:
        out = AffineForm.make(n, m)
        for k, c in enumerate(p.coeffs):
            out = out + Y[k].scale(c)
        return out

    t = UniPoly.t()
    pairs = []
    for i, g in enumerate(s.generators):
        pairs.append((block2(pair(g), pair(t * g), pair(t * t * g)), f"localizing[{i}]"))
    pairs.append((block1(pair(UniPoly([s.a * s.a, 0, -1]))), "<m, a^2 - t^2> >= 0"))
    pairs += _equality(Y[0] - one, "m_0 = 1")
    pairs += _equality(Y[1] - X[0], "m_1 = x")
    pairs.append((block1(X[1] - pair(s.f)), "y - <m, f> >= 0"))
    return _assemble("set", n, m, pairs)


def moment_lift(s: SupportConeRep, x) -> list[Fraction]:
    """Point-evaluation moments ``x**k``; valid for every ``(x, y)`` in ``K_a``."""
    x = as_rational(x)
    return [x**k for k in range(s.degree + 1)]


def separating_certificate(s: SupportConeRep, x, y) -> tuple[tuple, Fraction, list[Matrix2]]:
    """Certified generator ``F`` with ``F(x, y) < 0`` for a point outside ``K_a``."""
    x, y = as_rational(x), as_rational(y)
    if x > s.a:
        return vertical_certificate(s, -1)
    if x < -s.a:
        return vertical_certificate(s, 1)
    if y < s.f(x):
        return tangent_certificate(s, x)
    raise ValueError(f"({x}, {y}) lies in K_a")


# --- rank-one PSD factorization ------------------------------------------------

PolyMatrix = tuple[tuple[UniPoly, UniPoly], tuple[UniPoly, UniPoly]]


@dataclass(frozen=True)
class PsdFactorization:
    a: Fraction
    terms: tuple[tuple[UniPoly, UniPoly], ...]
    A_form: tuple[PolyMatrix, ...]
    B_form: tuple[PolyMatrix, ...]


class RadiusError(ValueError):
    pass


def factor_templates(p: UniPoly, q: UniPoly) -> tuple[PolyMatrix, PolyMatrix]:
    """``p(u) [[1, u], [u, u^2]]`` and ``q(v) [[v^2, -v], [-v, 1]]``."""
    t = UniPoly.t()
    A = ((p, p * t), (p * t, p * t * t))
    B = ((q * t * t, -(q * t)), (-(q * t), q))
    return A, B


def pairing(A: PolyMatrix, B: PolyMatrix) -> BiPoly:
    """Frobenius product ``<A(u), B(v)>`` as a polynomial in ``u, v``."""
    out = BiPoly()
    for i in range(2):
        for j in range(2):
            out = out + BiPoly.in_u(A[i][j]) * BiPoly.in_v(B[i][j])
    return out


def psd_factorization(f: UniPoly, decomp: TensorDecomposition, a, certify: bool = True) -> PsdFactorization:
    a = as_rational(a)
    if decomp.flat_order > 0:
        raise NotImplementedError("factorization is only available for the strict case")
    if decomp.base != taylor_remainder(f) or decomp.expand() != decomp.base:
        raise DecompositionError("decomposition does not match the Taylor remainder of f")
    if certify:
        for p in decomp.polys():
            res = nonneg_on_interval(p, -a, a)
            if not res.accepted:
                raise RadiusError(f"{p} is negative at {res.witness} (value {res.value})")
    terms = tuple((t.p, t.q) for t in decomp.terms)
    forms = [factor_templates(p, q) for p, q in terms]
    return PsdFactorization(a=a, terms=terms, A_form=tuple(A for A, _ in forms), B_form=tuple(B for _, B in forms))
