"""Exact checkers for everything the pipeline emits.

Identity checks compare canonical polynomials; only
:func:`sample_soundness` evaluates at points, on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactpoly import BiPoly, IntervalCert, UniPoly, as_rational, nonneg_on_interval
from .repforge import (
    NeedsExternalSolver,
    PsdFactorization,
    SupportConeRep,
    ZERO_GRAM,
    certificate_lift,
    check_point,
    factor_templates,
    is_psd,
    pairing,
    psd_factorization,
    support_rep_from,
    tangent_certificate,
    tangent_line,
    vertical_certificate,
    vertical_line,
    build_support_rep,
)
from .tensorcalc import TensorDecomposition, tangent_tensor, taylor_remainder, tensor_at


@dataclass(frozen=True)
class GeneratorCert:
    """Certificate for one extreme ray: ``kind`` is tangent, vertical+ or vertical-."""

    kind: str
    v: Optional[Fraction]
    c: Fraction
    G: tuple

    def functional(self, f: UniPoly, a: Fraction):
        if self.kind == "tangent":
            return tangent_line(f, self.v)
        if self.kind in ("vertical+", "vertical-"):
            return vertical_line(a, 1 if self.kind == "vertical+" else -1)
        raise ValueError(f"unknown generator kind {self.kind!r}")


@dataclass(frozen=True)
class CertificateBundle:
    f: UniPoly
    a: Fraction
    decomp: TensorDecomposition
    radius_certs: tuple[IntervalCert, ...]
    factorization: Optional[PsdFactorization]
    generator_certs: tuple[GeneratorCert, ...]
    orientation: str = "epigraph"


def decomposition_failures(f: UniPoly, d: TensorDecomposition) -> list[str]:
    out = []
    rem = taylor_remainder(f)
    if d.base != rem:
        out.append("decomposition base differs from the Taylor remainder of f")
    if d.expand() != rem:
        out.append("decomposition terms do not sum to the Taylor remainder of f")
    for k, t in enumerate(d.terms):
        if t.p(0) <= 0 or t.q(0) <= 0:
            out.append(f"term {k}: factor not positive at the base point")
        if t.mu + t.mv != d.flat_order or t.mu < 0 or t.mv < 0:
            out.append(f"term {k}: monomial prefactor inconsistent with flat order {d.flat_order}")
    return out


def check_decomposition(f: UniPoly, d: TensorDecomposition) -> bool:
    return not decomposition_failures(f, d)


def factorization_failures(f: UniPoly, fac: PsdFactorization) -> list[str]:
    out = []
    if fac.a <= 0:
        out.append(f"radius {fac.a} is not positive")
        return out
    if len(fac.A_form) != len(fac.terms) or len(fac.B_form) != len(fac.terms):
        out.append("factor forms do not parallel the terms")
        return out
    total = BiPoly()
    for k, ((p, q), A, B) in enumerate(zip(fac.terms, fac.A_form, fac.B_form)):
        if (A, B) != factor_templates(p, q):
            out.append(f"term {k}: matrices are not the rank-one templates of (p, q)")
        total = total + pairing(A, B)
    if total != tangent_tensor(f):
        out.append("sum of <A_i(u), B_i(v)> differs from the tangent tensor")
    for k, (p, q) in enumerate(fac.terms):
        for name, poly in (("p", p), ("q", q)):
            res = nonneg_on_interval(poly, -fac.a, fac.a)
            if not res.accepted:
                out.append(f"term {k}: {name} = {poly} is negative at {res.witness} (value {res.value})")
    return out


def check_factorization(f: UniPoly, fac: PsdFactorization) -> bool:
    return not factorization_failures(f, fac)


def _gram_poly(g) -> UniPoly:
    # g(t) = a t^2 + 2 b t + c for [[a, b], [b, c]]
    return UniPoly([g[1][1], 2 * g[0][1], g[0][0]])


def support_certificate_failures(s: SupportConeRep, F, c, G: Sequence) -> list[str]:
    G = list(G)
    if len(G) == s.n_gram - 1:
        G = [ZERO_GRAM] + G
    if len(G) != s.n_gram:
        return [f"expected {s.n_gram} Gram matrices, got {len(G)}"]
    out = []
    c = as_rational(c)
    if c < 0:
        out.append(f"c = {c} is negative")
    for i, g in enumerate(G):
        g = [[as_rational(x) for x in row] for row in g]
        if not is_psd(g):
            out.append(f"gram[{i}] is not PSD")
    A, B, C = (as_rational(x) for x in F)
    t = UniPoly.t()
    lhs = t * A + s.f * B + C
    rhs = UniPoly([s.a * s.a, 0, -1]) * c
    for g, P in zip(G, s.generators):
        rhs = rhs + _gram_poly([[as_rational(x) for x in row] for row in g]) * P
    if lhs != rhs:
        out.append("A t + B f(t) + C differs from c (a^2 - t^2) + sum g_i P_i")
    return out


def check_support_certificate(s: SupportConeRep, F, c, G) -> bool:
    return not support_certificate_failures(s, F, c, G)


def sample_soundness(s: SupportConeRep, grid: int) -> list[tuple[Fraction, Fraction, str]]:
    """Evaluate ``tau_v(t, f(t))`` against the factored form on a grid.

    Returns violations ``(v, t, reason)`` sorted by ``(v, t)``; empty on
    success.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    pts = [-s.a + 2 * s.a * Fraction(k, grid - 1) for k in range(grid)]
    out = []
    for v in pts:
        for t in pts:
            direct = tensor_at(s.f, t, v)
            factored = (t - v) ** 2 * sum(
                (t**term.mu * v**term.mv * term.p(t) * term.q(v) for term in s.decomp.terms), Fraction(0)
            )
            if direct != factored:
                out.append((v, t, "factored form differs from tau_v(t, f(t))"))
            elif direct < 0:
                out.append((v, t, "tau_v(t, f(t)) < 0"))
            elif s.decomp.flat_order == 0 and any(term.q(v) < 0 or term.p(t) < 0 for term in s.decomp.terms):
                out.append((v, t, "factor negative inside the radius"))
    return sorted(out)


def support_rep_of(b: CertificateBundle) -> SupportConeRep:
    return support_rep_from(b.f, b.a, b.decomp)


def bundle_failures(b: CertificateBundle) -> list[str]:
    out = []
    if b.a <= 0:
        return [f"radius {b.a} is not positive"]
    out += decomposition_failures(b.f, b.decomp)
    needed = b.decomp.polys()
    stored = {(c.poly, c.lo, c.hi): c for c in b.radius_certs}
    for p in needed:
        cert = stored.get((p, -b.a, b.a))
        res = nonneg_on_interval(p, -b.a, b.a)
        if cert is None:
            out.append(f"no radius certificate for {p} on [-{b.a}, {b.a}]")
        elif cert != res:
            out.append(f"radius certificate for {p} does not match recomputation")
        if not res.accepted:
            out.append(f"{p} is negative at {res.witness} (value {res.value})")
    for c in b.radius_certs:
        if c.poly not in needed:
            out.append(f"stray radius certificate for {c.poly}")
    if b.factorization is not None:
        fac = b.factorization
        if fac.a != b.a:
            out.append("factorization radius differs from bundle radius")
        if fac.terms != tuple((t.p, t.q) for t in b.decomp.terms):
            out.append("factorization terms differ from the decomposition")
        out += factorization_failures(b.f, fac)
    s = support_rep_of(b)
    for k, g in enumerate(b.generator_certs):
        if g.kind == "tangent" and (g.v is None or abs(g.v) > b.a):
            out.append(f"generator {k}: tangent parameter outside [-a, a]")
            continue
        try:
            F = g.functional(b.f, b.a)
        except ValueError as exc:
            out.append(f"generator {k}: {exc}")
            continue
        errs = support_certificate_failures(s, F, g.c, g.G)
        out += [f"generator {k} ({g.kind} v={g.v}): {e}" for e in errs]
        if not errs and not check_point(s.rep, F, certificate_lift(s, g.c, g.G)):
            out.append(f"generator {k}: lifted point rejected by the cone representation")
    return out


def verify_bundle(b: CertificateBundle) -> bool:
    return not bundle_failures(b)


def generator_certs(s: SupportConeRep, n_tangents: int = 21) -> tuple[GeneratorCert, ...]:
    """Vertical lines plus tangents at ``n_tangents`` equally spaced ``v`` in ``[-a, a]``.

    Flat decompositions only certify the base tangent ``v = 0``.
    """
    out = []
    for sign, kind in ((1, "vertical+"), (-1, "vertical-")):
        _, c, G = vertical_certificate(s, sign)
        out.append(GeneratorCert(kind, None, c, tuple(G)))
    vs = [-s.a + 2 * s.a * Fraction(k, n_tangents - 1) for k in range(n_tangents)] if n_tangents > 1 else [Fraction(0)]
    for v in vs:
        try:
            _, c, G = tangent_certificate(s, v)
        except NeedsExternalSolver:
            continue
        out.append(GeneratorCert("tangent", v, c, tuple(G)))
    if s.decomp.flat_order > 0 and not any(g.kind == "tangent" and g.v == 0 for g in out):
        _, c, G = tangent_certificate(s, 0)
        out.append(GeneratorCert("tangent", Fraction(0), c, tuple(G)))
    return tuple(out)


def build_bundle(f: UniPoly, cap, precision, decomp: TensorDecomposition | None = None,
                 n_tangents: int = 21, orientation: str = "epigraph") -> tuple[SupportConeRep, CertificateBundle]:
    s = build_support_rep(f, cap, precision, decomp)
    certs = tuple(nonneg_on_interval(p, -s.a, s.a) for p in s.decomp.polys())
    fac = psd_factorization(f, s.decomp, s.a) if s.decomp.flat_order == 0 else None
    bundle = CertificateBundle(
        f=f,
        a=s.a,
        decomp=s.decomp,
        radius_certs=certs,
        factorization=fac,
        generator_certs=generator_certs(s, n_tangents),
        orientation=orientation,
    )
    return s, bundle
