"""Single-coefficient sign flips in a certificate bundle."""

from dataclasses import replace

from socrep.exactpoly import BiPoly, UniPoly
from socrep.repforge import factor_templates


def _flip_uni(p: UniPoly, i: int) -> UniPoly:
    coeffs = list(p.coeffs)
    coeffs[i] = -coeffs[i]
    return UniPoly(coeffs)


def sites(b):
    """Every nonzero coefficient of the decomposition and the certificates."""
    out = []
    for k, t in enumerate(b.decomp.terms):
        for side, poly in (("p", t.p), ("q", t.q)):
            out += [("term", k, side, i) for i, c in enumerate(poly.coeffs) if c]
    out += [("base", key) for key in b.decomp.base.terms]
    for k, cert in enumerate(b.radius_certs):
        out += [("radius", k, i) for i, c in enumerate(cert.poly.coeffs) if c]
    if b.factorization is not None:
        for k, (p, q) in enumerate(b.factorization.terms):
            out += [("fac", k, 0, i) for i, c in enumerate(p.coeffs) if c]
            out += [("fac", k, 1, i) for i, c in enumerate(q.coeffs) if c]
    for k, g in enumerate(b.generator_certs):
        if g.c:
            out.append(("c", k))
        for j, m in enumerate(g.G):
            out += [("gram", k, j, r, s) for r, s in ((0, 0), (0, 1), (1, 1)) if m[r][s]]
    return out


def flip(b, site):
    kind = site[0]
    if kind == "term":
        _, k, side, i = site
        t = b.decomp.terms[k]
        t = replace(t, **{side: _flip_uni(getattr(t, side), i)})
        terms = b.decomp.terms[:k] + (t,) + b.decomp.terms[k + 1:]
        return replace(b, decomp=replace(b.decomp, terms=terms))
    if kind == "base":
        terms = dict(b.decomp.base.terms)
        terms[site[1]] = -terms[site[1]]
        return replace(b, decomp=replace(b.decomp, base=BiPoly(terms)))
    if kind == "radius":
        _, k, i = site
        cert = replace(b.radius_certs[k], poly=_flip_uni(b.radius_certs[k].poly, i))
        return replace(b, radius_certs=b.radius_certs[:k] + (cert,) + b.radius_certs[k + 1:])
    if kind == "fac":
        _, k, side, i = site
        fac = b.factorization
        pq = list(fac.terms[k])
        pq[side] = _flip_uni(pq[side], i)
        # keep the matrices consistent with the flipped pair so only the coefficient moves
        A, B = factor_templates(*pq)
        terms = fac.terms[:k] + (tuple(pq),) + fac.terms[k + 1:]
        A_form = fac.A_form[:k] + (A,) + fac.A_form[k + 1:]
        B_form = fac.B_form[:k] + (B,) + fac.B_form[k + 1:]
        return replace(b, factorization=replace(fac, terms=terms, A_form=A_form, B_form=B_form))
    if kind == "c":
        k = site[1]
        g = b.generator_certs[k]
        return _with_gen(b, k, replace(g, c=-g.c))
    if kind == "gram":
        _, k, j, r, s = site
        g = b.generator_certs[k]
        m = [list(row) for row in g.G[j]]
        m[r][s] = -m[r][s]
        m[s][r] = m[r][s]
        G = g.G[:j] + (tuple(tuple(row) for row in m),) + g.G[j + 1:]
        return _with_gen(b, k, replace(g, G=G))
    raise ValueError(site)


def _with_gen(b, k, g):
    return replace(b, generator_certs=b.generator_certs[:k] + (g,) + b.generator_certs[k + 1:])
