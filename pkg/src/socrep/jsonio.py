"""Canonical JSON for every artifact.

Rationals are ``["num", "den"]`` pairs of decimal strings.  ``dumps`` sorts
keys, so identical values give byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .certcheck import CertificateBundle, GeneratorCert
from .exactpoly import BiPoly, IntervalCert, UniPoly, as_rational
from .obstruct import ObstructionReport, PointSet, StarWitness
from .repforge import AffineForm, Block, ConicRep, PsdFactorization
from .tensorcalc import SPoly, TensorDecomposition, Term


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def rat_to(x: Fraction) -> list[str]:
    x = as_rational(x)
    return [str(x.numerator), str(x.denominator)]


def rat_from(obj) -> Fraction:
    if isinstance(obj, list) and len(obj) == 2:
        num, den = int(str(obj[0])), int(str(obj[1]))
        if den == 0:
            raise ValueError("zero denominator")
        return Fraction(num, den)
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return as_rational(obj)
    raise ValueError(f"not a rational: {obj!r}")


def uni_to(p: UniPoly, var: str = "t") -> dict:
    return {"var": var, "coeffs": [rat_to(c) for c in p.coeffs]}


def uni_from(obj) -> UniPoly:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise ValueError("UniPoly JSON needs a 'coeffs' array")
    return UniPoly(rat_from(c) for c in obj["coeffs"])


def bi_to(p: BiPoly) -> dict:
    return {"vars": ["u", "v"], "terms": [{"du": i, "dv": j, "c": rat_to(c)} for (i, j), c in p.terms.items()]}


def bi_from(obj) -> BiPoly:
    return BiPoly({(int(t["du"]), int(t["dv"])): rat_from(t["c"]) for t in obj["terms"]})


def decomp_to(d: TensorDecomposition) -> dict:
    return {
        "flat_order": d.flat_order,
        "terms": [{"mu": t.mu, "mv": t.mv, "p": uni_to(t.p, "u"), "q": uni_to(t.q, "v")} for t in d.terms],
        "base": bi_to(d.base),
    }


def decomp_from(obj) -> TensorDecomposition:
    terms = tuple(Term(int(t["mu"]), int(t["mv"]), uni_from(t["p"]), uni_from(t["q"])) for t in obj["terms"])
    return TensorDecomposition(base=bi_from(obj["base"]), terms=terms, flat_order=int(obj["flat_order"]))


def spoly_to(s: SPoly) -> dict:
    return {"m": s.m, "n": s.n, "value": bi_to(s.value)}


def spoly_from(obj) -> SPoly:
    return SPoly(int(obj["m"]), int(obj["n"]), bi_from(obj["value"]))


def affine_to(e: AffineForm) -> dict:
    return {"const": rat_to(e.const), "x": [rat_to(c) for c in e.x], "y": [rat_to(c) for c in e.y]}


def affine_from(obj) -> AffineForm:
    return AffineForm(rat_from(obj["const"]), tuple(rat_from(c) for c in obj["x"]), tuple(rat_from(c) for c in obj["y"]))


def rep_to(r: ConicRep) -> dict:
    return {
        "kind": r.kind,
        "n_vars": r.n_vars,
        "n_lifts": r.n_lifts,
        "blocks": [{"size": b.size, "entries": [[affine_to(e) for e in row] for row in b.entries]} for b in r.blocks],
        "labels": list(r.labels),
    }


def rep_from(obj) -> ConicRep:
    blocks = []
    for b in obj["blocks"]:
        entries = tuple(tuple(affine_from(e) for e in row) for row in b["entries"])
        if len(entries) != int(b["size"]) or any(len(row) != len(entries) for row in entries):
            raise ValueError("block size does not match its entries")
        blocks.append(Block(entries))
    return ConicRep(obj["kind"], int(obj["n_vars"]), int(obj["n_lifts"]), tuple(blocks), tuple(obj.get("labels", ())))


def cert_to(c: IntervalCert) -> dict:
    return {
        "poly": uni_to(c.poly),
        "lo": rat_to(c.lo),
        "hi": rat_to(c.hi),
        "squarefree_part": uni_to(c.squarefree_part),
        "odd_part": uni_to(c.odd_part),
        "root_count_interior": c.root_count_interior,
        "odd_root_count_interior": c.odd_root_count_interior,
        "endpoint_values": [rat_to(x) for x in c.endpoint_values],
        "sample": rat_to(c.sample),
        "sample_value": rat_to(c.sample_value),
        "accepted": c.accepted,
    }


def cert_from(obj) -> IntervalCert:
    return IntervalCert(
        poly=uni_from(obj["poly"]),
        lo=rat_from(obj["lo"]),
        hi=rat_from(obj["hi"]),
        squarefree_part=uni_from(obj["squarefree_part"]),
        odd_part=uni_from(obj["odd_part"]),
        root_count_interior=int(obj["root_count_interior"]),
        odd_root_count_interior=int(obj["odd_root_count_interior"]),
        endpoint_values=tuple(rat_from(x) for x in obj["endpoint_values"]),
        sample=rat_from(obj["sample"]),
        sample_value=rat_from(obj["sample_value"]),
    )


def _polymat_to(M, var):
    return [[uni_to(e, var) for e in row] for row in M]


def _polymat_from(obj):
    return tuple(tuple(uni_from(e) for e in row) for row in obj)


def factorization_to(fac: PsdFactorization) -> dict:
    return {
        "a": rat_to(fac.a),
        "terms": [{"p": uni_to(p, "u"), "q": uni_to(q, "v")} for p, q in fac.terms],
        "A_form": [_polymat_to(A, "u") for A in fac.A_form],
        "B_form": [_polymat_to(B, "v") for B in fac.B_form],
    }


def factorization_from(obj) -> PsdFactorization:
    return PsdFactorization(
        a=rat_from(obj["a"]),
        terms=tuple((uni_from(t["p"]), uni_from(t["q"])) for t in obj["terms"]),
        A_form=tuple(_polymat_from(A) for A in obj["A_form"]),
        B_form=tuple(_polymat_from(B) for B in obj["B_form"]),
    )


def _mat_to(G):
    return [[rat_to(x) for x in row] for row in G]


def _mat_from(obj):
    return tuple(tuple(rat_from(x) for x in row) for row in obj)


def generator_to(g: GeneratorCert) -> dict:
    return {"kind": g.kind, "v": None if g.v is None else rat_to(g.v), "c": rat_to(g.c), "G": [_mat_to(m) for m in g.G]}


def generator_from(obj) -> GeneratorCert:
    v = obj.get("v")
    return GeneratorCert(
        kind=obj["kind"],
        v=None if v is None else rat_from(v),
        c=rat_from(obj["c"]),
        G=tuple(_mat_from(m) for m in obj["G"]),
    )


def bundle_to(b: CertificateBundle, support_rep: ConicRep | None = None) -> dict:
    out = {
        "f": uni_to(b.f),
        "a": rat_to(b.a),
        "orientation": b.orientation,
        "decomp": decomp_to(b.decomp),
        "radius_certs": [cert_to(c) for c in b.radius_certs],
        "factorization": None if b.factorization is None else factorization_to(b.factorization),
        "generator_certs": [generator_to(g) for g in b.generator_certs],
    }
    if support_rep is not None:
        out["support_rep"] = rep_to(support_rep)
    return out


def bundle_from(obj) -> CertificateBundle:
    fac = obj.get("factorization")
    return CertificateBundle(
        f=uni_from(obj["f"]),
        a=rat_from(obj["a"]),
        decomp=decomp_from(obj["decomp"]),
        radius_certs=tuple(cert_from(c) for c in obj["radius_certs"]),
        factorization=None if fac is None else factorization_from(fac),
        generator_certs=tuple(generator_from(g) for g in obj["generator_certs"]),
        orientation=obj.get("orientation", "epigraph"),
    )


def pointset_to(S: PointSet) -> dict:
    out = {"dim": S.dim, "points": [[rat_to(c) for c in p] for p in S.points]}
    if S.hull_generators is not None:
        out["hull_generators"] = [[rat_to(c) for c in p] for p in S.hull_generators]
    return out


def pointset_from(obj) -> PointSet:
    pts = tuple(tuple(rat_from(c) for c in p) for p in obj["points"])
    gens = obj.get("hull_generators")
    gens = None if gens is None else tuple(tuple(rat_from(c) for c in p) for p in gens)
    return PointSet(int(obj["dim"]), pts, gens)


def report_to(r: ObstructionReport) -> dict:
    return {
        "holds": r.holds,
        "d": r.d,
        "witnesses": [{"subset": list(w.subset), "f": [rat_to(c) for c in w.f_coeffs]} for w in r.witnesses],
        "failing_subset": None if r.failing_subset is None else list(r.failing_subset),
        "note": r.note,
    }


def report_from(obj) -> ObstructionReport:
    ws = tuple(StarWitness(tuple(w["subset"]), tuple(rat_from(c) for c in w["f"])) for w in obj["witnesses"])
    fs = obj.get("failing_subset")
    return ObstructionReport(bool(obj["holds"]), int(obj["d"]), ws, None if fs is None else tuple(fs), obj["note"])
