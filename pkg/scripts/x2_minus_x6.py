#!/usr/bin/env python3
"""Build, certify and verify the support-cone representation of y >= x^2 - x^6.

Compares the generic positive-residue decomposition with the handcrafted one
and writes both bundles as JSON.

    python3 scripts/x2_minus_x6.py --out runs/x2_minus_x6
"""

import argparse
import time
from dataclasses import replace
from pathlib import Path

from socrep import jsonio
from socrep.certcheck import build_bundle, bundle_failures, sample_soundness
from socrep.config import BuildConfig
from socrep.exactpoly import parse_rational
from socrep.fixtures import X2_MINUS_X6, x2_minus_x6_decomposition


def run(cfg: BuildConfig, out: Path | None) -> list[dict]:
    rows = []
    for name, decomp in (("generic", None), ("handcrafted", x2_minus_x6_decomposition(cfg.cap))):
        t0 = time.perf_counter()
        s, b = build_bundle(X2_MINUS_X6, cfg.cap, cfg.precision, decomp, n_tangents=cfg.n_tangents)
        failures = bundle_failures(b)
        violations = sample_soundness(s, cfg.soundness_grid)
        rows.append({
            "decomposition": name,
            "terms": len(s.decomp.terms),
            "a": s.a,
            "generator_certs": len(b.generator_certs),
            "verified": not failures,
            "soundness_violations": len(violations),
            "seconds": time.perf_counter() - t0,
        })
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
            (out / f"bundle_{name}.json").write_text(jsonio.dumps(jsonio.bundle_to(b, s.rep)), encoding="utf-8")
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cap", type=parse_rational, default=BuildConfig.cap)
    ap.add_argument("--precision", type=parse_rational, default=BuildConfig.precision)
    ap.add_argument("--tangents", type=int, default=BuildConfig.n_tangents)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()
    cfg = replace(BuildConfig(), cap=args.cap, precision=args.precision, n_tangents=args.tangents)

    print(f"{'decomposition':<12} {'terms':>5} {'a':>8} {'certs':>5} {'verified':>8} {'viol':>4} {'sec':>6}")
    for r in run(cfg, args.out):
        print(f"{r['decomposition']:<12} {r['terms']:>5} {str(r['a']):>8} {r['generator_certs']:>5} "
              f"{str(r['verified']):>8} {r['soundness_violations']:>4} {r['seconds']:>6.2f}")


if __name__ == "__main__":
    main()
