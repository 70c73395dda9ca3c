"""Acceptance criteria, each with its runtime budget.

Every test prints one ``[PASS]``/``[FAIL]`` line (visible without ``-s``).
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

import faults
from socrep.certcheck import build_bundle, check_decomposition, check_factorization, factorization_failures, verify_bundle
from socrep.exactpoly import BiPoly, UniPoly, nonneg_on_interval
from socrep.fixtures import X2_MINUS_X6, x2_minus_x6_decomposition, x2_minus_x6_polys
from socrep.obstruct import PointSet, condition_star, moment_curve_points, rational_circle_points, witness_ok
from socrep.repforge import (
    AffineForm,
    ConicRep,
    block1,
    block2,
    certificate_lift,
    check_infeasibility,
    check_point,
    cone_hull,
    infeasibility_certificate,
    intersect,
    lift_cone_hull,
    lift_union_hull,
    product,
    psd_factorization,
    tangent_certificate,
    union_hull,
)
from socrep.tensorcalc import DecompositionError, flat_cofactors, flat_decompose, positive_residue_decompose, s_polynomial

F = Fraction
T = UniPoly.t()
U, V = BiPoly.u(), BiPoly.v()


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number: int, title: str, budget: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            in_time = elapsed < budget
            status = "PASS" if ok and in_time else "FAIL"
            with capsys.disabled():
                print(f"\n[{status}] criterion {number}: {title} ({elapsed:.2f}s, budget {budget:g}s)")
        assert in_time, f"criterion {number} took {elapsed:.2f}s (budget {budget}s)"

    return run


def test_criterion_1_handcrafted_decomposition(criterion):
    with criterion(1, "x^2 - x^6 decomposition at a = 2/5 is exact and certified", 1.0):
        a = F(2, 5)
        d = x2_minus_x6_decomposition(a)
        assert check_decomposition(X2_MINUS_X6, d)
        assert d.base == 1 - U**4 - 2 * U**3 * V - 3 * U**2 * V**2 - 4 * U * V**3 - 5 * V**4
        polys = x2_minus_x6_polys(a)
        assert len(polys) == 8
        assert all(nonneg_on_interval(p, -a, a).accepted for p in polys)
        assert 28 * a**4 <= 1


def test_criterion_2_factorization(criterion):
    with criterion(2, "factorization accepted at a = 2/5, refuted at a = 1/2 with a witness", 1.0):
        d = x2_minus_x6_decomposition(F(2, 5))
        fac = psd_factorization(X2_MINUS_X6, d, F(2, 5))
        assert check_factorization(X2_MINUS_X6, fac)
        wide = psd_factorization(X2_MINUS_X6, d, F(1, 2), certify=False)
        assert not check_factorization(X2_MINUS_X6, wide)
        witnesses = []
        for p in d.polys():
            res = nonneg_on_interval(p, F(-1, 2), F(1, 2))
            if not res.accepted:
                assert abs(res.witness) <= F(1, 2) and p(res.witness) == res.value < 0
                witnesses.append(res)
        assert witnesses
        assert any("negative at" in msg for msg in factorization_failures(X2_MINUS_X6, wide))


def test_criterion_3_s_polynomials(criterion):
    with criterion(3, "S-polynomial identity and positivity for 1 <= m < n <= 8", 1.0):
        count = 0
        for n in range(2, 9):
            for m in range(1, n):
                s = s_polynomial(m, n).value
                assert (U - V) ** 2 * s == m * (U**n - V**n) - n * V ** (n - m) * (U**m - V**m)
                assert set(s.terms) == {(i, n - 2 - i) for i in range(n - 1)}
                assert all(c > 0 and c.denominator == 1 for c in s.terms.values())
                count += 1
        assert count == 28


def _random_pairs(rng, sign):
    """Random pairs of degree <= 6 whose base value has the requested sign (+1, 0 or -1)."""
    def poly():
        return UniPoly([F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, 7))])

    pairs = [(poly(), poly()) for _ in range(rng.randint(1, 5))]
    theta = sum((a(0) * b(0) for a, b in pairs), F(0))
    target = {1: F(rng.randint(1, 20), rng.randint(1, 5)), 0: F(0), -1: -F(rng.randint(0, 20), rng.randint(1, 5))}[sign]
    # shift through an extra constant pair so that the base value is exactly the target
    pairs.append((UniPoly.const(1), UniPoly.const(target - theta)))
    return pairs


def test_criterion_4_positive_residue(criterion):
    with criterion(4, "positive-residue decomposition: 100 valid inputs, 20 rejected", 5.0):
        rng = random.Random(4)
        for _ in range(100):
            pairs = _random_pairs(rng, 1)
            d = positive_residue_decompose(pairs)
            target = BiPoly()
            for a, b in pairs:
                target = target + BiPoly.in_u(a) * BiPoly.in_v(b)
            assert d.base == target and d.expand() == target
            assert all(t.p(0) > 0 and t.q(0) > 0 for t in d.terms)
        for k in range(20):
            with pytest.raises(DecompositionError):
                positive_residue_decompose(_random_pairs(rng, 0 if k % 2 else -1))


def test_criterion_5_end_to_end(criterion):
    with criterion(5, "bundles verify for t^2, t^2+t^4, t^2-t^6, 1+t+3t^2 with 21 tangents each", 5.0):
        for f in (T**2, T**2 + T**4, X2_MINUS_X6, 1 + T + 3 * T**2):
            s, b = build_bundle(f, F(1, 2), F(1, 100), n_tangents=21)
            assert verify_bundle(b)
            tangents = [g for g in b.generator_certs if g.kind == "tangent"]
            assert len(tangents) == 21
            for g in tangents:
                Fv, c, G = tangent_certificate(s, g.v)
                assert check_point(s.rep, list(Fv), certificate_lift(s, c, G))


def test_criterion_6_flat_case(criterion):
    with criterion(6, "flat_decompose(t^4): order 2, cofactor constants 1, 2, 3", 1.0):
        d = flat_decompose(T**4)
        assert d.flat_order == 2 and d.is_valid()
        m, cof = flat_cofactors(T**4)
        assert [g(0, 0) for g in cof] == [1, 2, 3] == [1 * (i + 1) for i in range(m - 1)]
        assert d.expand() == U**2 + 2 * U * V + 3 * V**2


def test_criterion_7_obstruction(criterion):
    with criterion(7, "condition (*): circle holds, square+center refuted, moment curve (4, 8) d = 2 holds", 10.0):
        assert condition_star(rational_circle_points(8), 1).holds
        square = [(0, 0), (1, 0), (1, 1), (0, 1)]
        r = condition_star(PointSet.of(square + [(F(1, 2), F(1, 2))], square), 1)
        assert not r.holds and r.failing_subset == (4,)
        S = moment_curve_points(4, 8)
        r = condition_star(S, 2)
        assert r.holds and len(r.witnesses) == 28
        assert all(witness_ok(S, w) for w in r.witnesses)


def test_criterion_8_fault_injection(criterion):
    with criterion(8, "50 random single-coefficient sign flips are all rejected", 10.0):
        bundles = [
            build_bundle(X2_MINUS_X6, F(2, 5), F(1, 1000), decomp=x2_minus_x6_decomposition(F(2, 5)))[1],
            build_bundle(T**2 + T**4, F(1, 2), F(1, 100), n_tangents=5)[1],
            build_bundle(1 + T + 3 * T**2, F(1, 2), F(1, 100), n_tangents=5)[1],
            build_bundle(T**4, F(1, 2), F(1, 100))[1],
        ]
        assert all(verify_bundle(b) for b in bundles)
        rng = random.Random(8)
        for _ in range(50):
            b = rng.choice(bundles)
            site = rng.choice(faults.sites(b))
            assert not verify_bundle(faults.flip(b, site)), site


# -- criterion 9 fixtures ----------------------------------------------------------------------

def _af(n, const=0, x=None):
    return AffineForm.make(n, 0, const=const, x=x or {})


def _disk():
    return ConicRep("set", 2, 0, (block2(_af(2, 1, {0: 1}), _af(2, 0, {1: 1}), _af(2, 1, {0: -1})),))


def _box(lo, hi):
    """Axis-parallel box ``lo <= x <= hi`` as 1x1 blocks."""
    n = len(lo)
    blocks = []
    for i in range(n):
        blocks += [block1(_af(n, -lo[i], {i: 1})), block1(_af(n, hi[i], {i: -1}))]
    return ConicRep("set", n, 0, tuple(blocks))


GRID = [F(i, 4) for i in range(-5, 6)]
GRID2 = [(x, y) for x in GRID for y in GRID][:100]


def _decided(r, x, lift, member):
    """Feasible with the supplied lift if a member, exact infeasibility certificate otherwise."""
    if member:
        return check_point(r, list(x), lift)
    Z = infeasibility_certificate(r, list(x))
    return Z is not None and check_infeasibility(r, list(x), Z)


def test_criterion_9_combinators(criterion):
    with criterion(9, "intersect/product/cone_hull/union_hull match direct predicates on 100 points each", 5.0):
        disk = _disk()
        half = ConicRep("set", 2, 0, (block1(_af(2, 0, {0: 1})),))
        r = intersect(disk, half)
        for x in GRID2:
            assert check_point(r, list(x)) == (x[0] ** 2 + x[1] ** 2 <= 1 and x[0] >= 0)

        r = product(disk, _box([0], [1]))
        for k, x in enumerate(GRID2):
            z = GRID[k % len(GRID)]
            assert check_point(r, [x[0], x[1], z]) == (x[0] ** 2 + x[1] ** 2 <= 1 and 0 <= z <= 1)

        # cone over the box [1, 2]^2 is spanned by (1, 2) and (2, 1)
        r = cone_hull(_box([1, 1], [2, 2]))
        for x in GRID2:
            member = x == (0, 0) or (x[0] > 0 and x[1] > 0 and x[1] <= 2 * x[0] and x[0] <= 2 * x[1])
            lift = None
            if member:
                lam = min(x)
                x0 = [c / lam for c in x] if lam else [F(1), F(1)]
                lift = lift_cone_hull(x0, [], lam)
            assert _decided(r, x, lift, member), x

        # hull of [0, 1]^2 and [2, 3] x [0, 1] is [0, 3] x [0, 1]; scale the grid to cover it
        r = union_hull(_box([0, 0], [1, 1]), _box([2, 0], [3, 1]))
        for g in GRID2:
            x = (g[0] * 2 + 1, g[1] + F(1, 2))
            member = 0 <= x[0] <= 3 and 0 <= x[1] <= 1
            lift = None
            if member:
                if x[0] <= 1:
                    p, q, lam = x, (2, 0), F(1)
                elif x[0] >= 2:
                    p, q, lam = (0, 0), x, F(0)
                else:
                    p, q, lam = (1, x[1]), (2, x[1]), 2 - x[0]
                lift = lift_union_hull(p, [], q, [], lam)
            assert _decided(r, x, lift, member), x

        point_one = _box([1], [1])
        r = cone_hull(point_one)
        assert check_point(r, [2], [2, 2])
        Z = infeasibility_certificate(r, [-1])
        assert Z is not None and check_infeasibility(r, [-1], Z)
