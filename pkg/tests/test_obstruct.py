from fractions import Fraction
from itertools import combinations

import hypothesis.strategies as st
import pytest
from hypothesis import given

from socrep.lp import EQ, GE, lp_feasible, satisfies
from socrep.obstruct import (
    CAVEAT,
    PointSet,
    StarWitness,
    condition_star,
    moment_curve_points,
    rational_circle_points,
    star_constraints,
    witness_ok,
)

F = Fraction
SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


# -- exact LP ---------------------------------------------------------------------------------

def test_lp_examples():
    sol = lp_feasible([([1], GE, 1), ([-1], GE, -2)])
    assert sol is not None and 1 <= sol[0] <= 2
    assert lp_feasible([([1], GE, 1), ([-1], GE, 0)]) is None
    sol = lp_feasible([([1, 1], EQ, 1), ([1, 0], GE, 0), ([0, 1], GE, 0)])
    assert sol in ([1, 0], [0, 1])
    with pytest.raises(ValueError):
        lp_feasible([([1, 1], GE, 0), ([1], GE, 0)])


def _fourier_motzkin(rows, n):
    """Feasibility of ``a.x >= b`` rows by eliminating every variable."""
    cons = []
    for a, rel, b in rows:
        a, b = [F(c) for c in a], F(b)
        cons.append((a, b))
        if rel == EQ:
            cons.append(([-c for c in a], -b))
    for j in range(n):
        pos = [c for c in cons if c[0][j] > 0]
        neg = [c for c in cons if c[0][j] < 0]
        keep = [c for c in cons if c[0][j] == 0]
        for ap, bp in pos:
            for an, bn in neg:
                lp_, ln = -an[j], ap[j]
                keep.append(([lp_ * x + ln * y for x, y in zip(ap, an)], lp_ * bp + ln * bn))
        cons = keep
    return all(b <= 0 for _, b in cons)


small = st.integers(-3, 3)


@given(st.integers(1, 3).flatmap(lambda n: st.lists(
    st.tuples(st.lists(small, min_size=n, max_size=n), st.sampled_from([GE, GE, EQ]), small),
    min_size=1, max_size=6)))
def test_lp_agrees_with_fourier_motzkin(rows):
    n = len(rows[0][0])
    sol = lp_feasible(rows)
    assert (sol is not None) == _fourier_motzkin(rows, n)
    if sol is not None:
        assert len(sol) == n and satisfies(sol, rows)


@given(st.integers(1, 3).flatmap(lambda n: st.lists(
    st.tuples(st.lists(small, min_size=n, max_size=n), st.sampled_from([GE, EQ]), small),
    min_size=1, max_size=5)))
def test_lp_nonneg_agrees_with_fourier_motzkin(rows):
    n = len(rows[0][0])
    signs = [([1 if i == j else 0 for i in range(n)], GE, 0) for j in range(n)]
    sol = lp_feasible(rows, nonneg=True)
    assert (sol is not None) == _fourier_motzkin(rows + signs, n)
    if sol is not None:
        assert satisfies(sol, rows + signs)


def test_lp_is_deterministic():
    rows = [([1, 2, -1], GE, 1), ([0, 1, 1], EQ, 2), ([1, 0, 0], GE, -3)]
    assert lp_feasible(rows) == lp_feasible(list(rows))


# -- point sets --------------------------------------------------------------------------------

def test_moment_curve_points():
    assert moment_curve_points(2, 3).points == ((1, 1), (2, 4), (3, 9))
    assert moment_curve_points(4, 2).points == ((1, 1, 1, 1), (2, 4, 8, 16))
    for n, c in ((3, 1), (0, 2), (2, 0)):
        with pytest.raises(ValueError):
            moment_curve_points(n, c)


def test_rational_circle_points():
    S = rational_circle_points(8)
    assert len(set(S.points)) == 8
    assert all(x * x + y * y == 1 for x, y in S.points)
    assert (F(3, 5), F(4, 5)) in S.points


def test_pointset_validation():
    with pytest.raises(ValueError):
        PointSet.of([(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        PointSet(2, ((F(0), F(0)), (F(1),)))


# -- condition (*) ----------------------------------------------------------------------------

def test_circle_holds():
    r = condition_star(rational_circle_points(8), 1)
    assert r.holds and r.failing_subset is None and r.note == CAVEAT
    assert len(r.witnesses) == 8
    S = rational_circle_points(8)
    assert all(witness_ok(S, w) for w in r.witnesses)


def test_square_with_center_fails_at_center():
    S = PointSet.of(SQUARE + [(F(1, 2), F(1, 2))], hull_generators=SQUARE)
    r = condition_star(S, 1)
    assert not r.holds and r.failing_subset == (4,)
    assert len(r.witnesses) == 4


def test_square_vertices_hold_for_d1_not_d2():
    S = PointSet.of(SQUARE)
    assert condition_star(S, 1).holds
    r = condition_star(S, 2)
    # diagonal pairs cannot be cut out by an edge
    assert not r.holds and r.failing_subset == (0, 2)


def test_moment_curve_d2_matches_explicit_polynomial():
    S = moment_curve_points(4, 8)
    r = condition_star(S, 2)
    assert r.holds and len(r.witnesses) == 28
    assert all(witness_ok(S, w) for w in r.witnesses)
    for ta, tb in combinations(range(1, 9), 2):
        # (x - ta)^2 (x - tb)^2 = sum_k c_k x^k, read off in moment coordinates
        c = [F(1)]
        for root in (ta, ta, tb, tb):
            c = [(c[k - 1] if k else 0) - root * (c[k] if k < len(c) else 0) for k in range(len(c) + 1)]
        vals = {t: sum((c[k] * t**k for k in range(5)), F(0)) for t in range(1, 9)}
        scale = 1 / min(v for t, v in vals.items() if t not in (ta, tb))
        w = StarWitness((ta - 1, tb - 1), tuple(scale * ck for ck in c[1:]) + (scale * c[0],))
        assert witness_ok(S, w)


def test_moment_curve_d3_fails():
    r = condition_star(moment_curve_points(4, 6), 3)
    assert not r.holds


def test_d_out_of_range():
    S = PointSet.of(SQUARE)
    for d in (0, 4, 5):
        with pytest.raises(ValueError):
            condition_star(S, d)


@pytest.mark.parametrize("lam", [F(1, 3), F(2), F(7, 5)])
def test_scaling_invariance(lam):
    for S, d in ((rational_circle_points(6), 1), (PointSet.of(SQUARE + [(F(1, 2), F(1, 2))], SQUARE), 1),
                 (PointSet.of(SQUARE), 2)):
        r, rs = condition_star(S, d), condition_star(S.scaled(lam), d)
        assert r.holds == rs.holds and r.failing_subset == rs.failing_subset
        for w in r.witnesses:
            mapped = StarWitness(w.subset, tuple(c / lam for c in w.f_coeffs[:-1]) + (w.f_coeffs[-1],))
            assert witness_ok(S.scaled(lam), mapped)


def test_failure_is_monotone_in_s():
    base = SQUARE + [(F(1, 2), F(1, 2))]
    r = condition_star(PointSet.of(base, SQUARE), 1)
    assert not r.holds
    for extra in ([(F(1, 4), F(1, 3))], [(F(1, 4), F(1, 3)), (F(2, 3), F(1, 5))]):
        bigger = PointSet.of(base + extra, SQUARE)
        rb = condition_star(bigger, 1)
        assert not rb.holds
        # the failing subset of the smaller sample still fails in the bigger one
        assert lp_feasible(star_constraints(bigger, r.failing_subset)) is None


def test_determinism_and_parallel_agree():
    S = moment_curve_points(4, 6)
    r1, r2 = condition_star(S, 2), condition_star(S, 2)
    rp = condition_star(S, 2, jobs=2)
    assert r1 == r2 == rp


def test_witness_ok_rejects_tampering():
    S = rational_circle_points(5)
    w = condition_star(S, 1).witnesses[0]
    bent = StarWitness(w.subset, tuple(c + F(1, 10**6) for c in w.f_coeffs))
    assert not witness_ok(S, bent)
    assert not witness_ok(S, StarWitness(w.subset, w.f_coeffs[:-1]))
