import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffmobius.fq import get_field
from ffmobius.laurent import (
    Laurent,
    PrecisionError,
    RationalFF,
    agreement_length,
    approx,
    approx_brute,
    continued_fraction,
    expand_rational,
    parse_torus,
    torus_points,
)
from ffmobius.polyring import ONE, T, deg, ring_for

F2, F3 = get_field(2), get_field(3)


def series(F, terms, prec, exact=True):
    return Laurent.from_dict(F, terms, prec, exact)


def test_norm_examples():
    assert Laurent.zero(F2).norm() == 0
    for F in (F2, F3):
        assert Laurent.from_poly(F, (1, 0, 0, 1)).norm() == F.q**3
        assert series(F, {-2: 1}, 4).norm() == F.q**-2


def test_norm_of_inexact_zero_is_refused():
    with pytest.raises(PrecisionError):
        Laurent.torus(F2, [0, 0, 0], exact=False).norm()


def test_eq_map_examples():
    assert Laurent.zero(F2).eq_map() == 1
    assert abs(Laurent.torus(F2, [1]).eq_map() + 1) < 1e-15
    R = ring_for(F3)
    for f in R.monic_enum(3):
        assert Laurent.from_poly(F3, f).eq_map() == 1


def test_expand_rational_examples():
    R = ring_for(F2)
    assert expand_rational(R, (), T, 5).leading() is None
    x = expand_rational(R, ONE, T, 6)
    assert x.exact and x.as_dict() == {-1: 1}
    y = expand_rational(R, ONE, (1, 1), 8)
    assert not y.exact
    assert y.torus_coeffs() == (1,) * 8


def test_mul_poly_examples():
    theta = series(F2, {-2: 1}, 6)
    assert theta.mul_poly(ONE).as_dict() == theta.as_dict()
    assert theta.mul_poly(T).as_dict() == {-1: 1}
    th = series(F2, {-2: 1, -3: 1}, 6)
    assert th.mul_poly((0, 1, 1)).coef(-1) == 0


def test_mul_poly_needs_precision():
    th = Laurent.torus(F2, [1, 0], exact=False)
    with pytest.raises(PrecisionError):
        th.mul_poly((0, 0, 1))


def test_inexact_coefficients_below_window_raise():
    th = Laurent.torus(F3, [1, 2], exact=False)
    assert th.coef(-2) == 2
    with pytest.raises(PrecisionError):
        th.coef(-3)


def _rand_series(rng, F, top=3, prec=8):
    terms = {e: rng.randrange(F.q) for e in range(-prec, top + 1)}
    return series(F, terms, prec, exact=True)


@pytest.mark.parametrize("F", [F2, F3, get_field(2, 2)])
def test_ultrametric_and_multiplicative(F):
    rng = random.Random(1)
    for _ in range(300):
        x, y = _rand_series(rng, F), _rand_series(rng, F)
        if x.leading() is None or y.leading() is None:
            continue
        s = x + y
        ns = s.norm()
        assert ns <= max(x.norm(), y.norm())
        if x.norm() != y.norm():
            assert ns == max(x.norm(), y.norm())
        assert (x * y).norm() == x.norm() * y.norm()


def test_subtraction_inverts_addition():
    rng = random.Random(2)
    for _ in range(100):
        x, y = _rand_series(rng, F3), _rand_series(rng, F3)
        assert ((x + y) - y).as_dict() == x.as_dict()
        assert (x + (-x)).leading() is None


def test_parse_torus():
    th = parse_torus(F3, "1,0,2")
    assert th.torus_coeffs() == (1, 0, 2)
    assert th.token() == "1,0,2"
    with pytest.raises(ValueError):
        parse_torus(F3, "1,3")
    with pytest.raises(ValueError):
        parse_torus(F3, "a")


def test_torus_points_order():
    pts = [p.token() for p in torus_points(F2, 3)]
    assert pts[:3] == ["0,0,0", "0,0,1", "0,1,0"]
    assert len(pts) == 8


# -- continued fractions -----------------------------------------------------------


def test_cf_examples():
    assert continued_fraction(Laurent.zero(F2), 3) == [((), ONE)]
    convs = continued_fraction(Laurent.torus(F2, [1]), 3)
    assert ((1,), T) in convs


def _error_exponent(theta, a, g, R, prec):
    # -log_q |theta - a/g|, read off coefficient by coefficient
    x = expand_rational(R, a, g, prec)
    return agreement_length(theta, x) + 1


@pytest.mark.parametrize("seed", range(20))
def test_cf_error_identity_random(seed):
    R = ring_for(F2)
    rng = random.Random(seed)
    P, max_deg = 9, 4
    theta = Laurent.torus(F2, [rng.randrange(2) for _ in range(P)], exact=False)
    convs = continued_fraction(theta, max_deg)
    degs = [deg(g) for _, g in convs]
    assert degs == sorted(set(degs))
    for (a, g), (_, g_next) in zip(convs, convs[1:]):
        assert R.gcd(a, g) == ONE if a else g == ONE
        # |theta - a/g| = q^-(deg g + deg g_next), visible within the window
        if deg(g) + deg(g_next) <= P:
            assert _error_exponent(theta, a, g, R, P) == deg(g) + deg(g_next)
    # every listed convergent is also found by exhaustive search
    for n in range(1, 2 * max_deg + 1):
        a, g = approx(theta.truncate(n + 1), n).a, approx(theta.truncate(n + 1), n).g
        assert (a, g) in convs


def test_cf_precision_guard():
    th = Laurent.torus(F2, [1, 0, 1], exact=False)
    with pytest.raises(PrecisionError):
        continued_fraction(th, 2)


# -- approximation lemma -----------------------------------------------------------


def test_approx_examples():
    for n in range(1, 9):
        assert approx(Laurent.zero(F2), n) == RationalFF((), ONE)
    assert approx(Laurent.torus(F2, [1]), 4) == RationalFF((1,), T)
    R = ring_for(F2)
    assert approx_brute(R, Laurent.torus(F2, [1]), 4) == [RationalFF((1,), T)]


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4)])
def test_approx_matches_exhaustive_search(q, n):
    F = get_field(q)
    R = ring_for(F)
    for theta in torus_points(F, n + 1):
        found = approx_brute(R, theta, n)
        assert len(found) == 1
        assert approx(theta, n) == found[0]


def test_approx_extension_field():
    F = get_field(2, 2)
    R = ring_for(F)
    rng = random.Random(5)
    for _ in range(40):
        theta = Laurent.torus(F, [rng.randrange(4) for _ in range(5)])
        assert [approx(theta, 4)] == approx_brute(R, theta, 4)


def test_approx_rejects_bad_input():
    with pytest.raises(PrecisionError):
        approx(Laurent.torus(F2, [1, 0], exact=False), 4)
    with pytest.raises(ValueError):
        approx(Laurent.from_poly(F2, T), 4)
    with pytest.raises(ValueError):
        approx(Laurent.torus(F2, [1]), 0)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=9, max_size=9), st.integers(1, 8))
def test_approx_postcondition(cs, n):
    theta = Laurent.torus(F3, cs, exact=False)
    r = approx(theta, n)
    R = ring_for(F3)
    assert R.is_monic(r.g) and deg(r.a) < deg(r.g) <= n // 2
    need = n // 2 + deg(r.g)
    x = expand_rational(R, r.a, r.g, max(need, 1))
    assert all(theta.coef(-i) == x.coef(-i) for i in range(1, need + 1))
