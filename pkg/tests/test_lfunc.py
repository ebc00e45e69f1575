import math

import numpy as np
import pytest

from ffmobius import lfunc
from ffmobius.hayes import HayesModulus, unit_group
from ffmobius.polyring import ONE, T, deg

from conftest import naive_mobius


def direct_l_coeffs(R, grp, chi, N):
    """sum over monic f of degree m of chi(f), one polynomial at a time."""
    return np.array(
        [sum(grp.char_eval(chi, f) for f in R.monic_enum(m)) for m in range(N + 1)]
    )


def test_trivial_forms(R2, R3):
    for R in (R2, R3):
        L = lfunc.l_polynomial(unit_group(R, HayesModulus(0, ONE)), unit_group(R, HayesModulus(0, ONE)).characters()[0])
        assert isinstance(L, lfunc.TrivialLForm)
        assert L.numerator() == [1]
        assert L.series(5) == [R.q**m for m in range(6)]
    grp = unit_group(R2, HayesModulus(0, T))
    L = lfunc.l_polynomial(grp, grp.characters()[0])
    assert L.numerator() == [1, -1]
    # (1 - u) / (1 - 2u) = 1 + u + 2u^2 + 4u^3 + ...
    assert L.series(4) == [1, 1, 2, 4, 8]


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("s,g", [(0, (0, 1)), (1, (0, 1)), (1, (1, 1, 1)), (2, ONE), (0, (0, 1, 1))])
def test_trivial_series_counts_coprime(request, q, s, g):
    R = request.getfixturevalue(f"R{q}")
    grp = unit_group(R, HayesModulus(s, g))
    L = lfunc.l_polynomial(grp, grp.characters()[0])
    expect = [sum(1 for f in R.monic_enum(m) if R.gcd(f, g) == ONE) for m in range(6)]
    assert L.series(5) == expect


def test_quadratic_modulus_example(R2):
    grp = unit_group(R2, HayesModulus(0, (1, 1, 1)))
    for chi in grp.characters()[1:]:
        L = lfunc.l_polynomial(grp, chi)
        assert L.degree_bound == 1
        assert L.vanishes_beyond_bound()
        c1 = abs(L.coeffs[1])
        assert min(abs(c1 - 1), abs(c1 - math.sqrt(2))) < 1e-9
        rep = lfunc.weil_check(L, 2)
        assert rep.ok and len(rep.roots) == 1


@pytest.mark.parametrize("q,s,g", [(2, 1, T), (2, 2, (1, 1)), (3, 1, T), (3, 0, (1, 0, 1)), (2, 1, (0, 1, 1))])
def test_coefficients_match_direct_sum(request, q, s, g):
    R = request.getfixturevalue(f"R{q}")
    grp = unit_group(R, HayesModulus(s, g))
    D = s + deg(g) - 1
    for chi in grp.characters()[1:]:
        L = lfunc.l_polynomial(grp, chi)
        direct = direct_l_coeffs(R, grp, chi, D + 2)
        assert np.allclose(L.coeffs, direct[: D + 1], atol=1e-9)
        assert np.allclose(direct[D + 1 :], 0, atol=1e-9)


def test_weil_exhaustive_q2_small():
    from ffmobius.fq import get_field
    from ffmobius.polyring import ring_for

    R = ring_for(get_field(2))
    count = 0
    for dg in range(0, 4):
        for g in R.monic_enum(dg):
            for s in range(0, 3):
                grp = unit_group(R, HayesModulus(s, g))
                for chi in grp.characters()[1:]:
                    L = lfunc.l_polynomial(grp, chi)
                    assert L.vanishes_beyond_bound()
                    rep = lfunc.weil_check(L, 2)
                    assert rep.ok, (s, g, chi)
                    # roots rebuild the polynomial
                    rebuilt = lfunc.product_from_roots(rep.roots, L.degree + 1)
                    assert np.allclose(rebuilt, L.coeffs[: L.degree + 1], atol=1e-6)
                    count += 1
    assert count > 100


def test_weil_q3_s1_g_t(R3):
    grp = unit_group(R3, HayesModulus(1, T))
    for chi in grp.characters()[1:]:
        rep = lfunc.weil_check(lfunc.l_polynomial(grp, chi), 3)
        assert rep.ok
        assert all(d <= 1e-6 for d in rep.distances)


def test_weil_flags_anomalous_roots():
    L = lfunc.LPolynomial(np.array([1, -3.0]), 1, np.zeros(2))
    rep = lfunc.weil_check(L, 2)
    assert not rep.ok and rep.classes == ["anomalous"]
    assert lfunc.weil_check(lfunc.LPolynomial(np.array([1.0 + 0j]), 0, np.zeros(1)), 2).roots == []


def test_repeated_roots_are_merged():
    # (1 - u)^3: a triple inverse root at 1
    L = lfunc.LPolynomial(np.array([1, -3, 3, -1], dtype=complex), 3, np.zeros(1))
    rep = lfunc.weil_check(L, 4)
    assert rep.ok and all(abs(r - 1) < 1e-9 for r in rep.roots)


def test_mobius_char_sum_examples(R2, R3):
    for R in (R2, R3):
        grp = unit_group(R, HayesModulus(0, ONE))
        chi0 = grp.characters()[0]
        assert lfunc.mobius_char_sum(grp, chi0, 0) == 1
        assert lfunc.mobius_char_sum(grp, chi0, 1) == -R.q
        for n in range(2, 7):
            assert lfunc.mobius_char_sum(grp, chi0, n) == 0
    grp = unit_group(R2, HayesModulus(1, T))
    for chi in grp.characters()[1:]:
        for n in range(0, 7):
            inv = lfunc.mobius_char_sum(grp, chi, n)
            direct = sum(naive_mobius(R2, f) * grp.char_eval(chi, f) for f in R2.monic_enum(n))
            assert abs(inv - direct) < 1e-9
            assert abs(inv - lfunc.direct_mobius_char_sum(grp, chi, n)) < 1e-9


def test_reciprocal_series_stack():
    c = np.array([[1, -2, 0], [1, 1, 1]], dtype=complex)
    b = lfunc.reciprocal_series(c, 5)
    assert np.allclose(b[0], [1, 2, 4, 8, 16, 32])
    # 1/(1+u+u^2) = (1-u)/(1-u^3)
    assert np.allclose(b[1], [1, -1, 0, 1, -1, 0])


def test_lemma1_bound_values():
    for q in (2, 3, 5):
        assert lfunc.lemma1_bound(4, 1, 2, 0, False, q) == 5 * q**2
        assert lfunc.lemma1_bound(3, 0, 1, 1, True, q) == q + 1
    # s + deg g = 1: L = 1, so every sum with n >= 1 vanishes
    assert lfunc.lemma1_bound(3, 1, 0, 0, False, 2) == 0
    assert lfunc.lemma1_bound(0, 1, 0, 0, False, 2) == 1
    with pytest.raises(ValueError):
        lfunc.lemma1_bound(2, 0, 0, 0, True, 2)
    assert [lfunc.trivial_g1_value(n, 3) for n in range(4)] == [1, -3, 0, 0]


def test_multiset_count():
    assert lfunc.multiset_count(4, 2) == 5
    assert lfunc.multiset_count(0, 0) == 1
    assert lfunc.multiset_count(3, 0) == 0
    assert lfunc.multiset_count(2, 3) == math.comb(4, 2)
