import math
import random

import numpy as np
import pytest

from ffmobius.bounds import theorem_bound
from ffmobius.expsum import (
    brute_sum,
    decomposition_sum,
    gauss_sum,
    gauss_sums,
    lemma3_check,
    scan_max,
)
from ffmobius.fq import get_field, parse_field
from ffmobius.hayes import HayesModulus, ResourceError, unit_group
from ffmobius.laurent import Laurent, approx, torus_points
from ffmobius.polyring import ONE, T, ring_for

from conftest import naive_sum


def zero(F):
    return Laurent.zero(F)


def rand_theta(rng, F, n):
    return Laurent.torus(F, [rng.randrange(F.q) for _ in range(n + 1)])


def test_brute_sum_examples(R2, R3):
    for R in (R2, R3):
        assert abs(brute_sum(R, zero(R.field), 1) + R.q) < 1e-12
        for n in range(2, 7):
            assert abs(brute_sum(R, zero(R.field), n)) < 1e-9
    assert abs(brute_sum(R2, Laurent.torus(R2.field, [1]), 2) - 2) < 1e-12


@pytest.mark.parametrize("q,n", [(2, 3), (2, 5), (3, 3), (4, 3), (5, 2)])
def test_brute_sum_matches_naive(q, n):
    F = parse_field(str(q))
    R = ring_for(F)
    rng = random.Random(q * 10 + n)
    for _ in range(15):
        cs = [rng.randrange(q) for _ in range(n + 1)]
        assert abs(brute_sum(R, Laurent.torus(F, cs), n) - naive_sum(R, cs, n)) < 1e-9


def test_brute_sum_cap(R3):
    with pytest.raises(ResourceError):
        brute_sum(R3, zero(R3.field), 15)


def test_decomposition_examples(R2):
    res = decomposition_sum(R2, zero(R2.field), 4)
    assert res.g == ONE and abs(res.value) < 1e-9
    theta = Laurent.torus(R2.field, [1])
    res = decomposition_sum(R2, theta, 4)
    assert (res.a, res.g, res.s) == ((1,), T, 1)
    assert abs(res.value - brute_sum(R2, theta, 4)) < 1e-9


@pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (3, 5)])
def test_decomposition_random(q, n):
    R = ring_for(get_field(q))
    rng = random.Random(100 * q + n)
    for _ in range(50):
        theta = rand_theta(rng, R.field, n)
        assert abs(decomposition_sum(R, theta, n).value - brute_sum(R, theta, n)) < 1e-9


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_decomposition_extension_field(R4, n):
    for theta in torus_points(R4.field, n + 1):
        assert abs(decomposition_sum(R4, theta, n).value - brute_sum(R4, theta, n)) < 1e-9


def test_nonsquarefree_divisors_contribute_nothing(R2):
    # g = t^2 forces a square divisor; keeping it must not change the value
    rng = random.Random(4)
    for _ in range(30):
        theta = rand_theta(rng, R2.field, 6)
        a = decomposition_sum(R2, theta, 6, squarefree_only=True).value
        b = decomposition_sum(R2, theta, 6, squarefree_only=False).value
        assert abs(a - b) < 1e-9


def test_gauss_sum_examples(R2):
    n = 4
    m = HayesModulus.for_theorem(n, T)
    grp = unit_group(R2, m)
    G = gauss_sums(R2, ONE, zero(R2.field), m, n)
    assert abs(G[0] - grp.order) < 1e-9
    assert np.allclose(G[1:], 0, atol=1e-9)
    theta = Laurent.torus(R2.field, [1])
    G = gauss_sums(R2, ONE, theta, m, n)
    for k, chi in enumerate(grp.characters()):
        assert abs(G[k] - gauss_sum(R2, chi, ONE, theta, m, n)) < 1e-9
    # Cauchy-Schwarz: sum |G| <= sqrt(N) * sqrt(sum |G|^2) = N^(3/2)
    assert np.sum(np.abs(G)) <= grp.order**1.5 + 1e-9
    assert abs(np.sum(np.abs(G) ** 2) - grp.order**2) < 1e-9


def test_lemma3_examples(R2, R3):
    assert lemma3_check(R2, zero(R2.field), 4).ok
    v = lemma3_check(R2, Laurent.torus(R2.field, [1]), 4)
    assert v.ok and v.polys_checked == 16 and not v.sampled
    rng = random.Random(9)
    for _ in range(5):
        v = lemma3_check(R3, rand_theta(rng, R3.field, 5), 5, exhaustive_limit=100, sample=150)
        assert v.sampled and v.ok


@pytest.mark.parametrize("q,n", [(2, 4), (2, 5), (3, 4)])
def test_lemma3_exhaustive(q, n):
    R = ring_for(get_field(q))
    for theta in torus_points(R.field, n + 1):
        assert lemma3_check(R, theta, n).ok


def test_lemma3_sensitivity(R2):
    # with too coarse a modulus the exponential is no longer a class function
    from ffmobius.expsum import eq_values
    from ffmobius.hayes import class_key

    theta = Laurent.torus(R2.field, [0, 0, 0, 1, 1])
    r = approx(theta, 4)
    coarse = HayesModulus(0, r.g)
    polys = list(R2.monic_enum(4))
    e = eq_values(R2, polys, theta)
    by_class = {}
    for f, v in zip(polys, e):
        by_class.setdefault(class_key(R2, f, coarse), set()).add(round(v.real))
    assert any(len(vs) > 1 for vs in by_class.values())


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_scan_n1_max_is_q(q):
    F = parse_field(str(q))
    rep = scan_max(ring_for(F), 1)
    assert abs(rep.max_abs - q) < 1e-9
    assert rep.verdict == "OUT_OF_RANGE" and rep.bound is None


def test_scan_small(R2):
    rep = scan_max(R2, 3)
    assert len(rep.thetas) == 16 and rep.verdict == "PASS"
    assert abs(rep.bound - 4 * 2**2.5 * (3 * math.sqrt(3) / 2) ** 3) < 1e-9
    assert abs(rep.bound - 396.8173) < 1e-3
    assert rep.max_abs <= 8
    assert rep.ratio == rep.max_abs / 2**1.5


def test_scan_values_match_brute(R3):
    rep = scan_max(R3, 3)
    for tok, v in zip(rep.thetas, rep.values):
        theta = Laurent.torus(R3.field, [int(c) for c in tok.split(",")])
        assert abs(v - brute_sum(R3, theta, 3)) < 1e-9
    assert rep.argmax == rep.thetas[int(np.argmax(np.round(np.abs(rep.values), 9)))]


def test_scan_jobs_identical(R2):
    a, b = scan_max(R2, 6, jobs=1), scan_max(R2, 6, jobs=3)
    assert np.array_equal(a.counts, b.counts)
    assert a.argmax == b.argmax and a.max_abs == b.max_abs


def test_scan_sampling_and_cap(R3):
    with pytest.raises(ResourceError):
        scan_max(R3, 9)
    a = scan_max(R3, 9, sample=40, seed=1)
    b = scan_max(R3, 9, sample=40, seed=1)
    assert a.sampled and len(a.thetas) == 40
    assert a.thetas == b.thetas and np.array_equal(a.counts, b.counts)
    assert a.max_abs <= theorem_bound(3, 9)


def test_scan_never_exceeds_trivial_bound(R2):
    for n in range(1, 9):
        assert scan_max(R2, n).max_abs <= 2**n + 1e-9
