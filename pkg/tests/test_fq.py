import cmath
import itertools

import numpy as np
import pytest

from ffmobius.fq import FieldError, default_modulus, get_field, is_irreducible_over_prime, parse_field


FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (7, 1), (13, 1)]


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms(p, k):
    F = get_field(p, k)
    q = F.q
    els = range(q)
    for a, b in itertools.product(els, els):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
    for a, b, c in itertools.islice(itertools.product(els, els, els), 0, None, max(1, q**3 // 500)):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("p,k", FIELDS)
def test_multiplicative_group_cyclic(p, k):
    F = get_field(p, k)
    orders = set()
    for a in range(1, F.q):
        x, o = a, 1
        while x != 1:
            x, o = F.mul(x, a), o + 1
        orders.add(o)
    assert max(orders) == F.q - 1


def test_char2_one_plus_one():
    assert get_field(2).add(1, 1) == 0


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9])
def test_inverse_of_one(q):
    assert parse_field(str(q)).inv(1) == 1


def test_f4_alpha_squared():
    F = get_field(2, 2, (1, 1, 1))
    alpha = F.elem([0, 1])
    assert F.coords(F.mul(alpha, alpha)) == (1, 1)


def test_trace_values():
    F = get_field(2, 2, (1, 1, 1))
    assert F.trace(0) == 0
    assert F.trace(F.elem([0, 1])) == 1
    for x in range(5):
        assert get_field(5).trace(x) == x


@pytest.mark.parametrize("p,k", FIELDS)
def test_trace_linear_and_balanced(p, k):
    F = get_field(p, k)
    tr = [F.trace(x) for x in range(F.q)]
    # surjective, each value hit q/p times
    assert sorted(np.bincount(tr, minlength=p).tolist()) == [F.q // p] * p
    for a, b in itertools.product(range(F.q), repeat=2):
        assert F.trace(F.add(a, b)) == (tr[a] + tr[b]) % p


def test_trace_mul_table_matches():
    F = get_field(3, 2)
    for x, y in itertools.product(range(9), repeat=2):
        assert F.trace_mul_table[x, y] == F.trace(F.mul(x, y))


def test_psi():
    assert get_field(2).psi(0) == 1
    assert abs(get_field(2).psi(1) + 1) < 1e-15
    assert abs(get_field(3).psi(1) - cmath.exp(2j * cmath.pi / 3)) < 1e-15


@pytest.mark.parametrize("p,k", FIELDS)
def test_psi_orthogonality(p, k):
    F = get_field(p, k)
    for a in range(F.q):
        total = sum(F.psi(F.mul(a, x)) for x in range(F.q))
        assert abs(total - (F.q if a == 0 else 0)) < 1e-9


def test_default_modulus_is_least_irreducible():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(3, 2) == (1, 0, 1)
    assert is_irreducible_over_prime((1, 1, 1), 2)
    assert not is_irreducible_over_prime((1, 0, 1), 2)


def test_tokens_round_trip():
    F = parse_field("2^2/1,1,1")
    assert F.q == 4 and F.token() == "2^2/1,1,1"
    assert parse_field("4") == F
    assert parse_field("2^2") == F
    assert parse_field(F.token()) == F
    assert parse_field("7").token() == "7^1/0,1"


@pytest.mark.parametrize("bad", ["6", "1", "0", "x", "2^2/1,0,1", "2^2/1,1", "32", "2^a"])
def test_bad_tokens(bad):
    with pytest.raises(FieldError):
        parse_field(bad)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        get_field(3).inv(0)


def test_roots_of_unity():
    F = get_field(3)
    assert np.allclose(F.roots_of_unity(), [1, cmath.exp(2j * cmath.pi / 3), cmath.exp(4j * cmath.pi / 3)])
