import itertools
import math

import pytest

from ffmobius.abelian import decompose, element_order, exponent_vectors


def invariant_factors(mods):
    # Smith form of a diagonal matrix via prime-power bookkeeping
    powers = {}
    for m in mods:
        n, d = m, 2
        while n > 1:
            if n % d == 0:
                e = 0
                while n % d == 0:
                    n //= d
                    e += 1
                powers.setdefault(d, []).append(d**e)
            d += 1
    width = max((len(v) for v in powers.values()), default=0)
    for v in powers.values():
        v.sort(reverse=True)
    out = []
    for i in range(width):
        out.append(math.prod(v[i] for v in powers.values() if i < len(v)))
    return out


def product_group(mods):
    elements = list(itertools.product(*(range(m) for m in mods)))
    mul = lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, mods))  # noqa: E731
    return elements, mul, tuple(0 for _ in mods)


@pytest.mark.parametrize(
    "mods",
    [(1,), (2,), (6,), (2, 2), (2, 4), (4, 6), (2, 2, 2), (3, 9), (2, 3, 4), (8, 4, 2), (12, 18), (5, 10, 2)],
)
def test_invariant_factors(mods):
    elements, mul, e = product_group(mods)
    dec = decompose(elements, mul, e)
    expect = [f for f in invariant_factors(mods) if f > 1]
    assert dec.orders == expect
    assert dec.order == len(elements)
    for a, b in zip(dec.orders, dec.orders[1:]):
        assert a % b == 0
    for g, o in zip(dec.generators, dec.orders):
        assert element_order(g, mul, e) == o


def test_dlog_is_isomorphism():
    elements, mul, e = product_group((4, 6))
    dec = decompose(elements, mul, e)
    for x, y in itertools.product(elements, repeat=2):
        ex, ey, exy = dec.dlog[x], dec.dlog[y], dec.dlog[mul(x, y)]
        assert exy == tuple((a + b) % o for a, b, o in zip(ex, ey, dec.orders))


def test_deterministic():
    elements, mul, e = product_group((2, 4, 3))
    a, b = decompose(elements, mul, e), decompose(elements, mul, e)
    assert a.generators == b.generators and a.orders == b.orders


def test_multiplicative_group_mod_prime():
    p = 13
    dec = decompose(list(range(1, p)), lambda a, b: a * b % p, 1)
    assert dec.orders == [12]


def test_exponent_vectors():
    assert list(exponent_vectors([2, 3])) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert list(exponent_vectors([])) == [()]
