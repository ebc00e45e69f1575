"""Invariant-factor decomposition of small finite abelian groups.

The group is given extensionally: a list of hashable elements, a
multiplication and the identity.  Each p-primary part is split greedily by
repeatedly taking an element of maximal order modulo the span so far and
correcting it into a direct complement; the cyclic pieces are then merged
across primes into invariant factors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

Elem = Hashable


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _power(x: Elem, e: int, mul, identity: Elem) -> Elem:
    result = identity
    base = x
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def element_order(x: Elem, mul, identity: Elem) -> int:
    k, y = 1, x
    while y != identity:
        y = mul(y, x)
        k += 1
    return k


@dataclass
class Decomposition:
    """Generators g_i of orders o_i with G = <g_1> x ... x <g_r>.

    ``dlog`` maps every element to its exponent vector.
    """

    generators: list
    orders: list[int]
    dlog: dict

    @property
    def order(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out


def _span_table(gens, orders, mul, identity) -> dict:
    table = {identity: ()}
    for g, o in zip(gens, orders):
        new = {}
        for h, exps in table.items():
            y = h
            for j in range(o):
                new[y] = exps + (j,)
                y = mul(y, g)
        table = new
    return table


def _split_p_group(elements, p, mul, identity):
    gens: list = []
    orders: list[int] = []
    span = {identity: ()}
    total = len(elements)
    while len(span) < total:
        best, best_m = None, 1
        for x in elements:
            if x in span:
                continue
            m, y = 1, x
            while y not in span:
                y = _power(y, p, mul, identity)
                m *= p
            if m > best_m:
                best, best_m = x, m
        exps = span[_power(best, best_m, mul, identity)]
        corr = best
        for g, o, e in zip(gens, orders, exps):
            if e % best_m:
                raise ArithmeticError("greedy p-group split failed a divisibility check")
            corr = mul(corr, _power(g, (o - e // best_m) % o, mul, identity))
        gens.append(corr)
        orders.append(best_m)
        span = _span_table(gens, orders, mul, identity)
    return gens, orders


def decompose(
    elements: Sequence[Elem], mul: Callable[[Elem, Elem], Elem], identity: Elem
) -> Decomposition:
    """Invariant factors, largest first, plus a full discrete-log table.

    ``elements`` must list the whole group; its order fixes the tie-breaking,
    so the result is deterministic.
    """
    N = len(elements)
    if N == 1:
        return Decomposition([], [], {identity: ()})
    position = {x: i for i, x in enumerate(elements)}
    by_prime = []
    for p in _prime_factors(N):
        pe = 1
        while N % (pe * p) == 0:
            pe *= p
        cofactor = N // pe
        # p-primary part as the image of x -> x^cofactor, kept in canonical order
        seen, part = set(), []
        for x in elements:
            y = _power(x, cofactor, mul, identity)
            if y not in seen:
                seen.add(y)
                part.append(y)
        part.sort(key=position.__getitem__)
        by_prime.append(_split_p_group(part, p, mul, identity))
    width = max(len(o) for _, o in by_prime)
    gens, orders = [], []
    for i in range(width):
        g, o = identity, 1
        for pg, po in by_prime:
            if i < len(po):
                g, o = mul(g, pg[i]), o * po[i]
        gens.append(g)
        orders.append(o)
    dlog = _span_table(gens, orders, mul, identity)
    if len(dlog) != N:
        raise ArithmeticError("generators do not span the group")
    return Decomposition(gens, orders, dlog)


def exponent_vectors(orders: Sequence[int]):
    """All exponent vectors in lexicographic order."""
    return itertools.product(*(range(o) for o in orders))
