"""Polynomials over F_q: arithmetic, factorization, mu, phi, divisors.

A polynomial is a tuple of field elements, constant term first, with no
trailing zeros; ``()`` is the zero polynomial.  ``(0, 1, 1)`` is t^2 + t.

Monic polynomials of degree n are also indexed by an integer *code*
``sum(f_i * q**i for i < n)`` (the leading 1 is implicit).  Iterating codes in
increasing order walks the monic polynomials in canonical order: coefficients
compared from the leading one down to the constant.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .fq import FieldSpec

Poly = tuple[int, ...]

ONE: Poly = (1,)
T: Poly = (0, 1)


class PolyError(ValueError):
    """Undefined polynomial operation (zero divisor, non-monic input, ...)."""


def deg(f: Poly) -> int:
    """Degree, with -1 standing in for the degree of the zero polynomial."""
    return len(f) - 1


def sort_key(f: Poly) -> tuple:
    return (len(f), tuple(reversed(f)))


def int_mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[Poly, int], ...]
    unit: int

    def expand(self, ring: "PolyRing") -> Poly:
        out: Poly = (self.unit,)
        for w, a in self.factors:
            for _ in range(a):
                out = ring.mul(out, w)
        return out


class PolyRing:
    """F_q[t] over a given :class:`FieldSpec`."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.q = field.q
        self._irr_cache: dict[int, list[Poly]] = {}
        self._mu_cache: list[np.ndarray] = []
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"PolyRing({self.field.token()!r})"

    # -- basics ---------------------------------------------------------------

    @staticmethod
    def normalize(coeffs: Sequence[int]) -> Poly:
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def poly(self, coeffs: Sequence[int]) -> Poly:
        for c in coeffs:
            if not 0 <= c < self.q:
                raise PolyError(f"coefficient {c} outside F_{self.q}")
        return self.normalize(coeffs)

    def add(self, f: Poly, g: Poly) -> Poly:
        F = self.field
        n = max(len(f), len(g))
        out = [
            F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)
        ]
        return self.normalize(out)

    def neg(self, f: Poly) -> Poly:
        return tuple(self.field.neg(c) for c in f)

    def sub(self, f: Poly, g: Poly) -> Poly:
        return self.add(f, self.neg(g))

    def scale(self, c: int, f: Poly) -> Poly:
        if c == 0:
            return ()
        return tuple(self.field.mul(c, x) for x in f)

    def mul(self, f: Poly, g: Poly) -> Poly:
        if not f or not g:
            return ()
        add, mul = self.field._add, self.field._mul
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                row = mul[a]
                for j, b in enumerate(g):
                    out[i + j] = add[out[i + j]][row[b]]
        return self.normalize(out)

    def shift(self, f: Poly, k: int) -> Poly:
        """Multiply by t^k (k >= 0)."""
        return (0,) * k + f if f else ()

    def divmod(self, f: Poly, g: Poly) -> tuple[Poly, Poly]:
        if not g:
            raise PolyError("polynomial division by zero")
        F = self.field
        add, mul, neg = F._add, F._mul, F._neg
        r = list(f)
        dg = len(g) - 1
        if len(r) <= dg:
            return (), tuple(r)
        inv_lead = F.inv(g[-1])
        quot = [0] * (len(r) - dg)
        for i in range(len(r) - 1, dg - 1, -1):
            c = r[i]
            if c == 0:
                continue
            c = mul[c][inv_lead]
            quot[i - dg] = c
            nc = neg[c]
            row = mul[nc]
            for j in range(dg + 1):
                r[i - dg + j] = add[r[i - dg + j]][row[g[j]]]
        return self.normalize(quot), self.normalize(r[:dg])

    def mod(self, f: Poly, g: Poly) -> Poly:
        return self.divmod(f, g)[1]

    def monic(self, f: Poly) -> Poly:
        if not f:
            return ()
        return self.scale(self.field.inv(f[-1]), f)

    def is_monic(self, f: Poly) -> bool:
        return bool(f) and f[-1] == 1

    def gcd(self, f: Poly, g: Poly) -> Poly:
        """Monic gcd; gcd(0, 0) is 0."""
        while g:
            f, g = g, self.mod(f, g)
        return self.monic(f)

    def xgcd(self, f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
        """(d, u, v) with u f + v g = d monic."""
        r0, r1, s0, s1, t0, t1 = f, g, ONE, (), (), ONE
        while r1:
            quo, rem = self.divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, self.sub(s0, self.mul(quo, s1))
            t0, t1 = t1, self.sub(t0, self.mul(quo, t1))
        if not r0:
            return (), s0, t0
        c = self.field.inv(r0[-1])
        return self.scale(c, r0), self.scale(c, s0), self.scale(c, t0)

    def inv_mod(self, f: Poly, g: Poly) -> Poly:
        d, u, _ = self.xgcd(f, g)
        if d != ONE:
            raise PolyError("not invertible modulo g")
        return self.mod(u, g)

    def mul_mod(self, f: Poly, g: Poly, m: Poly) -> Poly:
        return self.mod(self.mul(f, g), m)

    def pow(self, f: Poly, e: int) -> Poly:
        out = ONE
        for _ in range(e):
            out = self.mul(out, f)
        return out

    def _require_monic(self, f: Poly) -> None:
        if not f:
            raise PolyError("zero polynomial not allowed here")
        if f[-1] != 1:
            raise PolyError("monic polynomial required")

    # -- enumeration ------------------------------------------------------------

    def monic_enum(self, n: int) -> Iterator[Poly]:
        """All monic polynomials of degree n, in canonical order."""
        if n < 0:
            raise PolyError("degree must be >= 0")
        for high_to_low in itertools.product(range(self.q), repeat=n):
            yield tuple(reversed(high_to_low)) + (1,)

    def monic_array(self, n: int) -> np.ndarray:
        """Low coefficients f_0..f_{n-1} of every monic degree-n polynomial.

        Row ``c`` holds the polynomial with code ``c``; shape ``(q**n, n)``.
        """
        codes = np.arange(self.q**n, dtype=np.int64)
        return (codes[:, None] // self.q ** np.arange(n, dtype=np.int64)) % self.q

    def code(self, f: Poly) -> int:
        """Code of a monic polynomial (see module docstring)."""
        return sum(c * self.q**i for i, c in enumerate(f[:-1]))

    def from_code(self, code: int, n: int) -> Poly:
        return tuple((code // self.q**i) % self.q for i in range(n)) + (1,)

    def batch_mul(self, A: np.ndarray, b: Sequence[int]) -> np.ndarray:
        """Multiply every row of A (full coefficient rows) by the polynomial b."""
        F = self.field
        K, la = A.shape
        out = np.zeros((K, la + len(b) - 1), dtype=np.int64)
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            prod = F.mul_table[A, bj]
            out[:, j : j + la] = F.add_table[out[:, j : j + la], prod]
        return out

    # -- irreducibles -------------------------------------------------------------

    def irreducibles(self, d: int) -> list[Poly]:
        """Monic irreducibles of degree d in canonical order (cached)."""
        if d < 1:
            raise PolyError("degree must be >= 1")
        with self._lock:
            cached = self._irr_cache.get(d)
        if cached is not None:
            return cached
        smaller = [w for e in range(1, d // 2 + 1) for w in self.irreducibles(e)]
        found = []
        for f in self.monic_enum(d):
            if all(self.mod(f, w) for w in smaller):
                found.append(f)
        with self._lock:
            self._irr_cache[d] = found
        return found

    def count_irreducibles(self, k: int) -> int:
        """Number of monic irreducibles of degree k, by Gauss's formula."""
        if k < 1:
            raise PolyError("degree must be >= 1")
        total = sum(int_mobius(d) * self.q ** (k // d) for d in range(1, k + 1) if k % d == 0)
        return total // k

    # -- factorization and arithmetic functions ------------------------------------

    def factor(self, f: Poly) -> Factorization:
        """Factor into monic irreducibles by trial division."""
        if not f:
            raise PolyError("cannot factor the zero polynomial")
        unit = f[-1]
        rest = self.monic(f)
        factors = []
        d = 1
        while 2 * d <= deg(rest):
            for w in self.irreducibles(d):
                a = 0
                while True:
                    quo, rem = self.divmod(rest, w)
                    if rem:
                        break
                    rest, a = quo, a + 1
                if a:
                    factors.append((w, a))
            d += 1
        if deg(rest) > 0:
            for i, (w, a) in enumerate(factors):
                if w == rest:  # pragma: no cover - trial division removes repeats
                    factors[i] = (w, a + 1)
                    break
            else:
                factors.append((rest, 1))
        factors.sort(key=lambda wa: sort_key(wa[0]))
        return Factorization(tuple(factors), unit)

    def mobius(self, f: Poly) -> int:
        self._require_monic(f)
        result = 1
        for _, a in self.factor(f).factors:
            if a > 1:
                return 0
            result = -result
        return result

    def euler_phi(self, g: Poly) -> int:
        self._require_monic(g)
        out = 1
        for w, a in self.factor(g).factors:
            d = deg(w)
            out *= self.q ** ((a - 1) * d) * (self.q**d - 1)
        return out

    def is_squarefree(self, f: Poly) -> bool:
        return all(a == 1 for _, a in self.factor(f).factors)

    def divisors(self, g: Poly) -> list[Poly]:
        self._require_monic(g)
        divs = [ONE]
        for w, a in self.factor(g).factors:
            powers = [ONE]
            for _ in range(a):
                powers.append(self.mul(powers[-1], w))
            divs = [self.mul(d, pw) for d in divs for pw in powers]
        return sorted(divs, key=sort_key)

    def mobius_tables(self, n_max: int) -> list[np.ndarray]:
        """mu of every monic polynomial of degree 0..n_max, indexed by code.

        Computed by sieving with the monic irreducibles; cached per ring.
        """
        with self._lock:
            if len(self._mu_cache) > n_max:
                return self._mu_cache[: n_max + 1]
        q = self.q
        mu = [np.ones(q**m, dtype=np.int8) for m in range(n_max + 1)]
        weights = [q ** np.arange(m, dtype=np.int64) for m in range(n_max + 1)]
        for d in range(1, n_max + 1):
            for w in self.irreducibles(d):
                w2 = self.mul(w, w)
                for m in range(d, n_max + 1):
                    H = np.hstack(
                        [self.monic_array(m - d), np.ones((q ** (m - d), 1), dtype=np.int64)]
                    )
                    prod = self.batch_mul(H, w)
                    codes = prod[:, :m] @ weights[m]
                    mu[m][codes] *= -1
                    if m >= 2 * d:
                        H2 = np.hstack(
                            [
                                self.monic_array(m - 2 * d),
                                np.ones((q ** (m - 2 * d), 1), dtype=np.int64),
                            ]
                        )
                        codes2 = self.batch_mul(H2, w2)[:, :m] @ weights[m]
                        mu[m][codes2] = 0
        with self._lock:
            if len(self._mu_cache) <= n_max:
                self._mu_cache = mu
        return mu

    def mobius_table(self, n: int) -> np.ndarray:
        return self.mobius_tables(n)[n]

    # -- text form -----------------------------------------------------------------

    @staticmethod
    def token(f: Poly) -> str:
        return ",".join(map(str, f)) if f else "0"

    def parse(self, token: str) -> Poly:
        try:
            coeffs = [int(c) for c in token.strip().split(",")]
        except ValueError as exc:
            raise PolyError(f"bad polynomial token {token!r}") from exc
        return self.poly(coeffs)

    def pretty(self, f: Poly) -> str:
        if not f:
            return "0"
        terms = []
        for i in range(len(f) - 1, -1, -1):
            c = f[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


_rings: dict[FieldSpec, PolyRing] = {}
_rings_lock = threading.Lock()


def ring_for(field: FieldSpec) -> PolyRing:
    """Shared ring instance per field, so irreducible caches are reused."""
    with _rings_lock:
        ring = _rings.get(field)
        if ring is None:
            ring = _rings[field] = PolyRing(field)
        return ring
