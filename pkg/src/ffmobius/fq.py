"""Arithmetic in F_q = F_{p^k}, the absolute trace and the additive character.

Elements of F_q are plain ints in ``range(q)``.  The int ``x`` encodes the
coordinate vector ``(c_0, ..., c_{k-1})`` of ``c_0 + c_1 a + ... + c_{k-1} a^{k-1}``
in base ``p`` (``c_0`` least significant), where ``a`` is a root of the
field modulus.  For prime fields this is just the residue.

All operations go through precomputed tables, so a :class:`FieldSpec` is
cheap to use in numpy-vectorized code via :attr:`FieldSpec.add_table` etc.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from typing import Sequence

import numpy as np

MAX_Q = 16


class FieldError(ValueError):
    """Bad field parameters or an undefined field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def _prime_poly_divmod(a: list[int], b: list[int], p: int) -> list[int]:
    # remainder of a by monic-or-not b over F_p, constant-first lists
    a = a[:]
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible_over_prime(coeffs: Sequence[int], p: int) -> bool:
    """Trial division over F_p; ``coeffs`` is constant-first."""
    f = [c % p for c in coeffs]
    while f and f[-1] == 0:
        f.pop()
    k = len(f) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _prime_poly_divmod(f, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over F_p.

    Ordering compares coefficients from the leading one down to the constant.
    """
    for high_to_low in itertools.product(range(p), repeat=k):
        coeffs = tuple(reversed(high_to_low)) + (1,)
        if is_irreducible_over_prime(coeffs, p):
            return coeffs
    raise FieldError(f"no irreducible of degree {k} over F_{p}")  # pragma: no cover


class FieldSpec:
    """The finite field F_{p^k} with a fixed power-basis modulus.

    ``modulus`` is a constant-first coefficient list of a monic irreducible of
    degree ``k`` over F_p.  When omitted the lexicographically least one is used.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        q = p**k
        if q > MAX_Q:
            raise FieldError(f"q = {q} exceeds the supported maximum {MAX_Q}")
        if modulus is None:
            modulus = default_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {k}")
        if not is_irreducible_over_prime(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self._build_tables()

    # -- construction helpers -------------------------------------------------

    def coords(self, x: int) -> tuple[int, ...]:
        return tuple((x // self.p**i) % self.p for i in range(self.k))

    def elem(self, coords: Sequence[int]) -> int:
        if len(coords) != self.k:
            raise FieldError(f"expected {self.k} coordinates")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coords))

    def _mul_slow(self, x: int, y: int) -> int:
        p, k = self.p, self.k
        a, b = self.coords(x), self.coords(y)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce by the monic modulus
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * self.modulus[i]) % p
        return self.elem(prod[:k])

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        digits = np.array([self.coords(x) for x in range(q)], dtype=np.int64)
        powers = p ** np.arange(self.k)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_table = (summed @ powers).astype(np.int64)
        negd = (-digits) % p
        self.neg_table = (negd @ powers).astype(np.int64)
        self.mul_table = np.array(
            [[self._mul_slow(x, y) for y in range(q)] for x in range(q)], dtype=np.int64
        )
        inv = [0] * q
        for x in range(1, q):
            inv[x] = int(np.nonzero(self.mul_table[x] == 1)[0][0])
        self.inv_table = np.array(inv, dtype=np.int64)
        tr = []
        for x in range(q):
            acc, y = 0, x
            for _ in range(self.k):
                acc = int(self.add_table[acc, y])
                y = self._pow_table_free(y, p)
            tr.append(acc)
        if any(t >= p for t in tr):
            raise FieldError("trace left the prime field")  # pragma: no cover
        self.trace_table = np.array(tr, dtype=np.int64)
        # trace(x*y), the bilinear form used by exponential sums
        self.trace_mul_table = self.trace_table[self.mul_table]
        # python-list mirrors for scalar hot loops
        self._add = self.add_table.tolist()
        self._mul = self.mul_table.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = inv

    def _pow_table_free(self, x: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = int(self.mul_table[r, x])
        return r

    # -- scalar arithmetic -----------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._add[x][self._neg[y]]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._inv[x]

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        r = 1
        while e:
            if e & 1:
                r = self._mul[r][x]
            x = self._mul[x][x]
            e >>= 1
        return r

    def trace(self, x: int) -> int:
        """Absolute trace x + x^p + ... + x^{p^{k-1}}, as an int in range(p)."""
        return int(self.trace_table[x])

    def psi(self, x: int) -> complex:
        """Additive character e(tr(x)/p)."""
        return cmath.exp(2j * math.pi * self.trace(x) / self.p)

    def roots_of_unity(self) -> np.ndarray:
        """``exp(2 pi i c / p)`` for ``c`` in ``range(p)``."""
        return np.exp(2j * np.pi * np.arange(self.p) / self.p)

    def elements(self) -> range:
        return range(self.q)

    # -- identity / tokens -----------------------------------------------------

    def token(self) -> str:
        return f"{self.p}^{self.k}/" + ",".join(map(str, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec({self.token()!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))


@functools.lru_cache(maxsize=None)
def get_field(p: int, k: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    return FieldSpec(p, k, modulus)


def parse_field(token: str) -> FieldSpec:
    """Parse ``"q"``, ``"p^k"`` or ``"p^k/m0,m1,...,mk"`` (constant term first)."""
    token = token.strip()
    modulus = None
    if "/" in token:
        token, mod_part = token.split("/", 1)
        try:
            modulus = tuple(int(c) for c in mod_part.split(","))
        except ValueError as exc:
            raise FieldError(f"bad modulus token {mod_part!r}") from exc
    try:
        if "^" in token:
            p_str, k_str = token.split("^", 1)
            p, k = int(p_str), int(k_str)
        else:
            q = int(token)
            for p in range(2, q + 1):
                if q % p == 0:
                    break
            else:
                raise FieldError(f"bad field size {q}")
            k = round(math.log(q, p))
            if p**k != q:
                raise FieldError(f"{q} is not a prime power")
    except ValueError as exc:
        raise FieldError(f"bad field token {token!r}") from exc
    return get_field(p, k, modulus)
