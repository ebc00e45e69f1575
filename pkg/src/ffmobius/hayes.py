"""Hayes congruence classes R_{s,g} on monic polynomials and their characters.

Two monic polynomials are equivalent mod R_{s,g} when g divides their
difference and their normalized expansions f / t^deg f agree at
t^-1, ..., t^-s.  For monic f that expansion is 1 + f_{n-1} t^-1 + ... + f_0 t^-n,
so a class is the pair (f mod g, (f_{n-1}, ..., f_{n-s})), padded with zeros
when deg f < s.  Units are the classes with f coprime to g; they form the
direct product (F_q[t]/g)^x  x  {1 + c_1 x + ... + c_s x^s mod x^(s+1)}.

Class codes: a residue r (deg < deg g) has code sum r_i q^i; a tail
(c_1, ..., c_s) has code sum c_j q^(s-j); the class code is
``residue_code * q**s + tail_code``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import abelian
from .polyring import ONE, Poly, PolyError, PolyRing, deg

MAX_GROUP_ORDER = 65536


class ResourceError(RuntimeError):
    """A desk-scale work cap was exceeded."""


@dataclass(frozen=True)
class HayesModulus:
    s: int
    g: Poly

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("s must be >= 0")
        if not self.g or self.g[-1] != 1:
            raise ValueError("g must be monic")

    @classmethod
    def for_theorem(cls, n: int, g: Poly) -> "HayesModulus":
        s = n - n // 2 - deg(g)
        if s < 0:
            raise ValueError(f"s = n - [n/2] - deg g = {s} is negative")
        return cls(s, g)


@dataclass(frozen=True)
class UnitClass:
    residue: Poly
    tail: tuple[int, ...]


@dataclass(frozen=True)
class HayesCharacter:
    exponents: tuple[int, ...]
    orders: tuple[int, ...]

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def token(self) -> str:
        return ",".join(map(str, self.exponents))


def class_key(ring: PolyRing, f: Poly, m: HayesModulus) -> tuple[Poly, tuple[int, ...]]:
    """The R_{s,g} class of a monic f, unit or not."""
    if not f or f[-1] != 1:
        raise PolyError("monic polynomial required")
    n = deg(f)
    tail = tuple(f[n - j] if j <= n else 0 for j in range(1, m.s + 1))
    return ring.mod(f, m.g), tail


def canonical_class(ring: PolyRing, f: Poly, m: HayesModulus) -> UnitClass | None:
    """The unit class of f, or None when f is not coprime to g."""
    residue, tail = class_key(ring, f, m)
    if ring.gcd(f, m.g) != ONE:
        return None
    return UnitClass(residue, tail)


def raw_equivalent(ring: PolyRing, a: Poly, b: Poly, m: HayesModulus) -> bool:
    """The two-condition relation, evaluated literally on Laurent expansions."""
    from .laurent import Laurent

    if ring.mod(ring.sub(a, b), m.g):
        return False
    F = ring.field
    prec = max(m.s, deg(a), deg(b), 1)
    xa = Laurent.from_dict(F, {i - deg(a): c for i, c in enumerate(a)}, prec, True)
    xb = Laurent.from_dict(F, {i - deg(b): c for i, c in enumerate(b)}, prec, True)
    diff = xa - xb
    return diff.norm() < float(F.q) ** (-m.s)


def tail_mul(field, u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    add, mul = field._add, field._mul
    s = len(u)
    out = []
    for j in range(s):
        c = add[u[j]][v[j]]
        for i in range(j):
            c = add[c][mul[u[i]][v[j - 1 - i]]]
        out.append(c)
    return tuple(out)


def class_mul(ring: PolyRing, u: UnitClass, v: UnitClass, m: HayesModulus) -> UnitClass:
    if len(u.tail) != m.s or len(v.tail) != m.s:
        raise ValueError("unit classes belong to a different modulus")
    return UnitClass(ring.mul_mod(u.residue, v.residue, m.g), tail_mul(ring.field, u.tail, v.tail))


def representatives(
    ring: PolyRing, m: HayesModulus, n: int, head: int | None = None
) -> tuple[list[Poly], list[Poly]]:
    """S_{s,g} and the reduced S*_{s,g}: t^head g b1 + b2, b1 monic of degree s.

    With ``head=None`` the head exponent is [n/2] and s must equal
    n - [n/2] - deg g.  An explicit head (>= 0) gives representatives of
    degree head + deg g + s, which must equal n.
    """
    dg = deg(m.g)
    if head is None:
        expected = n - n // 2 - dg
        if expected < 0:
            raise ValueError(f"s = n - [n/2] - deg g = {expected} is negative")
        if m.s != expected:
            raise ValueError(f"representatives of degree {n} need s = {expected}, got {m.s}")
        head = n // 2
    elif head < 0 or head + dg + m.s != n:
        raise ValueError("head + deg g + s must equal n with head >= 0")
    top_part = ring.shift(m.g, head)
    S, S_star = [], []
    for b1 in ring.monic_enum(m.s):
        top = ring.mul(top_part, b1)
        for code in range(ring.q**dg):
            b2 = ring.normalize([(code // ring.q**i) % ring.q for i in range(dg)])
            b = ring.add(top, b2)
            S.append(b)
            if (ring.gcd(b2, m.g) == ONE) if b2 else dg == 0:
                S_star.append(b)
    return S, S_star


class UnitGroup:
    """The unit group R*_{s,g} with an invariant-factor basis and characters.

    Units are indexed ``residue_index * q**s + tail_code`` with residues in
    canonical order.
    """

    def __init__(self, ring: PolyRing, m: HayesModulus):
        self.ring = ring
        self.modulus = m
        q, s, g = ring.q, m.s, m.g
        self.q, self.s, self.dg = q, s, deg(g)
        phi = ring.euler_phi(g)
        if q**s * phi > MAX_GROUP_ORDER:
            raise ResourceError(f"unit group order {q**s * phi} exceeds {MAX_GROUP_ORDER}")
        dg = self.dg
        self.residues: list[Poly] = []
        for code in range(q**dg):
            r = ring.normalize([(code // q**i) % q for i in range(dg)])
            if (ring.gcd(r, g) == ONE) if r else dg == 0:
                self.residues.append(r)
        self.res_codes = [self.residue_code(r) for r in self.residues]
        self.tails = [self.tail_from_code(c) for c in range(q**s)]
        self.order = len(self.residues) * q**s
        assert self.order == q**s * phi

        field = ring.field
        res_dec = abelian.decompose(
            self.residues, lambda a, b: ring.mul_mod(a, b, g), ring.mod(ONE, g)
        )
        zero_tail = (0,) * s
        tail_dec = abelian.decompose(self.tails, lambda a, b: tail_mul(field, a, b), zero_tail)
        self.generators = [UnitClass(r, zero_tail) for r in res_dec.generators] + [
            UnitClass(ring.mod(ONE, g), t) for t in tail_dec.generators
        ]
        self.orders = tuple(res_dec.orders + tail_dec.orders)
        self._n_res_gens = len(res_dec.orders)

        E = np.zeros((self.order, len(self.orders)), dtype=np.int64)
        for i, r in enumerate(self.residues):
            re = res_dec.dlog[r]
            for tc, t in enumerate(self.tails):
                E[i * q**s + tc] = re + tail_dec.dlog[t]
        self.exponents = E

        self.code_to_unit = np.full(q ** (dg + s), -1, dtype=np.int64)
        for i, rc in enumerate(self.res_codes):
            self.code_to_unit[rc * q**s : (rc + 1) * q**s] = np.arange(i * q**s, (i + 1) * q**s)
        self._profiles: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self._lock = threading.Lock()

    # -- codes -----------------------------------------------------------------

    def residue_code(self, r: Poly) -> int:
        return sum(c * self.q**i for i, c in enumerate(r))

    def tail_code(self, tail: tuple[int, ...]) -> int:
        return sum(c * self.q ** (self.s - 1 - j) for j, c in enumerate(tail))

    def tail_from_code(self, code: int) -> tuple[int, ...]:
        return tuple((code // self.q ** (self.s - 1 - j)) % self.q for j in range(self.s))

    def unit_index(self, u: UnitClass) -> int:
        idx = self.code_to_unit[self.residue_code(u.residue) * self.q**self.s + self.tail_code(u.tail)]
        if idx < 0:
            raise ValueError("not a unit class")
        return int(idx)

    def unit_index_of(self, f: Poly) -> int:
        """Unit index of a monic f coprime to g."""
        u = canonical_class(self.ring, f, self.modulus)
        if u is None:
            raise ValueError("polynomial is not coprime to g")
        return self.unit_index(u)

    def unit(self, index: int) -> UnitClass:
        qs = self.q**self.s
        return UnitClass(self.residues[index // qs], self.tails[index % qs])

    def class_codes(self, low: np.ndarray, n: int) -> np.ndarray:
        """Class codes of monic degree-n polynomials given their low coefficients."""
        ring, q, s, dg = self.ring, self.q, self.s, self.dg
        F = ring.field
        K = low.shape[0]
        if dg:
            powers = [ring.mod(ring.shift(ONE, k), self.modulus.g) for k in range(n + 1)]
            pad = lambda r: np.array(list(r) + [0] * (dg - len(r)), dtype=np.int64)
            acc = np.tile(pad(powers[n]), (K, 1))
            for k in range(n):
                acc = F.add_table[acc, F.mul_table[low[:, k][:, None], pad(powers[k])[None, :]]]
            res = acc @ (q ** np.arange(dg, dtype=np.int64))
        else:
            res = np.zeros(K, dtype=np.int64)
        tail = np.zeros(K, dtype=np.int64)
        for j in range(1, min(s, n) + 1):
            tail += low[:, n - j] * q ** (s - j)
        return res * q**s + tail

    def unit_indices(self, low: np.ndarray, n: int) -> np.ndarray:
        return self.code_to_unit[self.class_codes(low, n)]

    def degree_profile(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Per unit class: number of monic degree-n members, and the sum of mu over them."""
        with self._lock:
            hit = self._profiles.get(n)
        if hit is not None:
            return hit
        ring = self.ring
        idx = self.unit_indices(ring.monic_array(n), n)
        mu = ring.mobius_table(n).astype(np.int64)
        units = idx >= 0
        counts = np.bincount(idx[units], minlength=self.order)
        mu_sums = np.bincount(idx[units], weights=mu[units], minlength=self.order)
        out = (counts.astype(np.int64), np.rint(mu_sums).astype(np.int64))
        with self._lock:
            self._profiles[n] = out
        return out

    # -- characters ----------------------------------------------------------------

    def characters(self) -> list[HayesCharacter]:
        return [HayesCharacter(e, self.orders) for e in abelian.exponent_vectors(self.orders)]

    def character(self, exponents) -> HayesCharacter:
        exps = tuple(int(e) for e in exponents)
        if len(exps) != len(self.orders):
            raise ValueError(f"expected {len(self.orders)} exponents, got {len(exps)}")
        return HayesCharacter(tuple(e % o for e, o in zip(exps, self.orders)), self.orders)

    def char_values(self, chi: HayesCharacter) -> np.ndarray:
        """chi on every unit, in unit-index order."""
        return self.char_table(np.array([chi.exponents], dtype=np.int64))[0]

    def char_table(self, K: np.ndarray | None = None) -> np.ndarray:
        """Rows: characters (all of them by default, lexicographic); columns: units."""
        if K is None:
            vecs = list(abelian.exponent_vectors(self.orders))
            K = np.array(vecs, dtype=np.int64).reshape(len(vecs), len(self.orders))
        if not self.orders:
            return np.ones((K.shape[0], 1), dtype=complex)
        L = reduce(math.lcm, self.orders, 1)
        w = np.array([L // o for o in self.orders], dtype=np.int64)
        phase = ((K * w) @ self.exponents.T) % L
        return np.exp(2j * np.pi * phase / L)

    def char_eval(self, chi: HayesCharacter, f: Poly) -> complex:
        u = canonical_class(self.ring, f, self.modulus)
        if u is None:
            return 0j
        e = self.exponents[self.unit_index(u)]
        turns = sum(
            int(k) * int(x) / o for k, x, o in zip(chi.exponents, e, self.orders)
        )
        return complex(np.exp(2j * np.pi * turns))

    def project(self, other: "UnitGroup") -> np.ndarray:
        """Unit index in ``other`` (modulus (s, g') with g' | g) of each unit here."""
        if other.s != self.s or self.ring.mod(self.modulus.g, other.modulus.g):
            raise ValueError("can only project to (s, g') with g' dividing g")
        out = np.empty(self.order, dtype=np.int64)
        qs = self.q**self.s
        for i, r in enumerate(self.residues):
            r2 = self.ring.mod(r, other.modulus.g)
            base = other.code_to_unit[other.residue_code(r2) * qs]
            out[i * qs : (i + 1) * qs] = base + np.arange(qs)
        return out


_groups: dict = {}
_groups_lock = threading.Lock()


def unit_group(ring: PolyRing, m: HayesModulus) -> UnitGroup:
    """Cached :class:`UnitGroup` per (field, s, g)."""
    key = (ring.field, m.s, m.g)
    with _groups_lock:
        grp = _groups.get(key)
    if grp is None:
        grp = UnitGroup(ring, m)
        with _groups_lock:
            grp = _groups.setdefault(key, grp)
    return grp
