"""L-functions of Hayes characters.

For a character chi mod R_{s,g} the L-function sum_f chi(f) u^deg f is a
polynomial of degree at most s + deg g - 1 unless chi is trivial, in which
case it equals prod_{w | g} (1 - u^deg w) / (1 - q u).  Coefficients are
computed from per-class counts of monic polynomials, inverse roots are found
numerically and sorted onto the circles |alpha| = 1 and |alpha| = sqrt(q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hayes import HayesCharacter, ResourceError, UnitGroup
from .polyring import deg

MAX_L_TERMS = 10**6
ROOT_TOL = 1e-6
COEFF_TOL = 1e-9


class NumericError(ArithmeticError):
    """Root finding failed."""


@dataclass
class LPolynomial:
    """L(u, chi) = sum c_m u^m for a nontrivial chi.

    ``overflow`` holds the computed coefficients just past the degree bound,
    which must vanish.
    """

    coeffs: np.ndarray
    degree_bound: int
    overflow: np.ndarray

    @property
    def degree(self) -> int:
        nz = np.nonzero(np.abs(self.coeffs) > COEFF_TOL)[0]
        return int(nz[-1]) if len(nz) else 0

    def vanishes_beyond_bound(self, tol: float = COEFF_TOL) -> bool:
        return bool(np.all(np.abs(self.overflow) <= tol))

    def series(self, N: int) -> np.ndarray:
        out = np.zeros(N + 1, dtype=complex)
        k = min(N + 1, len(self.coeffs))
        out[:k] = self.coeffs[:k]
        return out


@dataclass
class TrivialLForm:
    """prod_{w | g} (1 - u^deg w) / (1 - q u), stored by the degrees of the w."""

    q: int
    degrees: tuple[int, ...]

    def numerator(self) -> list[int]:
        num = [1]
        for d in self.degrees:
            nxt = num + [0] * d
            for i, c in enumerate(num):
                nxt[i + d] -= c
            num = nxt
        return num

    def series(self, N: int) -> list[int]:
        """Coefficients of u^0..u^N: number of monic f of each degree coprime to g."""
        num = self.numerator()
        out = []
        for m in range(N + 1):
            out.append(sum(num[i] * self.q ** (m - i) for i in range(min(m, len(num) - 1) + 1)))
        return out

    def reciprocal(self, N: int) -> list[int]:
        """Coefficients of (1 - q u) prod 1/(1 - u^d), i.e. sum of mu chi0 by degree."""
        geo = [1] + [0] * N
        for d in self.degrees:
            nxt = geo[:]
            for m in range(d, N + 1):
                nxt[m] += nxt[m - d]
            geo = nxt
        return [geo[m] - (self.q * geo[m - 1] if m else 0) for m in range(N + 1)]


@dataclass
class InverseRootReport:
    roots: list[complex]
    classes: list[str]
    distances: list[float] = field(default_factory=list)
    q: int = 0

    @property
    def anomalous(self) -> list[complex]:
        return [r for r, c in zip(self.roots, self.classes) if c == "anomalous"]

    @property
    def ok(self) -> bool:
        return not self.anomalous


def _trivial_form(group: UnitGroup) -> TrivialLForm:
    ring = group.ring
    degrees = tuple(deg(w) for w, _ in ring.factor(group.modulus.g).factors)
    return TrivialLForm(group.q, degrees)


def l_coefficients(group: UnitGroup, values: np.ndarray, N: int) -> np.ndarray:
    """sum_{deg f = m} chi(f) for m = 0..N, with chi given by its unit values."""
    if group.q ** min(N, group.s + group.dg) > MAX_L_TERMS:
        raise ResourceError("L-function summation exceeds the work cap")
    out = np.zeros(N + 1, dtype=complex)
    for m in range(N + 1):
        counts, _ = group.degree_profile(m)
        out[m] = counts @ values
    return out


def l_polynomial(group: UnitGroup, chi: HayesCharacter) -> LPolynomial | TrivialLForm:
    if chi.is_trivial():
        return _trivial_form(group)
    return l_polynomial_from_values(group, group.char_values(chi))


def l_polynomial_from_values(group: UnitGroup, values: np.ndarray) -> LPolynomial:
    D = group.s + group.dg - 1
    c = l_coefficients(group, values, D + 2)
    return LPolynomial(c[: D + 1], D, c[D + 1 :])


def _cluster_centroids(roots: np.ndarray, radius: float = 1e-3) -> np.ndarray:
    # multiple roots come back split by ~eps^(1/k); their centroid is accurate
    out = roots.astype(complex).copy()
    used = np.zeros(len(roots), dtype=bool)
    for i in range(len(roots)):
        if used[i]:
            continue
        close = (np.abs(roots - roots[i]) < radius) & ~used
        out[close] = roots[close].mean()
        used |= close
    return out


def weil_check(L: LPolynomial, q: int, tol: float = ROOT_TOL) -> InverseRootReport:
    """Inverse roots of L, each tagged 'unit', 'sqrt_q' or 'anomalous'."""
    d = L.degree
    if d == 0:
        return InverseRootReport([], [], [], q)
    # the alpha_i are the roots of u^d L(1/u) = c_0 u^d + ... + c_d
    try:
        roots = np.roots(L.coeffs[: d + 1])
    except np.linalg.LinAlgError as exc:
        raise NumericError("root finding did not converge") from exc
    if len(roots) != d or not np.all(np.isfinite(roots)):
        raise NumericError("root finding returned the wrong number of roots")
    roots = _cluster_centroids(roots)
    sq = math.sqrt(q)
    classes, dists = [], []
    for r in roots:
        a = abs(r)
        d1, d2 = abs(a - 1.0), abs(a - sq)
        if d1 <= tol:
            classes.append("unit")
        elif d2 <= tol:
            classes.append("sqrt_q")
        else:
            classes.append("anomalous")
        dists.append(min(d1, d2))
    return InverseRootReport([complex(r) for r in roots], classes, dists, q)


def product_from_roots(roots: list[complex], length: int) -> np.ndarray:
    """Coefficients of prod (1 - alpha u), padded to ``length``."""
    poly = np.array([1.0 + 0j])
    for a in roots:
        poly = np.convolve(poly, np.array([1.0, -a]))
    out = np.zeros(length, dtype=complex)
    out[: len(poly)] = poly[:length]
    return out


def reciprocal_series(c: np.ndarray, N: int) -> np.ndarray:
    """Power-series coefficients of 1 / sum c_m u^m up to u^N (c_0 != 0).

    Works along the last axis, so a stack of series is inverted at once.
    """
    c = np.asarray(c, dtype=complex)
    b = np.zeros(c.shape[:-1] + (N + 1,), dtype=complex)
    b[..., 0] = 1 / c[..., 0]
    for m in range(1, N + 1):
        acc = np.zeros(c.shape[:-1], dtype=complex)
        for i in range(1, min(m, c.shape[-1] - 1) + 1):
            acc = acc + c[..., i] * b[..., m - i]
        b[..., m] = -acc / c[..., 0]
    return b


def all_l_coefficients(group: UnitGroup, N: int, table: np.ndarray | None = None) -> np.ndarray:
    """L coefficients up to u^N for every character (rows follow ``char_table``)."""
    table = group.char_table() if table is None else table
    counts = np.array([group.degree_profile(m)[0] for m in range(N + 1)])
    return table @ counts.T


def mobius_char_sum(group: UnitGroup, chi: HayesCharacter, n: int) -> complex:
    """sum_{deg f = n} mu(f) chi(f), read off from 1 / L(u, chi)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if chi.is_trivial():
        return complex(_trivial_form(group).reciprocal(n)[n])
    return mobius_sum_from_values(group, group.char_values(chi), n)


def mobius_sum_from_values(group: UnitGroup, values: np.ndarray, n: int) -> complex:
    L = l_polynomial_from_values(group, values)
    return complex(reciprocal_series(L.coeffs, n)[n])


def direct_mobius_char_sum(group: UnitGroup, chi: HayesCharacter, n: int) -> complex:
    """The same sum by enumerating every monic f of degree n."""
    _, mu_sums = group.degree_profile(n)
    return complex(mu_sums @ group.char_values(chi))


def multiset_count(n: int, d: int) -> int:
    """Number of (r_1..r_d) >= 0 with sum n, i.e. C(n + d - 1, d - 1)."""
    if d < 0 or n < 0:
        raise ValueError("negative argument")
    if d == 0:
        return 1 if n == 0 else 0
    return math.comb(n + d - 1, d - 1)


def lemma1_bound(n: int, s: int, deg_g: int, r: int, trivial: bool, q: int) -> float:
    """Bound on |sum_{deg f = n} mu(f) chi(f)|.

    Nontrivial chi: C(n+s+deg g-2, s+deg g-2) q^(n/2).  Trivial chi with r
    distinct prime factors of g: C(n+r-1, r-1) (q+1).  The binomials are
    read as multiset counts, so s + deg g = 1 (where L = 1) gives 0 for n >= 1.
    For g = 1 the trivial sum is exactly 1, -q, 0, 0, ...; that case is
    answered by :func:`trivial_g1_value` instead.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if trivial:
        if r < 1:
            raise ValueError("the trivial-character bound needs r >= 1; use trivial_g1_value")
        return multiset_count(n, r) * (q + 1)
    if s + deg_g < 1:
        raise ValueError("no nontrivial characters when s + deg g = 0")
    return multiset_count(n, s + deg_g - 1) * q ** (n / 2)


def trivial_g1_value(n: int, q: int) -> int:
    return {0: 1, 1: -q}.get(n, 0)
