"""Truncated Laurent series in 1/t over F_q.

A :class:`Laurent` stores coefficients of t^top, t^(top-1), ..., t^(-prec).
Coefficients below t^(-prec) are unknown unless the series is flagged
``exact``, in which case they are zero.  Operations that would need unknown
coefficients raise :class:`PrecisionError` instead of truncating silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .fq import FieldSpec
from .polyring import ONE, Poly, PolyRing, deg, ring_for


class PrecisionError(ArithmeticError):
    """Not enough known coefficients to answer."""


class Laurent:
    __slots__ = ("field", "top", "coeffs", "prec", "exact")

    def __init__(
        self,
        field: FieldSpec,
        top: int,
        coeffs: Sequence[int],
        prec: int,
        exact: bool = False,
    ):
        if prec < 1:
            raise PrecisionError("precision must be >= 1")
        if len(coeffs) != max(top + prec + 1, 0):
            raise ValueError("coefficient window does not match top/prec")
        self.field = field
        self.top = top
        self.coeffs = tuple(coeffs)
        self.prec = prec
        self.exact = exact

    # -- constructors -------------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec, prec: int = 1, exact: bool = True) -> "Laurent":
        return cls(field, -prec - 1, (), prec, exact)

    @classmethod
    def from_dict(
        cls, field: FieldSpec, terms: dict[int, int], prec: int, exact: bool = False
    ) -> "Laurent":
        known = {e: c for e, c in terms.items() if e >= -prec and c}
        if exact and len(known) != sum(1 for c in terms.values() if c):
            raise PrecisionError("exact series has terms below its window")
        top = max(known) if known else -prec - 1
        coeffs = [known.get(e, 0) for e in range(top, -prec - 1, -1)]
        return cls(field, top, coeffs, prec, exact)

    @classmethod
    def from_poly(cls, field: FieldSpec, f: Poly, prec: int = 1) -> "Laurent":
        return cls.from_dict(field, dict(enumerate(f)), prec, exact=True)

    @classmethod
    def torus(cls, field: FieldSpec, cs: Sequence[int], exact: bool = True) -> "Laurent":
        """The point sum(cs[i-1] * t^-i) of T."""
        if not cs:
            raise PrecisionError("a torus point needs at least one coefficient")
        return cls(field, -1, tuple(cs), len(cs), exact)

    # -- access -------------------------------------------------------------------

    def coef(self, e: int) -> int:
        if e > self.top:
            return 0
        if e < -self.prec:
            if self.exact:
                return 0
            raise PrecisionError(f"coefficient of t^{e} is below the known window")
        return self.coeffs[self.top - e]

    def as_dict(self) -> dict[int, int]:
        return {self.top - i: c for i, c in enumerate(self.coeffs) if c}

    def leading(self) -> int | None:
        """Index of the leading nonzero coefficient, or None if none is stored."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.top - i
        return None

    def normalized(self) -> "Laurent":
        return Laurent.from_dict(self.field, self.as_dict(), self.prec, self.exact)

    def is_torus(self) -> bool:
        lead = self.leading()
        return lead is None or lead <= -1

    def torus_coeffs(self, count: int | None = None) -> tuple[int, ...]:
        """Coefficients of t^-1, ..., t^-count."""
        count = self.prec if count is None else count
        return tuple(self.coef(-i) for i in range(1, count + 1))

    def norm(self) -> float:
        """q^j for the leading index j; 0 for the zero series."""
        lead = self.leading()
        if lead is None:
            if not self.exact:
                raise PrecisionError("series vanishes within precision; cannot certify zero")
            return 0.0
        return float(self.field.q) ** lead

    def valuation_upper(self) -> int:
        # an index e such that every coefficient above e is zero
        lead = self.leading()
        return lead if lead is not None else -self.prec - 1

    # -- arithmetic ------------------------------------------------------------

    def _combine(self, other: "Laurent", sign: bool) -> "Laurent":
        F = self.field
        prec = min(self.prec, other.prec)
        exact = self.exact and other.exact
        if exact:
            prec = max(self.prec, other.prec)
        terms: dict[int, int] = {}
        a, b = self.as_dict(), other.as_dict()
        for e in set(a) | set(b):
            y = b.get(e, 0)
            if sign:
                y = F.neg(y)
            terms[e] = F.add(a.get(e, 0), y)
        return Laurent.from_dict(F, terms, prec, exact)

    def __add__(self, other: "Laurent") -> "Laurent":
        return self._combine(other, False)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self._combine(other, True)

    def __neg__(self) -> "Laurent":
        neg = self.field.neg
        return Laurent(self.field, self.top, [neg(c) for c in self.coeffs], self.prec, self.exact)

    def __mul__(self, other: "Laurent") -> "Laurent":
        F = self.field
        lows = []
        if not self.exact:
            lows.append(other.valuation_upper() - self.prec)
        if not other.exact:
            lows.append(self.valuation_upper() - other.prec)
        exact = not lows
        low = max(lows) if lows else -(self.prec + other.prec)
        if -low < 1:
            raise PrecisionError("product is not known down to t^-1")
        terms: dict[int, int] = {}
        for i, x in self.as_dict().items():
            row = F._mul[x]
            for j, y in other.as_dict().items():
                if i + j >= low:
                    terms[i + j] = F.add(terms.get(i + j, 0), row[y])
        return Laurent.from_dict(F, terms, -low, exact)

    def mul_poly(self, f: Poly) -> "Laurent":
        """f * self, with the known window shortened by deg f."""
        if not f:
            return Laurent.zero(self.field, self.prec, True)
        if not self.exact and self.prec < deg(f) + 1:
            raise PrecisionError(
                f"need precision >= {deg(f) + 1} to multiply by a degree-{deg(f)} polynomial"
            )
        return Laurent.from_poly(self.field, f, 1) * self

    def eq_map(self) -> complex:
        """e_q(x) = psi(coefficient of t^-1)."""
        return self.field.psi(self.coef(-1))

    def truncate(self, prec: int) -> "Laurent":
        if prec > self.prec and not self.exact:
            raise PrecisionError("cannot extend precision of an inexact series")
        return Laurent.from_dict(self.field, self.as_dict(), prec, exact=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Laurent):
            return NotImplemented
        return (
            self.field == other.field
            and self.as_dict() == other.as_dict()
            and self.prec == other.prec
            and self.exact == other.exact
        )

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.as_dict().items())), self.prec, self.exact))

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*t^{e}" for e, c in sorted(self.as_dict().items(), reverse=True))
        tail = "" if self.exact else f" + O(t^{-self.prec - 1})"
        return f"Laurent({terms or '0'}{tail})"

    # -- text form ----------------------------------------------------------------

    def token(self) -> str:
        if not self.is_torus():
            raise ValueError("only torus points have a token form")
        return ",".join(map(str, self.torus_coeffs()))


def parse_torus(field: FieldSpec, token: str) -> Laurent:
    """``"c1,c2,...,cP"`` -> sum c_i t^-i (an exact torus point)."""
    try:
        cs = [int(c) for c in token.strip().split(",")]
    except ValueError as exc:
        raise ValueError(f"bad torus token {token!r}") from exc
    if any(not 0 <= c < field.q for c in cs):
        raise ValueError(f"torus coefficient outside F_{field.q}")
    return Laurent.torus(field, cs)


def torus_points(field: FieldSpec, prec: int) -> Iterator[Laurent]:
    """Every exact point with coefficients t^-1..t^-prec, t^-1 most significant."""
    q = field.q
    for code in range(q**prec):
        yield Laurent.torus(field, [(code // q ** (prec - i)) % q for i in range(1, prec + 1)])


@dataclass(frozen=True)
class RationalFF:
    """a/g with g monic, gcd(a, g) = 1 and deg a < deg g."""

    a: Poly
    g: Poly


def expand_rational(ring: PolyRing, a: Poly, g: Poly, prec: int) -> Laurent:
    """Laurent expansion of a/g known down to t^-prec."""
    if not g:
        raise ZeroDivisionError("denominator is zero")
    quo, rem = ring.divmod(ring.shift(a, prec), g)
    terms = {i - prec: c for i, c in enumerate(quo)}
    return Laurent.from_dict(ring.field, terms, prec, exact=not rem)


def _as_fraction(ring: PolyRing, theta: Laurent) -> tuple[Poly, Poly]:
    # the known part of theta as N / t^prec
    P = theta.prec
    num = [0] * max(theta.top + P + 1, 0)
    for e, c in theta.as_dict().items():
        num[e + P] = c
    return ring.normalize(num), ring.shift(ONE, P)


def continued_fraction(theta: Laurent, max_deg: int) -> list[tuple[Poly, Poly]]:
    """Convergents (a_k, g_k) of theta with g_k monic and deg g_k <= max_deg.

    For an inexact theta the known window must satisfy prec >= 2*max_deg + 1;
    then the listed convergents are shared by every series with that window.
    """
    ring = ring_for(theta.field)
    if not theta.exact and theta.prec < 2 * max_deg + 1:
        raise PrecisionError(
            f"precision {theta.prec} cannot determine convergents up to degree {max_deg}"
        )
    num, den = _as_fraction(ring, theta)
    p1, p2 = ONE, ()
    q1, q2 = (), ONE
    out: list[tuple[Poly, Poly]] = []
    while den:
        a, r = ring.divmod(num, den)
        p1, p2 = ring.add(ring.mul(a, p1), p2), p1
        q1, q2 = ring.add(ring.mul(a, q1), q2), q1
        if deg(q1) > max_deg:
            break
        c = ring.field.inv(q1[-1])
        out.append((ring.scale(c, p1), ring.scale(c, q1)))
        num, den = den, r
    return out


def agreement_length(theta: Laurent, other: Laurent) -> int:
    """Largest L with theta, other agreeing at t^-1..t^-L (within known windows)."""
    limit = min(
        theta.prec if not theta.exact else math.inf,
        other.prec if not other.exact else math.inf,
    )
    if limit == math.inf:
        limit = max(theta.prec, other.prec)
    L = 0
    while L < limit and theta.coef(-L - 1) == other.coef(-L - 1):
        L += 1
    return L


def approx(theta: Laurent, n: int) -> RationalFF:
    """The unique coprime (a, g), g monic, deg a < deg g <= n/2, with
    |theta - a/g| < q^-(n/2 + deg g).

    Picks the last convergent whose denominator degree is at most [n/2].
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not theta.is_torus():
        raise ValueError("theta must lie in T (only negative powers)")
    if not theta.exact and theta.prec < n + 1:
        raise PrecisionError(f"need precision >= {n + 1}, have {theta.prec}")
    ring = ring_for(theta.field)
    a, g = continued_fraction(theta, n // 2)[-1]
    # postcondition: coefficients agree at t^-1..t^-([n/2] + deg g)
    need = n // 2 + deg(g)
    expansion = expand_rational(ring, a, g, max(need, 1))
    if any(theta.coef(-i) != expansion.coef(-i) for i in range(1, need + 1)):
        raise AssertionError("selected convergent violates the approximation inequality")
    return RationalFF(a, g)


def approx_brute(ring: PolyRing, theta: Laurent, n: int) -> list[RationalFF]:
    """Every coprime pair satisfying the approximation inequality, by search."""
    found = []
    half = n // 2
    for dg in range(0, half + 1):
        need = half + dg
        for g in ring.monic_enum(dg):
            for a_code in range(ring.q**dg):
                a = ring.normalize([(a_code // ring.q**i) % ring.q for i in range(dg)])
                coprime = ring.gcd(a, g) == ONE if a else g == ONE
                if not coprime:
                    continue
                exp_ = expand_rational(ring, a, g, max(need, 1))
                if all(theta.coef(-i) == exp_.coef(-i) for i in range(1, need + 1)):
                    found.append(RationalFF(a, g))
    return found
