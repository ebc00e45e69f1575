"""Numerical checks of the divisor-sum, Stirling and binomial bounds, and the
closed-form bounds on max |sum mu(f) e_q(f theta)|.

Every check returns a :class:`BoundCheck`; large arguments are compared in
log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from .polyring import Poly, PolyRing, deg

GOLDEN = 3 * math.sqrt(3) / 2  # 3*sqrt(3)/2, base of the exponential factor
LOG_GOLDEN = math.log(GOLDEN)


@dataclass
class BoundCheck:
    """lhs <op> rhs; ``kind`` is 'le', 'lt' or 'eq'."""

    name: str
    lhs: float
    rhs: float
    params: dict = field(default_factory=dict)
    kind: str = "le"
    log_space: bool = False
    # set when the comparison was decided at higher precision than lhs/rhs carry
    decided: bool | None = None

    @property
    def passed(self) -> bool:
        if self.decided is not None:
            return self.decided
        if self.kind == "eq":
            return self.lhs == self.rhs
        if self.kind == "lt":
            return self.lhs < self.rhs
        return self.lhs <= self.rhs

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def row(self) -> list:
        params = ";".join(f"{k}={v}" for k, v in self.params.items())
        return [self.name, params, repr(self.lhs), repr(self.rhs), self.verdict]


CSV_HEADER = ["name", "params", "lhs", "rhs", "verdict"]


def log_comb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


# -- divisor sum over a squarefree modulus ------------------------------------------


def lemma4_divisor_sum(ring: PolyRing, g: Poly) -> BoundCheck:
    """sum_{d | g} q^-deg d  <=  (1 + log(deg g) / log q) e, for squarefree g."""
    if deg(g) < 1:
        raise ValueError("deg g must be >= 1")
    if not ring.is_squarefree(g):
        raise ValueError("g must be squarefree")
    q = ring.q
    lhs = math.fsum(q ** (-deg(d)) for d in ring.divisors(g))
    rhs = (1 + math.log(deg(g)) / math.log(q)) * math.e
    return BoundCheck("lemma4_divisor_sum", lhs, rhs, {"q": q, "g": ring.token(g)})


def pnt_identity(ring: PolyRing, N: int, enumerate_limit: int = 10**5) -> BoundCheck:
    """sum_{k | N} k pi(k) = q^N, exactly.

    pi(k) is counted by enumeration while q^k <= ``enumerate_limit``, and from
    Gauss's formula beyond that.
    """
    q = ring.q
    if N < 1:
        raise ValueError("N must be >= 1")
    if q**N > 10**7:
        from .hayes import ResourceError

        raise ResourceError("q^N exceeds the 10^7 cap")
    total, methods = 0, set()
    for k in range(1, N + 1):
        if N % k:
            continue
        if q**k <= enumerate_limit:
            pik = len(ring.irreducibles(k))
            methods.add("enumerate")
        else:
            pik = ring.count_irreducibles(k)
            methods.add("formula")
        total += k * pik
    return BoundCheck(
        "pnt_identity", total, q**N, {"q": q, "N": N, "pi": "+".join(sorted(methods))}, "eq"
    )


# -- Stirling sandwich ---------------------------------------------------------------


def robbins_bounds(k: int) -> tuple[BoundCheck, BoundCheck]:
    """sqrt(2 pi) k^(k+1/2) e^(-k+1/(12k+1)) < k! < sqrt(2 pi) k^(k+1/2) e^(-k+1/(12k)).

    Compared as logarithms at 50 significant digits; the upper gap shrinks
    like 1/(360 k^3), below double resolution for large k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    with mpmath.workdps(50):
        kk = mpmath.mpf(k)
        base = mpmath.log(2 * mpmath.pi) / 2 + (kk + mpmath.mpf(1) / 2) * mpmath.log(kk) - kk
        lower = base + 1 / (12 * kk + 1)
        upper = base + 1 / (12 * kk)
        mid = mpmath.loggamma(kk + 1)
        lo_ok, hi_ok = lower < mid, mid < upper
    params = {"k": k}
    return (
        BoundCheck("robbins_lower", float(lower), float(mid), params, "lt", True, lo_ok),
        BoundCheck("robbins_upper", float(mid), float(upper), params, "lt", True, hi_ok),
    )


# -- binomial reduction ------------------------------------------------------------


def central_binomial_check(k: int) -> BoundCheck:
    """C(3k, k) < (3 sqrt 3 / 2)^(2k) / sqrt(4 pi k / 3), in log space."""
    lhs = log_comb(3 * k, k)
    rhs = 2 * k * LOG_GOLDEN - 0.5 * math.log(4 * math.pi * k / 3)
    return BoundCheck("binom_3k_k", lhs, rhs, {"k": k}, "lt", True)


def binom_chain(n: int, s: int, deg_g: int, deg_d: int) -> list[BoundCheck]:
    """Each link of
    C(n - deg d + s + deg g - 2, s + deg g - 2) <= C(2n - [n/2] - 2, n - [n/2] - 2)
      < C(3k, k) < Robbins expression < (3 sqrt 3/2)^(2k) / sqrt(4 pi k/3),  k = [n/2].
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if s + deg_g != n - n // 2 or s < 0 or deg_g < 0:
        raise ValueError("need s + deg g = n - [n/2] with s, deg g >= 0")
    if not 0 <= deg_d <= deg_g:
        raise ValueError("need 0 <= deg d <= deg g")
    k = n // 2
    K = s + deg_g
    params = {"n": n, "s": s, "deg_g": deg_g, "deg_d": deg_d}
    first = log_comb(n - deg_d + K - 2, K - 2)
    second = log_comb(2 * n - k - 2, n - k - 2)
    third = log_comb(3 * k, k)
    robbins = (
        -0.5 * math.log(2 * math.pi)
        + (1 / (36 * k) - 1 / (12 * k + 1) - 1 / (24 * k + 1))
        + (3 * k + 0.5) * math.log(3 * k)
        - (k + 0.5) * math.log(k)
        - (2 * k + 0.5) * math.log(2 * k)
    )
    last = 2 * k * LOG_GOLDEN - 0.5 * math.log(4 * math.pi * k / 3)
    return [
        BoundCheck("chain_shift", first, second, params, "le", True),
        BoundCheck("chain_to_3k", second, third, params, "lt", True),
        BoundCheck("chain_robbins", third, robbins, params, "lt", True),
        BoundCheck("chain_closed", robbins, last, params, "lt", True),
    ]


# -- closed-form bounds --------------------------------------------------------------


def log_theorem_bound(q: int, n: int) -> float:
    return math.log(4) + (3 * n + 1) / 4 * math.log(q) + n * LOG_GOLDEN


def theorem_bound(q: int, n: int) -> float:
    """4 q^((3n+1)/4) (3 sqrt 3 / 2)^n."""
    if n < 3:
        raise ValueError("the bound is stated for n >= 3")
    return math.exp(log_theorem_bound(q, n))


def remark_bound(q: int, n: int, eps: float) -> float:
    """4 q^((3/4 + eps) n)."""
    if eps <= 0:
        raise ValueError("eps must be > 0")
    return 4 * q ** ((0.75 + eps) * n)


def remark_threshold(eps: float) -> float:
    """q(eps) = (3 sqrt 3 / 2)^(1/eps); above it q^eps beats the exponential factor."""
    return GOLDEN ** (1 / eps)


def remark_min_n(q: int, eps: float) -> float:
    """Least n0 with the remark bound dominating for every n >= n0 (inf if none)."""
    rate = eps * math.log(q) - LOG_GOLDEN
    # at q = q(eps) the rate is zero up to rounding; the q^(1/4) slack then never closes
    if rate <= 1e-12:
        return math.inf
    return max(1, math.ceil(math.log(q) / (4 * rate)))


def remark_check(q: int, n: int, eps: float) -> BoundCheck:
    """theorem_bound <= remark_bound, i.e. q^(1/4) (3 sqrt 3/2)^n <= q^(eps n)."""
    lhs = log_theorem_bound(q, n)
    rhs = math.log(4) + (0.75 + eps) * n * math.log(q)
    return BoundCheck("remark", lhs, rhs, {"q": q, "n": n, "eps": eps}, "le", True)


def final_chain_check(q: int, n: int) -> BoundCheck:
    """q^(n - [n/2]/2) (1 + log n / log q) e / sqrt(2 pi (n-1)/3) (3 sqrt 3/2)^n
    against the theorem bound, in log space."""
    if n < 3:
        raise ValueError("n must be >= 3")
    lhs = (
        (n - (n // 2) / 2) * math.log(q)
        + math.log(1 + math.log(n) / math.log(q))
        + 1
        - 0.5 * math.log(2 * math.pi * (n - 1) / 3)
        + n * LOG_GOLDEN
    )
    return BoundCheck("final_chain", lhs, log_theorem_bound(q, n), {"q": q, "n": n}, "le", True)


def lemma1_remark_check(q: int, n: int, deg_g: int) -> BoundCheck:
    """(q+1) C(n+deg g-1, n) <= C(n+deg g-2, n) q^(n/2), exactly as printed."""
    lhs = (q + 1) * math.comb(n + deg_g - 1, n)
    rhs = (math.comb(n + deg_g - 2, n) if n + deg_g >= 2 else 0) * q ** (n / 2)
    return BoundCheck("lemma1_remark", float(lhs), float(rhs), {"q": q, "n": n, "deg_g": deg_g})
