"""S(theta) = sum over monic f of degree n of mu(f) e_q(f theta).

The coefficient of t^-1 in f theta is sum_k f_k theta_{k+1}, where theta_j is
the coefficient of t^-j, so S depends only on theta_1..theta_{n+1}.  Values
are accumulated as integer counts of mu over the p possible traces and only
then turned into complex numbers, which keeps results independent of how the
work is split.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import lfunc
from .bounds import theorem_bound
from .fq import get_field
from .hayes import HayesModulus, ResourceError, representatives, unit_group
from .laurent import Laurent, PrecisionError, approx
from .polyring import ONE, Poly, PolyRing, deg, ring_for

MAX_BRUTE_TERMS = 10**7
MAX_SCAN_WORK = 10**8
EQ_TOL = 1e-9


@dataclass
class ExpSumResult:
    theta: str
    n: int
    value: complex
    method: str
    a: Poly | None = None
    g: Poly | None = None
    s: int | None = None
    terms: list = field(default_factory=list)


@dataclass
class ScanReport:
    q: int
    n: int
    field_token: str
    thetas: list[str]
    counts: np.ndarray
    values: np.ndarray
    max_abs: float
    argmax: str
    bound: float | None
    verdict: str
    sampled: bool = False
    runtime: float = 0.0

    @property
    def ratio(self) -> float:
        """max |S| / q^(n/2), the quantity a square-root law would keep bounded."""
        return self.max_abs / self.field_q_half

    @property
    def field_q_half(self) -> float:
        return self.q ** (self.n / 2)


def _theta_coeffs(theta: Laurent, n: int) -> np.ndarray:
    if not theta.is_torus():
        raise ValueError("theta must lie in T")
    if not theta.exact and theta.prec < n + 1:
        raise PrecisionError(f"need theta known to t^-{n + 1}")
    return np.array(theta.torus_coeffs(n + 1), dtype=np.int64)


def _monic_full(ring: PolyRing, n: int) -> np.ndarray:
    low = ring.monic_array(n)
    return np.hstack([low, np.ones((low.shape[0], 1), dtype=np.int64)])


def trace_codes(ring: PolyRing, polys: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """tr(coefficient of t^-1 in f theta) for every (f, theta) pair.

    ``polys``: (N, n+1) full coefficient rows; ``thetas``: (M, n+1) rows of
    theta_1..theta_{n+1}.  Returns an (N, M) array of ints mod p.
    """
    F = ring.field
    out = np.zeros((polys.shape[0], thetas.shape[0]), dtype=np.int64)
    for k in range(polys.shape[1]):
        out += F.trace_mul_table[polys[:, k][:, None], thetas[:, k][None, :]]
    return out % F.p


def _mu_weighted_counts(ring: PolyRing, n: int, thetas: np.ndarray) -> np.ndarray:
    """(M, p) integer array: sum of mu(f) over f with each trace value."""
    mu = ring.mobius_table(n).astype(np.int64)
    keep = np.nonzero(mu)[0]
    polys = _monic_full(ring, n)[keep]
    mu = mu[keep]
    p = ring.field.p
    counts = np.zeros((thetas.shape[0], p), dtype=np.int64)
    # chunk over theta to bound memory
    step = max(1, 2_000_000 // max(len(keep), 1))
    for lo in range(0, thetas.shape[0], step):
        tr = trace_codes(ring, polys, thetas[lo : lo + step])
        for r in range(p):
            counts[lo : lo + step, r] = mu @ (tr == r)
    return counts


def counts_to_values(counts: np.ndarray, p: int) -> np.ndarray:
    roots = np.exp(2j * np.pi * np.arange(p) / p)
    if p == 2:
        roots = np.array([1.0, -1.0], dtype=complex)
    return counts @ roots


def brute_sum(ring: PolyRing, theta: Laurent, n: int) -> complex:
    """Direct evaluation over all q^n monic polynomials of degree n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if ring.q**n > MAX_BRUTE_TERMS:
        raise ResourceError(f"q^n = {ring.q**n} exceeds {MAX_BRUTE_TERMS}")
    th = _theta_coeffs(theta, n)[None, :]
    counts = _mu_weighted_counts(ring, n, th)
    return complex(counts_to_values(counts, ring.field.p)[0])


def eq_values(ring: PolyRing, polys: list[Poly], theta: Laurent) -> np.ndarray:
    """e_q(f theta) for a list of polynomials (all of one degree n)."""
    n = deg(polys[0])
    rows = np.array([list(f) for f in polys], dtype=np.int64)
    tr = trace_codes(ring, rows, _theta_coeffs(theta, n)[None, :])[:, 0]
    return ring.field.roots_of_unity()[tr]


def gauss_sums(ring: PolyRing, d: Poly, theta: Laurent, m: HayesModulus, n: int) -> np.ndarray:
    """sum_{b in S*_{s,g/d}} e_q(b d theta) conj(chi)(b) for every chi mod R_{s,g/d}.

    ``m`` is the modulus (s, g/d); ``n`` the full degree, so b has degree n - deg d.
    Rows follow the character order of the unit group.
    """
    sub = unit_group(ring, m)
    _, S_star = representatives(ring, m, n - deg(d), head=n // 2)
    bd = [ring.mul(b, d) for b in S_star]
    e = eq_values(ring, bd, theta)
    idx = [sub.unit_index_of(b) for b in S_star]
    return np.conj(sub.char_table()[:, idx]) @ e


def gauss_sum(ring, chi, d: Poly, theta: Laurent, m: HayesModulus, n: int) -> complex:
    sub = unit_group(ring, m)
    _, S_star = representatives(ring, m, n - deg(d), head=n // 2)
    e = eq_values(ring, [ring.mul(b, d) for b in S_star], theta)
    vals = np.array([sub.char_eval(chi, b) for b in S_star])
    return complex(np.conj(vals) @ e)


def decomposition_sum(
    ring: PolyRing, theta: Laurent, n: int, squarefree_only: bool = True
) -> ExpSumResult:
    """S(theta) through the rational approximation, Hayes characters and L-functions.

    sum_{d | g} mu(d) / (q^s phi(g/d)) sum_chi G(chi, d) M(chi, d) with
    G the Gauss sums above and M(chi, d) = sum_{deg f = n - deg d} mu(f) chi chi_d(f)
    read off from 1 / L(u, chi chi_d).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    r = approx(theta, n)
    g = r.g
    m = HayesModulus.for_theorem(n, g)
    s = m.s
    big = unit_group(ring, m)
    D = s + deg(g) - 1
    triv_form = lfunc._trivial_form(big)
    total = 0j
    terms = []
    for d in ring.divisors(g):
        mu_d = ring.mobius(d)
        if squarefree_only and mu_d == 0:
            continue
        g2 = ring.divmod(g, d)[0]
        m2 = HayesModulus(s, g2)
        sub = unit_group(ring, m2)
        G = gauss_sums(ring, d, theta, m2, n)
        nd = n - deg(d)
        # chi chi_d as a character mod R_{s,g}: chi of the reduction mod g/d
        lifted = sub.char_table()[:, big.project(sub)]
        M = np.empty(len(lifted), dtype=complex)
        M[0] = triv_form.reciprocal(nd)[nd]
        if len(lifted) > 1:
            C = lfunc.all_l_coefficients(big, D, lifted[1:])
            M[1:] = lfunc.reciprocal_series(C, nd)[:, nd]
        contrib = mu_d / sub.order * (G @ M)
        terms.append((d, contrib))
        total += contrib
    return ExpSumResult(theta.token(), n, complex(total), "decomposition", r.a, g, s, terms)


@dataclass
class Lemma3Verdict:
    n: int
    s: int
    g: Poly
    classes: int
    polys_checked: int
    violations: list = field(default_factory=list)
    sampled: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations


def lemma3_check(
    ring: PolyRing,
    theta: Laurent,
    n: int,
    exhaustive_limit: int = 10**4,
    sample: int = 10**4,
    seed: int = 0,
) -> Lemma3Verdict:
    """e_q(f theta) is constant on each R_{s,g} class of degree-n monic f."""
    r = approx(theta, n)
    m = HayesModulus.for_theorem(n, r.g)
    grp = unit_group(ring, m)
    low = ring.monic_array(n)
    sampled = ring.q**n > exhaustive_limit
    if sampled:
        rng = np.random.default_rng(seed)
        low = low[np.sort(rng.choice(len(low), size=sample, replace=False))]
    full = np.hstack([low, np.ones((low.shape[0], 1), dtype=np.int64)])
    tr = trace_codes(ring, full, _theta_coeffs(theta, n)[None, :])[:, 0]
    codes = grp.class_codes(low, n)
    order = np.lexsort((tr, codes))
    codes, tr, low = codes[order], tr[order], low[order]
    bounds = np.flatnonzero(np.diff(codes)) + 1
    starts = np.concatenate([[0], bounds])
    ends = np.concatenate([bounds, [len(codes)]])
    violations = []
    for a, b in zip(starts, ends):
        if tr[a] != tr[b - 1]:
            f1 = tuple(int(x) for x in low[a]) + (1,)
            f2 = tuple(int(x) for x in low[b - 1]) + (1,)
            violations.append((f1, f2))
    return Lemma3Verdict(n, m.s, r.g, len(starts), len(codes), violations, sampled)


# -- theta scan --------------------------------------------------------------------


def torus_code_rows(q: int, P: int, codes: np.ndarray) -> np.ndarray:
    """theta_1..theta_P for each code (theta_1 most significant)."""
    powers = q ** np.arange(P - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // powers[None, :]) % q


def _scan_chunk(field_key, n: int, codes: np.ndarray) -> np.ndarray:
    ring = ring_for(get_field(*field_key))
    return _mu_weighted_counts(ring, n, torus_code_rows(ring.q, n + 1, codes))


def scan_max(
    ring: PolyRing,
    n: int,
    jobs: int = 1,
    sample: int | None = None,
    seed: int | None = None,
    max_work: int = MAX_SCAN_WORK,
) -> ScanReport:
    """max over theta in T of |S(theta)| across all q^(n+1) truncations.

    With ``sample`` set, a seeded random subset of truncations is used instead.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    q, F = ring.q, ring.field
    started = time.perf_counter()
    total = q ** (n + 1)
    sampled = sample is not None
    if sampled:
        rng = np.random.default_rng(seed)
        k = min(sample, total)
        codes = np.sort(rng.choice(total, size=k, replace=False)).astype(np.int64)
        work = k * q**n
    else:
        codes = np.arange(total, dtype=np.int64)
        work = q ** (2 * n + 1)
    if work > max_work:
        raise ResourceError(
            f"scan needs {work} evaluations (cap {max_work}); use sampling"
        )
    key = (F.p, F.k, F.modulus)
    if jobs > 1 and len(codes) > 1:
        chunks = np.array_split(codes, min(jobs * 4, len(codes)))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_chunk, [key] * len(chunks), [n] * len(chunks), chunks))
        counts = np.vstack(parts)
    else:
        counts = _scan_chunk(key, n, codes)
    values = counts_to_values(counts, F.p)
    mags = np.abs(values)
    # ties broken by first occurrence, ignoring rounding noise
    best = int(np.argmax(np.round(mags, 9)))
    rows = torus_code_rows(q, n + 1, codes)
    thetas = [",".join(map(str, r)) for r in rows.tolist()]
    max_abs = float(mags[best])
    if n >= 3:
        bound = theorem_bound(q, n)
        verdict = "PASS" if max_abs <= bound else "FAIL"
    else:
        bound, verdict = None, "OUT_OF_RANGE"
    if max_abs > q**n + EQ_TOL:
        verdict = "FAIL"
    return ScanReport(
        q, n, F.token(), thetas, counts, values, max_abs, thetas[best], bound, verdict,
        sampled, time.perf_counter() - started,
    )
