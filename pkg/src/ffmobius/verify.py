"""Property suites bundled for the ``verify`` command.

Each suite returns a :class:`SuiteResult`; a suite passes when it recorded
no failures.  Scales default to what finishes in seconds on a laptop.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import bounds, lfunc
from .expsum import (
    EQ_TOL,
    brute_sum,
    decomposition_sum,
    gauss_sums,
    lemma3_check,
)
from .hayes import HayesModulus, unit_group
from .laurent import approx, expand_rational, torus_points
from .polyring import ONE, Poly, PolyRing, deg


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0
    tightest: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        if len(self.failures) < 50:
            self.failures.append(msg)
        else:
            self.details["truncated_failures"] = self.details.get("truncated_failures", 0) + 1


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- rational approximation --------------------------------------------------------


def approximation_matches(ring: PolyRing, n: int) -> tuple[np.ndarray, np.ndarray, list]:
    """For every theta truncated at t^-(n+1): how many coprime (a, g) with
    deg a < deg g <= [n/2] satisfy the approximation inequality, and which one.

    Exhaustive over pairs; each pair pins down theta_1..theta_([n/2]+deg g), so
    matching is a prefix lookup.  Independent of the continued-fraction code.
    """
    q, P, half = ring.q, n + 1, n // 2
    total = q**P
    theta_codes = np.arange(total, dtype=np.int64)
    hits = np.zeros(total, dtype=np.int64)
    which = np.full(total, -1, dtype=np.int64)
    pairs: list[tuple[Poly, Poly]] = []
    for dg in range(half + 1):
        L = half + dg
        codes, ids = [], []
        for g in ring.monic_enum(dg):
            for a_code in range(q**dg):
                a = ring.normalize([(a_code // q**i) % q for i in range(dg)])
                if (ring.gcd(a, g) != ONE) if a else g != ONE:
                    continue
                if L:
                    ex = expand_rational(ring, a, g, L)
                    code = sum(ex.coef(-i) * q ** (L - i) for i in range(1, L + 1))
                else:
                    code = 0
                codes.append(code)
                ids.append(len(pairs))
                pairs.append((a, g))
        if not codes:
            continue
        codes_arr = np.array(codes, dtype=np.int64)
        bc = np.bincount(codes_arr, minlength=q**L)
        owner = np.full(q**L, -1, dtype=np.int64)
        owner[codes_arr] = np.array(ids, dtype=np.int64)
        prefix = theta_codes // q ** (P - L)
        hits += bc[prefix]
        found = owner[prefix]
        which = np.where(found >= 0, found, which)
    return hits, which, pairs


@_timed
def suite_lemma2(ring: PolyRing, n_max: int = 8) -> SuiteResult:
    """Unique approximating pair for every truncated theta, and approx finds it."""
    res = SuiteResult("lemma2")
    for n in range(1, n_max + 1):
        hits, which, pairs = approximation_matches(ring, n)
        for code, th in enumerate(torus_points(ring.field, n + 1)):
            res.checks += 1
            if hits[code] != 1:
                res.fail(f"n={n} theta={th.token()}: {hits[code]} pairs")
                continue
            r = approx(th, n)
            if (r.a, r.g) != pairs[which[code]]:
                res.fail(f"n={n} theta={th.token()}: approx {r} vs search {pairs[which[code]]}")
    return res


# -- Hayes classes and characters ----------------------------------------------------


@dataclass
class _ModulusGrid:
    deg_g_max: int = 3
    s_max: int = 3
    order_cap: int = 4096


def moduli(ring: PolyRing, deg_g_max: int, s_max: int, order_cap: int):
    for dg in range(deg_g_max + 1):
        for g in ring.monic_enum(dg):
            phi = ring.euler_phi(g)
            for s in range(s_max + 1):
                if ring.q**s * phi <= order_cap:
                    yield HayesModulus(s, g)


@_timed
def suite_lemma1(
    ring: PolyRing,
    deg_g_max: int = 3,
    s_max: int = 3,
    n_max: int = 8,
    order_cap: int = 4096,
    tol: float = EQ_TOL,
) -> SuiteResult:
    """|sum mu chi| within the character bounds, by enumeration and by inverting L."""
    res = SuiteResult("lemma1")
    q = ring.q
    worst_gap, worst_ratio = 0.0, 0.0
    for m in moduli(ring, deg_g_max, s_max, order_cap):
        grp = unit_group(ring, m)
        T = grp.char_table()
        D = m.s + deg(m.g) - 1
        r = len(ring.factor(m.g).factors)
        triv = lfunc._trivial_form(grp)
        rec = None
        if len(T) > 1:
            C = lfunc.all_l_coefficients(grp, D, T[1:])
            rec = lfunc.reciprocal_series(C, n_max)
        for n in range(n_max + 1):
            direct = T @ grp.degree_profile(n)[1]
            inverted = np.empty(len(T), dtype=complex)
            inverted[0] = triv.reciprocal(n)[n]
            if rec is not None:
                inverted[1:] = rec[:, n]
            gap = float(np.max(np.abs(direct - inverted)))
            worst_gap = max(worst_gap, gap)
            res.checks += len(T)
            if gap > tol:
                res.fail(f"{m} n={n}: enumeration and inversion differ by {gap:.3g}")
            if deg(m.g) == 0:
                exact = lfunc.trivial_g1_value(n, q)
                if abs(direct[0] - exact) > tol:
                    res.fail(f"{m} n={n}: trivial sum {direct[0]} != {exact}")
            else:
                b0 = lfunc.lemma1_bound(n, m.s, deg(m.g), r, True, q)
                if abs(direct[0]) > b0 + tol:
                    res.fail(f"{m} n={n}: trivial |sum|={abs(direct[0]):.6g} > {b0}")
            if len(T) > 1:
                b = lfunc.lemma1_bound(n, m.s, deg(m.g), r, False, q)
                top = float(np.max(np.abs(direct[1:])))
                if b > 0:
                    worst_ratio = max(worst_ratio, top / b)
                if top > b + tol:
                    res.fail(f"{m} n={n}: nontrivial max |sum|={top:.6g} > {b:.6g}")
    res.details.update(worst_gap=worst_gap, worst_ratio=worst_ratio)
    return res


@_timed
def suite_weil(
    ring: PolyRing,
    modulus: HayesModulus | None = None,
    deg_g_max: int = 3,
    s_max: int = 3,
    order_cap: int = 4096,
    tol: float = lfunc.ROOT_TOL,
) -> SuiteResult:
    """Inverse roots on |alpha| = 1 or sqrt q; no coefficients past the degree bound."""
    res = SuiteResult("weil")
    mods = [modulus] if modulus is not None else moduli(ring, deg_g_max, s_max, order_cap)
    worst = 0.0
    tally = {"unit": 0, "sqrt_q": 0, "anomalous": 0}
    for m in mods:
        grp = unit_group(ring, m)
        T = grp.char_table()
        if len(T) < 2:
            continue
        D = m.s + deg(m.g) - 1
        C = lfunc.all_l_coefficients(grp, D + 2, T[1:])
        for i, row in enumerate(C, start=1):
            res.checks += 1
            L = lfunc.LPolynomial(row[: D + 1], D, row[D + 1 :])
            if not L.vanishes_beyond_bound():
                res.fail(f"{m} char {i}: coefficients past degree {D} do not vanish")
            rep = lfunc.weil_check(L, ring.q, tol)
            for c in rep.classes:
                tally[c] += 1
            if rep.distances:
                worst = max(worst, max(rep.distances))
            if not rep.ok:
                res.fail(f"{m} char {i}: anomalous roots {rep.anomalous}")
    res.details.update(worst_distance=worst, roots=tally)
    return res


@_timed
def suite_orthogonality(
    ring: PolyRing, deg_g_max: int = 2, s_max: int = 2, order_cap: int = 256
) -> SuiteResult:
    """Row and column orthogonality of every character table in the grid."""
    res = SuiteResult("orthogonality")
    for m in moduli(ring, deg_g_max, s_max, order_cap):
        grp = unit_group(ring, m)
        T = grp.char_table()
        N = grp.order
        res.checks += 1
        if len(T) != N:
            res.fail(f"{m}: {len(T)} characters for a group of order {N}")
        eye = N * np.eye(N)
        if np.max(np.abs(T @ T.conj().T - eye)) > 1e-9:
            res.fail(f"{m}: rows not orthogonal")
        if np.max(np.abs(T.conj().T @ T - eye)) > 1e-9:
            res.fail(f"{m}: columns not orthogonal")
    return res


# -- exponential sums ----------------------------------------------------------------


@_timed
def suite_oracle(
    ring: PolyRing, ns=(3, 4, 5), sample: int | None = None, seed: int = 0, tol: float = EQ_TOL
) -> SuiteResult:
    """Decomposition evaluator equals brute force."""
    res = SuiteResult("oracle")
    worst = 0.0
    rng = np.random.default_rng(seed)
    for n in ns:
        points = list(torus_points(ring.field, n + 1))
        if sample is not None and sample < len(points):
            points = [points[i] for i in sorted(rng.choice(len(points), sample, replace=False))]
        for th in points:
            res.checks += 1
            gap = abs(brute_sum(ring, th, n) - decomposition_sum(ring, th, n).value)
            worst = max(worst, gap)
            if gap > tol:
                res.fail(f"n={n} theta={th.token()}: gap {gap:.3g}")
    res.details["worst_gap"] = worst
    return res


def gauss_checks(ring: PolyRing, theta, n: int):
    """(d, sum |G|, bound, sum |G|^2, (q^s phi)^2) for every squarefree d | g."""
    r = approx(theta, n)
    m = HayesModulus.for_theorem(n, r.g)
    out = []
    for d in ring.divisors(r.g):
        if ring.mobius(d) == 0:
            continue
        m2 = HayesModulus(m.s, ring.divmod(r.g, d)[0])
        G = gauss_sums(ring, d, theta, m2, n)
        N = unit_group(ring, m2).order
        out.append((d, float(np.sum(np.abs(G))), N**1.5, float(np.sum(np.abs(G) ** 2)), N**2))
    return out


@_timed
def suite_gauss(ring: PolyRing, ns=(3, 4, 5), sample: int | None = None, seed: int = 0) -> SuiteResult:
    """Gauss-sum bound (q^s phi)^(3/2) and the Parseval identity."""
    res = SuiteResult("gauss")
    rng = np.random.default_rng(seed)
    min_slack = math.inf
    for n in ns:
        points = list(torus_points(ring.field, n + 1))
        if sample is not None and sample < len(points):
            points = [points[i] for i in sorted(rng.choice(len(points), sample, replace=False))]
        for th in points:
            for d, l1, bound, l2, parseval in gauss_checks(ring, th, n):
                res.checks += 1
                min_slack = min(min_slack, bound - l1)
                if l1 > bound + 1e-6:
                    res.fail(f"n={n} theta={th.token()} d={d}: {l1:.6g} > {bound:.6g}")
                if abs(l2 - parseval) > 1e-6 * max(1.0, parseval):
                    res.fail(f"n={n} theta={th.token()} d={d}: Parseval {l2:.6g} != {parseval}")
    res.details["min_slack"] = min_slack
    return res


@_timed
def suite_lemma3(ring: PolyRing, ns=(4, 6)) -> SuiteResult:
    """e_q(f theta) constant on R_{s,g} classes."""
    res = SuiteResult("lemma3")
    for n in ns:
        for th in torus_points(ring.field, n + 1):
            v = lemma3_check(ring, th, n)
            res.checks += v.polys_checked
            for f1, f2 in v.violations:
                res.fail(f"n={n} theta={th.token()}: {f1} ~ {f2} differ")
    return res


# -- analytic bounds -----------------------------------------------------------------


def _fold(res: SuiteResult, checks) -> SuiteResult:
    # keeps the instance with least slack per check name
    tightest: dict = {}
    for c in checks:
        res.checks += 1
        best = tightest.get(c.name)
        if best is None or c.slack < best.slack:
            tightest[c.name] = c
        if not c.passed:
            res.fail(f"{c.name} {c.params}: lhs={c.lhs!r} rhs={c.rhs!r}")
    res.tightest = list(tightest.values())
    return res


@_timed
def suite_lemma4(ring: PolyRing, deg_max: int = 8) -> SuiteResult:
    checks = (
        bounds.lemma4_divisor_sum(ring, g)
        for d in range(1, deg_max + 1)
        for g in ring.monic_enum(d)
        if ring.is_squarefree(g)
    )
    return _fold(SuiteResult("lemma4"), checks)


@_timed
def suite_pnt(ring: PolyRing, N_max: int | None = None) -> SuiteResult:
    if N_max is None:
        N_max = {2: 12, 3: 7}.get(ring.q, max(1, int(math.log(4096) / math.log(ring.q))))
    return _fold(SuiteResult("pnt"), (bounds.pnt_identity(ring, N) for N in range(1, N_max + 1)))


@_timed
def suite_robbins(k_max: int = 100) -> SuiteResult:
    return _fold(
        SuiteResult("robbins"), (c for k in range(1, k_max + 1) for c in bounds.robbins_bounds(k))
    )


@_timed
def suite_chain(n_max: int = 200) -> SuiteResult:
    def gen():
        for n in range(3, n_max + 1):
            K = n - n // 2
            for dg in range(K + 1):
                for dd in range(dg + 1):
                    yield from bounds.binom_chain(n, K - dg, dg, dd)
            yield bounds.central_binomial_check(n // 2)

    return _fold(SuiteResult("chain"), gen())


@_timed
def suite_final(n_max: int = 200, q_values=tuple(range(2, 17))) -> SuiteResult:
    return _fold(
        SuiteResult("final"),
        (bounds.final_chain_check(q, n) for q in q_values for n in range(3, n_max + 1)),
    )


@_timed
def suite_remark(eps_values=(0.25, 0.5, 1.0), q_values=(2, 3, 4, 5, 7, 8, 9, 11, 13, 16), n_max=100) -> SuiteResult:
    """The remark bound dominates exactly when q^(eps n) >= q^(1/4) (3 sqrt 3/2)^n,
    and for q above the threshold it does so for every n >= remark_min_n."""
    res = SuiteResult("remark")
    for eps in eps_values:
        thr = bounds.remark_threshold(eps)
        for q in q_values:
            n0 = bounds.remark_min_n(q, eps)
            for n in range(3, n_max + 1):
                c = bounds.remark_check(q, n, eps)
                res.checks += 1
                predicted = q ** (eps * n) >= q**0.25 * bounds.GOLDEN**n
                if c.passed != predicted:
                    res.fail(f"q={q} eps={eps} n={n}: check {c.passed} vs closed form {predicted}")
                if q > thr and n >= n0 and not c.passed:
                    res.fail(f"q={q} > q(eps)={thr:.4g}, n={n} >= {n0} but remark fails")
            if q < thr and bounds.remark_check(q, n_max, eps).passed:
                res.fail(f"q={q} below threshold {thr:.4g} yet dominated at n={n_max}")
    return res


SUITES = (
    "lemma1",
    "lemma2",
    "lemma3",
    "lemma4",
    "pnt",
    "weil",
    "orthogonality",
    "oracle",
    "gauss",
    "robbins",
    "chain",
    "final",
    "remark",
)
