import cmath

import pytest

from ffmobius.fq import get_field
from ffmobius.polyring import deg, ring_for


@pytest.fixture(scope="session")
def R2():
    return ring_for(get_field(2))


@pytest.fixture(scope="session")
def R3():
    return ring_for(get_field(3))


@pytest.fixture(scope="session")
def R4():
    # F_4 as F_2[a]/(a^2 + a + 1)
    return ring_for(get_field(2, 2, (1, 1, 1)))


def naive_mobius(ring, f):
    fac = ring.factor(f)
    if any(e > 1 for _, e in fac.factors):
        return 0
    return (-1) ** len(fac.factors)


def naive_eq(ring, f, theta_coeffs):
    """e_q(f theta) from the t^-1 coefficient, for theta = sum c_i t^-i."""
    F = ring.field
    x = 0
    for i, c in enumerate(f):
        # f_i t^i * c_j t^-j lands on t^-1 when j = i + 1
        if i < len(theta_coeffs):
            x = F.add(x, F.mul(c, theta_coeffs[i]))
    return cmath.exp(2j * cmath.pi * F.trace(x) / F.p)


def naive_sum(ring, theta_coeffs, n):
    return sum(
        naive_mobius(ring, f) * naive_eq(ring, f, theta_coeffs)
        for f in ring.monic_enum(n)
        if deg(f) == n
    )


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
