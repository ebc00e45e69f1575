"""
Rational approximation of Laurent series
========================================

Every theta in the unit torus of F_q((1/t)) sits close to a fraction a/g
with small denominator.  Here we expand a few series, walk their continued
fractions and pick the approximating pair used by the exponential-sum code.
"""

from ffmobius.fq import get_field
from ffmobius.laurent import Laurent, approx, approx_brute, continued_fraction, expand_rational
from ffmobius.polyring import ring_for

F = get_field(2)
R = ring_for(F)

# 1/(t+1) over F_2 is t^-1 + t^-2 + t^-3 + ...
print(expand_rational(R, (1,), (1, 1), 8))

# a random-looking theta, known down to t^-9
theta = Laurent.torus(F, [1, 0, 1, 1, 0, 0, 1, 0, 1], exact=False)
for a, g in continued_fraction(theta, 4):
    print(f"convergent {R.pretty(a):>12} / {R.pretty(g)}")

# for each n the approximating pair has deg g <= n/2; search agrees with it
for n in range(1, 9):
    r = approx(theta.truncate(n + 1), n)
    found = approx_brute(R, theta.truncate(n + 1), n)
    print(n, R.pretty(r.a), "/", R.pretty(r.g), " search:", len(found), "pair(s)")
