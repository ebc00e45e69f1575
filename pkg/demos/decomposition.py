"""
Splitting the Mobius exponential sum
====================================

S(theta) = sum over monic f of degree n of mu(f) e_q(f theta).  Once theta
is approximated by a/g, e_q(f theta) depends only on the R_{s,g} class of f,
and the sum splits over divisors d of g into Gauss sums times Mobius sums
twisted by characters.  Both sides are computed here and compared.
"""

import random

from ffmobius.expsum import brute_sum, decomposition_sum
from ffmobius.fq import get_field
from ffmobius.laurent import Laurent
from ffmobius.polyring import ring_for

R = ring_for(get_field(3))
rng = random.Random(0)
n = 5

for _ in range(5):
    theta = Laurent.torus(R.field, [rng.randrange(3) for _ in range(n + 1)])
    res = decomposition_sum(R, theta, n)
    direct = brute_sum(R, theta, n)
    print(f"theta={theta.token()}  a/g=({R.pretty(res.a)})/({R.pretty(res.g)})  s={res.s}")
    for d, part in res.terms:
        print(f"    d={R.pretty(d):<10} {part:.6f}")
    print(f"    total {res.value:.6f}   brute {direct:.6f}")
