"""
Scanning max |S(theta)| against the explicit bound
==================================================

For q = 2 the maximum over every truncation of theta is cheap up to n = 10.
It stays far below 4 q^((3n+1)/4) (3 sqrt 3/2)^n, and the ratio to q^(n/2)
is what a square-root law would keep bounded.
"""

from ffmobius import bounds
from ffmobius.expsum import scan_max
from ffmobius.fq import get_field
from ffmobius.polyring import ring_for

R = ring_for(get_field(2))
print(" n   max      bound        max/q^(n/2)")
for n in range(3, 11):
    rep = scan_max(R, n)
    print(f"{n:2d} {rep.max_abs:5.0f} {rep.bound:12.1f} {rep.ratio:10.3f}")

# the exponential factor is absorbed into q^(eps n) once q exceeds q(eps)
for eps in (0.25, 0.5, 1.0):
    thr = bounds.remark_threshold(eps)
    print(f"eps={eps}: q(eps)={thr:.3f}, q=16 dominated from n={bounds.remark_min_n(16, eps)}")
