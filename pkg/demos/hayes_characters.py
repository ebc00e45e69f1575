"""
Hayes characters and their L-polynomials
========================================

Classes of monic polynomials modulo R_{s,g} remember f mod g and the top s
coefficients after the leading one.  The units form a finite abelian group;
for each of its characters the L-function is a polynomial whose inverse
roots sit on |alpha| = 1 or |alpha| = sqrt(q).
"""

import numpy as np

from ffmobius import lfunc
from ffmobius.fq import get_field
from ffmobius.hayes import HayesModulus, unit_group
from ffmobius.polyring import ring_for

R = ring_for(get_field(3))
m = HayesModulus(1, (1, 0, 1))  # s = 1, g = t^2 + 1
G = unit_group(R, m)
print("order", G.order, "invariant factors", G.orders)

# characters are exponent vectors; the table is exact up to one exp() call
T = G.char_table()
print("orthogonality error", np.abs(T @ T.conj().T - G.order * np.eye(G.order)).max())

# inverse roots of a few nontrivial L-polynomials
for chi in G.characters()[1:6]:
    L = lfunc.l_polynomial(G, chi)
    rep = lfunc.weil_check(L, R.q)
    mods = ", ".join(f"{abs(a):.6f}" for a in rep.roots)
    print(chi.token(), "->", mods, rep.classes)

# the Mobius sum twisted by chi can be read off 1/L(u, chi)
chi = G.characters()[1]
for n in range(6):
    via_l = lfunc.mobius_char_sum(G, chi, n)
    direct = lfunc.direct_mobius_char_sum(G, chi, n)
    print(n, np.round(via_l, 9), np.round(direct, 9))
