"""Sphere growth of regular tilings versus their Salem roots.

The exponential rate of ``#S_r`` is ``log x`` for the largest root ``x``
of the Salem polynomial.  The estimate ``(1/R) log #S_R`` carries a
``log(c)/R`` offset from the leading constant ``c``, so it converges
slowly; the ratio ``#S_R / #S_{R-1}`` converges geometrically.

Run with ``python3 demos/growth_and_salem.py``.
"""

import math

from tesscurv.generators import hyperbolic_ball
from tesscurv.geometry import bfs_profile
from tesscurv.growth import recursion_predict, salem_polynomial, salem_root

t = hyperbolic_ball(4, 5, 9)
table = recursion_predict(t)
print("(4,5): predicted vs measured sphere sizes")
for row in table.rows:
    print(f"  r={row.radius:2d}  predicted {str(row.predicted):>6s}  measured {row.measured}")

for p, q in ((4, 5), (3, 7), (7, 3), (5, 4)):
    coeffs = salem_polynomial(p, q)
    x = salem_root(coeffs)
    S = bfs_profile(hyperbolic_ball(p, q, 12)).sphere_sizes
    R = len(S) - 1
    naive = math.log(S[R]) / R
    ratio = math.log(S[R] / S[R - 1])
    print(f"\n({p},{q}) polynomial {coeffs}")
    print(f"  root {x.value:.12f} in [{float(x.lo):.12f}, {float(x.hi):.12f}]")
    print(f"  log x = {math.log(x.value):.5f}   (1/R) log #S_R = {naive:.5f}   log(#S_R/#S_R-1) = {ratio:.5f}  (R={R})")
