"""Bottom of the spectrum, localized eigenfunctions and sphere blocks.

Run with ``python3 demos/spectral_tour.py``.
"""

from tesscurv.generators import hyperbolic_ball, kagome_family_ball
from tesscurv.spectral import compact_eigenfunction_search, lambda0_bounds_report, polar_ranks

for p, q in ((7, 3), (4, 5)):
    rep = lambda0_bounds_report(hyperbolic_ball(p, q, 8))
    print(f"({p},{q}) lower bounds " + ", ".join(f"{k}={v:.5f}" for k, v in rep.bounds.items()))
    print("  Dirichlet lambda_0(B_r): " + ", ".join(f"{r}:{v:.4f}" for r, v in sorted(rep.dirichlet.items())))

k = kagome_family_ball(6, 5)
for cert in compact_eigenfunction_search(k, 3)[:1]:
    print(f"\nkagome: eigenvalue {cert.eigenvalue} on {cert.support} with values {cert.values}")

for label, t in (("(7,3)", hyperbolic_ball(7, 3, 8)), ("kagome", k)):
    pr = polar_ranks(t)
    sizes = [len(s) for s in pr.spheres]
    print(f"{label}: sphere sizes {sizes}, ranks of E_r {list(pr.ranks)}, first deficient {pr.first_deficient()}")
