"""Exact curvature on closed surfaces, vertex stars and patches.

Run with ``python3 demos/curvature_tour.py``.
"""

from tesscurv.curvature import HIGUCHI_GAP, curvature_report, gauss_bonnet_check, vertex_curvature
from tesscurv.generators import genus_two, hyperbolic_ball, kagome_family_ball, platonic, torus_quotient, vertex_star
from tesscurv.geometry import cut_locus

print("total curvature equals the Euler characteristic")
for name, t in [("cube", platonic("cube")), ("dodecahedron", platonic("dodecahedron")),
                ("square torus 4x5", torus_quotient("square", 4, 5)), ("genus two", genus_two())]:
    total, chi, ok = gauss_bonnet_check(t)
    print(f"  {name:18s} sum Phi = {str(total):>3s}   chi = {chi:>2d}   {ok}")

print("\nthe largest negative vertex curvature")
for faces in ([3, 7, 42], [3, 7, 43], [4, 5, 20], [3, 8, 24]):
    t = vertex_star(faces)
    print(f"  faces {faces}: Phi = {vertex_curvature(t, t.center)}")
print(f"  gap constant {HIGUCHI_GAP}")

print("\ncurvature values and cut loci of patches")
for label, t in [("(7,3) ball", hyperbolic_ball(7, 3, 5)), ("kagome hexagons", kagome_family_ball(6, 5)),
                 ("kagome octagons", kagome_family_ball(8, 5))]:
    rep = curvature_report(t)
    loc = cut_locus(t)
    values = sorted(rep.distinct_values())
    print(f"  {label:16s} Phi in {[str(v) for v in values]}, cut locus by radius {loc.by_radius()}")
