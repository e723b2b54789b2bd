"""Tropical hypersurfaces and monomial images, checked exactly.

A tropical polynomial records the valuations of coefficients; its
hypersurface is where the minimum over terms is attained twice.  The
complex is assembled from term-pair tie loci and every face carries its
exact affine-span dimension.
"""

from fractions import Fraction

from valdim import semilinear as sl
from valdim import trop

print(__doc__)

line = trop.trop_poly_from_text("0@(1,0) + 0@(0,1) + 0@(0,0)")
complex_ = trop.trop_hypersurface(line)
print("the tropical line x + y + 1 has", len(complex_.faces), "rays:")
for face in complex_.faces:
    print("  dim", face.dim, ":", " & ".join(str(a) for a in face.system.atoms))
print("pure of dimension 1:", trop.pure_dimension_check(complex_, 1))

shifted = trop.trop_poly_from_text("0@(1,0) + 0@(0,1) + 1@(0,0)")
c2 = trop.trop_hypersurface(shifted)
print("\nshifting the constant term moves the vertex to (1, 1):",
      c2.contains((Fraction(1), Fraction(1))))
print("membership agrees with the duplicate-minimum scan at (1, 1):",
      trop.point_on_trop(shifted, (Fraction(1), Fraction(1))))

quadrant = sl.parse_formula("x1 >= 0 & x2 >= 0")
image = trop.trop_image_monomial(quadrant, trop.MonomialMap(((1, 1),)))
print("\nthe image of the closed quadrant under (x, y) -> xy:")
print("  ", sl.formula_to_dsl(image))
print("   dimension", sl.dimension(image), "<= domain dimension", sl.dimension(quadrant))

box = sl.parse_formula("0 <= x1 & x1 <= 1 & -1 <= x2 & x2 <= 2")
img = trop.trop_image_monomial(box, trop.MonomialMap(((2, -1), (1, 1))))
ok, _ = sl.is_polyhedral(img)
print("\na compact box maps to a closed polyhedral image:", ok)
print("  ", sl.formula_to_dsl(img))
