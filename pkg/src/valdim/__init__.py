"""valdim: exact dimension calculus over valued and ordered-group coordinates.

Subpackages and modules:

- ``lowerset``   finite lower sets of N^2 / N^3 and their dimension arithmetic
- ``semilinear`` linear formulas over (Q, +, <): elimination, cells, closure
- ``mixedcell``  one valued coordinate over finite Puiseux data: piecewise
                 monomial valuations, relative cells, mixed dimension
- ``trop``       tropical hypersurfaces and monomial images, with exact
                 polyhedrality and dimension checks
- ``cli``        command-line front end
"""

__version__ = "0.1.0"
