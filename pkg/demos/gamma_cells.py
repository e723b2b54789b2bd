"""The group-sort engine: elimination, cells, dimension, closure.

Constraints over the ordered divisible group (Q, +, <) are decided
exactly: projection by Fourier-Motzkin elimination, decomposition into
graph and band cells, and the two independent dimension readings.
"""

from valdim import semilinear as sl

print(__doc__)

f = sl.parse_formula("x1 < x2 & x2 <= 1")
print("formula:           x1 < x2 & x2 <= 1")
print("project onto x1:  ", sl.formula_to_dsl(sl.project(f, [0])))
print("exists-sugar form:", sl.formula_to_dsl(sl.parse_formula("exists x2 (x1 < x2 & x2 <= 1)")))

g = sl.parse_formula("exists x2 (2*x2 = x1)")
print("\ndivisibility makes every congruence vacuous:")
print("exists x2 (2*x2 = x1)  defines", sl.formula_to_dsl(g))

band = sl.parse_formula("0 < x1 & x1 < 1 & x1 < x2 & x2 < x1 + 1")
cells = sl.cell_decompose(band)
print("\ncell decomposition of a slanted band:")
for c in cells:
    print("  signature", c.signature, "-> dimension", c.dimension())
print("dimension via cells:     ", sl.dimension(band))
print("dimension via projections:", sl.dimension_via_projection(band))

mixed = sl.parse_formula("x2 = x1 | (0 < x1 & x1 < 1 & 0 < x2 & x2 < 1)")
print("\na curve united with a box has the box's dimension:", sl.dimension(mixed))

one_var = sl.parse_formula("(0 < x1 & x1 < 1) | x1 = 2")
t = sl.one_var_canonical(one_var)
print("\none-variable canonical shape of (0,1) with an extra point:")
print(f"  type ({t.M},{t.N}), boundary {[str(b) for b in t.boundary]}")

half_open = sl.parse_formula("0 < x1 & x1 <= 1")
print("\nclosure relaxes strict faces of nonempty systems:")
print("  closure:", sl.formula_to_dsl(sl.closure(half_open)))
empty = sl.parse_formula("x1 < 0 & x1 >= 0")
print("but an empty system stays empty rather than relaxing to a point:")
print("  closure:", sl.formula_to_dsl(sl.closure(empty)))

ok, witness = sl.is_polyhedral(sl.parse_formula("x1 <= 0 | x1 >= 1"))
print("\npolyhedrality (weak-face presentations):", ok, "-", len(witness), "pieces")
