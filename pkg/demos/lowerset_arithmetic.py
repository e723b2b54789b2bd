"""Lower sets of N^2 as two-component dimensions.

A set living over one valued coordinate and several group coordinates
does not have a single meaningful dimension number: a valued-field
dimension can be traded for a group dimension but not the other way
around.  Recording the dimension as a finite lower set of N^2 keeps both
candidates; this script walks through the arithmetic.
"""

from valdim.lowerset import (
    add,
    dim_nat,
    join,
    lower_closure,
    principal,
    render_diagram,
    shift_closure,
    shift_closure3,
)

print(__doc__)

print("The principal lower set below (3, 5) -- three valued dimensions,")
print("five group dimensions -- drawn as a diagram:\n")
print(render_diagram(principal((3, 5))))

scattered = [(0, 0), (0, 3), (0, 4), (1, 4), (2, 0), (2, 1), (2, 2), (4, 0), (4, 1)]
closed = lower_closure(scattered)
print("\nClosing a scattered point set downward:")
print(render_diagram(closed))
print("maxima:", closed.maxima)
print("collapse to a single number (max coordinate sum):", dim_nat(closed))

a, b = principal((1, 0)), principal((0, 2))
print("\nA union keeps incomparable candidates side by side:")
print("join of <(1,0)> and <(0,2)> has maxima", join(a, b).maxima)
print("a product adds dimensions componentwise:")
print("sum of <(1,0)> and <(0,2)> is", add(a, b).maxima)

d4 = join(principal((1, 4)), principal((5, 1)))
print("\nImages of definable maps can convert valued dimensions into")
print("group dimensions, one at a time.  The closure under that move:")
print(render_diagram(shift_closure(d4)))
print("the collapse is preserved:", dim_nat(d4), "==", dim_nat(shift_closure(d4)))

print("\nWith a residue coordinate the same idea lives on N^3:")
print("shift closure of <(1,0,0)>:", shift_closure3(principal((1, 0, 0))).maxima)
