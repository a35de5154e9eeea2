# Sections of the locally constant field algebra.
#
# Over each open, a section of A is one scalar per connected component.
# Restriction reindexes the values along the component refinement, and a
# section is invertible exactly when no component value is zero.

from fractions import Fraction

from sheafforms import PrimeField, RationalField, validate_topology
from sheafforms.algebra import AlgebraSection

Q = RationalField()
pair = validate_topology(("a", "b"), [(), ("a",), ("b",), ("a", "b")])

# One value per component: (value on {a}, value on {b}).
s = AlgebraSection(pair, Q, pair.x_ref, (Fraction(2), Fraction(0)))
print("section:", s.values)

# Restricting to {a} keeps only the first component's value.
print("restricted to {a}:", s.restrict(pair.ref(("a",))).values)

# The zero on the second component blocks inversion globally...
print("nowhere zero on X:", s.is_nowhere_zero())
try:
    s.invert()
except Exception as err:
    print("invert refused:", err)

# ...but the restriction to {a} inverts fine.
t = s.restrict(pair.ref(("a",)))
print("inverse over {a}:", t.invert().values)

# Over a finite field the same verdict can be reached by brute force:
# enumerate every section u over the open and test whether s * u = 1.
# The fast componentwise check agrees with that enumeration.
F3 = PrimeField(3)
w = AlgebraSection(pair, F3, pair.x_ref, (F3.parse("2"), F3.parse("1")))
print("fast check:", w.is_nowhere_zero())
print("enumerated check:", w.is_nowhere_zero_enumerated())
print("product with inverse:", (w * w.invert()).values)
