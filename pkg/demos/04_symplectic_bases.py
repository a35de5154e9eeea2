# Symplectic Gram-Schmidt: completing partial families to full bases.
#
# For a non-degenerate alternating form, gram_schmidt_extend produces
# sections r_1..r_n, s_1..s_n with phi(r_i, s_j) = delta_ij and all other
# pairings zero. Prescribed members of the family are kept verbatim.

from fractions import Fraction

from sheafforms import (
    BilinearForm,
    validate_topology,
    FreeModule,
    PartialFamily,
    RationalField,
    certify_basis,
    hyperbolic_decomposition,
    gram_schmidt_extend,
    normal_form,
    standard_alternating,
    standard_isometry,
    standard_symplectic_form,
)
from sheafforms import linalg

Q = RationalField()
point = validate_topology(("p",), [(), ("p",)])
module = FreeModule(point, Q, 4)

# A scaled alternating form: two blocks with different multipliers.
z = Fraction(0)
gram = (
    (
        (z, Fraction(2), z, z),
        (Fraction(-2), z, z, z),
        (z, z, z, Fraction(3)),
        (z, z, Fraction(-3), z),
    ),
)
form = BilinearForm(module, gram)

# From nothing: a full basis.
basis = gram_schmidt_extend(form, PartialFamily.of())
print("r1 =", basis.r[0].vectors, " s1 =", basis.s[0].vectors)
print("certified:", certify_basis(form, basis, PartialFamily.of()))

# Prescribing r_1 forces the completion to honour it.
e1, e2, e3, e4 = module.canonical_basis()
partial = PartialFamily.of(r={1: e2})
completed = gram_schmidt_extend(form, partial)
print("kept r1 = e2:", completed.r[0] == e2)
print("phi(r1, s1) =", form.evaluate(completed.r[0], completed.s[0]).values)

# The normal form congruence P^T G P = A_2n, exactly.
target = standard_alternating(4, Q)
for p, g in zip(normal_form(form), form.gram):
    print(
        "congruent to A_4:",
        linalg.matmul(linalg.transpose(p), linalg.matmul(g, p)) == target,
    )

# Any two non-degenerate alternating forms of the same rank are isometric.
other = standard_symplectic_form(module)
iso = standard_isometry(form, other)
for m, g, g2 in zip(iso.matrices, form.gram, other.gram):
    print(
        "M^T G' M == G:",
        linalg.matmul(linalg.transpose(m), linalg.matmul(g2, m)) == g,
    )

# The basis packages into hyperbolic planes, pairwise orthogonal.
planes = hyperbolic_decomposition(form)
print("planes:", len(planes), "dims each:", [pl.span.dims for pl in planes])
