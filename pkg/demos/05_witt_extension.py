# Hyperbolic envelopes and Witt extension of partial isometries.
#
# A totally isotropic submodule F embeds into a sum of hyperbolic planes
# H_1 perp ... perp H_k with the i-th basis section of F sitting inside
# H_i. An isometry defined only on F then extends to the whole module.

from sheafforms import (
    validate_topology,
    FreeModule,
    FreenessViolated,
    PartialFamily,
    RationalField,
    certify_envelope,
    gram_schmidt_extend,
    hyperbolic_envelope,
    span,
    standard_symplectic_form,
    witt_extend,
)
from sheafforms import linalg

Q = RationalField()
pair = validate_topology(("a", "b"), [(), ("a",), ("b",), ("a", "b")])
module = FreeModule(pair, Q, 6)
form = standard_symplectic_form(module)
basis = gram_schmidt_extend(form, PartialFamily.of())

# Two isotropic directions: r_1 and r_2 pair to zero with each other.
f = span(module, [basis.r[0], basis.r[1]])
planes = hyperbolic_envelope(form, f)
print("envelope planes:", len(planes))
print("certified:", certify_envelope(form, f, planes))
for i, plane in enumerate(planes, start=1):
    print(f"  H_{i} contains basis section:", plane.span.contains(f.global_basis()[i - 1]))

# Witt extension: send F somewhere else isometrically, then extend.
# Here sigma swaps the roles of the first two planes.
images = [basis.r[1], basis.r[0]]
iso = witt_extend(form, form, f, images)
for m, g in zip(iso.matrices, form.gram):
    print("extension is an isometry:", linalg.matmul(linalg.transpose(m), linalg.matmul(g, m)) == g)
print("agrees with sigma:", [iso.apply(s) == img for s, img in zip(f.global_basis(), images)])

# The freeness gate: a submodule whose component dimensions differ cannot
# carry a global basis, and witt_extend reports that instead of guessing.
from sheafforms import from_rows

mixed = from_rows(
    module,
    (
        (basis.r[0].vectors[0],),
        (),
    ),
)
print("mixed dims:", mixed.dims)
try:
    witt_extend(form, form, mixed, [])
except FreenessViolated as err:
    print("gated:", err)
