"""Bilinear forms on free modules, given by one Gram matrix per component
of the total space.

Sections are rows, so the pairing on a component with Gram matrix G is
phi(r, s) = r G s^T, and evaluation over any open U produces an algebra
section through the component refinement map. Orthogonals, radicals,
projections and splittings are all computed per component with exact
echelon/nullspace kernels, so every identity below is tested with zero
tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import linalg
from .algebra import AlgebraSection
from .errors import (
    IsotropicSubmodule,
    ModuleMismatch,
    NotFree,
    NotOrthosymmetric,
    OpenMismatch,
)
from .modules import (
    FreeModule,
    ModuleSection,
    Submodule,
    from_rows,
    full_submodule,
    intersect_submodules,
)
from .topology import OpenRef


@dataclass(frozen=True)
class BilinearForm:
    module: FreeModule
    gram: tuple  # per X-component: rank x rank matrix (tuple of row tuples)

    def __post_init__(self):
        n = self.module.rank
        ncomp = len(self.module.x_components())
        if len(self.gram) != ncomp:
            raise ModuleMismatch(
                f"form needs {ncomp} component Gram matrices, got {len(self.gram)}"
            )
        for g in self.gram:
            if len(g) != n or any(len(row) != n for row in g):
                raise ModuleMismatch(f"Gram matrix is not {n} x {n}")

    def _xc_of(self, open: OpenRef):
        space = self.module.space
        return space.component_refinement(open, space.x_ref)

    def evaluate(self, r: ModuleSection, s: ModuleSection) -> AlgebraSection:
        """phi_U(r, s) as an algebra section over the sections' common open."""
        if r.module != self.module or s.module != self.module:
            raise ModuleMismatch("sections belong to a different module")
        if r.open != s.open:
            raise OpenMismatch(f"sections over different opens: {r.open} vs {s.open}")
        values = tuple(
            linalg.dot(rv, linalg.mat_vec(self.gram[xc], sv))
            for rv, sv, xc in zip(r.vectors, s.vectors, self._xc_of(r.open))
        )
        return AlgebraSection(self.module.space, self.module.field, r.open, values)

    def adjoint(self, t: ModuleSection, side: str) -> "CovectorSection":
        """The covector pairing against t: side "left" is s -> phi(s, t),
        side "right" is s -> phi(t, s)."""
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        covectors = []
        for tv, xc in zip(t.vectors, self._xc_of(t.open)):
            g = self.gram[xc]
            if side == "left":
                covectors.append(linalg.mat_vec(g, tv))  # s . (G t^T)
            else:
                covectors.append(linalg.vec_mat(tv, g))  # (t G) . s^T
        return CovectorSection(self.module, t.open, tuple(covectors))

    def orthogonal(self, f: Submodule, side: str = "left") -> Submodule:
        """side "left": all t with phi(s, t) = 0 for s in f (written f-perp);
        side "right": all t with phi(t, s) = 0 for s in f."""
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        if f.module != self.module:
            raise ModuleMismatch("submodule belongs to a different module")
        n = self.module.rank
        field = self.module.field
        rows = []
        for b, g in zip(f.bases, self.gram):
            m = linalg.matmul(b, g if side == "left" else linalg.transpose(g))
            rows.append(linalg.nullspace(m, n, field))
        return from_rows(self.module, rows)

    def is_nondegenerate(self) -> bool:
        field = self.module.field
        return all(linalg.inverse(g, field) is not None for g in self.gram)

    def classify(self) -> "OrthoClass":
        return classify_orthosymmetry(self)

    def radical(self, f: Optional[Submodule] = None) -> Submodule:
        """rad f = f intersect f-perp (rad E = E-perp). Needs an
        orthosymmetric form, otherwise left and right orthogonals differ."""
        cls = classify_orthosymmetry(self)
        if not cls.orthosymmetric:
            raise NotOrthosymmetric(
                "radical requires an orthosymmetric form", witness=cls.witness
            )
        if f is None:
            return self.orthogonal(full_submodule(self.module), "left")
        return intersect_submodules(f, self.orthogonal(f, "left"))

    def project(self, f: Submodule, t: ModuleSection) -> ModuleSection:
        """Orthogonal projection of t onto f, for free non-isotropic f.

        Componentwise: with B the echelon basis of f and G the Gram matrix,
        solve (B G B^T) x = B G t^T and return x^T B. The system matrix is
        invertible exactly because rad f = 0 on every component."""
        field = self.module.field
        r = _require_free(f)
        cls = classify_orthosymmetry(self)
        if not cls.orthosymmetric:
            raise NotOrthosymmetric(
                "projection requires an orthosymmetric form", witness=cls.witness
            )
        rad = self.radical(f)
        if any(d != 0 for d in rad.dims):
            raise IsotropicSubmodule(
                f"submodule has a non-trivial radical, dims {rad.dims}",
                dims=rad.dims,
            )
        if t.module != self.module:
            raise ModuleMismatch("section belongs to a different module")
        out = []
        for tv, xc in zip(t.vectors, self._xc_of(t.open)):
            b = f.bases[xc]
            g = self.gram[xc]
            if r == 0:
                out.append(linalg.zero_vec(self.module.rank, field))
                continue
            bg = linalg.matmul(b, g)
            m = linalg.matmul(bg, linalg.transpose(b))
            rhs = linalg.mat_vec(bg, tv)
            x = linalg.solve(m, rhs, field)
            assert x is not None  # rad f = 0 makes B G B^T invertible
            out.append(linalg.vec_mat(x, b))
        return ModuleSection(self.module, t.open, tuple(out))

    def orthogonal_split(self, f: Submodule) -> "OrthogonalSplit":
        """E = f perp-oplus f-perp for free non-isotropic f, with the
        dimension-count and zero-intersection certificate recomputed."""
        _require_free(f)
        cls = classify_orthosymmetry(self)
        if not cls.orthosymmetric:
            raise NotOrthosymmetric(
                "orthogonal splitting requires an orthosymmetric form",
                witness=cls.witness,
            )
        rad = self.radical(f)
        if any(d != 0 for d in rad.dims):
            raise IsotropicSubmodule(
                f"submodule has a non-trivial radical, dims {rad.dims}",
                dims=rad.dims,
            )
        perp = self.orthogonal(f, "left")
        meet = intersect_submodules(f, perp)
        cert = SplitCertificate(
            dims_first=f.dims,
            dims_second=perp.dims,
            rank=self.module.rank,
            intersection_dims=meet.dims,
        )
        assert cert.ok
        return OrthogonalSplit(f, perp, cert)

    def __repr__(self):
        return f"BilinearForm(rank={self.module.rank}, components={len(self.gram)})"


@dataclass(frozen=True)
class CovectorSection:
    """A functional per component, the value of an adjoint at a section."""

    module: FreeModule
    open: OpenRef
    covectors: tuple

    def apply(self, s: ModuleSection) -> AlgebraSection:
        if s.module != self.module:
            raise ModuleMismatch("section belongs to a different module")
        if s.open != self.open:
            raise OpenMismatch(f"covector over {self.open}, section over {s.open}")
        values = tuple(
            linalg.dot(w, v) for w, v in zip(self.covectors, s.vectors)
        )
        return AlgebraSection(self.module.space, self.module.field, self.open, values)

    def restrict(self, v: OpenRef) -> "CovectorSection":
        refinement = self.module.space.component_refinement(v, self.open)
        return CovectorSection(
            self.module, v, tuple(self.covectors[i] for i in refinement)
        )

    def kernel_rows(self):
        """Per attached component, nothing global: used in coherence tests."""
        return self.covectors


@dataclass(frozen=True)
class ComponentSymmetry:
    symmetric: bool
    alternating: bool


@dataclass(frozen=True)
class OrthoWitness:
    open: OpenRef
    r: ModuleSection
    s: ModuleSection


@dataclass(frozen=True)
class OrthoClass:
    per_component: tuple
    orthosymmetric: bool
    witness: Optional[OrthoWitness]


def _require_free(f: Submodule) -> int:
    r = f.is_free()
    if r is None:
        raise NotFree(f"component dimensions differ: {f.dims}", dims=f.dims)
    return r


@dataclass(frozen=True)
class SplitCertificate:
    dims_first: tuple
    dims_second: tuple
    rank: int
    intersection_dims: tuple

    @property
    def ok(self) -> bool:
        return all(
            a + b == self.rank and m == 0
            for a, b, m in zip(self.dims_first, self.dims_second, self.intersection_dims)
        )


@dataclass(frozen=True)
class OrthogonalSplit:
    submodule: Submodule
    complement: Submodule
    certificate: SplitCertificate


def classify_orthosymmetry(form: BilinearForm) -> OrthoClass:
    """Componentwise symmetry flags, plus an explicit counterexample pair
    whenever some component is neither symmetric nor alternating.

    The witness is a pair of sections r, s over the offending component
    (components of opens are opens) with phi(r, s) = 0 while phi(s, r) is
    nowhere-zero; it is re-verified by evaluation before being returned.
    """
    field = form.module.field
    flags = []
    bad = None
    for c, g in enumerate(form.gram):
        gt = linalg.transpose(g)
        symmetric = g == gt
        alternating = g == tuple(
            tuple(-x for x in row) for row in gt
        ) and all(g[i][i] == field.zero for i in range(len(g)))
        flags.append(ComponentSymmetry(symmetric, alternating))
        if bad is None and not symmetric and not alternating:
            bad = c
    if bad is None:
        return OrthoClass(tuple(flags), True, None)

    u_vec, v_vec = _asymmetry_pair(form.gram[bad], field)
    space = form.module.space
    comp = form.module.x_components()[bad]
    comp_ref = space.ref(comp)
    r = ModuleSection(form.module, comp_ref, (u_vec,))
    s = ModuleSection(form.module, comp_ref, (v_vec,))
    assert form.evaluate(r, s).is_zero()
    assert form.evaluate(s, r).is_nowhere_zero()
    witness = OrthoWitness(comp_ref, r, s)
    return OrthoClass(tuple(flags), False, witness)


def _asymmetry_pair(g, field):
    """Vectors (r, s) with r G s^T = 0 but s G r^T != 0, for a matrix that is
    neither symmetric nor alternating. Classical construction, char != 2."""
    n = len(g)

    def phi(u, v):
        return linalg.dot(u, linalg.mat_vec(g, v))

    def unit(i):
        return tuple(field.one if j == i else field.zero for j in range(n))

    # a basis pair may already witness the failure outright
    for i in range(n):
        for j in range(n):
            if g[i][j] == field.zero and g[j][i] != field.zero:
                return unit(i), unit(j)

    # a, b with phi(a, b) != phi(b, a)
    a = b = None
    for i in range(n):
        for j in range(n):
            if g[i][j] != g[j][i]:
                a, b = unit(i), unit(j)
                break
        if a is not None:
            break
    assert a is not None

    def orthogonalize(x, y):
        # phi(x, x) != 0: subtract the projection so phi(x, s) = 0
        c = phi(x, y) / phi(x, x)
        s = linalg.sub_vec(y, linalg.scale(c, x))
        return x, s

    if phi(a, a) != field.zero:
        return orthogonalize(a, b)
    if phi(b, b) != field.zero:
        return orthogonalize(b, a)

    # some u with phi(u, u) != 0 exists since the form is not alternating
    u = None
    for i in range(n):
        if g[i][i] != field.zero:
            u = unit(i)
            break
    if u is None:
        for i in range(n):
            for j in range(i + 1, n):
                if g[i][j] + g[j][i] != field.zero:
                    u = linalg.add_vec(unit(i), unit(j))
                    break
            if u is not None:
                break
    assert u is not None and phi(u, u) != field.zero

    if phi(a, u) != phi(u, a):
        return orthogonalize(u, a)
    if phi(b, u) != phi(u, b):
        return orthogonalize(u, b)

    # shifting a by u keeps the asymmetry with b and gains self-pairing
    for shifted in (linalg.add_vec(a, u), linalg.sub_vec(a, u)):
        if phi(shifted, shifted) != field.zero:
            return orthogonalize(shifted, b)
    raise AssertionError("unreachable in characteristic != 2")
