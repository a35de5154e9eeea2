"""Constructive symplectic geometry: basis extension, normal form,
hyperbolic envelopes, and isometry extension.

Everything here works on alternating non-degenerate forms over the locally
constant model, where a global construction is a per-component construction
glued along the component table. The algorithms are deterministic: ambient
complements are canonical echelon subspaces, partners are chosen as the least
echelon basis row with non-vanishing pairing on each component, and every
output is re-verified against its defining equations before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .bilinear import BilinearForm
from .errors import (
    Degenerate,
    FreenessViolated,
    IsometryHypothesisViolated,
    ModuleMismatch,
    NotAlternating,
    NotTotallyIsotropic,
    OddRank,
    OpenMismatch,
    PartialRelationsViolated,
    PartnerNotFound,
    RankMismatch,
)
from .modules import FreeModule, ModuleSection, Submodule, full_submodule, span


# -- types --------------------------------------------------------------------

@dataclass(frozen=True)
class PartialFamily:
    """Index-keyed sections r_i (i in I) and s_j (j in J), 1-based indices,
    expected to satisfy the pairing relations phi(r_i, r_j) = phi(s_i, s_j) = 0
    and phi(r_i, s_j) = delta_ij."""

    r: tuple = ()  # sorted ((index, section), ...)
    s: tuple = ()

    @staticmethod
    def of(r=None, s=None) -> "PartialFamily":
        r = dict(r or {})
        s = dict(s or {})
        return PartialFamily(
            tuple(sorted(r.items())), tuple(sorted(s.items()))
        )

    @property
    def r_dict(self):
        return dict(self.r)

    @property
    def s_dict(self):
        return dict(self.s)


@dataclass(frozen=True)
class SymplecticBasis:
    module: FreeModule
    r: tuple  # sections r_1 .. r_n
    s: tuple  # sections s_1 .. s_n

    @property
    def n(self) -> int:
        return len(self.r)

    def interleaved(self):
        out = []
        for a, b in zip(self.r, self.s):
            out.append(a)
            out.append(b)
        return out


@dataclass(frozen=True)
class HyperbolicPlane:
    r: ModuleSection
    s: ModuleSection
    span: Submodule


@dataclass(frozen=True)
class Isometry:
    source: BilinearForm
    target: BilinearForm
    matrices: tuple  # per X-component; columns act on coordinate columns

    def apply(self, section: ModuleSection) -> ModuleSection:
        if section.module != self.source.module:
            raise ModuleMismatch("section does not belong to the source module")
        space = self.source.module.space
        refinement = space.component_refinement(section.open, space.x_ref)
        vectors = tuple(
            linalg.mat_vec(self.matrices[xc], v)
            for v, xc in zip(section.vectors, refinement)
        )
        return ModuleSection(self.target.module, section.open, vectors)

    def holds(self) -> bool:
        """The defining equation M^T G' M = G on every component."""
        return all(
            linalg.matmul(linalg.transpose(m), linalg.matmul(g2, m)) == g
            for m, g, g2 in zip(self.matrices, self.source.gram, self.target.gram)
        )


def compose_isometries(first: Isometry, second: Isometry) -> Isometry:
    if first.target != second.source:
        raise ModuleMismatch("isometries do not compose: target/source forms differ")
    mats = tuple(
        linalg.matmul(m2, m1) for m1, m2 in zip(first.matrices, second.matrices)
    )
    return Isometry(first.source, second.target, mats)


def invert_isometry(iso: Isometry) -> Isometry:
    field = iso.source.module.field
    mats = []
    for m in iso.matrices:
        inv = linalg.inverse(m, field)
        assert inv is not None  # isometries of non-degenerate forms are invertible
        mats.append(inv)
    return Isometry(iso.target, iso.source, tuple(mats))


# -- validation ---------------------------------------------------------------

def validate_symplectic(form: BilinearForm) -> None:
    """Alternating on every component, even rank, invertible Gram matrices."""
    field = form.module.field
    for c, g in enumerate(form.gram):
        n = len(g)
        for i in range(n):
            if g[i][i] != field.zero:
                raise NotAlternating(
                    f"component {c}: diagonal entry {i} is non-zero", component=c
                )
            for j in range(n):
                if g[i][j] != -g[j][i]:
                    raise NotAlternating(
                        f"component {c}: entry ({i},{j}) is not skew", component=c
                    )
    if form.module.rank % 2 != 0:
        raise OddRank(f"rank {form.module.rank} is odd")
    for c, g in enumerate(form.gram):
        if linalg.inverse(g, field) is None:
            raise Degenerate(f"component {c}: Gram matrix is singular", component=c)


def standard_alternating(rank: int, field):
    """Block-diagonal Gram matrix with blocks [[0,1],[-1,0]]."""
    assert rank % 2 == 0
    rows = []
    for i in range(rank):
        row = [field.zero] * rank
        if i % 2 == 0:
            row[i + 1] = field.one
        else:
            row[i - 1] = -field.one
        rows.append(tuple(row))
    return tuple(rows)


def standard_symplectic_form(module: FreeModule) -> BilinearForm:
    a = standard_alternating(module.rank, module.field)
    return BilinearForm(module, (a,) * len(module.x_components()))


# -- the extension theorem ------------------------------------------------------

def _fiber_phi(g, u, v):
    return linalg.dot(u, linalg.mat_vec(g, v))


def _glue(module: FreeModule, per_component_vectors) -> ModuleSection:
    return ModuleSection(module, module.space.x_ref, tuple(per_component_vectors))


def _project_rows_away(form: BilinearForm, rows_per_comp, pairs):
    """Image of each row under z -> z + sum_i phi(z, r_i) s_i - phi(z, s_i) r_i,
    echelonized per component. For pairs with phi(r_i, s_i) = 1 satisfying the
    pairing relations this is the projection onto the orthogonal complement
    of their span."""
    field = form.module.field
    out = []
    for c, rows in enumerate(rows_per_comp):
        g = form.gram[c]
        new = []
        for z in rows:
            acc = z
            for r, s in pairs:
                rv, sv = r.vectors[c], s.vectors[c]
                a = _fiber_phi(g, z, rv)
                b = _fiber_phi(g, z, sv)
                acc = linalg.add_vec(acc, linalg.sub_vec(linalg.scale(a, sv), linalg.scale(b, rv)))
            new.append(acc)
        out.append(linalg.rref(new, field)[0])
    return tuple(out)


def _constrained_partner(form, ambient_rows, avoid, mate, label):
    """On each component, the least echelon basis row w of
    {w in ambient : phi(a, w) = 0 for a in avoid} with phi(mate, w) != 0,
    glued into a global section. Raises PartnerNotFound when some component
    has no such row (which signals an inconsistent input family)."""
    field = form.module.field
    width = form.module.rank
    picks = []
    for c, amb in enumerate(ambient_rows):
        g = form.gram[c]
        if avoid:
            stacked = tuple(a.vectors[c] for a in avoid)
            m = linalg.matmul(linalg.matmul(stacked, g), linalg.transpose(amb))
            coeffs = linalg.nullspace(m, len(amb), field)
            w_rows = linalg.rref(linalg.matmul(coeffs, amb), field)[0] if coeffs else ()
        else:
            w_rows = amb
        mate_vec = mate.vectors[c]
        pick = None
        for w in w_rows:
            if _fiber_phi(g, mate_vec, w) != field.zero:
                pick = w
                break
        if pick is None:
            raise PartnerNotFound(
                f"no admissible partner for {label} on component {c}", component=c
            )
        picks.append(pick)
    return _glue(form.module, picks)


def _check_partial_relations(form, rs, ss):
    unit = None
    for i, ri in rs.items():
        for j, rj in rs.items():
            if not form.evaluate(ri, rj).is_zero():
                raise PartialRelationsViolated(
                    f"phi(r_{i}, r_{j}) != 0", pair=(("r", i), ("r", j))
                )
    for i, si in ss.items():
        for j, sj in ss.items():
            if not form.evaluate(si, sj).is_zero():
                raise PartialRelationsViolated(
                    f"phi(s_{i}, s_{j}) != 0", pair=(("s", i), ("s", j))
                )
    for i, ri in rs.items():
        for j, sj in ss.items():
            val = form.evaluate(ri, sj)
            if i == j:
                if unit is None:
                    unit = tuple(form.module.field.one for _ in val.values)
                if val.values != unit:
                    raise PartialRelationsViolated(
                        f"phi(r_{i}, s_{i}) != 1", pair=(("r", i), ("s", i))
                    )
            elif not val.is_zero():
                raise PartialRelationsViolated(
                    f"phi(r_{i}, s_{j}) != 0", pair=(("r", i), ("s", j))
                )


def gram_schmidt_extend(form: BilinearForm, partial: PartialFamily) -> SymplecticBasis:
    """Extend a partial family to a full symplectic basis r_1..r_n, s_1..s_n
    with phi(r_i, r_j) = phi(s_i, s_j) = 0 and phi(r_i, s_j) = delta_ij.

    The given sections are kept verbatim at their prescribed indices. The
    construction completes each unmatched index by a partner search inside
    the orthogonal complement of everything already fixed (constrained to be
    orthogonal to the still-unmatched sections), then fills the remaining
    indices with fresh pairs drawn from the shrinking complement. All three
    configurations (nothing given, matched pairs given, one side of a pair
    given) funnel through the same loop.
    """
    validate_symplectic(form)
    module = form.module
    n = module.rank // 2
    rs = partial.r_dict
    ss = partial.s_dict

    x = module.space.x_ref
    for label, sections in (("r", rs), ("s", ss)):
        for i, sec in sections.items():
            if not (1 <= i <= n):
                raise PartialRelationsViolated(
                    f"index {i} outside 1..{n}", index=i
                )
            if sec.module != module:
                raise ModuleMismatch(f"{label}_{i} belongs to a different module")
            if sec.open != x:
                raise OpenMismatch(f"{label}_{i} is not a global section")
            if not sec.is_nowhere_zero():
                raise PartialRelationsViolated(
                    f"{label}_{i} vanishes on some component", index=i
                )
    _check_partial_relations(form, rs, ss)

    matched = sorted(set(rs) & set(ss))
    singles = sorted((set(rs) | set(ss)) - set(matched))

    ident = linalg.identity(module.rank, module.field)
    ambient = _project_rows_away(
        form,
        (ident,) * len(module.x_components()),
        [(rs[i], ss[i]) for i in matched],
    )
    expected = module.rank - 2 * len(matched)
    assert all(len(b) == expected for b in ambient)

    pending = list(singles)
    for k in list(singles):
        pending.remove(k)
        others = [rs[i] if i in rs else ss[i] for i in pending]
        if k in rs:
            w = _constrained_partner(form, ambient, others, rs[k], f"s_{k}")
            u = form.evaluate(rs[k], w)
            ss[k] = u.invert() * w
        else:
            w = _constrained_partner(form, ambient, others, ss[k], f"r_{k}")
            u = form.evaluate(w, ss[k])
            rs[k] = u.invert() * w
        ambient = _project_rows_away(form, ambient, [(rs[k], ss[k])])
        expected -= 2
        assert all(len(b) == expected for b in ambient)

    for k in range(1, n + 1):
        if k in rs:
            continue
        assert expected > 0
        r = _glue(module, (b[0] for b in ambient))
        w = _constrained_partner(form, ambient, [], r, f"s_{k}")
        u = form.evaluate(r, w)
        rs[k] = r
        ss[k] = u.invert() * w
        ambient = _project_rows_away(form, ambient, [(rs[k], ss[k])])
        expected -= 2
        assert all(len(b) == expected for b in ambient)

    assert expected == 0
    basis = SymplecticBasis(
        module, tuple(rs[i] for i in range(1, n + 1)), tuple(ss[i] for i in range(1, n + 1))
    )
    assert certify_basis(form, basis, partial)
    return basis


def certify_basis(form: BilinearForm, basis: SymplecticBasis, partial=None) -> bool:
    """Re-verify the defining equations: all pairing relations, invertibility
    of the change of basis on every component, and verbatim containment of
    the partial family at its indices."""
    field = form.module.field
    n = basis.n
    for i in range(n):
        for j in range(n):
            if not form.evaluate(basis.r[i], basis.r[j]).is_zero():
                return False
            if not form.evaluate(basis.s[i], basis.s[j]).is_zero():
                return False
            val = form.evaluate(basis.r[i], basis.s[j])
            want_one = i == j
            for v in val.values:
                if v != (field.one if want_one else field.zero):
                    return False
    ncomp = len(form.module.x_components())
    for c in range(ncomp):
        stacked = tuple(sec.vectors[c] for sec in basis.interleaved())
        if linalg.inverse(stacked, field) is None:
            return False
    if partial is not None:
        for i, sec in partial.r:
            if basis.r[i - 1] != sec:
                return False
        for i, sec in partial.s:
            if basis.s[i - 1] != sec:
                return False
    return True


def hyperbolic_decomposition(form: BilinearForm):
    """E as a perpendicular sum of hyperbolic planes span(r_i, s_i)."""
    basis = gram_schmidt_extend(form, PartialFamily.of())
    return [
        HyperbolicPlane(r, s, span(form.module, [r, s]))
        for r, s in zip(basis.r, basis.s)
    ]


def normal_form(form: BilinearForm):
    """Per-component change of basis P with P^T G P the standard alternating
    matrix. Columns of P are the symplectic basis interleaved r_1, s_1, ..."""
    basis = gram_schmidt_extend(form, PartialFamily.of())
    target = standard_alternating(form.module.rank, form.module.field)
    mats = []
    for c in range(len(form.gram)):
        p = linalg.transpose(tuple(sec.vectors[c] for sec in basis.interleaved()))
        assert linalg.matmul(
            linalg.transpose(p), linalg.matmul(form.gram[c], p)
        ) == target
        mats.append(p)
    return tuple(mats)


def standard_isometry(source: BilinearForm, target: BilinearForm) -> Isometry:
    """An exact isometry between two symplectic forms of the same rank over
    the same space: M = P' P^{-1} built from the two normal forms."""
    if source.module.space != target.module.space or source.module.field != target.module.field:
        raise ModuleMismatch("forms live over different spaces or fields")
    if source.module.rank != target.module.rank:
        raise RankMismatch(
            f"ranks differ: {source.module.rank} vs {target.module.rank}"
        )
    validate_symplectic(source)
    validate_symplectic(target)
    p = normal_form(source)
    p2 = normal_form(target)
    field = source.module.field
    mats = []
    for a, b in zip(p, p2):
        inv = linalg.inverse(a, field)
        assert inv is not None
        mats.append(linalg.matmul(b, inv))
    iso = Isometry(source, target, tuple(mats))
    assert iso.holds()
    return iso


# -- hyperbolic envelopes and isometry extension ------------------------------

def _envelope(form, basis_sections, ambient_rows):
    """Hyperbolic planes H_i = span(f_i, w_i) for the given totally isotropic
    sections, built inside the ambient subspace. Works from the last section
    down: its partner is chosen orthogonal to the remaining ones, the plane
    is split off the ambient, and the rest recurses into the complement.
    Partners are normalized to pairing 1."""
    if not basis_sections:
        return []
    f = basis_sections[-1]
    rest = list(basis_sections[:-1])
    w = _constrained_partner(form, ambient_rows, rest, f, "envelope partner")
    u = form.evaluate(f, w)
    s = u.invert() * w
    plane = HyperbolicPlane(f, s, span(form.module, [f, s]))
    shrunk = _project_rows_away(form, ambient_rows, [(f, s)])
    return _envelope(form, rest, shrunk) + [plane]


def hyperbolic_envelope(form: BilinearForm, f: Submodule):
    """Pairwise orthogonal hyperbolic planes H_i with r_i in H_i, where
    r_1..r_k is the canonical global basis of the totally isotropic free f."""
    validate_symplectic(form)
    if f.module != form.module:
        raise ModuleMismatch("submodule belongs to a different module")
    if f.is_free() is None:
        raise FreenessViolated(
            f"submodule component dimensions differ: {f.dims}", dims=f.dims
        )
    field = form.module.field
    for b, g in zip(f.bases, form.gram):
        gram_on_f = linalg.matmul(linalg.matmul(b, g), linalg.transpose(b))
        if any(x != field.zero for row in gram_on_f for x in row):
            raise NotTotallyIsotropic("the form does not vanish on the submodule")
    basis = f.global_basis()
    ident = linalg.identity(form.module.rank, field)
    ambient = (ident,) * len(form.module.x_components())
    return _envelope(form, basis, ambient)


def certify_envelope(form: BilinearForm, f: Submodule, planes) -> bool:
    basis = f.global_basis()
    if len(planes) != len(basis):
        return False
    for sec, plane in zip(basis, planes):
        if plane.r != sec or not plane.span.contains(sec):
            return False
        if not form.evaluate(plane.r, plane.s).is_nowhere_zero():
            return False
        if plane.span.is_free() != 2:
            return False
        rad = form.radical(plane.span)
        if any(d != 0 for d in rad.dims):
            return False
    for i, p in enumerate(planes):
        for q in planes[i + 1 :]:
            for a in (p.r, p.s):
                for b in (q.r, q.s):
                    if not form.evaluate(a, b).is_zero():
                        return False
    return True


def _sigma_from_images(f: Submodule, images):
    """A-linear map on sections of f determined by images of the canonical
    global basis: express per component over the echelon basis, recombine."""
    field = f.module.field

    def apply(section: ModuleSection) -> ModuleSection:
        space = f.module.space
        refinement = space.component_refinement(section.open, space.x_ref)
        out = []
        for vec, xc in zip(section.vectors, refinement):
            coeffs = linalg.reduce_against(f.bases[xc], vec, field)
            assert coeffs is not None
            img = linalg.zero_vec(images[0].module.rank, field) if images else ()
            for c, im in zip(coeffs, images):
                img = linalg.add_vec(img, linalg.scale(c, im.vectors[xc]))
            out.append(img)
        return ModuleSection(images[0].module, section.open, tuple(out))

    return apply


def witt_extend(
    source: BilinearForm, target: BilinearForm, f: Submodule, sigma_images
) -> Isometry:
    """Extend an isometry given on a free submodule to a global isometry.

    sigma is given by the images of the canonical global basis of f; it must
    preserve all pairings exactly and be injective on every component. The
    construction splits f into a non-isotropic part and its radical, carries
    the non-isotropic part over verbatim, matches the two hyperbolic
    envelopes of the radicals (inside the orthogonal complements of the
    non-isotropic parts), maps partner to partner with the exact pairing
    correction, and finishes with a standard isometry between the residual
    complements. The result is checked against the defining equation and
    against sigma on the basis of f before being returned.
    """
    if source.module.space != target.module.space or source.module.field != target.module.field:
        raise ModuleMismatch("forms live over different spaces or fields")
    if source.module.rank != target.module.rank:
        raise RankMismatch(
            f"ranks differ: {source.module.rank} vs {target.module.rank}"
        )
    validate_symplectic(source)
    validate_symplectic(target)
    module = source.module
    field = module.field
    if f.module != module:
        raise ModuleMismatch("submodule belongs to a different module")

    k = f.is_free()
    if k is None:
        raise FreenessViolated(
            f"submodule component dimensions differ: {f.dims}", dims=f.dims
        )
    basis = f.global_basis()

    images = list(sigma_images)
    if len(images) != k:
        raise IsometryHypothesisViolated(
            f"need {k} basis images, got {len(images)}"
        )
    x = module.space.x_ref
    for im in images:
        if im.module != target.module:
            raise ModuleMismatch("an image belongs to a different module")
        if im.open != x:
            raise OpenMismatch("images must be global sections")
    for i in range(k):
        for j in range(k):
            if source.evaluate(basis[i], basis[j]) != target.evaluate(images[i], images[j]):
                raise IsometryHypothesisViolated(
                    f"pairing of basis sections {i} and {j} is not preserved",
                    pair=(i, j),
                )
    for c in range(len(module.x_components())):
        stacked = tuple(im.vectors[c] for im in images)
        if linalg.rank(stacked, field) != k:
            raise IsometryHypothesisViolated(
                f"images are dependent on component {c}: sigma is not injective",
                component=c,
            )

    rad = source.radical(f)
    l = rad.is_free()
    if l is None:
        raise FreenessViolated(
            f"radical component dimensions differ: {rad.dims}", dims=rad.dims
        )
    sigma = _sigma_from_images(f, images) if k else None

    # non-isotropic complement of the radical inside f, one glued row basis
    comp_rows_per_c = [
        linalg.complement_rows(rb, fb, field) for rb, fb in zip(rad.bases, f.bases)
    ]
    assert all(len(rows) == k - l for rows in comp_rows_per_c)
    gc_sections = [
        _glue(module, (rows[i] for rows in comp_rows_per_c)) for i in range(k - l)
    ]
    rad_basis = rad.global_basis()
    sigma_gc = [sigma(sec) for sec in gc_sections]
    sigma_rad = [sigma(sec) for sec in rad_basis]

    # orthogonal complements of the carried-over part, on both sides
    if gc_sections:
        gc = span(module, gc_sections)
        gc_t = span(module, sigma_gc)
        amb_source = source.orthogonal(gc, "left").bases
        amb_target = target.orthogonal(gc_t, "left").bases
    else:
        ident = linalg.identity(module.rank, field)
        amb_source = (ident,) * len(module.x_components())
        amb_target = amb_source

    planes = _envelope(source, rad_basis, amb_source)
    planes_t = _envelope(target, sigma_rad, amb_target)

    # partner images with the exact pairing correction (both pairings are
    # normalized to 1 by the envelope, so the factor is 1; kept for fidelity)
    beta_s = []
    for p, q in zip(planes, planes_t):
        factor = source.evaluate(p.r, p.s) * target.evaluate(q.r, q.s).invert()
        beta_s.append(factor * q.s)

    # residual complements J and J' and a standard isometry between them
    h_sections = [sec for p in planes for sec in (p.r, p.s)]
    h_sections_t = [sec for q in planes_t for sec in (q.r, q.s)]
    j_source = source.orthogonal(span(module, gc_sections + h_sections), "left")
    j_target = target.orthogonal(span(module, sigma_gc + h_sections_t), "left")
    jr = j_source.is_free()
    jr_t = j_target.is_free()
    assert jr is not None and jr == jr_t

    source_secs = gc_sections + [p.r for p in planes] + [p.s for p in planes]
    target_secs = sigma_gc + [q.r for q in planes_t] + beta_s
    if jr:
        j_basis = j_source.global_basis()
        j_basis_t = j_target.global_basis()
        j_module = FreeModule(module.space, field, jr)
        restricted = BilinearForm(
            j_module,
            tuple(
                linalg.matmul(linalg.matmul(b, g), linalg.transpose(b))
                for b, g in zip(j_source.bases, source.gram)
            ),
        )
        restricted_t = BilinearForm(
            j_module,
            tuple(
                linalg.matmul(linalg.matmul(b, g), linalg.transpose(b))
                for b, g in zip(j_target.bases, target.gram)
            ),
        )
        n_iso = standard_isometry(restricted, restricted_t)
        for idx in range(jr):
            vectors = []
            for c in range(len(module.x_components())):
                col = tuple(n_iso.matrices[c][i][idx] for i in range(jr))
                vectors.append(linalg.vec_mat(col, j_target.bases[c]))
            source_secs.append(j_basis[idx])
            target_secs.append(_glue(target.module, vectors))

    mats = []
    for c in range(len(module.x_components())):
        src = linalg.transpose(tuple(sec.vectors[c] for sec in source_secs))
        tgt = linalg.transpose(tuple(sec.vectors[c] for sec in target_secs))
        inv = linalg.inverse(src, field)
        assert inv is not None  # the blocks sum to the whole module
        mats.append(linalg.matmul(tgt, inv))
    iso = Isometry(source, target, tuple(mats))
    assert iso.holds()
    for sec, im in zip(basis, images):
        assert iso.apply(sec) == im
    return iso
