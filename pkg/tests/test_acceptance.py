"""Acceptance gate: ten exact-arithmetic criteria, one printed verdict line
each. Every check is an equation re-evaluated from scratch with zero
tolerance; seeded corpora make the runs reproducible."""

import itertools
import time
from fractions import Fraction
from random import Random

import pytest

from sheafforms import (
    BilinearForm,
    FreeModule,
    FreenessViolated,
    NotFree,
    NotOrthosymmetric,
    PartialFamily,
    PrimeField,
    RationalField,
    certify_basis,
    certify_envelope,
    classify_orthosymmetry,
    from_rows,
    gram_schmidt_extend,
    hyperbolic_envelope,
    intersect_submodules,
    normal_form,
    span,
    standard_alternating,
    standard_isometry,
    standard_symplectic_form,
    sum_submodules,
    witt_extend,
)
from sheafforms import linalg
from sheafforms.algebra import AlgebraSection
from sheafforms.oracles import (
    discrete_pair_space,
    enumerate_algebra_sections,
    fixture_spaces,
    orthosymmetric_by_counting,
    orthosymmetric_by_literal_enumeration,
    point_space,
    random_alternating_form,
    random_free_submodule,
    random_global_section,
    random_nonisotropic_submodule,
    random_orthosymmetric_form,
    random_partial_family,
    random_symplectic_isometry,
    random_totally_isotropic,
    sierpinski_space,
    _zero_pair_counts,
    all_fiber_vectors,
)

Q = RationalField()
F3 = PrimeField(3)

SPACES = (point_space(), sierpinski_space(), discrete_pair_space())


def verdict(criterion: str, ok: bool, detail: str):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    assert ok, line


def partial_configs(n: int):
    """Index-set templates with |I|, |J| <= 2 covering the empty family,
    matched pairs, lone r/s singles, crossed singles, and mixtures."""
    templates = [
        (set(), set()),
        ({1}, set()),
        (set(), {1}),
        ({1}, {1}),
        ({1, 2}, set()),
        (set(), {1, 2}),
        ({1, 2}, {1}),
        ({1}, {1, 2}),
        ({1}, {2}),
        ({2}, {1}),
        ({1, 2}, {1, 2}),
        ({1, 2}, {2}),
    ]
    return [
        (i_set, j_set)
        for i_set, j_set in templates
        if all(k <= n for k in i_set | j_set)
    ]


def corpus_rank2_to_8(seed: int, count: int):
    """The shared seeded corpus of non-degenerate alternating forms over the
    rationals on the three fixture spaces."""
    rng = Random(seed)
    out = []
    for i in range(count):
        space = SPACES[i % len(SPACES)]
        rank = (2, 4, 6, 8)[rng.randrange(4)]
        module = FreeModule(space, Q, rank)
        out.append(random_alternating_form(rng, module))
    return rng, out


def test_criterion_01_symplectic_gram_schmidt():
    rng, corpus = corpus_rank2_to_8(101, 200)
    # pre-built partials so the timed region is the extension itself
    prepared = []
    for idx, form in enumerate(corpus):
        n = form.module.rank // 2
        configs = partial_configs(n)
        config = configs[idx % len(configs)]
        prepared.append((form, random_partial_family(rng, form, config=config)))
    checked = 0
    extension_time = 0.0
    for form, partial in prepared:
        started = time.perf_counter()
        basis = gram_schmidt_extend(form, partial)
        extension_time += time.perf_counter() - started
        assert certify_basis(form, basis, partial)
        # the partial is contained verbatim
        for i, sec in partial.r:
            assert basis.r[i - 1] == sec
        for j, sec in partial.s:
            assert basis.s[j - 1] == sec
        checked += 1
    ok = checked == 200 and extension_time < 5.0
    verdict(
        "01 symplectic Gram-Schmidt",
        ok,
        f"{checked} seeded forms (ranks 2-8, 3 spaces, partial configs "
        f"|I|,|J|<=2), relations exact, extensions took {extension_time:.2f}s",
    )


def test_criterion_02_normal_form():
    _, corpus = corpus_rank2_to_8(101, 200)
    checked = 0
    for form in corpus:
        target = standard_alternating(form.module.rank, form.module.field)
        for p, g in zip(normal_form(form), form.gram):
            assert linalg.matmul(linalg.transpose(p), linalg.matmul(g, p)) == target
        checked += 1
    # exhaustive rank-2 invertible alternating forms over GF(3)
    exhaustive = 0
    target3 = standard_alternating(2, F3)
    for space in SPACES:
        ncomp = len(space.components_of(space.x_ref))
        module = FreeModule(space, F3, 2)
        cs = [c for c in F3.elements() if c != F3.zero]
        for combo in itertools.product(cs, repeat=ncomp):
            gram = tuple(((F3.zero, c), (-c, F3.zero)) for c in combo)
            form = BilinearForm(module, gram)
            for p, g in zip(normal_form(form), form.gram):
                assert (
                    linalg.matmul(linalg.transpose(p), linalg.matmul(g, p))
                    == target3
                )
            exhaustive += 1
    verdict(
        "02 normal form",
        checked == 200 and exhaustive == 2 + 2 + 4,
        f"P^T G P = A_2n exactly on {checked} seeded forms and "
        f"{exhaustive} exhaustive GF(3) rank-2 forms",
    )


def test_criterion_03_same_rank_isometry():
    rng = Random(303)
    checked = 0
    for i in range(100):
        space = SPACES[i % len(SPACES)]
        rank = (2, 4, 6, 8)[rng.randrange(4)]
        module = FreeModule(space, Q, rank)
        source = random_alternating_form(rng, module)
        target = random_alternating_form(rng, module)
        iso = standard_isometry(source, target)
        for m, g, g2 in zip(iso.matrices, source.gram, target.gram):
            assert (
                linalg.matmul(linalg.transpose(m), linalg.matmul(g2, m)) == g
            )
        checked += 1
    verdict(
        "03 same-rank isometry",
        checked == 100,
        f"M^T G' M = G exactly for {checked} seeded pairs",
    )


def test_criterion_04_orthosymmetry_dichotomy():
    started = time.perf_counter()
    rank2 = list(itertools.product(F3.elements(), repeat=4))
    assert len(rank2) == 81
    rank1 = list(F3.elements())

    def as_matrix(flat):
        return ((flat[0], flat[1]), (flat[2], flat[3]))

    # cached per-matrix pair counts drive the mixed-component sweep
    vectors2 = all_fiber_vectors(F3, 2)
    stats2 = {flat: _zero_pair_counts(as_matrix(flat), vectors2, F3) for flat in rank2}

    disagreements = 0
    uniform_cases = 0
    for space in SPACES:
        ncomp = len(space.components_of(space.x_ref))
        single_component = ncomp == 1
        module1 = FreeModule(space, F3, 1)
        for c in rank1:
            form = BilinearForm(module1, (((c,),),) * ncomp)
            v = classify_orthosymmetry(form).orthosymmetric
            b, _ = orthosymmetric_by_counting(form)
            if v != b:
                disagreements += 1
            uniform_cases += 1
        module2 = FreeModule(space, F3, 2)
        for flat in rank2:
            form = BilinearForm(module2, (as_matrix(flat),) * ncomp)
            v = classify_orthosymmetry(form).orthosymmetric
            b, witness = orthosymmetric_by_counting(form)
            if v != b:
                disagreements += 1
            if single_component:
                lit, _ = orthosymmetric_by_literal_enumeration(form)
                if lit != b:
                    disagreements += 1
            if witness is not None:
                _, r, s = witness
                assert form.evaluate(r, s).is_zero()
                assert not form.evaluate(s, r).is_zero()
            uniform_cases += 1

    # all 81 x 81 mixed component pairs on the discrete two-point space
    pair_space = discrete_pair_space()
    module_mixed = FreeModule(pair_space, F3, 2)
    mixed_cases = 0
    for flat_a, flat_b in itertools.product(rank2, repeat=2):
        form = BilinearForm(module_mixed, (as_matrix(flat_a), as_matrix(flat_b)))
        v = classify_orthosymmetry(form).orthosymmetric
        # sections over any open factor through components, so the
        # definitional verdict is the conjunction of per-component counts
        brute = all(
            stats2[flat][0] == stats2[flat][1] for flat in (flat_a, flat_b)
        )
        if v != brute:
            disagreements += 1
        mixed_cases += 1
    elapsed = time.perf_counter() - started
    ok = disagreements == 0 and mixed_cases == 81 * 81 and elapsed < 60.0
    verdict(
        "04 orthosymmetry dichotomy",
        ok,
        f"exhaustive GF(3): {uniform_cases} uniform forms on 3 spaces plus "
        f"{mixed_cases} mixed pairs, {disagreements} disagreements, "
        f"{elapsed:.1f}s",
    )


def test_criterion_05_orthogonal_calculus():
    rng = Random(505)
    checked = 0
    for i in range(500):
        space = SPACES[i % len(SPACES)]
        rank = rng.randrange(1, 7)
        module = FreeModule(space, Q, rank)
        form = random_orthosymmetric_form(rng, module)
        f = random_free_submodule(rng, module, rng.randrange(rank + 1))
        g = random_free_submodule(rng, module, rng.randrange(rank + 1))
        assert form.orthogonal(sum_submodules(f, g)) == intersect_submodules(
            form.orthogonal(f), form.orthogonal(g)
        )
        assert form.orthogonal(intersect_submodules(f, g)) == sum_submodules(
            form.orthogonal(f), form.orthogonal(g)
        )
        assert form.orthogonal(form.orthogonal(f)) == f
        checked += 1
    verdict(
        "05 orthogonal calculus",
        checked == 500,
        f"(F+G) perp, (F meet G) perp, and F perp perp identities hold as "
        f"echelon equalities on {checked} seeded submodule pairs",
    )


def test_criterion_06_splitting_and_projection():
    rng = Random(606)
    checked = 0
    while checked < 200:
        space = SPACES[checked % len(SPACES)]
        rank = rng.randrange(1, 7)
        module = FreeModule(space, Q, rank)
        form = random_orthosymmetric_form(rng, module, symmetric_only=True)
        f = random_nonisotropic_submodule(rng, form, rng.randrange(rank + 1))
        if f is None:
            continue
        split = form.orthogonal_split(f)
        assert split.certificate.ok
        assert all(
            a + b == rank
            for a, b in zip(split.submodule.dims, split.complement.dims)
        )
        assert all(
            d == 0
            for d in intersect_submodules(split.submodule, split.complement).dims
        )
        basis = f.global_basis()
        for _ in range(10):
            t = random_global_section(rng, module)
            p = form.project(f, t)
            assert form.project(f, p) == p
            for b in basis:
                assert form.evaluate(t - p, b).is_zero()
        checked += 1
    verdict(
        "06 splitting and projection",
        checked == 200,
        f"direct-sum certificates plus p^2 = p and phi(t - p(t), F) = 0 on "
        f"10 sections each, {checked} non-isotropic submodules",
    )


def test_criterion_07_scholium_axiom():
    exhaustive = 0
    for space in SPACES:
        for u in range(len(space.opens)):
            for sec in enumerate_algebra_sections(space, F3, u):
                enumerated = sec.is_nowhere_zero_enumerated()
                fast = sec.is_nowhere_zero()
                componentwise = all(v != F3.zero for v in sec.values)
                try:
                    sec.invert()
                    invertible = True
                except Exception:
                    invertible = False
                assert enumerated == fast == invertible == componentwise
                exhaustive += 1
    rng = Random(707)
    randomized = 0
    for _ in range(1000):
        space = SPACES[rng.randrange(len(SPACES))]
        u = rng.randrange(len(space.opens))
        values = tuple(
            Q.random_scalar(rng) if rng.random() < 0.7 else Q.zero
            for _ in space.components_of(u)
        )
        sec = AlgebraSection(space, Q, u, values)
        fast = sec.is_nowhere_zero()
        componentwise = all(v != Q.zero for v in values)
        try:
            inv = sec.invert()
            invertible = True
            assert (inv * sec).values == tuple(Q.one for _ in values)
        except Exception:
            invertible = False
        assert fast == invertible == componentwise == sec.is_nowhere_zero_enumerated()
        randomized += 1
    verdict(
        "07 scholium axiom",
        randomized == 1000,
        f"nowhere-zero <=> invertible <=> componentwise non-zero on "
        f"{exhaustive} exhaustive GF(3) sections and {randomized} random "
        f"rational sections",
    )


def test_criterion_08_hyperbolic_envelope():
    rng = Random(808)
    checked = 0
    for i in range(100):
        space = SPACES[i % len(SPACES)]
        rank = (2, 4, 6, 8)[rng.randrange(4)]
        module = FreeModule(space, Q, rank)
        if i % 2 == 0:
            form = standard_symplectic_form(module)
        else:
            form = random_alternating_form(rng, module)
        k = rng.randrange(rank // 2 + 1)
        f = random_totally_isotropic(rng, form, k)
        planes = hyperbolic_envelope(form, f)
        assert len(planes) == k
        assert certify_envelope(form, f, planes)
        basis = f.global_basis()
        for idx, plane in enumerate(planes):
            assert plane.span.contains(basis[idx])
            assert form.evaluate(plane.r, plane.s).is_nowhere_zero()
            for other in planes[idx + 1 :]:
                for x in (plane.r, plane.s):
                    for y in (other.r, other.s):
                        assert form.evaluate(x, y).is_zero()
        checked += 1
    verdict(
        "08 hyperbolic envelope",
        checked == 100,
        f"planes pairwise orthogonal, non-isotropic, r_i in H_i for "
        f"{checked} totally isotropic submodules (rank <= 8, k <= rank/2)",
    )


def test_criterion_09_witt_extension():
    rng = Random(909)
    checked = 0
    gated = 0
    for i in range(100):
        space = SPACES[i % len(SPACES)]
        rank = (4, 6, 8)[rng.randrange(3)]
        n = rank // 2
        module = FreeModule(space, Q, rank)
        source = random_alternating_form(rng, module)
        target = random_alternating_form(rng, module)
        shape = ("isotropic", "hyperbolic", "mixed")[i % 3]
        basis = gram_schmidt_extend(source, PartialFamily.of())
        if shape == "isotropic":
            iso_count, hyp_count = rng.randrange(1, n + 1), 0
        elif shape == "hyperbolic":
            iso_count, hyp_count = 0, rng.randrange(1, n + 1)
        else:
            iso_count = rng.randrange(1, n)
            hyp_count = rng.randrange(1, n - iso_count + 1)
        picks = rng.sample(range(n), iso_count + hyp_count)
        sections = [basis.r[j] for j in picks[:iso_count]]
        for j in picks[iso_count:]:
            sections.append(basis.r[j])
            sections.append(basis.s[j])
        f = span(module, sections)
        carrier = random_symplectic_isometry(rng, source, target)
        fb = f.global_basis()
        images = [carrier.apply(sec) for sec in fb]
        try:
            iso = witt_extend(source, target, f, images)
        except FreenessViolated:
            gated += 1
            continue
        for m, g, g2 in zip(iso.matrices, source.gram, target.gram):
            assert (
                linalg.matmul(linalg.transpose(m), linalg.matmul(g2, m)) == g
            )
        for sec, image in zip(fb, images):
            assert iso.apply(sec) == image
        checked += 1
    verdict(
        "09 Witt extension",
        checked + gated == 100,
        f"M^T G' M = G and agreement with sigma exact on {checked} instances "
        f"(isotropic/hyperbolic/mixed radical); {gated} hit the freeness gate",
    )


def test_criterion_10_negative_paths():
    # the non-free orthogonal fixture: alternating nondegenerate over one
    # component, degenerate symmetric over the other
    space = discrete_pair_space()
    module = FreeModule(space, Q, 2)
    mixed = BilinearForm(
        module,
        (
            ((Fraction(0), Fraction(1)), (Fraction(-1), Fraction(0))),
            ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(1))),
        ),
    )
    e1, _ = module.canonical_basis()
    f = span(module, [e1])
    perp = mixed.orthogonal(f)
    assert perp.dims == (1, 2)
    with pytest.raises(NotFree) as not_free:
        perp.global_basis()
    assert not_free.value.witness["dims"] == (1, 2)

    with pytest.raises(FreenessViolated):
        witt_extend(
            standard_symplectic_form(module),
            standard_symplectic_form(module),
            perp,
            [],
        )

    # the non-orthosymmetric witness re-evaluates as claimed
    sier = sierpinski_space()
    bad = BilinearForm(
        FreeModule(sier, Q, 2),
        (((Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))),),
    )
    cls = classify_orthosymmetry(bad)
    assert not cls.orthosymmetric
    w = cls.witness
    assert w is not None
    assert bad.evaluate(w.r, w.s).is_zero()
    assert bad.evaluate(w.s, w.r).is_nowhere_zero()
    with pytest.raises(NotOrthosymmetric):
        bad.radical()
    verdict(
        "10 negative paths",
        True,
        "dims-(1,2) orthogonal raises NotFree and FreenessViolated; "
        "asymmetric form yields a re-verified NotOrthosymmetric witness",
    )
