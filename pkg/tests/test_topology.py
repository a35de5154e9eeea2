"""Topology validation, component structure, and restriction plumbing."""

import itertools

import pytest

from sheafforms import (
    MissingEmptyOrTotal,
    NotASubset,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
    components_by_separation,
    validate_topology,
)


def test_accepts_standard_spaces(point_space, sierpinski, discrete_pair, three_point):
    assert len(point_space.opens) == 2
    assert len(sierpinski.opens) == 3
    assert len(discrete_pair.opens) == 4
    assert len(three_point.opens) == 5


def test_missing_empty_rejected():
    with pytest.raises(MissingEmptyOrTotal):
        validate_topology(("a",), [("a",)])


def test_missing_total_rejected():
    with pytest.raises(MissingEmptyOrTotal):
        validate_topology(("a", "b"), [(), ("a",)])


def test_union_axiom_rejected():
    with pytest.raises(NotClosedUnderUnion) as err:
        validate_topology(
            ("a", "b", "c"), [(), ("a",), ("b",), ("a", "b", "c")]
        )
    assert "pair" in err.value.witness


def test_intersection_axiom_rejected():
    with pytest.raises(NotClosedUnderIntersection) as err:
        validate_topology(
            ("a", "b", "c"),
            [(), ("a", "b"), ("b", "c"), ("a", "b", "c")],
        )
    assert "pair" in err.value.witness


def test_stray_point_rejected():
    with pytest.raises(NotASubset):
        validate_topology(("a",), [(), ("a",), ("b",)])


def test_duplicate_point_rejected():
    with pytest.raises(NotASubset):
        validate_topology(("a", "a"), [(), ("a",)])


def test_duplicate_opens_collapse():
    space = validate_topology(("a",), [(), ("a",), ()])
    assert len(space.opens) == 2


def test_ref_rejects_non_open(discrete_pair):
    with pytest.raises(NotASubset):
        discrete_pair.ref(("c",))


def test_component_counts(sierpinski, discrete_pair, three_point):
    assert len(sierpinski.components_of(sierpinski.x_ref)) == 1
    assert len(discrete_pair.components_of(discrete_pair.x_ref)) == 2
    # c is glued to both a and b through the total set
    assert len(three_point.components_of(three_point.x_ref)) == 1
    ab = three_point.ref(("a", "b"))
    assert len(three_point.components_of(ab)) == 2


def test_components_are_ordered_by_first_point(discrete_pair):
    comps = discrete_pair.components_of(discrete_pair.x_ref)
    assert sorted(comps[0])[0] == "a"
    assert sorted(comps[1])[0] == "b"


def test_components_match_separation_oracle(
    point_space, sierpinski, discrete_pair, three_point
):
    # brute force: quasi-components from clopen separation agree with the
    # adjacency-based computation on every open of every fixture
    for space in (point_space, sierpinski, discrete_pair, three_point):
        for u in range(len(space.opens)):
            assert set(space.components_of(u)) == set(
                components_by_separation(space, u)
            )


def test_components_of_open_are_open(three_point):
    for u in range(len(three_point.opens)):
        for comp in three_point.components_of(u):
            three_point.ref(tuple(sorted(comp)))  # raises if not open


def test_refinement_maps_into_components(three_point):
    x = three_point.x_ref
    ab = three_point.ref(("a", "b"))
    ref = three_point.component_refinement(ab, x)
    assert len(ref) == 2
    assert all(r == 0 for r in ref)  # the total set is connected


def test_refinement_is_functorial(three_point):
    # W <= V <= U: composing V->U with W->V equals W->U
    space = three_point
    opens = range(len(space.opens))
    for w, v, u in itertools.product(opens, repeat=3):
        w_pts, v_pts, u_pts = (set(space.opens[i]) for i in (w, v, u))
        if not (w_pts <= v_pts <= u_pts):
            continue
        w_to_v = space.component_refinement(w, v)
        v_to_u = space.component_refinement(v, u)
        w_to_u = space.component_refinement(w, u)
        assert tuple(v_to_u[i] for i in w_to_v) == w_to_u


def test_refinement_requires_subset(three_point):
    with pytest.raises(NotASubset):
        three_point.component_refinement(
            three_point.x_ref, three_point.ref(("a",))
        )


def test_all_sub_opens_enumerated(discrete_pair):
    subs = discrete_pair.sub_opens(discrete_pair.x_ref)
    assert len(subs) == 4
    a_only = discrete_pair.ref(("a",))
    assert discrete_pair.sub_opens(a_only) == (discrete_pair.empty_ref, a_only)
