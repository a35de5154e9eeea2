"""Finite topological spaces with per-open connected component data.

A space is a finite ordered point set plus an explicit list of opens that is
validated to be a topology (empty set and total set present, closed under
pairwise union and intersection; finiteness makes pairwise closure enough).
Opens are referenced everywhere by their stable index in the list.

Components are computed through minimal open neighborhoods: U_x, the
intersection of all opens containing x, is itself open and connected, and two
points of an open U lie in the same component of U iff they are linked by a
chain x ~ y with y in U_x or x in U_y. Components of opens are again open
(finite spaces are locally connected); this is asserted defensively.
Component lists are ordered by their smallest point (in point order), which
fixes the layout of every section-valued structure built on top.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    MissingEmptyOrTotal,
    NotASubset,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
)

OpenRef = int


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple
    opens: tuple  # of frozensets, stable order
    components: tuple = field(compare=False)  # per open: tuple of frozensets

    @property
    def point_index(self):
        return {p: i for i, p in enumerate(self.points)}

    @property
    def x_ref(self) -> OpenRef:
        return self.opens.index(frozenset(self.points))

    @property
    def empty_ref(self) -> OpenRef:
        return self.opens.index(frozenset())

    def ref(self, pts) -> OpenRef:
        """Index of the open with exactly these points."""
        target = frozenset(pts)
        try:
            return self.opens.index(target)
        except ValueError:
            raise NotASubset(f"{set(pts)!r} is not an open of this space") from None

    def components_of(self, u: OpenRef):
        return self.components[u]

    def sub_opens(self, u: OpenRef):
        """Refs of all opens contained in opens[u]."""
        big = self.opens[u]
        return tuple(i for i, o in enumerate(self.opens) if o <= big)

    def component_refinement(self, v: OpenRef, u: OpenRef):
        """For each component of opens[v], the index of the component of
        opens[u] containing it. Requires opens[v] to be a subset of opens[u]."""
        vo, uo = self.opens[v], self.opens[u]
        if not vo <= uo:
            raise NotASubset(f"{set(vo)!r} is not contained in {set(uo)!r}")
        ucomps = self.components[u]
        out = []
        for comp in self.components[v]:
            rep = next(iter(comp))
            hits = [i for i, uc in enumerate(ucomps) if rep in uc]
            assert len(hits) == 1
            assert comp <= ucomps[hits[0]]  # connected piece lies in one component
            out.append(hits[0])
        return tuple(out)

    def __repr__(self):
        return f"FiniteSpace(points={list(self.points)!r}, opens={len(self.opens)})"


def _sorted_component(comp, index):
    return min(index[p] for p in comp)


def _components_of_open(u, min_nbhd, index):
    """Connected components of an open set, via minimal neighborhood chains."""
    remaining = set(u)
    comps = []
    while remaining:
        seed = min(remaining, key=index.get)
        block = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            for y in remaining - block:
                if y in min_nbhd[x] or x in min_nbhd[y]:
                    block.add(y)
                    frontier.append(y)
        comps.append(frozenset(block))
        remaining -= block
    comps.sort(key=lambda c: _sorted_component(c, index))
    return tuple(comps)


def validate_topology(points, candidate_opens) -> FiniteSpace:
    """Check the topology axioms and build the space, or raise with a witness.

    Duplicate candidate opens are dropped (first occurrence keeps the index).
    """
    points = tuple(points)
    if len(set(points)) != len(points):
        raise NotASubset("duplicate points")
    total = frozenset(points)

    opens = []
    for o in candidate_opens:
        fo = frozenset(o)
        if not fo <= total:
            raise NotASubset(f"open {set(fo)!r} contains points outside the space")
        if fo not in opens:
            opens.append(fo)

    if frozenset() not in opens or total not in opens:
        raise MissingEmptyOrTotal("opens must contain the empty set and the total set")

    open_set = set(opens)
    for i, a in enumerate(opens):
        for b in opens[i + 1 :]:
            if a | b not in open_set:
                raise NotClosedUnderUnion(
                    f"union of {set(a)!r} and {set(b)!r} is not open",
                    pair=(set(a), set(b)),
                )
            if a & b not in open_set:
                raise NotClosedUnderIntersection(
                    f"intersection of {set(a)!r} and {set(b)!r} is not open",
                    pair=(set(a), set(b)),
                )

    index = {p: i for i, p in enumerate(points)}
    min_nbhd = {}
    for p in points:
        nbhd = total
        for o in opens:
            if p in o:
                nbhd = nbhd & o
        assert nbhd in open_set  # closure under intersection makes U_x open
        min_nbhd[p] = nbhd

    components = []
    for o in opens:
        comps = _components_of_open(o, min_nbhd, index)
        for c in comps:
            assert c in open_set  # components of opens are open in finite spaces
        components.append(comps)

    return FiniteSpace(points=points, opens=tuple(opens), components=tuple(components))


def components_by_separation(space: FiniteSpace, u: OpenRef):
    """Brute-force components of an open, straight from the definition.

    A subset of U is clopen in U iff both it and its complement in U are
    opens of the space (U being open, relative opens are absolute ones).
    The component of x is the intersection of all clopen-in-U sets holding x;
    in finite spaces quasi-components are components.
    """
    big = space.opens[u]
    clopens = [o for o in space.opens if o <= big and (big - o) in set(space.opens)]
    index = space.point_index
    comps = []
    seen = set()
    for p in sorted(big, key=index.get):
        if p in seen:
            continue
        block = big
        for cl in clopens:
            if p in cl:
                block = block & cl
        comps.append(frozenset(block))
        seen |= block
    comps.sort(key=lambda c: min(index[q] for q in c))
    return tuple(comps)
