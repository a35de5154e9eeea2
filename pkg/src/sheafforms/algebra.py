"""Sections of the structure algebra: locally constant field values.

A section over an open U assigns one scalar to each connected component of U.
Restriction along V <= U pulls values back through the component refinement
map, so restriction is exact and functorial by construction.

A section is nowhere-zero when its restriction to every non-empty sub-open is
non-zero. In this model that holds iff every component value is non-zero,
which is why nowhere-zero sections are exactly the invertible ones; both
routes are implemented (`is_nowhere_zero` and `is_nowhere_zero_enumerated`)
and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ModuleMismatch, NotNowhereZero, OpenMismatch
from .topology import FiniteSpace, OpenRef


@dataclass(frozen=True)
class AlgebraSection:
    space: FiniteSpace
    field: object
    open: OpenRef
    values: tuple  # one scalar per component of opens[open]

    def __post_init__(self):
        ncomp = len(self.space.components_of(self.open))
        if len(self.values) != ncomp:
            raise OpenMismatch(
                f"section over open {self.open} needs {ncomp} component values, "
                f"got {len(self.values)}"
            )

    @staticmethod
    def constant(space, field, open: OpenRef, scalar) -> "AlgebraSection":
        n = len(space.components_of(open))
        return AlgebraSection(space, field, open, (scalar,) * n)

    @staticmethod
    def zero(space, field, open: OpenRef) -> "AlgebraSection":
        return AlgebraSection.constant(space, field, open, field.zero)

    @staticmethod
    def unit(space, field, open: OpenRef) -> "AlgebraSection":
        return AlgebraSection.constant(space, field, open, field.one)

    def _check_compatible(self, other):
        if self.space != other.space or self.field != other.field:
            raise ModuleMismatch("sections belong to different algebras")
        if self.open != other.open:
            raise OpenMismatch(
                f"sections over different opens: {self.open} vs {other.open}"
            )

    def __add__(self, other):
        if not isinstance(other, AlgebraSection):
            return NotImplemented
        self._check_compatible(other)
        return AlgebraSection(
            self.space, self.field, self.open,
            tuple(a + b for a, b in zip(self.values, other.values)),
        )

    def __sub__(self, other):
        if not isinstance(other, AlgebraSection):
            return NotImplemented
        self._check_compatible(other)
        return AlgebraSection(
            self.space, self.field, self.open,
            tuple(a - b for a, b in zip(self.values, other.values)),
        )

    def __mul__(self, other):
        if not isinstance(other, AlgebraSection):
            return NotImplemented
        self._check_compatible(other)
        return AlgebraSection(
            self.space, self.field, self.open,
            tuple(a * b for a, b in zip(self.values, other.values)),
        )

    def __neg__(self):
        return AlgebraSection(
            self.space, self.field, self.open, tuple(-a for a in self.values)
        )

    def restrict(self, v: OpenRef) -> "AlgebraSection":
        refinement = self.space.component_refinement(v, self.open)
        return AlgebraSection(
            self.space, self.field, v, tuple(self.values[i] for i in refinement)
        )

    def is_zero(self) -> bool:
        return all(v == self.field.zero for v in self.values)

    def is_nowhere_zero(self) -> bool:
        """Fast criterion: no component value is zero."""
        return all(v != self.field.zero for v in self.values)

    def is_nowhere_zero_enumerated(self) -> bool:
        """Straight from the definition: every restriction to a non-empty
        sub-open is a non-zero section. Oracle route; must agree with the
        fast criterion."""
        for v in self.space.sub_opens(self.open):
            if v == self.space.empty_ref:
                continue
            if self.restrict(v).is_zero():
                return False
        return True

    def invert(self) -> "AlgebraSection":
        for i, v in enumerate(self.values):
            if v == self.field.zero:
                raise NotNowhereZero(
                    f"section vanishes on component {i} of open {self.open}",
                    component=i,
                )
        return AlgebraSection(
            self.space, self.field, self.open,
            tuple(self.field.one / v for v in self.values),
        )

    def __repr__(self):
        vals = ", ".join(self.field.format(v) for v in self.values)
        return f"AlgebraSection(open={self.open}, [{vals}])"
