"""Error taxonomy.

Every failure mode carries a stable code (the class name) so scenario
reports can serialize it, plus whatever witness data explains the failure.
"""

from __future__ import annotations


class SheafFormsError(Exception):
    """Base class; `code` is the stable identifier used in reports."""

    @property
    def code(self) -> str:
        return type(self).__name__

    def __init__(self, message: str, **witness):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_report(self) -> dict:
        return {"code": self.code, "message": self.message}


# -- topology ---------------------------------------------------------------

class MissingEmptyOrTotal(SheafFormsError):
    pass


class NotClosedUnderUnion(SheafFormsError):
    pass


class NotClosedUnderIntersection(SheafFormsError):
    pass


class NotASubset(SheafFormsError):
    pass


# -- sections ---------------------------------------------------------------

class OpenMismatch(SheafFormsError):
    pass


class EmptyOpen(SheafFormsError):
    pass


class NotNowhereZero(SheafFormsError):
    pass


# -- modules ----------------------------------------------------------------

class ModuleMismatch(SheafFormsError):
    pass


class NotFree(SheafFormsError):
    pass


# -- bilinear ---------------------------------------------------------------

class NotOrthosymmetric(SheafFormsError):
    pass


class IsotropicSubmodule(SheafFormsError):
    pass


# -- symplectic -------------------------------------------------------------

class OddRank(SheafFormsError):
    pass


class NotAlternating(SheafFormsError):
    pass


class Degenerate(SheafFormsError):
    pass


class PartialRelationsViolated(SheafFormsError):
    pass


class PartnerNotFound(SheafFormsError):
    pass


class NotTotallyIsotropic(SheafFormsError):
    pass


class IsometryHypothesisViolated(SheafFormsError):
    pass


class FreenessViolated(SheafFormsError):
    pass


class RankMismatch(SheafFormsError):
    pass


# -- cli --------------------------------------------------------------------

class ParseError(SheafFormsError):
    pass


class UnknownSuite(SheafFormsError):
    pass
