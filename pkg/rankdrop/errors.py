"""Errors raised by the library.

Every error carries a ``kind``: the class name, which the command line
reports verbatim so that pipelines can branch on it.
"""


class RankDropError(Exception):
    """Base class for all library errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class NonSquare(RankDropError):
    pass


class NotUnique(RankDropError):
    """The object asked for is not determined by the input."""


class DegenerateConic(RankDropError):
    pass


class PointNotOnConic(RankDropError):
    pass


class DegenerateInput(RankDropError):
    """Input violates a general-position requirement of a construction."""


class SideNotCollinear(RankDropError):
    pass


class NotGeneralPosition(RankDropError):
    pass


class HomographyRelated(RankDropError):
    """The pairs are related by one homography, so no sixth pair exists."""


class NoCommonPoint(RankDropError):
    pass


class CenterNotOnConic(RankDropError):
    pass


class NotDeficient(RankDropError):
    pass


class NoRationalCenter(RankDropError):
    """A projection center exists over the complex numbers only."""


class RankNotTwo(RankDropError):
    pass


class RankNotThree(RankDropError):
    pass


class NotOnSurface(RankDropError):
    pass


class ConfigFormatError(RankDropError, ValueError):
    """A configuration file could not be parsed or validated."""
