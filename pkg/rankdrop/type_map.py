"""Error kinds mapped to command-line exit codes."""

from .constants import EXIT_CONSTRUCTION, EXIT_NOT_DEFICIENT, EXIT_USAGE

_ERROR_EXIT_MAP = {
    "ConfigFormatError": EXIT_USAGE,
    "NotGeneralPosition": EXIT_CONSTRUCTION,
    "NotDeficient": EXIT_NOT_DEFICIENT,
    "NonSquare": EXIT_CONSTRUCTION,
    "NotUnique": EXIT_CONSTRUCTION,
    "DegenerateConic": EXIT_CONSTRUCTION,
    "PointNotOnConic": EXIT_CONSTRUCTION,
    "DegenerateInput": EXIT_CONSTRUCTION,
    "SideNotCollinear": EXIT_CONSTRUCTION,
    "HomographyRelated": EXIT_CONSTRUCTION,
    "NoCommonPoint": EXIT_CONSTRUCTION,
    "CenterNotOnConic": EXIT_CONSTRUCTION,
    "NoRationalCenter": EXIT_CONSTRUCTION,
    "RankNotTwo": EXIT_CONSTRUCTION,
    "RankNotThree": EXIT_CONSTRUCTION,
    "NotOnSurface": EXIT_CONSTRUCTION,
}


def get_exit_code(kind: str) -> int:
    """Get exit code of an error kind.

    Always return a value.
    """
    return _ERROR_EXIT_MAP.get(kind, EXIT_CONSTRUCTION)
