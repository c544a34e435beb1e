"""Constants."""

from typing import Tuple

CANONICAL_FRAME: Tuple[Tuple[int, int, int], ...] = (
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 1, 1),
)
"""Images of the first four points under the frame fixing."""

FINITE_FRAME: Tuple[Tuple[int, int, int], ...] = (
    (0, 0, 1),
    (1, 0, 1),
    (0, 1, 1),
    (1, 1, 1),
)
"""Affine frame: all four points finite."""

MIN_PAIRS = 2
MAX_PAIRS = 6
MAX_PAIRS_P1 = 4

SEXTUPLE_LABELS = ("a", "b", "c", "d", "e", "f")

# Each summand (ij)(kl)(rs) of the six Coble scalars. The Joubert
# invariants and the covariant cubics share this index structure, with
# the summand read as [ij][kl][rs] and [iju][klu][rsu] respectively.
SEXTUPLE_PATTERNS: Tuple[Tuple[Tuple[int, int, int, int, int, int], ...], ...] = (
    (
        (2, 5, 1, 3, 4, 6),
        (5, 1, 4, 2, 3, 6),
        (1, 4, 3, 5, 2, 6),
        (4, 3, 2, 1, 5, 6),
        (3, 2, 5, 4, 1, 6),
    ),
    (
        (5, 3, 1, 2, 4, 6),
        (1, 4, 2, 3, 5, 6),
        (2, 5, 3, 4, 1, 6),
        (3, 1, 4, 5, 2, 6),
        (4, 2, 5, 1, 3, 6),
    ),
    (
        (5, 3, 4, 1, 2, 6),
        (3, 4, 2, 5, 1, 6),
        (4, 2, 1, 3, 5, 6),
        (2, 1, 5, 4, 3, 6),
        (1, 5, 3, 2, 4, 6),
    ),
    (
        (4, 5, 3, 1, 2, 6),
        (5, 3, 2, 4, 1, 6),
        (4, 1, 2, 5, 3, 6),
        (3, 2, 1, 5, 4, 6),
        (2, 1, 4, 3, 5, 6),
    ),
    (
        (3, 1, 2, 4, 5, 6),
        (1, 2, 5, 3, 4, 6),
        (2, 5, 4, 1, 3, 6),
        (5, 4, 3, 2, 1, 6),
        (4, 3, 1, 5, 2, 6),
    ),
    (
        (4, 2, 3, 5, 1, 6),
        (2, 3, 1, 4, 5, 6),
        (3, 1, 5, 2, 4, 6),
        (1, 5, 4, 3, 2, 6),
        (5, 4, 2, 1, 3, 6),
    ),
)

CONFIG_FILE_VERSION = "1"

EXIT_FULL_RANK = 0
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3
EXIT_NOT_DEFICIENT = 4
EXIT_DEFICIENT = 10
EXIT_FUZZ_VIOLATION = 20

FUZZ_REGIMES = (
    "generic",
    "collinear-side",
    "planted-coincidence",
    "planted-homography",
    "planted-degenerate",
)

MAX_FUZZ_COORDINATE = 9
"""Coordinates of fuzzed points are drawn from [-9, 9]."""

CENTER_SEARCH_HEIGHT = 12
"""Height bound of the fallback search for a rational projection center."""
