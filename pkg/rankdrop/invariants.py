"""Invariants of six points: Coble scalars, Joubert invariants, cubics.

All three share the index patterns of ``constants.SEXTUPLE_PATTERNS``.
A summand (ij)(kl)(rs) is read as the triple invariant [(ij)(kl)(rs)]
for the Coble scalars, as [ij][kl][rs] for the Joubert invariants of
points on a line and as [iju][klu][rsu] for the covariant cubics.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence, Tuple

from .constants import SEXTUPLE_LABELS, SEXTUPLE_PATTERNS
from .exact_linalg import Scalar, normalize_vector, proportional, to_rat
from .projective import PointP1, PointP2, bracket2, bracket3


@dataclass(frozen=True)
class Sextuple:
    """Six rationals labeled a..f."""

    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 6:
            raise ValueError("a sextuple has six entries")
        object.__setattr__(
            self, "values", tuple(to_rat(v) for v in self.values)
        )

    @classmethod
    def of(cls, *values: Scalar) -> "Sextuple":
        return cls(tuple(to_rat(v) for v in values))

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __getitem__(self, label: str) -> Fraction:
        return self.values[SEXTUPLE_LABELS.index(label)]

    def is_zero(self) -> bool:
        return not any(self.values)

    def proportional_to(self, other: "Sextuple") -> bool:
        """All 15 cross-products vanish."""
        return proportional(self.values, other.values)

    def canonical(self) -> "Sextuple":
        """Integral representative up to scale; zero stays zero."""
        if self.is_zero():
            return self
        return Sextuple.of(*normalize_vector(self.values))

    def dot(self, other: "Sextuple") -> Fraction:
        return sum((a * b for a, b in zip(self, other)), Fraction(0))

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def cube_total(self) -> Fraction:
        return sum((v**3 for v in self.values), Fraction(0))


def triple_invariant(
    points: Sequence[PointP2], i: int, j: int, k: int, l: int, r: int, s: int
) -> Fraction:
    """[(ij)(kl)(rs)] = [ijr][kls] - [ijs][klr], indices from 1.

    Vanishes exactly when the lines p_i p_j, p_k p_l and p_r p_s meet in
    a point.
    """
    p = points

    def b(a: int, c: int, d: int) -> Fraction:
        return bracket3(p[a - 1], p[c - 1], p[d - 1])

    return b(i, j, r) * b(k, l, s) - b(i, j, s) * b(k, l, r)


def _sextuple(
    summand: Callable[[int, int, int, int, int, int], Fraction],
) -> Sextuple:
    return Sextuple(
        tuple(
            sum((summand(*term) for term in row), Fraction(0))
            for row in SEXTUPLE_PATTERNS
        )
    )


def coble_bar(points: Sequence[PointP2]) -> Sextuple:
    if len(points) != 6:
        raise ValueError("six points expected")
    return _sextuple(lambda *t: triple_invariant(points, *t))


def joubert(points: Sequence[PointP1]) -> Sextuple:
    if len(points) != 6:
        raise ValueError("six points expected")
    p = points

    def summand(i: int, j: int, k: int, l: int, r: int, s: int) -> Fraction:
        return (
            bracket2(p[i - 1], p[j - 1])
            * bracket2(p[k - 1], p[l - 1])
            * bracket2(p[r - 1], p[s - 1])
        )

    return _sextuple(summand)


def covariant_cubics(points: Sequence[PointP2], u: PointP2) -> Sextuple:
    if len(points) != 6:
        raise ValueError("six points expected")
    p = points

    def summand(i: int, j: int, k: int, l: int, r: int, s: int) -> Fraction:
        return (
            bracket3(p[i - 1], p[j - 1], u)
            * bracket3(p[k - 1], p[l - 1], u)
            * bracket3(p[r - 1], p[s - 1], u)
        )

    return _sextuple(summand)


def hexahedral_residuals(
    points: Sequence[PointP2], z: Sextuple
) -> Tuple[Fraction, Fraction, Fraction]:
    """Residuals of the hexahedral equations of the surface of ``points``.

    (sum of cubes, sum, bar-weighted sum); all zero iff z is on it.
    """
    return z.cube_total(), z.total(), coble_bar(points).dot(z)


def fifteen_lines_point(z1: Scalar, z2: Scalar, z3: Scalar) -> Sextuple:
    """Point of the plane z1+z4 = z2+z5 = z3+z6 = 0.

    Sum and cube sum vanish identically there, so the plane meets the
    surface in the line cut out by the bar-weighted equation alone.
    """
    a, b, c = to_rat(z1), to_rat(z2), to_rat(z3)
    return Sextuple.of(a, b, c, -a, -b, -c)


def fifteen_lines_residual(
    points: Sequence[PointP2], z1: Scalar, z2: Scalar, z3: Scalar
) -> Fraction:
    return hexahedral_residuals(points, fifteen_lines_point(z1, z2, z3))[2]


def line_case_form(xs: Sequence[PointP2], ys: Sequence[PointP1]) -> Fraction:
    """Pairing of the Coble scalars of xs with the Joubert invariants of ys.

    Vanishes exactly when the six pairs, ys read on a line, have a rank
    deficient Z_6.
    """
    return coble_bar(xs).dot(joubert(ys))
