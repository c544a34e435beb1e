"""The face-splitting matrix Z_k and its rank-preserving transformations.

Column convention: the row of a pair (x, y) has entry x_a * y_b at
column n*a + b (0-based, n coordinates per point). For points of P2 this
is (x1y1, x1y2, x1y3, x2y1, ..., x3y3), the column-stacked vec(y x^T).
``vec_to_matrix`` and ``matrix_to_vec`` are the only other places that
know this.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .constants import CANONICAL_FRAME, FINITE_FRAME
from .exact_linalg import QMatrix, Vector, dot, rank
from .projective import (
    Config,
    Homography,
    Point,
    PointP2,
    PointPair,
    coordinate_line_homography,
    homography_from_4,
)


def kron_row(x: Point, y: Point) -> Vector:
    """The row x^T (Kronecker) y^T."""
    return tuple(Fraction(a * b) for a in x.coords for b in y.coords)


def vec_to_matrix(v: Sequence[Fraction], n: int = 3) -> QMatrix:
    """Inverse of vec: M with y^T M x equal to the row pairing v."""
    return QMatrix.of([[v[n * a + b] for a in range(n)] for b in range(n)])


def matrix_to_vec(m: QMatrix) -> Vector:
    n = m.rows
    return tuple(m[b, a] for a in range(n) for b in range(n))


def kron(a: QMatrix, b: QMatrix) -> QMatrix:
    return QMatrix.of(
        [
            [a[i, j] * b[k, m] for j in range(a.cols) for m in range(b.cols)]
            for i in range(a.rows)
            for k in range(b.rows)
        ]
    )


@dataclass(frozen=True)
class FaceSplit:
    config: Config
    z: QMatrix

    @property
    def rank(self) -> int:
        return rank(self.z)

    @property
    def deficient(self) -> bool:
        return self.rank < self.config.k

    def nonzero_columns(self) -> List[int]:
        return [j for j in range(self.z.cols) if any(self.z.column(j))]


def build_z(c: Config) -> FaceSplit:
    return FaceSplit(c, QMatrix.of(kron_row(p.x, p.y) for p in c.pairs))


def z_rank(c: Config) -> int:
    return rank(build_z(c).z)


def bilinear_pairing(m: QMatrix, x: Point, y: Point) -> Fraction:
    """y^T M x, which equals the Z row of (x, y) dotted with vec(M)."""
    return dot(y.vector, m.apply(x.vector))


def transform(c: Config, h1: Homography, h2: Homography) -> Config:
    """Apply h1 to every x and h2 to every y; rank(Z) is unchanged."""
    return Config(tuple(PointPair(h1.apply(p.x), h2.apply(p.y)) for p in c.pairs))


def _avoiding_line(points: Sequence[PointP2]) -> PointP2:
    """Integer line of least height missing every point."""
    vectors = [p.coords for p in points]
    for height in itertools.count(1):
        for line in itertools.product(range(-height, height + 1), repeat=3):
            if max(abs(v) for v in line) != height:
                continue
            if all(sum(a * b for a, b in zip(line, v)) != 0 for v in vectors):
                return PointP2.of(*line)
    raise AssertionError("unreachable")


def move_to_finite(c: Config) -> Tuple[Config, Homography, Homography]:
    """Equivalent config with every third coordinate nonzero.

    One homography, sending a line that misses all points to the line at
    infinity, is applied to both sides.
    """
    identity = Homography.identity()
    points = c.xs + c.ys
    if all(p.is_finite() for p in points):
        return c, identity, identity
    h = coordinate_line_homography(_avoiding_line(points))
    return transform(c, h, h), h, h


def _fix(
    c: Config, frame: Sequence[Tuple[int, int, int]]
) -> Tuple[Config, Homography, Homography]:
    target = [PointP2(p) for p in frame]
    h1 = homography_from_4(c.xs[:4], target)
    h2 = homography_from_4(c.ys[:4], target)
    return transform(c, h1, h2), h1, h2


def frame_fixing(c: Config) -> Tuple[Config, Homography, Homography]:
    """Send the first four points of each side to the coordinate frame.

    Raises DegenerateInput when three of them are collinear.
    """
    return _fix(c, CANONICAL_FRAME)


def finite_fixing(c: Config) -> Tuple[Config, Homography, Homography]:
    """Send the first four points of each side to an affine unit square."""
    return _fix(c, FINITE_FRAME)
