"""Projective points, brackets, cross-ratios, conics and homographies.

Points are stored by their canonical integer representative (coprime,
first nonzero coordinate positive), so equality up to scale is plain
equality of dataclasses.
"""

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import (
    ClassVar,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

from .constants import MAX_PAIRS, MIN_PAIRS
from .errors import (
    DegenerateConic,
    DegenerateInput,
    NotUnique,
    PointNotOnConic,
    SideNotCollinear,
)
from .exact_linalg import (
    QMatrix,
    Scalar,
    Vector,
    adjugate,
    det,
    dot,
    normalize_vector,
    null_space,
)


@dataclass(frozen=True)
class ProjectivePoint:
    coords: Tuple[int, ...]

    DIMENSION: ClassVar[int] = 0

    def __post_init__(self) -> None:
        if len(self.coords) != self.DIMENSION + 1:
            raise ValueError(
                f"{type(self).__name__} needs {self.DIMENSION + 1} "
                f"coordinates, got {len(self.coords)}"
            )
        object.__setattr__(self, "coords", normalize_vector(self.coords))

    @property
    def vector(self) -> Vector:
        return tuple(Fraction(c) for c in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class PointP2(ProjectivePoint):
    DIMENSION: ClassVar[int] = 2

    @classmethod
    def of(cls, *values: Scalar) -> "PointP2":
        return cls(normalize_vector(values))

    def is_finite(self) -> bool:
        return self.coords[2] != 0


@dataclass(frozen=True)
class PointP1(ProjectivePoint):
    DIMENSION: ClassVar[int] = 1

    @classmethod
    def of(cls, *values: Scalar) -> "PointP1":
        return cls(normalize_vector(values))


Point = Union[PointP1, PointP2]
P = TypeVar("P", PointP1, PointP2)


@dataclass(frozen=True)
class PointPair:
    x: Point
    y: Point

    def __post_init__(self) -> None:
        if type(self.x) is not type(self.y):
            raise ValueError("both points of a pair must live in one space")


@dataclass(frozen=True)
class Config:
    """Ordered point pairs; the order enters every bracket equation."""

    pairs: Tuple[PointPair, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if not MIN_PAIRS <= len(self.pairs) <= MAX_PAIRS:
            raise ValueError(
                f"a configuration has {MIN_PAIRS} to {MAX_PAIRS} pairs, "
                f"got {len(self.pairs)}"
            )
        if len({type(p.x) for p in self.pairs}) != 1:
            raise ValueError("mixed P1 and P2 pairs")

    @classmethod
    def of(
        cls, xs: Sequence[Sequence[Scalar]], ys: Sequence[Sequence[Scalar]]
    ) -> "Config":
        """Build from coordinate lists; the length picks P1 or P2."""
        if len(xs) != len(ys):
            raise ValueError("x and y lists differ in length")
        pairs = []
        for x, y in zip(xs, ys):
            kind = PointP2 if len(x) == 3 else PointP1
            pairs.append(PointPair(kind.of(*x), kind.of(*y)))
        return cls(tuple(pairs))

    @classmethod
    def from_points(
        cls, xs: Sequence[Point], ys: Sequence[Point]
    ) -> "Config":
        if len(xs) != len(ys):
            raise ValueError("x and y lists differ in length")
        return cls(tuple(PointPair(x, y) for x, y in zip(xs, ys)))

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def xs(self) -> List[Point]:
        return [p.x for p in self.pairs]

    @property
    def ys(self) -> List[Point]:
        return [p.y for p in self.pairs]

    @property
    def dimension(self) -> int:
        return self.pairs[0].x.DIMENSION

    def side(self, name: str) -> List[Point]:
        if name == "x":
            return self.xs
        if name == "y":
            return self.ys
        raise ValueError(f"unknown side {name!r}")

    def subset(self, indices: Iterable[int]) -> "Config":
        """Sub-configuration on 0-based pair indices, in the given order."""
        return Config(tuple(self.pairs[i] for i in indices))

    def swapped(self) -> "Config":
        """Exchange the roles of x and y."""
        return Config(tuple(PointPair(p.y, p.x) for p in self.pairs))


class ExtKind(enum.Enum):
    FINITE = "finite"
    INFINITY = "infinity"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ExtRat:
    """A rational, infinity, or the indeterminate 0/0."""

    kind: ExtKind
    value: Optional[Fraction] = None

    @classmethod
    def ratio(cls, numerator: Fraction, denominator: Fraction) -> "ExtRat":
        if denominator != 0:
            return cls(ExtKind.FINITE, Fraction(numerator) / denominator)
        if numerator != 0:
            return cls(ExtKind.INFINITY)
        return cls(ExtKind.INDETERMINATE)

    @classmethod
    def finite(cls, value: Scalar) -> "ExtRat":
        return cls(ExtKind.FINITE, Fraction(value))

    def __str__(self) -> str:
        if self.kind is ExtKind.INFINITY:
            return "inf"
        if self.kind is ExtKind.INDETERMINATE:
            return "0/0"
        return str(self.value)


def cross(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    """Cross product of two 3-vectors: the line through two points."""
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def bracket3(a: PointP2, b: PointP2, c: PointP2) -> Fraction:
    """Determinant of the three canonical representatives as rows."""
    return dot(cross(b.vector, c.vector), a.vector)


def bracket2(a: PointP1, b: PointP1) -> Fraction:
    (a0, a1), (b0, b1) = a.coords, b.coords
    return Fraction(a0 * b1 - a1 * b0)


def cross_ratio_p1(
    p1: PointP1, p2: PointP1, p3: PointP1, p4: PointP1
) -> ExtRat:
    return ExtRat.ratio(
        bracket2(p1, p3) * bracket2(p2, p4),
        bracket2(p1, p4) * bracket2(p2, p3),
    )


def planar_cross_ratio(
    p1: PointP2, p2: PointP2, p3: PointP2, p4: PointP2, p5: PointP2
) -> ExtRat:
    """Cross-ratio of the four lines joining p5 to p1..p4."""
    return ExtRat.ratio(
        bracket3(p1, p3, p5) * bracket3(p2, p4, p5),
        bracket3(p1, p4, p5) * bracket3(p2, p3, p5),
    )


def collinear(points: Sequence[PointP2]) -> bool:
    """Whether all points lie on one line (true for fewer than 3)."""
    distinct = list(dict.fromkeys(points))
    if len(distinct) <= 2:
        return True
    line = cross(distinct[0].vector, distinct[1].vector)
    return all(dot(line, p.vector) == 0 for p in distinct[2:])


def line_through(points: Sequence[PointP2]) -> PointP2:
    """Dual coordinates of the line carrying collinear points.

    If all points coincide, the line through them and the first
    coordinate point distinct from them is used.
    """
    distinct = list(dict.fromkeys(points))
    if not distinct:
        raise ValueError("no points given")
    if len(distinct) == 1:
        base = distinct[0]
        helper = next(
            PointP2(e)
            for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))
            if PointP2(e) != base
        )
        distinct.append(helper)
    line = cross(distinct[0].vector, distinct[1].vector)
    if any(dot(line, p.vector) != 0 for p in distinct[2:]):
        raise SideNotCollinear("points are not collinear")
    return PointP2.of(*line)


def meet(l1: PointP2, l2: PointP2) -> PointP2:
    """Intersection point of two distinct lines."""
    return PointP2.of(*cross(l1.vector, l2.vector))


@dataclass(frozen=True)
class Homography:
    """Invertible projective map, canonical up to scale."""

    matrix: QMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if not m.is_square():
            raise ValueError("a homography needs a square matrix")
        if det(m) == 0:
            raise DegenerateInput("singular matrix is not a homography")
        object.__setattr__(
            self, "matrix", QMatrix.from_flat(normalize_vector(m.flat()), m.cols)
        )

    @classmethod
    def of(cls, rows: Iterable[Iterable[Scalar]]) -> "Homography":
        return cls(QMatrix.of(rows))

    @classmethod
    def identity(cls, n: int = 3) -> "Homography":
        return cls(QMatrix.identity(n))

    @property
    def size(self) -> int:
        return self.matrix.rows

    def apply(self, point: P) -> P:
        if len(point.coords) != self.size:
            raise ValueError("point and homography dimensions differ")
        return type(point)(normalize_vector(self.matrix.apply(point.vector)))

    def apply_all(self, points: Iterable[P]) -> List[P]:
        return [self.apply(p) for p in points]

    def inverse(self) -> "Homography":
        return Homography(adjugate(self.matrix))

    def __matmul__(self, other: "Homography") -> "Homography":
        """Composition: (self @ other)(p) = self(other(p))."""
        return Homography(self.matrix @ other.matrix)


def coordinate_line_homography(line: PointP2) -> Homography:
    """Homography sending ``line`` to the coordinate line z = 0.

    The rows are the two unit vectors missing the last nonzero index of
    the line, followed by the line itself. A line that already is z = 0
    gives the identity; y = 0 gives (x, z, y).
    """
    last = max(i for i, c in enumerate(line.coords) if c != 0)
    rows: List[Tuple[int, ...]] = [
        tuple(1 if j == i else 0 for j in range(3))
        for i in range(3)
        if i != last
    ]
    rows.append(line.coords)
    return Homography.of(rows)


def to_line_points(points: Sequence[PointP2]) -> List[PointP1]:
    """P1 coordinates of collinear points.

    The carrying line is moved to z = 0 and the vanishing coordinate
    dropped; brackets scale by one common factor.
    """
    h = coordinate_line_homography(line_through(points))
    reduced = []
    for p in h.apply_all(points):
        if p.coords[2] != 0:
            raise SideNotCollinear("points are not collinear")
        reduced.append(PointP1.of(*p.coords[:2]))
    return reduced


def _conic_monomials(p: PointP2) -> Tuple[int, ...]:
    x, y, z = p.coords
    return (x * x, x * y, y * y, x * z, y * z, z * z)


@dataclass(frozen=True)
class Conic:
    """Plane conic given by its six quadratic-form coefficients.

    The coefficients multiply x², xy, y², xz, yz, z² and are canonical
    up to scale.
    """

    coefficients: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) != 6:
            raise ValueError("a conic has six coefficients")
        object.__setattr__(
            self, "coefficients", normalize_vector(self.coefficients)
        )

    @classmethod
    def from_matrix(cls, sym: QMatrix) -> "Conic":
        if sym.shape != (3, 3) or sym != sym.transpose():
            raise ValueError("conic matrix must be symmetric 3x3")
        return cls(
            normalize_vector(
                (
                    sym[0, 0],
                    2 * sym[0, 1],
                    sym[1, 1],
                    2 * sym[0, 2],
                    2 * sym[1, 2],
                    sym[2, 2],
                )
            )
        )

    @property
    def sym(self) -> QMatrix:
        a, b, c, d, e, f = (Fraction(v) for v in self.coefficients)
        return QMatrix.of(
            [[a, b / 2, d / 2], [b / 2, c, e / 2], [d / 2, e / 2, f]]
        )

    def value(self, p: PointP2) -> Fraction:
        return Fraction(
            sum(c * m for c, m in zip(self.coefficients, _conic_monomials(p)))
        )

    def contains(self, p: PointP2) -> bool:
        return self.value(p) == 0

    def is_degenerate(self) -> bool:
        return det(self.sym) == 0

    def transformed(self, h: Homography) -> "Conic":
        """Image conic: contains h(p) exactly when self contains p."""
        inverse = adjugate(h.matrix)
        return Conic.from_matrix(inverse.transpose() @ self.sym @ inverse)

    def bilinear(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return dot(u, self.sym.apply(v))

    def second_intersection(
        self, p: PointP2, direction: Sequence[Fraction]
    ) -> Optional[PointP2]:
        """Other point where the line through p along direction meets self.

        Returns None when the line is tangent at p or lies on the conic.
        """
        q = p.vector
        quadratic = self.bilinear(direction, direction)
        linear = self.bilinear(q, direction)
        point = [quadratic * a - 2 * linear * b for a, b in zip(q, direction)]
        if not any(point):
            return None
        result = PointP2.of(*point)
        return None if result == p else result


def small_vectors(max_height: int) -> Iterator[Tuple[int, int, int]]:
    """Nonzero integer 3-vectors by increasing height, each class once."""
    for height in range(1, max_height + 1):
        for v in itertools.product(range(-height, height + 1), repeat=3):
            if max(abs(c) for c in v) != height:
                continue
            if next(c for c in v if c != 0) < 0:
                continue
            yield v


def rational_points_on_conic(
    w: Conic, seed: PointP2, max_height: int = 6
) -> Iterator[PointP2]:
    """Rational points of w, found on lines through a known point seed.

    Deterministic: the lines are enumerated by the height of their
    direction vector.
    """
    if not w.contains(seed):
        raise PointNotOnConic(f"{seed} is not on the conic")
    seen = {seed}
    for direction in small_vectors(max_height):
        found = w.second_intersection(seed, [Fraction(d) for d in direction])
        if found is not None and found not in seen:
            seen.add(found)
            yield found


def conic_through_5(
    p1: PointP2, p2: PointP2, p3: PointP2, p4: PointP2, p5: PointP2
) -> Conic:
    system = QMatrix.of(_conic_monomials(p) for p in (p1, p2, p3, p4, p5))
    kernel = null_space(system)
    if len(kernel) != 1:
        raise NotUnique(
            f"{len(kernel)}-dimensional family of conics through the points"
        )
    return Conic(normalize_vector(kernel[0]))


def six_on_conic(points: Sequence[PointP2]) -> bool:
    """Bracket criterion for six points lying on one conic."""
    if len(points) != 6:
        raise ValueError("six points expected")
    p = dict(enumerate(points, start=1))

    def b(i: int, j: int, k: int) -> Fraction:
        return bracket3(p[i], p[j], p[k])

    return b(1, 3, 5) * b(2, 4, 5) * b(1, 4, 6) * b(2, 3, 6) == b(
        1, 3, 6
    ) * b(2, 4, 6) * b(1, 4, 5) * b(2, 3, 5)


def conic_cross_ratio(
    w: Conic,
    p1: PointP2,
    p2: PointP2,
    p3: PointP2,
    p4: PointP2,
    auxiliary: Optional[PointP2] = None,
) -> ExtRat:
    """Cross-ratio of four points on a conic seen from a fifth point.

    Without ``auxiliary`` the fifth point is the first rational conic
    point, found from p1, that differs from the four.
    """
    if w.is_degenerate():
        raise DegenerateConic("conic cross-ratio needs a smooth conic")
    quad = (p1, p2, p3, p4)
    for p in quad:
        if not w.contains(p):
            raise PointNotOnConic(f"{p} is not on the conic")
    if auxiliary is None:
        auxiliary = next(
            q for q in rational_points_on_conic(w, p1) if q not in quad
        )
    elif not w.contains(auxiliary) or auxiliary in quad:
        raise PointNotOnConic("auxiliary point must be a new conic point")
    return planar_cross_ratio(p1, p2, p3, p4, auxiliary)


def _incidence_rows(
    src: Sequence[Fraction], dst: Sequence[Fraction]
) -> List[List[Fraction]]:
    """Rows of dst x (H src) = 0, linear in the row-major entries of H."""
    n = len(src)
    rows = []
    for a, b in itertools.combinations(range(n), 2):
        row = [Fraction(0)] * (n * n)
        for c in range(n):
            row[b * n + c] += dst[a] * src[c]
            row[a * n + c] -= dst[b] * src[c]
        rows.append(row)
    return rows


def fit_homography(src: Sequence[P], dst: Sequence[P]) -> Homography:
    """Unique homography with H(src_i) = dst_i, from the incidence system."""
    if len(src) != len(dst):
        raise ValueError("source and target lists differ in length")
    rows = [
        row
        for s, d in zip(src, dst)
        for row in _incidence_rows(s.vector, d.vector)
    ]
    kernel = null_space(QMatrix.of(rows))
    if len(kernel) != 1:
        raise DegenerateInput(
            f"{len(kernel)}-dimensional solution space for the homography"
        )
    size = len(src[0].coords)
    try:
        return Homography(QMatrix.from_flat(kernel[0], size))
    except DegenerateInput:
        raise DegenerateInput("the fitted map is singular") from None


def no_three_collinear(points: Sequence[PointP2]) -> bool:
    return all(
        bracket3(a, b, c) != 0 for a, b, c in itertools.combinations(points, 3)
    )


def homography_from_4(
    src: Sequence[PointP2], dst: Sequence[PointP2]
) -> Homography:
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("four correspondences expected")
    if not (no_three_collinear(src) and no_three_collinear(dst)):
        raise DegenerateInput("three of the four points are collinear")
    return fit_homography(src, dst)


def homography_p1_from_3(
    src: Sequence[PointP1], dst: Sequence[PointP1]
) -> Homography:
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("three correspondences expected")
    if len(set(src)) != 3 or len(set(dst)) != 3:
        raise DegenerateInput("P1 homography needs three distinct points")
    return fit_homography(src, dst)


def general_position_p2(points: Sequence[PointP2]) -> bool:
    """No three collinear and, for six points, not all on a conic."""
    if not 1 <= len(points) <= 6:
        raise ValueError("between one and six points expected")
    if not no_three_collinear(points):
        return False
    return len(points) < 6 or not six_on_conic(points)


def maps_onto(h: Homography, c: Config, indices: Iterable[int]) -> bool:
    return all(h.apply(c.pairs[i].x) == c.pairs[i].y for i in indices)


def general_position_pairs(c: Config) -> bool:
    """Sides in general position and no five pairs share a homography."""
    if c.k != 6:
        raise ValueError("six pairs expected")
    xs, ys = c.xs, c.ys
    if not (general_position_p2(xs) and general_position_p2(ys)):
        return False
    for subset in itertools.combinations(range(6), 5):
        first, last = subset[:4], subset[4]
        h = homography_from_4([xs[i] for i in first], [ys[i] for i in first])
        if maps_onto(h, c, [last]):
            return False
    return True


def homography_relating(c: Config) -> Optional[Homography]:
    """The homography mapping every x_i to y_i, if there is one.

    The map is fitted on the first four pairs with no three collinear
    points on either side; without such a quadruple the answer is None.
    """
    xs, ys = c.xs, c.ys
    for quad in itertools.combinations(range(c.k), 4):
        src = [xs[i] for i in quad]
        dst = [ys[i] for i in quad]
        if no_three_collinear(src) and no_three_collinear(dst):
            h = homography_from_4(src, dst)
            return h if maps_onto(h, c, range(c.k)) else None
    return None

