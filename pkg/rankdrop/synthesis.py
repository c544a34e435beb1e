"""Constructions of rank-deficient configurations and their projections.

The closed formulas for the sixth pair and for the y-completion hold in
the frame where the first four points of each side are the coordinate
points and (1, 1, 1). Inputs are moved there and results pulled back.
Polynomial elimination (conic intersections, projection centers) is
done exactly with sympy over the rationals.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

import sympy

from .constants import (
    CANONICAL_FRAME,
    CENTER_SEARCH_HEIGHT,
    SEXTUPLE_PATTERNS,
)
from .errors import (
    CenterNotOnConic,
    DegenerateInput,
    HomographyRelated,
    NoCommonPoint,
    NoRationalCenter,
    NotDeficient,
    SideNotCollinear,
)
from .exact_linalg import QMatrix, Vector, normalize_vector, null_space, rank
from .facesplit import frame_fixing, z_rank
from .invariants import covariant_cubics, joubert, line_case_form
from .projective import (
    Config,
    Conic,
    PointP1,
    PointP2,
    PointPair,
    collinear,
    conic_cross_ratio,
    conic_through_5,
    cross,
    cross_ratio_p1,
    homography_from_4,
    homography_p1_from_3,
    no_three_collinear,
    small_vectors,
    to_line_points,
)

log = logging.getLogger(__name__)

_X, _Y, _Z = sympy.symbols("X Y Z")


@dataclass(frozen=True)
class ProjectionMap:
    """Rank-2 linear map P2 -> P1 with kernel ``center``."""

    t: QMatrix
    center: PointP2

    def __post_init__(self) -> None:
        if self.t.shape != (2, 3) or rank(self.t) != 2:
            raise ValueError("a projection is a 2x3 matrix of rank 2")
        if any(self.t.apply(self.center.vector)):
            raise ValueError("the center is not the kernel of the map")
        object.__setattr__(
            self, "t", QMatrix.from_flat(normalize_vector(self.t.flat()), 3)
        )

    @classmethod
    def of(cls, t: QMatrix) -> "ProjectionMap":
        (kernel,) = null_space(t)
        return cls(t, PointP2.of(*kernel))

    def apply(self, x: PointP2) -> Optional[PointP1]:
        """Image of x; None for the center."""
        image = self.t.apply(x.vector)
        return PointP1.of(*image) if any(image) else None

    def maps(self, x: PointP2, y: PointP1) -> bool:
        return self.apply(x) == y


def embed_line_point(p: PointP1) -> PointP2:
    """The point (a, b, 0) of the line z = 0."""
    return PointP2.of(*p.coords, 0)


def _cleared(numerators: Vector, denominators: Vector) -> Vector:
    """(a1/d1, a2/d2, a3/d3) scaled by d1*d2*d3."""
    (a1, a2, a3), (d1, d2, d3) = numerators, denominators
    return (a1 * d2 * d3, a2 * d1 * d3, a3 * d1 * d2)


def _frame_point(numerators: Vector, denominators: Vector) -> PointP2:
    v = _cleared(numerators, denominators)
    if not any(v):
        raise DegenerateInput("the formula gives the zero vector")
    return PointP2.of(*v)


def _sixth_pair_in_frame(x5: PointP2, y5: PointP2) -> PointPair:
    (x1, x2, x3), (y1, y2, y3) = x5.vector, y5.vector
    d = (y3 * x2 - x3 * y2, y3 * x1 - x3 * y1, y1 * x2 - x1 * y2)
    if not any(d):
        raise HomographyRelated("the fifth pairs agree in the frame")
    x6 = _frame_point((y3 - y2, y3 - y1, y1 - y2), d)
    y6 = _frame_point((x3 - x2, x3 - x1, x1 - x2), d)
    return PointPair(x6, y6)


def sixth_pair(c: Config) -> PointPair:
    """The unique pair that makes Z_6 of the five pairs plus it deficient."""
    if c.k != 5 or c.dimension != 2:
        raise ValueError("five pairs in P2 expected")
    fixed, h1, h2 = frame_fixing(c)
    x5, y5 = fixed.pairs[4].x, fixed.pairs[4].y
    if not (isinstance(x5, PointP2) and isinstance(y5, PointP2)):
        raise ValueError("five pairs in P2 expected")
    in_frame = _sixth_pair_in_frame(x5, y5)
    pair = PointPair(
        h1.inverse().apply(in_frame.x), h2.inverse().apply(in_frame.y)
    )
    extended = Config(c.pairs + (pair,))
    if z_rank(extended) != 5:
        raise DegenerateInput("the completed configuration is not of rank 5")
    log.debug("sixth pair %s -> %s", pair.x, pair.y)
    return pair


def completion_y(xs: Sequence[PointP2]) -> List[PointP2]:
    """y-points making Z_6 deficient, in the frame of y1..y4.

    The result is unique up to one homography of the y-side.
    """
    if len(xs) != 6:
        raise ValueError("six points expected")
    h = homography_from_4(xs[:4], [PointP2(p) for p in CANONICAL_FRAME])
    x5, x6 = (h.apply(p).vector for p in xs[4:])
    d = (
        x6[2] * x5[1] - x5[2] * x6[1],
        x6[2] * x5[0] - x5[2] * x6[0],
        x6[0] * x5[1] - x5[0] * x6[1],
    )
    if not any(d):
        raise DegenerateInput("x5 and x6 coincide in the frame")
    y5 = _frame_point((x6[2] - x6[1], x6[2] - x6[0], x6[0] - x6[1]), d)
    y6 = _frame_point((x5[2] - x5[1], x5[2] - x5[0], x5[0] - x5[1]), d)
    ys = [PointP2(p) for p in CANONICAL_FRAME] + [y5, y6]
    if z_rank(Config.from_points(xs, ys)) == 6:
        raise DegenerateInput("xs are not in general position")
    return ys


def _fraction(value: sympy.Expr) -> Fraction:
    r = sympy.Rational(value)
    return Fraction(int(r.p), int(r.q))


def _sympy_rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _ground_roots(expr: sympy.Expr, var: sympy.Symbol) -> List[Fraction]:
    return [_fraction(r) for r in sympy.Poly(expr, var).ground_roots()]


def _gcd_roots(
    exprs: Iterable[sympy.Expr], var: sympy.Symbol
) -> Optional[List[Fraction]]:
    """Rational common roots in var; None when every expression is zero."""
    polys = [sympy.Poly(e, var) for e in exprs]
    polys = [p for p in polys if not p.is_zero]
    if not polys:
        return None
    g = polys[0]
    for p in polys[1:]:
        g = sympy.gcd(g, p)
    if g.degree() <= 0:
        return []
    return [_fraction(r) for r in g.ground_roots()]


def _affine_x_roots(affine: Sequence[sympy.Expr]) -> Optional[List[Fraction]]:
    """X-coordinates of the common zeros in the chart Z = 1."""
    for f, g in itertools.combinations(affine, 2):
        if not (f.has(_Y) or g.has(_Y)):
            continue
        r = sympy.expand(sympy.resultant(f, g, _Y))
        if r != 0:
            return _ground_roots(r, _X)
    return None


def common_rational_zeros(
    forms: Sequence[sympy.Expr],
) -> Optional[List[PointP2]]:
    """Rational common zeros of ternary forms in X, Y, Z.

    Returns None when elimination cannot isolate finitely many points.
    """
    forms = [f for f in map(sympy.expand, forms) if f != 0]
    if len(forms) < 2:
        return None
    affine = [sympy.expand(f.subs(_Z, 1)) for f in forms]
    xs = _affine_x_roots(affine)
    if xs is None:
        return None
    points: List[PointP2] = []
    for x in xs:
        value = _sympy_rational(x)
        ys = _gcd_roots((f.subs(_X, value) for f in affine), _Y)
        if ys is None:
            return None
        points.extend(PointP2.of(x, y, 1) for y in ys)
    at_infinity = _gcd_roots((f.subs({_Z: 0, _Y: 1}) for f in forms), _X)
    if at_infinity is None:
        return None
    points.extend(PointP2.of(x, 1, 0) for x in at_infinity)
    if all(f.subs({_X: 1, _Y: 0, _Z: 0}) == 0 for f in forms):
        points.append(PointP2.of(1, 0, 0))
    return list(dict.fromkeys(points))


def conic_form(w: Conic) -> sympy.Expr:
    a, b, c, d, e, f = (sympy.Integer(v) for v in w.coefficients)
    return (
        a * _X**2 + b * _X * _Y + c * _Y**2 + d * _X * _Z + e * _Y * _Z + f * _Z**2
    )


def mapped_conics(c: Config) -> List[Conic]:
    """H_i(C) for the conic C through the x's, H_i fitted without pair i."""
    xs = [p for p in c.xs if isinstance(p, PointP2)]
    ys = [p for p in c.ys if isinstance(p, PointP2)]
    if not no_three_collinear(xs):
        raise DegenerateInput("three x-points are collinear")
    w = conic_through_5(*xs)
    conics = []
    for i in range(5):
        rest = [j for j in range(5) if j != i]
        h = homography_from_4([xs[j] for j in rest], [ys[j] for j in rest])
        conics.append(w.transformed(h))
    return conics


def _common_conic_point(c: Config) -> PointP2:
    conics = mapped_conics(c)
    candidates = common_rational_zeros(
        [conic_form(conics[0]), conic_form(conics[1])]
    )
    if candidates is None:
        raise NoCommonPoint("the first two conics share a component")
    common = [p for p in candidates if all(w.contains(p) for w in conics)]
    if len(common) != 1:
        raise NoCommonPoint(f"{len(common)} points common to the five conics")
    return common[0]


def sturm_sixth_pair(c: Config) -> PointPair:
    """The sixth pair as the common point of five conics on each side."""
    if c.k != 5 or c.dimension != 2:
        raise ValueError("five pairs in P2 expected")
    y6 = _common_conic_point(c)
    x6 = _common_conic_point(c.swapped())
    return PointPair(x6, y6)


def _line_targets(ys: Sequence[PointP2]) -> List[PointP1]:
    if not collinear(ys):
        raise SideNotCollinear("the y-side is not contained in a line")
    targets = to_line_points(ys)
    if len(set(targets)) != len(targets):
        raise DegenerateInput("the y-points are not distinct")
    return targets


def _projection_through(
    center: PointP2, xs: Sequence[PointP2], targets: Sequence[PointP1]
) -> Optional[ProjectionMap]:
    """Projection from center composed with the P1 map fitted on 3 pairs."""
    p = QMatrix.of(null_space(QMatrix.of([center.coords])))
    images = [p.apply(x.vector) for x in xs]
    usable = [i for i, v in enumerate(images) if any(v)]
    for trio in itertools.combinations(usable, 3):
        src = [PointP1.of(*images[i]) for i in trio]
        dst = [targets[i] for i in trio]
        if len(set(src)) == 3 and len(set(dst)) == 3:
            g = homography_p1_from_3(src, dst)
            return ProjectionMap(g.matrix @ p, center)
    return None


def k5_projection(
    c: Config, center: PointP2, *, allow_base_point: bool = False
) -> ProjectionMap:
    """Map centered at a point of the conic through the x's onto the y-line.

    With ``allow_base_point`` the center may be one of the x's; the map
    then sends that x to no point and the remaining four onto their y's.
    """
    if c.k != 5 or c.dimension != 2:
        raise ValueError("five pairs in P2 expected")
    xs = [p for p in c.xs if isinstance(p, PointP2)]
    ys = [p for p in c.ys if isinstance(p, PointP2)]
    if not no_three_collinear(xs):
        raise DegenerateInput("three x-points are collinear")
    targets = _line_targets(ys)
    w = conic_through_5(*xs)
    if not w.contains(center):
        raise CenterNotOnConic(f"{center} is not on the conic of the x's")
    if center in xs and not allow_base_point:
        raise CenterNotOnConic(f"{center} is one of the x-points")
    if z_rank(c) == 5:
        raise NotDeficient("Z_5 has full rank")
    t = _projection_through(center, xs, targets)
    if t is None or not all(
        t.maps(x, y) for x, y in zip(xs, targets) if x != center
    ):
        raise NotDeficient("no projection from the center matches the pairs")
    return t


def symbolic_covariant_cubics(xs: Sequence[PointP2]) -> List[sympy.Expr]:
    """The six covariant cubics as forms in the center coordinates X, Y, Z."""
    u = (_X, _Y, _Z)

    def linear(i: int, j: int) -> sympy.Expr:
        line = cross(xs[i - 1].vector, xs[j - 1].vector)
        return sum(
            (_sympy_rational(a) * v for a, v in zip(line, u)),
            sympy.Integer(0),
        )

    return [
        sympy.expand(
            sum(
                (
                    linear(i, j) * linear(k, l) * linear(r, s)
                    for i, j, k, l, r, s in row
                ),
                sympy.Integer(0),
            )
        )
        for row in SEXTUPLE_PATTERNS
    ]


def _center_candidates(
    xs: Sequence[PointP2], targets: Sequence[PointP1]
) -> List[PointP2]:
    j = joubert(targets)
    cubics = symbolic_covariant_cubics(xs)
    a = next(i for i, v in enumerate(j) if v != 0)
    ja = _sympy_rational(j.values[a])
    forms = [
        ja * cubics[b]
        - _sympy_rational(v) * cubics[a]
        for b, v in enumerate(j)
        if b != a
    ]
    found = common_rational_zeros(forms)
    if found is None:
        log.info("elimination degenerated; searching small centers")
        found = [PointP2(v) for v in small_vectors(CENTER_SEARCH_HEIGHT)]
    candidates = []
    for u in found:
        values = covariant_cubics(xs, u)
        if not values.is_zero() and values.proportional_to(j):
            candidates.append(u)
    return candidates


def k6_line_projection(c: Config) -> ProjectionMap:
    """Projection sending the six x's onto the six collinear y's."""
    if c.k != 6 or c.dimension != 2:
        raise ValueError("six pairs in P2 expected")
    xs = [p for p in c.xs if isinstance(p, PointP2)]
    ys = [p for p in c.ys if isinstance(p, PointP2)]
    if not no_three_collinear(xs):
        raise DegenerateInput("three x-points are collinear")
    targets = _line_targets(ys)
    if line_case_form(xs, targets) != 0:
        raise NotDeficient("the Coble-Joubert pairing does not vanish")
    if joubert(targets).is_zero():
        raise DegenerateInput("the Joubert invariants of the y's vanish")
    for u in _center_candidates(xs, targets):
        t = _projection_through(u, xs, targets)
        if t is not None and all(t.maps(x, y) for x, y in zip(xs, targets)):
            log.debug("projection center %s", u)
            return t
    raise NoRationalCenter("no rational projection center found")


def line_case_config(t: QMatrix, xs: Sequence[PointP2]) -> Config:
    """Pairs (x_i, T x_i) with the images placed on the line z = 0.

    Z_6 of the result is deficient for any six x's.
    """
    ys = []
    for x in xs:
        image = t.apply(x.vector)
        if not any(image):
            raise DegenerateInput(f"{x} is the center of the map")
        ys.append(embed_line_point(PointP1.of(*image)))
    return Config.from_points(xs, ys)


def conic_line_map_agrees(c: Config) -> bool:
    """Whether one conic-to-line map carries every x to its y.

    Compares, for every four pairs, the cross-ratio of the x's on the
    conic through them with that of the y's on the y-line.
    """
    if c.k != 5 or c.dimension != 2:
        raise ValueError("five pairs in P2 expected")
    xs = [p for p in c.xs if isinstance(p, PointP2)]
    ys = [p for p in c.ys if isinstance(p, PointP2)]
    if not no_three_collinear(xs):
        raise DegenerateInput("three x-points are collinear")
    targets = _line_targets(ys)
    w = conic_through_5(*xs)
    return all(
        conic_cross_ratio(w, *(xs[i] for i in quad))
        == cross_ratio_p1(*(targets[i] for i in quad))
        for quad in itertools.combinations(range(5), 4)
    )

