"""Decide whether Z_k drops rank and say which geometric condition did it.

The exact rank of Z_k is always computed and is the verdict. The
geometric conditions are evaluated independently of it, so each report
doubles as a check of the characterization: a rank drop with no
condition is ``unexplained``, a deficiency condition on a full-rank
matrix is ``contradicted``.

Pair indices in conditions are 1-based. The indices of an inherited
condition's ``inner`` condition refer to the sub-configuration.
"""

import enum
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import (
    Any,
    Dict,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .constants import MAX_PAIRS_P1
from .errors import NotGeneralPosition, SideNotCollinear
from .exact_linalg import rank
from .facesplit import build_z
from .invariants import Sextuple, coble_bar, joubert, line_case_form
from .projective import (
    Config,
    Point,
    PointP1,
    PointP2,
    bracket2,
    bracket3,
    collinear,
    cross_ratio_p1,
    general_position_p2,
    general_position_pairs,
    homography_relating,
    line_through,
    to_line_points,
)

log = logging.getLogger(__name__)


class ConditionKind(str, enum.Enum):
    REPEATED_PAIR = "RepeatedPair"
    COINCIDENT_TRIPLE_OPPOSITE_LINE = "CoincidentTripleOppositeLine"
    ALL_COINCIDENT = "AllCoincident"
    BOTH_SIDES_COLLINEAR_CROSS_RATIO = "BothSidesCollinearCrossRatio"
    K5_LINE_AND_BRACKETS = "K5LineAndBrackets"
    K6_BRACKETS = "K6Brackets"
    K6_LINE_JOUBERT = "K6LineJoubert"
    K6_INVARIANT_PROPORTIONAL = "K6InvariantProportional"
    HOMOGRAPHY_RELATED = "HomographyRelated"
    ASYMMETRIC_DOUBLE_TRIANGLE = "AsymmetricDoubleTriangle"
    INHERITED = "Inherited"


class Side(str, enum.Enum):
    X = "x"
    Y = "y"

    @property
    def other(self) -> "Side":
        return Side.Y if self is Side.X else Side.X


class Status(str, enum.Enum):
    CONSISTENT = "consistent"
    UNEXPLAINED = "unexplained"
    CONTRADICTED = "contradicted"


@dataclass(frozen=True)
class Condition:
    kind: ConditionKind
    indices: Tuple[int, ...]
    side: Optional[Side] = None
    witness: Mapping[str, Any] = field(
        default_factory=dict, compare=False, hash=False
    )
    inner: Optional["Condition"] = None


@dataclass(frozen=True)
class InvariantSummary:
    coble_x: Optional[Sextuple] = None
    coble_y: Optional[Sextuple] = None
    joubert_x: Optional[Sextuple] = None
    joubert_y: Optional[Sextuple] = None


@dataclass(frozen=True)
class Report:
    k: int
    rank: int
    deficient: bool
    conditions: Tuple[Condition, ...]
    observations: Tuple[Condition, ...] = ()
    status: Status = Status.CONSISTENT
    invariants: Optional[InvariantSummary] = None
    deficient_subsets: Tuple[Tuple[int, ...], ...] = ()


class _Brackets:
    """Memoized brackets of one side, addressed by 1-based indices."""

    def __init__(self, points: Sequence[Point]) -> None:
        self._points = points
        self._cache: Dict[Tuple[int, ...], Fraction] = {}

    def __call__(self, *indices: int) -> Fraction:
        value = self._cache.get(indices)
        if value is None:
            p = [self._points[i - 1] for i in indices]
            if len(p) == 3:
                value = bracket3(*_as_p2(p))
            else:
                value = bracket2(*_as_p1(p))
            self._cache[indices] = value
        return value


def _side_points(c: Config, side: Union[Side, str]) -> List[Point]:
    return c.side(Side(side).value)


def _as_p2(points: Sequence[Point]) -> List[PointP2]:
    p2 = [p for p in points if isinstance(p, PointP2)]
    if len(p2) != len(points):
        raise ValueError("points in P2 expected")
    return p2


def _as_p1(points: Sequence[Point]) -> List[PointP1]:
    p1 = [p for p in points if isinstance(p, PointP1)]
    if len(p1) != len(points):
        raise ValueError("points in P1 expected")
    return p1


def _p2_side(c: Config, side: Union[Side, str]) -> List[PointP2]:
    return _as_p2(_side_points(c, side))


def _line_points(points: Sequence[Point]) -> List[PointP1]:
    """P1 coordinates of a collinear side; P1 input is returned as is."""
    p1 = [p for p in points if isinstance(p, PointP1)]
    if len(p1) == len(points):
        return p1
    p2 = [p for p in points if isinstance(p, PointP2)]
    if not collinear(p2):
        raise SideNotCollinear("the side is not contained in a line")
    return to_line_points(p2)


def check_k4_bracket(c: Config) -> Fraction:
    """Residual of the cross-ratio equality of four pairs on two lines."""
    if c.k != 4:
        raise ValueError("four pairs expected")
    x = _Brackets(_line_points(c.xs))
    y = _Brackets(_line_points(c.ys))
    return x(1, 3) * x(2, 4) * y(1, 4) * y(2, 3) - x(1, 4) * x(2, 3) * y(
        1, 3
    ) * y(2, 4)


def _k5_residual(
    o: _Brackets, line: _Brackets, j: int, order: Sequence[int]
) -> Fraction:
    i1, i2, i3, i4 = order
    return o(i1, i3, j) * o(i2, i4, j) * line(i1, i4) * line(i2, i3) - o(
        i1, i4, j
    ) * o(i2, i3, j) * line(i1, i3) * line(i2, i4)


def _k5_tables(c: Config, line_side: Side) -> Tuple[_Brackets, _Brackets]:
    if c.k != 5:
        raise ValueError("five pairs expected")
    line = _Brackets(_line_points(_side_points(c, line_side)))
    return _Brackets(_side_points(c, line_side.other)), line


def check_k5_brackets(
    c: Config, line_side: Union[Side, str]
) -> List[Fraction]:
    """One residual per j; the other four indices in ascending order."""
    side = Side(line_side)
    o, line = _k5_tables(c, side)
    return [
        _k5_residual(o, line, j, [i for i in range(1, 6) if i != j])
        for j in range(1, 6)
    ]


def _k5_orbit_vanishes(c: Config, line_side: Side) -> bool:
    o, line = _k5_tables(c, line_side)
    return all(
        _k5_residual(o, line, j, order) == 0
        for j in range(1, 6)
        for order in itertools.permutations(
            [i for i in range(1, 6) if i != j]
        )
    )


def _k6_residual(
    x: _Brackets, y: _Brackets, p: int, s: int, order: Sequence[int]
) -> Fraction:
    i, j, k, r = order
    return x(i, k, p) * x(j, r, p) * y(i, r, s) * y(j, k, s) - x(
        i, r, p
    ) * x(j, k, p) * y(i, k, s) * y(j, r, s)


def _k6_pairs() -> List[Tuple[int, int, List[int]]]:
    return [
        (p, s, [i for i in range(1, 7) if i not in (p, s)])
        for p in range(1, 7)
        for s in range(1, 7)
        if p != s
    ]


def check_k6_brackets(c: Config) -> List[Fraction]:
    """30 residuals, (p, s) in lexicographic order."""
    if c.k != 6:
        raise ValueError("six pairs expected")
    x, y = _Brackets(c.xs), _Brackets(c.ys)
    return [_k6_residual(x, y, p, s, rest) for p, s, rest in _k6_pairs()]


def _k6_orbit_vanishes(c: Config) -> bool:
    x, y = _Brackets(c.xs), _Brackets(c.ys)
    return all(
        _k6_residual(x, y, p, s, order) == 0
        for p, s, rest in _k6_pairs()
        for order in itertools.permutations(rest)
    )


def is_asymmetric_double_triangle(c: Config) -> bool:
    if c.k != 6:
        raise ValueError("six pairs expected")
    xs, ys = c.xs, c.ys
    if len(set(xs)) != 3 or len(set(ys)) != 3:
        return False
    for perm in itertools.permutations(range(6)):
        x = [xs[i] for i in perm]
        y = [ys[i] for i in perm]
        if (
            y[0] == y[1]
            and y[2] == y[3]
            and y[4] == y[5]
            and x[0] == x[3]
            and x[1] == x[4]
            and x[2] == x[5]
        ):
            return True
    return False


def check_invariant_proportionality(c: Config) -> bool:
    if c.k != 6:
        raise ValueError("six pairs expected")
    xs = [p for p in c.xs if isinstance(p, PointP2)]
    ys = [p for p in c.ys if isinstance(p, PointP2)]
    if len(xs) != 6 or not general_position_p2(xs):
        raise NotGeneralPosition("x-side is not in general position")
    if len(ys) != 6 or not general_position_p2(ys):
        raise NotGeneralPosition("y-side is not in general position")
    return coble_bar(xs).proportional_to(coble_bar(ys))


def _line_form(c: Config, line_side: Side) -> Tuple[Fraction, Sextuple]:
    other = _p2_side(c, line_side.other)
    line = _line_points(_side_points(c, line_side))
    return (
        line_case_form(other, line),
        joubert(line),
    )


def _conditions_p2(c: Config) -> Tuple[List[Condition], List[Condition]]:
    """Non-inherited deficiency conditions, and observations."""
    k = c.k
    everything = tuple(range(1, k + 1))
    found: List[Condition] = []
    notes: List[Condition] = []
    is_collinear = {
        Side.X: collinear(_p2_side(c, Side.X)),
        Side.Y: collinear(_p2_side(c, Side.Y)),
    }
    if k == 2 and c.pairs[0] == c.pairs[1]:
        found.append(Condition(ConditionKind.REPEATED_PAIR, everything))
    if k == 3:
        for side in Side:
            if len(set(_side_points(c, side))) == 1 and is_collinear[side.other]:
                found.append(
                    Condition(
                        ConditionKind.COINCIDENT_TRIPLE_OPPOSITE_LINE,
                        everything,
                        side,
                        {"line": line_through(_p2_side(c, side.other))},
                    )
                )
    if k == 4:
        for side in Side:
            if len(set(_side_points(c, side))) == 1:
                found.append(
                    Condition(ConditionKind.ALL_COINCIDENT, everything, side)
                )
        if is_collinear[Side.X] and is_collinear[Side.Y]:
            residual = check_k4_bracket(c)
            if residual == 0:
                found.append(
                    Condition(
                        ConditionKind.BOTH_SIDES_COLLINEAR_CROSS_RATIO,
                        everything,
                        witness={
                            "lineX": line_through(_p2_side(c, Side.X)),
                            "lineY": line_through(_p2_side(c, Side.Y)),
                            "residual": residual,
                        },
                    )
                )
    if k == 5:
        for side in (Side.Y, Side.X):
            if not is_collinear[side]:
                continue
            residuals = check_k5_brackets(c, side)
            if not any(residuals) and _k5_orbit_vanishes(c, side):
                found.append(
                    Condition(
                        ConditionKind.K5_LINE_AND_BRACKETS,
                        everything,
                        side,
                        {
                            "line": line_through(_p2_side(c, side)),
                            "residuals": residuals,
                        },
                    )
                )
    if k == 6:
        found_6, notes_6 = _conditions_k6(c, is_collinear)
        found.extend(found_6)
        notes.extend(notes_6)
    if k in (5, 6):
        h = homography_relating(c)
        if h is not None:
            notes.append(
                Condition(
                    ConditionKind.HOMOGRAPHY_RELATED,
                    everything,
                    witness={"homography": h},
                )
            )
    return found, notes


def _conditions_k6(
    c: Config, is_collinear: Mapping[Side, bool]
) -> Tuple[List[Condition], List[Condition]]:
    everything = tuple(range(1, 7))
    found: List[Condition] = []
    notes: List[Condition] = []
    double_triangle = is_asymmetric_double_triangle(c)
    if double_triangle:
        notes.append(
            Condition(ConditionKind.ASYMMETRIC_DOUBLE_TRIANGLE, everything)
        )
    if not (is_collinear[Side.X] or is_collinear[Side.Y]):
        residuals = check_k6_brackets(c)
        if (
            not any(residuals)
            and not double_triangle
            and _k6_orbit_vanishes(c)
        ):
            found.append(
                Condition(
                    ConditionKind.K6_BRACKETS,
                    everything,
                    witness={"equations": len(residuals)},
                )
            )
    for side in (Side.Y, Side.X):
        if not is_collinear[side]:
            continue
        form, invariants = _line_form(c, side)
        if form == 0:
            found.append(
                Condition(
                    ConditionKind.K6_LINE_JOUBERT,
                    everything,
                    side,
                    {
                        "line": line_through(_p2_side(c, side)),
                        "joubert": invariants,
                    },
                )
            )
    xs = [p for p in c.xs if isinstance(p, PointP2)]
    ys = [p for p in c.ys if isinstance(p, PointP2)]
    if general_position_p2(xs) and general_position_p2(ys):
        coble_x, coble_y = coble_bar(xs), coble_bar(ys)
        if coble_x.proportional_to(coble_y) and general_position_pairs(c):
            found.append(
                Condition(
                    ConditionKind.K6_INVARIANT_PROPORTIONAL,
                    everything,
                    witness={"cobleX": coble_x, "cobleY": coble_y},
                )
            )
    return found, notes


def _conditions_p1(c: Config) -> Tuple[List[Condition], List[Condition]]:
    everything = tuple(range(1, c.k + 1))
    found: List[Condition] = []
    if c.k == 2 and c.pairs[0] == c.pairs[1]:
        found.append(Condition(ConditionKind.REPEATED_PAIR, everything))
    if c.k == 3:
        for side in Side:
            if len(set(_side_points(c, side))) == 1:
                found.append(
                    Condition(ConditionKind.ALL_COINCIDENT, everything, side)
                )
    if c.k == 4:
        residual = check_k4_bracket(c)
        if residual == 0:
            xs = [p for p in c.xs if isinstance(p, PointP1)]
            ys = [p for p in c.ys if isinstance(p, PointP1)]
            found.append(
                Condition(
                    ConditionKind.BOTH_SIDES_COLLINEAR_CROSS_RATIO,
                    everything,
                    witness={
                        "residual": residual,
                        "crossRatioX": cross_ratio_p1(*xs),
                        "crossRatioY": cross_ratio_p1(*ys),
                    },
                )
            )
    return found, []


def _direct_conditions(
    c: Config,
) -> Tuple[List[Condition], List[Condition]]:
    if c.dimension == 1:
        return _conditions_p1(c)
    return _conditions_p2(c)


def deficient_subsets(c: Config) -> List[Tuple[int, ...]]:
    """Every proper subset of pairs (1-based) whose rows drop rank."""
    z = build_z(c).z
    subsets = []
    for size in range(2, c.k):
        for subset in itertools.combinations(range(c.k), size):
            if rank(z.submatrix(subset, range(z.cols))) < size:
                subsets.append(tuple(i + 1 for i in subset))
    return subsets


def _minimal(subsets: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    minimal: List[Tuple[int, ...]] = []
    for s in sorted(subsets, key=lambda t: (len(t), t)):
        if not any(set(m) <= set(s) for m in minimal):
            minimal.append(s)
    return minimal


def _inherited(
    c: Config, subsets: Sequence[Tuple[int, ...]]
) -> List[Condition]:
    conditions = []
    for subset in _minimal(subsets):
        sub = c.subset(i - 1 for i in subset)
        direct, _ = _direct_conditions(sub)
        if not direct:
            log.warning("deficient subset %s has no direct condition", subset)
        conditions.append(
            Condition(
                ConditionKind.INHERITED,
                subset,
                witness={"rank": rank(build_z(sub).z)},
                inner=direct[0] if direct else None,
            )
        )
    return conditions


def inherited_conditions(c: Config) -> List[Condition]:
    """One condition per minimal deficient proper subset."""
    return _inherited(c, deficient_subsets(c))


def _status(c: Config, deficient: bool, conditions: Sequence[Condition]) -> Status:
    if deficient and not conditions:
        log.warning("rank drop of %d pairs without a condition", c.k)
        return Status.UNEXPLAINED
    if conditions and not deficient:
        log.warning(
            "full rank although %s holds",
            ", ".join(cond.kind.value for cond in conditions),
        )
        return Status.CONTRADICTED
    return Status.CONSISTENT


def _summary(c: Config) -> Optional[InvariantSummary]:
    if c.k != 6 or c.dimension != 2:
        return None
    xs = [p for p in c.xs if isinstance(p, PointP2)]
    ys = [p for p in c.ys if isinstance(p, PointP2)]
    return InvariantSummary(
        coble_x=coble_bar(xs),
        coble_y=coble_bar(ys),
        joubert_x=joubert(to_line_points(xs)) if collinear(xs) else None,
        joubert_y=joubert(to_line_points(ys)) if collinear(ys) else None,
    )


def _classify(c: Config, lattice: bool) -> Report:
    z_rank = rank(build_z(c).z)
    deficient = z_rank < c.k
    subsets = deficient_subsets(c)
    conditions, observations = _direct_conditions(c)
    conditions = _inherited(c, subsets) + conditions
    report = Report(
        k=c.k,
        rank=z_rank,
        deficient=deficient,
        conditions=tuple(conditions),
        observations=tuple(observations),
        status=_status(c, deficient, conditions),
        invariants=_summary(c),
        deficient_subsets=tuple(subsets) if lattice else (),
    )
    log.debug(
        "k=%d rank=%d conditions=%s",
        c.k,
        z_rank,
        [cond.kind.value for cond in conditions],
    )
    return report


def classify(c: Config, *, lattice: bool = False) -> Report:
    """Classify a configuration of 2 to 6 pairs in P2 x P2.

    With ``lattice`` the report also lists every deficient proper
    subset, not only the minimal ones behind the inherited conditions.
    """
    if c.dimension != 2:
        raise ValueError("classify expects pairs in P2; use classify_p1")
    return _classify(c, lattice)


def classify_p1(c: Config, *, lattice: bool = False) -> Report:
    if c.dimension != 1:
        raise ValueError("classify_p1 expects pairs in P1")
    if c.k > MAX_PAIRS_P1:
        raise ValueError(f"at most {MAX_PAIRS_P1} pairs in P1 x P1")
    return _classify(c, lattice)


def _verify_inherited(c: Config, condition: Condition) -> bool:
    sub = c.subset(i - 1 for i in condition.indices)
    if rank(build_z(sub).z) >= sub.k:
        return False
    return condition.inner is None or verify_condition(sub, condition.inner)


def _verify_k6(c: Config, condition: Condition) -> bool:
    kind = condition.kind
    xs = [p for p in c.xs if isinstance(p, PointP2)]
    ys = [p for p in c.ys if isinstance(p, PointP2)]
    if kind is ConditionKind.K6_BRACKETS:
        return (
            not collinear(xs)
            and not collinear(ys)
            and not any(check_k6_brackets(c))
            and _k6_orbit_vanishes(c)
            and not is_asymmetric_double_triangle(c)
        )
    if kind is ConditionKind.K6_LINE_JOUBERT:
        side = Side(condition.side)
        points = xs if side is Side.X else ys
        return collinear(points) and _line_form(c, side)[0] == 0
    if kind is ConditionKind.K6_INVARIANT_PROPORTIONAL:
        return (
            general_position_p2(xs)
            and general_position_p2(ys)
            and check_invariant_proportionality(c)
            and general_position_pairs(c)
        )
    return is_asymmetric_double_triangle(c)


def verify_condition(c: Config, condition: Condition) -> bool:
    """Re-evaluate a reported condition directly on the configuration."""
    kind = condition.kind
    side = Side(condition.side) if condition.side is not None else None
    if kind is ConditionKind.INHERITED:
        return _verify_inherited(c, condition)
    if kind is ConditionKind.REPEATED_PAIR:
        return c.k == 2 and c.pairs[0] == c.pairs[1]
    if kind is ConditionKind.ALL_COINCIDENT and side is not None:
        return len(set(_side_points(c, side))) == 1
    if kind is ConditionKind.COINCIDENT_TRIPLE_OPPOSITE_LINE and side:
        return len(set(_side_points(c, side))) == 1 and collinear(
            _p2_side(c, side.other)
        )
    if kind is ConditionKind.BOTH_SIDES_COLLINEAR_CROSS_RATIO:
        try:
            return check_k4_bracket(c) == 0
        except SideNotCollinear:
            return False
    if kind is ConditionKind.K5_LINE_AND_BRACKETS and side is not None:
        return (
            collinear(_p2_side(c, side))
            and not any(check_k5_brackets(c, side))
            and _k5_orbit_vanishes(c, side)
        )
    if kind is ConditionKind.HOMOGRAPHY_RELATED:
        return homography_relating(c) is not None
    if c.k == 6:
        return _verify_k6(c, condition)
    return False
