"""The cubic surface det(M(z)) = 0 of a rank-deficient configuration.

The null space of Z (rank 5, with five or six pairs) reshaped to 3x3
matrices is a pencil M(z) = z0*M0 + ... + z3*M3. Every point x_i of the
configuration gives the line of z with M(z) x_i = 0 and every y_j the
line with y_j^T M(z) = 0; for six pairs the twelve lines form a
double six on the surface.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy

from .errors import (
    DegenerateInput,
    NotDeficient,
    NotOnSurface,
    RankNotThree,
    RankNotTwo,
)
from .exact_linalg import (
    QMatrix,
    Scalar,
    Vector,
    det,
    normalize_vector,
    null_space,
    rank,
    to_rat,
)
from .facesplit import build_z, matrix_to_vec, vec_to_matrix
from .projective import Config, PointP2

log = logging.getLogger(__name__)

CUBIC_MONOMIALS: Tuple[Tuple[int, ...], ...] = tuple(
    itertools.combinations_with_replacement(range(4), 3)
)
"""Degree-3 monomials in z0..z3 as sorted index triples, graded lex."""

PLUCKER_INDICES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class Pencil:
    basis: Tuple[QMatrix, ...]

    def __post_init__(self) -> None:
        if len(self.basis) != 4:
            raise ValueError("a pencil has four basis matrices")
        if rank(QMatrix.of(matrix_to_vec(m) for m in self.basis)) != 4:
            raise ValueError("basis matrices are linearly dependent")

    def at(self, z: Sequence[Scalar]) -> QMatrix:
        """M(z)."""
        if len(z) != 4:
            raise ValueError("four pencil coordinates expected")
        total = self.basis[0].scale(z[0])
        for zj, m in zip(z[1:], self.basis[1:]):
            total = total + m.scale(zj)
        return total

    def transpose(self) -> "Pencil":
        return Pencil(tuple(m.transpose() for m in self.basis))


@dataclass(frozen=True)
class CubicForm:
    """det(M(z)) by its coefficients on ``CUBIC_MONOMIALS``."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) != len(CUBIC_MONOMIALS):
            raise ValueError("a cubic form in four variables has 20 terms")

    def value(self, z: Sequence[Scalar]) -> Fraction:
        v = [to_rat(c) for c in z]
        return sum(
            (
                c * v[i] * v[j] * v[k]
                for c, (i, j, k) in zip(self.coefficients, CUBIC_MONOMIALS)
            ),
            Fraction(0),
        )

    def partials(self, z: Sequence[Scalar]) -> Vector:
        """Gradient at z."""
        v = [to_rat(c) for c in z]
        gradient = [Fraction(0)] * 4
        for c, monomial in zip(self.coefficients, CUBIC_MONOMIALS):
            for variable in set(monomial):
                rest = list(monomial)
                rest.remove(variable)
                gradient[variable] += (
                    c * monomial.count(variable) * v[rest[0]] * v[rest[1]]
                )
        return tuple(gradient)

    def is_zero(self) -> bool:
        return not any(self.coefficients)


@dataclass(frozen=True)
class LineP3:
    """Line of P3 by Plucker coordinates (p01, p02, p03, p12, p13, p23).

    ``span`` holds two points of the line for sampling; it takes no part
    in equality.
    """

    plucker: Tuple[int, ...]
    span: Tuple[Vector, Vector] = field(compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(self.plucker) != 6:
            raise ValueError("six Plucker coordinates expected")
        object.__setattr__(self, "plucker", normalize_vector(self.plucker))
        p01, p02, p03, p12, p13, p23 = self.plucker
        if p01 * p23 - p02 * p13 + p03 * p12 != 0:
            raise ValueError("coordinates violate the Plucker relation")

    @classmethod
    def from_points(cls, a: Sequence[Scalar], b: Sequence[Scalar]) -> "LineP3":
        u = tuple(to_rat(v) for v in a)
        w = tuple(to_rat(v) for v in b)
        minors = [u[i] * w[j] - u[j] * w[i] for i, j in PLUCKER_INDICES]
        if not any(minors):
            raise ValueError("the two points coincide")
        return cls(normalize_vector(minors), (u, w))

    def point_at(self, s: Scalar, t: Scalar) -> Vector:
        u, w = self.span
        return tuple(to_rat(s) * a + to_rat(t) * b for a, b in zip(u, w))


def plucker_meet(a: LineP3, b: LineP3) -> Fraction:
    """Zero exactly when the two lines meet."""
    a01, a02, a03, a12, a13, a23 = a.plucker
    b01, b02, b03, b12, b13, b23 = b.plucker
    return Fraction(
        a01 * b23
        - a02 * b13
        + a03 * b12
        + a23 * b01
        - a13 * b02
        + a12 * b03
    )


def pencil_from_config(c: Config) -> Pencil:
    """Null space of Z (five or six pairs, rank 5) as a pencil."""
    if c.k not in (5, 6) or c.dimension != 2:
        raise ValueError("five or six pairs in P2 expected")
    z = build_z(c).z
    r = rank(z)
    if c.k == 6 and r == 6:
        raise NotDeficient("Z_6 has full rank")
    if r != 5:
        raise DegenerateInput(f"Z_{c.k} has rank {r}, not 5")
    return Pencil(tuple(vec_to_matrix(v) for v in null_space(z)))


def cubic_form(p: Pencil) -> CubicForm:
    z = sympy.symbols("z0:4")
    entries = [
        [
            sum(
                (
                    sympy.Rational(m[a, b].numerator, m[a, b].denominator) * zj
                    for zj, m in zip(z, p.basis)
                ),
                sympy.Integer(0),
            )
            for b in range(3)
        ]
        for a in range(3)
    ]
    determinant = sympy.Poly(
        sympy.Matrix(entries).det(method="berkowitz"), *z
    )
    coefficients = []
    for monomial in CUBIC_MONOMIALS:
        term = sympy.Integer(1)
        for i in monomial:
            term *= z[i]
        value = sympy.Rational(determinant.coeff_monomial(term))
        coefficients.append(Fraction(int(value.p), int(value.q)))
    return CubicForm(tuple(coefficients))


def _line_from_system(system: QMatrix) -> LineP3:
    if rank(system) != 2:
        raise RankNotTwo(f"the point system has rank {rank(system)}, not 2")
    a, b = null_space(system)
    return LineP3.from_points(a, b)


def _point_system(p: Pencil, point: PointP2) -> QMatrix:
    """Rows a: sum_j z_j (M_j x)_a, so the kernel is {z : M(z) x = 0}."""
    columns = [m.apply(point.vector) for m in p.basis]
    return QMatrix.of(zip(*columns))


def line_x(p: Pencil, x: PointP2) -> LineP3:
    """The line {z : M(z) x = 0}."""
    return _line_from_system(_point_system(p, x))


def line_y(p: Pencil, y: PointP2) -> LineP3:
    """The line {z : y^T M(z) = 0}."""
    return _line_from_system(_point_system(p.transpose(), y))


def verify_double_six(lx: Sequence[LineP3], ly: Sequence[LineP3]) -> bool:
    """Each family skew, and l_i meets l'_j exactly when i != j."""
    if len(lx) != len(ly):
        raise ValueError("the two families differ in size")
    for family in (lx, ly):
        for a, b in itertools.combinations(family, 2):
            if plucker_meet(a, b) == 0:
                return False
    for (i, a), (j, b) in itertools.product(enumerate(lx), enumerate(ly)):
        if (plucker_meet(a, b) == 0) != (i != j):
            log.debug("incidence of lines %d and %d' is wrong", i + 1, j + 1)
            return False
    return True


def _kernel_point(m: QMatrix) -> PointP2:
    if det(m) != 0:
        raise NotOnSurface("M(z) is invertible")
    if rank(m) != 2:
        raise RankNotTwo(f"M(z) has rank {rank(m)}, not 2")
    (kernel,) = null_space(m)
    return PointP2.of(*kernel)


def blow_down_right(p: Pencil, z: Sequence[Scalar]) -> PointP2:
    """Right kernel of M(z)."""
    return _kernel_point(p.at(z))


def blow_down_left(p: Pencil, z: Sequence[Scalar]) -> PointP2:
    """Left kernel of M(z)."""
    return _kernel_point(p.at(z).transpose())


def blow_up(p: Pencil, u: PointP2) -> Tuple[int, ...]:
    """The surface point z with M(z) u = 0, for u not blown up."""
    system = _point_system(p, u)
    if rank(system) != 3:
        raise RankNotThree(f"{u} is a blown-up point")
    (z,) = null_space(system)
    return normalize_vector(z)


def double_six(c: Config) -> Tuple[List[LineP3], List[LineP3]]:
    """Lines of the x's and of the y's on the surface of the config."""
    p = pencil_from_config(c)
    lx = [line_x(p, x) for x in c.xs if isinstance(x, PointP2)]
    ly = [line_y(p, y) for y in c.ys if isinstance(y, PointP2)]
    return lx, ly
