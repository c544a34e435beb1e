"""Exact rational linear algebra.

Every routine clears the denominators of each row and runs fraction-free
(Bareiss) elimination over the integers. The pivot of a column is its
first nonzero entry, so echelon forms and null-space bases are
deterministic for a given input.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import NonSquare

Rat = Fraction
Scalar = Union[int, Fraction, str]
Vector = Tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_rat(value: Scalar) -> Fraction:
    """Coerce an int, Fraction or rational string ("n" or "n/d")."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match is None:
            raise ValueError(f"not a rational string: {value!r}")
        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(int(numerator), int(denominator or 1))
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def rat_to_str(value: Fraction) -> str:
    """Canonical string form: "n" or "n/d" with d > 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def normalize_vector(values: Iterable[Scalar]) -> Tuple[int, ...]:
    """Integer representative of a nonzero vector up to scale.

    Denominators are cleared, the entries divided by their gcd and the
    sign chosen so that the first nonzero entry is positive.
    """
    rats = [to_rat(v) for v in values]
    if not any(rats):
        raise ValueError("the zero vector has no projective class")
    scale = math.lcm(*(r.denominator for r in rats))
    ints = [int(r * scale) for r in rats]
    divisor = math.gcd(*ints)
    ints = [i // divisor for i in ints]
    if next(i for i in ints if i != 0) < 0:
        ints = [-i for i in ints]
    return tuple(ints)


def proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    """Whether u and v are linearly dependent.

    Tested by the vanishing of every 2x2 minor, so zeros need no special
    handling.
    """
    if len(u) != len(v):
        raise ValueError("vectors of different lengths")
    return all(
        u[i] * v[j] == u[j] * v[i]
        for i, j in combinations(range(len(u)), 2)
    )


@dataclass(frozen=True)
class QMatrix:
    """Dense matrix of exact rationals, stored row-major."""

    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix must be nonempty")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def of(cls, rows: Iterable[Iterable[Scalar]]) -> "QMatrix":
        return cls(tuple(tuple(to_rat(v) for v in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.of(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def from_flat(cls, values: Sequence[Scalar], cols: int) -> "QMatrix":
        if len(values) % cols:
            raise ValueError("length is not a multiple of the row width")
        return cls.of(
            values[start : start + cols]
            for start in range(0, len(values), cols)
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def flat(self) -> Vector:
        return tuple(v for row in self.entries for v in row)

    def transpose(self) -> "QMatrix":
        return QMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        columns = list(zip(*other.entries))
        return QMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in columns)
                for row in self.entries
            )
        )

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return QMatrix(
            tuple(
                tuple(a + b for a, b in zip(r, s))
                for r, s in zip(self.entries, other.entries)
            )
        )

    def scale(self, factor: Scalar) -> "QMatrix":
        f = to_rat(factor)
        return QMatrix(tuple(tuple(f * v for v in row) for row in self.entries))

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        v = [to_rat(x) for x in vector]
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def submatrix(
        self, rows: Sequence[int], cols: Sequence[int]
    ) -> "QMatrix":
        return QMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def stack(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return QMatrix(self.entries + other.entries)

    def is_zero(self) -> bool:
        return not any(self.flat())

    def is_square(self) -> bool:
        return self.rows == self.cols


def _integer_rows(m: QMatrix) -> Tuple[List[List[int]], Fraction]:
    """Scale every row to integers; also return the product of the scales."""
    rows = []
    product = Fraction(1)
    for row in m.entries:
        scale = math.lcm(*(v.denominator for v in row))
        rows.append([int(v * scale) for v in row])
        product *= scale
    return rows, product


def _echelon(m: QMatrix) -> Tuple[List[List[int]], List[int], int, Fraction]:
    """Bareiss echelon form.

    Returns the integer echelon rows, the pivot columns, the sign of the
    row permutation and the product of the row scales used to clear
    denominators.
    """
    a, scales = _integer_rows(m)
    n, ncols = m.rows, m.cols
    pivots: List[int] = []
    sign = 1
    previous = 1
    r = 0
    for c in range(ncols):
        if r == n:
            break
        found = next((i for i in range(r, n) if a[i][c] != 0), None)
        if found is None:
            continue
        if found != r:
            a[r], a[found] = a[found], a[r]
            sign = -sign
        pivot = a[r][c]
        for i in range(r + 1, n):
            factor = a[i][c]
            for j in range(c + 1, ncols):
                a[i][j] = (pivot * a[i][j] - factor * a[r][j]) // previous
            a[i][c] = 0
        # exact: every updated entry is a minor of the scaled input
        previous = pivot
        pivots.append(c)
        r += 1
    return a, pivots, sign, scales


def rank(m: QMatrix) -> int:
    """Exact rank over the rationals."""
    return len(_echelon(m)[1])


def det(m: QMatrix) -> Fraction:
    """Exact determinant of a square matrix."""
    if not m.is_square():
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    a, pivots, sign, scales = _echelon(m)
    if len(pivots) < m.rows:
        return Fraction(0)
    return Fraction(sign * a[-1][-1]) / scales


def null_space(m: QMatrix) -> List[Vector]:
    """Basis of the right kernel, one vector per free column.

    Each vector is integral with coprime entries and a positive first
    nonzero entry.
    """
    a, pivots, _, _ = _echelon(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row_index in reversed(range(len(pivots))):
            pc = pivots[row_index]
            row = a[row_index]
            total = sum(
                (row[j] * v[j] for j in range(pc + 1, m.cols)), Fraction(0)
            )
            v[pc] = -total / row[pc]
        basis.append(tuple(Fraction(i) for i in normalize_vector(v)))
    return basis


def maximal_minors(m: QMatrix) -> List[Fraction]:
    """Determinants of all full-row column selections, in lex order."""
    if m.rows > m.cols:
        raise ValueError("maximal minors need rows <= cols")
    everything = range(m.rows)
    return [
        det(m.submatrix(everything, cols))
        for cols in combinations(range(m.cols), m.rows)
    ]


def adjugate(m: QMatrix) -> QMatrix:
    """Transposed cofactor matrix; m @ adjugate(m) = det(m) * I."""
    if not m.is_square():
        raise NonSquare(f"adjugate of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 1:
        return QMatrix.of([[1]])
    cofactors = [
        [
            (-1) ** (i + j)
            * det(
                m.submatrix(
                    [r for r in range(n) if r != i],
                    [c for c in range(n) if c != j],
                )
            )
            for j in range(n)
        ]
        for i in range(n)
    ]
    return QMatrix.of(cofactors).transpose()


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))
