"""Tests for the face-splitting matrix and its transformations."""

import random
from fractions import Fraction

from hamcrest import assert_that, contains_exactly, has_length, is_
from hypothesis import given, settings
from hypothesis import strategies as st

from rankdrop.constants import CANONICAL_FRAME, FINITE_FRAME
from rankdrop.exact_linalg import (
    QMatrix,
    dot,
    null_space,
    proportional,
    rank,
)
from rankdrop.facesplit import (
    bilinear_pairing,
    build_z,
    finite_fixing,
    frame_fixing,
    kron,
    kron_row,
    matrix_to_vec,
    move_to_finite,
    transform,
    vec_to_matrix,
    z_rank,
)
from rankdrop.fuzzing import generic, random_homography
from rankdrop.projective import Config, Homography, PointP2
from tests import load_fixture

H1 = Homography.of([[1, 2, 0], [0, 1, -3], [4, 0, 1]])
H2 = Homography.of([[2, 0, 1], [1, -1, 0], [0, 3, 5]])

coordinate = st.integers(min_value=-9, max_value=9)
points = st.tuples(coordinate, coordinate, coordinate).filter(any).map(
    lambda v: PointP2.of(*v)
)
vectors = st.lists(
    st.fractions(max_denominator=5, min_value=-5, max_value=5),
    min_size=9,
    max_size=9,
)


def _ints(values):
    return [Fraction(v) for v in values]


def test_kron_row() -> None:
    """Entry x_a * y_b sits at column 3a + b."""
    assert_that(
        kron_row(PointP2.of(0, 0, 1), PointP2.of(0, 0, 1)),
        contains_exactly(*_ints([0, 0, 0, 0, 0, 0, 0, 0, 1])),
    )
    assert_that(
        kron_row(PointP2.of(1, 1, 1), PointP2.of(1, 1, 1)),
        contains_exactly(*_ints([1] * 9)),
    )


def test_build_z_of_example() -> None:
    """Rows of the five pairs with their y's on the line y = 0."""
    z = build_z(load_fixture("conic_five")).z
    expected = [
        [0, 0, 0, 0, 0, 0, 0, 0, 1],
        [1, 0, 1, 0, 0, 0, 1, 0, 1],
        [0, 0, 0, 3, 0, 1, 3, 0, 1],
        [-4, 0, 1, -4, 0, 1, -4, 0, 1],
        [400, 0, 50, 784, 0, 98, 904, 0, 113],
    ]
    assert_that(z.shape, is_((5, 9)))
    for row, values in zip(z.entries, expected):
        assert_that(proportional(row, _ints(values)), is_(True))
    assert_that(z.row(0), contains_exactly(*_ints(expected[0])))
    assert_that(build_z(load_fixture("conic_five")).deficient, is_(True))


def test_nonzero_columns_of_collinear_side() -> None:
    """Points on z = 0 leave the columns 3a + 2 empty."""
    fs = build_z(load_fixture("line_case"))
    assert_that(fs.nonzero_columns(), is_([0, 1, 3, 4, 6, 7]))


@settings(max_examples=100, derandomize=True)
@given(vectors, points, points)
def test_vec_to_matrix_pairs_like_the_row(v, x, y) -> None:
    m = vec_to_matrix(v)
    assert_that(bilinear_pairing(m, x, y), is_(dot(kron_row(x, y), v)))
    assert_that(matrix_to_vec(m), contains_exactly(*v))


@settings(max_examples=100, derandomize=True)
@given(points, points)
def test_kron_transforms_rows(x, y) -> None:
    """The row of (H1 x, H2 y) is (H1 kron H2) times the row of (x, y)."""
    k = kron(H1.matrix, H2.matrix)
    assert_that(
        proportional(
            k.apply(kron_row(x, y)), kron_row(H1.apply(x), H2.apply(y))
        ),
        is_(True),
    )


def test_transform_identity() -> None:
    c = load_fixture("frame_six")
    identity = Homography.identity()
    assert_that(transform(c, identity, identity), is_(c))


def test_transform_preserves_rank() -> None:
    assert_that(
        z_rank(transform(load_fixture("conic_five"), H1, H2)), is_(4)
    )
    related = load_fixture("identity_six")
    assert_that(z_rank(related), is_(6))
    assert_that(z_rank(transform(related, H1, H1)), is_(6))


def test_skew_kernel_of_identity_pairs() -> None:
    """Pairs (x, x) are annihilated exactly by the skew matrices."""
    z = build_z(load_fixture("identity_six")).z
    skew = [
        QMatrix.of([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]),
        QMatrix.of([[0, 0, 1], [0, 0, 0], [-1, 0, 0]]),
        QMatrix.of([[0, 0, 0], [0, 0, 1], [0, -1, 0]]),
    ]
    kernel = [matrix_to_vec(m) for m in skew]
    for v in kernel:
        assert_that(any(z.apply(v)), is_(False))
    assert_that(rank(QMatrix.of(kernel)), is_(3))
    assert_that(null_space(z), has_length(3))


def test_move_to_finite() -> None:
    c = Config.of(
        [[1, 2, 0], [0, 1, 0], [1, 0, 0], [3, 1, 2]],
        [[1, 0, 0], [0, 1, 0], [2, 5, 1], [1, 1, 1]],
    )
    moved, h1, h2 = move_to_finite(c)
    assert_that(all(p.is_finite() for p in moved.xs + moved.ys), is_(True))
    assert_that(z_rank(moved), is_(z_rank(c)))
    assert_that(transform(c, h1, h2), is_(moved))


def test_move_to_finite_keeps_finite_input() -> None:
    c = load_fixture("conic_five")
    moved, h1, h2 = move_to_finite(c)
    assert_that(moved, is_(c))
    assert_that(h1, is_(Homography.identity()))
    assert_that(h2, is_(Homography.identity()))


def test_frame_fixing() -> None:
    """The first four points of each side go to the coordinate frame."""
    c = load_fixture("frame_six")
    fixed, _, _ = frame_fixing(transform(c, H1, H2))
    frame = [PointP2(p) for p in CANONICAL_FRAME]
    assert_that(fixed.xs[:4], is_(frame))
    assert_that(fixed.ys[:4], is_(frame))
    assert_that(fixed, is_(c))


def test_finite_fixing() -> None:
    c = load_fixture("frame_six")
    fixed, _, _ = finite_fixing(c)
    frame = [PointP2(p) for p in FINITE_FRAME]
    assert_that(fixed.xs[:4], is_(frame))
    assert_that(fixed.ys[:4], is_(frame))
    assert_that(z_rank(fixed), is_(5))


def test_transform_acts_on_every_row() -> None:
    """Random pairs and homographies: rows move by the Kronecker product."""
    rng = random.Random(71)
    for _ in range(40):
        c = generic(rng, rng.randint(2, 6))
        h1, h2 = random_homography(rng), random_homography(rng)
        k = kron(h1.matrix, h2.matrix)
        z = build_z(c).z
        moved = build_z(transform(c, h1, h2)).z
        for row, image in zip(z.entries, moved.entries):
            assert_that(proportional(k.apply(row), image), is_(True))
        assert_that(rank(moved), is_(rank(z)))
