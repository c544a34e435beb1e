"""Tests for the pencil, its cubic surface and the double six."""

import random
from fractions import Fraction
from itertools import product

import pytest
from hamcrest import assert_that, has_length, is_

from rankdrop import fuzzing
from rankdrop.cubic_surface import (
    CUBIC_MONOMIALS,
    CubicForm,
    LineP3,
    Pencil,
    blow_down_left,
    blow_down_right,
    blow_up,
    cubic_form,
    double_six,
    line_x,
    line_y,
    pencil_from_config,
    plucker_meet,
    verify_double_six,
)
from rankdrop.errors import (
    NotDeficient,
    NotOnSurface,
    RankDropError,
    RankNotThree,
    RankNotTwo,
)
from rankdrop.exact_linalg import QMatrix, det, rank
from rankdrop.facesplit import bilinear_pairing, matrix_to_vec
from rankdrop.projective import Config, PointP2, general_position_p2
from rankdrop.synthesis import sixth_pair
from tests import load_fixture

SAMPLES = [(1, 0, 0, 0), (1, 2, -1, 3), (0, 5, 2, -4), (7, 1, 1, 1), (2, -3, 0, 9)]


def block_pencil() -> Pencil:
    return Pencil(
        (
            QMatrix.of([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
            QMatrix.of([[0, 0, 0], [0, 1, 0], [0, 0, 0]]),
            QMatrix.of([[0, 0, 0], [0, 0, 0], [0, 0, 1]]),
            QMatrix.of([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
        )
    )


def test_pencil_annihilates_the_pairs() -> None:
    c = load_fixture("frame_six")
    p = pencil_from_config(c)
    assert_that(p.basis, has_length(4))
    for z in SAMPLES:
        m = p.at(z)
        for pair in c.pairs:
            assert_that(bilinear_pairing(m, pair.x, pair.y), is_(Fraction(0)))


def test_pencil_of_full_rank_pairs() -> None:
    with pytest.raises(NotDeficient):
        pencil_from_config(load_fixture("identity_six"))


def test_five_pairs_share_the_pencil() -> None:
    """The sixth pair adds no condition on the kernel."""
    five = pencil_from_config(load_fixture("frame_five"))
    six = pencil_from_config(load_fixture("frame_six"))
    stacked = QMatrix.of(matrix_to_vec(m) for m in five.basis + six.basis)
    assert_that(rank(stacked), is_(4))


def test_pencil_rejects_dependent_basis() -> None:
    with pytest.raises(ValueError):
        Pencil((QMatrix.identity(3),) * 4)


def test_cubic_form_of_block_pencil() -> None:
    """det [[z0, 0, 0], [0, z1, z3], [0, z3, z2]] = z0 (z1 z2 - z3^2)."""
    form = cubic_form(block_pencil())
    assert_that(form.coefficients[CUBIC_MONOMIALS.index((0, 1, 2))], is_(Fraction(1)))
    assert_that(form.coefficients[CUBIC_MONOMIALS.index((0, 3, 3))], is_(Fraction(-1)))
    assert_that(form.coefficients[CUBIC_MONOMIALS.index((0, 0, 0))], is_(Fraction(0)))
    for z in product(range(-2, 3), repeat=4):
        z0, z1, z2, z3 = z
        assert_that(form.value(z), is_(Fraction(z0 * (z1 * z2 - z3 * z3))))


def test_cubic_form_matches_determinant() -> None:
    p = pencil_from_config(load_fixture("frame_six"))
    form = cubic_form(p)
    assert_that(form.is_zero(), is_(False))
    for z in SAMPLES:
        assert_that(form.value(z), is_(det(p.at(z))))


def test_cubic_form_partials() -> None:
    form = cubic_form(block_pencil())
    # at (1, 2, 3, 1): z1 z2 - z3^2, z0 z2, z0 z1, -2 z0 z3
    assert_that(
        form.partials((1, 2, 3, 1)),
        is_((Fraction(5), Fraction(3), Fraction(2), Fraction(-2))),
    )


def test_cubic_form_size() -> None:
    with pytest.raises(ValueError):
        CubicForm((Fraction(1),) * 3)


def test_line_x_lies_on_the_surface() -> None:
    c = load_fixture("frame_six")
    p = pencil_from_config(c)
    form = cubic_form(p)
    line = line_x(p, c.xs[0])
    for s, t in ((1, 0), (0, 1), (2, -3)):
        z = line.point_at(s, t)
        assert_that(form.value(z), is_(Fraction(0)))
        assert_that(any(p.at(z).apply(c.xs[0].vector)), is_(False))


def test_line_y_lies_on_the_surface() -> None:
    c = load_fixture("frame_six")
    p = pencil_from_config(c)
    form = cubic_form(p)
    line = line_y(p, c.ys[0])
    for s, t in ((1, 0), (0, 1), (5, 2)):
        assert_that(form.value(line.point_at(s, t)), is_(Fraction(0)))


def test_lines_of_other_points() -> None:
    p = pencil_from_config(load_fixture("frame_six"))
    with pytest.raises(RankNotTwo):
        line_x(p, PointP2.of(2, -1, 5))
    with pytest.raises(RankNotTwo):
        line_y(p, PointP2.of(2, -1, 5))


def test_plucker_meet() -> None:
    a = LineP3.from_points((1, 0, 0, 0), (0, 1, 0, 0))
    b = LineP3.from_points((0, 0, 1, 0), (0, 0, 0, 1))
    assert_that(plucker_meet(a, a), is_(Fraction(0)))
    assert_that(plucker_meet(a, b) != 0, is_(True))
    common = (1, 2, 3, 4)
    c = LineP3.from_points(common, (0, 1, -1, 2))
    d = LineP3.from_points(common, (5, 0, 1, 1))
    assert_that(plucker_meet(c, d), is_(Fraction(0)))


def test_plucker_relation() -> None:
    with pytest.raises(ValueError):
        LineP3((1, 0, 0, 0, 0, 1), ((0,) * 4, (0,) * 4))
    with pytest.raises(ValueError):
        LineP3.from_points((1, 2, 3, 4), (2, 4, 6, 8))


def test_double_six() -> None:
    lx, ly = double_six(load_fixture("frame_six"))
    assert_that(lx, has_length(6))
    assert_that(verify_double_six(lx, ly), is_(True))
    swapped = [ly[1], ly[0]] + ly[2:]
    assert_that(verify_double_six(lx, swapped), is_(False))


def test_five_of_the_double_six() -> None:
    lx, ly = double_six(load_fixture("frame_five"))
    assert_that(lx, has_length(5))
    assert_that(verify_double_six(lx, ly), is_(True))


def test_blow_down_recovers_the_points() -> None:
    c = load_fixture("frame_six")
    p = pencil_from_config(c)
    z = line_x(p, c.xs[0]).point_at(1, 2)
    assert_that(blow_down_right(p, z), is_(c.xs[0]))
    w = line_y(p, c.ys[2]).point_at(1, 2)
    assert_that(blow_down_left(p, w), is_(c.ys[2]))


def test_blow_up_and_down() -> None:
    c = load_fixture("frame_six")
    p = pencil_from_config(c)
    u = PointP2.of(2, -1, 5)
    z = blow_up(p, u)
    assert_that(cubic_form(p).value(z), is_(Fraction(0)))
    assert_that(blow_down_right(p, z), is_(u))
    m = p.at(z)
    left = blow_down_left(p, z)
    assert_that(bilinear_pairing(m, u, left), is_(Fraction(0)))
    with pytest.raises(RankNotThree):
        blow_up(p, c.xs[1])


def test_blow_down_off_the_surface() -> None:
    p = pencil_from_config(load_fixture("frame_six"))
    form = cubic_form(p)
    z = next(z for z in SAMPLES if form.value(z) != 0)
    with pytest.raises(NotOnSurface):
        blow_down_right(p, z)


def test_double_six_of_random_deficient_pairs() -> None:
    """Completed random pairs in general position carry a double six."""
    rng = random.Random(59)
    checked = 0
    while checked < 25:
        five = fuzzing.generic(rng, 5)
        try:
            six = Config(five.pairs + (sixth_pair(five),))
        except RankDropError:
            continue
        if not (general_position_p2(six.xs) and general_position_p2(six.ys)):
            continue
        lx, ly = double_six(six)
        assert_that(verify_double_six(lx, ly), is_(True))
        checked += 1
