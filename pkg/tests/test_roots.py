from fractions import Fraction

import pytest

from toral_types.exceptions import ConfigurationError, ContractViolation
from toral_types.roots import (
    AffineRoot,
    ApartmentPoint,
    build_root_datum,
    eval_affine,
    fundamental_alcove_vertices,
    in_fundamental_alcove,
    reduce_to_alcove,
    vertex_type,
)

half = Fraction(1, 2)
P = ApartmentPoint.of


def test_c2_roots():
    rd = build_root_datum("C", 2)
    assert set(rd.roots) == {
        (2, 0), (-2, 0), (0, 2), (0, -2), (1, -1), (-1, 1), (1, 1), (-1, -1)
    }
    assert rd.highest_root == (2, 0)
    assert rd.rank == 2


def test_c1_roots():
    rd = build_root_datum("C", 1)
    assert set(rd.roots) == {(2,), (-2,)}


def test_a_roots_are_closed_under_negation():
    rd = build_root_datum("A", 3)
    assert len(rd.roots) == 6
    assert {tuple(-c for c in a) for a in rd.roots} == set(rd.roots)
    assert all(sum(a) == 0 for a in rd.roots)


@pytest.mark.parametrize("family, n", [("B", 2), ("C", 0), ("A", 1)])
def test_unsupported_root_data(family, n):
    with pytest.raises(ConfigurationError):
        build_root_datum(family, n)


@pytest.mark.parametrize(
    "psi, z, value",
    [
        (AffineRoot((2, 0), 0), P(half, 0), 1),
        (AffineRoot((1, 1), -1), P(half, half), 0),
        (AffineRoot((1, -1), 3), P(Fraction(1, 4), Fraction(1, 4)), 3),
    ],
)
def test_eval_affine(psi, z, value):
    assert eval_affine(psi, z) == value


def test_eval_affine_dimension_mismatch():
    with pytest.raises(ContractViolation):
        eval_affine(AffineRoot((2, 0), 0), P(half))


def test_float_coordinates_are_rejected():
    with pytest.raises(ContractViolation):
        P(0.5, 0)


def test_alcove_vertices():
    assert fundamental_alcove_vertices(build_root_datum("C", 2)) == [
        P(0, 0), P(half, 0), P(half, half)
    ]
    assert fundamental_alcove_vertices(build_root_datum("C", 1)) == [P(0), P(half)]
    c4 = fundamental_alcove_vertices(build_root_datum("C", 4))
    assert len(c4) == 5
    assert c4[3] == P(half, half, half, 0)


def test_a_alcove_vertices_have_trace_zero():
    vertices = fundamental_alcove_vertices(build_root_datum("A", 4))
    assert len(vertices) == 4
    assert all(sum(v) == 0 for v in vertices)


def test_reduce_point_in_alcove():
    rd = build_root_datum("C", 2)
    reduced, word = reduce_to_alcove(P(half, half), rd)
    assert reduced == P(half, half)
    assert len(word) == 0


def test_reflected_vertex_reduces_back():
    rd = build_root_datum("C", 2)
    reduced, word = reduce_to_alcove(P(0, half), rd)
    assert reduced == P(half, 0)
    assert word.apply(P(0, half), rd) == reduced
    assert word.apply_inverse(reduced, rd) == P(0, half)


def test_reduce_far_point():
    rd = build_root_datum("C", 2)
    reduced, word = reduce_to_alcove(P(Fraction(3, 2), -half), rd)
    assert in_fundamental_alcove(reduced, rd)
    assert all((2 * c).denominator == 1 for c in reduced)
    assert word.apply(P(Fraction(3, 2), -half), rd) == reduced


def test_reduce_checks_dimension():
    with pytest.raises(ContractViolation):
        reduce_to_alcove(P(half), build_root_datum("C", 2))


def test_vertex_type():
    rd = build_root_datum("C", 2)
    assert vertex_type(P(half, half), rd) == 2
    assert vertex_type(P(-half, 0), rd) == 1
    assert vertex_type(P(Fraction(1, 4), Fraction(1, 4)), rd) is None
