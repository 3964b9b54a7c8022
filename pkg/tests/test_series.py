import math

import numpy as np
import pytest

from toral_types.exceptions import ConfigurationError, ContractViolation, InternalError
from toral_types.oracle.elements import (
    hensel_torus_element,
    norm_one_residues,
    unramified_norm_one,
)
from toral_types.oracle.series import TruncSeries, check_field_size, non_square, residue_sqrt

Q, N = 3, 6


def t(e=1, c=1, prec=N):
    return TruncSeries.monomial(c, e, Q, prec)


def one(prec=N):
    return TruncSeries.one(Q, prec)


@pytest.mark.parametrize("q", [2, 4, 9, 1])
def test_field_size_must_be_an_odd_prime(q):
    with pytest.raises(ConfigurationError):
        check_field_size(q)


def test_residues():
    assert non_square(3) == 2
    assert non_square(5) == 2
    assert non_square(7) == 3
    assert residue_sqrt(4, 5) == 2
    assert residue_sqrt(2, 3) is None


def test_normalization():
    s = TruncSeries.from_coeffs([0, 0, 2, 0], Q, N)
    assert s.valuation == 2
    assert s.coeffs == (2,)
    zero = TruncSeries.zero(Q, N)
    assert zero.valuation == math.inf
    assert zero.start == N


def test_product_tracks_precision():
    product = t(2) * (one() + t())
    assert product.prec == N
    assert product.coefficient(3) == 1
    assert (t(-1) * one()).prec == N - 1


def test_inverse():
    s = one() + t()
    assert (s * s.inverse()).agrees_with(one(), N)
    assert t(2).inverse().valuation == -2


def test_inverse_of_zero():
    with pytest.raises(ContractViolation):
        TruncSeries.zero(Q, N).inverse()


def test_sqrt():
    s = one() + t()
    root = s.sqrt()
    assert (root * root).agrees_with(s, N)
    with pytest.raises(ContractViolation):
        t().sqrt()
    with pytest.raises(ContractViolation):
        TruncSeries.constant(2, Q, N).sqrt()


def test_valuation_undecidable_below_precision():
    zero = TruncSeries.zero(Q, 3)
    assert zero.valuation_at_least(3)
    with pytest.raises(InternalError):
        zero.valuation_at_least(5)


def test_hensel_with_zero_b():
    a, b = hensel_torus_element(TruncSeries.zero(Q, N))
    assert a.agrees_with(one(), N)


def test_hensel_with_unit_b():
    a, b = hensel_torus_element(TruncSeries.one(Q, 4))
    assert (a * a - t(prec=4)).agrees_with(one(4), 4)
    assert a.coefficient(0) == 1


def test_hensel_with_uniformizer_b():
    a, b = hensel_torus_element(t())
    assert (a * a - t(3)).agrees_with(one(), N)
    assert a.coefficient(3) == (Q + 1) // 2 % Q
    assert a.coefficient(1) == a.coefficient(2) == 0


def test_hensel_sign():
    a, _ = hensel_torus_element(one(), sign=-1)
    assert a.coefficient(0) == Q - 1


def test_hensel_rejects_poles():
    with pytest.raises(ContractViolation):
        hensel_torus_element(t(-1))


@pytest.mark.parametrize("q", [3, 5, 7])
def test_unramified_norm_one(q):
    rng = np.random.default_rng(7)
    eps = non_square(q)
    for a0, b0 in norm_one_residues(eps, q):
        a, b = unramified_norm_one(a0, b0, eps, q, N, rng)
        norm = a * a - b * b * eps
        assert norm.agrees_with(TruncSeries.one(q, N), N)


def test_valuations_add():
    f = t(1) * (one() + t())
    g = TruncSeries.monomial(2, 2, Q, N)
    assert (f * g).valuation == f.valuation + g.valuation == 3
