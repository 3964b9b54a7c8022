from fractions import Fraction

import numpy as np
import pytest

from toral_types.exceptions import ConfigurationError, ContractViolation
from toral_types.oracle import (
    FixedRegionCheck,
    StabilizerCheck,
    lemma_stabilizer_check,
    oracle_fixed_region,
    printed_pattern_check,
    remark_orbit_check,
)
from toral_types.oracle.elements import factor_block, embed_blocks, sample_torus_element
from toral_types.oracle.matrix import (
    LaurentMatrix,
    in_parahoric,
    parahoric_pattern,
    root_entry_map,
    root_group_element,
)
from toral_types.oracle.remark_orbit import PRINTED_G_C, PRINTED_G_WC
from toral_types.oracle.series import TruncSeries
from toral_types.roots import ApartmentPoint
from toral_types.torus import FactorKind, TorusSpec, all_specs

half = Fraction(1, 2)
P = ApartmentPoint.of
Q, N = 3, 6

ramified_pair = TorusSpec.from_counts(0, 2, 2)


def test_printed_patterns():
    assert [list(r) for r in PRINTED_G_C] == parahoric_pattern(
        (Fraction(1, 3), Fraction(1, 6)), 2
    ).render()
    assert [list(r) for r in PRINTED_G_WC] == parahoric_pattern(
        (Fraction(1, 6), Fraction(1, 3)), 2
    ).render()
    report = printed_pattern_check()
    assert report.verdict
    assert report.witnesses == ()


def test_pattern_at_the_origin_is_integral():
    assert parahoric_pattern((0,), 1).bounds == ((0, 0), (0, 0))


def test_pattern_depth():
    pattern = parahoric_pattern((0, 0), 2, Fraction(1, 10))
    assert pattern.bounds[0][2] == 1
    assert pattern.bounds[0][0] == 0
    with pytest.raises(ContractViolation):
        parahoric_pattern((0, 0), 2, -1)


def test_root_entry_map():
    roots = root_entry_map(2)
    assert len(set(roots.values())) == 8
    assert roots[(0, 2)] == (2, 0)


def test_identity_is_in_every_parahoric():
    identity = LaurentMatrix.identity(4, Q, N)
    for z in [P(0, 0), P(half, 0), P(Fraction(1, 3), Fraction(1, 6)), P(1, -half)]:
        assert in_parahoric(identity, parahoric_pattern(z, 2))


def test_trivial_torus_element():
    one, zero = TruncSeries.one(Q, N), TruncSeries.zero(Q, N)
    block = factor_block(FactorKind.RAMIFIED_MID, one, zero, 1, 2)
    g = embed_blocks([block, block], Q, N)
    assert in_parahoric(g, parahoric_pattern((Fraction(1, 3), Fraction(1, 6)), 2))


def test_sampled_torus_element():
    rng = np.random.default_rng(3)
    g = sample_torus_element(ramified_pair, Q, N, rng)
    assert g.is_symplectic()
    assert in_parahoric(g, parahoric_pattern((Fraction(1, 3), Fraction(1, 6)), 2))
    assert in_parahoric(g, parahoric_pattern((half, 0), 2))


def test_torus_element_leaves_a_far_vertex():
    b = TruncSeries.one(Q, N)
    a = (b + (b * b).shift(1)).sqrt()
    block = factor_block(FactorKind.RAMIFIED_MID, a, b, 1, 2)
    g = embed_blocks([block, block], Q, N)
    assert g.is_symplectic()
    assert not in_parahoric(g, parahoric_pattern((1, 0), 2))


def test_non_symplectic_matrix_is_rejected():
    g = LaurentMatrix.from_integers(np.diag([2, 1, 1, 1]), Q, N)
    with pytest.raises(ContractViolation):
        in_parahoric(g, parahoric_pattern((0, 0), 2))


def test_root_group_element_is_symplectic():
    c = TruncSeries.monomial(1, -1, Q, N)
    for position in root_entry_map(2):
        assert root_group_element(2, position, c).is_symplectic()


def test_fixed_region_check():
    report = FixedRegionCheck(ramified_pair, q=Q, prec=N, samples=32).run()
    assert report.verdict
    assert report.details["missing"] == []
    assert report.details["unexpected"] == []
    assert len(report.witnesses) == 4


@pytest.mark.parametrize(
    "spec, vertices",
    [
        (TorusSpec.from_counts(1, 0, 1), {P(half)}),
        (TorusSpec.from_counts(1, 1, 2), {P(half, 0), P(half, half)}),
    ],
)
def test_oracle_fixed_region(spec, vertices):
    assert oracle_fixed_region(spec, Q, N, samples=32) == vertices


def test_fixed_region_needs_enough_samples():
    with pytest.raises(ConfigurationError):
        FixedRegionCheck(ramified_pair, q=Q, prec=N, samples=8)


@pytest.mark.parametrize("q, violating", [(3, [1, 2]), (5, [1, 2, 3, 4])])
def test_remark_orbit(q, violating):
    report = remark_orbit_check(q, N, samples=32)
    assert report.verdict
    assert report.details["contained_for_zero"]
    assert report.details["contained_for_w"]
    assert report.details["violating_units"] == violating
    assert report.details["printed_representative_in_G_C"]
    assert len(report.witnesses) == len(violating)


def test_reports_are_deterministic():
    first = remark_orbit_check(Q, N, samples=32, seed=11).to_json()
    second = remark_orbit_check(Q, N, samples=32, seed=11).to_json()
    assert first == second


@pytest.mark.parametrize(
    "kwargs",
    [{"q": 4}, {"q": 2}, {"prec": 3}, {"samples": 0}, {"slack": 6}],
)
def test_oracle_configuration(kwargs):
    with pytest.raises(ConfigurationError):
        remark_orbit_check(kwargs.pop("q", Q), kwargs.pop("prec", N), **kwargs)


def test_stabilizer_check_sp4():
    report = StabilizerCheck((Fraction(1, 4), Fraction(1, 4)), Fraction(1, 10), q=Q, prec=N, samples=60).run()
    assert report.verdict
    assert report.details["vertices"] == ["(0, 0)", "(0, 1/2)", "(1/2, 0)", "(1/2, 1/2)"]


def test_stabilizer_check_at_a_vertex():
    assert lemma_stabilizer_check((half, 0), 0, Q, N, samples=40)


def test_stabilizer_check_sp6():
    assert lemma_stabilizer_check((half, Fraction(1, 4), 0), Fraction(1, 10), Q, N, samples=40)


def test_stabilizer_check_inputs():
    with pytest.raises(ConfigurationError):
        StabilizerCheck((0,), 0)
    with pytest.raises(ContractViolation):
        StabilizerCheck((1, 0), 0)
    with pytest.raises(ContractViolation):
        StabilizerCheck((0, 0), -1)


def test_torus_products_stay_symplectic():
    rng = np.random.default_rng(5)
    spec = TorusSpec.from_counts(0, 1, 2)
    g, h = (sample_torus_element(spec, Q, N, rng) for _ in range(2))
    assert (g @ h).is_symplectic()
    assert g.symplectic_inverse().is_symplectic()


@pytest.mark.parametrize("q", [3, 5])
@pytest.mark.parametrize("spec", [spec for n in (1, 2, 3) for spec in all_specs(n)], ids=str)
def test_fixed_region_check_over_every_spec(spec, q):
    report = FixedRegionCheck(spec, q=q, prec=8, samples=64).run()
    assert report.verdict, report.details


@pytest.mark.parametrize("q, violating", [(3, [1, 2]), (5, [1, 2, 3, 4])])
def test_remark_orbit_at_full_precision(q, violating):
    report = remark_orbit_check(q, 8, samples=64)
    assert report.verdict
    assert report.details["violating_units"] == violating
    assert len(report.witnesses) == len(violating)


@pytest.mark.parametrize(
    "x, s",
    [
        ((Fraction(1, 4), Fraction(1, 4)), Fraction(1, 10)),
        ((half, 0), 0),
        ((half, Fraction(1, 4), 0), Fraction(1, 10)),
        ((Fraction(1, 3), Fraction(1, 6)), Fraction(1, 5)),
    ],
)
def test_stabilizer_check_with_a_thousand_samples(x, s):
    report = StabilizerCheck(x, s, q=3, prec=8, samples=1000).run()
    assert report.verdict, report.witnesses[:3]


def test_sp6_stabilizer_sees_the_six_closure_vertices():
    report = StabilizerCheck((half, Fraction(1, 4), 0), Fraction(1, 10), q=3, prec=8, samples=32).run()
    assert report.details["vertices"] == [
        "(0, 0, 0)",
        "(1/2, 0, 0)",
        "(1/2, 1/2, -1/2)",
        "(1/2, 1/2, 0)",
        "(1/2, 1/2, 1/2)",
        "(1, 0, 0)",
    ]
