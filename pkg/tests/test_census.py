import math
import time
from fractions import Fraction

import pytest

from toral_types.apartment import omega_region
from toral_types.census import (
    CensusInput,
    Verdict,
    census_tsv,
    classify_box,
    classify_location,
    obvious_type_locations,
    run_census,
    strong_unicity_failure_witness,
    strong_unicity_verdict,
)
from toral_types.exceptions import ApplicabilityError, ContractViolation
from toral_types.roots import ApartmentPoint
from toral_types.torus import TorusSpec, all_specs, attachment_point, fixed_region

half = Fraction(1, 2)
P = ApartmentPoint.of

ramified_pair = TorusSpec.from_counts(0, 2, 2)


def test_census_of_the_ramified_pair():
    report = run_census(CensusInput(ramified_pair, Fraction(3, 5)))
    assert report.counts == (1, 2, 1)
    assert report.c_t == half
    assert report.unicity_applicable
    assert not report.strong_unicity
    assert not report.single_facet


def test_census_of_unramified_torus():
    report = run_census(CensusInput(TorusSpec.from_counts(2, 0, 2), Fraction(1, 10)))
    assert report.counts == (0, 0, 1)
    assert report.strong_unicity


def test_census_counts_are_binomial():
    report = run_census(CensusInput(TorusSpec.from_counts(1, 3, 5), Fraction(2, 3)))
    assert report.counts == (0, 1, 3, 3, 1, 0)
    assert report.total == 8


def test_census_below_the_radius_is_not_applicable():
    report = run_census(CensusInput(ramified_pair, half))
    assert not report.unicity_applicable


def test_census_json():
    data = run_census(CensusInput.from_depth(ramified_pair, Fraction(6, 5))).to_json()
    assert list(data) == [
        "spec",
        "s0",
        "cT",
        "applicable",
        "counts",
        "strong_unicity",
        "single_facet",
        "assumes_BT_eq_AT",
        "scope",
    ]
    assert data["s0"] == "3/5"
    assert data["cT"] == "1/2"
    assert data["counts"] == {"v0": 1, "v1": 2, "v2": 1}
    assert data["spec"] == {"m": 0, "l": 2, "n": 2}


def test_census_tsv():
    report = run_census(CensusInput(ramified_pair, Fraction(3, 5)))
    assert census_tsv(report) == (
        "vertex_type\tcoordinates\tcount\n"
        "v0\t0/1,0/1\t1\n"
        "v1\t1/2,0/1\t2\n"
        "v2\t1/2,1/2\t1\n"
    )


@pytest.mark.parametrize("s0", [0, -1])
def test_census_needs_positive_depth(s0):
    with pytest.raises(ContractViolation):
        CensusInput(ramified_pair, s0)


def test_vertex_in_fixed_region_carries_a_type():
    verdict = classify_location(CensusInput(ramified_pair, Fraction(3, 5)), P(half, 0))
    assert verdict.verdict == Verdict.TYPE
    assert verdict.witness is None


def test_vertex_outside_fixed_region_has_a_witness():
    census = CensusInput(ramified_pair, Fraction(3, 5))
    verdict = classify_location(census, P(-half, 0))
    assert verdict.verdict == Verdict.NON_TYPE
    omega = omega_region(P(Fraction(1, 4), Fraction(1, 4)), census.s0, ramified_pair.root_datum)
    assert omega.contains(verdict.witness)
    assert not fixed_region(ramified_pair).contains(verdict.witness)


def test_out_of_window():
    verdict = classify_location(CensusInput(ramified_pair, half), P(half, 0))
    assert verdict.verdict == Verdict.OUT_OF_WINDOW


def test_location_must_be_a_vertex():
    with pytest.raises(ContractViolation):
        classify_location(CensusInput(ramified_pair, 1), P(Fraction(1, 4), Fraction(1, 4)))


def test_classify_box():
    verdicts = classify_box(CensusInput(ramified_pair, 1))
    types = sorted(v.location.coords for v in verdicts if v.verdict == Verdict.TYPE)
    assert types == [(0, 0), (0, half), (half, 0), (half, half)]
    assert len(verdicts) == 25


def test_obvious_types():
    locations = obvious_type_locations(CensusInput(ramified_pair, Fraction(1, 10)))
    assert locations == [P(0, 0), P(half, half)]


@pytest.mark.parametrize(
    "spec, verdict",
    [
        (ramified_pair, False),
        (TorusSpec.from_counts(2, 1, 4), True),
        (TorusSpec.from_counts(1, 0, 3), True),
    ],
)
def test_strong_unicity_verdict(spec, verdict):
    result, reason = strong_unicity_verdict(CensusInput(spec, 1))
    assert result == verdict
    assert reason


def test_strong_unicity_needs_large_depth():
    with pytest.raises(ApplicabilityError):
        strong_unicity_verdict(CensusInput(ramified_pair, half))


def test_failure_witness():
    y, z = strong_unicity_failure_witness(ramified_pair)
    assert {y, z} == {P(0, half), P(half, 0)}
    assert strong_unicity_failure_witness(TorusSpec.from_counts(1, 1, 3)) is None


def binomial_counts(spec: TorusSpec) -> tuple[int, ...]:
    counts = [0] * (spec.n + 1)
    for t in range(spec.l + 1):
        counts[spec.m + t] = math.comb(spec.l, t)
    return tuple(counts)


@pytest.mark.parametrize("n", range(1, 7))
def test_census_over_every_spec(n):
    for spec in all_specs(n):
        report = run_census(CensusInput(spec, 1))
        assert report.counts == binomial_counts(spec)
        assert report.c_t == (half if spec.l else 0)
        assert report.unicity_applicable
        assert report.strong_unicity == (spec.l <= 1) == report.single_facet
        assert strong_unicity_verdict(CensusInput(spec, 1))[0] == (spec.l <= 1)


def test_census_at_rank_eight():
    spec = TorusSpec.from_counts(1, 6, 8)
    start = time.perf_counter()
    report = run_census(CensusInput(spec, 1))
    assert time.perf_counter() - start < 10
    assert report.counts == (0, 1, 6, 15, 20, 15, 6, 1, 0)
    assert report.counts == binomial_counts(spec)


@pytest.mark.parametrize(
    "spec",
    [spec for n in (1, 2) for spec in all_specs(n) if spec != ramified_pair]
    + [TorusSpec.from_counts(1, 1, 3), TorusSpec.from_counts(0, 3, 3)],
)
def test_types_are_the_vertices_of_the_fixed_region(spec):
    census = CensusInput(spec, 1)
    region = fixed_region(spec)
    omega = omega_region(attachment_point(spec), census.s0, spec.root_datum)
    for verdict in classify_box(census):
        if region.contains(verdict.location):
            assert verdict.verdict == Verdict.TYPE
        else:
            assert verdict.verdict == Verdict.NON_TYPE
            assert omega.contains(verdict.witness)
            assert not region.contains(verdict.witness)
