import pytest

from monopole.chambers import (
    ChargeSpace,
    charge_space,
    chambers,
    cone_generators,
    dominant_point_count,
    dominant_points,
)
from monopole.classify import Verdict, classify_theory, scan_minimum
from monopole.formula import two_delta
from quiver.core import Sl2Flavor, U1Charges, dot
from utilities.errors import BudgetExceededError, DimensionLimitError

from tests.conftest import framed, load_fixture, unframed


def test_u1_single_flavor_has_two_chambers():
    fan = chambers(U1Charges((1,)))
    assert len(fan.chambers) == 2
    assert sorted(r for c in fan.chambers for r in c.reduced_rays) == [(-1,), (1,)]


def test_a2_mod_center_pins_the_second_vertex():
    theory = load_fixture("a2_11.json")
    space = charge_space(theory)
    assert space.dim == 1
    assert space.lift((3,)).to_json() == [[3], [0]]
    assert len(chambers(theory).chambers) == 2


@pytest.mark.parametrize("n", [0, 2, 5])
def test_sl2_has_two_chambers(n):
    assert len(chambers(Sl2Flavor(n)).chambers) == 2


def test_trivial_space_gives_empty_fan():
    fan = chambers(unframed("a", 2, (1, 0)))
    assert fan.space.dim == 0
    assert fan.chambers == ()


def test_dimension_guard():
    with pytest.raises(DimensionLimitError) as info:
        chambers(load_fixture("a2_21.json"), dim_limit=1)
    assert "brute_force_min" in str(info.value)


def test_cone_generators():
    assert cone_generators([(1, 0), (0, 1)], 2) == [(0, 1), (1, 0)]
    assert cone_generators([], 1) == [(-1,), (1,)]
    half_plane = cone_generators([(1, -1)], 2)
    assert (1, 1) in half_plane and (-1, -1) in half_plane
    assert all(x - y >= 0 for x, y in half_plane)


@pytest.mark.parametrize(
    "theory",
    [load_fixture("a2_21.json"), framed("a", 1, (2,), (1,)), unframed("a", 3, (1, 2, 1)), load_fixture("sl2_n4.json")],
)
def test_two_delta_is_linear_on_chambers(theory, rng):
    fan = chambers(theory)
    space = fan.space
    for chamber in fan.chambers:
        values = [two_delta(theory, space.lift(r)) for r in chamber.reduced_rays]
        for _ in range(20):
            coefficients = [rng.randint(0, 3) for _ in chamber.reduced_rays]
            point = tuple(
                sum(c * r[i] for c, r in zip(coefficients, chamber.reduced_rays)) for i in range(space.dim)
            )
            assert two_delta(theory, space.lift(point)) == sum(c * v for c, v in zip(coefficients, values))


def test_rays_respect_the_weyl_cone():
    theory = unframed("a", 3, (1, 2, 1))
    fan = chambers(theory)
    rows = fan.space.weyl_rows()
    for chamber in fan.chambers:
        for ray in chamber.reduced_rays:
            assert all(dot(row, ray) >= 0 for row in rows)


@pytest.mark.parametrize(
    "theory", [load_fixture("a2_21.json"), framed("a", 1, (3,), (1,)), U1Charges((2,)), Sl2Flavor(3)]
)
def test_dominant_point_count_matches_enumeration(theory):
    space = charge_space(theory)
    for radius in range(4):
        assert dominant_point_count(space, radius) == len(list(dominant_points(space, radius)))


def test_dominant_points_respect_the_budget():
    space = charge_space(unframed("d", 4, (1, 2, 1, 1)))
    with pytest.raises(BudgetExceededError):
        list(dominant_points(space, 10, budget=100))


def _pinned_at_first_vertex(theory):
    first = next(i for i, size in enumerate(theory.v) if size)
    space = charge_space(theory)
    return ChargeSpace(theory, space.full_dim, sum(theory.v[:first]) + theory.v[first] - 1)


@pytest.mark.parametrize(
    "name", ["a2_11.json", "a2_21.json", "a2_22.json", "affine_a1_delta.json", "affine_a1_2delta.json", "d4_1211.json"]
)
def test_minimum_does_not_depend_on_the_pinned_entry(name):
    theory = load_fixture(name)
    result = classify_theory(theory)
    if result.verdict is Verdict.BAD:
        reach = max(abs(x) for x in result.witness.flat())
    else:
        reach = result.certificate.radius_bound
    points = list(dominant_points(_pinned_at_first_vertex(theory), 2 * reach))
    value, _ = scan_minimum(theory, points)
    if result.verdict is Verdict.BAD:
        assert value <= 0
    else:
        assert value == result.min_value
