import pytest

from monopole.chambers import charge_space, dominant_points
from monopole.classify import (
    SL2_THREE_FLAVOR_NOTE,
    Verdict,
    brute_force_min,
    classify_theory,
    never_good_witness,
    scan_minimum,
    verify_never_good,
)
from monopole.formula import Coweight, two_delta
from quiver.core import Group, QuiverTheory, Sl2Flavor, standard_quiver
from utilities.errors import DimensionLimitError, PreconditionError

from tests.conftest import FIXTURES, framed, load_fixture, unframed

ORACLE_FIXTURES = sorted(
    p.name for p in FIXTURES.glob("*.json") if p.name not in ("paper_checks.json", "e6_highest.json")
)


def test_a2_positive_root_is_ugly():
    result = classify_theory(load_fixture("a2_11.json"))
    assert result.verdict is Verdict.UGLY
    assert result.witness == Coweight(((1,), (0,)))
    assert result.min_value == 1
    assert result.certificate.kind == "chambers"


def test_a2_non_root_is_bad_with_smallest_witness():
    result = classify_theory(load_fixture("a2_21.json"))
    assert result.verdict is Verdict.BAD
    assert result.witness == Coweight(((1, 0), (0,)))
    assert result.witness_value == -1


def test_affine_a1_delta_is_good():
    result = classify_theory(load_fixture("affine_a1_delta.json"))
    assert result.verdict is Verdict.GOOD
    assert result.min_value == 2


def test_d4_highest_root_is_ugly():
    assert classify_theory(load_fixture("d4_1211.json")).verdict is Verdict.UGLY


@pytest.mark.parametrize(
    "n, verdict, min_value",
    [(0, Verdict.BAD, None), (1, Verdict.BAD, None), (2, Verdict.BAD, None),
     (3, Verdict.GOOD, 2), (5, Verdict.GOOD, 6), (6, Verdict.GOOD, 8)],
)
def test_sl2_flavor_verdicts(n, verdict, min_value):
    result = classify_theory(Sl2Flavor(n))
    assert result.verdict is verdict
    assert result.min_value == min_value


def test_sl2_three_flavors_is_flagged():
    assert SL2_THREE_FLAVOR_NOTE in classify_theory(Sl2Flavor(3)).notes
    assert classify_theory(Sl2Flavor(4)).notes == ()


def test_simple_root_has_trivial_charge_lattice():
    result = classify_theory(unframed("a", 3, (0, 1, 0)))
    assert result.verdict is Verdict.UGLY
    assert result.certificate.kind == "trivial"
    assert result.witness is None


def test_dimension_guard():
    with pytest.raises(DimensionLimitError):
        classify_theory(load_fixture("d4_1211.json"), dim_limit=2, prescan_radius=0)


def test_threads_do_not_change_the_verdict():
    theory = framed("a", 2, (2, 1), (1, 1))
    single = classify_theory(theory, threads=1)
    parallel = classify_theory(theory, threads=4)
    assert (single.verdict, single.min_value, single.witness) == (parallel.verdict, parallel.min_value, parallel.witness)


def test_worker_processes_reproduce_the_in_process_scan():
    theory = framed("a", 2, (2, 1), (1, 1))
    points = list(dominant_points(charge_space(theory), 2))
    assert scan_minimum(theory, points, threads=3, min_points=0) == scan_minimum(theory, points)
    assert scan_minimum(theory, points, threads=3) == scan_minimum(theory, points)


def test_brute_force_examples():
    assert brute_force_min(load_fixture("a2_11.json"), 3) == (1, Coweight(((1,), (0,))))
    assert brute_force_min(Sl2Flavor(4), 3) == (4, Coweight.scalar(1))
    jordan = QuiverTheory(standard_quiver("jordan", 1), (1,), (0,), Group.PROD_GL)
    assert brute_force_min(jordan, 3) == (0, Coweight(((1,),)))


def test_brute_force_on_a_trivial_lattice():
    assert brute_force_min(unframed("a", 2, (1, 0)), 2) == (None, None)


@pytest.mark.parametrize("name", ORACLE_FIXTURES)
def test_classifier_agrees_with_brute_force(name):
    theory = load_fixture(name)
    result = classify_theory(theory)
    radius = max(3, result.certificate.radius_bound or 0)
    value, witness = brute_force_min(theory, radius)
    if result.verdict is Verdict.BAD:
        assert value <= 0
        assert two_delta(theory, result.witness) == result.witness_value <= 0
    else:
        assert value == result.min_value
        assert (result.verdict is Verdict.UGLY) == (value == 1)
        assert two_delta(theory, result.witness) == result.min_value


def test_framing_never_lowers_the_minimum():
    values = [brute_force_min(framed("a", 1, (2,), (w,)), 3)[0] for w in range(1, 5)]
    assert values == sorted(values)
    values = [brute_force_min(framed("a", 2, (1, 1), (w, 0)), 3)[0] for w in range(1, 4)]
    assert values == sorted(values)


def test_a2_is_never_good():
    report = verify_never_good(standard_quiver("a", 2), (2, 2))
    assert report.family == "A"
    assert report.all_non_good
    assert report.root_rule_holds
    ugly = {e.v for e in report.entries if e.verdict is Verdict.UGLY}
    assert ugly == {(1, 0), (0, 1), (1, 1)}


@pytest.mark.slow
def test_a3_is_never_good_and_ugly_exactly_on_roots():
    report = verify_never_good(standard_quiver("a", 3), (2, 2, 2))
    assert report.all_non_good
    assert report.root_rule_holds
    assert sum(1 for e in report.entries if e.verdict is Verdict.UGLY) == 6


@pytest.mark.slow
def test_d4_is_never_good_and_ugly_exactly_on_roots():
    report = verify_never_good(standard_quiver("d", 4), (2, 2, 2, 2))
    assert report.family == "D"
    assert report.all_non_good
    assert report.root_rule_holds


def test_single_vertex_rank_two_is_bad():
    assert classify_theory(unframed("a", 1, (2,))).verdict is Verdict.BAD


@pytest.mark.parametrize("name", ["a2_11.json", "a2_22.json", "d4_1211.json"])
def test_never_good_witness_has_weight_at_most_one(name):
    theory = load_fixture(name)
    charge, value = never_good_witness(theory)
    assert value <= 1
    assert two_delta(theory, charge) == value


def test_e6_highest_root_is_not_good():
    _, value = never_good_witness(load_fixture("e6_highest.json"))
    assert value == 1


def test_never_good_witness_needs_unframed_finite():
    with pytest.raises(PreconditionError):
        never_good_witness(load_fixture("a1_framed_12.json"))
    with pytest.raises(PreconditionError):
        never_good_witness(load_fixture("affine_a1_delta.json"))
