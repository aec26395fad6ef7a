import json

import pytest

from quiver.core import (
    GraphClass,
    Group,
    Quiver,
    QuiverTheory,
    Sl2Flavor,
    U1Charges,
    cartan_matrix,
    cartan_pairing,
    classify_graph,
    connected_support,
    dynkin_family,
    parse_theory,
    serialize_theory,
    standard_quiver,
)
from utilities.errors import PreconditionError, TheoryValidationError

from tests.conftest import FIXTURES, load_fixture


def test_parse_minimal_a2_theory():
    text = json.dumps(
        {"vertices": ["1", "2"], "edges": [["1", "2"]], "v": {"1": 1, "2": 1}, "group": "prod-gl-mod-center"}
    )
    theory = parse_theory(text)
    assert theory.v == (1, 1)
    assert theory.w == (0, 0)
    assert theory.group is Group.PROD_GL_MOD_CENTER


def test_disconnected_support_is_rejected():
    text = json.dumps(
        {
            "vertices": ["1", "2", "3"],
            "edges": [["1", "2"], ["2", "3"]],
            "v": {"1": 1, "2": 0, "3": 1},
            "group": "prod-gl-mod-center",
        }
    )
    with pytest.raises(TheoryValidationError) as info:
        parse_theory(text)
    assert info.value.rule == "support-connected"
    assert "support disconnected" in str(info.value)


def test_affine_a1_parses_and_classifies_affine():
    theory = load_fixture("affine_a1_delta.json")
    graph = classify_graph(theory.quiver)
    assert graph.kind is GraphClass.AFFINE
    assert graph.delta == (1, 1)


@pytest.mark.parametrize(
    "payload, rule",
    [
        ({"vertices": ["1", "1"], "v": {"1": 1}}, "unique-vertices"),
        ({"vertices": ["1"], "edges": [["1", "2"]], "v": {"1": 1}}, "edge-endpoints"),
        ({"vertices": ["1"], "v": {"2": 1}}, "dimension-domain"),
        ({"vertices": ["1"], "v": {"1": -1}, "w": {"1": 1}}, "nonnegative-dimension"),
        ({"vertices": ["1"], "v": {"1": 1}, "w": {"1": 1}, "group": "prod-gl-mod-center"},
         "mod-center-requires-unframed"),
        ({"vertices": ["1"], "v": {"1": 0}}, "nonzero-v"),
        ({"vertices": ["1", "2"], "edges": [["1", "1"], ["1", "2"]], "v": {"1": 1}}, "loops-only-on-jordan"),
        ({"sl2_flavors": 2, "u1_charges": [1]}, "malformed-document"),
        ({"u1_charges": [2, 0]}, "nonzero-charges"),
    ],
)
def test_invariant_violations_name_the_rule(payload, rule):
    with pytest.raises(TheoryValidationError) as info:
        parse_theory(json.dumps(payload))
    assert info.value.rule == rule


def test_malformed_json_is_a_validation_error():
    with pytest.raises(TheoryValidationError) as info:
        parse_theory("{not json")
    assert info.value.rule == "malformed-document"


def test_cartan_matrices():
    assert cartan_matrix(standard_quiver("a", 2)) == ((2, -1), (-1, 2))
    assert cartan_matrix(standard_quiver("jordan", 1)) == ((0,),)
    assert cartan_matrix(standard_quiver("affine-a", 1)) == ((2, -2), (-2, 2))


@pytest.mark.parametrize(
    "kind, rank", [("a", 4), ("d", 5), ("e", 6), ("affine-a", 3), ("affine-d", 4), ("jordan", 1)]
)
def test_cartan_matrix_is_symmetric(kind, rank):
    C = cartan_matrix(standard_quiver(kind, rank))
    assert all(C[i][j] == C[j][i] for i in range(len(C)) for j in range(len(C)))


def test_cartan_pairing_examples():
    C = cartan_matrix(standard_quiver("a", 2))
    assert cartan_pairing((1, 1), (1, 1), C) == 2
    assert cartan_pairing((0, 0), (1, 1), C) == 0
    affine = cartan_matrix(standard_quiver("affine-a", 1))
    assert cartan_pairing((1, 1), (1, 1), affine) == 0


def test_classify_graph_examples():
    assert classify_graph(standard_quiver("d", 4)).kind is GraphClass.FINITE
    triangle = classify_graph(standard_quiver("affine-a", 2))
    assert triangle.kind is GraphClass.AFFINE
    assert triangle.delta == (1, 1, 1)
    triple = Quiver(("1", "2"), (("1", "2"),) * 3)
    assert classify_graph(triple).kind is GraphClass.INDEFINITE


def test_classify_graph_needs_connected_quiver():
    with pytest.raises(PreconditionError):
        classify_graph(Quiver(("1", "2")))


@pytest.mark.parametrize("kind, rank", [("affine-a", 2), ("affine-a", 4), ("affine-d", 4), ("affine-d", 6)])
def test_affine_delta_is_in_the_kernel(kind, rank, rng):
    quiver = standard_quiver(kind, rank)
    graph = classify_graph(quiver)
    C = cartan_matrix(quiver)
    assert graph.kind is GraphClass.AFFINE
    assert all(x > 0 for x in graph.delta)
    for _ in range(20):
        x = tuple(rng.randint(-5, 5) for _ in range(quiver.rank))
        assert cartan_pairing(graph.delta, x, C) == 0


def test_affine_d4_delta():
    assert classify_graph(standard_quiver("affine-d", 4)).delta == (1, 1, 2, 1, 1)


def test_dynkin_family():
    assert dynkin_family(standard_quiver("a", 3)) == "A"
    assert dynkin_family(standard_quiver("d", 4)) == "D"
    assert dynkin_family(standard_quiver("e", 6)) == "E"


def test_connected_support():
    a3 = standard_quiver("a", 3)
    assert connected_support(a3, (1, 1, 0))
    assert not connected_support(a3, (1, 0, 1))
    assert not connected_support(a3, (0, 0, 0))


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.json") if p.name != "paper_checks.json"))
def test_serialize_then_parse_is_identity(name):
    theory = load_fixture(name)
    assert parse_theory(serialize_theory(theory)) == theory


def test_variant_records():
    assert parse_theory('{"sl2_flavors": 4}') == Sl2Flavor(4)
    assert parse_theory('{"u1_charges": [3]}') == U1Charges((3,))
    with pytest.raises(TheoryValidationError):
        Sl2Flavor(-1)


def test_edges_are_unoriented():
    forward = Quiver(("1", "2"), (("1", "2"),))
    backward = Quiver(("1", "2"), (("2", "1"),))
    assert forward == backward
    theory = QuiverTheory(forward, (1, 1), (0, 0), Group.PROD_GL_MOD_CENTER)
    assert theory.is_framed is False
