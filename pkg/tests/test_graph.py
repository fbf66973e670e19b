"""Graph model, validation, membership, skeleta, and JSON round-trips."""

import json
import random
from pathlib import Path

import pytest

from gkmcalc.builders import build_preset
from gkmcalc.errors import MissingVertexValueError
from gkmcalc.graph import (
    CohClass,
    Edge,
    GkmGraph,
    Vertex,
    is_gkm_class,
    is_relative_class,
    skeleton,
    validate,
)
from gkmcalc.polyring import Polynomial, Weight
from gkmcalc.solver import canonical_generators

FIXTURES = Path(__file__).parent / "fixtures"

X = Polynomial.variable(0, 2)
Y = Polynomial.variable(1, 2)


def sphere_graph():
    """Two fixed points joined by one edge of weight x1, over a rank-2 torus."""
    return GkmGraph(
        2,
        "Z",
        [Vertex("n", 0), Vertex("s", 2)],
        [Edge("n", "s", Weight((1, 0)))],
    )


def test_edge_invariants():
    with pytest.raises(ValueError):
        Edge("a", "a", Weight((1, 0)))
    with pytest.raises(ValueError):
        Edge("a", "b", Weight((0, 0)))


def test_sphere_validates():
    assert validate(sphere_graph()).ok


def test_collinear_down_weights_fail():
    g = GkmGraph(
        2,
        "Z",
        [Vertex("e", 0), Vertex("a", 2), Vertex("t", 4)],
        [
            Edge("e", "a", Weight((0, 1))),
            Edge("e", "t", Weight((1, 0))),
            Edge("a", "t", Weight((2, 0))),
        ],
    )
    rep = validate(g)
    assert not rep.ok and "coprimality" in rep.failing_checks()


def test_builder_graph_validates():
    assert validate(build_preset("A2-flag")).ok


@pytest.mark.parametrize(
    "name, check",
    [
        ("odd_cell", "even_cell_dim"),
        ("collinear_weights", "coprimality"),
        ("wrong_down_count", "down_edge_count"),
    ],
)
def test_corrupted_fixtures(name, check):
    rep = validate(GkmGraph.load(FIXTURES / f"{name}.json"))
    assert not rep.ok
    assert check in rep.failing_checks()
    # the report carries a readable line for the failure
    assert any(check in line and "FAIL" in line for line in rep.format_text().splitlines())


def test_disconnected_and_multi_bottom_fail():
    g = GkmGraph(2, "Z", [Vertex("a", 0), Vertex("b", 0)], [])
    rep = validate(g)
    assert {"bottom_vertex", "connectivity"} <= rep.failing_checks()


def test_empty_graph_validates():
    assert validate(GkmGraph(2, "Z", [], [])).ok


def test_constant_class_is_gkm():
    g = sphere_graph()
    cls = CohClass({"n": Polynomial.constant(5, 2), "s": Polynomial.constant(5, 2)})
    assert is_gkm_class(g, cls).ok


def test_sphere_membership_examples():
    g = sphere_graph()
    good = CohClass({"n": Polynomial.zero(2), "s": X})
    res = is_gkm_class(g, good)
    assert res.ok and res.witnesses[("n", "s")] == -Polynomial.one(2)
    bad = CohClass({"n": Polynomial.zero(2), "s": Y})
    res = is_gkm_class(g, bad)
    assert not res.ok and res.failing_edge.key() == ("n", "s")


def test_membership_requires_all_vertices():
    with pytest.raises(MissingVertexValueError):
        is_gkm_class(sphere_graph(), CohClass({"n": X}))


def test_solver_output_rechecked_independently():
    g = build_preset("A2-flag")
    basis = canonical_generators(g, 3)
    for _, cls in basis.items():
        assert is_gkm_class(g, cls).ok


def test_skeleton_examples():
    g = build_preset("A2-flag")
    bottom = skeleton(g, 0)
    assert [v.id for v in bottom.vertices] == ["e"] and not bottom.edges
    one = skeleton(g, 1)
    assert len(one.vertices) == 3 and len(one.edges) == 2
    assert sorted(str(e.weight) for e in one.edges) == ["x1", "x2"]
    assert skeleton(g, 99) == g


def test_skeleton_idempotence():
    g = build_preset("omega-su2", 4)
    for k in range(5):
        for j in range(5):
            assert skeleton(skeleton(g, k), j) == skeleton(g, min(j, k))


def test_skeleton_of_valid_graph_is_valid():
    g = build_preset("A2-flag")
    for k in range(4):
        assert validate(skeleton(g, k)).ok


def test_relative_class_examples():
    g = build_preset("A2-flag")
    zero = CohClass({v.id: Polynomial.zero(2) for v in g.vertices})
    assert is_relative_class(g, zero, 3)
    one = CohClass({v.id: Polynomial.one(2) for v in g.vertices})
    assert not is_relative_class(g, one, 0)
    basis = canonical_generators(g, 3)
    for vid, cls in basis.items():
        d = g.vertex(vid).cell_dim // 2
        if d > 0:
            assert is_relative_class(g, cls, d - 1)


def test_gkm_classes_closed_under_ring_ops():
    g = build_preset("A2-flag")
    basis = canonical_generators(g, 3)
    rng = random.Random(11)
    gens = [cls for _, cls in basis.items()]
    for _ in range(20):
        f = rng.choice(gens)
        h = rng.choice(gens)
        coeff = Polynomial(2, {(1, 0): rng.randrange(-3, 4), (0, 1): rng.randrange(-3, 4)})
        combo = CohClass({v: f.values[v] * coeff + h.values[v] for v in f.values})
        assert is_gkm_class(g, combo).ok
        prod = CohClass({v: f.values[v] * h.values[v] for v in f.values})
        assert is_gkm_class(g, prod).ok


def test_restriction_to_skeleton_stays_gkm():
    g = build_preset("omega-su2", 4)
    basis = canonical_generators(g, 4)
    sub = skeleton(g, 2)
    for _, cls in basis.items():
        assert is_gkm_class(sub, cls.restrict(sub.vertex_ids)).ok


def test_json_round_trip_byte_stable():
    g = build_preset("omega-su2", 3)
    text = g.dumps()
    again = GkmGraph.loads(text)
    assert again == g and again.dumps() == text


def test_json_canonical_ordering_independent_of_input_order():
    g = sphere_graph()
    shuffled = GkmGraph(
        2,
        "Z",
        [Vertex("s", 2), Vertex("n", 0)],
        [Edge("s", "n", Weight((1, 0)))],
    )
    assert shuffled.dumps() == g.dumps()


def test_json_schema_keys(tmp_path):
    g = build_preset("A2-flag")
    path = tmp_path / "g.json"
    g.save(path)
    data = json.loads(path.read_text())
    assert set(data) == {"rank", "mode", "vertices", "edges"}
    assert set(data["edges"][0]) == {"from", "to", "weight"}
    assert GkmGraph.load(path) == g


def test_cohclass_homogeneity_enforced():
    with pytest.raises(ValueError):
        CohClass({"n": X + Polynomial.one(2)}, degree=1)
