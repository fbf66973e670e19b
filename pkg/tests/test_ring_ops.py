"""Products, rank series, ordinary reduction, and divided-powers laws."""

import pytest

from gkmcalc.builders import build_preset
from gkmcalc.errors import CutoffTooSmallError, ValidationFailureError
from gkmcalc.graph import CohClass, Edge, GkmGraph, Vertex, is_gkm_class, validate
from gkmcalc.polyring import Polynomial, Weight
from gkmcalc.ring_ops import (
    multiply,
    ordinary_reduction,
    poincare_series,
    power_coefficient,
)
from gkmcalc.solver import canonical_generators, expand_in_basis


def test_multiply_identity_and_zero():
    g = build_preset("A2-flag")
    basis = canonical_generators(g, 3)
    f = basis.generator("0")
    one = CohClass({v: Polynomial.one(2) for v in g.vertex_ids}, 0)
    zero = CohClass({v: Polynomial.zero(2) for v in g.vertex_ids}, 0)
    assert multiply(f, one).values == f.values
    assert multiply(zero, f).is_zero()


def test_multiply_degrees_add_and_stay_gkm():
    g = build_preset("A2-flag")
    basis = canonical_generators(g, 3)
    prod = multiply(basis.generator("0"), basis.generator("1"))
    assert prod.degree == 2
    assert is_gkm_class(g, prod).ok


def test_poincare_examples():
    assert poincare_series(build_preset("A2-flag"), 3) == [1, 2, 2, 1]
    point = GkmGraph(2, "Z", [Vertex("pt", 0)], [])
    assert poincare_series(point, 0) == [1]
    assert poincare_series(build_preset("omega-su2", 4), 4) == [1, 1, 1, 1, 1]


def test_poincare_respects_cutoff():
    assert poincare_series(build_preset("A2-flag"), 1) == [1, 2]


def test_reduction_of_generator_expansion():
    g = build_preset("A2-flag")
    basis = canonical_generators(g, 3)
    red = ordinary_reduction(expand_in_basis(basis.generator("0-1"), basis))
    assert red["0-1"] == 1
    assert all(v == 0 for k, v in red.items() if k != "0-1")


def test_reduction_kills_positive_degree_coefficients():
    g = build_preset("A2-flag")
    basis = canonical_generators(g, 3)
    f = basis.generator("0")
    scaled = CohClass({v: Polynomial.variable(0, 2) * p for v, p in f.values.items()})
    red = ordinary_reduction(expand_in_basis(scaled, basis))
    assert all(v == 0 for v in red.values())


def test_power_coefficient_trivial():
    g = build_preset("omega-su2", 3)
    basis = canonical_generators(g, 3)
    assert power_coefficient(g, basis, 1) == 1


def test_divided_powers_small():
    g = build_preset("omega-su2", 3)
    basis = canonical_generators(g, 3)
    assert power_coefficient(g, basis, 2) == 2
    assert power_coefficient(g, basis, 3) == 6
    tw = build_preset("A1-4-twisted", 2)
    tb = canonical_generators(tw, 2)
    assert power_coefficient(tw, tb, 2) == 4


def test_ordinary_reduction_is_ring_like_on_loop_space():
    # f1 * fn expands with top ordinary coefficient n + 1
    g = build_preset("omega-su2", 5)
    basis = canonical_generators(g, 5)
    by_dim = {g.vertex(v).cell_dim // 2: v for v in basis.generators}
    f1 = basis.generator(by_dim[1])
    for n in range(1, 5):
        prod = multiply(f1, basis.generator(by_dim[n]))
        red = ordinary_reduction(expand_in_basis(prod, basis))
        assert red[by_dim[n + 1]] == n + 1


def test_power_coefficients_are_positive_integers():
    for name, top in (("omega-su2", 4), ("A1-4-twisted", 4)):
        g = build_preset(name, top)
        basis = canonical_generators(g, top)
        for n in range(1, top + 1):
            c = power_coefficient(g, basis, n)
            assert c == int(c) and c > 0


def parabola_complete_graph(top):
    """Complete graph on the characters m*x1 + m^2*x2: the projective-space
    pattern with the same moment image as the SU(2) loop space.  Edge labels
    (i-j)*(1, i+j) are imprimitive, so it is a Q-only graph."""
    vertices = [Vertex(f"p{m}", 2 * m) for m in range(top + 1)]
    edges = [
        Edge(f"p{j}", f"p{i}", Weight((i - j, i * i - j * j)))
        for i in range(top + 1)
        for j in range(i)
    ]
    return GkmGraph(2, "Q", vertices, edges)


def test_projective_pattern_contrasts_with_divided_powers():
    # over Q the degree-2 class generates a polynomial algebra: every power
    # coefficient is 1, against n! for the loop space with the same image
    g = parabola_complete_graph(4)
    assert validate(g).ok
    basis = canonical_generators(g, 4)
    for n in (2, 3, 4):
        assert power_coefficient(g, basis, n) == 1
    # the same labels fail primitivity over Z and the solver refuses them
    gz = GkmGraph(2, "Z", g.vertices, list(g.edges))
    with pytest.raises(ValidationFailureError):
        canonical_generators(gz, 2)


def test_power_cutoff_errors():
    g = build_preset("omega-su2", 2)
    basis = canonical_generators(g, 2)
    with pytest.raises(CutoffTooSmallError):
        power_coefficient(g, basis, 3)
    a2 = build_preset("A2-flag")
    a2basis = canonical_generators(a2, 3)
    with pytest.raises(ValueError):
        power_coefficient(a2, a2basis, 2)  # two degree-2 generators
