"""Canonical module generators of the graph cohomology.

For a validated graph there is one generator ``f_v`` per vertex ``v``,
uniquely characterized by four conditions:

1. ``f_v`` is homogeneous of polynomial degree ``cell_dim(v) / 2``;
2. ``f_v(w) = 0`` when ``cell_dim(w) < cell_dim(v)``;
3. ``f_v(w) = 0`` when ``cell_dim(w) = cell_dim(v)`` and ``w != v``;
4. ``f_v(v)`` is the product of the down-edge weights at ``v``.

Values above ``v`` are forced: processing vertices ``w`` by increasing
cell dimension, ``f_v(w)`` is the unique homogeneous solution of the
congruences ``f_v(w) == f_v(u) (mod weight)`` over the down-edges
``(w, u)`` -- unique because the down-edge weights at ``w`` are pairwise
coprime and their count exceeds the degree of ``f_v``.  Within one
dimension the processing order is irrelevant (constraints only reach
strictly lower vertices); it is fixed to the canonical vertex order for
reproducible logs.

Generators depend on the stored sign of the edge labels only through
condition 4, i.e. up to one overall sign each; graphs from the builder
module use positive-root representatives.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    NoSolutionError,
    NonIntegralError,
    NotDivisibleError,
    NotInSpanError,
    ValidationFailureError,
)
from .graph import CohClass, GkmGraph, is_gkm_class, validate
from .polyring import Polynomial, divide_by_weight, solve_congruences

__all__ = [
    "GeneratorBasis",
    "canonical_generators",
    "verify_generator_conditions",
    "expand_in_basis",
    "ConditionReport",
]


@dataclass
class GeneratorBasis:
    """The canonical generators of a graph, up to a degree cutoff."""

    graph: GkmGraph
    degree: int
    mode: str
    generators: dict[str, CohClass]

    def generator(self, vid: str) -> CohClass:
        return self.generators[vid]

    def items(self):
        return self.generators.items()

    def to_dict(self) -> dict:
        gens = {}
        for vid in sorted(self.generators, key=lambda v: (self.graph.vertex(v).cell_dim, v)):
            cls = self.generators[vid]
            gens[vid] = {w: str(cls.values[w]) for w in self.graph.vertex_ids}
        return {
            "degree": self.degree,
            "mode": self.mode,
            "graph": self.graph.to_dict(),
            "generators": gens,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorBasis":
        from .polyring import parse_polynomial

        graph = GkmGraph.from_dict(data["graph"])
        gens = {}
        for vid, values in data["generators"].items():
            parsed = {w: parse_polynomial(t, graph.rank) for w, t in values.items()}
            gens[vid] = CohClass(parsed, graph.vertex(vid).cell_dim // 2)
        return cls(graph, int(data["degree"]), data.get("mode", graph.mode), gens)

    @classmethod
    def load(cls, path) -> "GeneratorBasis":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _down_weight_product(graph: GkmGraph, vid: str) -> Polynomial:
    prod = Polynomial.one(graph.rank)
    for e in graph.down_edges(vid):
        prod = prod * e.weight.to_polynomial()
    return prod


def canonical_generators(graph: GkmGraph, degree: int, mode: str | None = None) -> GeneratorBasis:
    """Solve for every generator ``f_v`` with ``cell_dim(v)/2 <= degree``.

    Raises :class:`ValidationFailureError` on an invalid graph,
    :class:`NoSolutionError` (with the offending vertex) when some
    congruence system is unsolvable, and in Z-mode
    :class:`NonIntegralError` with the witness vertex and value.
    """
    report = validate(graph)
    if not report.ok:
        raise ValidationFailureError(report)
    mode = (mode or graph.mode).upper()

    order = graph.vertex_ids  # canonical: by (cell_dim, id)
    dims = {vid: graph.vertex(vid).cell_dim for vid in order}
    generators: dict[str, CohClass] = {}
    for vid in order:
        d = dims[vid] // 2
        if d > degree:
            continue
        values: dict[str, Polynomial] = {}
        for wid in order:
            if dims[wid] < dims[vid] or (dims[wid] == dims[vid] and wid != vid):
                values[wid] = Polynomial.zero(graph.rank)
            elif wid == vid:
                values[wid] = _down_weight_product(graph, vid)
            else:
                constraints = [
                    (e.weight, values[e.other(wid)]) for e in graph.down_edges(wid)
                ]
                try:
                    values[wid] = solve_congruences(constraints, d, mode)
                except NoSolutionError:
                    raise NoSolutionError(
                        f"no value for generator {vid!r} at vertex {wid!r}: "
                        "the decorated graph is not realizable as a cell complex",
                        vertex=wid,
                    ) from None
                except NonIntegralError as err:
                    raise NonIntegralError(
                        f"generator {vid!r} is not integral at vertex {wid!r}: {err.witness}",
                        witness=err.witness,
                        vertex=wid,
                    ) from None
        generators[vid] = CohClass(values, d)
    return GeneratorBasis(graph, degree, mode, generators)


@dataclass
class ConditionReport:
    entries: list[tuple[str, str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, _, ok, _ in self.entries)

    def failures(self):
        return [e for e in self.entries if not e[2]]

    def __bool__(self):
        return self.ok


def verify_generator_conditions(basis: GeneratorBasis) -> ConditionReport:
    """Re-check conditions 1-4 and GKM membership for every generator."""
    graph = basis.graph
    rep = ConditionReport()
    add = rep.entries.append
    for vid, cls in basis.items():
        d = graph.vertex(vid).cell_dim // 2
        ok1 = all(p.is_homogeneous(d) for p in cls.values.values())
        add((vid, "homogeneous", ok1, f"every value homogeneous of degree {d} or zero"))
        ok2 = all(
            cls.values[w.id].is_zero()
            for w in graph.vertices
            if w.cell_dim < graph.vertex(vid).cell_dim
        )
        add((vid, "vanish_below", ok2, "zero on lower-dimensional vertices"))
        ok3 = all(
            cls.values[w.id].is_zero()
            for w in graph.vertices
            if w.cell_dim == graph.vertex(vid).cell_dim and w.id != vid
        )
        add((vid, "vanish_beside", ok3, "zero on other vertices of equal dimension"))
        ok4 = cls.values[vid] == _down_weight_product(graph, vid)
        add((vid, "diagonal_value", ok4, "f_v(v) is the product of down-edge weights"))
        okg = bool(is_gkm_class(graph, cls))
        add((vid, "gkm_membership", okg, "divisibility across every edge"))
    return rep


def expand_in_basis(cls: CohClass, basis: GeneratorBasis) -> dict[str, Polynomial]:
    """Coefficients ``c_v`` with ``cls = sum c_v f_v``.

    Greedy by increasing cell dimension: at each vertex the residual is
    divisible by the product of that vertex's down-edge weights (divided
    out one weight at a time), which yields ``c_v``; the residual must be
    identically zero after the last vertex, else :class:`NotInSpanError`
    reports where the expansion failed.  In Z-mode every coefficient must
    be integral.
    """
    graph = basis.graph
    residual = {vid: cls.value(vid) for vid in graph.vertex_ids}
    coeffs: dict[str, Polynomial] = {}
    for vid in graph.vertex_ids:
        if vid not in basis.generators:
            continue
        c = residual[vid]
        for e in graph.down_edges(vid):
            try:
                c = divide_by_weight(c, e.weight)
            except NotDivisibleError:
                raise NotInSpanError(
                    f"residual at {vid!r} is not divisible by its down-edge weights; "
                    "the class is not in the span of the basis within the cutoff",
                    vertex=vid,
                ) from None
        if basis.mode == "Z" and not c.is_integral():
            raise NonIntegralError(
                f"expansion coefficient at {vid!r} is not integral: {c}",
                witness=c,
                vertex=vid,
            )
        coeffs[vid] = c
        if not c.is_zero():
            gen = basis.generators[vid]
            for wid in graph.vertex_ids:
                residual[wid] = residual[wid] - c * gen.values[wid]
    for vid in graph.vertex_ids:
        if not residual[vid].is_zero():
            raise NotInSpanError(
                f"nonzero residual {residual[vid]} at {vid!r} after expansion; "
                "increase the degree cutoff or check the class",
                vertex=vid,
            )
    return coeffs
