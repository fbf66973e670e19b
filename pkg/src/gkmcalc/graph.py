"""The decorated graph model and graph-cohomology membership testing.

A :class:`GkmGraph` is a finite graph whose vertices carry even cell
dimensions and whose edges carry nonzero integer weights.  A cohomology
class assigns a polynomial to every vertex; it belongs to the graph
cohomology when the difference across every edge is divisible by that
edge's weight.

JSON interchange schema (canonical ordering: vertices by (cell_dim, id),
edges by endpoint pair; round-trips are byte-stable)::

    {"rank": k, "mode": "Z"|"Q",
     "vertices": [{"id": str, "cell_dim": int, "position"?: [rationals],
                   "label"?: str}, ...],
     "edges": [{"from": str, "to": str, "weight": [ints]}, ...]}

Rational position entries are serialized as strings like ``"3/2"``.
Edge weights are stored with an arbitrary sign representative; every
consumer uses them only through divisibility or products that are fixed
by the builders' positive-root convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MissingVertexValueError, NotDivisibleError
from .polyring import Polynomial, Weight, divide_by_weight, pairwise_coprime

__all__ = [
    "Vertex",
    "Edge",
    "GkmGraph",
    "CohClass",
    "ValidationEntry",
    "ValidationReport",
    "GkmMembership",
    "validate",
    "is_gkm_class",
    "skeleton",
    "is_relative_class",
]


@dataclass(frozen=True)
class Vertex:
    id: str
    cell_dim: int
    position: tuple[Fraction, ...] | None = None
    label: str | None = None

    def __post_init__(self):
        if self.position is not None:
            object.__setattr__(
                self, "position", tuple(Fraction(p) for p in self.position)
            )


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    weight: Weight

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"edge endpoints must be distinct, got {self.u!r} twice")
        if self.weight.is_zero():
            raise ValueError(f"edge ({self.u}, {self.v}) has zero weight")

    def other(self, vid: str) -> str:
        if vid == self.u:
            return self.v
        if vid == self.v:
            return self.u
        raise ValueError(f"{vid!r} is not an endpoint of this edge")

    def key(self) -> tuple[str, str]:
        return (self.u, self.v)


def _vertex_key(v: Vertex) -> tuple[int, str]:
    return (v.cell_dim, v.id)


class GkmGraph:
    """Immutable decorated graph with a torus rank and coefficient mode."""

    def __init__(self, rank: int, mode: str, vertices, edges):
        mode = str(mode).upper()
        if mode not in ("Z", "Q"):
            raise ValueError(f"mode must be 'Z' or 'Q', got {mode!r}")
        vs = sorted(vertices, key=_vertex_key)
        index: dict[str, Vertex] = {}
        for v in vs:
            if v.id in index:
                raise ValueError(f"duplicate vertex id {v.id!r}")
            if v.position is not None and len(v.position) != rank:
                raise ValueError(f"position of {v.id!r} has length != rank {rank}")
            index[v.id] = v
        norm_edges = []
        for e in edges:
            if e.u not in index or e.v not in index:
                raise ValueError(f"edge ({e.u}, {e.v}) references a missing vertex")
            if e.weight.rank != rank:
                raise ValueError(f"edge ({e.u}, {e.v}) weight has rank != {rank}")
            if _vertex_key(index[e.v]) < _vertex_key(index[e.u]):
                e = Edge(e.v, e.u, e.weight)
            norm_edges.append(e)
        norm_edges.sort(key=lambda e: (e.u, e.v, e.weight.coeffs))
        self._rank = rank
        self._mode = mode
        self._index = index
        self._edges = tuple(norm_edges)
        inc: dict[str, list[Edge]] = {vid: [] for vid in index}
        for e in self._edges:
            inc[e.u].append(e)
            inc[e.v].append(e)
        self._incidence: dict[str, tuple[Edge, ...]] = {
            vid: tuple(es) for vid, es in inc.items()
        }

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(self._index[vid] for vid in self.vertex_ids)

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._index, key=lambda vid: _vertex_key(self._index[vid])))

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def vertex(self, vid: str) -> Vertex:
        return self._index[vid]

    def __contains__(self, vid: str) -> bool:
        return vid in self._index

    def edges_at(self, vid: str) -> tuple[Edge, ...]:
        return self._incidence[vid]

    def down_edges(self, vid: str) -> tuple[Edge, ...]:
        d = self._index[vid].cell_dim
        return tuple(
            e for e in self._incidence[vid] if self._index[e.other(vid)].cell_dim < d
        )

    def up_edges(self, vid: str) -> tuple[Edge, ...]:
        d = self._index[vid].cell_dim
        return tuple(
            e for e in self._incidence[vid] if self._index[e.other(vid)].cell_dim > d
        )

    def bottom_vertices(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v.cell_dim == 0)

    def is_connected(self) -> bool:
        ids = self.vertex_ids
        if len(ids) <= 1:
            return True
        seen = {ids[0]}
        stack = [ids[0]]
        while stack:
            vid = stack.pop()
            for e in self._incidence[vid]:
                o = e.other(vid)
                if o not in seen:
                    seen.add(o)
                    stack.append(o)
        return len(seen) == len(ids)

    def induced(self, ids) -> "GkmGraph":
        keep = set(ids)
        vs = [v for v in self.vertices if v.id in keep]
        es = [e for e in self._edges if e.u in keep and e.v in keep]
        return GkmGraph(self._rank, self._mode, vs, es)

    def with_positions(self, positions: dict[str, tuple]) -> "GkmGraph":
        vs = []
        for v in self.vertices:
            pos = positions.get(v.id, v.position)
            vs.append(Vertex(v.id, v.cell_dim, tuple(Fraction(p) for p in pos) if pos is not None else None, v.label))
        return GkmGraph(self._rank, self._mode, vs, self._edges)

    def __eq__(self, other):
        if not isinstance(other, GkmGraph):
            return NotImplemented
        return (
            self._rank == other._rank
            and self._mode == other._mode
            and self.vertices == other.vertices
            and self._edges == other._edges
        )

    def __repr__(self):
        return f"GkmGraph(rank={self._rank}, mode={self._mode}, |V|={len(self._index)}, |E|={len(self._edges)})"

    # -- JSON interchange ---------------------------------------------------

    def to_dict(self) -> dict:
        verts = []
        for v in self.vertices:
            d: dict = {"id": v.id, "cell_dim": v.cell_dim}
            if v.position is not None:
                d["position"] = [str(p) for p in v.position]
            if v.label is not None:
                d["label"] = v.label
            verts.append(d)
        edges = [
            {"from": e.u, "to": e.v, "weight": list(e.weight.coeffs)} for e in self._edges
        ]
        return {"rank": self._rank, "mode": self._mode, "vertices": verts, "edges": edges}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def from_dict(cls, data: dict) -> "GkmGraph":
        rank = int(data["rank"])
        vs = []
        for vd in data["vertices"]:
            pos = vd.get("position")
            vs.append(
                Vertex(
                    str(vd["id"]),
                    int(vd["cell_dim"]),
                    tuple(Fraction(p) for p in pos) if pos is not None else None,
                    vd.get("label"),
                )
            )
        es = [
            Edge(str(ed["from"]), str(ed["to"]), Weight(tuple(ed["weight"])))
            for ed in data["edges"]
        ]
        return cls(rank, data.get("mode", "Z"), vs, es)

    @classmethod
    def loads(cls, text: str) -> "GkmGraph":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "GkmGraph":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class CohClass:
    """An assignment of a polynomial to each vertex.

    When ``degree`` is set, every value must be homogeneous of that degree
    (the zero polynomial counts for every degree).
    """

    values: dict[str, Polynomial]
    degree: int | None = None

    def __post_init__(self):
        if self.degree is not None:
            for vid, p in self.values.items():
                if not p.is_homogeneous(self.degree):
                    raise ValueError(
                        f"value at {vid!r} is not homogeneous of degree {self.degree}"
                    )

    def value(self, vid: str) -> Polynomial:
        try:
            return self.values[vid]
        except KeyError:
            raise MissingVertexValueError(f"class has no value at vertex {vid!r}") from None

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.values.values())

    def restrict(self, ids) -> "CohClass":
        keep = set(ids)
        return CohClass({v: p for v, p in self.values.items() if v in keep}, self.degree)

    def __add__(self, other: "CohClass") -> "CohClass":
        if set(self.values) != set(other.values):
            raise ValueError("classes are defined on different vertex sets")
        deg = self.degree if self.degree == other.degree else None
        return CohClass({v: self.values[v] + other.values[v] for v in self.values}, deg)

    def __mul__(self, other):
        if isinstance(other, CohClass):
            if set(self.values) != set(other.values):
                raise ValueError("classes are defined on different vertex sets")
            deg = (
                self.degree + other.degree
                if self.degree is not None and other.degree is not None
                else None
            )
            return CohClass(
                {v: self.values[v] * other.values[v] for v in self.values}, deg
            )
        return CohClass({v: p * other for v, p in self.values.items()}, None)

    def to_dict(self) -> dict:
        out: dict = {}
        if self.degree is not None:
            out["degree"] = self.degree
        out["values"] = {vid: str(self.values[vid]) for vid in sorted(self.values)}
        return out

    @classmethod
    def from_dict(cls, data: dict, rank: int) -> "CohClass":
        from .polyring import parse_polynomial

        values = {
            str(vid): parse_polynomial(text, rank) for vid, text in data["values"].items()
        }
        return cls(values, data.get("degree"))


@dataclass(frozen=True)
class ValidationEntry:
    vertex: str | None
    check: str
    ok: bool
    detail: str


@dataclass
class ValidationReport:
    entries: list[ValidationEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> list[ValidationEntry]:
        return [e for e in self.entries if not e.ok]

    def failing_checks(self) -> set[str]:
        return {e.check for e in self.failures()}

    def format_text(self) -> str:
        lines = []
        for e in self.entries:
            where = e.vertex if e.vertex is not None else "-"
            lines.append(f"[{'ok' if e.ok else 'FAIL'}] {e.check:<18} {where:<12} {e.detail}")
        lines.append(f"overall: {'pass' if self.ok else 'fail'}")
        return "\n".join(lines)

    def __bool__(self):
        return self.ok


def validate(graph: GkmGraph) -> ValidationReport:
    """Check the cell-complex rules the solver relies on.

    Per vertex: even cell dimension, down-edge count equal to half the
    cell dimension, and pairwise coprime down-edge weights (with
    primitivity as a separate entry in Z-mode).  Per edge: no edge may
    join vertices of equal cell dimension.  Globally: one bottom vertex
    and a connected graph.  Failures are reported, never raised.
    """
    rep = ValidationReport()
    add = rep.entries.append

    for v in graph.vertices:
        if v.cell_dim < 0 or v.cell_dim % 2 != 0:
            add(ValidationEntry(v.id, "even_cell_dim", False, f"cell_dim {v.cell_dim} is not even and non-negative"))
            continue
        add(ValidationEntry(v.id, "even_cell_dim", True, f"cell_dim {v.cell_dim}"))
        down = graph.down_edges(v.id)
        want = v.cell_dim // 2
        add(
            ValidationEntry(
                v.id,
                "down_edge_count",
                len(down) == want,
                f"{len(down)} down-edges, expected {want}",
            )
        )
        weights = [e.weight for e in down]
        if weights:
            coprime = pairwise_coprime(weights, "Q")
            add(
                ValidationEntry(
                    v.id,
                    "coprimality",
                    coprime,
                    "down-edge weights pairwise non-collinear"
                    if coprime
                    else "collinear down-edge weights",
                )
            )
            if graph.mode == "Z":
                bad = [str(w) for w in weights if not w.is_primitive()]
                add(
                    ValidationEntry(
                        v.id,
                        "primitivity",
                        not bad,
                        "all down-edge weights primitive" if not bad else f"imprimitive: {', '.join(bad)}",
                    )
                )

    for e in graph.edges:
        du = graph.vertex(e.u).cell_dim
        dv = graph.vertex(e.v).cell_dim
        add(
            ValidationEntry(
                None,
                "equal_dim_edge",
                du != dv,
                f"edge ({e.u}, {e.v}) joins dims {du} and {dv}",
            )
        )

    if graph.vertex_ids:
        bottoms = graph.bottom_vertices()
        add(
            ValidationEntry(
                None,
                "bottom_vertex",
                len(bottoms) == 1,
                f"{len(bottoms)} vertices of cell_dim 0",
            )
        )
        add(
            ValidationEntry(
                None,
                "connectivity",
                graph.is_connected(),
                "graph connected" if graph.is_connected() else "graph disconnected",
            )
        )
    return rep


@dataclass
class GkmMembership:
    ok: bool
    witnesses: dict[tuple[str, str], Polynomial]
    failing_edge: Edge | None = None

    def __bool__(self):
        return self.ok


def is_gkm_class(graph: GkmGraph, cls: CohClass) -> GkmMembership:
    """Membership test with certificate.

    True when across every edge ``(p, q)`` the difference ``f(p) - f(q)``
    is exactly divisible by the edge weight; the certificate maps each
    edge to the witness quotient, or records the first failing edge.
    """
    for vid in graph.vertex_ids:
        if vid not in cls.values:
            raise MissingVertexValueError(f"class has no value at vertex {vid!r}")
    witnesses: dict[tuple[str, str], Polynomial] = {}
    for e in graph.edges:
        diff = cls.values[e.u] - cls.values[e.v]
        try:
            witnesses[e.key()] = divide_by_weight(diff, e.weight)
        except NotDivisibleError:
            return GkmMembership(False, witnesses, failing_edge=e)
    return GkmMembership(True, witnesses)


def skeleton(graph: GkmGraph, k: int) -> GkmGraph:
    """Induced subgraph on vertices of cell dimension at most ``2k``."""
    return graph.induced(v.id for v in graph.vertices if v.cell_dim <= 2 * k)


def is_relative_class(graph: GkmGraph, cls: CohClass, k: int) -> bool:
    """True when the class vanishes on every vertex of the k-skeleton."""
    return all(
        cls.value(v.id).is_zero() for v in graph.vertices if v.cell_dim <= 2 * k
    )
