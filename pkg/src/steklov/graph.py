"""Weighted finite graphs with boundary and Dirichlet boundary.

A graph is a triple (G, m, w) together with a role for every vertex:
interior, boundary, or Dirichlet boundary. Vertices are dense integer
indices 0..n-1. Graphs are immutable; mutating operations return new
values. Edge weights and vertex measures may be floats or exact
``fractions.Fraction`` values (closed-form family constructions use the
latter); numeric code converts to float on demand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    DuplicateEdgeError,
    EdgeNotFoundError,
    IndexOutOfRangeError,
    NonPositiveMeasureError,
    NonPositiveWeightError,
    ParseError,
    SelfLoopError,
)

Weight = float | Fraction | int


class Role(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    DIRICHLET = "dirichlet"


def _norm_edge(x: int, y: int) -> tuple[int, int]:
    return (x, y) if x < y else (y, x)


@dataclass(frozen=True)
class WeightedBoundaryGraph:
    """Simple undirected graph with vertex measures, edge weights and roles.

    Invariants (enforced by :func:`make_graph`): no loops, no duplicate
    edges, strictly positive weights and measures, one role per vertex.
    """

    n: int
    edges: tuple[tuple[int, int, Weight], ...]  # stored with u < v
    measures: tuple[Weight, ...]
    roles: tuple[Role, ...]

    # -- basic queries ----------------------------------------------------

    @cached_property
    def adjacency(self) -> dict[int, dict[int, Weight]]:
        adj: dict[int, dict[int, Weight]] = {v: {} for v in range(self.n)}
        for u, v, w in self.edges:
            adj[u][v] = w
            adj[v][u] = w
        return adj

    @cached_property
    def edge_weights(self) -> dict[tuple[int, int], Weight]:
        return {(u, v): w for u, v, w in self.edges}

    def neighbors(self, x: int) -> list[int]:
        return sorted(self.adjacency[x])

    def degree(self, x: int) -> int:
        return len(self.adjacency[x])

    def weight(self, x: int, y: int) -> Weight:
        key = _norm_edge(x, y)
        if key not in self.edge_weights:
            raise EdgeNotFoundError(f"no edge {{{x},{y}}}")
        return self.edge_weights[key]

    def has_edge(self, x: int, y: int) -> bool:
        return _norm_edge(x, y) in self.edge_weights

    def vertices_with_role(self, role: Role) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.roles[v] is role)

    @property
    def boundary(self) -> tuple[int, ...]:
        return self.vertices_with_role(Role.BOUNDARY)

    @property
    def dirichlet(self) -> tuple[int, ...]:
        return self.vertices_with_role(Role.DIRICHLET)

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices_with_role(Role.INTERIOR)

    @property
    def dirichlet_interior(self) -> tuple[int, ...]:
        """Omega_D: every vertex that is not a Dirichlet boundary vertex."""
        return tuple(v for v in range(self.n) if self.roles[v] is not Role.DIRICHLET)

    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.degree(v) <= 1)

    # -- connectivity ------------------------------------------------------

    def components(self, restrict: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components, optionally of the induced subgraph on ``restrict``."""
        verts = set(range(self.n)) if restrict is None else set(restrict)
        seen: set[int] = set()
        comps = []
        for start in sorted(verts):
            if start in seen:
                continue
            stack = [start]
            comp = []
            seen.add(start)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adjacency[x]:
                    if y in verts and y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == self.n - 1

    def is_unit_weight(self) -> bool:
        return all(w == 1 for _, _, w in self.edges) and all(
            m == 1 for m in self.measures
        )

    # -- mutation (returns new graphs) --------------------------------------

    def delete_edges(self, remove: Iterable[tuple[int, int]]) -> "WeightedBoundaryGraph":
        """Remove the listed edges; vertices, measures and roles are kept."""
        keys = {_norm_edge(x, y) for x, y in remove}
        for key in keys:
            if key not in self.edge_weights:
                raise EdgeNotFoundError(f"no edge {{{key[0]},{key[1]}}}")
        kept = tuple(e for e in self.edges if (e[0], e[1]) not in keys)
        return replace(self, edges=kept)

    def with_roles(self, roles: Sequence[Role]) -> "WeightedBoundaryGraph":
        if len(roles) != self.n:
            raise IndexOutOfRangeError("role list has wrong length")
        return replace(self, roles=tuple(roles))

    def induced_subgraph(self, verts: Sequence[int]) -> "WeightedBoundaryGraph":
        """Induced subgraph with relabeled dense indices (order of ``verts``)."""
        index = {v: i for i, v in enumerate(verts)}
        edges = tuple(
            (index[u], index[v], w)
            for u, v, w in self.edges
            if u in index and v in index
        )
        return WeightedBoundaryGraph(
            n=len(verts),
            edges=edges,
            measures=tuple(self.measures[v] for v in verts),
            roles=tuple(self.roles[v] for v in verts),
        )

    def is_subgraph_of(self, other: "WeightedBoundaryGraph") -> bool:
        """Same vertex set, edge subset, matching weights and measures."""
        if self.n != other.n:
            return False
        if any(self.measures[v] != other.measures[v] for v in range(self.n)):
            return False
        return all(
            (u, v) in other.edge_weights and other.edge_weights[(u, v)] == w
            for u, v, w in self.edges
        )

    # -- diagnostics ---------------------------------------------------------

    def diagnostics(self) -> "GraphDiagnostics":
        omega_d = self.dirichlet_interior
        comps = self.components(omega_d)
        return GraphDiagnostics(
            connected=self.is_connected(),
            dirichlet_interior_connected=len(comps) <= 1,
            leaf_set=self.leaves(),
            degree_sequence=tuple(sorted(self.degree(v) for v in range(self.n))),
        )


@dataclass(frozen=True)
class GraphDiagnostics:
    connected: bool
    dirichlet_interior_connected: bool
    leaf_set: tuple[int, ...]
    degree_sequence: tuple[int, ...]


# -- construction -------------------------------------------------------------


def _check_positive(value, exc, what):
    try:
        ok = value > 0
    except TypeError:
        ok = False
    if not ok:
        raise exc(f"{what} must be a positive number, got {value!r}")


def make_graph(
    n: int,
    edges: Iterable[tuple[int, int, Weight]] = (),
    measures: Sequence[Weight] | None = None,
    roles: Sequence[Role | str] | None = None,
) -> WeightedBoundaryGraph:
    """Build a validated graph.

    ``measures`` defaults to all ones and ``roles`` to all-interior.
    Roles may be given as :class:`Role` values or their string names.
    """
    if n < 0:
        raise IndexOutOfRangeError("vertex count must be nonnegative")
    if measures is None:
        measures = [1] * n
    if roles is None:
        roles = [Role.INTERIOR] * n
    if len(measures) != n:
        raise IndexOutOfRangeError("measure list has wrong length")
    if len(roles) != n:
        raise IndexOutOfRangeError("role list has wrong length")
    for m in measures:
        _check_positive(m, NonPositiveMeasureError, "vertex measure")
    role_values = tuple(r if isinstance(r, Role) else Role(r) for r in roles)

    seen: set[tuple[int, int]] = set()
    normalized = []
    for x, y, w in edges:
        if not (0 <= x < n and 0 <= y < n):
            raise IndexOutOfRangeError(f"edge ({x},{y}) out of range for n={n}")
        if x == y:
            raise SelfLoopError(f"self-loop at vertex {x}")
        key = _norm_edge(x, y)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {{{x},{y}}}")
        seen.add(key)
        _check_positive(w, NonPositiveWeightError, "edge weight")
        normalized.append((key[0], key[1], w))
    normalized.sort(key=lambda e: (e[0], e[1]))
    return WeightedBoundaryGraph(
        n=n, edges=tuple(normalized), measures=tuple(measures), roles=role_values
    )


def combinatorial_boundary(g: WeightedBoundaryGraph) -> tuple[Role, ...]:
    """Role assignment of a combinatorial graph: degree <= 1 means boundary."""
    return tuple(
        Role.BOUNDARY if g.degree(v) <= 1 else Role.INTERIOR for v in range(g.n)
    )


def combinatorial_graph(
    n: int, edges: Iterable[tuple[int, int]]
) -> WeightedBoundaryGraph:
    """Unit-weight simple graph with the degree-based boundary."""
    g = make_graph(n, [(x, y, 1) for x, y in edges])
    return g.with_roles(combinatorial_boundary(g))


def structurally_equal(a: WeightedBoundaryGraph, b: WeightedBoundaryGraph) -> bool:
    """Equality up to numeric type of weights/measures (Fraction 1 == float 1.0)."""
    return (
        a.n == b.n
        and a.roles == b.roles
        and len(a.edges) == len(b.edges)
        and all(
            ea[:2] == eb[:2] and float(ea[2]) == float(eb[2])
            for ea, eb in zip(a.edges, b.edges)
        )
        and all(float(x) == float(y) for x, y in zip(a.measures, b.measures))
    )


# -- serialization -------------------------------------------------------------

_VERTEX_FIELDS = {"id", "measure", "role"}
_EDGE_FIELDS = {"u", "v", "w"}


def _num_to_json(x: Weight):
    if isinstance(x, Rational) and not isinstance(x, int) and x.denominator != 1:
        return float(x)
    return int(x) if isinstance(x, Rational) and x.denominator == 1 else float(x)


def graph_to_dict(g: WeightedBoundaryGraph) -> dict:
    return {
        "vertices": [
            {
                "id": v,
                "measure": _num_to_json(g.measures[v]),
                "role": g.roles[v].value,
            }
            for v in range(g.n)
        ],
        "edges": [
            {"u": u, "v": v, "w": _num_to_json(w)} for u, v, w in g.edges
        ],
    }


def graph_from_dict(data: dict) -> WeightedBoundaryGraph:
    if not isinstance(data, dict) or set(data) != {"vertices", "edges"}:
        raise ParseError("expected an object with exactly 'vertices' and 'edges'")
    verts = data["vertices"]
    n = len(verts)
    measures: list[Weight] = [1] * n
    roles: list[Role] = [Role.INTERIOR] * n
    seen_ids = set()
    for entry in verts:
        if set(entry) - _VERTEX_FIELDS:
            raise ParseError(f"unknown vertex fields: {sorted(set(entry) - _VERTEX_FIELDS)}")
        if "id" not in entry:
            raise ParseError("vertex entry missing 'id'")
        vid = entry["id"]
        if not isinstance(vid, int) or not (0 <= vid < n) or vid in seen_ids:
            raise ParseError(f"bad or repeated vertex id {vid!r}")
        seen_ids.add(vid)
        measures[vid] = entry.get("measure", 1)
        try:
            roles[vid] = Role(entry.get("role", "interior"))
        except ValueError as exc:
            raise ParseError(f"unknown role {entry.get('role')!r}") from exc
    edges = []
    for entry in data["edges"]:
        if set(entry) - _EDGE_FIELDS:
            raise ParseError(f"unknown edge fields: {sorted(set(entry) - _EDGE_FIELDS)}")
        try:
            edges.append((entry["u"], entry["v"], entry.get("w", 1)))
        except KeyError as exc:
            raise ParseError("edge entry missing 'u' or 'v'") from exc
    try:
        return make_graph(n, edges, measures, roles)
    except (
        DuplicateEdgeError,
        SelfLoopError,
        NonPositiveWeightError,
        NonPositiveMeasureError,
        IndexOutOfRangeError,
    ) as exc:
        raise ParseError(str(exc)) from exc


def save_graph(g: WeightedBoundaryGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_dict(g), fh, indent=1)
        fh.write("\n")


def load_graph(path) -> WeightedBoundaryGraph:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(data)
