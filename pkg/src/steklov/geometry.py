"""Geometric representation of weighted graphs and nodal-domain machinery.

A weighted graph is realized as a metric graph with edge lengths 1/w.
Eigenfunctions extend piecewise linearly along edges; their zero sets cut
the metric graph into nodal domains, and each domain induces a weighted
graph with Dirichlet boundary at the cut points. Clump numbers are the
unit-tree branch statistics used by the removal lemmas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    AllZeroError,
    CertificationError,
    InvalidParamsError,
    NotATreeError,
    NotUnitWeightError,
)
from .graph import Role, WeightedBoundaryGraph, make_graph
from .spectral import dirichlet_steklov_spectrum, dtn_matrix

DEFAULT_ZERO_TOL = 1e-9


@dataclass(frozen=True)
class GeometricPoint:
    """A vertex, or an interior point of an edge at ``offset`` from the lower endpoint."""

    vertex: int | None = None
    edge: tuple[int, int] | None = None
    offset: object = None

    @staticmethod
    def at_vertex(v: int) -> "GeometricPoint":
        return GeometricPoint(vertex=v)

    @staticmethod
    def on_edge(u: int, v: int, offset) -> "GeometricPoint":
        if u > v:
            raise InvalidParamsError("edge points are keyed by the sorted edge")
        return GeometricPoint(edge=(u, v), offset=offset)

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None


@dataclass(frozen=True)
class MetricGraph:
    graph: WeightedBoundaryGraph
    lengths: dict[tuple[int, int], object]

    def length(self, u: int, v: int):
        return self.lengths[(u, v) if u < v else (v, u)]

    def total_length(self):
        return sum(self.lengths.values())


def metric_realization(g: WeightedBoundaryGraph) -> MetricGraph:
    """Edge lengths are the reciprocals of the weights (exact when rational)."""
    lengths = {}
    for u, v, w in g.edges:
        lengths[(u, v)] = Fraction(1) / w if not isinstance(w, float) else 1.0 / w
    return MetricGraph(g, lengths)


def pl_value(mg: MetricGraph, f, point: GeometricPoint):
    """Piecewise-linear extension of vertex values, evaluated at a point."""
    if point.is_vertex:
        return f[point.vertex]
    u, v = point.edge
    ell = mg.lengths[(u, v)]
    t = point.offset
    if not 0 <= t <= ell:
        raise InvalidParamsError("offset outside the edge")
    return f[u] + (f[v] - f[u]) * t / ell


# -- zero sets ---------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroSet:
    vertex_zeros: frozenset[int]
    edge_zeros: tuple[GeometricPoint, ...]
    zero_edges: tuple[tuple[int, int], ...]  # both endpoints vanish

    @property
    def degenerate(self) -> bool:
        return bool(self.zero_edges)


def zero_set(g: WeightedBoundaryGraph, f, tau_zero: float | None = None) -> ZeroSet:
    """Vertices with |f| below tolerance, plus interior zeros on sign-change edges."""
    f = np.asarray(f, dtype=float)
    scale = float(np.max(np.abs(f)))
    if scale == 0.0:
        raise AllZeroError("function is identically zero")
    tau = DEFAULT_ZERO_TOL * scale if tau_zero is None else tau_zero * scale
    vz = frozenset(int(v) for v in range(g.n) if abs(f[v]) <= tau)
    mg = metric_realization(g)
    edge_zeros = []
    zero_edges = []
    for u, v, _ in g.edges:
        if u in vz and v in vz:
            zero_edges.append((u, v))
        elif u not in vz and v not in vz and f[u] * f[v] < 0:
            t = abs(f[u]) / (abs(f[u]) + abs(f[v])) * float(mg.lengths[(u, v)])
            edge_zeros.append(GeometricPoint.on_edge(u, v, t))
    return ZeroSet(vz, tuple(edge_zeros), tuple(zero_edges))


# -- clump numbers (unit trees) -------------------------------------------------------


@dataclass(frozen=True)
class Clump:
    length: Fraction
    vertices: tuple[int, ...]  # original vertices inside the clump
    attach: int  # the vertex of the clump adjacent to the evaluation point


@dataclass(frozen=True)
class ClumpReport:
    point: GeometricPoint
    clumps: tuple[Clump, ...]
    clump_number: Fraction
    equilibrium: bool


def _require_unit_tree(g: WeightedBoundaryGraph) -> None:
    if not g.is_tree():
        raise NotATreeError("clump numbers are defined for trees")
    if any(w != 1 for _, _, w in g.edges):
        raise NotUnitWeightError("clump numbers need unit edge weights")


def _branch(g: WeightedBoundaryGraph, start: int, blocked: int) -> list[int]:
    """Vertices reachable from ``start`` without passing through ``blocked``."""
    seen = {blocked, start}
    stack = [start]
    out = [start]
    while stack:
        x = stack.pop()
        for y in g.adjacency[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
                out.append(y)
    return out


def clump_lengths_at(g: WeightedBoundaryGraph, point: GeometricPoint) -> tuple[Clump, ...]:
    """Clumps of a unit tree with respect to an arbitrary point.

    At a vertex, each clump has length = number of vertices in the branch;
    at an edge point with offset t, the two sides have lengths s_u - 1 + t
    and s_v - 1 + (length - t)."""
    _require_unit_tree(g)
    if point.is_vertex:
        p = point.vertex
        return tuple(
            Clump(
                length=Fraction(len(branch)),
                vertices=tuple(sorted(branch)),
                attach=b,
            )
            for b in sorted(g.adjacency[p])
            for branch in [_branch(g, b, p)]
        )
    u, v = point.edge
    t = point.offset
    side_u = _branch(g, u, v)
    side_v = _branch(g, v, u)
    lu = len(side_u) - 1 + t
    lv = len(side_v) - 1 + (1 - t)
    return (
        Clump(length=lu, vertices=tuple(sorted(side_u)), attach=u),
        Clump(length=lv, vertices=tuple(sorted(side_v)), attach=v),
    )


def clump_number_at(g: WeightedBoundaryGraph, point: GeometricPoint):
    clumps = clump_lengths_at(g, point)
    return max((c.length for c in clumps), default=Fraction(0))


def clump_number(g: WeightedBoundaryGraph) -> ClumpReport:
    """Clump number of a unit tree with its unique equilibrium point.

    The minimum over |K(G)| is attained at a vertex or an edge midpoint, so
    only those candidates are scanned. Uniqueness of the argmin is asserted.
    """
    _require_unit_tree(g)
    if g.n == 1:
        pt = GeometricPoint.at_vertex(0)
        return ClumpReport(pt, (), Fraction(0), True)
    candidates = [GeometricPoint.at_vertex(v) for v in range(g.n)]
    candidates += [
        GeometricPoint.on_edge(u, v, Fraction(1, 2)) for u, v, _ in g.edges
    ]
    best_pt = None
    best = None
    ties = 0
    for pt in candidates:
        val = clump_number_at(g, pt)
        if best is None or val < best:
            best, best_pt, ties = val, pt, 1
        elif val == best:
            ties += 1
    if ties != 1:
        raise CertificationError(
            f"equilibrium point is not unique ({ties} minimizers of {best})"
        )
    return ClumpReport(best_pt, clump_lengths_at(g, best_pt), best, True)


def clump_rooted_tree(
    g: WeightedBoundaryGraph, point: GeometricPoint, clump: Clump
) -> tuple[WeightedBoundaryGraph, int]:
    """A clump as a rooted metric tree; the evaluation point becomes the root.

    The edge from the root to the attach vertex keeps its metric length
    (1 from a vertex point, 1/2 from a midpoint), encoded as weight 1/length.
    """
    verts = list(clump.vertices)
    index = {x: k + 1 for k, x in enumerate(verts)}
    first_len = Fraction(1) if point.is_vertex else Fraction(1, 2)
    edges = [(0, index[clump.attach], Fraction(1) / first_len)]
    vset = set(verts)
    for u, v, w in g.edges:
        if u in vset and v in vset:
            edges.append((index[u], index[v], w))
    return make_graph(len(verts) + 1, edges), 0


# -- nodal domains -------------------------------------------------------------------


@dataclass(frozen=True)
class NodalDomain:
    """A connected component of |K(G)| minus the zero set, with its induced graph."""

    vertices: tuple[int, ...]  # original vertices where f != 0 inside the domain
    cut_points: tuple[GeometricPoint, ...]
    sign: int
    induced: WeightedBoundaryGraph
    vertex_index: dict[int, int]  # original vertex -> induced id


def nodal_domains(
    g: WeightedBoundaryGraph, f, tau_zero: float | None = None
) -> list[NodalDomain]:
    """Nodal domains of a function on (G, B), with induced graphs.

    Cut points (vertex zeros on the frontier and edge-interior zeros) become
    Dirichlet vertices of measure 1; partial edges get weight 1/segment-length.
    Fully-zero edges belong to no domain.
    """
    f = np.asarray(f, dtype=float)
    zs = zero_set(g, f, tau_zero)
    nonzero = [v for v in range(g.n) if v not in zs.vertex_zeros]
    # Union-find over nonzero vertices: same-sign edges keep a component together.
    parent = {v: v for v in nonzero}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in g.edges:
        if u in parent and v in parent and f[u] * f[v] > 0:
            parent[find(u)] = find(v)

    groups: dict[int, list[int]] = {}
    for v in nonzero:
        groups.setdefault(find(v), []).append(v)

    mg = metric_realization(g)
    domains = []
    for members in sorted(groups.values()):
        mset = set(members)
        cut_points: list[GeometricPoint] = []
        cut_index: dict[GeometricPoint, int] = {}
        index = {x: k for k, x in enumerate(members)}
        edges = []
        measures = [g.measures[x] for x in members]
        roles = [
            Role.BOUNDARY if g.roles[x] is Role.BOUNDARY else Role.INTERIOR
            for x in members
        ]

        def cut_id(pt: GeometricPoint) -> int:
            if pt not in cut_index:
                cut_index[pt] = len(members) + len(cut_points)
                cut_points.append(pt)
                measures.append(1)
                roles.append(Role.DIRICHLET)
            return cut_index[pt]

        for u, v, w in g.edges:
            u_in, v_in = u in mset, v in mset
            if u_in and v_in:
                edges.append((index[u], index[v], w))
            elif u_in or v_in:
                x, y = (u, v) if u_in else (v, u)
                if y in zs.vertex_zeros:
                    # frontier at the far vertex; full metric length
                    edges.append((index[x], cut_id(GeometricPoint.at_vertex(y)), w))
                elif f[u] * f[v] < 0:
                    ell = float(mg.lengths[(u, v)])
                    seg = abs(f[x]) / (abs(f[u]) + abs(f[v])) * ell
                    t = seg if x == u else ell - seg
                    pt = GeometricPoint.on_edge(u, v, t)
                    edges.append((index[x], cut_id(pt), 1.0 / seg))
                # else: same-sign edge to another domain is impossible
        induced = make_graph(len(members) + len(cut_points), edges, measures, roles)
        domains.append(
            NodalDomain(
                vertices=tuple(members),
                cut_points=tuple(cut_points),
                sign=1 if f[members[0]] > 0 else -1,
                induced=induced,
                vertex_index=index,
            )
        )
    return domains


@dataclass(frozen=True)
class DomainVerdict:
    lambda1: float
    sigma: float
    residual: float
    one_signed: bool
    ok: bool


@dataclass(frozen=True)
class NodalTheoremReport:
    degenerate: bool
    verdicts: tuple[DomainVerdict, ...]

    @property
    def ok(self) -> bool:
        return self.degenerate or all(v.ok for v in self.verdicts)


def verify_nodal_theorem(
    g: WeightedBoundaryGraph,
    sigma: float,
    f,
    tol: float = 1e-8,
    tau_zero: float | None = None,
) -> NodalTheoremReport:
    """Check lambda_1(G_U) = sigma on every nodal domain of the eigenpair.

    Degenerate zero sets (an entire edge vanishing) are reported and skipped
    rather than interpreted.
    """
    if sigma <= 0:
        raise InvalidParamsError("the nodal theorem concerns sigma > 0")
    f = np.asarray(f, dtype=float)
    if zero_set(g, f, tau_zero).degenerate:
        return NodalTheoremReport(True, ())
    verdicts = []
    for dom in nodal_domains(g, f, tau_zero):
        spec = dirichlet_steklov_spectrum(dom.induced)
        lam1 = spec.eigenvalue(1)
        # Residual of the restricted function as a Lambda_0 eigenfunction.
        op = dtn_matrix(dom.induced, with_dirichlet=True)
        # op.boundary indexes induced ids; map back to original values
        inv = {k: orig for orig, k in dom.vertex_index.items()}
        u = np.array([f[inv[b]] for b in op.boundary])
        res = np.linalg.norm(op.matrix @ u - sigma * op.boundary_measures * u)
        scale = np.linalg.norm(op.matrix) + abs(sigma)
        one_signed = all(
            f[inv[k]] * dom.sign > 0 for k in range(len(dom.vertices))
        )
        ok = abs(lam1 - sigma) <= tol and res <= tol * scale and one_signed
        verdicts.append(DomainVerdict(lam1, sigma, res, one_signed, ok))
    return NodalTheoremReport(False, tuple(verdicts))
