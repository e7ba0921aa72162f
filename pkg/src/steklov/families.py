"""Extremal graph families and their closed-form spectral data.

Brooms Br(l,i,d), minimal brooms Br(l,n) / Br(l) with the values
Lambda(l,n) / Lambda(l), dumbbells, stars, regular combs, paths and
cycles. Closed-form values are exact Fractions whenever the inputs are
rational; numeric conformance against the spectral module is exercised in
the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import InvalidParamsError
from .graph import (
    Role,
    WeightedBoundaryGraph,
    combinatorial_boundary,
    combinatorial_graph,
    make_graph,
)
from .spectral import dirichlet_steklov_spectrum, laplacian_spectrum

Number = float | Fraction


def as_number(x) -> Number:
    """Exact Fraction for rational-like inputs (int, Fraction, 'p/q'), float otherwise."""
    if isinstance(x, bool):
        raise InvalidParamsError("not a number")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParamsError(f"cannot interpret {x!r} as a length") from exc
    if isinstance(x, float):
        return x
    raise InvalidParamsError(f"cannot interpret {x!r} as a length")


def _one_over(x: Number) -> Number:
    return Fraction(1) / x if isinstance(x, Rational) else 1.0 / x


@dataclass(frozen=True)
class RootedTree:
    graph: WeightedBoundaryGraph
    root: int


@dataclass(frozen=True)
class FamilyGraph:
    graph: WeightedBoundaryGraph
    landmarks: dict[str, int]
    family: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class BroomParams:
    """Br(l,i,d): Dirichlet edge of length l, path of length i, d pendants."""

    l: Number
    i: int
    d: int

    def __post_init__(self):
        if not (self.l > 0) or self.i < 0 or self.d < 0:
            raise InvalidParamsError(f"bad broom parameters {self}")

    def normalized(self) -> "BroomParams":
        # Br(l,i,1) = Br(l,i+1,0) by definition.
        if self.d == 1:
            return BroomParams(self.l, self.i + 1, 0)
        return self


@dataclass(frozen=True)
class MinimalBroomSolution:
    value: Number
    brooms: tuple[BroomParams, ...]
    split_indices: tuple[int, ...]


# -- brooms --------------------------------------------------------------------


def build_broom(l, i: int, d: int) -> FamilyGraph:
    """Path o - v0 - ... - v_i with edge {o,v0} of weight 1/l and d pendants on v_i.

    Vertex o is the Dirichlet root. d=1 is normalized to (i+1, 0) first.
    """
    p = BroomParams(as_number(l), i, d).normalized()
    l, i, d = p.l, p.i, p.d
    n = 1 + (i + 1) + d
    edges = [(0, 1, _one_over(l))]
    edges += [(j, j + 1, 1) for j in range(1, i + 1)]
    edges += [(i + 1, i + 2 + j, 1) for j in range(d)]
    roles = [Role.DIRICHLET] + [Role.INTERIOR] * (i + 1) + [Role.BOUNDARY] * d
    if d == 0:
        roles[i + 1] = Role.BOUNDARY
    landmarks = {"o": 0}
    landmarks.update({f"v{j}": j + 1 for j in range(i + 1)})
    landmarks.update({f"u{j + 1}": i + 2 + j for j in range(d)})
    g = make_graph(n, edges, roles=roles)
    return FamilyGraph(g, landmarks, "broom", {"l": l, "i": i, "d": d})


def broom_lambda1(l, i: int, d: int) -> Number:
    p = BroomParams(as_number(l), i, d).normalized()
    if p.d == 0:
        return _one_over(p.l + p.i)
    return _one_over(1 + (p.l + p.i) * p.d)


def broom_eigenfunction(l, i: int, d: int) -> dict[int, Number]:
    """First Dirichlet-Steklov eigenfunction, keyed by the build_broom vertex ids."""
    p = BroomParams(as_number(l), i, d).normalized()
    l, i, d = p.l, p.i, p.d
    f: dict[int, Number] = {0: 0 * l}
    if d == 0:
        for j in range(i + 1):
            f[j + 1] = (l + j) / (l + i)
    else:
        denom = 1 + (l + i) * d
        for j in range(i + 1):
            f[j + 1] = (l + j) * d / denom
        for j in range(d):
            f[i + 2 + j] = 1
    return f


def _halves(x: Number) -> int:
    """-1 / 0 / +1 as {x} is below / at / above one half."""
    fl = math.floor(x)
    frac = x - fl
    half = Fraction(1, 2)
    if frac < half:
        return -1
    if frac > half:
        return 1
    return 0


def minimal_broom(l, n: int) -> MinimalBroomSolution:
    """Minimizers of lambda_1 over brooms Br(l,i,d) with i+d = n."""
    l = as_number(l)
    if not l > 0 or n < 0:
        raise InvalidParamsError("need l > 0 and n >= 0")
    if n <= 1:
        # every split yields the same path of total length l + n
        value = _one_over(l + n)
        return MinimalBroomSolution(value, (BroomParams(l, n, 0),), (n,))
    if l >= n:
        value = _one_over(1 + n * l)
        return MinimalBroomSolution(value, (BroomParams(l, 0, n),), (0,))
    x = (n - l) / 2
    side = _halves(x)
    if side < 0:
        splits = [math.floor(x)]
    elif side > 0:
        splits = [math.ceil(x)]
    else:
        splits = [math.floor(x), math.ceil(x)]
    brooms = tuple(BroomParams(l, i, n - i) for i in splits)
    i0 = splits[0]
    value = _one_over(1 + (l + i0) * (n - i0))
    return MinimalBroomSolution(value, brooms, tuple(splits))


def minimal_broom_total(l) -> MinimalBroomSolution:
    """Br(l) and Lambda(l): minimal brooms of total length l."""
    l = as_number(l)
    if not l > 0:
        raise InvalidParamsError("need l > 0")
    if l <= 2:
        k = math.ceil(l - 1)  # 0 for l <= 1, 1 for 1 < l <= 2
        return MinimalBroomSolution(
            _one_over(l), (BroomParams(l - k, k, 0),), (k,)
        )
    fl = math.floor(l)
    alpha = l - fl
    if alpha == 0:
        one = Fraction(1) if isinstance(l, Fraction) else 1.0
        if fl % 2 == 0:
            m = fl // 2
            return MinimalBroomSolution(
                _one_over(1 + m * m), (BroomParams(one, m - 1, m),), (m - 1,)
            )
        m = (fl - 1) // 2
        return MinimalBroomSolution(
            _one_over(1 + m * (m + 1)),
            (BroomParams(one, m - 1, m + 1), BroomParams(one, m, m)),
            (m - 1, m),
        )
    if fl % 2 == 0:
        m = fl // 2
        return MinimalBroomSolution(
            _one_over(1 + m * (m + alpha)), (BroomParams(alpha, m, m),), (m,)
        )
    m = (fl - 1) // 2
    return MinimalBroomSolution(
        _one_over(1 + (m + alpha) * (m + 1)), (BroomParams(alpha, m, m + 1),), (m,)
    )


def lambda_value(l) -> Number:
    """Lambda(l) = lambda_1 of the minimal broom of total length l."""
    return minimal_broom_total(l).value


def lambda_value_ln(l, n: int) -> Number:
    """Lambda(l, n)."""
    return minimal_broom(l, n).value


# -- dumbbells, stars, combs -----------------------------------------------------


def build_dumbbell(d0: int, i: int, d1: int) -> FamilyGraph:
    """Path of length i with d0 and d1 pendant edges on its two ends."""
    if d0 < 0 or d1 < 0 or i < 1:
        raise InvalidParamsError("dumbbell needs d0, d1 >= 0 and i >= 1")
    n = i + 1 + d0 + d1
    edges = [(j, j + 1) for j in range(i)]
    edges += [(0, i + 1 + j) for j in range(d0)]
    edges += [(i, i + 1 + d0 + j) for j in range(d1)]
    g = combinatorial_graph(n, edges)
    landmarks = {f"p{j}": j for j in range(i + 1)}
    return FamilyGraph(g, landmarks, "dumbbell", {"d0": d0, "i": i, "d1": d1})


def build_star(arms: list[RootedTree]) -> FamilyGraph:
    """Wedge-sum of rooted trees on their roots; the identified root is the center."""
    if len(arms) < 2:
        raise InvalidParamsError("a star needs at least 2 arms")
    for arm in arms:
        if arm.graph.n < 2:
            raise InvalidParamsError("star arms must be nontrivial rooted trees")
        if not arm.graph.is_tree():
            raise InvalidParamsError("star arms must be trees")
    edges: list[tuple[int, int, object]] = []
    next_id = 1  # 0 is the center
    for arm in arms:
        index = {arm.root: 0}
        for v in range(arm.graph.n):
            if v != arm.root:
                index[v] = next_id
                next_id += 1
        edges += [(index[u], index[v], w) for u, v, w in arm.graph.edges]
    g = make_graph(next_id, edges)
    g = g.with_roles(combinatorial_boundary(g))
    return FamilyGraph(g, {"center": 0}, "star", {"arms": len(arms)})


def rooted_path(length: int) -> RootedTree:
    """Path with ``length`` edges rooted at one end; the standard star arm / tooth."""
    if length < 1:
        raise InvalidParamsError("rooted path needs length >= 1")
    g = combinatorial_graph(length + 1, [(j, j + 1) for j in range(length)])
    return RootedTree(g, 0)


def build_star_paths(r: int, l: int) -> FamilyGraph:
    """St(r; l): r path arms of length l."""
    fam = build_star([rooted_path(l) for _ in range(r)])
    return FamilyGraph(fam.graph, fam.landmarks, "star", {"r": r, "l": l})


def build_comb(base: WeightedBoundaryGraph, tooth: RootedTree) -> FamilyGraph:
    """Regular comb: one copy of the tooth glued at each base vertex by its root."""
    if not base.is_connected() or base.n < 1:
        raise InvalidParamsError("comb base must be a connected graph")
    if tooth.graph.n < 2 or not tooth.graph.is_tree():
        raise InvalidParamsError("comb tooth must be a nontrivial rooted tree")
    nb, nt = base.n, tooth.graph.n
    edges = [(u, v) for u, v, _ in base.edges]
    vertex_map: dict[tuple[int, int], int] = {}
    next_id = nb
    for x in range(nb):
        index = {tooth.root: x}
        for t in range(nt):
            if t != tooth.root:
                index[t] = next_id
                next_id += 1
        vertex_map.update({(x, t): index[t] for t in range(nt)})
        edges += [(index[u], index[v]) for u, v, _ in tooth.graph.edges]
    g = combinatorial_graph(nb * nt, edges)
    return FamilyGraph(
        g,
        {f"base{x}": x for x in range(nb)},
        "comb",
        {"base_n": nb, "tooth_n": nt, "vertex_map": vertex_map},
    )


def comb_tooth_with_dirichlet_edge(tooth: RootedTree, weight: float) -> WeightedBoundaryGraph:
    """T_i of the comb lemma: tooth plus a Dirichlet edge of the given weight at the root."""
    nt = tooth.graph.n
    edges = [(u + 1, v + 1, w) for u, v, w in tooth.graph.edges] + [
        (0, tooth.root + 1, weight)
    ]
    g = make_graph(nt + 1, edges)
    roles = [Role.DIRICHLET] + [
        Role.BOUNDARY if g.degree(v + 1) <= 1 else Role.INTERIOR for v in range(nt)
    ]
    return g.with_roles(roles)


def comb_spectrum(base: WeightedBoundaryGraph, tooth: RootedTree):
    """First |V(base)| Steklov eigenvalues of Comb(base; tooth) with tensor eigenfunctions.

    sigma_1 = 0 and sigma_i = lambda_1(T_i) for 2 <= i <= |V(base)|, where
    T_i carries a Dirichlet edge of weight mu_i(base) at the tooth root.
    Returns (values, functions) with functions[:, i] on the comb vertices.
    """
    fam = build_comb(base, tooth)
    comb = fam.graph
    vmap = fam.params["vertex_map"]
    mus = laplacian_spectrum(base)
    nb = base.n
    values = np.zeros(nb)
    functions = np.zeros((comb.n, nb))
    functions[:, 0] = 1.0
    for i in range(2, nb + 1):
        mu = mus.eigenvalue(i)
        t_i = comb_tooth_with_dirichlet_edge(tooth, mu)
        spec = dirichlet_steklov_spectrum(t_i)
        lam, f = spec.eigenpair(1)
        values[i - 1] = lam
        g_vec = mus.extensions[:, i - 1]
        for x in range(nb):
            for t in range(tooth.graph.n):
                functions[vmap[(x, t)], i - 1] = g_vec[x] * f[t + 1]
    return values, functions


# -- paths and cycles --------------------------------------------------------------


def build_path(n: int) -> FamilyGraph:
    if n < 2:
        raise InvalidParamsError("path needs n >= 2")
    g = combinatorial_graph(n, [(j, j + 1) for j in range(n - 1)])
    return FamilyGraph(g, {"end0": 0, "end1": n - 1}, "path", {"n": n})


def build_cycle(n: int) -> FamilyGraph:
    if n < 3:
        raise InvalidParamsError("cycle needs n >= 3")
    g = combinatorial_graph(n, [(j, (j + 1) % n) for j in range(n)])
    return FamilyGraph(g, {}, "cycle", {"n": n})


def mu_max_path(n: int) -> float:
    """Largest Laplacian eigenvalue of the unit path P_n."""
    if n < 2:
        raise InvalidParamsError("path needs n >= 2")
    return 4.0 * math.cos(math.pi / (2 * n)) ** 2
