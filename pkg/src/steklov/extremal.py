"""Theorem-level verification: predicted extremal bounds, exhaustive
minimization sweeps with rigidity matching, monotonicity and equality
conditions, and the remaining statement-level checks (positivity, nodal,
first-eigenvalue bounds, clump bounds, bipartite identities).

Predicted bounds follow the three-case main result for the i-th Steklov
eigenvalue over n-vertex graphs: i = 2 (dumbbells), i not dividing n
(broom-armed stars), i dividing n (regular combs with correction
theta_i = 1/(4 cos^2(pi/2i))). Irrational bounds are evaluated with mpmath
at 40 significant digits before any floating comparison.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
import scipy.linalg

from .clumps import minimal_broom_codes
from .enumeration import (
    canonical_code,
    enumerate_connected_graphs,
    enumerate_trees,
    tree_code,
)
from .errors import (
    DisconnectedError,
    HypothesesNotMetError,
    InvalidParamsError,
    NoBoundaryError,
    NotASubgraphError,
    NotBipartiteError,
    OutOfSupportedRangeError,
)
from .families import (
    FamilyGraph,
    RootedTree,
    build_comb,
    build_cycle,
    build_dumbbell,
    build_path,
    build_star,
    lambda_value,
    minimal_broom,
    minimal_broom_total,
    rooted_path,
)
from .geometry import (
    GeometricPoint,
    clump_number,
    clump_rooted_tree,
)
from .graph import Role, WeightedBoundaryGraph, combinatorial_graph, make_graph
from .spectral import (
    dirichlet_steklov_spectrum,
    dtn_matrix,
    laplacian_matrix,
    laplacian_spectrum,
    steklov_spectrum,
)

DEFAULT_TOL = 1e-9
MP_DPS = 40

mpmath.mp.dps = MP_DPS


# -- predicted bounds -------------------------------------------------------------


def theta_value(i: int):
    """theta_i = 1/(4 cos^2(pi/2i)): Fraction when rational (i <= 3), else mpf."""
    if i < 2:
        raise InvalidParamsError("need i >= 2")
    if i == 2:
        return Fraction(1, 2)
    if i == 3:
        return Fraction(1, 3)
    return 1 / (4 * mpmath.cos(mpmath.pi / (2 * i)) ** 2)


def lambda_value_mp(l) -> mpmath.mpf:
    """Lambda(l) in extended precision; mirrors the exact rational case table."""
    l = mpmath.mpf(l) if not isinstance(l, mpmath.mpf) else l
    if l <= 0:
        raise InvalidParamsError("need l > 0")
    if l <= 2:
        return 1 / l
    fl = int(mpmath.floor(l))
    alpha = l - fl
    if alpha == 0:
        m = fl // 2
        if fl % 2 == 0:
            return mpmath.mpf(1) / (1 + m * m)
        return mpmath.mpf(1) / (1 + m * (m + 1))
    if fl % 2 == 0:
        m = fl // 2
        return 1 / (1 + m * (m + alpha))
    m = (fl - 1) // 2
    return 1 / (1 + (m + alpha) * (m + 1))


@dataclass(frozen=True)
class MinimizerDescriptor:
    family: str
    params: dict
    graph: WeightedBoundaryGraph
    code: str


@dataclass(frozen=True)
class ExtremalTarget:
    n: int
    i: int
    case: str  # "sigma2" | "i_not_dividing" | "i_dividing"
    bound: float
    bound_exact: Fraction | None
    bound_str: str  # exact rational or 40-digit decimal
    theta: object | None
    characterized: bool  # predicted minimizers are the complete equality set
    minimizers: tuple[MinimizerDescriptor, ...]


def _descriptor(family: str, params: dict, g: WeightedBoundaryGraph) -> MinimizerDescriptor:
    return MinimizerDescriptor(family, params, g, canonical_code(g))


def _dedupe(descs) -> tuple[MinimizerDescriptor, ...]:
    seen = {}
    for d in descs:
        seen.setdefault(d.code, d)
    return tuple(seen[c] for c in sorted(seen))


def _sigma2_minimizers(n: int) -> tuple[MinimizerDescriptor, ...]:
    m, s = divmod(n - 1, 4)
    table = {
        0: [(m, 2 * m, m)],  # n = 4m+1
        1: [(m, 2 * m + 1, m)],  # n = 4m+2
        2: [(m + 1, 2 * m, m + 1), (m, 2 * m + 2, m), (m, 2 * m + 1, m + 1)],
        3: [(m + 1, 2 * m + 1, m + 1)],  # n = 4m+4
    }
    params = table[s]
    out = []
    for d0, i, d1 in params:
        try:
            out.append(_descriptor("dumbbell", {"d0": d0, "i": i, "d1": d1},
                                   build_dumbbell(d0, i, d1).graph))
        except InvalidParamsError:
            continue  # degenerate tiny-n parameter, covered by another entry
    return _dedupe(out)


def _broom_arm(params) -> RootedTree:
    from .families import build_broom

    fam = build_broom(params.l, params.i, params.d)
    return RootedTree(fam.graph, fam.landmarks["o"])


def _star_minimizers(n: int, i: int, m: int) -> tuple[MinimizerDescriptor, ...]:
    forms = minimal_broom_total(m).brooms
    out = []
    for a in range(i + 1):
        if len(forms) == 1 and a > 0:
            break
        arms = [_broom_arm(forms[0])] * (i - a)
        if a:
            arms += [_broom_arm(forms[-1])] * a
        star = build_star(arms)
        out.append(_descriptor("star", {"i": i, "m": m, "mix": a}, star.graph))
    return _dedupe(out)


def _comb_tooth(m: int) -> RootedTree | None:
    """Shape of Br(m-1+theta) with the Dirichlet vertex removed, rooted at
    its neighbor. The shape depends only on m (theta is strictly between 0
    and 1), so a rational stand-in picks the same broom parameters."""
    proxy = Fraction(m - 1) + Fraction(1, 3)
    p = minimal_broom_total(proxy).brooms[0]
    if p.i == 0 and p.d == 0:
        return None  # trivial tooth: the comb is the base graph itself
    size = p.i + 1 + p.d
    edges = [(j, j + 1) for j in range(p.i)]
    edges += [(p.i, p.i + 1 + j) for j in range(p.d)]
    return RootedTree(combinatorial_graph(size, edges), 0)


def _comb_minimizers(n: int, i: int) -> tuple[MinimizerDescriptor, ...]:
    m = n // i
    tooth = _comb_tooth(m)
    bases = [("path", build_path(i))]
    if i % 2 == 1:
        bases.append(("cycle", build_cycle(i)))
    out = []
    for name, fam in bases:
        if tooth is None:
            g = fam.graph
        else:
            g = build_comb(fam.graph, tooth).graph
        out.append(_descriptor("comb", {"base": name, "i": i, "m": m}, g))
    return _dedupe(out)


def predicted_bound(n: int, i: int) -> ExtremalTarget:
    """Predicted lower bound for sigma_i over connected graphs on n vertices,
    with the known minimizer families."""
    if n < 2 or i < 2 or i >= n:
        raise InvalidParamsError("need n >= 2 and 2 <= i < n")
    if i == 2:
        bound = lambda_value(Fraction(n - 1, 2))
        return ExtremalTarget(
            n, 2, "sigma2", float(bound), bound, str(bound), None,
            characterized=True, minimizers=_sigma2_minimizers(n),
        )
    th = theta_value(i)
    if n % i != 0:
        m = n // i
        bound = lambda_value(m)
        characterized = n == i * m + 1
        if characterized:
            mins = _star_minimizers(n, i, m)
        else:
            # example family: degree i+s-1 star, i broom arms and s-1 edges
            s = n - i * m
            forms = minimal_broom_total(m).brooms
            arms = [_broom_arm(forms[0])] * i + [rooted_path(1)] * (s - 1)
            mins = (_descriptor("star", {"i": i, "m": m, "extra_edges": s - 1},
                                build_star(arms).graph),)
        return ExtremalTarget(
            n, i, "i_not_dividing", float(bound), bound, str(bound), None,
            characterized=characterized, minimizers=mins,
        )
    m = n // i
    if isinstance(th, Fraction):
        bound_exact = lambda_value(Fraction(m - 1) + th)
        bound_f, bound_s = float(bound_exact), str(bound_exact)
    else:
        bound_exact = None
        val = lambda_value_mp(mpmath.mpf(m - 1) + th)
        bound_f, bound_s = float(val), mpmath.nstr(val, MP_DPS)
    return ExtremalTarget(
        n, i, "i_dividing", bound_f, bound_exact, bound_s, th,
        characterized=True, minimizers=_comb_minimizers(n, i),
    )


# -- sweeps ----------------------------------------------------------------------


def sigma_value(g: WeightedBoundaryGraph, i: int) -> float:
    """sigma_i with the +inf sentinel when i exceeds |B| (or B is empty)."""
    try:
        return steklov_spectrum(g).eigenvalue(i)
    except NoBoundaryError:
        return math.inf


@dataclass(frozen=True)
class ExtremalReport:
    target: ExtremalTarget
    graph_class: str
    class_size: int
    minimum: float
    argmin_codes: tuple[str, ...]
    predicted_codes: tuple[str, ...]
    match: bool
    bound_ok: bool
    tol: float
    seconds: float


def _reduce_sweep(pairs, tol: float):
    minimum = math.inf
    values = []
    for code, val in pairs:
        values.append((code, val))
        if val < minimum:
            minimum = val
    argmin = tuple(sorted(c for c, v in values if v <= minimum + tol))
    return minimum, argmin, len(values)


def verify_extremal(
    n: int,
    i: int,
    graph_class: str = "trees",
    tol: float = DEFAULT_TOL,
    pairs=None,
) -> ExtremalReport:
    """Sweep a graph class, minimize sigma_i, and match the argmin set
    against the predicted minimizers.

    ``pairs`` optionally injects precomputed (canonical code, sigma_i)
    pairs — the hook used by parallel drivers; by default the sweep runs
    in-process over the enumerated class.
    """
    t0 = time.monotonic()
    target = predicted_bound(n, i)
    if pairs is None:
        if graph_class == "trees":
            stream = enumerate_trees(n)  # gates n <= 16
            if n > 12:
                raise OutOfSupportedRangeError("tree sweeps support n <= 12")
        elif graph_class == "connected":
            stream = enumerate_connected_graphs(n)  # gates n <= 7
        else:
            raise InvalidParamsError(f"unknown graph class {graph_class!r}")
        pairs = ((canonical_code(g), sigma_value(g, i)) for g in stream)
    minimum, argmin, size = _reduce_sweep(pairs, tol)
    predicted = tuple(sorted(d.code for d in target.minimizers))
    if target.characterized:
        match = argmin == predicted and abs(minimum - target.bound) <= tol
    else:
        match = set(predicted) <= set(argmin) and abs(minimum - target.bound) <= tol
    bound_ok = minimum >= target.bound - tol
    return ExtremalReport(
        target=target,
        graph_class=graph_class,
        class_size=size,
        minimum=minimum,
        argmin_codes=argmin,
        predicted_codes=predicted,
        match=match,
        bound_ok=bound_ok,
        tol=tol,
        seconds=time.monotonic() - t0,
    )


# -- monotonicity and rigidity ------------------------------------------------------


def _check_embedding(gt: WeightedBoundaryGraph, g: WeightedBoundaryGraph) -> None:
    """g embeds into gt by the identity on vertex labels 0..g.n-1."""
    if g.n > gt.n:
        raise NotASubgraphError("subgraph has more vertices than its host")
    for u, v, w in g.edges:
        if gt.edge_weights.get((u, v)) != w:
            raise NotASubgraphError(f"edge {{{u},{v}}} missing or reweighted in host")
    for v in range(g.n):
        if g.measures[v] != gt.measures[v]:
            raise NotASubgraphError(f"vertex {v} has a different measure in host")
    if not set(gt.boundary) <= set(g.boundary):
        raise NotASubgraphError("host boundary must be contained in subgraph boundary")


@dataclass(frozen=True)
class MonotonicityVerdict:
    ok: bool
    slacks: tuple[float, ...]  # sigma_i(host) - sigma_i(subgraph), i = 1..|B~|


def check_monotonicity(
    gt: WeightedBoundaryGraph, g: WeightedBoundaryGraph, tol: float = DEFAULT_TOL
) -> MonotonicityVerdict:
    """sigma_i(G~, B~) >= sigma_i(G, B) for i = 1..|B~| when G is a subgraph
    of G~ carrying a larger boundary."""
    _check_embedding(gt, g)
    big = steklov_spectrum(gt)
    small = steklov_spectrum(g)
    slacks = tuple(
        big.eigenvalue(i) - small.eigenvalue(i)
        for i in range(1, len(gt.boundary) + 1)
    )
    return MonotonicityVerdict(all(s >= -tol for s in slacks), slacks)


@dataclass(frozen=True)
class RigidityData:
    basis: np.ndarray  # columns: harmonic, mean-zero-on-B~ functions on V(G~)
    zero_set: tuple[int, ...]  # Z(G~) within Omega(G~)
    cond1: bool  # B \ B~ inside Z
    cond2: bool  # basis constant on each attached component
    cond3: bool  # quadratic form bounded below by sigma_{|B~|}(G~) on admissible v
    min_form_eig: float  # smallest eigenvalue deciding cond3
    separates: bool  # H separates V(G)
    borderline_pairs: tuple[tuple[int, int], ...]  # numerically ambiguous separation
    comb: bool  # G~ is a comb over G


def _h_basis(gt: WeightedBoundaryGraph) -> np.ndarray:
    """Basis of H(G~) = {harmonic on Omega, mean-zero on B~}: harmonic
    extensions of a basis of mean-zero boundary data."""
    b = list(gt.boundary)
    if len(b) < 2:
        raise InvalidParamsError("rigidity needs |B~| >= 2")
    from .spectral import harmonic_extension

    m = [float(gt.measures[x]) for x in b]
    cols = []
    for j in range(1, len(b)):
        data = {x: 0.0 for x in b}
        data[b[j]] = 1.0
        data[b[0]] = -m[j] / m[0]
        cols.append(harmonic_extension(gt, data))
    return np.column_stack(cols)


def is_comb_over(gt: WeightedBoundaryGraph, g: WeightedBoundaryGraph) -> bool:
    """True when the attached components G~_x are pairwise disjoint, i.e.
    the components of G~ minus E(G) are in bijection with V(G)."""
    _check_embedding(gt, g)
    stripped = gt.delete_edges([(u, v) for u, v, _ in g.edges])
    return len(stripped.components()) == g.n


def rigidity_data(
    gt: WeightedBoundaryGraph,
    g: WeightedBoundaryGraph,
    tol: float = DEFAULT_TOL,
    tau_zero: float = DEFAULT_TOL,
) -> RigidityData:
    _check_embedding(gt, g)
    basis = _h_basis(gt)
    scale = max(1.0, float(np.max(np.abs(basis))))
    bt = set(gt.boundary)
    omega = [x for x in range(gt.n) if x not in bt]
    zero = tuple(
        x for x in omega if np.all(np.abs(basis[x, :]) <= tau_zero * scale)
    )
    extra_boundary = [x for x in g.boundary if x not in bt]
    cond1 = all(x in zero for x in extra_boundary)

    stripped = gt.delete_edges([(u, v) for u, v, _ in g.edges])
    cond2 = True
    for comp in stripped.components():
        block = basis[comp, :]
        spread = np.max(block, axis=0) - np.min(block, axis=0)
        if np.any(spread > tol * scale):
            cond2 = False
            break

    # Condition (3): min eig of P^T (L - sigma M_B) P over v with
    # <v,1>_B = 0 and v constant on B~.
    sigma = steklov_spectrum(gt).eigenvalue(len(gt.boundary))
    L = laplacian_matrix(g).matrix
    MB = np.zeros((g.n, g.n))
    for x in g.boundary:
        MB[x, x] = float(g.measures[x])
    bt_in_g = sorted(bt)
    free = [x for x in range(g.n) if x not in bt]
    # variables: c (shared B~ value) then the free vertices
    A = np.zeros((g.n, 1 + len(free)))
    for x in bt_in_g:
        A[x, 0] = 1.0
    for k, x in enumerate(free):
        A[x, 1 + k] = 1.0
    constraint = np.zeros((1, 1 + len(free)))
    constraint[0, 0] = sum(float(g.measures[x]) for x in g.boundary if x in bt)
    for k, x in enumerate(free):
        if x in set(g.boundary):
            constraint[0, 1 + k] = float(g.measures[x])
    N = scipy.linalg.null_space(constraint)
    P = A @ N
    Q = P.T @ (L - sigma * MB) @ P
    Q = (Q + Q.T) / 2.0
    eigs = scipy.linalg.eigvalsh(Q)
    min_eig = float(eigs[0]) if len(eigs) else 0.0
    form_scale = max(1.0, float(np.max(np.abs(L))))
    cond3 = min_eig >= -tol * form_scale

    separates = True
    borderline = []
    for x in range(g.n):
        for y in range(x + 1, g.n):
            gap = float(np.max(np.abs(basis[x, :] - basis[y, :])))
            if gap <= tau_zero * scale:
                separates = False
            elif gap <= 10 * tau_zero * scale:
                borderline.append((x, y))
    return RigidityData(
        basis=basis,
        zero_set=zero,
        cond1=cond1,
        cond2=cond2,
        cond3=cond3,
        min_form_eig=min_eig,
        separates=separates,
        borderline_pairs=tuple(borderline),
        comb=is_comb_over(gt, g),
    )


@dataclass(frozen=True)
class RigidityVerdict:
    conditions_hold: bool
    spectra_equal: bool
    agree: bool  # biconditional: conditions <=> equal spectra
    comb_consistent: bool | None  # comb <=> equality, when the hypothesis applies
    data: RigidityData


def check_rigidity_equivalence(
    gt: WeightedBoundaryGraph, g: WeightedBoundaryGraph, tol: float = DEFAULT_TOL
) -> RigidityVerdict:
    """Conditions (1)-(3) hold iff sigma_i(G~,B~) = sigma_i(G,B) for all
    i up to |B~|; additionally, with B = B~ and H separating V(G), equality
    holds iff G~ is a comb over G."""
    data = rigidity_data(gt, g, tol=tol)
    big = steklov_spectrum(gt)
    small = steklov_spectrum(g)
    k = len(gt.boundary)
    equal = all(
        abs(big.eigenvalue(i) - small.eigenvalue(i))
        <= tol * max(1.0, abs(big.eigenvalue(i)))
        for i in range(1, k + 1)
    )
    conditions = data.cond1 and data.cond2 and data.cond3
    comb_consistent = None
    if set(g.boundary) == set(gt.boundary) and data.separates:
        comb_consistent = data.comb == equal
    return RigidityVerdict(
        conditions_hold=conditions,
        spectra_equal=equal,
        agree=conditions == equal,
        comb_consistent=comb_consistent,
        data=data,
    )


# -- remaining statement-level checks -------------------------------------------------


@dataclass(frozen=True)
class PositivityVerdict:
    skipped: bool  # Omega_D disconnected: decomposition identity checked instead
    lambda1: float
    simple: bool
    one_signed: bool
    higher_change_sign: bool
    decomposition_ok: bool | None

    @property
    def ok(self) -> bool:
        if self.skipped:
            return bool(self.decomposition_ok)
        return self.simple and self.one_signed and self.higher_change_sign


def verify_positivity(g: WeightedBoundaryGraph, tol: float = DEFAULT_TOL) -> PositivityVerdict:
    """First Dirichlet-Steklov eigenfunction is one-signed on Omega_D and
    lambda_1 is simple, when G[Omega_D] is connected; otherwise the spectrum
    decomposes over the components of G[Omega_D]."""
    if not g.dirichlet:
        raise InvalidParamsError("positivity check needs B_D nonempty")
    if not g.is_connected():
        raise DisconnectedError("positivity check needs a connected graph")
    omega_d = g.dirichlet_interior
    comps = g.components(omega_d)
    res = dirichlet_steklov_spectrum(g)
    if len(comps) > 1:
        pieces = []
        dset = set(g.dirichlet)
        for comp in comps:
            attached = sorted(
                {y for x in comp for y in g.adjacency[x] if y in dset}
            )
            verts = list(comp) + attached
            piece = g.induced_subgraph(verts)
            if piece.boundary:  # boundary-free pieces contribute no eigenvalues
                pieces.append(piece)
        union = np.sort(
            np.concatenate([dirichlet_steklov_spectrum(p).eigenvalues for p in pieces])
        )[: len(res.eigenvalues)]
        ok = bool(
            np.all(np.abs(union - res.eigenvalues) <= tol * np.maximum(1.0, np.abs(res.eigenvalues)))
        )
        return PositivityVerdict(True, res.eigenvalue(1), False, False, False, ok)
    lam1, f1 = res.eigenpair(1)
    vals = f1[list(omega_d)]
    one_signed = bool(np.all(vals > tol * np.max(np.abs(vals))) or np.all(
        vals < -tol * np.max(np.abs(vals))
    ))
    simple = (
        len(res.eigenvalues) < 2
        or res.eigenvalue(2) - lam1 > tol * max(1.0, abs(lam1))
    )
    higher = True
    for i in range(2, len(res.eigenvalues) + 1):
        _, fi = res.eigenpair(i)
        b = fi[list(g.boundary)]
        if not (b.min() < -tol * np.max(np.abs(b)) and b.max() > tol * np.max(np.abs(b))):
            higher = False
            break
    return PositivityVerdict(False, lam1, simple, one_signed, higher, None)


@dataclass(frozen=True)
class Lambda1BoundVerdict:
    lambda1: float
    bound: float
    l: Fraction
    n: int
    holds: bool
    equality: bool
    structure_matches: bool | None


def verify_lambda1_bound(g: WeightedBoundaryGraph, tol: float = DEFAULT_TOL) -> Lambda1BoundVerdict:
    """lambda_1 >= Lambda(l, n) for trees whose leaves are exactly B u B_D,
    unit weights off the Dirichlet edges, l = 1/(sum of Dirichlet edge
    weights), n = |Omega_D| - 1. At equality the structure is matched:
    for |B_D| = 1 the tree must be a minimal broom Br(l, n)."""
    if not g.is_tree():
        raise HypothesesNotMetError("bound needs a tree")
    if not g.dirichlet or not g.boundary:
        raise HypothesesNotMetError("bound needs B and B_D nonempty")
    leaf_set = set(g.leaves())
    if set(g.boundary) | set(g.dirichlet) != leaf_set:
        raise HypothesesNotMetError("leaves must be exactly B u B_D")
    dset = set(g.dirichlet)
    for u, v, w in g.edges:
        if u not in dset and v not in dset and w != 1:
            raise HypothesesNotMetError("interior edges must have unit weight")
    total_dw = sum(Fraction(w) for u, v, w in g.edges if u in dset or v in dset)
    l = Fraction(1) / total_dw
    n = len(g.dirichlet_interior) - 1
    sol = minimal_broom(l, n)
    bound = float(sol.value)
    lam1 = dirichlet_steklov_spectrum(g).eigenvalue(1)
    holds = lam1 >= bound - tol
    equality = abs(lam1 - bound) <= tol
    structure = None
    if equality and len(g.dirichlet) == 1:
        codes = set()
        from .families import build_broom

        for p in sol.brooms:
            fam = build_broom(p.l, p.i, p.d)
            codes.add(tree_code(fam.graph, root=fam.landmarks["o"]))
        structure = tree_code(g, root=g.dirichlet[0]) in codes
    return Lambda1BoundVerdict(lam1, bound, l, n, holds, equality, structure)


@dataclass(frozen=True)
class ClumpBoundVerdict:
    sigma2: float
    clump: Fraction
    bound: float
    holds: bool
    equality: bool
    broom_clumps: int  # equilibrium clumps isomorphic to Br(Clump)
    rigidity_consistent: bool  # equality <=> at least two broom clumps


def verify_steklov_clump(g: WeightedBoundaryGraph, tol: float = DEFAULT_TOL) -> ClumpBoundVerdict:
    """sigma_2(T) >= Lambda(Clump(T)); equality iff at least two clumps at
    the equilibrium point are minimal brooms Br(Clump(T))."""
    rep = clump_number(g)
    cn = rep.clump_number
    bound = float(lambda_value(cn))
    sigma2 = sigma_value(g, 2)
    holds = sigma2 >= bound - tol
    equality = abs(sigma2 - bound) <= tol
    codes = set()
    sol = minimal_broom_total(cn)
    from .families import build_broom

    for p in sol.brooms:
        fam = build_broom(p.l, p.i, p.d)
        codes.add(tree_code(fam.graph, root=fam.landmarks["o"]))
    matches = 0
    for clump in rep.clumps:
        if clump.length != cn:
            continue
        rooted, root = clump_rooted_tree(g, rep.point, clump)
        if tree_code(rooted, root=root) in codes:
            matches += 1
    return ClumpBoundVerdict(
        sigma2, cn, bound, holds, equality, matches,
        rigidity_consistent=(matches >= 2) == equality,
    )


@dataclass(frozen=True)
class Sigma2TreeVerdict:
    sigma2: float
    bound: float
    holds: bool
    equality: bool
    dumbbell_match: bool | None  # at equality: tree is in the predicted list


def verify_sigma2_tree(g: WeightedBoundaryGraph, tol: float = DEFAULT_TOL) -> Sigma2TreeVerdict:
    """sigma_2(T) >= Lambda(|E|/2) with the dumbbell equality list."""
    if not g.is_tree():
        raise HypothesesNotMetError("tree bound needs a tree")
    bound = float(lambda_value(Fraction(len(g.edges), 2)))
    sigma2 = sigma_value(g, 2)
    holds = sigma2 >= bound - tol
    equality = abs(sigma2 - bound) <= tol
    match = None
    if equality:
        if g.n <= 2:
            match = True  # single edge: the degenerate dumbbell is the path
        else:
            predicted = {d.code for d in predicted_bound(g.n, 2).minimizers}
            match = canonical_code(g) in predicted
    return Sigma2TreeVerdict(sigma2, bound, holds, equality, match)


@dataclass(frozen=True)
class BipartiteTopVerdict:
    mu_max: float
    simple: bool
    alternating: bool
    identity_max_residual: float
    ok: bool


def _bipartition(g: WeightedBoundaryGraph) -> list[int]:
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    raise NotBipartiteError("graph contains an odd cycle")
    return color


def verify_bipartite_top(g: WeightedBoundaryGraph, tol: float = DEFAULT_TOL) -> BipartiteTopVerdict:
    """Top Laplacian eigenvalue of a connected bipartite graph: simple,
    eigenvector alternating across every edge, and the per-vertex
    zero-distance identity (1/m_x) sum_y w(|f(x)|+|f(y)|)/|f(x)| = mu_max."""
    if not g.is_connected():
        raise DisconnectedError("bipartite top check needs a connected graph")
    _bipartition(g)
    res = laplacian_spectrum(g)
    mu = res.eigenvalue(g.n)
    f = res.vectors[:, -1]
    simple = g.n < 2 or mu - res.eigenvalue(g.n - 1) > tol * max(1.0, mu)
    scale = float(np.max(np.abs(f)))
    alternating = all(
        abs(f[u]) > tol * scale and abs(f[v]) > tol * scale and f[u] * f[v] < 0
        for u, v, _ in g.edges
    )
    max_res = 0.0
    if alternating:
        for x in range(g.n):
            total = sum(
                float(w) * (abs(f[x]) + abs(f[y])) / abs(f[x])
                for (u, v, w) in g.edges
                for y in ([v] if u == x else [u] if v == x else [])
            )
            max_res = max(max_res, abs(total / float(g.measures[x]) - mu))
    ok = simple and alternating and max_res <= tol * max(1.0, mu)
    return BipartiteTopVerdict(mu, simple, alternating, max_res, ok)


@dataclass(frozen=True)
class RegStarVerdict:
    r: int
    l: int
    sigmas: tuple[float, ...]  # sigma_2..sigma_r
    upper_ok: bool  # all <= 1/l
    branch_budget: int  # floor(sqrt(4(l-1)+1))
    branches_small: bool | None
    equality: bool | None  # sigma_2 == 1/l when branches are small


def verify_reg_star(
    r: int, l: int, extension: RootedTree | None = None, tol: float = DEFAULT_TOL
) -> RegStarVerdict:
    """sigma_i <= 1/l for i = 2..r on a star of r length-l path arms with an
    optional rooted tree grown at the center; when every branch of the
    extension has at most floor(sqrt(4(l-1)+1)) edges, sigma_2 = 1/l."""
    if r < 2 or l < 1:
        raise InvalidParamsError("need r >= 2 and l >= 1")
    arms = [rooted_path(l) for _ in range(r)]
    if extension is not None:
        arms.append(extension)
    g = build_star(arms).graph
    res = steklov_spectrum(g)
    sigmas = tuple(res.eigenvalue(i) for i in range(2, r + 1))
    top = 1.0 / l
    upper_ok = all(s <= top + tol for s in sigmas)
    budget = math.isqrt(4 * (l - 1) + 1)
    if extension is None:
        small = True
    else:
        ext = extension.graph
        small = all(
            len(branch) <= budget
            for b in ext.adjacency[extension.root]
            for branch in [_branch_edges(ext, b, extension.root)]
        )
    equality = abs(res.eigenvalue(2) - top) <= tol if small else None
    return RegStarVerdict(r, l, sigmas, upper_ok, budget, small, equality)


def _branch_edges(g: WeightedBoundaryGraph, start: int, blocked: int) -> list:
    seen = {blocked, start}
    stack = [start]
    edges = [(blocked, start)]
    while stack:
        x = stack.pop()
        for y in g.adjacency[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
                edges.append((x, y))
    return edges


@dataclass(frozen=True)
class SigmaLambdaVerdict:
    lambda1: float
    sigma2: float
    strict: bool


def verify_sigma_lambda(
    g: WeightedBoundaryGraph, z: int, w=1, tol: float = DEFAULT_TOL
) -> SigmaLambdaVerdict:
    """Attaching a Dirichlet edge of weight w at interior-or-boundary vertex
    z gives lambda_1 strictly below sigma_2 of the original graph."""
    if not 0 <= z < g.n:
        raise InvalidParamsError("z must be a vertex of G")
    if g.dirichlet:
        raise InvalidParamsError("G must carry a plain boundary (no B_D)")
    edges = list(g.edges) + [(z, g.n, w)]
    roles = list(g.roles) + [Role.DIRICHLET]
    measures = list(g.measures) + [1]
    gt = make_graph(g.n + 1, edges, measures=measures, roles=roles)
    lam1 = dirichlet_steklov_spectrum(gt).eigenvalue(1)
    sigma2 = steklov_spectrum(g).eigenvalue(2)
    # strictness up to solver accuracy, not the classification tolerance
    return SigmaLambdaVerdict(lam1, sigma2, sigma2 - lam1 > 1e-12)
