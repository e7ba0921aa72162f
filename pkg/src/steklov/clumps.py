"""Certificate searches for clump-reduction lemmas on unit trees.

Everything here is a bounded exhaustive search that either returns an
explicit witness (removed edge set, per-component clump data) or proves by
exhaustion that no witness exists. Searches run over edge subsets ordered
by size and then lexicographically by edge index, so results are
deterministic. When a guarantee applies (the hypotheses of the underlying
removal lemmas hold) and no witness is found, the run fails loudly with
CertificationError instead of returning a quiet negative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .enumeration import tree_code
from .errors import (
    CertificationError,
    HypothesisViolatedError,
    InvalidParamsError,
    NotATreeError,
)
from .families import build_broom, minimal_broom_total
from .geometry import (
    GeometricPoint,
    clump_lengths_at,
    clump_number,
    clump_number_at,
    clump_rooted_tree,
)
from .graph import WeightedBoundaryGraph


@lru_cache(maxsize=None)
def minimal_broom_codes(k: int) -> frozenset[str]:
    """Rooted canonical codes of all minimal brooms of total length k,
    rooted at the Dirichlet end."""
    if k < 1:
        raise InvalidParamsError("need k >= 1")
    sol = minimal_broom_total(k)
    codes = set()
    for p in sol.brooms:
        fam = build_broom(p.l, p.i, p.d)
        codes.add(tree_code(fam.graph, root=fam.landmarks["o"]))
    return frozenset(codes)


@dataclass(frozen=True)
class SubKCandidate:
    """One vertex o with Clump(T,o) = k: which clumps at o are minimal brooms."""

    vertex: int
    broom_clumps: tuple[int, ...]  # attach vertices of clumps isomorphic to Br(k)
    ok: bool  # at most one matching clump


@dataclass(frozen=True)
class SubKWitness:
    value: bool
    k: int
    clump_number: Fraction
    candidates: tuple[SubKCandidate, ...]  # all o with Clump(T,o) = k


def is_sub_k(g: WeightedBoundaryGraph, k: int) -> SubKWitness:
    """Sub-k test for a unit tree.

    True when the clump number is below k, or equals k and some vertex o
    with vertex clump number k has at most one clump isomorphic, as a
    rooted metric tree with root o, to a minimal broom of total length k.
    All qualifying vertices are recorded, not just the first success.
    """
    if not g.is_tree():
        raise NotATreeError("sub-k is defined for trees")
    if k < 1:
        raise InvalidParamsError("need k >= 1")
    cn = clump_number(g).clump_number
    if cn < k:
        return SubKWitness(True, k, cn, ())
    if cn > k:
        return SubKWitness(False, k, cn, ())
    codes = minimal_broom_codes(k)
    candidates = []
    for o in range(g.n):
        pt = GeometricPoint.at_vertex(o)
        if clump_number_at(g, pt) != k:
            continue
        matches = []
        for clump in clump_lengths_at(g, pt):
            if clump.length != k:
                continue  # a minimal broom of total length k has length k
            rooted, root = clump_rooted_tree(g, pt, clump)
            if tree_code(rooted, root=root) in codes:
                matches.append(clump.attach)
        candidates.append(SubKCandidate(o, tuple(matches), len(matches) <= 1))
    ok = any(c.ok for c in candidates)
    return SubKWitness(ok, k, cn, tuple(candidates))


@dataclass(frozen=True)
class ComponentReport:
    vertices: tuple[int, ...]  # original vertex labels
    clump_number: Fraction
    sub_k: SubKWitness | None


@dataclass(frozen=True)
class RemovalCertificate:
    removed: tuple[tuple[int, int], ...]
    components: tuple[ComponentReport, ...]
    bound: Fraction | None  # per-component clump bound, None for sub-k searches


@dataclass(frozen=True)
class StarException:
    """The input is the exceptional star: degree r+2, every arm a minimal
    broom of total length k rooted at the center."""

    center: int
    k: int
    r: int


def _components_after(g: WeightedBoundaryGraph, removed) -> list[WeightedBoundaryGraph]:
    h = g.delete_edges(removed)
    comps = h.components()
    return [(tuple(c), h.induced_subgraph(c)) for c in comps]


def _edge_subsets(g: WeightedBoundaryGraph, max_size: int):
    pairs = [(u, v) for u, v, _ in g.edges]
    for size in range(max_size + 1):
        yield from itertools.combinations(pairs, size)


def find_removal_for_clump(
    g: WeightedBoundaryGraph, r: int, k: int, half: bool = False
) -> RemovalCertificate | None:
    """Smallest edge removal (at most r edges) leaving every component with
    clump number at most k (or k + 1/2 when ``half``).

    When the input satisfies |E| <= (r+2)k + r (respectively + (r+1) for the
    half bound) a certificate is guaranteed to exist; failing to find one in
    that regime raises CertificationError. Outside the guarantee, None means
    the exhaustive search came up empty.
    """
    if not g.is_tree():
        raise NotATreeError("removal search is defined for trees")
    if r < 0 or k < 1:
        raise InvalidParamsError("need r >= 0 and k >= 1")
    bound = Fraction(k) + (Fraction(1, 2) if half else 0)
    for removed in _edge_subsets(g, r):
        reports = []
        good = True
        for verts, comp in _components_after(g, removed):
            cn = clump_number(comp).clump_number
            if cn > bound:
                good = False
                break
            reports.append(ComponentReport(verts, cn, None))
        if good:
            return RemovalCertificate(tuple(removed), tuple(reports), bound)
    edge_budget = (r + 2) * k + r + (1 if half else 0)
    if len(g.edges) <= edge_budget:
        raise CertificationError(
            f"removal guaranteed for |E| <= {edge_budget} but none found"
        )
    return None


def _star_exception(g: WeightedBoundaryGraph, r: int, k: int) -> StarException | None:
    codes = minimal_broom_codes(k)
    for c in range(g.n):
        if g.degree(c) != r + 2:
            continue
        pt = GeometricPoint.at_vertex(c)
        clumps = clump_lengths_at(g, pt)
        def is_broom(cl):
            rooted, root = clump_rooted_tree(g, pt, cl)
            return cl.length == k and tree_code(rooted, root=root) in codes
        if all(is_broom(cl) for cl in clumps):
            return StarException(center=c, k=k, r=r)
    return None


def find_removal_sub_k(
    g: WeightedBoundaryGraph, r: int, k: int
) -> RemovalCertificate | StarException:
    """Remove at most r edges from a tree with exactly (r+2)k edges so every
    component is sub-k, or certify the star exception.

    The underlying proposition guarantees one of the two outcomes, so an
    empty search without the star structure raises CertificationError.
    """
    if not g.is_tree():
        raise NotATreeError("sub-k removal is defined for trees")
    if r < 0 or k < 1:
        raise InvalidParamsError("need r >= 0 and k >= 1")
    if len(g.edges) != (r + 2) * k:
        raise HypothesisViolatedError(
            f"need |E| = (r+2)k = {(r + 2) * k}, got {len(g.edges)}"
        )
    for removed in _edge_subsets(g, r):
        reports = []
        good = True
        for verts, comp in _components_after(g, removed):
            w = is_sub_k(comp, k)
            if not w.value:
                good = False
                break
            reports.append(ComponentReport(verts, w.clump_number, w))
        if good:
            return RemovalCertificate(tuple(removed), tuple(reports), None)
    star = _star_exception(g, r, k)
    if star is not None:
        return star
    raise CertificationError(
        "no sub-k removal found and the input is not the exceptional star"
    )


@dataclass(frozen=True)
class TypeAWitness:
    r: int
    removed: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]  # r trees of k-1 edges each


@dataclass(frozen=True)
class TypeBWitness:
    r: int
    certificate: RemovalCertificate  # r-2 edges removed, clumps <= k-1


@dataclass(frozen=True)
class TypeABClassification:
    k: int
    verdict: str  # "TypeA" | "TypeB" | "Both"
    type_a: TypeAWitness | None
    type_b: TypeBWitness | None


def classify_type_AB(g: WeightedBoundaryGraph, k: int) -> TypeABClassification:
    """Type A: |E| = rk - 1 and removing r-1 edges leaves r trees of k-1
    edges each. Type B: (r-1)k <= |E| <= rk - 1 for some r >= 2 and removing
    r-2 edges bounds every component's clump number by k-1. Every tree with
    at least k-1 edges is one of the two; anything else fails loudly.
    """
    if not g.is_tree():
        raise NotATreeError("type A/B classification is defined for trees")
    if k < 1:
        raise InvalidParamsError("need k >= 1")
    m = len(g.edges)
    if m < k - 1:
        raise HypothesisViolatedError(f"need |E| >= k-1 = {k - 1}, got {m}")

    type_a = None
    if (m + 1) % k == 0:
        r = (m + 1) // k
        for removed in itertools.combinations(
            [(u, v) for u, v, _ in g.edges], r - 1
        ):
            parts = _components_after(g, removed)
            if all(len(verts) == k for verts, _ in parts):
                type_a = TypeAWitness(
                    r, tuple(removed), tuple(verts for verts, _ in parts)
                )
                break

    type_b = None
    r_lo = max(2, -((m + 1) // -k))  # ceil((m+1)/k)
    r_hi = m // k + 1
    for r in range(r_lo, r_hi + 1):
        bound = Fraction(k - 1)
        for removed in _edge_subsets(g, r - 2):
            if len(removed) != r - 2:
                continue
            reports = []
            good = True
            for verts, comp in _components_after(g, removed):
                cn = clump_number(comp).clump_number
                if cn > bound:
                    good = False
                    break
                reports.append(ComponentReport(verts, cn, None))
            if good:
                cert = RemovalCertificate(tuple(removed), tuple(reports), bound)
                type_b = TypeBWitness(r, cert)
                break
        if type_b is not None:
            break

    if type_a and type_b:
        verdict = "Both"
    elif type_a:
        verdict = "TypeA"
    elif type_b:
        verdict = "TypeB"
    else:
        raise CertificationError(
            f"tree with {m} edges is neither type A nor type B for k={k}"
        )
    return TypeABClassification(k, verdict, type_a, type_b)
