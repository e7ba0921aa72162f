import pytest

from steklov.clumps import (
    RemovalCertificate,
    StarException,
    classify_type_AB,
    find_removal_for_clump,
    find_removal_sub_k,
    is_sub_k,
    minimal_broom_codes,
)
from steklov.enumeration import enumerate_trees
from steklov.errors import HypothesisViolatedError, NotATreeError
from steklov.extremal import sigma_value
from steklov.families import (
    build_comb,
    build_path,
    build_star_paths,
    lambda_value,
    rooted_path,
)

from conftest import path_graph


def test_minimal_broom_codes_small():
    # total length 1 and 2: the path itself is the unique minimal broom
    assert len(minimal_broom_codes(1)) == 1
    assert len(minimal_broom_codes(2)) == 1
    # odd length >= 3 has two minimal brooms
    assert len(minimal_broom_codes(3)) == 2
    assert len(minimal_broom_codes(4)) == 1


def test_sub_k_examples():
    # single edge: clump number 1/2 < 1, sub-1
    assert is_sub_k(path_graph(2), 1).value
    # P5 = Br(2): clump number 2 and the lone clump at the argmin vertex is
    # the minimal broom of length 2, but both sides match... check: at the
    # center vertex there are two clumps of length 2, each a path = Br(2)
    w = is_sub_k(path_graph(5), 2)
    assert not w.value
    assert w.clump_number == 2
    # P3 has clump number 1 < 2
    assert is_sub_k(path_graph(3), 2).value


def test_sub_k_star_of_paths():
    # St(3;2): three arms of length 2; clump number 2 at the center, three
    # clumps all equal to the minimal broom Br(2) -> not sub-2
    st = build_star_paths(3, 2).graph
    w = is_sub_k(st, 2)
    assert not w.value and w.clump_number == 2
    # spider with two leaves and one length-2 arm at the center: clump number
    # is exactly 2, and only one clump at the center is a minimal broom Br(2)
    from steklov.graph import combinatorial_graph

    sp = combinatorial_graph(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
    w2 = is_sub_k(sp, 2)
    assert w2.clump_number == 2 and w2.value
    assert any(c.ok for c in w2.candidates)


def test_sub_k_requires_tree():
    from steklov.graph import combinatorial_graph

    with pytest.raises(NotATreeError):
        is_sub_k(combinatorial_graph(3, [(0, 1), (1, 2), (0, 2)]), 1)


def test_removal_for_clump_examples():
    # P7 (6 edges), r=1, k=2: remove one edge to split into halves of clump <= 2
    cert = find_removal_for_clump(path_graph(7), 1, 2)
    assert isinstance(cert, RemovalCertificate)
    assert len(cert.removed) <= 1
    assert all(c.clump_number <= 2 for c in cert.components)
    # P4, r=0, half bound: clump(P4) = 3/2 <= 1 + 1/2
    cert2 = find_removal_for_clump(path_graph(4), 0, 1, half=True)
    assert cert2.removed == ()
    # P8 with r=0, k=1: clump 7/2 > 1 and no edges may be removed; |E| = 7 is
    # above the guarantee budget (r+2)k + r = 2, so the search returns None
    assert find_removal_for_clump(path_graph(8), 0, 1) is None


def test_removal_for_clump_guarantee_sweep():
    # within the guaranteed regime a certificate always exists
    count = 0
    for n in range(2, 11):
        for g in enumerate_trees(n):
            m = len(g.edges)
            for r in range(0, 3):
                for k in range(1, 4):
                    if m <= (r + 2) * k + r:
                        cert = find_removal_for_clump(g, r, k)
                        assert cert is not None
                        count += 1
    assert count > 500


def test_removal_sub_k_gate_and_star():
    # Comb(P3; edge) has 5 edges, (r+2)k = 6 for (r,k) = (1,2)
    comb = build_comb(build_path(3).graph, rooted_path(1)).graph
    with pytest.raises(HypothesisViolatedError):
        find_removal_sub_k(comb, 1, 2)
    # P5 = Br(2) with 4 = (0+2)*2 edges: two minimal-broom clumps at the
    # center and no removable edges -> the exceptional star with r=0
    out = find_removal_sub_k(path_graph(5), 0, 2)
    assert isinstance(out, StarException)
    assert out.r == 0 and out.k == 2 and out.center == 2
    # St(3;2) with 6 = (1+2)*2 edges: the r=1 exceptional star
    st = build_star_paths(3, 2).graph
    out2 = find_removal_sub_k(st, 1, 2)
    assert isinstance(out2, StarException)
    assert out2.r == 1 and out2.center == 0


def test_removal_sub_k_sweep():
    # every tree with exactly (r+2)k edges yields a certificate or the star
    stars = 0
    certs = 0
    for n in range(2, 10):
        for g in enumerate_trees(n):
            m = len(g.edges)
            for r in range(0, 3):
                for k in range(1, 4):
                    if m != (r + 2) * k:
                        continue
                    out = find_removal_sub_k(g, r, k)
                    if isinstance(out, StarException):
                        stars += 1
                    else:
                        certs += 1
                        for comp in out.components:
                            assert comp.sub_k.value
    assert certs > 50 and stars >= 5


def test_sub_k_implies_spectral_gap():
    # sub-k trees (with leaf boundary) have sigma_2 strictly above Lambda(k)
    for n in range(2, 10):
        for g in enumerate_trees(n):
            for k in range(1, 4):
                if is_sub_k(g, k).value:
                    s2 = sigma_value(g, 2)
                    assert s2 > float(lambda_value(k)) + 1e-12, (n, k)


def test_type_ab_examples():
    # P4: 3 edges, k=2 -> (m+1) % k == 0 with r=2, split into two single edges
    out = classify_type_AB(path_graph(4), 2)
    assert out.verdict in ("TypeA", "Both")
    assert out.type_a.r == 2
    assert all(len(c) == 2 for c in out.type_a.components)
    # K_{1,3}: 3 edges, k=2, no edge removal splits it into two P2s -> Type B
    from steklov.graph import combinatorial_graph

    k13 = combinatorial_graph(4, [(0, 1), (0, 2), (0, 3)])
    out2 = classify_type_AB(k13, 2)
    assert out2.verdict == "TypeB"
    assert out2.type_b.certificate.bound == 1


def test_type_ab_gate():
    with pytest.raises(HypothesisViolatedError):
        classify_type_AB(path_graph(2), 3)


def test_type_ab_total_sweep():
    # every tree with at least k-1 edges classifies without error
    for n in range(2, 10):
        for g in enumerate_trees(n):
            for k in range(1, 5):
                if len(g.edges) < k - 1:
                    continue
                out = classify_type_AB(g, k)
                assert out.verdict in ("TypeA", "TypeB", "Both")
                if out.type_a is not None:
                    assert len(out.type_a.removed) == out.type_a.r - 1
                if out.type_b is not None:
                    cert = out.type_b.certificate
                    assert all(
                        c.clump_number <= k - 1 for c in cert.components
                    )


def test_type_a_edge_count_consistency():
    # a Type A witness partitions the tree into r components of k vertices,
    # i.e. k-1 edges each
    g = path_graph(6)
    out = classify_type_AB(g, 3)
    assert out.type_a is not None
    assert sorted(len(c) for c in out.type_a.components) == [3, 3]
