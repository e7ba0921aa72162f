import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from steklov.errors import InvalidParamsError
from steklov.families import (
    BroomParams,
    broom_eigenfunction,
    broom_lambda1,
    build_broom,
    build_comb,
    build_cycle,
    build_dumbbell,
    build_path,
    build_star,
    build_star_paths,
    comb_spectrum,
    comb_tooth_with_dirichlet_edge,
    lambda_value,
    lambda_value_ln,
    minimal_broom,
    minimal_broom_total,
    mu_max_path,
    rooted_path,
)
from steklov.spectral import (
    dirichlet_steklov_spectrum,
    laplacian_spectrum,
    steklov_spectrum,
)

GRID_L = [Fraction(1, 3), Fraction(1, 2), 1, Fraction(3, 2), 2, 3, Fraction(10, 3)]


def test_broom_lambda1_matches_numeric_grid():
    for l, i, d in itertools.product(GRID_L, range(5), range(5)):
        closed = float(broom_lambda1(l, i, d))
        g = build_broom(l, i, d).graph
        numeric = dirichlet_steklov_spectrum(g).eigenvalue(1)
        assert abs(closed - numeric) <= 1e-10, (l, i, d)


def test_broom_eigenfunction_is_exact():
    for l, i, d in itertools.product(GRID_L, range(4), range(4)):
        fam = build_broom(l, i, d)
        g = fam.graph
        f = broom_eigenfunction(l, i, d)
        lam = broom_lambda1(l, i, d)
        # check the eigenvalue equation at every non-Dirichlet vertex
        from steklov.spectral import laplacian_matrix

        form = laplacian_matrix(g)
        vec = np.array([float(f[v]) for v in range(g.n)])
        lap = (form.matrix @ vec) / form.measures
        for x in range(g.n):
            if x in set(g.dirichlet):
                continue
            if x in set(g.boundary):
                assert abs(lap[x] - float(lam) * vec[x]) < 1e-12
            else:
                assert abs(lap[x]) < 1e-12


def test_broom_normalization():
    a = build_broom(1, 1, 1).graph
    b = build_broom(1, 2, 0).graph
    from steklov.graph import structurally_equal

    assert structurally_equal(a, b)


def test_lambda_spot_values_exact():
    assert lambda_value(2) == Fraction(1, 2)
    assert lambda_value(3) == Fraction(1, 3)
    assert lambda_value(4) == Fraction(1, 5)
    assert lambda_value(Fraction(10, 3)) == Fraction(3, 11)
    assert lambda_value(1) == 1
    assert lambda_value(5) == Fraction(1, 7)
    assert lambda_value(6) == Fraction(1, 10)


def test_minimal_broom_brute_force_oracle():
    # compare the reported minimizers with a scan over all splits; splits are
    # compared after normalization since (i, d=1) and (i+1, d=0) describe the
    # same underlying graph
    for l in GRID_L:
        for n in range(0, 8):
            sol = minimal_broom(l, n)
            values = {i: broom_lambda1(l, i, n - i) for i in range(n + 1)}
            best = min(values.values())
            oracle = {
                BroomParams(l, i, n - i).normalized()
                for i, v in values.items()
                if v == best
            }
            assert sol.value == best
            assert {p.normalized() for p in sol.brooms} == oracle, (l, n)


def test_minimal_broom_total_oracle():
    # Lambda(l) = min over i+d <= budget of lambda_1(Br(l0, i, d)) with
    # total length l; scan all decompositions with the same total length
    for l in [1, 2, 3, 4, 5, Fraction(3, 2), Fraction(10, 3), Fraction(7, 2)]:
        sol = minimal_broom_total(l)
        best = None
        for i in range(0, math.floor(l) + 1):
            for d in range(0, math.floor(l) + 1):
                l0 = l - i - d
                if l0 <= 0:
                    continue
                v = broom_lambda1(l0, i, d)
                best = v if best is None else min(best, v)
        assert sol.value == best, l
        for p in sol.brooms:
            assert p.l + p.i + p.d == l
            assert broom_lambda1(p.l, p.i, p.d) == best


def test_lambda_integer_closed_form():
    for l in range(1, 12):
        assert lambda_value(l) == Fraction(1, 1 + l * l // 4)


def test_lambda_ln_monotone_in_n():
    for l in GRID_L:
        vals = [lambda_value_ln(l, n) for n in range(8)]
        assert all(vals[k + 1] <= vals[k] for k in range(len(vals) - 1))


def test_broom_params_validation():
    with pytest.raises(InvalidParamsError):
        BroomParams(0, 1, 1)
    with pytest.raises(InvalidParamsError):
        BroomParams(1, -1, 0)
    with pytest.raises(InvalidParamsError):
        broom_lambda1("nonsense", 0, 0)


def test_dumbbell_and_star_shapes():
    db = build_dumbbell(2, 2, 2).graph
    assert db.n == 7 and db.is_tree()
    assert sorted(db.degree(v) for v in range(db.n)) == [1, 1, 1, 1, 2, 3, 3]
    st = build_star_paths(3, 2).graph
    assert st.n == 7 and st.degree(0) == 3
    with pytest.raises(InvalidParamsError):
        build_star([rooted_path(1)])


def test_comb_structure():
    fam = build_comb(build_path(3).graph, rooted_path(1))
    g = fam.graph
    assert g.n == 6
    assert len(g.edges) == 5
    vm = fam.params["vertex_map"]
    assert all(vm[(x, 0)] == x for x in range(3))


def test_comb_spectrum_closed_form_small():
    base = build_path(3).graph
    tooth = rooted_path(1)
    vals, funcs = comb_spectrum(base, tooth)
    assert abs(vals[0]) < 1e-12
    assert abs(vals[2] - 0.75) <= 1e-12
    comb = build_comb(base, tooth).graph
    numeric = steklov_spectrum(comb).eigenvalues[: len(vals)]
    assert np.max(np.abs(np.sort(vals) - numeric)) <= 1e-9


def test_comb_tooth_dirichlet_edge():
    t = comb_tooth_with_dirichlet_edge(rooted_path(1), 2.0)
    assert t.n == 3
    assert len(t.dirichlet) == 1
    lam = dirichlet_steklov_spectrum(t).eigenvalue(1)
    # single edge tooth with mu = 2: T_i = path o'-o-leaf, weights (2, 1)
    assert lam > 0


def test_mu_max_path_matches_laplacian():
    for n in range(2, 8):
        g = build_path(n).graph
        mu = laplacian_spectrum(g).eigenvalue(n)
        assert abs(mu - mu_max_path(n)) <= 1e-10


def test_cycle_top_multiplicity_even_is_four():
    g = build_cycle(4).graph
    mu = laplacian_spectrum(g).eigenvalue(4)
    assert abs(mu - 4.0) <= 1e-10
