from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hecke_forge.coeff import ABPoly, det, is_unit_zeta
from hecke_forge.parahoric import get_ctx, get_geometry, parse_facet
from hecke_forge.rootdata import CATALOG
from hecke_forge.weyl import get_group

a, b = ABPoly.gen("a"), ABPoly.gen("b")


def all_facets(name):
    geom = get_geometry(get_group(name))
    return [F.S for i in range(geom.d + 1) for F in geom.std_facets(i)]


def test_a1_vertex_gram_by_hand():
    """W_F = {e, s}: theta reads the T_s coefficient.

    M = [[theta(T_e T_s), theta(T_e T_e)], [theta(T_s T_s), theta(T_s T_e)]]
      = [[1, 0], [a + b, 1]] since T_s T_s = (a + b) T_s - ab.
    """
    ctx = get_ctx(get_group("A1_sl"), (1,))
    M = ctx.gram_matrix()
    assert M.tolist() == [["1", "0"], ["a + b", "1"]]
    hand = [[1, 0], [a + b, 1]]
    assert all(M[i, j] == hand[i][j] for i in range(2) for j in range(2))
    assert det(M) == 1


@pytest.mark.parametrize("name", CATALOG)
def test_every_gram_determinant_is_a_unit(name):
    W = get_group(name)
    for S in all_facets(name):
        ctx = get_ctx(W, S)
        unit, witness = is_unit_zeta(det(ctx.gram_matrix()))
        assert unit, (S, witness)
        assert ctx.nakayama_check()["ok"]


@pytest.mark.parametrize("name", CATALOG)
def test_coset_factorisations(name):
    W = get_group(name)
    for S in all_facets(name):
        ctx = get_ctx(W, S)
        assert ctx.factorization_check(3)["ok"]
        assert ctx.freeness_check(3)["ok"]


# Omega permutes the affine Dynkin diagram; orbits of proper fixing sets by dimension
ORBITS = {
    "A1_sl": [2, 1],
    "A1_pgl": [1, 1],
    "A1_gl": [1, 1],
    "A2_sl": [3, 3, 1],
    "A2_pgl": [1, 1, 1],
    "A2_gl": [1, 1, 1],
    "C2": [2, 2, 1],
    "G2": [3, 3, 1],
}


@pytest.mark.parametrize("name", CATALOG)
def test_facet_orbit_counts(name):
    geom = get_geometry(get_group(name))
    assert [len(geom.orbit_reps(i)) for i in range(geom.d + 1)] == ORBITS[name]


@pytest.mark.parametrize("name, S, order", [("A2_sl", (1, 2), 6), ("C2", (0, 1), 8), ("G2", (1, 2), 12), ("G2", (0, 1), 4),
                                           ("C2", (0, 2), 4), ("A1_sl", (), 1)])
def test_finite_parahoric_orders(name, S, order):
    ctx = get_ctx(get_group(name), S)
    assert len(ctx.wf0) == order
    assert ctx.W.length(ctx.w0) == len(ctx.phiF_pos)


@pytest.mark.parametrize("name", ["A1_pgl", "A2_pgl", "C2"])
def test_orientation_character(name):
    W = get_group(name)
    for S in all_facets(name):
        ctx = get_ctx(W, S)
        stab = ctx.wf_reps

        @given(st.sampled_from(stab), st.sampled_from(stab))
        def check(x, y):
            assert ctx.epsilon(W.mul(x, y)) == ctx.epsilon(x) * ctx.epsilon(y)

        check()


def test_parse_facet():
    assert parse_facet("s0,s1") == (0, 1)
    assert parse_facet("") == ()


def test_improper_facet_rejected():
    with pytest.raises(ValueError):
        get_ctx(get_group("A1_sl"), (0, 1))
