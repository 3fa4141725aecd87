from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hecke_forge.coxeter_complex import (
    Chain,
    boundary_matrices,
    chain_complex_report,
    exactness_window,
    get_complex,
    facet_type_report,
)
from hecke_forge.hecke import get_algebra


@pytest.mark.parametrize("name", ["A1_sl", "A1_pgl", "A2_sl", "A2_pgl", "C2", "G2"])
def test_canonical_form_matches_breadth_first_search(name):
    K = get_complex(name)
    W = K.W
    for i in range(K.d + 1):
        for F0 in K.geom.std_facets(i):
            for w in W.window(2):
                assert K.canonicalize(w, F0.S) == K.canonicalize_bfs(w, F0.S)


def test_edge_boundary_by_hand():
    K = get_complex("A1_sl")
    out = boundary_matrices(K, 0)
    # the chamber has the two vertices as faces, with opposite signs
    assert out["d1"] == [["e.[s0]", "e.[C]", "T[e]"], ["e.[s1]", "e.[C]", "-T[e]"]]
    assert out["augmentation"] == [["e.[s0]", "T[e]"], ["e.[s1]", "T[e]"]]


@pytest.mark.parametrize("name, radius", [("A1_sl", 4), ("A1_gl", 4), ("A2_sl", 2), ("C2", 2), ("G2", 2)])
def test_facet_type_identities(name, radius):
    rep = facet_type_report(get_complex(name), radius)
    assert rep["ok"], rep["failures"][:5]
    assert sum(rep["counts"].values()) > 0


@pytest.mark.parametrize("name, radius", [("A1_pgl", 4), ("A2_sl", 2), ("A2_gl", 2), ("C2", 2)])
def test_chain_identities(name, radius):
    rep = chain_complex_report(get_complex(name), radius)
    assert rep["ok"], rep["failures"][:5]


@pytest.mark.parametrize("name", ["A2_sl", "C2"])
def test_random_chains(name):
    K = get_complex(name)
    H, W = K.alg, K.W
    facets = [F for i in range(K.d + 1) for F in K.facets(i, 2)]
    values = [H.T(w) for w in W.window(1)]
    chains = st.lists(st.tuples(st.sampled_from(facets), st.sampled_from(values), st.integers(-2, 2)), max_size=4)

    def build(items):
        c = Chain(H)
        for F, h, k in items:
            c.add_at(F, h.scale(k))
        return c

    @given(chains, st.integers(0, 2))
    def check(items, j):
        c = build(items)
        top = Chain(H, {F: h for F, h in c.values.items() if K.dim(F) == 2})
        mid = Chain(H, {F: h for F, h in c.values.items() if K.dim(F) == 1})
        assert not K.boundary(K.boundary(top))
        assert not K.augment(K.boundary(mid))
        assert K.act_s(j, K.boundary(top)) == K.boundary(K.act_s(j, top))
        assert K.iso_inverse(K.iso_induced(c)) == c

    check()


@pytest.mark.parametrize("name, radius", [("A1_pgl", 6), ("A1_sl", 6), ("A1_gl", 6), ("A2_sl", 3)])
@pytest.mark.parametrize("ab", [(2, 3), (0, 1), (0, 0)])
def test_exactness_windows(name, radius, ab):
    rep = exactness_window(name, radius, *ab)
    assert rep["ok"], rep


def test_exactness_window_total_metric():
    assert exactness_window("A2_sl", 4, 2, 3, metric="total")["ok"]


def test_exactness_detects_a_broken_differential(monkeypatch):
    """Dropping the incidence signs must leave surviving homology."""
    K = get_complex("A2_sl")
    monkeypatch.setattr(K.geom, "face_sign", lambda S, k: 1)
    K._faces.clear()
    try:
        rep = exactness_window("A2_sl", 3, 2, 3)
        assert not rep["ok"]
        assert rep["surviving"]
    finally:
        monkeypatch.undo()
        K._faces.clear()
    assert exactness_window("A2_sl", 3, 2, 3)["ok"]


def test_window_radius_must_exceed_buffer():
    with pytest.raises(ValueError):
        exactness_window("A1_sl", 3, buffer=4)


def test_small_radii_are_rejected():
    with pytest.raises(ValueError):
        exactness_window("A1_sl", 2)
    with pytest.raises(ValueError):
        facet_type_report(get_complex("A1_sl"), 1)
