from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hecke_forge.dualres import (
    CertTerm,
    cokernel_check,
    fact1_window,
    fact2_window,
    fact3_check,
    get_dualres,
)
from hecke_forge.rootdata import CATALOG


@pytest.mark.parametrize("name", CATALOG)
def test_fact1(name):
    L = 3 if name.startswith("A1") else 2
    rep = fact1_window(name, L)
    assert rep["ok"], rep


@pytest.mark.parametrize("name", ["A1_sl", "A1_pgl", "A2_sl", "C2"])
def test_fact2(name):
    D = get_dualres(name)
    L = 3 if name.startswith("A1") else 2
    for S in D.codim1:
        rep = fact2_window(name, S, L)
        assert rep["ok"], rep


@pytest.mark.parametrize("name", CATALOG)
def test_fact3_certificates(name):
    rep = fact3_check(name, 3)
    assert rep["ok"], rep["failures"][:5]


def test_fact3_certificate_with_a_flipped_sign_fails():
    D = get_dualres("A2_sl")
    W = D.W
    w = W.from_word(W.e, (1, 2, 0))
    cert = D.fact3_certificate(w)
    assert D.expand_certificate(cert) == D.E(w)
    broken = [CertTerm(t.facet, -t.sign if k == 1 else t.sign, t.left, t.right) for k, t in enumerate(cert)]
    assert D.expand_certificate(broken) != D.E(w)


@pytest.mark.parametrize("name", ["A1_sl", "A1_gl", "A2_sl", "G2"])
def test_cokernel(name):
    rep = cokernel_check(name, 2, seed=1, samples=10)
    assert rep["ok"], rep


def test_theta_of_the_chamber_is_trivial_for_simply_connected_rank_one():
    D = get_dualres("A1_sl")
    assert str(D.theta_C()) == "T[e] # T[e]"


@pytest.mark.parametrize("name", ["A1_pgl", "A2_sl"])
def test_actions_compose(name):
    D = get_dualres(name)
    H, W = D.H, D.W
    basis = W.window(1)
    pairs = st.tuples(st.sampled_from(basis), st.sampled_from(basis))

    @given(pairs, pairs, pairs)
    def check(p, q, r):
        A, B, X = D.basis(*p), D.basis(*q), D.basis(*r)
        assert D.outer(D.compose_outer(A, B), X) == D.outer(A, D.outer(B, X))
        assert D.inner(X, D.compose_inner(A, B)) == D.inner(D.inner(X, A), B)
        # the two actions commute
        assert D.inner(D.outer(A, X), B) == D.outer(A, D.inner(X, B))

    check()


@pytest.mark.parametrize("name", ["A1_pgl", "A2_sl"])
def test_mu_is_a_left_inverse_of_the_section_on_left_tensors(name):
    D = get_dualres(name)
    H, W = D.H, D.W
    for w in W.window(2):
        assert D.mu(D.basis(w, W.e)) == H.T(w)
