from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hecke_forge.rootdata import CATALOG
from hecke_forge.weyl import coxeter_report, get_group, permutation_sign

# Exponents of the finite root system; the affine Weyl group has Poincare series
# prod_i (1 + t + ... + t^{m_i}) / (1 - t^{m_i}).
EXPONENTS = {"A1": (1,), "A2": (1, 2), "C2": (1, 3), "G2": (1, 5)}


def poincare_coefficients(exponents, n):
    series = [1] + [0] * n
    for m in exponents:
        num = [1] * (m + 1)
        out = [0] * (n + 1)
        for i, c in enumerate(series):
            for j, d in enumerate(num):
                if i + j <= n:
                    out[i + j] += c * d
        series = out
        # divide by 1 - t^m
        for k in range(m, n + 1):
            series[k] += series[k - m]
    return series


@pytest.mark.parametrize("name", CATALOG)
def test_sphere_sizes_match_the_poincare_series(name):
    W = get_group(name)
    expected = poincare_coefficients(EXPONENTS[name.split("_")[0]], 6)
    assert [len(W.sphere(k)) for k in range(7)] == expected


@pytest.mark.parametrize("name, order", [("A1_sl", 2), ("A2_pgl", 6), ("C2", 8), ("G2", 12)])
def test_finite_weyl_group_order(name, order):
    assert get_group(name).order_W0 == order


@pytest.mark.parametrize(
    "name, count",
    [("A1_sl", 1), ("A1_pgl", 2), ("A1_gl", 2), ("A2_sl", 1), ("A2_pgl", 3), ("A2_gl", 3), ("C2", 2), ("G2", 1)],
)
def test_omega_modulo_central_translations(name, count):
    reps = get_group(name).omega_reps()
    assert len(reps) == count
    assert all(get_group(name).length(om) == 0 for om in reps)


def test_braid_orders():
    W = get_group("A1_sl")
    assert W.braid_order(0, 1) is None
    W = get_group("A2_sl")
    assert {W.braid_order(i, j) for i in range(3) for j in range(3) if i != j} == {3}
    W = get_group("G2")
    assert sorted(W.braid_order(i, j) for i in range(3) for j in range(i + 1, 3)) == [2, 3, 6]
    W = get_group("C2")
    assert sorted(W.braid_order(i, j) for i in range(3) for j in range(i + 1, 3)) == [2, 4, 4]


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


@pytest.mark.parametrize("name", CATALOG)
def test_coxeter_report(name):
    rep = coxeter_report(get_group(name), 3)
    assert rep["ok"], rep["failures"][:5]


def elements(name, L=4):
    W = get_group(name)
    return st.sampled_from(W.window(L))


@pytest.mark.parametrize("name", ["A1_pgl", "A2_sl", "A2_gl", "C2", "G2"])
def test_group_law(name):
    W = get_group(name)

    @given(elements(name), elements(name), elements(name))
    def check(x, y, z):
        assert W.mul(W.mul(x, y), z) == W.mul(x, W.mul(y, z))
        assert W.mul(x, W.inv(x)) == W.e
        assert W.length(W.inv(x)) == W.length(x)
        assert W.length(W.mul(x, y)) <= W.length(x) + W.length(y)
        assert W.epsilon_C(W.mul(x, y)) == W.epsilon_C(x) * W.epsilon_C(y)

    check()


@pytest.mark.parametrize("name", ["A1_gl", "A2_pgl", "C2", "G2"])
def test_reduced_words(name):
    W = get_group(name)

    @given(elements(name))
    def check(w):
        rw = W.reduced_word(w)
        assert W.from_word(rw.omega, rw.letters) == w
        assert len(rw.letters) == W.length(w) == W.length_enumerated(w)
        assert W.length(rw.omega) == 0
        for word in W.all_reduced_words(w):
            assert W.from_word(rw.omega, word) == w

    check()


@pytest.mark.parametrize("name", ["A1_pgl", "A2_pgl", "C2"])
def test_length_additivity(name):
    W = get_group(name)

    @given(elements(name), st.integers(0, 2))
    def check(w, j):
        j = j % W.nsimple
        up = W.length(W.mul(w, W.s[j])) == W.length(w) + 1
        assert up == W.is_positive(W.act(w, W.simple_roots[j]))

    check()


def test_translations_are_canonical_modulo_central_part():
    W = get_group("A1_gl")
    t = W.translation((1, 1))
    assert W.length(t) == 0
    assert W.canonical(t) == W.e
