from __future__ import annotations

import pytest

from hecke_forge.center import (
    _h00_mul,
    check_central_H00,
    dominant_orbits,
    frobenius_gate,
    graded_centralizer_dims,
    orbit,
    predicted_dims,
)
from hecke_forge.rootdata import CATALOG
from hecke_forge.weyl import get_group


@pytest.mark.parametrize("name", CATALOG)
def test_orbit_sums_are_central_at_zero(name):
    W = get_group(name)
    for y, _l in dominant_orbits(W, 4):
        rep = check_central_H00(W, y, 3)
        assert rep["ok"], rep


def test_a_single_translation_is_not_central():
    W = get_group("A1_pgl")
    t = W.canonical(W.translation((1,)))
    z = {t: 1}
    s = {W.s[1]: 1}
    assert _h00_mul(W, z, s) != _h00_mul(W, s, z)


def test_orbits():
    W = get_group("A2_sl")
    assert len(orbit(W, (1, 1))) == 6
    assert orbit(W, (0, 0)) == [(0, 0)]


# A1_pgl: the dominant coweight n has translation length n.
# A1_sl: dominant coweights are even multiples of the fundamental one, length 2n.
@pytest.mark.parametrize(
    "name, spec, expected",
    [
        ("A1_pgl", "H0", [1, 2, 3, 4, 5, 6]),
        ("A1_sl", "H0", [1, 1, 2, 2, 3, 3]),
        ("A1_pgl", "H_ab", [1, 4, 10, 20]),
        ("A1_sl", "H_ab", [1, 3, 7, 13]),
    ],
)
def test_predicted_dimensions(name, spec, expected):
    assert predicted_dims(get_group(name), spec, len(expected) - 1) == expected


@pytest.mark.parametrize("name", ["A1_sl", "A1_pgl", "A1_gl"])
@pytest.mark.parametrize("spec", ["H0", "H00", "H_ab"])
def test_centralizer_table_shape(name, spec):
    table = graded_centralizer_dims(name, spec, 3)
    observed = [o for o, _p in table.rows]
    assert observed == sorted(observed) and observed[0] == 1
    assert table.to_json()["exploratory"] is True


def test_unknown_specialisation():
    with pytest.raises(ValueError):
        graded_centralizer_dims("A1_sl", "Hq", 2)


@pytest.mark.parametrize(
    "name, free, sl2, gate",
    [
        ("A1_gl", True, False, "open"),
        ("A1_pgl", True, False, "open"),
        ("A2_pgl", True, False, "open"),
        ("A1_sl", False, True, "closed; rank-one polynomial invariants apply"),
        ("A2_sl", False, False, "closed"),
    ],
)
def test_frobenius_gate(name, free, sl2, gate):
    rep = frobenius_gate(name)
    assert (rep["free"], rep["sl2_exception"], rep["gate"]) == (free, sl2, gate)
