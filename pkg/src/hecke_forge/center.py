"""Experiments on the centre of ``H_{a,b}`` and its degenerations.

* :func:`orbit_sum` builds ``z = sum T_{t(y)}`` over the ``W_0``-orbit of a
  coweight, and :func:`check_central_H00` verifies that ``z`` commutes with
  the basis in the degenerate algebra ``a = b = 0``.
* :func:`graded_centralizer_dims` solves for the elements of filtration
  degree ``<= n`` commuting with all generators and sets the dimensions
  beside those of ``Z[a, b][X^vee]^{W_0}`` graded by translation length.
  The comparison is exploratory and reported rather than asserted.
* :func:`frobenius_gate` reads off whether ``X / Q`` is free.

Central translations ``Q^perp`` are set to 1 throughout, so all dimensions
are ranks over the Laurent ring ``z``.

    >>> W = get_group("A1_sl")
    >>> print(orbit_sum(get_algebra(W), W.rd.coroots[0]))
    T[s0*s1] + T[s1*s0]
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Sequence, Tuple

from .coeff import kernel_basis
from .hecke import HeckeAlgebra, HeckeElt, get_algebra, h00_product
from .rootdata import free_rank_xmodq, qperp_and_xmodq
from .weyl import WeylElt, WeylGroup, get_group

__all__ = [
    "GradedDimTable",
    "orbit",
    "orbit_sum",
    "check_central_H00",
    "dominant_orbits",
    "predicted_dims",
    "graded_centralizer_dims",
    "frobenius_gate",
]


class GradedDimTable(NamedTuple):
    """``rows[n] = (observed, predicted)`` for filtration degree ``<= n``."""

    datum: str
    spec: str
    rows: Tuple[Tuple[int, int], ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "datum": self.datum,
            "spec": self.spec,
            "table": [{"degree": n, "observed": o, "predicted": p} for n, (o, p) in enumerate(self.rows)],
            "exploratory": True,
        }


def orbit(W: WeylGroup, y: Sequence[int]) -> List[Tuple[int, ...]]:
    """The ``W_0``-orbit of a coweight, sorted."""
    return sorted({W.apply_fin_coweight(u, tuple(y)) for u in range(W.order_W0)})


def orbit_sum(H: HeckeAlgebra, y: Sequence[int]) -> HeckeElt:
    W = H.W
    out = H.zero()
    for v in orbit(W, y):
        out = out + H.T(W.translation(v))
    return out


def _h00_mul(W: WeylGroup, h1: Dict[WeylElt, int], h2: Dict[WeylElt, int]) -> Dict[WeylElt, int]:
    out: Dict[WeylElt, int] = {}
    for x, c1 in h1.items():
        for y, c2 in h2.items():
            w = h00_product(W, x, y)
            if w is not None:
                w = W.canonical(w)
                v = out.get(w, 0) + c1 * c2
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
    return out


def check_central_H00(W_or_name, y: Sequence[int], L: int) -> Dict[str, Any]:
    """``z T_w = T_w z`` in ``H_{0,0}`` for every ``w`` with ``l(w) <= L`` and for all generators."""
    W = get_group(W_or_name)
    z = {W.canonical(W.translation(v)): 1 for v in orbit(W, y)}
    tests = [W.s[j] for j in range(W.nsimple)] + list(W.omega_reps()) + W.window(L)
    failures = []
    for w in tests:
        Tw = {w: 1}
        if _h00_mul(W, z, Tw) != _h00_mul(W, Tw, z):
            failures.append(W.name_word(w))
    return {
        "coweight": list(y),
        "orbit_size": len(z),
        "length": W.length(W.translation(tuple(y))),
        "tested": len(tests),
        "failures": failures,
        "ok": not failures,
    }


def dominant_orbits(W: WeylGroup, n: int) -> List[Tuple[Tuple[int, ...], int]]:
    """Dominant coweights modulo ``Q^perp`` with ``l(t(y)) <= n``, with those lengths.

    Every translation of length ``<= n`` appears in the window of that
    radius, so scanning it and keeping the dominant ones lists each
    ``W_0``-orbit exactly once.
    """
    rd = W.rd
    out = {}
    for w in W.window(n):
        if w.fin != 0:
            continue
        y = w.cow
        if all(rd.pair_root(i, y) >= 0 for i in rd.simple):
            out[y] = W.length(w)
    return sorted(out.items(), key=lambda kv: (kv[1], kv[0]))


def predicted_dims(W: WeylGroup, spec: str, maxdeg: int) -> List[int]:
    """Dimension of the degree ``<= n`` part of the invariant ring, ``n = 0..maxdeg``.

    An orbit generator has degree ``l(t(y))``; for ``H_ab`` the scalars
    ``a^i b^j`` add degree ``i + j``.
    """
    orbits = dominant_orbits(W, maxdeg)
    out = []
    for n in range(maxdeg + 1):
        if spec == "H_ab":
            total = 0
            for _y, l in orbits:
                if l <= n:
                    k = n - l
                    total += (k + 1) * (k + 2) // 2
            out.append(total)
        else:
            out.append(sum(1 for _y, l in orbits if l <= n))
    return out


def _commutator_columns(H: HeckeAlgebra, basis, a0, b0) -> List[Dict[Any, Fraction]]:
    """Columns ``[g, T_w]`` for all generators ``g``, numerically at ``(a0, b0)``."""
    W = H.W
    num = H.numeric(a0, b0)
    gens = [W.s[j] for j in range(W.nsimple)] + [om for om in W.omega_reps() if om != W.e]
    cols = []
    for w in basis:
        col: Dict[Any, Fraction] = {}
        for gi, g in enumerate(gens):
            for v, c in num.basis_product(w, g).items():
                key = (gi, W.canonical(v))
                col[key] = col.get(key, 0) + c
            for v, c in num.basis_product(g, w).items():
                key = (gi, W.canonical(v))
                col[key] = col.get(key, 0) - c
        cols.append({k: v for k, v in col.items() if v})
    return cols


def _symbolic_columns(H: HeckeAlgebra, basis) -> List[Dict[Any, int]]:
    """Columns ``[g, a^i b^j T_w]`` keyed by ``(g, v, i', j')`` (coefficients in ``Z``)."""
    W = H.W
    gens = [W.s[j] for j in range(W.nsimple)] + [om for om in W.omega_reps() if om != W.e]
    cols = []
    for w, i, j in basis:
        col: Dict[Any, int] = {}
        for gi, g in enumerate(gens):
            for (v, a, b), c in H.basis_product(w, g).items():
                key = (gi, W.canonical(v), a + i, b + j)
                col[key] = col.get(key, 0) + c
            for (v, a, b), c in H.basis_product(g, w).items():
                key = (gi, W.canonical(v), a + i, b + j)
                col[key] = col.get(key, 0) - c
        cols.append({k: v for k, v in col.items() if v})
    return cols


def graded_centralizer_dims(W_or_name, spec: str = "H0", maxdeg: int = 4) -> GradedDimTable:
    """Observed centraliser dimensions in filtration degree ``<= n`` against the invariant-ring count.

    ``spec`` is ``H0`` (``a = 0, b = 1``), ``H00`` (``a = b = 0``) or
    ``H_ab``. For ``H_ab`` the defining relations are homogeneous, so the
    centraliser is solved degree by degree with unknowns ``a^i b^j T_w``
    (``l(w) + i + j`` fixed) and rational coefficients. Commutators are
    computed exactly, so no element is wrongly counted as central; the
    specialisation of ``Q^perp`` to 1 can only enlarge the count.
    """
    W = get_group(W_or_name)
    H = get_algebra(W)
    predicted = predicted_dims(W, spec, maxdeg)
    observed: List[int] = []
    if spec in ("H0", "H00"):
        a0, b0 = (0, 1) if spec == "H0" else (0, 0)
        for n in range(maxdeg + 1):
            basis = W.window(n)
            kernel, _ = kernel_basis(_commutator_columns(H, basis, a0, b0))
            observed.append(len(kernel))
    elif spec == "H_ab":
        per_degree = []
        for k in range(maxdeg + 1):
            basis = [(w, i, k - W.length(w) - i) for w in W.window(k) for i in range(k - W.length(w) + 1)]
            kernel, _ = kernel_basis(_symbolic_columns(H, basis))
            per_degree.append(len(kernel))
        total = 0
        for k in range(maxdeg + 1):
            total += per_degree[k]
            observed.append(total)
    else:
        raise ValueError(f"unknown specialisation {spec!r} (use H0, H00 or H_ab)")
    return GradedDimTable(W.rd.name, spec, tuple(zip(observed, predicted)))


def frobenius_gate(W_or_name) -> Dict[str, Any]:
    """Freeness of ``X / Q``, which the Frobenius-over-the-centre statement needs.

    The rank-one simply connected case ``X / Q = Z/2`` is flagged separately:
    there the invariant ring ``R[x]^{Z/2} = R[x^2]`` is still polynomial.
    """
    W = get_group(W_or_name)
    rd = W.rd
    _qperp, invariants, free = qperp_and_xmodq(rd)
    sl2 = (not free) and rd.rank_X == 1 and rd.d == 1 and tuple(invariants) == (2,)
    if free:
        verdict = "open"
    elif sl2:
        verdict = "closed; rank-one polynomial invariants apply"
    else:
        verdict = "closed"
    return {
        "datum": rd.name,
        "xmodq_torsion": list(invariants),
        "xmodq_free_rank": free_rank_xmodq(rd),
        "free": free,
        "sl2_exception": sl2,
        "gate": verdict,
    }
