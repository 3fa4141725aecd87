"""Tensor-square computations behind the dual of the Coxeter-complex resolution.

Elements of ``H (x)_z H`` are :class:`BiTensor` objects. Central
translations are normalised onto the left leg: every stored key ``(x, y)``
has ``y`` the canonical representative of its ``Q^perp`` coset. The same
objects serve as operators, in two ways:

* outer action ``(T (x) S) * (x (x) y) = T x (x) y S``;
* inner action ``(x (x) y) . (T (x) S) = x S (x) T y``.

With ``E(h) = theta_C * (1 (x) h - upiota(h) (x) 1)`` the module checks are:

* :func:`fact1_window` and :func:`fact2_window`, which compute the
  annihilator submodules ``M_C`` and ``M_F`` in finite windows and compare
  them with the spans of their expected generators.
* :func:`fact3_certificate`, which writes ``E(T_w)`` as an explicit sum of
  images of the dual differential.
* :func:`cokernel_check`, which compares ``mu(x (x) y) = upiota(y) x`` with
  the section ``h -> theta_C * (h (x) 1)``.

    >>> D = DualRes(get_group("A1_sl"))
    >>> print(D.theta(()))
    T[e] # T[e]
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .coeff import ABPoly, SparseEchelon, kernel_basis
from .hecke import HeckeAlgebra, HeckeElt, NumericHecke, get_algebra
from .parahoric import get_ctx, get_geometry
from .weyl import WeylElt, WeylGroup, get_group

__all__ = [
    "BiTensor",
    "DualRes",
    "CertTerm",
    "fact1_window",
    "fact2_window",
    "fact3_check",
    "cokernel_check",
    "get_dualres",
]

BKey = Tuple[WeylElt, WeylElt, int, int]


class BiTensor:
    """A finite sum ``sum c (T_x (x) T_y)`` with ``c`` in ``Z[a, b]``."""

    __slots__ = ("D", "_t")

    def __init__(self, D: "DualRes", terms: Optional[Dict[BKey, int]] = None):
        self.D = D
        self._t: Dict[BKey, int] = {}
        for k, c in (terms or {}).items():
            D._acc_norm(self._t, k, c)

    @classmethod
    def _raw(cls, D: "DualRes", terms: Dict[BKey, int]) -> "BiTensor":
        obj = object.__new__(cls)
        obj.D = D
        obj._t = terms
        return obj

    def raw_terms(self) -> Dict[BKey, int]:
        return self._t

    def __add__(self, other: "BiTensor") -> "BiTensor":
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BiTensor._raw(self.D, out)

    def __neg__(self) -> "BiTensor":
        return BiTensor._raw(self.D, {k: -c for k, c in self._t.items()})

    def __sub__(self, other: "BiTensor") -> "BiTensor":
        return self + (-other)

    def scale(self, p) -> "BiTensor":
        if isinstance(p, int):
            return BiTensor._raw(self.D, {k: c * p for k, c in self._t.items() if c * p})
        out: Dict[BKey, int] = {}
        for (x, y, i, j), c in self._t.items():
            for (pi, pj), pc in p.terms.items():
                key = (x, y, i + pi, j + pj)
                v = out.get(key, 0) + c * pc
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return BiTensor._raw(self.D, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiTensor):
            return NotImplemented
        return self._t == other._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def terms(self) -> Dict[Tuple[WeylElt, WeylElt], ABPoly]:
        grouped: Dict[Tuple[WeylElt, WeylElt], Dict[Tuple[int, int], int]] = {}
        for (x, y, i, j), c in self._t.items():
            grouped.setdefault((x, y), {})[(i, j)] = c
        W = self.D.W
        order = sorted(grouped, key=lambda k: (W.word_key(k[0]), W.word_key(k[1])))
        return {k: ABPoly(grouped[k]) for k in order}

    def __str__(self) -> str:
        if not self._t:
            return "0"
        W = self.D.W
        parts = []
        for (x, y), p in self.terms().items():
            body = f"T[{W.name_word(x)}] # T[{W.name_word(y)}]"
            parts.append(body if p == 1 else f"({p})*{body}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BiTensor({self})"

    def to_json(self) -> List[List[str]]:
        W = self.D.W
        return [[W.name_word(x), W.name_word(y), str(p)] for (x, y), p in self.terms().items()]


class CertTerm(NamedTuple):
    """``sign * dstar(X_F) . (left (x) right)`` with ``X_F`` the generator of ``M_F``."""

    facet: Tuple[int, ...]
    sign: int
    left: HeckeElt
    right: HeckeElt


class DualRes:
    """Outer and inner actions, ``theta`` elements and the dual differential for one group."""

    def __init__(self, W: WeylGroup, alg: Optional[HeckeAlgebra] = None):
        self.W = W
        self.H = alg if alg is not None else get_algebra(W)
        self.geom = get_geometry(W)
        self.d = self.geom.d
        self.codim1 = [F.S for F in self.geom.orbit_reps(self.d - 1)] if self.d >= 1 else []
        self._E: Dict[WeylElt, BiTensor] = {}
        self._gen: Dict[Tuple[int, ...], BiTensor] = {}

    # --- construction -----------------------------------------------------
    def _acc_norm(self, out: Dict[BKey, int], key: BKey, c: int) -> None:
        x, y, i, j = key
        W = self.W
        exps, y0 = W.qperp_reduce(y)
        if any(exps):
            x = W.mul(W.qperp_elt(exps), x)
        k = (x, y0, i, j)
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)

    def zero(self) -> BiTensor:
        return BiTensor._raw(self, {})

    def tensor(self, h1: HeckeElt, h2: HeckeElt) -> BiTensor:
        out: Dict[BKey, int] = {}
        for (x, i1, j1), c1 in h1.raw_terms().items():
            for (y, i2, j2), c2 in h2.raw_terms().items():
                self._acc_norm(out, (x, y, i1 + i2, j1 + j2), c1 * c2)
        return BiTensor._raw(self, out)

    def basis(self, x: WeylElt, y: WeylElt) -> BiTensor:
        return self.tensor(self.H.T(x), self.H.T(y))

    def one(self) -> BiTensor:
        return self.basis(self.W.e, self.W.e)

    # --- actions ---------------------------------------------------------------
    def outer(self, op: BiTensor, X: BiTensor) -> BiTensor:
        """``(T (x) S) * (x (x) y) = T x (x) y S``, bilinearly."""
        bp = self.H.basis_product
        out: Dict[BKey, int] = {}
        for (p, q, i1, j1), c1 in op._t.items():
            for (x, y, i2, j2), c2 in X._t.items():
                left = bp(p, x)
                right = bp(y, q)
                cc = c1 * c2
                for (u, a1, b1), d1 in left.items():
                    for (v, a2, b2), d2 in right.items():
                        self._acc_norm(out, (u, v, i1 + i2 + a1 + a2, j1 + j2 + b1 + b2), cc * d1 * d2)
        return BiTensor._raw(self, out)

    def inner(self, X: BiTensor, op: BiTensor) -> BiTensor:
        """``(x (x) y) . (T (x) S) = x S (x) T y``, bilinearly."""
        bp = self.H.basis_product
        out: Dict[BKey, int] = {}
        for (p, q, i1, j1), c1 in op._t.items():
            for (x, y, i2, j2), c2 in X._t.items():
                left = bp(x, q)
                right = bp(p, y)
                cc = c1 * c2
                for (u, a1, b1), d1 in left.items():
                    for (v, a2, b2), d2 in right.items():
                        self._acc_norm(out, (u, v, i1 + i2 + a1 + a2, j1 + j2 + b1 + b2), cc * d1 * d2)
        return BiTensor._raw(self, out)

    def compose_outer(self, op1: BiTensor, op2: BiTensor) -> BiTensor:
        """Product in ``H (x) H^o``: ``(T (x) S)(T' (x) S') = T T' (x) S' S``."""
        return self.outer(op1, op2)

    def compose_inner(self, m1: BiTensor, m2: BiTensor) -> BiTensor:
        """Multiplier for ``(X . m1) . m2``: ``(T (x) S), (T' (x) S') -> T' T (x) S S'``."""
        bp = self.H.basis_product
        out: Dict[BKey, int] = {}
        for (p, q, i1, j1), c1 in m1._t.items():
            for (p2, q2, i2, j2), c2 in m2._t.items():
                left = bp(p2, p)
                right = bp(q, q2)
                cc = c1 * c2
                for (u, a1, b1), d1 in left.items():
                    for (v, a2, b2), d2 in right.items():
                        self._acc_norm(out, (u, v, i1 + i2 + a1 + a2, j1 + j2 + b1 + b2), cc * d1 * d2)
        return BiTensor._raw(self, out)

    # --- theta elements and the dual differential -------------------------------
    def theta(self, S: Sequence[int]) -> BiTensor:
        """``theta_F = sum over Omega_F / Q^perp of eps_F(w) T_w (x) T_{w^-1}``."""
        ctx = get_ctx(self.W, S)
        W = self.W
        out = self.zero()
        for om in ctx.omegaF:
            out = out + self.basis(om, W.inv(om)).scale(ctx.epsilon(om))
        return out

    def theta_C(self) -> BiTensor:
        return self.theta(())

    def annihilators(self, S: Sequence[int]) -> List[Tuple[str, BiTensor]]:
        """Operators ``j_F(T_w) (x) 1 - 1 (x) T_w`` for ``w`` in a generating set of ``W_F``."""
        ctx = get_ctx(self.W, S)
        W, H = self.W, self.H
        gens: List[Tuple[str, WeylElt]] = [(f"s{j}", W.s[j]) for j in ctx.S]
        gens += [(W.name_word(om), om) for om in ctx.omegaF if om != W.e]
        gens += [(f"xi{k}", W.qperp_elt([int(i == k) for i in range(W.rd.qperp_rank)]))
                 for k in range(W.rd.qperp_rank)]
        out = []
        for name, w in gens:
            op = self.tensor(H.T(w), H.one()).scale(ctx.epsilon(w)) - self.tensor(H.one(), H.T(w))
            out.append((name, op))
        return out

    def in_M(self, S: Sequence[int], X: BiTensor) -> bool:
        return all(not self.outer(op, X) for _name, op in self.annihilators(S))

    def dstar(self, S: Sequence[int], X: BiTensor, check: bool = True) -> BiTensor:
        """``sum over Omega / Omega_F of eps_C(w) (T_w (x) T_{w^-1}) * X``."""
        W = self.W
        if check and not self.in_M(S, X):
            raise ValueError("input does not satisfy the facet annihilation conditions")
        ctx = get_ctx(W, S)
        reps: List[WeylElt] = []
        for om in W.omega_reps():
            if not any(W.canonical(W.mul(W.inv(r), om)) in set(ctx.omegaF) for r in reps):
                reps.append(om)
        out = self.zero()
        for om in reps:
            op = self.basis(om, W.inv(om)).scale(W.epsilon_C(om))
            out = out + self.outer(op, X)
        return out

    def E(self, w: WeylElt) -> BiTensor:
        """``theta_C * (1 (x) T_w - upiota(T_w) (x) 1)``."""
        cached = self._E.get(w)
        if cached is None:
            H = self.H
            X = self.tensor(H.one(), H.T(w)) - self.tensor(H.upiota_basis(w), H.one())
            cached = self.outer(self.theta_C(), X)
            self._E[w] = cached
        return cached

    def generator_MF(self, S: Sequence[int]) -> BiTensor:
        """``X_F = theta_F * (1 (x) T_s - upiota(T_s) (x) 1)`` for a wall facet with ``S = (s,)``."""
        S = tuple(S)
        cached = self._gen.get(S)
        if cached is None:
            (k,) = S
            H = self.H
            X = self.tensor(H.one(), H.Ts(k)) - self.tensor(H.upiota_basis(self.W.s[k]), H.one())
            cached = self.outer(self.theta(S), X)
            self._gen[S] = cached
        return cached

    def fact2_operator(self, S: Sequence[int]) -> BiTensor:
        """``g_F = theta_F (T_s (x) 1 - 1 (x) upiota(T_s))`` as an element of ``H (x) H^o``."""
        (k,) = tuple(S)
        H = self.H
        op = self.tensor(H.Ts(k), H.one()) - self.tensor(H.one(), H.upiota_basis(self.W.s[k]))
        return self.compose_outer(self.theta(S), op)

    # --- certificates -----------------------------------------------------------
    def wall_conjugator(self, j: int) -> Tuple[Tuple[int, ...], WeylElt]:
        """``(F, w)`` with ``F`` a wall-facet representative and ``s_j = w s_F w^-1``."""
        G, om = self.geom.orbit_rep((j,))
        return G.S, om

    def fact3_certificate(self, w: WeylElt) -> List[CertTerm]:
        """Terms whose dual-differential images sum to ``E(T_w)``.

        With ``w = omega s_1 ... s_k`` reduced and ``w_i = s_{i+1} ... s_k``,
        the product rule ``E(T_s T_v) = E(T_v) . (T_s (x) 1) + E(T_s) . (1 (x) upiota(T_v))``
        unrolls to one term per letter; each ``E(T_{s_i})`` is conjugated to a
        wall-facet generator ``E(T_{s_F})`` by some ``w_i`` in ``Omega``.
        """
        W, H = self.W, self.H
        rw = W.reduced_word(w)
        terms: List[CertTerm] = []
        prefix = H.T(rw.omega)
        letters = rw.letters
        for i, j in enumerate(letters):
            FS, om = self.wall_conjugator(j)
            tail = W.from_word(W.e, letters[i + 1:])
            left = H.mul(prefix, H.T(om))
            right = H.mul(H.T(W.inv(om)), H.upiota_basis(tail))
            terms.append(CertTerm(FS, W.epsilon_C(om), left, right))
            prefix = H.mul(prefix, H.Ts(j))
        return terms

    def expand_certificate(self, terms: Sequence[CertTerm], extra: Optional[BiTensor] = None) -> BiTensor:
        """Sum of ``sign * dstar(X_F) . m`` (``m`` optionally followed by the multiplier ``extra``)."""
        out = self.zero()
        for t in terms:
            image = self.dstar(t.facet, self.generator_MF(t.facet), check=False)
            mult = self.tensor(t.left, t.right)
            if extra is not None:
                mult = self.compose_inner(mult, extra)
            out = out + self.inner(image, mult).scale(t.sign)
        return out

    # --- the comparison map ------------------------------------------------------
    def mu(self, X: BiTensor) -> HeckeElt:
        """``mu(x (x) y) = upiota(y) x``."""
        H = self.H
        out = H.zero()
        for (x, y, i, j), c in X._t.items():
            out = out + H.mul(H.upiota_basis(y), H.T(x)).scale(ABPoly({(i, j): c}))
        return out

    def section(self, h: HeckeElt) -> BiTensor:
        """``f(h) = theta_C * (h (x) 1)``."""
        return self.outer(self.theta_C(), self.tensor(h, self.H.one()))


_DUALRES: Dict[int, DualRes] = {}


def get_dualres(W_or_name) -> DualRes:
    W = get_group(W_or_name)
    D = _DUALRES.get(id(W))
    if D is None:
        D = DualRes(W)
        _DUALRES[id(W)] = D
    return D


# ---------------------------------------------------------------------------
# numeric windows
# ---------------------------------------------------------------------------

DEFAULT_POINTS = ((Fraction(2), Fraction(3)), (Fraction(5), Fraction(-7)), (Fraction(1, 2), Fraction(3)))


def _pairs(W: WeylGroup, L: int) -> List[Tuple[WeylElt, WeylElt]]:
    win = W.window(L)
    return [(x, y) for x in win for y in win if W.length(x) + W.length(y) <= L]


def _num_outer(D: DualRes, num: NumericHecke, op: BiTensor, x: WeylElt, y: WeylElt) -> Dict[Any, Fraction]:
    """Numeric image of ``T_x (x) T_y`` under the outer operator ``op`` (central translations set to 1)."""
    W = D.W
    out: Dict[Any, Fraction] = {}
    for (p, q, i, j), c in op.raw_terms().items():
        coef = c * num._ab(i, j)
        for u, c1 in num.basis_product(p, x).items():
            for v, c2 in num.basis_product(y, q).items():
                key = (W.canonical(u), W.canonical(v))
                out[key] = out.get(key, 0) + coef * c1 * c2
    return {k: v for k, v in out.items() if v}


def _membership_window(D: DualRes, S: Sequence[int], gen_op: BiTensor, L: int, gen_L: int, a0, b0) -> Dict[str, Any]:
    W = D.W
    num = D.H.numeric(a0, b0)
    basis = _pairs(W, L)
    anns = D.annihilators(S)
    # stack all annihilator conditions into one map V_L -> (copies of) V_{L+1}
    cols = []
    for x, y in basis:
        col: Dict[Any, Fraction] = {}
        for idx, (_name, op) in enumerate(anns):
            for k, v in _num_outer(D, num, op, x, y).items():
                col[(idx, k)] = v
        cols.append(col)
    kernel, _ = kernel_basis(cols)
    span = SparseEchelon()
    gen_vectors = []
    for x, y in _pairs(W, gen_L):
        vec = _num_outer(D, num, gen_op, x, y)
        gen_vectors.append(vec)
        span.add(vec)
    outside = 0
    for vec in kernel:
        X = {basis[i]: c for i, c in vec.items()}
        if not span.contains(X):
            outside += 1
    # reverse direction numerically: generators satisfy the conditions
    not_annihilated = 0
    for vec in gen_vectors:
        for _name, op in anns:
            img: Dict[Any, Fraction] = {}
            for (x, y), c in vec.items():
                for k, v in _num_outer(D, num, op, x, y).items():
                    img[k] = img.get(k, 0) + c * v
            if any(img.values()):
                not_annihilated += 1
                break
    return {
        "a": str(a0),
        "b": str(b0),
        "window": len(basis),
        "kernel_dim": len(kernel),
        "generated_dim": span.rank,
        "kernel_outside_span": outside,
        "generators_failing": not_annihilated,
        "ok": outside == 0 and not_annihilated == 0,
    }


def fact1_window(W_or_name, L: int, points=DEFAULT_POINTS) -> Dict[str, Any]:
    """``M_C`` in the window ``l(x) + l(y) <= L`` equals ``theta_C * (window)``.

    The annihilation equations are solved exactly at each rational point;
    the generated span must contain every solution and have the same
    dimension (``theta_C *`` preserves lengths). Symbolically the generators
    ``theta_C * (T_x (x) T_y)`` are checked to satisfy the equations.
    """
    t0 = time.perf_counter()
    D = get_dualres(W_or_name)
    W, H = D.W, D.H
    theta = D.theta_C()
    runs = []
    for a0, b0 in points:
        r = _membership_window(D, (), theta, L, L, a0, b0)
        r["ok"] = r["ok"] and r["kernel_dim"] == r["generated_dim"]
        runs.append(r)
    symbolic_fail = []
    for x, y in _pairs(W, min(L, 2)):
        if not D.in_M((), D.outer(theta, D.basis(x, y))):
            symbolic_fail.append((W.name_word(x), W.name_word(y)))
    theta_ok = all(
        D.outer(D.basis(om, W.inv(om)), theta) == theta.scale(W.epsilon_C(om)) for om in W.omega_reps()
    )
    ok = all(r["ok"] for r in runs) and not symbolic_fail and theta_ok
    return {"datum": W.rd.name, "L": L, "points": runs, "symbolic_failures": symbolic_fail,
            "theta_twist_ok": theta_ok, "ok": ok, "seconds": round(time.perf_counter() - t0, 3)}


def fact2_window(W_or_name, S: Sequence[int], L: int, points=DEFAULT_POINTS) -> Dict[str, Any]:
    """``M_F`` (wall facet ``F``) in the window ``<= L`` lies in ``g_F * (window <= L - 1)``, and conversely.

    ``g_F = theta_F (T_s (x) 1 - 1 (x) upiota(T_s))`` raises the window
    length by at most one. The operator identity
    ``(j_F(T_s) (x) 1 - 1 (x) T_s) g_F = 0`` and membership of the generators
    ``g_F * (T_x (x) T_y)`` are checked symbolically.
    """
    t0 = time.perf_counter()
    D = get_dualres(W_or_name)
    W, H = D.W, D.H
    S = tuple(S)
    g = D.fact2_operator(S)
    runs = [_membership_window(D, S, g, L, L - 1, a0, b0) for a0, b0 in points]
    op_ok = all(not D.compose_outer(op, g) for _n, op in D.annihilators(S))
    symbolic_fail = []
    for x, y in _pairs(W, min(L - 1, 2)):
        if not D.in_M(S, D.outer(g, D.basis(x, y))):
            symbolic_fail.append((W.name_word(x), W.name_word(y)))
    gen_ok = D.in_M(S, D.generator_MF(S))
    ok = all(r["ok"] for r in runs) and op_ok and not symbolic_fail and gen_ok
    return {"datum": W.rd.name, "facet": ",".join(f"s{j}" for j in S), "L": L, "points": runs,
            "operator_identity": op_ok, "symbolic_failures": symbolic_fail,
            "generator_in_M": gen_ok, "ok": ok, "seconds": round(time.perf_counter() - t0, 3)}


def fact3_check(W_or_name, L: int) -> Dict[str, Any]:
    """Every ``E(T_w)`` with ``l(w) <= L`` equals the expansion of its certificate."""
    t0 = time.perf_counter()
    D = get_dualres(W_or_name)
    W = D.W
    failures = []
    sizes = []
    for w in W.window(L):
        cert = D.fact3_certificate(w)
        if D.expand_certificate(cert) != D.E(w):
            failures.append(W.name_word(w))
        sizes.append(len(cert))
    members = {",".join(map(str, S)): D.in_M(S, D.generator_MF(S)) for S in D.codim1}
    ok = not failures and all(members.values())
    return {"datum": W.rd.name, "L": L, "checked": len(sizes), "max_terms": max(sizes, default=0),
            "failures": failures, "generators_in_M": members, "ok": ok,
            "seconds": round(time.perf_counter() - t0, 3)}


def cokernel_check(W_or_name, L: int, seed: int = 0, samples: int = 30, points=DEFAULT_POINTS[:1]) -> Dict[str, Any]:
    """The identities that make ``mu`` induce an isomorphism of the cokernel with ``(upiota) H``.

    (i) in the window, every solution of ``theta_C * X = 0`` has ``mu(X) = 0``;
    (ii) ``theta_C * (x (x) y) - f(mu(x (x) y)) = E(T_y) . (1 (x) T_x)`` is certified by
    expanding the ``E(T_y)`` certificate composed with ``1 (x) T_x``;
    (iii) ``mu(X . (T (x) S)) = upiota(T) mu(X) S`` on random inputs;
    and ``mu-bar(f(h)) = mu(h (x) 1) = h`` on basis elements.
    """
    t0 = time.perf_counter()
    D = get_dualres(W_or_name)
    W, H = D.W, D.H
    theta = D.theta_C()
    # (i)
    kernel_runs = []
    for a0, b0 in points:
        num = H.numeric(a0, b0)
        basis = _pairs(W, L)
        cols = [_num_outer(D, num, theta, x, y) for x, y in basis]
        kernel, _ = kernel_basis(cols)
        bad = 0
        for vec in kernel:
            img: Dict[WeylElt, Fraction] = {}
            for i, c in vec.items():
                x, y = basis[i]
                prod = num.mul(num.from_symbolic(H.upiota_basis(y)), {x: 1})
                for w, v in prod.items():
                    w = W.canonical(w)
                    img[w] = img.get(w, 0) + c * v
            if any(img.values()):
                bad += 1
        kernel_runs.append({"a": str(a0), "b": str(b0), "kernel_dim": len(kernel), "mu_nonzero": bad})
    # (ii)
    cert_fail = []
    checked = 0
    for x, y in _pairs(W, L):
        X = D.basis(x, y)
        lhs = D.outer(theta, X) - D.section(D.mu(X))
        rhs = D.expand_certificate(D.fact3_certificate(y), extra=D.basis(W.e, x))
        checked += 1
        if lhs != rhs:
            cert_fail.append((W.name_word(x), W.name_word(y)))
    # (iii) and mu o f = id
    rng = random.Random(seed)
    small = W.window(max(1, min(L, 2)))
    gens = [H.Ts(j) for j in range(W.nsimple)] + [H.T(om) for om in W.omega_reps()]
    equiv_fail = 0
    for _ in range(samples):
        X = D.basis(rng.choice(small), rng.choice(small))
        T = rng.choice(gens)
        Sx = rng.choice(gens)
        lhs = D.mu(D.inner(X, D.tensor(T, Sx)))
        rhs = H.mul(H.mul(H.upiota(T), D.mu(X)), Sx)
        if lhs != rhs:
            equiv_fail += 1
    # mu-bar(f(h)) = mu(h (x) 1) must return h
    section_fail = [W.name_word(w) for w in W.window(L) if D.mu(D.basis(w, W.e)) != H.T(w)]
    ok = (all(r["mu_nonzero"] == 0 for r in kernel_runs) and not cert_fail and not equiv_fail
          and not section_fail)
    return {"datum": W.rd.name, "L": L, "kernel": kernel_runs, "certified_pairs": checked,
            "certificate_failures": cert_fail, "equivariance_failures": equiv_fail,
            "section_failures": section_fail, "ok": ok, "seconds": round(time.perf_counter() - t0, 3)}
