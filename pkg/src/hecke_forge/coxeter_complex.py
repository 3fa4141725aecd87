"""The Coxeter complex of the affine Weyl group with Hecke-algebra coefficients.

A facet of the apartment is stored canonically as a :class:`Facet`
``(d, S)``: ``S`` is the fixing set of the standard facet ``F0`` in the closed
chamber of the same type and ``d`` is the shortest element of ``W_aff`` with
``d F0 = F``. Every facet carries the orientation transported from the
ascending orientation of ``F0`` by ``d``.

Oriented chains with values in ``H`` (:class:`Chain`) form a complex of right
``H``-modules: the transition map from a facet to a face is left
multiplication by ``T_{d_{F'}^{-1} d_F}`` and the augmentation sends a vertex
chain ``x -> h`` to ``T_{d_x} h``. The left ``H``-action is the generator
action by facet type, and :meth:`CoxeterComplex.iso_induced` identifies the
chains with sums of induced modules ``H(j_G) (x)_{H_G} H``.

    >>> K = CoxeterComplex(get_group("A1_sl"))
    >>> C = K.chamber()
    >>> [(K.W.name_word(f.d), f.S, sign) for f, sign, _ in K.faces(C)]
    [('e', (0,), 1), ('e', (1,), -1)]

:func:`exactness_window` checks exactness of finite windows of the
augmented complex once ``a`` and ``b`` are specialised to rationals.
"""

from __future__ import annotations

import time
from itertools import product
from fractions import Fraction
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .coeff import SparseEchelon, kernel_basis
from .hecke import HeckeAlgebra, HeckeElt, NumericHecke, get_algebra
from .parahoric import ParahoricCtx, get_ctx, get_geometry
from .weyl import WeylElt, WeylGroup, get_group

__all__ = [
    "Facet",
    "Chain",
    "CoxeterComplex",
    "get_complex",
    "exactness_window",
    "facet_type_report",
    "chain_complex_report",
    "boundary_matrices",
]


class Facet(NamedTuple):
    """A facet ``d F0`` of the apartment: ``d`` in ``D_{F0}`` and ``F0`` given by its fixing set."""

    d: WeylElt
    S: Tuple[int, ...]


class Chain:
    """A finitely supported oriented chain ``Facet -> HeckeElt`` (values at canonical orientations)."""

    __slots__ = ("alg", "values")

    def __init__(self, alg: HeckeAlgebra, values: Optional[Dict[Facet, HeckeElt]] = None):
        self.alg = alg
        self.values: Dict[Facet, HeckeElt] = {F: h for F, h in (values or {}).items() if h}

    @classmethod
    def single(cls, alg: HeckeAlgebra, F: Facet, h: HeckeElt) -> "Chain":
        return cls(alg, {F: h})

    def add_at(self, F: Facet, h: HeckeElt) -> None:
        cur = self.values.get(F)
        tot = h if cur is None else cur + h
        if tot:
            self.values[F] = tot
        else:
            self.values.pop(F, None)

    def __add__(self, other: "Chain") -> "Chain":
        out = Chain(self.alg, dict(self.values))
        for F, h in other.values.items():
            out.add_at(F, h)
        return out

    def __neg__(self) -> "Chain":
        return Chain(self.alg, {F: -h for F, h in self.values.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def scale(self, p) -> "Chain":
        return Chain(self.alg, {F: h.scale(p) for F, h in self.values.items()})

    def right_mul(self, h: HeckeElt) -> "Chain":
        return Chain(self.alg, {F: v * h for F, v in self.values.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.values == other.values

    def __bool__(self) -> bool:
        return bool(self.values)

    def __repr__(self) -> str:
        return f"Chain({len(self.values)} facets)"


class CoxeterComplex:
    """The facets of the apartment of one group, with the bimodule structure on chains."""

    def __init__(self, W: WeylGroup, alg: Optional[HeckeAlgebra] = None):
        self.W = W
        self.alg = alg if alg is not None else get_algebra(W)
        self.geom = get_geometry(W)
        self.d = self.geom.d
        self._faces: Dict[Facet, List[Tuple[Facet, int, WeylElt]]] = {}

    def ctx(self, S: Sequence[int]) -> ParahoricCtx:
        return get_ctx(self.W, S)

    def chamber(self) -> Facet:
        return Facet(self.W.e, ())

    def dim(self, F: Facet) -> int:
        return self.geom.dim(F.S)

    def label(self, F: Facet) -> str:
        S = ",".join(f"s{j}" for j in F.S) if F.S else "C"
        return f"{self.W.name_word(F.d)}.[{S}]"

    # --- canonical forms ------------------------------------------------------
    def canonicalize(self, w: WeylElt, S: Sequence[int]) -> Facet:
        """Canonical form of the facet ``w F0`` (``F0`` with fixing set ``S``).

        Writing ``w = omega v`` gives ``w F0 = (omega v omega^-1)(omega F0)``
        with ``omega F0`` standard; the representative is then shortened by
        stripping right descents that lie in the new fixing set.
        """
        W = self.W
        S = tuple(sorted(S))
        om = W.omega_part(w)
        if om != W.e:
            v = W.mul(W.inv(om), w)
            w = W.conj(om, v)
            S = self.geom.permute(om, S)
        return Facet(self.ctx(S).min_rep(w), S)

    def canonicalize_bfs(self, w: WeylElt, S: Sequence[int], limit: Optional[int] = None) -> Facet:
        """Reference construction: the nearest chamber ``x C`` whose closure contains ``w F0``.

        Chambers are scanned by gallery distance ``l(x)``; ``x C`` contains
        ``w F0`` exactly when ``x^-1 w`` lies in ``Omega W_{F0}^0``.
        """
        W = self.W
        S = tuple(sorted(S))
        limit = W.length(w) if limit is None else limit
        for k in range(limit + 1):
            hits = []
            for x in W.sphere(k):
                y = W.mul(W.inv(x), w)
                om = W.omega_part(y)
                v = W.mul(W.inv(om), y)
                if all(j in S for j in W.reduced_word(v).letters):
                    hits.append(Facet(x, self.geom.permute(om, S)))
            if hits:
                if len(set(hits)) != 1:
                    raise AssertionError("nearest chamber is not unique")
                return hits[0]
        raise ValueError("search radius exhausted before reaching the facet")

    def vertex_set(self, F: Facet) -> frozenset:
        """The vertices of ``F`` as canonical facets (used to compare facets as point sets).

        A vertex of the closed chamber picks one vertex type per component.
        """
        geom = self.geom
        J = geom.vertex_types(F.S)
        choices = [[j for j in J if geom.comp_of[j] == c] for c in range(geom.ncomp)]
        out = set()
        for pick in product(*choices):
            S2 = tuple(j for j in geom.types if j not in pick)
            out.add(self.canonicalize(F.d, S2))
        return frozenset(out)

    # --- faces and transitions --------------------------------------------------
    def faces(self, F: Facet) -> List[Tuple[Facet, int, WeylElt]]:
        """Codimension-one faces ``(F', sign, d_{F'}^{-1} d_F)``."""
        cached = self._faces.get(F)
        if cached is not None:
            return cached
        if self.dim(F) == 0:
            raise ValueError("a vertex has no faces")
        W = self.W
        out = []
        for S2, sign, _k in self.geom.faces(F.S):
            G = self.canonicalize(F.d, S2)
            conn = W.mul(W.inv(G.d), F.d)
            if W.length(G.d) + W.length(conn) != W.length(F.d):
                raise AssertionError("face connector is not length additive")
            out.append((G, sign, conn))
        self._faces[F] = out
        return out

    def connector(self, F: Facet, G: Facet) -> WeylElt:
        for G2, _sign, conn in self.faces(F):
            if G2 == G:
                return conn
        raise ValueError(f"{self.label(G)} is not a face of {self.label(F)}")

    def is_face(self, F: Facet, G: Facet) -> bool:
        """``G`` lies in the closure of ``F`` (any codimension)."""
        if F == G:
            return True
        if self.dim(F) <= self.dim(G):
            return False
        return any(self.is_face(F2, G) for F2, _s, _c in self.faces(F))

    def transition(self, F: Facet, G: Facet, h: HeckeElt) -> HeckeElt:
        """``r^F_G(h) = T_{d_G^{-1} d_F} h`` for ``G`` in the closure of ``F``."""
        if not self.is_face(F, G):
            raise ValueError(f"{self.label(G)} is not in the closure of {self.label(F)}")
        W = self.W
        return self.alg.mul(self.alg.T(W.mul(W.inv(G.d), F.d)), h)

    # --- the complex ----------------------------------------------------------
    def boundary(self, chain: Chain) -> Chain:
        H = self.alg
        out = Chain(H)
        for F, h in chain.values.items():
            for G, sign, conn in self.faces(F):
                out.add_at(G, H.mul(H.T(conn), h).scale(sign))
        return out

    def augment(self, chain: Chain) -> HeckeElt:
        H = self.alg
        out = H.zero()
        for F, h in chain.values.items():
            if self.dim(F) != 0:
                raise ValueError("augmentation takes a 0-chain")
            out = out + H.mul(H.T(F.d), h)
        return out

    def facet_type(self, j: int, F: Facet) -> str:
        return self.ctx(F.S).classify(j, F.d)

    def act_omega(self, om: WeylElt, chain: Chain) -> Chain:
        if self.W.length(om) != 0:
            raise ValueError("case I needs a length-zero element")
        W, H = self.W, self.alg
        Tom = H.T(om)
        out = Chain(H)
        for F, h in chain.values.items():
            G = Facet(W.conj(om, F.d), self.geom.permute(om, F.S))
            sign = self.geom.omega_sign(om, F.S)
            out.add_at(G, H.mul(Tom, h).scale(sign))
        return out

    def act_s(self, j: int, chain: Chain) -> Chain:
        W, H = self.W, self.alg
        s = W.s[j]
        out = Chain(H)
        for F, h in chain.values.items():
            kind = self.facet_type(j, F)
            if kind == "A":
                out.add_at(F, h.scale(H.a + H.b))
                out.add_at(Facet(W.mul(s, F.d), F.S), h.scale(-(H.a * H.b)))
            elif kind == "B.i":
                out.add_at(Facet(W.mul(s, F.d), F.S), h)
            else:
                u = W.mul(W.inv(F.d), W.mul(s, F.d))
                out.add_at(F, H.mul(H.T(u), h))
        return out

    def act_word(self, omega: WeylElt, letters: Sequence[int], chain: Chain) -> Chain:
        """``T_omega T_{s_1} ... T_{s_k}`` acting from the left, letter by letter."""
        for j in reversed(letters):
            chain = self.act_s(j, chain)
        return self.act_omega(omega, chain) if omega != self.W.e else chain

    def act_T(self, w: WeylElt, chain: Chain) -> Chain:
        rw = self.W.reduced_word(w)
        return self.act_word(rw.omega, rw.letters, chain)

    def act(self, g: HeckeElt, chain: Chain) -> Chain:
        """Left action of an arbitrary element, extended linearly from basis elements."""
        out = Chain(self.alg)
        for w, p in g.terms().items():
            out = out + self.act_T(w, chain).scale(p)
        return out

    # --- induced-module description -------------------------------------------
    def iso_induced(self, chain: Chain) -> Dict[Tuple[Tuple[int, ...], WeylElt], HeckeElt]:
        """Chain -> sparse map ``(G, d) -> h`` meaning ``sum T_d (x) h`` with ``d`` a dagger representative of ``G``."""
        W, H = self.W, self.alg
        out: Dict[Tuple[Tuple[int, ...], WeylElt], HeckeElt] = {}
        for F, h in chain.values.items():
            G, om = self.geom.orbit_rep(F.S)
            sign = self.geom.omega_sign(om, G.S)
            value = H.mul(H.T(W.inv(om)), h).scale(sign)
            self._tensor_add(out, G.S, W.mul(F.d, om), value)
        return out

    def _tensor_add(self, out: Dict, GS: Tuple[int, ...], x: WeylElt, value: HeckeElt) -> None:
        """Add ``T_x (x) value`` in normal form: ``x = d u`` and ``T_x (x) h = eps_G(u) T_d (x) T_u h``."""
        ctx = self.ctx(GS)
        d, u = ctx.split_WF(x)
        term = self.alg.mul(self.alg.T(u), value).scale(ctx.epsilon(u))
        key = (GS, d)
        cur = out.get(key)
        tot = term if cur is None else cur + term
        if tot:
            out[key] = tot
        else:
            out.pop(key, None)

    def iso_inverse(self, tensor: Dict[Tuple[Tuple[int, ...], WeylElt], HeckeElt]) -> Chain:
        W, H = self.W, self.alg
        out = Chain(H)
        for (GS, d), h in tensor.items():
            F = self.canonicalize(d, GS)
            om = W.mul(W.inv(F.d), d)
            if W.length(om) != 0 or self.geom.permute(om, GS) != F.S:
                raise AssertionError("dagger representative does not differ from d_F by Omega")
            sign = self.geom.omega_sign(om, GS)
            out.add_at(F, H.mul(H.T(om), h).scale(sign))
        return out

    def tensor_left(self, g: HeckeElt, tensor: Dict) -> Dict:
        """Left multiplication on ``H(j_G) (x)_{H_G} H`` in normal form."""
        out: Dict = {}
        H = self.alg
        for (GS, d), h in tensor.items():
            prod = H.mul(g, H.T(d))
            for x, p in prod.terms().items():
                self._tensor_add(out, GS, x, h.scale(p))
        return out

    # --- windows ------------------------------------------------------------------
    def facets(self, i: int, radius: int) -> List[Facet]:
        """All ``i``-dimensional facets with ``l(d_F) <= radius``."""
        out = []
        for F0 in self.geom.std_facets(i):
            for d in self.ctx(F0.S).enumerate_DF(radius):
                out.append(Facet(d, F0.S))
        out.sort(key=lambda F: (self.W.word_key(F.d), F.S))
        return out

    def generator(self, F: Facet) -> Chain:
        return Chain.single(self.alg, F, self.alg.one())


_COMPLEXES: Dict[int, CoxeterComplex] = {}


def get_complex(W_or_name) -> CoxeterComplex:
    W = get_group(W_or_name)
    K = _COMPLEXES.get(id(W))
    if K is None:
        K = CoxeterComplex(W)
        _COMPLEXES[id(W)] = K
    return K


def chain_complex_report(K: CoxeterComplex, radius: int) -> Dict[str, Any]:
    """Symbolic identities on every window generator ``F -> 1`` with ``l(d_F) <= radius``.

    Checks ``d d = 0``, ``alpha d = 0``, the quadratic relation for the left
    action of each ``T_s``, that ``d`` and ``alpha`` commute with the left
    action of ``T_s`` and ``T_omega``, and that the description as an induced
    module intertwines the actions and inverts on the generator.
    """
    t0 = time.perf_counter()
    W, H = K.W, K.alg
    failures: List[Tuple[str, str, str]] = []
    checked = 0
    for i in range(K.d + 1):
        for F in K.facets(i, radius):
            checked += 1
            g = K.generator(F)
            name = K.label(F)
            bd = K.boundary(g) if i >= 1 else None
            if i >= 2 and K.boundary(bd):
                failures.append(("dd", name, ""))
            if i == 1 and K.augment(bd):
                failures.append(("alpha d", name, ""))
            iso_g = K.iso_induced(g)
            if K.iso_inverse(iso_g) != g:
                failures.append(("iso inverse", name, ""))
            acts = [(f"s{j}", H.Ts(j), (lambda c, j=j: K.act_s(j, c)), True) for j in range(W.nsimple)]
            acts += [(W.name_word(om), H.T(om), (lambda c, om=om: K.act_omega(om, c)), False)
                     for om in W.omega_reps()]
            for tag, Th, act, simple in acts:
                hg = act(g)
                if i >= 1:
                    if act(bd) != K.boundary(hg):
                        failures.append(("equivariance d", name, tag))
                elif H.mul(Th, K.augment(g)) != K.augment(hg):
                    failures.append(("equivariance alpha", name, tag))
                if simple and act(hg) != hg.scale(H.a + H.b) - g.scale(H.a * H.b):
                    failures.append(("quadratic", name, tag))
                if K.iso_induced(hg) != K.tensor_left(Th, iso_g):
                    failures.append(("iso intertwining", name, tag))
    return {"datum": W.rd.name, "radius": radius, "generators": checked, "failures": failures,
            "ok": not failures, "seconds": round(time.perf_counter() - t0, 3)}


def boundary_matrices(K: CoxeterComplex, radius: int) -> Dict[str, Any]:
    """Boundary of every window generator in coordinate-list form.

    Entry ``[face, facet, value]`` means that ``d(facet -> 1)`` has the
    value ``value`` at ``face``, written in the canonical text form of ``H``.
    """
    W = K.W
    out: Dict[str, Any] = {}
    for i in range(1, K.d + 1):
        entries = []
        for F in K.facets(i, radius):
            for G, h in sorted(K.boundary(K.generator(F)).values.items(), key=lambda kv: K.label(kv[0])):
                entries.append([K.label(G), K.label(F), str(h)])
        out[f"d{i}"] = entries
    aug = []
    for F in K.facets(0, radius):
        aug.append([K.label(F), str(K.augment(K.generator(F)))])
    out["augmentation"] = aug
    return out


# ---------------------------------------------------------------------------
# operator identities for facet types
# ---------------------------------------------------------------------------

def facet_type_report(K: CoxeterComplex, radius: int) -> Dict[str, Any]:
    """Check the four transition-map identities for every incident pair and every ``s``.

    For a facet ``F`` of positive dimension with ``l(d_F) <= radius``, a
    codimension-one face ``G`` and ``s`` in ``S_aff`` (with ``x = d_G^{-1} d_F``
    and ``B = d_G^{-1} s d_G``):

    * same type: the transition ``sF -> sG`` equals ``F -> G``;
    * ``F`` of type A, ``G`` of type B.ii: ``(a+b) T_x - ab T_{d_G^{-1} d_{sF}} = T_B T_x``;
    * ``F`` of type B.i, ``G`` of type B.ii: ``T_{d_G^{-1} d_{sF}} = T_B T_x``;
    * ``F`` of type B.ii: ``T_x T_{d_F^{-1} s d_F} = T_B T_x``.

    Type inheritance (A over A/B.ii, B.i over B.i/B.ii, B.ii over B.ii) is checked too.
    """
    if radius < 2:
        raise ValueError(f"facet-type checks need radius >= 2, got {radius}")
    W, H = K.W, K.alg
    counts = {"a": 0, "b": 0, "c": 0, "d": 0, "inheritance": 0}
    failures: List[Tuple[str, str, str, int]] = []
    allowed = {"A": {"A", "B.ii"}, "B.i": {"B.i", "B.ii"}, "B.ii": {"B.ii"}}
    for i in range(1, K.d + 1):
        for F in K.facets(i, radius):
            for G, _sign, x in K.faces(F):
                Tx = H.T(x)
                for j in range(W.nsimple):
                    s = W.s[j]
                    tF, tG = K.facet_type(j, F), K.facet_type(j, G)
                    counts["inheritance"] += 1
                    if tG not in allowed[tF]:
                        failures.append(("inheritance", K.label(F), K.label(G), j))
                    sF = K.canonicalize(W.mul(s, F.d), F.S)
                    B = W.mul(W.inv(G.d), W.mul(s, G.d))
                    if tF == tG:
                        counts["a"] += 1
                        sG = K.canonicalize(W.mul(s, G.d), G.S)
                        lhs = H.T(W.mul(W.inv(sG.d), sF.d))
                        if lhs != Tx:
                            failures.append(("a", K.label(F), K.label(G), j))
                    if tF == "A" and tG == "B.ii":
                        counts["b"] += 1
                        lhs = Tx.scale(H.a + H.b) - H.T(W.mul(W.inv(G.d), sF.d)).scale(H.a * H.b)
                        if lhs != H.mul(H.T(B), Tx):
                            failures.append(("b", K.label(F), K.label(G), j))
                    if tF == "B.i" and tG == "B.ii":
                        counts["c"] += 1
                        if H.T(W.mul(W.inv(G.d), sF.d)) != H.mul(H.T(B), Tx):
                            failures.append(("c", K.label(F), K.label(G), j))
                    if tF == "B.ii":
                        counts["d"] += 1
                        u = W.mul(W.inv(F.d), W.mul(s, F.d))
                        if H.mul(Tx, H.T(u)) != H.mul(H.T(B), Tx):
                            failures.append(("d", K.label(F), K.label(G), j))
    return {"radius": radius, "counts": counts, "failures": failures, "ok": not failures}


# ---------------------------------------------------------------------------
# exactness in finite windows
# ---------------------------------------------------------------------------

def _in_window(metric: str, lf: int, ly: int, n: int) -> bool:
    if metric == "total":
        return lf + ly <= n
    if metric == "box":
        return lf <= n and ly <= n
    raise ValueError(f"unknown window metric {metric!r}")


def exactness_window(
    W_or_name,
    radius: int,
    a0: Any = 2,
    b0: Any = 3,
    metric: str = "box",
    buffer: int = 2,
) -> Dict[str, Any]:
    """Exactness of the augmented chain complex on finite windows, over ``Q``.

    ``a`` and ``b`` are set to the rationals ``a0``, ``b0`` and the central
    translations ``Q^perp`` to 1, so the coefficient module becomes the span
    of ``W / Q^perp``. Basis vectors are pairs ``(F, y)`` meaning the chain
    ``F -> T_y``. The window of size ``m`` contains the pairs with
    ``l(d_F) <= m`` and ``l(y) <= m`` (``metric="box"``) or
    ``l(d_F) + l(y) <= m`` (``metric="total"``).

    Checks, with ``n = radius`` and inner size ``n - buffer``:

    * every cycle of the inner window (including ``ker`` of the augmentation
      on 0-chains) is a boundary of a chain in the outer window;
    * the top differential is injective on the inner window;
    * every ``T_y`` with ``l(y) <= n - buffer`` is in the image of the
      augmentation on the outer window.

    The maps only multiply values on the left by elements of ``W_aff``, so
    the computation splits over classes of ``W_aff \\ W / Q^perp``.
    """
    t0 = time.perf_counter()
    W = get_group(W_or_name)
    K = get_complex(W)
    a0, b0 = Fraction(a0), Fraction(b0)
    num = K.alg.numeric(a0, b0)
    d = K.d
    if radius < 3:
        raise ValueError(f"exactness windows need radius >= 3, got {radius}")
    inner = radius - buffer
    if inner < 0:
        raise ValueError("radius smaller than the buffer")
    facets = {i: K.facets(i, radius) for i in range(d + 1)}
    ys = W.window(radius)
    classes: Dict[WeylElt, List[WeylElt]] = {}
    for y in ys:
        classes.setdefault(W.canonical(W.omega_part(y)), []).append(y)

    def image(i: int, F: Facet, y: WeylElt) -> Dict[Any, Fraction]:
        """Image of the basis vector ``(F, y)`` under the differential (``i = 0``: augmentation)."""
        out: Dict[Any, Fraction] = {}
        if i == 0:
            for w, c in num.basis_product(F.d, y).items():
                w = W.canonical(w)
                out[("H", w)] = out.get(("H", w), 0) + c
        else:
            for G, sign, conn in K.faces(F):
                for w, c in num.basis_product(conn, y).items():
                    key = (G, W.canonical(w))
                    out[key] = out.get(key, 0) + sign * c
        return {k: v for k, v in out.items() if v}

    degrees = []
    surviving: List[Dict[str, Any]] = []
    ok = True
    for om, cls in sorted(classes.items(), key=lambda kv: W.word_key(kv[0])):
        for i in range(d + 1):
            # inner cycles in degree i (i = 0 means kernel of the augmentation)
            inner_basis = [
                (F, y)
                for F in facets[i]
                for y in cls
                if _in_window(metric, W.length(F.d), W.length(y), inner)
            ]
            cols = [image(i, F, y) for F, y in inner_basis]
            kernel, _img = kernel_basis(cols)
            if i == d:
                inj = not kernel
                ok &= inj
                degrees.append({"omega": W.name_word(om), "degree": i, "inner": len(inner_basis),
                                "cycles": len(kernel), "top_injective": inj})
                if kernel:
                    surviving.append({"omega": W.name_word(om), "degree": i, "size": len(kernel)})
                continue
            outer_basis = [
                (F, y)
                for F in facets[i + 1]
                for y in cls
                if _in_window(metric, W.length(F.d), W.length(y), radius)
            ]
            span = SparseEchelon()
            for F, y in outer_basis:
                span.add(image(i + 1, F, y))
            bad = 0
            for vec in kernel:
                cycle: Dict[Any, Fraction] = {}
                for idx, coef in vec.items():
                    F, y = inner_basis[idx]
                    cycle[(F, y)] = cycle.get((F, y), 0) + coef
                if not span.contains(cycle):
                    bad += 1
            ok &= bad == 0
            degrees.append({"omega": W.name_word(om), "degree": i, "inner": len(inner_basis),
                            "outer": len(outer_basis), "cycles": len(kernel), "not_bounding": bad})
            if bad:
                surviving.append({"omega": W.name_word(om), "degree": i, "size": bad})
        # surjectivity of the augmentation onto the inner part of H
        span = SparseEchelon()
        for F in facets[0]:
            for y in cls:
                if _in_window(metric, W.length(F.d), W.length(y), radius):
                    span.add(image(0, F, y))
        missing = [W.name_word(y) for y in cls if W.length(y) <= inner and not span.contains({("H", y): 1})]
        ok &= not missing
        degrees.append({"omega": W.name_word(om), "degree": -1, "not_hit": len(missing)})
        if missing:
            surviving.append({"omega": W.name_word(om), "degree": -1, "size": len(missing)})
    return {
        "datum": W.rd.name,
        "radius": radius,
        "buffer": buffer,
        "metric": metric,
        "a": str(a0),
        "b": str(b0),
        "degrees": degrees,
        "surviving": surviving,
        "ok": ok,
        "seconds": round(time.perf_counter() - t0, 3),
    }
