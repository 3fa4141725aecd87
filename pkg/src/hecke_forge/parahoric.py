"""Standard facets, finite parahoric Hecke algebras and their Frobenius data.

A facet of the closed standard chamber is described by the set ``S`` of
simple affine reflections fixing it (a :class:`StdFacet`). Its vertices are
labelled by the complementary *types* ``J``; affine Weyl group elements
preserve types, so an orientation of any facet is recorded as an ordering of
its type set, and the canonical orientation is the ascending one.

:class:`ParahoricCtx` bundles everything attached to one standard facet:
the finite group ``W_F^0 = <S>``, its longest element, the length-zero
stabiliser ``Omega_F``, minimal coset representatives, the facet-type
trichotomy, the orientation character, the trace ``theta`` and its Gram
matrix.

    >>> ctx = ParahoricCtx(get_group("A1_sl"), (1,))
    >>> [ctx.W.name_word(u) for u in ctx.wf0]
    ['e', 's1']
    >>> ctx.gram_matrix().tolist()
    [['1', '0'], ['a + b', '1']]
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from .coeff import ExactMatrix, ZetaCoeff, det, is_unit_zeta
from .hecke import HeckeAlgebra, HeckeElt, get_algebra
from .rootdata import AffineRoot
from .weyl import WeylElt, WeylGroup, get_group, permutation_sign

__all__ = [
    "StdFacet",
    "FacetGeometry",
    "ParahoricCtx",
    "get_geometry",
    "get_ctx",
    "parse_facet",
]


class StdFacet(NamedTuple):
    """A facet of the closed standard chamber, given by its fixing set ``S`` (sorted)."""

    S: Tuple[int, ...]

    def label(self) -> str:
        return ",".join(f"s{j}" for j in self.S) if self.S else "C"


class FacetGeometry:
    """Type bookkeeping for the closed standard chamber of one group.

    The chamber is a product of simplices, one per irreducible component;
    ``comp_of[j]`` is the component of the simple affine reflection ``s_j``.
    """

    def __init__(self, W: WeylGroup):
        self.W = W
        rd = W.rd
        comp_of_simple = {}
        for c, comp in enumerate(rd.components):
            for i in comp:
                comp_of_simple[i] = c
        self.comp_of: List[int] = []
        for A in W.simple_roots:
            if A.level == 0:
                self.comp_of.append(comp_of_simple[A.root])
            else:
                support = [p for p, v in enumerate(rd.coords[A.root]) if v]
                self.comp_of.append(comp_of_simple[rd.simple[support[0]]])
        self.ncomp = len(rd.components)
        self.types: Tuple[int, ...] = tuple(range(W.nsimple))
        self.comp_types: List[Tuple[int, ...]] = [
            tuple(j for j in self.types if self.comp_of[j] == c) for c in range(self.ncomp)
        ]
        self.d = rd.d

    # --- facets ------------------------------------------------------------
    def is_proper(self, S: Iterable[int]) -> bool:
        Sset = set(S)
        return all(not set(ct) <= Sset for ct in self.comp_types)

    def vertex_types(self, S: Sequence[int]) -> Tuple[int, ...]:
        Sset = set(S)
        return tuple(j for j in self.types if j not in Sset)

    def dim(self, S: Sequence[int]) -> int:
        return len(self.vertex_types(S)) - self.ncomp

    def std_facets(self, i: int) -> List[StdFacet]:
        """All standard facets of dimension ``i``, lexicographically."""
        if not 0 <= i <= self.d:
            raise ValueError(f"facet dimension {i} outside 0..{self.d}")
        size = len(self.types) - self.ncomp - i
        out = [StdFacet(S) for S in combinations(self.types, size) if self.is_proper(S)]
        return sorted(out)

    def permute(self, omega: WeylElt, S: Sequence[int]) -> Tuple[int, ...]:
        perm = self.W.omega_perm(omega)
        return tuple(sorted(perm[j] for j in S))

    def orbit_reps(self, i: int) -> List[StdFacet]:
        """One standard facet per ``Omega``-orbit in dimension ``i`` (the lexicographically least)."""
        reps = []
        for F in self.std_facets(i):
            orbit = {self.permute(om, F.S) for om in self.W.omega_reps()}
            if min(orbit) == F.S:
                reps.append(F)
        return reps

    def orbit_rep(self, S: Sequence[int]) -> Tuple[StdFacet, WeylElt]:
        """``(G, omega)`` with ``G`` the orbit representative and ``omega G = S``.

        Among valid ``omega`` the first in ``omega_reps`` order is taken.
        """
        S = tuple(sorted(S))
        best = min(self.permute(om, S) for om in self.W.omega_reps())
        for om in self.W.omega_reps():
            if self.permute(om, best) == S:
                return StdFacet(best), om
        raise AssertionError("orbit representative not reached")

    # --- orientation -----------------------------------------------------------
    def omega_sign(self, omega: WeylElt, S: Sequence[int]) -> int:
        """Sign comparing ``omega`` applied to the ascending orientation of ``S`` with the ascending one of ``omega S``."""
        perm = self.W.omega_perm(omega)
        images = [perm[j] for j in self.vertex_types(S)]
        order = sorted(images)
        return permutation_sign([order.index(x) for x in images])

    def face_sign(self, S: Sequence[int], k: int) -> int:
        """Incidence sign of the face obtained by dropping vertex type ``k``.

        In a product of simplices the face in factor ``c`` carries the sign
        ``(-1)^(dims of earlier factors + position of k within factor c)``.
        """
        J = self.vertex_types(S)
        c = self.comp_of[k]
        before = 0
        for c2 in range(c):
            before += sum(1 for j in J if self.comp_of[j] == c2) - 1
        pos = [j for j in J if self.comp_of[j] == c].index(k)
        return -1 if (before + pos) % 2 else 1

    def faces(self, S: Sequence[int]) -> List[Tuple[Tuple[int, ...], int, int]]:
        """Codimension-one faces of a standard facet: ``(S', sign, dropped type)``."""
        out = []
        for k in self.vertex_types(S):
            S2 = tuple(sorted(tuple(S) + (k,)))
            if self.is_proper(S2):
                out.append((S2, self.face_sign(S, k), k))
        return out


class ParahoricCtx:
    """Data attached to a standard facet ``F`` (given by its fixing set ``S``)."""

    def __init__(self, W: WeylGroup, S: Sequence[int], alg: Optional[HeckeAlgebra] = None):
        self.W = W
        self.geom = get_geometry(W)
        S = tuple(sorted(set(S)))
        if any(not 0 <= j < W.nsimple for j in S):
            raise ValueError(f"fixing set {S} uses unknown simple reflections")
        if not self.geom.is_proper(S):
            raise ValueError(f"fixing set {S} contains a whole component")
        self.S = S
        self.facet = StdFacet(S)
        self.J = self.geom.vertex_types(S)
        self.dim = self.geom.dim(S)
        self.alg = alg if alg is not None else get_algebra(W)

        # W_F^0 by closure under right multiplication
        elems = {W.e}
        frontier = [W.e]
        while frontier:
            nxt = []
            for w in frontier:
                for j in S:
                    v = W.mul(w, W.s[j])
                    if v not in elems:
                        elems.add(v)
                        nxt.append(v)
            frontier = nxt
        self.wf0: List[WeylElt] = sorted(elems, key=W.word_key)
        top = max(W.length(u) for u in self.wf0)
        longest = [u for u in self.wf0 if W.length(u) == top]
        if len(longest) != 1:
            raise AssertionError("W_F^0 has no unique longest element")
        self.w0 = longest[0]
        self.omegaF: List[WeylElt] = [om for om in W.omega_reps() if self.geom.permute(om, S) == S]
        reps = {W.canonical(W.mul(u, om)) for u in self.wf0 for om in self.omegaF}
        self.wf_reps: List[WeylElt] = sorted(reps, key=W.word_key)

        # Phi_F: the W_F^0-orbit of the simple affine roots in S and their negatives
        roots: Set[AffineRoot] = set()
        for j in S:
            A = W.simple_roots[j]
            for u in self.wf0:
                B = W.act(u, A)
                roots.add(B)
                roots.add(AffineRoot(W.rd.neg[B.root], -B.level))
        self.phiF: List[AffineRoot] = sorted(roots)
        self.phiF_pos: List[AffineRoot] = [A for A in self.phiF if W.is_positive(A)]

    def __repr__(self) -> str:
        return f"ParahoricCtx({self.W.rd.name}, {self.facet.label()})"

    # --- cosets -------------------------------------------------------------
    def in_DF(self, d: WeylElt) -> bool:
        W = self.W
        return all(W.is_positive(W.act(d, A)) for A in self.phiF_pos)

    def min_rep(self, w: WeylElt) -> WeylElt:
        """The minimal-length element of ``w W_F^0`` (by stripping right descents in ``S``)."""
        W = self.W
        changed = True
        while changed:
            changed = False
            lw = W.length(w)
            for j in self.S:
                v = W.mul(w, W.s[j])
                if W.length(v) < lw:
                    w, changed = v, True
                    break
        return w

    def factor(self, w: WeylElt) -> Tuple[WeylElt, WeylElt]:
        """``w = d u`` with ``d`` in ``D_F`` and ``u`` in ``W_F^0``."""
        d = self.min_rep(w)
        return d, self.W.mul(self.W.inv(d), w)

    def enumerate_DF(self, L: int) -> List[WeylElt]:
        """All ``d`` in ``D_F`` inside ``W_aff`` with ``l(d) <= L``."""
        return [d for d in self.W.ball(L) if self.in_DF(d)]

    def dagger_rep(self, d: WeylElt) -> WeylElt:
        """Canonical representative of ``d Omega_F`` modulo ``Q^perp`` (minimal word)."""
        W = self.W
        return min((W.canonical(W.mul(d, om)) for om in self.omegaF), key=W.word_key)

    def dagger_reps(self, L: int) -> List[WeylElt]:
        """Representatives of ``W / W_F`` of length ``<= L``, one per ``Omega_F``-orbit in ``D_F``."""
        W = self.W
        out = set()
        for w in W.window(L):
            if self.in_DF(w):
                out.add(self.dagger_rep(w))
        return sorted(out, key=W.word_key)

    def split_WF(self, x: WeylElt) -> Tuple[WeylElt, WeylElt]:
        """Write ``x = d u`` with ``d`` a dagger representative and ``u`` in ``W_F``."""
        W = self.W
        d0 = self.min_rep(x)
        d = self.dagger_rep(d0)
        u = W.mul(W.inv(d), x)
        if not self.in_WF(u):
            raise AssertionError("coset split left the facet stabiliser")
        return d, u

    def classify(self, j: int, d: WeylElt) -> str:
        """Type (``A``, ``B.i`` or ``B.ii``) of ``d F`` for ``s_j``; ``d`` must lie in ``D_F``."""
        W = self.W
        sd = W.mul(W.s[j], d)
        if W.length(sd) < W.length(d):
            return "A"
        if self.in_DF(sd):
            return "B.i"
        u = W.mul(W.inv(d), sd)
        if u not in set(self.wf0):
            raise AssertionError("type B.ii element does not factor through W_F^0")
        return "B.ii"

    # --- W_F and its characters ------------------------------------------------
    def in_WF(self, w: WeylElt) -> bool:
        W = self.W
        rw = W.reduced_word(w)
        if self.geom.permute(rw.omega, self.S) != self.S:
            return False
        return all(j in self.S for j in rw.letters)

    def epsilon(self, w: WeylElt) -> int:
        """Orientation character: sign of the permutation ``w`` induces on the vertex types."""
        if not self.in_WF(w):
            raise ValueError(f"{self.W.name_word(w)} does not stabilise the facet")
        return self.geom.omega_sign(self.W.omega_part(w), self.S)

    def _check_support(self, x: HeckeElt) -> None:
        for w in {k[0] for k in x.raw_terms()}:
            if not self.in_WF(w):
                raise ValueError(f"T[{self.W.name_word(w)}] is not in the parahoric subalgebra")

    def jF(self, x: HeckeElt) -> HeckeElt:
        self._check_support(x)
        return HeckeElt._raw(self.alg, {k: c * self.epsilon(k[0]) for k, c in x.raw_terms().items()})

    def iF(self, x: HeckeElt) -> HeckeElt:
        self._check_support(x)
        W = self.W
        out: Dict = {}
        for (w, i, j), c in x.raw_terms().items():
            key = (W.conj(self.w0, w), i, j)
            out[key] = out.get(key, 0) + c
        return HeckeElt(self.alg, out)

    # --- trace and Gram matrix ---------------------------------------------------
    def theta(self, x: HeckeElt) -> ZetaCoeff:
        """Read off the coefficients of ``xi w0`` for ``xi`` in ``Q^perp``."""
        self._check_support(x)
        W = self.W
        k = W.rd.qperp_rank
        base_exps, base = W.qperp_reduce(self.w0)
        base_exps = tuple(base_exps)
        out: Dict[Tuple[int, ...], int] = {}
        for (w, i, j), c in x.raw_terms().items():
            exps, rep = W.qperp_reduce(w)
            if rep != base:
                continue
            rel = tuple(e - e0 for e, e0 in zip(exps, base_exps)) if k else ()
            key = (i, j) + rel
            out[key] = out.get(key, 0) + c
        return ZetaCoeff(out, k)

    def gram_matrix(self) -> ExactMatrix:
        """``M[i][j] = theta(T_{r_i} T_{r_j^{-1} w0})`` over ``wf_reps``."""
        W, H = self.W, self.alg
        rows = []
        for ri in self.wf_reps:
            row = []
            for rj in self.wf_reps:
                prod = H.mul(H.T(ri), H.T(W.mul(W.inv(rj), self.w0)))
                row.append(self.theta(prod))
            rows.append(row)
        return ExactMatrix(rows)

    def gram_report(self) -> Dict:
        M = self.gram_matrix()
        D = det(M)
        unit, witness = is_unit_zeta(D)
        return {
            "facet": self.facet.label(),
            "basis": [self.W.name_word(r) for r in self.wf_reps],
            "matrix": M.tolist(),
            "det": str(D),
            "unit": unit,
            "unit_witness": witness,
        }

    def nakayama_check(self) -> Dict:
        """``theta(i_F(T_w) T_v) = theta(T_v T_w)`` on all basis pairs, plus Gram invertibility."""
        H = self.alg
        failures = []
        for w in self.wf_reps:
            Tw = H.T(w)
            iTw = self.iF(Tw)
            for v in self.wf_reps:
                Tv = H.T(v)
                lhs = self.theta(H.mul(iTw, Tv))
                rhs = self.theta(H.mul(Tv, Tw))
                if lhs != rhs:
                    failures.append((self.W.name_word(w), self.W.name_word(v), str(lhs), str(rhs)))
        gram = self.gram_report()
        return {
            "facet": self.facet.label(),
            "pairs": len(self.wf_reps) ** 2,
            "failures": failures,
            "gram_unit": gram["unit"],
            "det": gram["det"],
            "ok": not failures and gram["unit"],
        }

    # --- freeness in a window ---------------------------------------------------
    def factorization_check(self, L: int) -> Dict:
        """Unique ``w = d u`` with additive length for all ``w`` in ``W_aff`` with ``l(w) <= L``."""
        W = self.W
        wf0 = set(self.wf0)
        bad = []
        ball = W.ball(L)
        for w in ball:
            hits = []
            for u in self.wf0:
                d = W.mul(w, W.inv(u))
                if self.in_DF(d):
                    hits.append((d, u))
            ok = len(hits) == 1 and W.length(w) == W.length(hits[0][0]) + W.length(hits[0][1])
            ok = ok and hits[0][1] in wf0 and hits[0] == self.factor(w)
            if not ok:
                bad.append(W.name_word(w))
        return {"facet": self.facet.label(), "checked": len(ball), "failures": bad, "ok": not bad}

    def freeness_check(self, L: int) -> Dict:
        """Every ``w`` with ``l(w) <= L`` is ``d x`` for exactly one dagger ``d`` and ``x`` in ``W_F``, lengths adding."""
        W = self.W
        reps = self.dagger_reps(L)
        seen: Dict[WeylElt, Tuple[WeylElt, WeylElt]] = {}
        clashes = []
        for d in reps:
            for x in self.wf_reps:
                w = W.canonical(W.mul(d, x))
                if W.length(w) > L:
                    continue
                if W.length(w) != W.length(d) + W.length(x):
                    clashes.append(("length", W.name_word(d), W.name_word(x)))
                if w in seen:
                    clashes.append(("repeat", W.name_word(d), W.name_word(x)))
                seen[w] = (d, x)
        window = set(W.window(L))
        missing = [W.name_word(w) for w in window - set(seen)]
        return {
            "facet": self.facet.label(),
            "window": len(window),
            "dagger_reps": len(reps),
            "clashes": clashes,
            "missing": missing,
            "ok": not clashes and not missing,
        }


_GEOMS: Dict[int, FacetGeometry] = {}
_CTXS: Dict[Tuple[int, Tuple[int, ...]], ParahoricCtx] = {}


def get_geometry(W: WeylGroup) -> FacetGeometry:
    g = _GEOMS.get(id(W))
    if g is None:
        g = FacetGeometry(W)
        _GEOMS[id(W)] = g
    return g


def get_ctx(W: WeylGroup, S: Sequence[int]) -> ParahoricCtx:
    key = (id(W), tuple(sorted(set(S))))
    ctx = _CTXS.get(key)
    if ctx is None:
        ctx = ParahoricCtx(W, key[1])
        _CTXS[key] = ctx
    return ctx


def parse_facet(text: str) -> Tuple[int, ...]:
    """``"s0,s1"`` -> ``(0, 1)``; ``"C"`` or ``""`` is the chamber itself.

    >>> parse_facet("s2, s0")
    (0, 2)
    """
    text = text.strip()
    if text in ("", "C", "none"):
        return ()
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item.startswith("s") or not item[1:].isdigit():
            raise ValueError(f"cannot parse simple reflection {item!r}")
        out.append(int(item[1:]))
    return tuple(sorted(set(out)))
