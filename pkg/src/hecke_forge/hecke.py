"""The generic Hecke algebra ``H_{a,b}`` of an extended affine Weyl group.

``H_{a,b}`` is free over ``Z[a, b]`` on ``T_w`` (``w`` in ``W``) with

* ``T_v T_w = T_{vw}`` whenever ``l(vw) = l(v) + l(w)``,
* ``(T_s - a)(T_s - b) = 0`` for every simple affine reflection ``s``.

Elements are sparse. Internally a :class:`HeckeElt` keys its integer
coefficients by ``(w, deg_a, deg_b)``, which keeps the hot multiplication
loop free of polynomial objects; :meth:`HeckeElt.coeff` rebuilds the
``ABPoly`` coefficient of a given ``T_w`` on demand.

Products of basis elements are computed by peeling the last letter off the
left factor's reduced word and applying the generator rule
``T_s T_w = T_{sw}`` (if ``l(sw) > l(w)``) or ``(a+b) T_w - ab T_{sw}``; the
results are memoised per pair.

    >>> H = HeckeAlgebra(get_group("A1_sl"))
    >>> s = H.T(H.W.s[1])
    >>> print(s * s)
    -a*b*T[e] + (a + b)*T[s1]

Specialisations: ``numeric`` (``a, b`` to rationals, giving
:class:`NumericHecke` elements), ``H0`` (``a = 0, b = 1``), ``H00``
(``a = b = 0``) and ``Rees_Hq``, which sends ``a -> -q x``, ``b -> x`` and
``T_w -> (-x)^{l(w)} tau_w`` into the classical algebra with
``tau_s^2 = (q - 1) tau_s + q`` (:class:`HqAlgebra`).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .coeff import AB_RING, ABPoly, Poly, PolyRing
from .weyl import WeylElt, WeylGroup, get_group

__all__ = [
    "HeckeAlgebra",
    "HeckeElt",
    "NumericHecke",
    "HqAlgebra",
    "Specialization",
    "QX_RING",
    "parse_expression",
    "get_algebra",
    "h00_product",
    "parse_word",
    "ring_axioms_report",
    "involution_report",
    "specialization_report",
]

Key = Tuple[WeylElt, int, int]
Terms = Dict[Key, int]

QX_RING = PolyRing(("q", "x"))


def _acc(out: Dict, key, c) -> None:
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class HeckeElt:
    """An element ``sum c_w T_w`` of ``H_{a,b}`` (coefficients in ``Z[a,b]``)."""

    __slots__ = ("alg", "_t")

    def __init__(self, alg: "HeckeAlgebra", terms: Optional[Terms] = None):
        self.alg = alg
        self._t: Terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, alg: "HeckeAlgebra", terms: Terms) -> "HeckeElt":
        obj = object.__new__(cls)
        obj.alg = alg
        obj._t = terms
        return obj

    # --- views -----------------------------------------------------------
    def raw_terms(self) -> Terms:
        return self._t

    def support(self) -> List[WeylElt]:
        return sorted({k[0] for k in self._t}, key=self.alg.W.word_key)

    def coeff(self, w: WeylElt) -> ABPoly:
        return ABPoly({(i, j): c for (v, i, j), c in self._t.items() if v == w})

    def terms(self) -> Dict[WeylElt, ABPoly]:
        grouped: Dict[WeylElt, Dict[Tuple[int, int], int]] = {}
        for (w, i, j), c in self._t.items():
            grouped.setdefault(w, {})[(i, j)] = c
        return {w: ABPoly(grouped[w]) for w in sorted(grouped, key=self.alg.W.word_key)}

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    # --- arithmetic ---------------------------------------------------------
    def _check(self, other: "HeckeElt") -> None:
        if other.alg is not self.alg:
            raise TypeError("elements of different Hecke algebras")

    def __add__(self, other: Any) -> "HeckeElt":
        if isinstance(other, (int, Poly)):
            other = self.alg.scalar(other)
        if not isinstance(other, HeckeElt):
            return NotImplemented
        self._check(other)
        out = dict(self._t)
        for k, c in other._t.items():
            _acc(out, k, c)
        return HeckeElt._raw(self.alg, out)

    __radd__ = __add__

    def __neg__(self) -> "HeckeElt":
        return HeckeElt._raw(self.alg, {k: -c for k, c in self._t.items()})

    def __sub__(self, other: Any) -> "HeckeElt":
        if isinstance(other, (int, Poly)):
            other = self.alg.scalar(other)
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "HeckeElt":
        return (-self) + other

    def scale(self, p: Union[int, Poly]) -> "HeckeElt":
        if isinstance(p, int):
            if not p:
                return HeckeElt._raw(self.alg, {})
            return HeckeElt._raw(self.alg, {k: c * p for k, c in self._t.items()})
        if p.ring is not AB_RING:
            raise TypeError("Hecke scalars must lie in Z[a, b]")
        out: Terms = {}
        for (w, i, j), c in self._t.items():
            for (pi, pj), pc in p.terms.items():
                _acc(out, (w, i + pi, j + pj), c * pc)
        return HeckeElt._raw(self.alg, out)

    def __mul__(self, other: Any) -> "HeckeElt":
        if isinstance(other, (int, Poly)):
            return self.scale(other)
        if not isinstance(other, HeckeElt):
            return NotImplemented
        self._check(other)
        return self.alg.mul(self, other)

    def __rmul__(self, other: Any) -> "HeckeElt":
        if isinstance(other, (int, Poly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HeckeElt):
            return self.alg is other.alg and self._t == other._t
        if isinstance(other, int):
            return self == self.alg.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for w, p in self.terms().items():
            name = f"T[{self.alg.W.name_word(w)}]"
            if len(p) == 1:
                (e, c), = p.terms.items()
                mono = str(ABPoly({e: abs(c)}))
                sign = "-" if c < 0 else "+"
                body = name if mono == "1" else f"{mono}*{name}"
            else:
                sign, body = "+", f"({p})*{name}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"HeckeElt({self})"

    def to_json(self) -> Dict[str, str]:
        return {self.alg.W.name_word(w): str(p) for w, p in self.terms().items()}


class HeckeAlgebra:
    """Arithmetic in ``H_{a,b}``, with its involutions and specialisations."""

    def __init__(self, W: WeylGroup):
        self.W = W
        self._bp: Dict[Tuple[WeylElt, WeylElt], Terms] = {}
        self._iota: Dict[WeylElt, HeckeElt] = {}
        self.a = ABPoly.gen("a")
        self.b = ABPoly.gen("b")

    # --- constructors --------------------------------------------------------
    def T(self, w: WeylElt, coeff: Union[int, Poly] = 1) -> HeckeElt:
        elt = HeckeElt._raw(self, {(w, 0, 0): 1})
        return elt if coeff == 1 else elt.scale(coeff)

    def Ts(self, j: int) -> HeckeElt:
        return self.T(self.W.s[j])

    def one(self) -> HeckeElt:
        return self.T(self.W.e)

    def zero(self) -> HeckeElt:
        return HeckeElt._raw(self, {})

    def scalar(self, p: Union[int, Poly]) -> HeckeElt:
        return self.one().scale(p)

    def from_terms(self, terms: Mapping[WeylElt, Union[int, Poly]]) -> HeckeElt:
        out = self.zero()
        for w, p in terms.items():
            out = out + self.T(w, p)
        return out

    # --- multiplication ---------------------------------------------------------
    def gen_left(self, j: int, y: WeylElt) -> Terms:
        """``T_{s_j} T_y`` as a term map."""
        W = self.W
        sy = W.mul(W.s[j], y)
        if W.length(sy) > W.length(y):
            return {(sy, 0, 0): 1}
        return {(y, 1, 0): 1, (y, 0, 1): 1, (sy, 1, 1): -1}

    def basis_product(self, x: WeylElt, y: WeylElt) -> Terms:
        """``T_x T_y`` as a term map (memoised)."""
        key = (x, y)
        cached = self._bp.get(key)
        if cached is not None:
            return cached
        W = self.W
        lx = W.length(x)
        xy = W.mul(x, y)
        if lx == 0 or W.length(xy) == lx + W.length(y):
            res: Terms = {(xy, 0, 0): 1}
        else:
            rw = W.reduced_word(x)
            j = rw.letters[-1]
            xp = W.mul(x, W.s[j])
            res = {}
            for (z, i, k), c in self.gen_left(j, y).items():
                for (w, i2, k2), c2 in self.basis_product(xp, z).items():
                    _acc(res, (w, i + i2, k + k2), c * c2)
        self._bp[key] = res
        return res

    def mul(self, h1: HeckeElt, h2: HeckeElt) -> HeckeElt:
        g1: Dict[WeylElt, List[Tuple[int, int, int]]] = {}
        for (w, i, j), c in h1._t.items():
            g1.setdefault(w, []).append((i, j, c))
        g2: Dict[WeylElt, List[Tuple[int, int, int]]] = {}
        for (w, i, j), c in h2._t.items():
            g2.setdefault(w, []).append((i, j, c))
        out: Terms = {}
        for x, l1 in g1.items():
            for y, l2 in g2.items():
                prod = self.basis_product(x, y)
                for i1, j1, c1 in l1:
                    for i2, j2, c2 in l2:
                        cc = c1 * c2
                        di, dj = i1 + i2, j1 + j2
                        for (w, i, j), c in prod.items():
                            _acc(out, (w, i + di, j + dj), c * cc)
        return HeckeElt._raw(self, out)

    def product(self, *hs: HeckeElt) -> HeckeElt:
        out = self.one()
        for h in hs:
            out = self.mul(out, h)
        return out

    def word_product(self, omega: WeylElt, letters: Sequence[int]) -> HeckeElt:
        """``T_omega T_{s_{j_1}} ... T_{s_{j_k}}`` multiplied letter by letter."""
        out = self.T(omega)
        for j in letters:
            out = self.mul(out, self.Ts(j))
        return out

    # --- involutions --------------------------------------------------------------
    def iota_gen(self, j: int) -> HeckeElt:
        """``iota(T_s) = a + b - T_s``."""
        return self.scalar(self.a + self.b) - self.Ts(j)

    def iota_word(self, omega: WeylElt, letters: Sequence[int]) -> HeckeElt:
        out = self.T(omega)
        for j in letters:
            out = self.mul(out, self.iota_gen(j))
        return out

    def iota_basis(self, w: WeylElt) -> HeckeElt:
        cached = self._iota.get(w)
        if cached is None:
            rw = self.W.reduced_word(w)
            cached = self.iota_word(rw.omega, rw.letters)
            self._iota[w] = cached
        return cached

    def iota(self, h: HeckeElt) -> HeckeElt:
        out: Terms = {}
        for (w, i, j), c in h._t.items():
            for (v, i2, j2), c2 in self.iota_basis(w)._t.items():
                _acc(out, (v, i + i2, j + j2), c * c2)
        return HeckeElt._raw(self, out)

    def jC(self, h: HeckeElt) -> HeckeElt:
        eps = self.W.epsilon_C
        return HeckeElt._raw(self, {k: c * eps(k[0]) for k, c in h._t.items()})

    def upiota(self, h: HeckeElt) -> HeckeElt:
        """``iota`` composed with ``j_C``."""
        return self.iota(self.jC(h))

    def upiota_basis(self, w: WeylElt) -> HeckeElt:
        return self.iota_basis(w).scale(self.W.epsilon_C(w))

    # --- grading ---------------------------------------------------------------------
    def filtration_degree(self, h: HeckeElt) -> int:
        if not h._t:
            return -1
        return max(self.W.length(w) + i + j for (w, i, j) in h._t)

    def homogeneous_parts(self, h: HeckeElt) -> Dict[int, HeckeElt]:
        parts: Dict[int, Terms] = {}
        for (w, i, j), c in h._t.items():
            parts.setdefault(self.W.length(w) + i + j, {})[(w, i, j)] = c
        return {k: HeckeElt._raw(self, t) for k, t in sorted(parts.items())}

    # --- specialisations -----------------------------------------------------------
    def numeric(self, a0, b0) -> "NumericHecke":
        return NumericHecke(self, a0, b0)

    def specialize(self, h: HeckeElt, spec: "Specialization"):
        return spec.apply(self, h)


class NumericHecke:
    """``H_{a,b}`` with ``a``, ``b`` specialised to numbers.

    Elements are plain dicts ``w -> value``; products come from the symbolic
    basis products evaluated at ``(a0, b0)``.
    """

    def __init__(self, alg: HeckeAlgebra, a0, b0):
        self.alg = alg
        self.W = alg.W
        self.a0 = a0
        self.b0 = b0
        self._bp: Dict[Tuple[WeylElt, WeylElt], Dict[WeylElt, Any]] = {}
        self._pow: Dict[Tuple[int, int], Any] = {}

    def _ab(self, i: int, j: int):
        key = (i, j)
        v = self._pow.get(key)
        if v is None:
            v = (self.a0 ** i) * (self.b0 ** j)
            self._pow[key] = v
        return v

    def from_symbolic(self, h: HeckeElt) -> Dict[WeylElt, Any]:
        out: Dict[WeylElt, Any] = {}
        for (w, i, j), c in h.raw_terms().items():
            _acc(out, w, c * self._ab(i, j))
        return out

    def basis_product(self, x: WeylElt, y: WeylElt) -> Dict[WeylElt, Any]:
        key = (x, y)
        cached = self._bp.get(key)
        if cached is None:
            cached = {}
            for (w, i, j), c in self.alg.basis_product(x, y).items():
                _acc(cached, w, c * self._ab(i, j))
            self._bp[key] = cached
        return cached

    def mul(self, h1: Mapping[WeylElt, Any], h2: Mapping[WeylElt, Any]) -> Dict[WeylElt, Any]:
        out: Dict[WeylElt, Any] = {}
        for x, c1 in h1.items():
            for y, c2 in h2.items():
                cc = c1 * c2
                for w, c in self.basis_product(x, y).items():
                    _acc(out, w, c * cc)
        return out

    def left_T(self, x: WeylElt, h: Mapping[WeylElt, Any]) -> Dict[WeylElt, Any]:
        """``T_x h``."""
        out: Dict[WeylElt, Any] = {}
        for y, c2 in h.items():
            for w, c in self.basis_product(x, y).items():
                _acc(out, w, c * c2)
        return out


def h00_product(W: WeylGroup, x: WeylElt, y: WeylElt) -> Optional[WeylElt]:
    """Degenerate product rule at ``a = b = 0``: ``T_{xy}`` if lengths add, else 0 (``None``)."""
    xy = W.mul(x, y)
    if W.length(xy) == W.length(x) + W.length(y):
        return xy
    return None


class HqAlgebra:
    """The classical affine Hecke algebra in the basis ``tau_w``.

    Relations: ``tau_v tau_w = tau_{vw}`` when lengths add and
    ``tau_s^2 = (q - 1) tau_s + q``. The parameter ``q`` is any ring element
    (a polynomial in ``QX_RING`` or a rational number); elements are dicts
    ``w -> coefficient``.
    """

    def __init__(self, W: WeylGroup, q, one=1):
        self.W = W
        self.q = q
        self.one_c = one
        self._bp: Dict[Tuple[WeylElt, WeylElt], Dict[WeylElt, Any]] = {}

    def gen_left(self, j: int, y: WeylElt) -> Dict[WeylElt, Any]:
        W = self.W
        sy = W.mul(W.s[j], y)
        if W.length(sy) > W.length(y):
            return {sy: self.one_c}
        return {y: self.q - self.one_c, sy: self.q}

    def basis_product(self, x: WeylElt, y: WeylElt) -> Dict[WeylElt, Any]:
        key = (x, y)
        cached = self._bp.get(key)
        if cached is not None:
            return cached
        W = self.W
        if W.length(x) == 0:
            res = {W.mul(x, y): self.one_c}
        else:
            rw = W.reduced_word(x)
            j = rw.letters[-1]
            xp = W.mul(x, W.s[j])
            res = {}
            for z, c in self.gen_left(j, y).items():
                for w, c2 in self.basis_product(xp, z).items():
                    _acc(res, w, c * c2)
        self._bp[key] = res
        return res

    def mul(self, h1: Mapping[WeylElt, Any], h2: Mapping[WeylElt, Any]) -> Dict[WeylElt, Any]:
        out: Dict[WeylElt, Any] = {}
        for x, c1 in h1.items():
            for y, c2 in h2.items():
                cc = c1 * c2
                for w, c in self.basis_product(x, y).items():
                    _acc(out, w, c * cc)
        return out

    def tau(self, w: WeylElt) -> Dict[WeylElt, Any]:
        return {w: self.one_c}

    def inverse_basis(self, w: WeylElt) -> Dict[WeylElt, Any]:
        """``tau_w^{-1}``, using ``tau_s^{-1} = q^{-1} (tau_s - (q - 1))``; needs invertible ``q``."""
        W = self.W
        rw = W.reduced_word(w)
        qinv = 1 / self.q
        out = {W.inv(rw.omega): self.one_c}
        # tau_w = tau_omega tau_{s_1} ... tau_{s_k}; invert in reverse order
        for j in rw.letters:
            inv_s = {W.s[j]: qinv * self.one_c, W.e: -(self.q - self.one_c) * qinv}
            out = self.mul(inv_s, out)
        return out

    def classical_involution(self, h: Mapping[WeylElt, Any]) -> Dict[WeylElt, Any]:
        """``tau_w -> (-q)^{l(w)} (tau_{w^{-1}})^{-1}``, extended linearly."""
        W = self.W
        out: Dict[WeylElt, Any] = {}
        for w, c in h.items():
            img = self.inverse_basis(W.inv(w))
            scale = (-self.q) ** W.length(w)
            for v, c2 in img.items():
                _acc(out, v, c * scale * c2)
        return out


class Specialization:
    """A named ring homomorphism out of ``H_{a,b}``.

    ``kind`` is one of ``H_ab``, ``Rees_Hq``, ``H0``, ``H00`` or ``numeric``
    (the last with ``a0``, ``b0``).
    """

    KINDS = ("H_ab", "Rees_Hq", "H0", "H00", "numeric")

    def __init__(self, kind: str, a0=None, b0=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown specialisation {kind!r}")
        if kind == "H0":
            a0, b0 = 0, 1
        elif kind == "H00":
            a0, b0 = 0, 0
        if kind == "numeric" and (a0 is None or b0 is None):
            raise ValueError("numeric specialisation needs a0 and b0")
        self.kind = kind
        self.a0 = Fraction(a0) if a0 is not None else None
        self.b0 = Fraction(b0) if b0 is not None else None

    def __repr__(self) -> str:
        if self.kind == "numeric":
            return f"Specialization(numeric, a={self.a0}, b={self.b0})"
        return f"Specialization({self.kind})"

    def target(self, alg: HeckeAlgebra):
        if self.kind == "H_ab":
            return alg
        if self.kind == "Rees_Hq":
            q = Poly({(1, 0): 1}, QX_RING)
            return HqAlgebra(alg.W, q, one=Poly({(0, 0): 1}, QX_RING))
        return NumericHecke(alg, self.a0, self.b0)

    def apply(self, alg: HeckeAlgebra, h: HeckeElt):
        if self.kind == "H_ab":
            return h
        if self.kind == "Rees_Hq":
            W = alg.W
            out: Dict[WeylElt, Poly] = {}
            for (w, i, j), c in h.raw_terms().items():
                l = W.length(w)
                sign = -1 if (i + l) % 2 else 1
                mono = Poly({(i, i + j + l): c * sign}, QX_RING)
                prev = out.get(w)
                tot = mono if prev is None else prev + mono
                if tot.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = tot
            return out
        return NumericHecke(alg, self.a0, self.b0).from_symbolic(h)


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def _generators(W: WeylGroup) -> List[WeylElt]:
    return list(W.s) + [om for om in W.omega_reps() if om != W.e]


def ring_axioms_report(W_or_name, samples: int = 1000, seed: int = 0, maxlen: int = 3) -> Dict[str, Any]:
    """Associativity and the defining relations, exactly over ``Z[a, b]``.

    Associativity is checked on every triple of generators (simple
    reflections and ``Omega`` representatives) and on ``samples`` random
    triples of basis elements with length ``<= maxlen``. The braid relation
    is checked for each pair ``s, t`` with ``st`` of finite order.
    """
    import random
    import time

    t0 = time.perf_counter()
    W = get_group(W_or_name)
    H = get_algebra(W)
    failures: List[str] = []
    gens = _generators(W)
    for x in gens:
        for y in gens:
            for z in gens:
                X, Y, Z = H.T(x), H.T(y), H.T(z)
                if (X * Y) * Z != X * (Y * Z):
                    failures.append(f"assoc {W.name_word(x)} {W.name_word(y)} {W.name_word(z)}")
    rng = random.Random(seed)
    pool = W.window(maxlen)
    for _ in range(samples):
        x, y, z = (rng.choice(pool) for _ in range(3))
        X, Y, Z = H.T(x), H.T(y), H.T(z)
        if (X * Y) * Z != X * (Y * Z):
            failures.append(f"assoc {W.name_word(x)} {W.name_word(y)} {W.name_word(z)}")
    braids = 0
    for i in range(W.nsimple):
        H_i = H.Ts(i)
        if (H_i - H.scalar(H.a)) * (H_i - H.scalar(H.b)):
            failures.append(f"quadratic s{i}")
        for j in range(i + 1, W.nsimple):
            m = W.braid_order(i, j)
            if m is None:
                continue
            braids += 1
            lhs = H.word_product(W.e, [(i, j)[k % 2] for k in range(m)])
            rhs = H.word_product(W.e, [(j, i)[k % 2] for k in range(m)])
            if lhs != rhs:
                failures.append(f"braid s{i} s{j}")
    return {"datum": W.rd.name, "generator_triples": len(gens) ** 3, "random_triples": samples,
            "braid_pairs": braids, "failures": failures, "ok": not failures,
            "seconds": round(time.perf_counter() - t0, 3)}


def involution_report(W_or_name, L: int = 3) -> Dict[str, Any]:
    """``iota``, ``j_C`` and their composite are involutive ring maps on the window of radius ``L``.

    Multiplicativity is checked on all pairs of basis elements of length
    ``<= L``, together with ``iota(T_s - a) = -(T_s - b)`` and that the
    composite fixes each central translation ``T_q``.
    """
    import time

    t0 = time.perf_counter()
    W = get_group(W_or_name)
    H = get_algebra(W)
    failures: List[str] = []
    window = W.window(L)
    maps = (("iota", H.iota), ("jC", H.jC), ("upiota", H.upiota))
    for x in window:
        X = H.T(x)
        for name, f in maps:
            if f(f(X)) != X:
                failures.append(f"{name} not involutive at {W.name_word(x)}")
    pairs = 0
    for x in window:
        X = H.T(x)
        for y in window:
            Y = H.T(y)
            XY = X * Y
            pairs += 1
            for name, f in maps:
                if f(XY) != f(X) * f(Y):
                    failures.append(f"{name} not multiplicative at {W.name_word(x)}, {W.name_word(y)}")
    for j in range(W.nsimple):
        Ts = H.Ts(j)
        if H.iota(Ts - H.scalar(H.a)) != -(Ts - H.scalar(H.b)):
            failures.append(f"iota(T_s - a) at s{j}")
    for k in range(W.rd.qperp_rank):
        for sign in (1, -1):
            q = W.qperp_elt([sign * int(i == k) for i in range(W.rd.qperp_rank)])
            if H.upiota(H.T(q)) != H.T(q):
                failures.append(f"upiota moves central T_q, q = {q.cow}")
    return {"datum": W.rd.name, "L": L, "elements": len(window), "pairs": pairs,
            "failures": failures, "ok": not failures, "seconds": round(time.perf_counter() - t0, 3)}


def specialization_report(W_or_name, samples: int = 1000, seed: int = 0, maxlen: int = 3) -> Dict[str, Any]:
    """Rees map against independent ``H_q`` arithmetic, and the degenerate product rule.

    For ``samples`` random pairs the image of ``T_x T_y`` must equal the
    ``H_q`` product of the images. The ``a = b = 0`` specialisation of
    ``T_x T_y`` must be ``T_{xy}`` when lengths add and 0 otherwise, on all
    pairs from the radius-2 window.
    """
    import random
    import time

    t0 = time.perf_counter()
    W = get_group(W_or_name)
    H = get_algebra(W)
    sp = Specialization("Rees_Hq")
    Hq = sp.target(H)
    rng = random.Random(seed)
    pool = W.window(maxlen)
    failures: List[str] = []
    for _ in range(samples):
        x, y = rng.choice(pool), rng.choice(pool)
        X, Y = H.T(x), H.T(y)
        if sp.apply(H, X * Y) != Hq.mul(sp.apply(H, X), sp.apply(H, Y)):
            failures.append(f"rees {W.name_word(x)} {W.name_word(y)}")
    h00 = Specialization("H00")
    small = W.window(2)
    for x in small:
        for y in small:
            got = {w: c for w, c in h00.apply(H, H.T(x) * H.T(y)).items() if c}
            w = h00_product(W, x, y)
            want = {} if w is None else {w: 1}
            if got != want:
                failures.append(f"h00 {W.name_word(x)} {W.name_word(y)}")
    return {"datum": W.rd.name, "random_pairs": samples, "h00_pairs": len(small) ** 2,
            "failures": failures, "ok": not failures, "seconds": round(time.perf_counter() - t0, 3)}


_ALGEBRAS: Dict[int, HeckeAlgebra] = {}


def get_algebra(W_or_name) -> HeckeAlgebra:
    """Shared algebra object (so memoised products are reused)."""
    W = get_group(W_or_name)
    alg = _ALGEBRAS.get(id(W))
    if alg is None:
        alg = HeckeAlgebra(W)
        _ALGEBRAS[id(W)] = alg
    return alg


# ---------------------------------------------------------------------------
# expression grammar
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(T\[[^\]]*\])|([ab])|(\^)|([-+*()]))")


def parse_word(alg: HeckeAlgebra, text: str) -> WeylElt:
    """Parse a group element: ``e``, ``s1*s0``, ``s1,s2``, ``t(1,0)``, ``o1`` (Omega representative 1)."""
    W = alg.W
    text = text.strip()
    if text in ("", "e", "1"):
        return W.e
    out = W.e
    for item in re.split(r"[*,](?![^()]*\))", text):
        item = item.strip()
        if not item or item == "e":
            continue
        if re.fullmatch(r"s\d+", item):
            j = int(item[1:])
            if j >= W.nsimple:
                raise ValueError(f"no simple reflection {item}")
            out = W.mul(out, W.s[j])
        elif re.fullmatch(r"o\d+", item):
            reps = W.omega_reps()
            k = int(item[1:])
            if k >= len(reps):
                raise ValueError(f"only {len(reps)} Omega representatives")
            out = W.mul(out, reps[k])
        elif item.startswith("t(") and item.endswith(")"):
            vec = tuple(int(x) for x in item[2:-1].split(",") if x.strip())
            if len(vec) != W.rd.rank_X:
                raise ValueError(f"translation {item} has the wrong rank")
            out = W.mul(out, W.translation(vec))
        else:
            raise ValueError(f"cannot parse group element {item!r}")
    return out


def parse_expression(alg: HeckeAlgebra, text: str) -> HeckeElt:
    """Evaluate an expression such as ``"(a+b)*T[s1] - a*b*T[e]"`` or ``"T[s1]*T[s1]"``."""
    tokens: List[Tuple[str, str]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected input at {text[pos:]!r}")
        pos = m.end()
        num, tw, ab, caret, op = m.groups()
        if num:
            tokens.append(("num", num))
        elif tw:
            tokens.append(("T", tw[2:-1]))
        elif ab:
            tokens.append(("ab", ab))
        elif caret:
            tokens.append(("op", "^"))
        else:
            tokens.append(("op", op))
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else ("end", "")

    def take():
        nonlocal idx
        tok = peek()
        idx += 1
        return tok

    def expr() -> HeckeElt:
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        val = term().scale(sign)
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term() -> HeckeElt:
        val = power()
        while peek() == ("op", "*"):
            take()
            val = alg.mul(val, power())
        return val

    def power() -> HeckeElt:
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, n = take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            out = alg.one()
            for _ in range(int(n)):
                out = alg.mul(out, base)
            return out
        return base

    def atom() -> HeckeElt:
        kind, val = take()
        if kind == "num":
            return alg.scalar(int(val))
        if kind == "ab":
            return alg.scalar(ABPoly.gen(val))
        if kind == "T":
            return alg.T(parse_word(alg, val))
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return -atom()
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if idx != len(tokens):
        raise ValueError(f"trailing input in expression {text!r}")
    return result
