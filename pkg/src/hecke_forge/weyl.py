"""The extended affine Weyl group ``W = W_0 x X^vee``.

An element is stored as a pair ``(fin, cow)``: ``fin`` indexes an element
``u`` of the finite Weyl group (enumerated once per datum as a permutation of
the roots) and ``cow`` is a cocharacter ``x``. The pair denotes the element
that acts on affine roots by ``(alpha, r) -> (u alpha, r - <alpha, x>)``.
Requiring this to be a left action fixes the product law::

    (u, x) (v, y) = (u v, v^{-1} x + y)

Lengths count inversions among positive affine roots; reduced words strip
right descents (smallest simple affine index first) and put the length-zero
part on the left, ``w = omega s_{j_1} ... s_{j_l}``.

    >>> W = WeylGroup(build_standard("A1_pgl"))
    >>> t = W.translation((1,))
    >>> W.length(t), W.reduced_word(t).letters
    (1, (1,))
    >>> W.length(W.mul(t, W.s[1]))
    0
    >>> W.epsilon_C(t)
    -1
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .rootdata import AffineRoot, RootDatum, build_standard, coset_reps, simple_affine

__all__ = ["WeylElt", "ReducedWord", "WeylGroup", "permutation_sign", "get_group", "coxeter_report"]

Vec = Tuple[int, ...]


class WeylElt(NamedTuple):
    """Element ``u t(x)`` of ``W``: ``fin`` indexes ``u`` in the finite group; ``cow`` is ``x``."""

    fin: int
    cow: Vec


class ReducedWord(NamedTuple):
    omega: WeylElt
    letters: Tuple[int, ...]


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of images of ``0..n-1``."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _matmul(a, b):
    n = len(a)
    m = len(b[0])
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(m)) for i in range(n))


def _matvec(m, v) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


class WeylGroup:
    """Arithmetic in the extended affine Weyl group of a root datum."""

    def __init__(self, rd: RootDatum):
        self.rd = rd
        n = rd.rank_X
        nroots = len(rd.roots)
        self.npos = len(rd.positive)
        eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

        # generators: simple reflections as root permutations and matrices
        gens = []
        for i in rd.simple:
            perm = tuple(rd.roots.index(rd.reflect(i, r)) for r in rd.roots)
            # matrix of s_alpha on X: x -> x - <x, alpha^vee> alpha
            av_row = [sum(rd.pairing[p][q] * rd.coroots[i][q] for q in range(n)) for p in range(n)]
            xm = tuple(tuple(int(p == q) - rd.roots[i][p] * av_row[q] for q in range(n)) for p in range(n))
            # matrix of s_alpha^vee on X^vee: y -> y - <alpha, y> alpha^vee
            a_row = rd.root_pair[i]
            cm = tuple(tuple(int(p == q) - rd.coroots[i][p] * a_row[q] for q in range(n)) for p in range(n))
            gens.append((perm, xm, cm))

        ident = (tuple(range(nroots)), eye, eye)
        elems = [ident]
        index = {ident[0]: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                p, xm, cm = elems[e]
                for gp, gx, gc in gens:
                    q = tuple(p[gp[k]] for k in range(nroots))
                    if q not in index:
                        index[q] = len(elems)
                        elems.append((q, _matmul(xm, gx), _matmul(cm, gc)))
                        nxt.append(index[q])
            frontier = nxt
        self.fin_perm = [e[0] for e in elems]
        self.fin_xmat = [e[1] for e in elems]
        self.fin_cmat = [e[2] for e in elems]
        self._fin_index = index
        nf = len(elems)
        self.order_W0 = nf
        self.fin_mult = [
            [index[tuple(self.fin_perm[u][self.fin_perm[v][k]] for k in range(nroots))] for v in range(nf)]
            for u in range(nf)
        ]
        self.fin_inv = [next(v for v in range(nf) if self.fin_mult[u][v] == 0) for u in range(nf)]
        self.refl = []
        for i in range(nroots):
            perm = tuple(rd.roots.index(rd.reflect(i, r)) for r in rd.roots)
            self.refl.append(index[perm])

        self.zero: Vec = (0,) * n
        self.e = WeylElt(0, self.zero)
        self.simple_roots: List[AffineRoot] = simple_affine(rd)
        self.nsimple = len(self.simple_roots)
        self.s: List[WeylElt] = [self.reflection(A) for A in self.simple_roots]
        self._len: Dict[WeylElt, int] = {}
        self._rw: Dict[WeylElt, ReducedWord] = {}
        self._omega_perm: Dict[WeylElt, Tuple[int, ...]] = {}
        self._balls: List[List[WeylElt]] = [[self.e]]
        self._omega_reps: Optional[List[WeylElt]] = None

    # ------------------------------------------------------------------
    # basic group law
    # ------------------------------------------------------------------
    def elt(self, fin: int, cow: Sequence[int]) -> WeylElt:
        return WeylElt(fin, tuple(cow))

    def translation(self, y: Sequence[int]) -> WeylElt:
        return WeylElt(0, tuple(y))

    def finite(self, fin: int) -> WeylElt:
        return WeylElt(fin, self.zero)

    def apply_fin_coweight(self, fin: int, y: Sequence[int]) -> Vec:
        return _matvec(self.fin_cmat[fin], y)

    def mul(self, v: WeylElt, w: WeylElt) -> WeylElt:
        u1, x = v
        u2, y = w
        vx = _matvec(self.fin_cmat[self.fin_inv[u2]], x) if u2 else x
        return WeylElt(self.fin_mult[u1][u2], tuple(p + q for p, q in zip(vx, y)))

    def prod(self, *ws: WeylElt) -> WeylElt:
        out = self.e
        for w in ws:
            out = self.mul(out, w)
        return out

    def inv(self, w: WeylElt) -> WeylElt:
        u, x = w
        ux = _matvec(self.fin_cmat[u], x)
        return WeylElt(self.fin_inv[u], tuple(-c for c in ux))

    def conj(self, g: WeylElt, w: WeylElt) -> WeylElt:
        """``g w g^{-1}``."""
        return self.mul(self.mul(g, w), self.inv(g))

    def act(self, w: WeylElt, A: AffineRoot) -> AffineRoot:
        u, x = w
        return AffineRoot(self.fin_perm[u][A.root], A.level - self.rd.pair_root(A.root, x))

    def is_positive(self, A: AffineRoot) -> bool:
        return A.level > 0 or (A.level == 0 and A.root < self.npos)

    def reflection(self, A: AffineRoot) -> WeylElt:
        """The reflection ``s_A = (s_alpha, r alpha^vee)``."""
        cv = self.rd.coroots[A.root]
        return WeylElt(self.refl[A.root], tuple(A.level * c for c in cv))

    def finite_matrix(self, w: WeylElt) -> Tuple[Tuple[int, ...], ...]:
        """Matrix of the finite part of ``w`` acting on characters."""
        return self.fin_xmat[w.fin]

    # ------------------------------------------------------------------
    # length and words
    # ------------------------------------------------------------------
    def length(self, w: WeylElt) -> int:
        cached = self._len.get(w)
        if cached is not None:
            return cached
        u, x = w
        perm = self.fin_perm[u]
        npos = self.npos
        total = 0
        for i, row in enumerate(self.rd.root_pair):
            k = sum(p * q for p, q in zip(row, x))
            flips = perm[i] >= npos
            if i < npos:
                if k > 0:
                    total += k
                if k >= 0 and flips:
                    total += 1
            else:
                if k > 1:
                    total += k - 1
                if k >= 1 and flips:
                    total += 1
        self._len[w] = total
        return total

    def length_enumerated(self, w: WeylElt) -> int:
        """Inversion count by listing affine roots with ``|r| <= B``.

        ``B = 1 + max |<alpha, x>|`` suffices because outside that band the
        sign of an affine root and of its image agree.
        """
        u, x = w
        bound = 1 + max(abs(self.rd.pair_root(i, x)) for i in range(len(self.rd.roots)))
        count = 0
        for i in range(len(self.rd.roots)):
            for r in range(-bound, bound + 1):
                A = AffineRoot(i, r)
                if self.is_positive(A) and not self.is_positive(self.act(w, A)):
                    count += 1
        return count

    def right_descents(self, w: WeylElt) -> List[int]:
        return [j for j, A in enumerate(self.simple_roots) if not self.is_positive(self.act(w, A))]

    def left_descents(self, w: WeylElt) -> List[int]:
        return self.right_descents(self.inv(w))

    def descent_step(self, w: WeylElt) -> Optional[int]:
        """Smallest index ``j`` with ``w(A_j)`` negative, or ``None``."""
        for j, A in enumerate(self.simple_roots):
            if not self.is_positive(self.act(w, A)):
                return j
        return None

    def reduced_word(self, w: WeylElt) -> ReducedWord:
        cached = self._rw.get(w)
        if cached is not None:
            return cached
        letters: List[int] = []
        cur = w
        while True:
            j = self.descent_step(cur)
            if j is None:
                break
            letters.append(j)
            cur = self.mul(cur, self.s[j])
        rw = ReducedWord(cur, tuple(reversed(letters)))
        self._rw[w] = rw
        return rw

    def from_word(self, omega: WeylElt, letters: Iterable[int]) -> WeylElt:
        out = omega
        for j in letters:
            out = self.mul(out, self.s[j])
        return out

    def all_reduced_words(self, w: WeylElt) -> List[Tuple[int, ...]]:
        """Every reduced word of the ``W_aff`` part of ``w`` (small lengths only)."""
        if self.length(w) == 0:
            return [()]
        out = []
        for j in self.right_descents(w):
            for word in self.all_reduced_words(self.mul(w, self.s[j])):
                out.append(word + (j,))
        return sorted(set(out))

    def omega_part(self, w: WeylElt) -> WeylElt:
        return self.reduced_word(w).omega

    def is_in_Waff(self, w: WeylElt) -> bool:
        return self.omega_part(w) == self.e

    def omega_perm(self, omega: WeylElt) -> Tuple[int, ...]:
        """Permutation of simple affine indices induced by a length-zero element."""
        cached = self._omega_perm.get(omega)
        if cached is not None:
            return cached
        if self.length(omega) != 0:
            raise ValueError("omega_perm needs a length-zero element")
        perm = tuple(self.simple_roots.index(self.act(omega, A)) for A in self.simple_roots)
        self._omega_perm[omega] = perm
        return perm

    def epsilon_C(self, w: WeylElt) -> int:
        """Sign of the permutation the length-zero part of ``w`` induces on the simple affine roots."""
        return permutation_sign(self.omega_perm(self.omega_part(w)))

    def word_key(self, w: WeylElt) -> Tuple:
        rw = self.reduced_word(w)
        return (len(rw.letters), rw.letters, rw.omega)

    def name_word(self, w: WeylElt) -> str:
        rw = self.reduced_word(w)
        parts = []
        if rw.omega != self.e:
            parts.append(f"w[{rw.omega.fin};{','.join(map(str, rw.omega.cow))}]")
        parts += [f"s{j}" for j in rw.letters]
        return "*".join(parts) if parts else "e"

    # ------------------------------------------------------------------
    # Q^perp and Omega
    # ------------------------------------------------------------------
    def braid_order(self, i: int, j: int, cap: int = 12) -> Optional[int]:
        """Order of ``s_i s_j``, or ``None`` if it exceeds ``cap`` (the infinite rank-one case)."""
        st = self.mul(self.s[i], self.s[j])
        cur = st
        for m in range(1, cap + 1):
            if cur == self.e:
                return m
            cur = self.mul(cur, st)
        return None

    def qperp_reduce(self, w: WeylElt) -> Tuple[Vec, WeylElt]:
        """Write ``w = t(xi) w0`` with ``xi`` in ``Q^perp``; return (exponents of xi, w0)."""
        if self.rd.qperp_rank == 0:
            return (), w
        rep, exps = self.rd.qperp_split(w.cow)
        return exps, WeylElt(w.fin, rep)

    def canonical(self, w: WeylElt) -> WeylElt:
        return self.qperp_reduce(w)[1]

    def qperp_elt(self, exps: Sequence[int]) -> WeylElt:
        return WeylElt(0, self.rd.qperp_vector(exps))

    def omega_reps(self) -> List[WeylElt]:
        """Representatives of ``Omega / Q^perp``, identity first.

        Cosets of ``W_aff Q^perp`` in ``W`` are indexed by cocharacters modulo
        the coroot lattice plus ``Q^perp``; the representative in each coset
        is the length-zero part of the corresponding translation.
        """
        if self._omega_reps is None:
            rd = self.rd
            gens = [rd.coroots[i] for i in rd.simple] + list(rd.qperp_basis)
            reps = []
            for y in coset_reps(rd, gens):
                om = self.canonical(self.omega_part(self.translation(y)))
                if self.length(om) != 0:
                    raise AssertionError("omega representative with positive length")
                reps.append(om)
            reps = sorted(set(reps), key=lambda w: (w != self.e, w))
            self._omega_reps = reps
        return list(self._omega_reps)

    def omega_class(self, omega: WeylElt) -> WeylElt:
        """The stored representative of the class of ``omega`` modulo ``Q^perp``."""
        return self.canonical(omega)

    # ------------------------------------------------------------------
    # enumeration
    # ------------------------------------------------------------------
    def ball(self, L: int) -> List[WeylElt]:
        """All elements of ``W_aff`` of length ``<= L``, by length then word."""
        while len(self._balls) <= L:
            last = self._balls[-1]
            seen = set()
            layer = []
            for w in last:
                for j in range(self.nsimple):
                    v = self.mul(w, self.s[j])
                    if v not in seen and self.length(v) == len(self._balls):
                        seen.add(v)
                        layer.append(v)
            layer.sort(key=self.word_key)
            self._balls.append(layer)
        out: List[WeylElt] = []
        for layer in self._balls[: L + 1]:
            out.extend(layer)
        return out

    def sphere(self, k: int) -> List[WeylElt]:
        self.ball(k)
        return list(self._balls[k])

    def window(self, L: int) -> List[WeylElt]:
        """Representatives modulo ``Q^perp`` of the elements of ``W`` of length ``<= L``."""
        out = []
        for om in self.omega_reps():
            for v in self.ball(L):
                out.append(self.canonical(self.mul(om, v)))
        out.sort(key=self.word_key)
        return out


_GROUPS: Dict[str, WeylGroup] = {}


def get_group(rd_or_name) -> WeylGroup:
    """Shared group object for a catalog name or datum (a group is returned unchanged)."""
    if isinstance(rd_or_name, WeylGroup):
        return rd_or_name
    if isinstance(rd_or_name, str):
        rd = build_standard(rd_or_name)
    else:
        rd = rd_or_name
    key = repr(rd)
    grp = _GROUPS.get(key)
    if grp is None:
        grp = WeylGroup(rd)
        _GROUPS[key] = grp
    return grp


def coxeter_report(W: WeylGroup, L: int) -> Dict[str, object]:
    """Length and descent combinatorics on the window of radius ``L``.

    * ``l(w s_A) = l(w) + 1`` exactly when ``w(A) > 0``, for every simple ``A``;
    * the closed length formula agrees with inversion enumeration;
    * conjugation by each ``Omega`` representative permutes the simple reflections;
    * ``epsilon_C`` is multiplicative on pairs from the radius-2 window.
    """
    failures: List[Tuple[str, str]] = []
    window = W.window(L)
    for w in window:
        lw = W.length(w)
        if lw != W.length_enumerated(w):
            failures.append(("length formula", W.name_word(w)))
        for j, A in enumerate(W.simple_roots):
            up = W.length(W.mul(w, W.s[j])) == lw + 1
            if up != W.is_positive(W.act(w, A)):
                failures.append(("additivity", f"{W.name_word(w)} s{j}"))
    simple = set(W.s)
    for om in W.omega_reps():
        if {W.conj(om, s) for s in W.s} != simple:
            failures.append(("omega conjugation", W.name_word(om)))
    small = W.window(2)
    for x in small:
        for y in small:
            if W.epsilon_C(W.mul(x, y)) != W.epsilon_C(x) * W.epsilon_C(y):
                failures.append(("epsilon_C", f"{W.name_word(x)} {W.name_word(y)}"))
    return {"datum": W.rd.name, "L": L, "elements": len(window), "failures": failures, "ok": not failures}
