"""Based root data together with their affine roots and lattices.

A root datum is stored in coordinates: characters ``X`` and cocharacters
``X^vee`` are both ``Z^n`` and the perfect pairing is an integer matrix
``P`` with ``<x, y> = x^T P y``. Roots and coroots are listed in matching
order, positive roots first (sorted by height), then their negatives in the
same order.

The shipped catalog::

    >>> rd = build_standard("A2_sl")
    >>> len(rd.roots), rd.d, qperp_and_xmodq(rd)[1]
    (6, 2, (3,))

Lattice computations (the integer kernel giving ``Q^perp`` and the invariant
factors of ``X/Q``) use the Smith normal form from sympy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from .coeff import ExactMatrix, solve_window

__all__ = [
    "RootDatum",
    "AffineRoot",
    "ValidationReport",
    "CATALOG",
    "build_standard",
    "from_cartan",
    "from_json",
    "make_datum",
    "direct_sum",
    "validate",
    "affine_sign",
    "minimal_roots",
    "simple_affine",
    "qperp_and_xmodq",
    "smith",
]

Vec = Tuple[int, ...]
IntMatrix = Tuple[Tuple[int, ...], ...]


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def _matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Vec:
    return tuple(_dot(row, v) for row in m)


def smith(rows: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """Smith decomposition ``D = S M T`` with ``S``, ``T`` unimodular.

    Thin wrapper over sympy that accepts and returns plain integer lists and
    handles empty matrices.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    if nr == 0 or nc == 0:
        eye = lambda k: [[int(i == j) for j in range(k)] for i in range(k)]
        return [[0] * nc for _ in range(nr)], eye(nr), eye(nc)
    from sympy import ZZ

    d, s, t = smith_normal_decomp(Matrix(rows), domain=ZZ)
    tolist = lambda m: [[int(x) for x in m.row(i)] for i in range(m.rows)]
    return tolist(d), tolist(s), tolist(t)


def _inverse_unimodular(m: Sequence[Sequence[int]]) -> List[List[int]]:
    inv = Matrix(m).inv()
    out = [[int(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]
    return out


class AffineRoot(NamedTuple):
    """The affine root ``(alpha, r)``, with ``alpha`` given by its index."""

    root: int
    level: int


@dataclass(frozen=True)
class RootDatum:
    """A based root datum in coordinates.

    Only ``name``, ``pairing``, ``roots``, ``coroots`` and ``simple`` are
    primary data; everything else is derived by :func:`make_datum`.
    """

    name: str
    pairing: IntMatrix
    roots: Tuple[Vec, ...]
    coroots: Tuple[Vec, ...]
    simple: Tuple[int, ...]
    positive: Tuple[int, ...] = ()
    minimal: Tuple[int, ...] = ()
    qperp_basis: Tuple[Vec, ...] = ()
    d: int = 0
    # derived tables (not part of equality)
    coords: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False, repr=False)
    neg: Tuple[int, ...] = field(default=(), compare=False, repr=False)
    root_pair: Tuple[Vec, ...] = field(default=(), compare=False, repr=False)
    coweight_basis: IntMatrix = field(default=(), compare=False, repr=False)
    coweight_basis_inv: IntMatrix = field(default=(), compare=False, repr=False)
    components: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    @property
    def rank_X(self) -> int:
        return len(self.pairing)

    @property
    def qperp_rank(self) -> int:
        return len(self.qperp_basis)

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        """The pairing ``<x, y>`` of a character with a cocharacter."""
        return _dot(x, _matvec(self.pairing, y))

    def pair_root(self, i: int, y: Sequence[int]) -> int:
        """``<alpha_i, y>`` using the precomputed row ``alpha_i^T P``."""
        return _dot(self.root_pair[i], y)

    def index_of_root(self, v: Sequence[int]) -> int:
        return self.roots.index(tuple(v))

    def is_positive(self, i: int) -> bool:
        return i < len(self.positive)

    def reflect(self, i: int, x: Sequence[int]) -> Vec:
        """``s_alpha(x) = x - <x, alpha^vee> alpha`` on characters."""
        k = self.pair(x, self.coroots[i])
        return tuple(a - k * r for a, r in zip(x, self.roots[i]))

    def coreflect(self, i: int, y: Sequence[int]) -> Vec:
        """``s_alpha^vee(y) = y - <alpha, y> alpha^vee`` on cocharacters."""
        k = self.pair(self.roots[i], y)
        return tuple(a - k * r for a, r in zip(y, self.coroots[i]))

    def qperp_split(self, y: Sequence[int]) -> Tuple[Vec, Vec]:
        """Split a cocharacter as (reduced representative, Q^perp exponents).

        With ``B`` the stored unimodular basis whose last ``k`` columns span
        ``Q^perp``, ``y = B c``; the exponents are the last ``k`` entries of
        ``c`` and the representative zeroes them out.
        """
        k = self.qperp_rank
        if k == 0:
            return tuple(y), ()
        c = _matvec(self.coweight_basis_inv, y)
        n = len(c)
        head = tuple(c[: n - k]) + (0,) * k
        rep = _matvec(self.coweight_basis, head)
        return rep, tuple(c[n - k:])

    def qperp_vector(self, exps: Sequence[int]) -> Vec:
        """The cocharacter with Q^perp exponents ``exps``."""
        v = [0] * self.rank_X
        for e, b in zip(exps, self.qperp_basis):
            for i, x in enumerate(b):
                v[i] += e * x
        return tuple(v)

    def height(self, i: int) -> int:
        return sum(self.coords[i])

    def to_json(self) -> Dict:
        return {
            "name": self.name,
            "pairing": [list(r) for r in self.pairing],
            "roots": [list(r) for r in self.roots],
            "coroots": [list(r) for r in self.coroots],
            "simple": list(self.simple),
        }


@dataclass
class ValidationReport:
    ok: bool
    violations: List[str]

    def __bool__(self) -> bool:
        return self.ok


def _simple_coords(pairing, roots, simple) -> List[Optional[Tuple[int, ...]]]:
    cols = [roots[i] for i in simple]
    n = len(pairing)
    out: List[Optional[Tuple[int, ...]]] = []
    m = ExactMatrix([[cols[j][i] for j in range(len(cols))] for i in range(n)])
    for r in roots:
        sol = solve_window(m, list(r))
        if sol is None or any(x.denominator != 1 for x in sol):
            out.append(None)
            continue
        # the solution is unique only if the simple roots are independent
        out.append(tuple(int(x) for x in sol))
    return out


def make_datum(
    name: str,
    pairing: Sequence[Sequence[int]],
    roots: Sequence[Sequence[int]],
    coroots: Sequence[Sequence[int]],
    simple: Sequence[int],
    check: bool = True,
) -> RootDatum:
    """Assemble a datum from primary data and derive everything else.

    Roots are reordered so that positive roots come first by (height,
    coordinates) and the negatives follow in the same order; ``simple`` is
    remapped accordingly.
    """
    pairing_t = tuple(tuple(int(x) for x in r) for r in pairing)
    roots_l = [tuple(int(x) for x in r) for r in roots]
    coroots_l = [tuple(int(x) for x in r) for r in coroots]
    simple_vecs = [roots_l[i] for i in simple]
    coords = _simple_coords(pairing_t, roots_l, list(simple))

    pos_idx = [i for i, c in enumerate(coords) if c is not None and all(x >= 0 for x in c) and any(c)]
    pos_idx.sort(key=lambda i: (sum(coords[i]), tuple(-x for x in coords[i])))
    order = list(pos_idx)
    for i in pos_idx:
        negv = tuple(-x for x in roots_l[i])
        if negv in roots_l:
            order.append(roots_l.index(negv))
    rest = [i for i in range(len(roots_l)) if i not in order]
    order += rest
    roots_t = tuple(roots_l[i] for i in order)
    coroots_t = tuple(coroots_l[i] for i in order)
    coords_t = tuple(coords[i] if coords[i] is not None else () for i in order)
    npos = len(pos_idx)
    simple_t = tuple(sorted(roots_t.index(v) for v in simple_vecs))
    neg = tuple(
        roots_t.index(tuple(-x for x in r)) if tuple(-x for x in r) in roots_t else -1 for r in roots_t
    )
    root_pair = tuple(
        tuple(sum(r[i] * pairing_t[i][j] for i in range(len(r))) for j in range(len(pairing_t)))
        for r in roots_t
    )

    # Q^perp: integer kernel of y -> (<alpha_i, y>)_i via Smith decomposition
    n = len(pairing_t)
    mrows = [list(root_pair[i]) for i in simple_t]
    qbasis: Tuple[Vec, ...]
    if mrows:
        dmat, _s, tmat = smith(mrows)
        rank_q = sum(1 for i in range(min(len(dmat), n)) if dmat[i][i] != 0)
    else:
        tmat = [[int(i == j) for j in range(n)] for i in range(n)]
        rank_q = 0
    qbasis = tuple(tuple(tmat[i][j] for i in range(n)) for j in range(rank_q, n))
    tinv = _inverse_unimodular(tmat)

    # irreducible components of the simple system
    comps: List[List[int]] = []
    seen = set()
    for i in simple_t:
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in simple_t:
                if v not in seen and (
                    _dot(root_pair[u], coroots_t[v]) != 0 or _dot(root_pair[v], coroots_t[u]) != 0
                ):
                    seen.add(v)
                    stack.append(v)
        comps.append(sorted(comp))
    comps.sort()

    rd = RootDatum(
        name=name,
        pairing=pairing_t,
        roots=roots_t,
        coroots=coroots_t,
        simple=simple_t,
        positive=tuple(range(npos)),
        minimal=(),
        qperp_basis=qbasis,
        d=rank_q,
        coords=coords_t,
        neg=neg,
        root_pair=root_pair,
        coweight_basis=tuple(tuple(r) for r in tmat),
        coweight_basis_inv=tuple(tuple(r) for r in tinv),
        components=tuple(tuple(c) for c in comps),
    )
    object.__setattr__(rd, "minimal", tuple(sorted(minimal_roots(rd))))
    if check:
        rep = validate(rd)
        if not rep.ok:
            raise ValueError(f"invalid root datum {name}: " + "; ".join(rep.violations))
    return rd


def _closure(cartan: Sequence[Sequence[int]], simple_roots: List[Vec], simple_coroots: List[Vec], pairing):
    """All roots and coroots generated from simple ones by simple reflections."""
    r = len(simple_roots)

    def pair(x, y):
        return _dot(x, _matvec(pairing, y))

    pairs = {(simple_roots[i], simple_coroots[i]) for i in range(r)}
    frontier = list(pairs)
    while frontier:
        new = []
        for beta, betav in frontier:
            for i in range(r):
                k = pair(beta, simple_coroots[i])
                kv = pair(simple_roots[i], betav)
                nb = tuple(x - k * y for x, y in zip(beta, simple_roots[i]))
                nbv = tuple(x - kv * y for x, y in zip(betav, simple_coroots[i]))
                if (nb, nbv) not in pairs:
                    pairs.add((nb, nbv))
                    new.append((nb, nbv))
        frontier = new
    items = sorted(pairs)
    return [p[0] for p in items], [p[1] for p in items]


def from_cartan(name: str, cartan: Sequence[Sequence[int]], lattice: str) -> RootDatum:
    """Datum of a Cartan matrix ``C[i][j] = <alpha_i, alpha_j^vee>``.

    ``lattice = "adjoint"`` takes ``X`` spanned by the simple roots;
    ``lattice = "sc"`` takes ``X^vee`` spanned by the simple coroots.
    """
    r = len(cartan)
    eye = [[int(i == j) for j in range(r)] for i in range(r)]
    if lattice == "adjoint":
        sroots = [tuple(eye[i]) for i in range(r)]
        scoroots = [tuple(cartan[i][j] for i in range(r)) for j in range(r)]
    elif lattice == "sc":
        sroots = [tuple(cartan[i]) for i in range(r)]
        scoroots = [tuple(eye[j]) for j in range(r)]
    else:
        raise ValueError(f"unknown lattice type {lattice!r}")
    roots, coroots = _closure(cartan, sroots, scoroots, eye)
    simple = [roots.index(v) for v in sroots]
    return make_datum(name, eye, roots, coroots, simple)


def _gl(name: str, n: int) -> RootDatum:
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    roots = []
    for i in range(n):
        for j in range(n):
            if i != j:
                v = [0] * n
                v[i], v[j] = 1, -1
                roots.append(tuple(v))
    simple = [roots.index(tuple(int(k == i) - int(k == i + 1) for k in range(n))) for i in range(n - 1)]
    return make_datum(name, eye, roots, list(roots), simple)


_CARTAN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    # alpha_1 short, alpha_2 long
    "C2": [[2, -1], [-2, 2]],
    "G2": [[2, -1], [-3, 2]],
}

CATALOG = ("A1_sl", "A1_pgl", "A1_gl", "A2_sl", "A2_pgl", "A2_gl", "C2", "G2")

_BUILT: Dict[str, RootDatum] = {}


def build_standard(name: str) -> RootDatum:
    """One of the shipped data.

    ``*_sl`` has cocharacters equal to the coroot lattice, ``*_pgl`` has
    characters equal to the root lattice, ``*_gl`` is the standard ``Z^n``
    realisation. ``C2`` and ``G2`` are adjoint (for ``G2`` this is also simply
    connected).
    """
    if name in _BUILT:
        return _BUILT[name]
    if name == "A1_sl":
        rd = from_cartan(name, _CARTAN["A1"], "sc")
    elif name == "A1_pgl":
        rd = from_cartan(name, _CARTAN["A1"], "adjoint")
    elif name == "A1_gl":
        rd = _gl(name, 2)
    elif name == "A2_sl":
        rd = from_cartan(name, _CARTAN["A2"], "sc")
    elif name == "A2_pgl":
        rd = from_cartan(name, _CARTAN["A2"], "adjoint")
    elif name == "A2_gl":
        rd = _gl(name, 3)
    elif name == "C2":
        rd = from_cartan(name, _CARTAN["C2"], "adjoint")
    elif name == "G2":
        rd = from_cartan(name, _CARTAN["G2"], "adjoint")
    else:
        raise KeyError(f"unknown root datum {name!r}; known: {', '.join(CATALOG)}")
    _BUILT[name] = rd
    return rd


def from_json(text_or_dict) -> RootDatum:
    """Datum from the JSON schema ``{name, pairing, roots, coroots, simple}``."""
    data = json.loads(text_or_dict) if isinstance(text_or_dict, str) else dict(text_or_dict)
    for key in ("pairing", "roots", "coroots", "simple"):
        if key not in data:
            raise ValueError(f"root datum JSON lacks {key!r}")
    return make_datum(data.get("name", "custom"), data["pairing"], data["roots"], data["coroots"], data["simple"])


def direct_sum(r1: RootDatum, r2: RootDatum, name: Optional[str] = None) -> RootDatum:
    """Product datum on ``X1 + X2``."""
    n1, n2 = r1.rank_X, r2.rank_X
    pairing = [list(r) + [0] * n2 for r in r1.pairing] + [[0] * n1 + list(r) for r in r2.pairing]
    roots = [tuple(v) + (0,) * n2 for v in r1.roots] + [(0,) * n1 + tuple(v) for v in r2.roots]
    coroots = [tuple(v) + (0,) * n2 for v in r1.coroots] + [(0,) * n1 + tuple(v) for v in r2.coroots]
    simple = list(r1.simple) + [len(r1.roots) + i for i in r2.simple]
    return make_datum(name or f"{r1.name}x{r2.name}", pairing, roots, coroots, simple)


def validate(rd: RootDatum) -> ValidationReport:
    """Check the axioms of a reduced based root datum; collect every violation."""
    bad: List[str] = []
    roots = list(rd.roots)
    coroots = list(rd.coroots)
    if len(roots) != len(coroots):
        bad.append("roots and coroots differ in number")
        return ValidationReport(False, bad)
    try:
        dmat, _, _ = smith(rd.pairing)
        unimod = all(abs(dmat[i][i]) == 1 for i in range(len(dmat)))
    except Exception:  # pragma: no cover - sympy failure
        unimod = False
    if not unimod:
        bad.append("pairing matrix is not unimodular")
    for i, (a, av) in enumerate(zip(roots, coroots)):
        if rd.pair(a, av) != 2:
            bad.append(f"<alpha, alpha^vee> = {rd.pair(a, av)} != 2 for root {a}")
    pairs = set(zip(roots, coroots))
    for i in range(len(roots)):
        for j in range(len(roots)):
            img = rd.reflect(i, roots[j])
            cimg = rd.coreflect(i, coroots[j])
            if img not in roots:
                bad.append(f"s_{roots[i]} does not preserve the roots ({roots[j]} -> {img})")
                continue
            if cimg not in coroots:
                bad.append(f"s_{coroots[i]} does not preserve the coroots ({coroots[j]} -> {cimg})")
                continue
            if (img, cimg) not in pairs:
                bad.append(f"reflection {i} breaks the root/coroot bijection at {roots[j]}")
    for a in roots:
        if tuple(2 * x for x in a) in roots:
            bad.append(f"non-reduced: 2*{a} is a root")
    npos = len(rd.positive)
    if 2 * npos != len(roots):
        bad.append(f"{npos} positive roots among {len(roots)}")
    for i in rd.positive:
        if rd.neg[i] < 0 or rd.neg[i] in rd.positive:
            bad.append(f"-{roots[i]} missing or positive")
    for i in range(len(roots)):
        c = rd.coords[i] if i < len(rd.coords) else ()
        if not c:
            bad.append(f"root {roots[i]} is not an integral combination of simple roots")
        elif not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
            bad.append(f"root {roots[i]} has mixed-sign simple coordinates {c}")
    if not set(rd.simple) <= set(rd.positive):
        bad.append("a simple root is not positive")
    for i in rd.simple:
        for j in rd.positive:
            if j != i:
                img = rd.reflect(i, roots[j])
                if img in roots and roots.index(img) not in rd.positive:
                    bad.append(f"s_{roots[i]} sends positive {roots[j]} outside the positive roots")
    return ValidationReport(not bad, bad)


def affine_sign(rd: RootDatum, A: AffineRoot) -> int:
    """+1 if ``A`` is a positive affine root, else -1."""
    if A.level > 0 or (A.level == 0 and rd.is_positive(A.root)):
        return 1
    return -1


def minimal_roots(rd: RootDatum) -> List[int]:
    """Indices of the roots minimal for the order "beta - alpha is a nonnegative combination"."""
    out = []
    for i, ci in enumerate(rd.coords):
        if not ci:
            continue
        below = False
        for j, cj in enumerate(rd.coords):
            if j != i and cj and all(x - y >= 0 for x, y in zip(ci, cj)):
                below = True
                break
        if not below:
            out.append(i)
    return out


def simple_affine(rd: RootDatum) -> List[AffineRoot]:
    """Simple affine roots: level-1 minimal roots first, then level-0 simple roots.

    For an irreducible datum of rank ``d`` this puts the affine reflection at
    index 0, so index ``j`` is the reflection conventionally called ``s_j``.
    """
    return [AffineRoot(i, 1) for i in rd.minimal] + [AffineRoot(i, 0) for i in rd.simple]


def qperp_and_xmodq(rd: RootDatum) -> Tuple[Tuple[Vec, ...], Tuple[int, ...], bool]:
    """``(basis of Q^perp, nontrivial invariant factors of X/Q, X/Q is free)``."""
    n = rd.rank_X
    cols = [rd.roots[i] for i in rd.simple]
    if cols:
        m = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
        dmat, _, _ = smith(m)
        diag = [abs(dmat[i][i]) for i in range(min(len(dmat), len(cols)))]
    else:
        diag = []
    factors = tuple(x for x in diag if x not in (0, 1))
    return rd.qperp_basis, factors, not factors


def free_rank_xmodq(rd: RootDatum) -> int:
    return rd.rank_X - rd.d


def coset_reps(rd: RootDatum, generators: Sequence[Sequence[int]]) -> List[Vec]:
    """Representatives of ``Z^n / L`` for a full-rank sublattice ``L``.

    ``L`` is spanned by ``generators``. With ``D = S M T`` the quotient is
    ``sum Z/d_i`` in the coordinates ``S y``, so representatives are
    ``S^{-1} c`` for ``0 <= c_i < d_i``.
    """
    n = rd.rank_X
    m = [[g[i] for g in generators] for i in range(n)]
    dmat, s, _t = smith(m)
    diag = [abs(dmat[i][i]) if i < len(dmat[0]) else 0 for i in range(n)]
    if any(x == 0 for x in diag):
        raise ValueError("sublattice is not of full rank")
    sinv = _inverse_unimodular(s)
    reps = []
    for c in iproduct(*[range(x) for x in diag]):
        reps.append(_matvec(sinv, c))
    return reps
