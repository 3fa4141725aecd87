"""Exact coefficient arithmetic.

Two coefficient rings appear throughout the package:

* ``ABPoly``: polynomials in the two deformation parameters ``a`` and ``b``
  with integer coefficients.
* ``ZetaCoeff``: the same, with Laurent variables ``z1 .. zk`` attached to a
  chosen basis of the central lattice of coweights orthogonal to all roots.

Both are immutable sparse maps from exponent tuples to nonzero integers. The
canonical order of terms is lexicographic on the exponent tuple, and the text
form lists terms from the largest exponent down::

    >>> a, b = ABPoly.gen("a"), ABPoly.gen("b")
    >>> str((a + b) * (a - b))
    'a^2 - b^2'
    >>> z = ZetaCoeff.gen("z1", 1)
    >>> str(3 * a.to_zeta(1) ** 2 * ABPoly.gen("b").to_zeta(1) + z ** -1)
    '3*a^2*b + z1^-1'

The module also carries the small amount of exact linear algebra the
verification suites need: a Bareiss determinant over any of these rings, a
dense rational solver, and an incremental sparse row-echelon structure over
``Fraction`` used for kernels and span membership.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

__all__ = [
    "PolyRing",
    "Poly",
    "ABPoly",
    "ZetaCoeff",
    "AB_RING",
    "zeta_ring",
    "parse_poly",
    "specialize_coeff",
    "is_unit_zeta",
    "ExactMatrix",
    "det",
    "solve_window",
    "SparseEchelon",
    "kernel_basis",
]

Exponent = Tuple[int, ...]


class PolyRing:
    """A ring of polynomials with named generators.

    The first ``len(gens) - laurent`` generators carry nonnegative exponents;
    the trailing ``laurent`` generators may carry negative exponents.
    Instances are interned, so ring identity can be tested with ``is``.
    """

    _cache: Dict[Tuple[Tuple[str, ...], int], "PolyRing"] = {}

    def __new__(cls, gens: Sequence[str], laurent: int = 0) -> "PolyRing":
        key = (tuple(gens), int(laurent))
        ring = cls._cache.get(key)
        if ring is None:
            ring = super().__new__(cls)
            ring.gens = key[0]
            ring.laurent = key[1]
            ring.nvars = len(key[0])
            cls._cache[key] = ring
        return ring

    def __reduce__(self):
        return (PolyRing, (self.gens, self.laurent))

    def __repr__(self) -> str:
        return f"PolyRing({self.gens!r}, laurent={self.laurent})"

    def index(self, name: str) -> int:
        try:
            return self.gens.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r} in ring {self.gens}") from None


AB_RING = PolyRing(("a", "b"))


def zeta_ring(k: int) -> PolyRing:
    """The ring Z[a, b][z1^{+-1}, ..., zk^{+-1}]."""
    return PolyRing(("a", "b") + tuple(f"z{i + 1}" for i in range(k)), laurent=k)


class Poly:
    """Immutable sparse polynomial over a :class:`PolyRing`."""

    __slots__ = ("_terms", "_ring", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None, ring: PolyRing = AB_RING):
        clean: Dict[Exponent, int] = {}
        if terms:
            npos = ring.nvars - ring.laurent
            for exp, c in terms.items():
                if c == 0:
                    continue
                exp = tuple(exp)
                if len(exp) != ring.nvars:
                    raise ValueError(f"exponent {exp} has wrong length for ring {ring.gens}")
                if any(e < 0 for e in exp[:npos]):
                    raise ValueError(f"negative exponent {exp} on a polynomial generator")
                clean[exp] = clean.get(exp, 0) + int(c)
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self._ring = ring
        self._hash = None

    # --- construction -------------------------------------------------
    @classmethod
    def _raw(cls, terms: Dict[Exponent, int], ring: PolyRing) -> "Poly":
        obj = object.__new__(cls)
        obj._terms = terms
        obj._ring = ring
        obj._hash = None
        return obj

    @classmethod
    def in_ring(cls, ring: PolyRing, terms: Mapping[Exponent, int] | None = None) -> "Poly":
        if cls is Poly:
            if ring is AB_RING:
                return ABPoly(terms)
            if ring.gens[:2] == ("a", "b") and ring.laurent == ring.nvars - 2:
                return ZetaCoeff(terms, k=ring.laurent)
        return Poly(terms, ring)

    @classmethod
    def constant(cls, c: int, ring: PolyRing) -> "Poly":
        return cls.in_ring(ring, {(0,) * ring.nvars: c})

    @classmethod
    def monomial(cls, exp: Exponent, ring: PolyRing, c: int = 1) -> "Poly":
        return cls.in_ring(ring, {tuple(exp): c})

    # --- accessors ------------------------------------------------------
    @property
    def ring(self) -> PolyRing:
        return self._ring

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self, upto: Optional[int] = None) -> int:
        """Largest sum of the first ``upto`` exponents (all, by default)."""
        if not self._terms:
            return -1
        k = self._ring.nvars if upto is None else upto
        return max(sum(e[:k]) for e in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self._ring.nvars, 0)

    # --- arithmetic -----------------------------------------------------
    def _coerce(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            if other._ring is not self._ring:
                raise TypeError(f"mixed-ring operands: {self._ring.gens} vs {other._ring.gens}")
            return other
        if isinstance(other, int):
            return self._make({(0,) * self._ring.nvars: other} if other else {})
        return NotImplemented

    def _make(self, terms: Dict[Exponent, int]) -> "Poly":
        return type(self)._raw(terms, self._ring)

    def __add__(self, other: Any) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._make(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return self._make({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Any) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Any) -> "Poly":
        if isinstance(other, int):
            if other == 0:
                return self._make({})
            return self._make({e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self._make(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self._terms.items()
            if c not in (1, -1) or any(e[: self._ring.nvars - self._ring.laurent]):
                raise ValueError(f"{self} is not a unit")
            return self._make({tuple(-x * -n for x in e): c ** (-n)})
        result = self._make({(0,) * self._ring.nvars: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._ring is other._ring and self._terms == other._terms
        if isinstance(other, int):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * self._ring.nvars: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._ring.gens, frozenset(self._terms.items())))
        return self._hash

    # --- exact division -------------------------------------------------
    def exquo(self, other: "Poly") -> "Poly":
        """Exact quotient ``self / other``; raises ``ArithmeticError`` if inexact.

        Long division with respect to the lexicographic order, which is a
        group order on exponent vectors and therefore also valid for the
        Laurent variables. If ``other`` divides ``self`` the quotient terms
        lie between ``lt(self)/lt(other)`` and ``tt(self)/tt(other)``, which
        bounds the loop.
        """
        other = self._coerce(other)
        if not other._terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not self._terms:
            return self
        lt_g = max(other._terms)
        lc_g = other._terms[lt_g]
        floor = tuple(x - y for x, y in zip(min(self._terms), min(other._terms)))
        rem = dict(self._terms)
        quo: Dict[Exponent, int] = {}
        while rem:
            lt_r = max(rem)
            e = tuple(x - y for x, y in zip(lt_r, lt_g))
            if e < floor:
                raise ArithmeticError("inexact polynomial division")
            c, r = divmod(rem[lt_r], lc_g)
            if r:
                raise ArithmeticError("inexact polynomial division")
            quo[e] = c
            for eg, cg in other._terms.items():
                k = tuple(x + y for x, y in zip(e, eg))
                v = rem.get(k, 0) - c * cg
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        q = self._make(quo)
        return q

    # --- evaluation -----------------------------------------------------
    def evaluate(self, values: Sequence[Any], one: Any = 1) -> Any:
        """Evaluate at ``values`` (one per generator) in any commutative ring."""
        if len(values) != self._ring.nvars:
            raise ValueError("wrong number of values")
        total: Any = None
        powers: Dict[Tuple[int, int], Any] = {}

        def pw(i: int, k: int) -> Any:
            key = (i, k)
            if key not in powers:
                powers[key] = values[i] ** k if k else one
            return powers[key]

        for e, c in self._terms.items():
            term: Any = one * c
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            total = term if total is None else total + term
        if total is None:
            return one * 0
        return total

    # --- text form --------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: List[str] = []
        for e, c in self.items():
            mono = []
            for name, k in zip(self._ring.gens, e):
                if k == 1:
                    mono.append(name)
                elif k:
                    mono.append(f"{name}^{k}")
            body = "*".join(mono)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if c > 0 else "-" + text)
            else:
                parts.append(("+ " if c > 0 else "- ") + text)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class ABPoly(Poly):
    """Polynomial in ``a`` and ``b`` with integer coefficients."""

    __slots__ = ()

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        super().__init__(terms, AB_RING)

    @classmethod
    def gen(cls, name: str) -> "ABPoly":
        exp = [0, 0]
        exp[AB_RING.index(name)] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def const(cls, c: int) -> "ABPoly":
        return cls({(0, 0): c})

    def to_zeta(self, k: int) -> "ZetaCoeff":
        pad = (0,) * k
        return ZetaCoeff({e + pad: c for e, c in self._terms.items()}, k=k)


class ZetaCoeff(Poly):
    """Element of Z[a, b][z1^{+-1}, ..., zk^{+-1}]."""

    __slots__ = ()

    def __init__(self, terms: Mapping[Exponent, int] | None = None, k: int = 0):
        super().__init__(terms, zeta_ring(k))

    @property
    def k(self) -> int:
        return self._ring.laurent

    @classmethod
    def gen(cls, name: str, k: int) -> "ZetaCoeff":
        ring = zeta_ring(k)
        exp = [0] * ring.nvars
        exp[ring.index(name)] = 1
        return cls({tuple(exp): 1}, k=k)

    @classmethod
    def zmonomial(cls, qexp: Sequence[int], c: int = 1) -> "ZetaCoeff":
        k = len(qexp)
        return cls({(0, 0) + tuple(qexp): c}, k=k)



def parse_poly(text: str, ring: PolyRing = AB_RING) -> Poly:
    """Parse the canonical text form (``"3*a^2*b + z1^-1"``) back to a polynomial."""
    src = text.replace(" ", "")
    if src in ("", "0"):
        return Poly.in_ring(ring)
    # split on + / - that are not exponent signs
    pieces: List[str] = []
    cur = ""
    for i, ch in enumerate(src):
        if ch in "+-" and cur and cur[-1] != "^":
            pieces.append(cur)
            cur = ch
        else:
            cur += ch
    pieces.append(cur)
    terms: Dict[Exponent, int] = {}
    for piece in pieces:
        sign = 1
        if piece[0] in "+-":
            sign = -1 if piece[0] == "-" else 1
            piece = piece[1:]
        coeff = 1
        exp = [0] * ring.nvars
        for factor in piece.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, power = factor.partition("^")
            exp[ring.index(name)] += int(power) if power else 1
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + sign * coeff
    return Poly.in_ring(ring, terms)


def specialize_coeff(x: Poly, assign: Mapping[str, Any], one: Any = 1) -> Any:
    """Ring homomorphism given by ``assign`` (generator name -> target value).

    Generators missing from ``assign`` are an error, so every substitution is
    explicit.
    """
    values = []
    for name in x.ring.gens:
        if name not in assign:
            raise KeyError(f"assignment does not cover generator {name!r}")
        values.append(assign[name])
    return x.evaluate(values, one=one)


def is_unit_zeta(x: Poly) -> Tuple[bool, Optional[str]]:
    """Decide whether ``x`` is a unit: plus or minus a single Laurent monomial.

    Returns ``(True, witness)`` where witness is the text form of the inverse.
    """
    if len(x) != 1:
        return False, None
    (e, c), = x.terms.items()
    npos = x.ring.nvars - x.ring.laurent
    if c not in (1, -1) or any(e[:npos]):
        return False, None
    return True, str(x ** -1)


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------


class ExactMatrix:
    """Small dense matrix over a commutative ring with exact division."""

    def __init__(self, rows: Sequence[Sequence[Any]]):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    def __getitem__(self, ij: Tuple[int, int]) -> Any:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(col) for col in zip(*self.rows)])

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = 0
                for k in range(self.ncols):
                    if r[k] != 0 and other.rows[k][j] != 0:
                        acc = r[k] * other.rows[k][j] + acc
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def tolist(self, fmt: Callable[[Any], Any] = str) -> List[List[Any]]:
        return [[fmt(x) for x in r] for r in self.rows]

    def __repr__(self) -> str:
        return f"ExactMatrix({self.tolist()!r})"


def _exact_div(x: Any, y: Any) -> Any:
    if isinstance(x, Poly):
        return x.exquo(y)
    if isinstance(x, int) and isinstance(y, int):
        q, r = divmod(x, y)
        if r:
            raise ArithmeticError("inexact integer division")
        return q
    return x / y


def det(m: ExactMatrix) -> Any:
    """Determinant by fraction-free (Bareiss) elimination with row pivoting."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev: Any = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return a[k][k] * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = _exact_div(num, prev)
            a[i][k] = a[i][k] * 0
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return result if sign == 1 else -result


def solve_window(m: ExactMatrix, rhs: Sequence[Any]) -> Optional[List[Fraction]]:
    """Solve ``m v = rhs`` exactly over the rationals; ``None`` if inconsistent.

    Free variables are set to zero, so the returned solution is the one
    supported on pivot columns.
    """
    if len(rhs) != m.nrows:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    rows = [[Fraction(x) for x in r] + [Fraction(v)] for r, v in zip(m.rows, rhs)]
    ncols = m.ncols
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][ncols]
    return sol


Vector = Dict[Any, Fraction]


class SparseEchelon:
    """Incrementally maintained echelon basis of a span of sparse vectors.

    Vectors are dicts from hashable coordinates to ``Fraction``. Each stored
    vector is normalised so that its pivot entry is 1, and earlier pivots are
    eliminated from later vectors (but not vice versa), which is enough for
    membership tests and rank counts.
    """

    def __init__(self, order: Optional[Callable[[Any], Any]] = None):
        self._rows: Dict[Any, Vector] = {}
        self._order = order

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _pick(self, v: Vector) -> Any:
        if self._order is None:
            return next(iter(v))
        return min(v, key=self._order)

    def reduce(self, v: Mapping[Any, Any], track: Optional[Vector] = None) -> Vector:
        """Return the reduction of ``v`` against the stored basis."""
        w: Vector = {k: Fraction(x) for k, x in v.items() if x}
        changed = True
        while changed and w:
            changed = False
            for piv in [k for k in w if k in self._rows]:
                c = w.get(piv)
                if not c:
                    continue
                row = self._rows[piv]
                for k, x in row.items():
                    val = w.get(k, 0) - c * x
                    if val:
                        w[k] = val
                    else:
                        w.pop(k, None)
                changed = True
        return w

    def add(self, v: Mapping[Any, Any]) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        w = self.reduce(v)
        if not w:
            return False
        piv = self._pick(w)
        inv = 1 / w[piv]
        w = {k: x * inv for k, x in w.items()}
        # keep stored rows reduced with respect to the new pivot
        for key, row in self._rows.items():
            c = row.get(piv)
            if c:
                for k, x in w.items():
                    val = row.get(k, 0) - c * x
                    if val:
                        row[k] = val
                    else:
                        row.pop(k, None)
        self._rows[piv] = w
        return True

    def contains(self, v: Mapping[Any, Any]) -> bool:
        return not self.reduce(v)


def kernel_basis(columns: Sequence[Mapping[Any, Any]]) -> Tuple[List[Vector], SparseEchelon]:
    """Kernel of the linear map sending basis vector ``j`` to ``columns[j]``.

    Returns a basis of the kernel (as dicts ``j -> coefficient``) and the
    echelon structure of the image. Elimination tracks, for every stored
    pivot row, the combination of input columns that produced it.
    """
    image = SparseEchelon()
    combos: Dict[Any, Vector] = {}
    kernel: List[Vector] = []
    for j, col in enumerate(columns):
        w: Vector = {k: Fraction(x) for k, x in col.items() if x}
        track: Vector = {j: Fraction(1)}
        changed = True
        while changed and w:
            changed = False
            for piv in [k for k in w if k in image._rows]:
                c = w.get(piv)
                if not c:
                    continue
                for k, x in image._rows[piv].items():
                    val = w.get(k, 0) - c * x
                    if val:
                        w[k] = val
                    else:
                        w.pop(k, None)
                for k, x in combos[piv].items():
                    val = track.get(k, 0) - c * x
                    if val:
                        track[k] = val
                    else:
                        track.pop(k, None)
                changed = True
        if not w:
            kernel.append(track)
            continue
        piv = image._pick(w)
        inv = 1 / w[piv]
        w = {k: x * inv for k, x in w.items()}
        track = {k: x * inv for k, x in track.items()}
        for key, row in image._rows.items():
            c = row.get(piv)
            if c:
                for k, x in w.items():
                    val = row.get(k, 0) - c * x
                    if val:
                        row[k] = val
                    else:
                        row.pop(k, None)
                tr = combos[key]
                for k, x in track.items():
                    val = tr.get(k, 0) - c * x
                    if val:
                        tr[k] = val
                    else:
                        tr.pop(k, None)
        image._rows[piv] = w
        combos[piv] = track
    return kernel, image
