"""Root data, Weyl groups and Bruhat order.

Characters and cocharacters are integer tuples of length ``rank``; the
pairing between them is the standard dot product.  Weyl group elements are
integer matrices acting on characters (column vectors).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Vec = tuple
Mat = tuple

FAMILIES = ("gl_split", "sp_split", "u_inert")

FAMILY_ALIASES = {
    "gl": "gl_split", "gl_split": "gl_split", "gl-split": "gl_split",
    "sp": "sp_split", "sp_split": "sp_split", "sp-split": "sp_split",
    "u": "u_inert", "u_inert": "u_inert", "u-inert": "u_inert",
}

DEFAULT_LIMIT = 10**7


class EnumerationLimit(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# small integer linear algebra

def identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Mat, b: Mat) -> Mat:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Mat, v: Sequence) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def neg(v: Sequence) -> Vec:
    return tuple(-x for x in v)


def vadd(u: Sequence, v: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vscale(c, v: Sequence) -> Vec:
    return tuple(c * x for x in v)


def rational_inverse(a: Mat) -> Mat:
    """Exact inverse by Gauss-Jordan over the rationals."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def integer_inverse(a: Mat) -> Mat:
    inv = rational_inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def solve_in_span(basis: Sequence[Sequence], v: Sequence):
    """Coordinates of v in the span of linearly independent ``basis`` vectors,
    as Fractions, or None if v is outside the rational span."""
    k = len(basis)
    if k == 0:
        return () if all(x == 0 for x in v) else None
    n = len(v)
    # augmented system: sum_j c_j basis[j] = v, rows indexed by coordinates
    m = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    row = 0
    pivots = []
    for c in range(k):
        piv = next((r for r in range(row, n) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][c]
        m[row] = [x * inv for x in m[row]]
        for r in range(n):
            if r != row and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[row])]
        pivots.append(c)
        row += 1
    if any(m[r][k] != 0 for r in range(row, n)):
        return None
    coords = [Fraction(0)] * k
    for r, c in enumerate(pivots):
        coords[c] = m[r][k]
    return tuple(coords)


def _column_reduce(rows: Sequence[Sequence[int]], n: int):
    """Unimodular column operations U with rows*U in column echelon form.

    Returns (A, U, pivots, rank) where A = rows*U, pivots[r] is the pivot
    column of row r (or None when the row is dependent on earlier ones)."""
    a = [list(r) for r in rows]
    u = [list(r) for r in identity(n)]
    col = 0
    pivots = []
    for r in range(len(a)):
        if col >= n or all(a[r][c] == 0 for c in range(col, n)):
            pivots.append(None)
            continue
        while True:
            nz = [c for c in range(col, n) if a[r][c] != 0]
            c0 = min(nz, key=lambda c: abs(a[r][c]))
            for m in (a, u):
                for row in m:
                    row[col], row[c0] = row[c0], row[col]
            clean = True
            for c in range(col + 1, n):
                if a[r][c] != 0:
                    f = a[r][c] // a[r][col]
                    for m in (a, u):
                        for row in m:
                            row[c] -= f * row[col]
                    clean = clean and a[r][c] == 0
            if clean:
                break
        pivots.append(col)
        col += 1
    return a, u, pivots, col


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list:
    """Z-basis of {v in Z^n : row . v = 0 for every row}."""
    _, u, _, rk = _column_reduce(rows, n)
    return [tuple(u[i][c] for i in range(n)) for c in range(rk, n)]


def integer_solve(rows: Sequence[Sequence[int]], n: int, rhs: Sequence[int]):
    """An integer vector v with row_r . v = rhs_r for all r, or None."""
    a, u, pivots, rk = _column_reduce(rows, n)
    y = [0] * n
    for r, pc in enumerate(pivots):
        acc = sum(a[r][c] * y[c] for c in range(rk) if c != pc)
        if pc is None:
            if acc != rhs[r]:
                return None
            continue
        num = rhs[r] - acc
        if num % a[r][pc]:
            return None
        y[pc] = num // a[r][pc]
    return tuple(sum(u[i][c] * y[c] for c in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# root data

def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise ValueError."""
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q must be a prime power, got {q!r}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"q must be a prime power, got {q}")
    return p, k


def _reflect(v: Sequence, root: Sequence, coroot: Sequence) -> Vec:
    c = dot(v, coroot)
    return tuple(x - c * a for x, a in zip(v, root))


@dataclass(frozen=True)
class RootDatum:
    """Based root datum with a Frobenius action, on X*(T) = Z^rank."""

    family: str
    n: int
    q: int
    simple_roots: tuple
    simple_coroots: tuple
    frobenius: Mat
    signature: tuple | None = None
    limit: int = field(default=DEFAULT_LIMIT, compare=False, repr=False)

    def __post_init__(self):
        r = len(self.simple_roots)
        if len(self.simple_coroots) != r:
            raise ValueError("roots and coroots differ in number")
        for i in range(r):
            for j in range(r):
                c = dot(self.simple_roots[i], self.simple_coroots[j])
                if (i == j and c != 2) or (i != j and c > 0):
                    raise ValueError("not a Cartan matrix")
        if sorted(self.frob_perm) != list(range(r)):
            raise ValueError("frobenius does not permute the simple roots")

    # -- basic data ---------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.frobenius)

    @property
    def delta(self) -> tuple:
        return tuple(range(len(self.simple_roots)))

    @cached_property
    def cartan(self) -> tuple:
        return tuple(tuple(dot(a, c) for c in self.simple_coroots) for a in self.simple_roots)

    @cached_property
    def _root_pairs(self) -> dict:
        """positive root -> coroot, by closure of the simple roots under
        simple reflections (s_a permutes the positive roots other than a)."""
        pairs = {a: c for a, c in zip(self.simple_roots, self.simple_coroots)}
        frontier = list(pairs)
        while frontier:
            nxt = []
            for b in frontier:
                bc = pairs[b]
                for a, ac in zip(self.simple_roots, self.simple_coroots):
                    if b == a:
                        continue
                    nb = _reflect(b, a, ac)
                    if nb not in pairs:
                        # s_a acts on cocharacters by c -> c - <a, c> a^vee
                        pairs[nb] = _reflect(bc, ac, a)
                        nxt.append(nb)
            frontier = nxt
            if len(pairs) > 10**5:
                raise EnumerationLimit("root system too large")
        return pairs

    @cached_property
    def positive_roots(self) -> tuple:
        return tuple(sorted(self._root_pairs, key=lambda r: (self.height(r), tuple(-x for x in r))))

    @cached_property
    def positive_set(self) -> frozenset:
        return frozenset(self._root_pairs)

    def coroot(self, root: Sequence) -> Vec:
        root = tuple(root)
        if root in self._root_pairs:
            return self._root_pairs[root]
        return neg(self._root_pairs[neg(root)])

    @cached_property
    def roots(self) -> tuple:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    def simple_coords(self, v: Sequence, subset: Iterable[int] | None = None):
        idx = self.delta if subset is None else tuple(sorted(subset))
        return solve_in_span([self.simple_roots[i] for i in idx], v)

    def height(self, root: Sequence) -> int:
        return int(sum(self.simple_coords(root)))

    def is_positive(self, root: Sequence) -> bool:
        return tuple(root) in self.positive_set

    # -- Frobenius ----------------------------------------------------------
    @cached_property
    def frob_perm(self) -> tuple:
        images = [matvec(self.frobenius, a) for a in self.simple_roots]
        out = []
        for im in images:
            if im not in self.simple_roots:
                return ()
            out.append(self.simple_roots.index(im))
        return tuple(out)

    @cached_property
    def frob_inverse(self) -> Mat:
        return integer_inverse(self.frobenius)

    @cached_property
    def frob_cochar(self) -> Mat:
        """sigma on cocharacters: the inverse transpose, so pairings are kept."""
        return transpose(self.frob_inverse)

    @cached_property
    def frob_order(self) -> int:
        m, o = self.frobenius, 1
        ident = identity(self.rank)
        while m != ident:
            m = matmul(m, self.frobenius)
            o += 1
            if o > 1000:
                raise ValueError("frobenius has infinite order")
        return o

    def frob_power(self, k: int) -> Mat:
        base = self.frobenius if k >= 0 else self.frob_inverse
        m = identity(self.rank)
        for _ in range(abs(k) % self.frob_order):
            m = matmul(base, m)
        return m

    def frob_subset(self, subset: Iterable[int], k: int = 1) -> frozenset:
        out = set(subset)
        perm = self.frob_perm
        inv = {v: i for i, v in enumerate(perm)}
        for _ in range(abs(k)):
            out = {perm[i] if k > 0 else inv[i] for i in out}
        return frozenset(out)

    # -- reflections and Weyl elements --------------------------------------
    @cached_property
    def reflections(self) -> tuple:
        n = self.rank
        out = []
        for a, c in zip(self.simple_roots, self.simple_coroots):
            out.append(tuple(tuple(int(i == j) - a[i] * c[j] for j in range(n)) for i in range(n)))
        return tuple(out)

    def right_reflect(self, m: Mat, i: int) -> Mat:
        """m * s_i as the rank-one update m - (m alpha_i) alpha_i^vee^T."""
        ma = matvec(m, self.simple_roots[i])
        c = self.simple_coroots[i]
        return tuple(tuple(x - a * y for x, y in zip(row, c)) for row, a in zip(m, ma))

    def element(self, matrix: Mat) -> "WeylElt":
        return _make_element(self, tuple(tuple(int(x) for x in r) for r in matrix))

    def from_word(self, word: Iterable[int]) -> "WeylElt":
        m = identity(self.rank)
        for i in word:
            m = self.right_reflect(m, i)
        return self.element(m)

    @property
    def one(self) -> "WeylElt":
        return self.element(identity(self.rank))

    def s(self, i: int) -> "WeylElt":
        return self.element(self.reflections[i])

    def length_of(self, m: Mat) -> int:
        return sum(1 for b in self.positive_roots if matvec(m, b) not in self.positive_set)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "q": self.q,
            "signature": list(self.signature) if self.signature else None,
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(a) for a in self.simple_coroots],
            "positive_roots": [list(a) for a in self.positive_roots],
            "frobenius_matrix": [list(r) for r in self.frobenius],
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> "RootDatum":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if obj.get("family") in FAMILIES:
            return build_classical(obj["family"], obj["n"], obj["q"], obj.get("signature"))
        roots = tuple(tuple(a) for a in obj["simple_roots"])
        coroots = obj.get("simple_coroots")
        if coroots is None:
            coroots = [tuple(Fraction(2 * x, dot(a, a)) for x in a) for a in roots]
        coroots = tuple(tuple(int(x) for x in c) for c in coroots)
        sig = obj.get("signature")
        return cls(obj.get("family", "custom"), obj["n"], obj["q"], roots, coroots,
                   tuple(tuple(r) for r in obj["frobenius_matrix"]),
                   tuple(sig) if sig else None)


def _unit(n: int, i: int, c: int = 1) -> Vec:
    return tuple(c if j == i else 0 for j in range(n))


def build_classical(family: str, n: int, q: int, signature=None) -> RootDatum:
    """Root datum of GL_n (split), Sp_2n (split) or the inert unitary group."""
    family = FAMILY_ALIASES.get(family, family)
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    prime_power(q)
    if signature is not None:
        r, s = signature
        if r + s != n or s < 0 or r < s:
            raise ValueError(f"inconsistent signature {signature} for n={n}")
        signature = (int(r), int(s))
        if family == "sp_split":
            raise ValueError("sp_split takes no signature")
    elif family == "u_inert":
        raise ValueError("u_inert requires a signature (r, s)")

    roots = [tuple(x - y for x, y in zip(_unit(n, i), _unit(n, i + 1))) for i in range(n - 1)]
    coroots = list(roots)
    if family == "sp_split":
        roots.append(_unit(n, n - 1, 2))
        coroots.append(_unit(n, n - 1, 1))
    if family == "u_inert":
        frob = tuple(tuple(-1 if j == n - 1 - i else 0 for j in range(n)) for i in range(n))
    else:
        frob = identity(n)
    return RootDatum(family, n, q, tuple(roots), tuple(coroots), frob, signature)


# ---------------------------------------------------------------------------
# Weyl group elements

@dataclass(frozen=True)
class WeylElt:
    """Weyl group element: matrix on X*(T) plus its lexicographically least
    reduced word.  Equality is matrix equality."""

    matrix: Mat
    word: tuple = field(compare=False)
    datum: RootDatum = field(compare=False, repr=False)

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return self.datum.element(matmul(self.matrix, other.matrix))

    @property
    def length(self) -> int:
        return len(self.word)

    def inverse(self) -> "WeylElt":
        return self.datum.from_word(reversed(self.word))

    def act(self, v: Sequence) -> Vec:
        return matvec(self.matrix, v)

    def frob(self, k: int = 1) -> "WeylElt":
        """sigma^k w sigma^-k."""
        d = self.datum
        return d.element(matmul(matmul(d.frob_power(k), self.matrix), d.frob_power(-k)))

    def is_identity(self) -> bool:
        return self.matrix == identity(len(self.matrix))

    def word_str(self) -> str:
        return "".join(f"s{i + 1}" for i in self.word) or "e"


_ELEMENT_CACHE: dict = {}


def _make_element(d: RootDatum, m: Mat) -> WeylElt:
    key = (id(d), m)
    hit = _ELEMENT_CACHE.get(key)
    if hit is not None and hit.datum is d:
        return hit
    e = WeylElt(m, _lex_word(d, m), d)
    if len(_ELEMENT_CACHE) > 200_000:
        _ELEMENT_CACHE.clear()
    _ELEMENT_CACHE[key] = e
    return e


def _lex_word(d: RootDatum, m: Mat) -> tuple:
    """Lexicographically least reduced word of the element with matrix m."""
    pos = d.positive_set
    # some reduced word from right descents, to get the inverse cheaply
    right = []
    cur = m
    while True:
        for i, a in enumerate(d.simple_roots):
            if matvec(cur, a) not in pos:
                cur = d.right_reflect(cur, i)
                right.append(i)
                break
        else:
            break
    if cur != identity(d.rank):
        raise ValueError("matrix is not in the Weyl group")
    inv = _reverse_product(d, right)
    word = []
    for _ in range(len(right)):
        for i, a in enumerate(d.simple_roots):
            if matvec(inv, a) not in pos:
                word.append(i)
                inv = d.right_reflect(inv, i)
                break
    return tuple(word)


def _reverse_product(d: RootDatum, right: list) -> Mat:
    # m * s_{r0} * s_{r1} ... = 1  =>  m = ... s_{r1} s_{r0}, m^-1 = s_{r0} s_{r1} ...
    inv = identity(d.rank)
    for i in right:
        inv = d.right_reflect(inv, i)
    return inv


def weyl_enumerate(d: RootDatum, subset: Iterable[int] | None = None,
                   limit: int | None = None) -> list[WeylElt]:
    """All elements of W_K by breadth-first closure under right
    multiplication by the simple reflections of K."""
    gens = sorted(d.delta if subset is None else set(subset))
    limit = d.limit if limit is None else limit
    start = identity(d.rank)
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for i in gens:
                m2 = d.right_reflect(m, i)
                if m2 not in seen:
                    seen.add(m2)
                    order.append(m2)
                    nxt.append(m2)
                    if len(seen) > limit:
                        raise EnumerationLimit(f"more than {limit} elements")
        frontier = nxt
    elems = [d.element(m) for m in order]
    elems.sort(key=lambda w: (w.length, w.word))
    return elems


def longest_element(d: RootDatum, subset: Iterable[int]) -> WeylElt:
    """w_{0,K}: grow by right multiplication while some s in K increases length."""
    gens = sorted(set(subset))
    m = identity(d.rank)
    while True:
        for i in gens:
            if d.is_positive(matvec(m, d.simple_roots[i])):
                m = d.right_reflect(m, i)
                break
        else:
            return d.element(m)


def is_left_descent(w: WeylElt, i: int) -> bool:
    """l(s_i w) < l(w)."""
    d = w.datum
    return d.length_of(matmul(d.reflections[i], w.matrix)) < w.length


def bruhat_leq(u: WeylElt, w: WeylElt) -> bool:
    """Bruhat order u <= w, by Deodhar's lifting property: for a left
    descent s of w, u <= w iff (su <= sw if s is a descent of u, else u <= sw)."""
    d = w.datum
    um, uw = u.matrix, w.word
    ul = u.length
    while True:
        if ul > len(uw):
            return False
        if ul == 0:
            return True
        s = uw[0]
        uw = uw[1:]
        su = matmul(d.reflections[s], um)
        sul = d.length_of(su)
        if sul < ul:
            um, ul = su, sul
        elif len(uw) < ul:
            return False


def subword_leq(u: WeylElt, w: WeylElt) -> bool:
    """Bruhat order by brute force over subwords of a reduced word of w."""
    from itertools import combinations

    d = w.datum
    target = u.matrix
    word = w.word
    k = u.length
    for idx in combinations(range(len(word)), k):
        m = identity(d.rank)
        for j in idx:
            m = d.right_reflect(m, word[j])
        if m == target:
            return True
    return False


def min_coset_reps(d: RootDatum, subset: Iterable[int], side: str = "left",
                   elements: list | None = None) -> list[WeylElt]:
    """^K W (side='left': minimal in W_K w) or W^K (side='right': minimal in w W_K)."""
    ks = sorted(set(subset))
    elems = weyl_enumerate(d) if elements is None else elements
    out = []
    for w in elems:
        if side == "left":
            inv = w.inverse().matrix
            ok = all(d.is_positive(matvec(inv, d.simple_roots[i])) for i in ks)
        elif side == "right":
            ok = all(d.is_positive(matvec(w.matrix, d.simple_roots[i])) for i in ks)
        else:
            raise ValueError("side must be 'left' or 'right'")
        if ok:
            out.append(w)
    return out


# ---------------------------------------------------------------------------
# characters

def act_on_char(w, lam: Sequence, d: RootDatum | None = None) -> Vec:
    """Apply a Weyl element, or a Frobenius power k (int, needs d), to a character."""
    if isinstance(w, WeylElt):
        if len(lam) != len(w.matrix):
            raise ValueError("dimension mismatch")
        return matvec(w.matrix, lam)
    if d is None:
        raise ValueError("a Frobenius power needs the root datum")
    if len(lam) != d.rank:
        raise ValueError("dimension mismatch")
    return matvec(d.frob_power(w), lam)


def pairing(lam: Sequence, cochar: Sequence):
    if len(lam) != len(cochar):
        raise ValueError("dimension mismatch")
    return dot(lam, cochar)


def is_dominant(d: RootDatum, lam: Sequence, subset: Iterable[int] | None = None) -> bool:
    ks = d.delta if subset is None else subset
    return all(pairing(lam, d.simple_coroots[i]) >= 0 for i in ks)


def levi_roots(d: RootDatum, subset: Iterable[int]) -> tuple:
    """Positive roots of the Levi attached to ``subset``."""
    ks = set(subset)
    out = []
    for b in d.positive_roots:
        c = d.simple_coords(b)
        if all(c[i] == 0 for i in d.delta if i not in ks):
            out.append(b)
    return tuple(out)


def root_pattern_violations(d: RootDatum) -> list:
    """Triples (alpha, beta, gamma) with gamma = i alpha + j beta positive,
    i >= 0, j >= 1, alpha != beta simple, but i > -j <beta, alpha^vee>."""
    bad = []
    for g in d.positive_roots:
        c = d.simple_coords(g)
        supp = [k for k in d.delta if c[k] != 0]
        for a in d.delta:
            for b in d.delta:
                if a == b or not set(supp) <= {a, b}:
                    continue
                i, j = c[a], c[b]
                if j < 1:
                    continue
                if i > -j * d.cartan[b][a]:
                    bad.append((a, b, g))
    return bad
