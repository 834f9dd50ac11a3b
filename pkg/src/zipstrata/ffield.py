"""Exact arithmetic in F_{p^k} and dense matrices over it.

Field elements are plain ints encoding coefficient vectors in base p
(c_0 + c_1 p + ... for c_0 + c_1 t + ...).  FqElem is a thin operator
wrapper for interactive use; matrices work on the raw ints.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .roots import prime_power

# Lexicographically least monic primitive polynomials, coefficients listed
# from the constant term up (leading 1 omitted).  Regenerate with
# ``primitive_modulus(p, k, search=True)``.
MODULI = {
    (2, 1): (1,), (2, 2): (1, 1), (2, 3): (1, 1, 0), (2, 4): (1, 1, 0, 0),
    (3, 1): (1,), (3, 2): (2, 1), (3, 3): (1, 2, 0), (3, 4): (2, 1, 0, 0),
    (5, 1): (2,), (5, 2): (2, 1), (5, 3): (2, 3, 0), (5, 4): (2, 2, 1, 0),
    (7, 1): (2,), (7, 2): (3, 1), (7, 3): (2, 3, 0), (7, 4): (5, 3, 1, 0),
    (11, 1): (3,), (11, 2): (7, 1), (11, 3): (4, 1, 0), (11, 4): (2, 1, 0, 0),
    (13, 1): (2,), (13, 2): (2, 1), (13, 3): (6, 1, 0), (13, 4): (2, 1, 1, 0),
}


def _factor(n: int) -> list:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(p: int) -> bool:
    return p >= 2 and _factor(p) == [p]


def _polymulmod(a: list, b: list, mod: tuple, p: int) -> list:
    k = len(mod)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            # t^k = -sum mod_i t^i
            for i, m in enumerate(mod):
                prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
            prod[deg] = 0
    return prod[:k]


def _t_power(e: int, mod: tuple, p: int) -> list:
    k = len(mod)
    result = [1] + [0] * (k - 1)
    base = [0, 1] + [0] * (k - 2) if k > 1 else [(-mod[0]) % p]
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_primitive(mod: tuple, p: int) -> bool:
    k = len(mod)
    if mod[0] % p == 0:
        return False
    n = p**k - 1
    one = [1] + [0] * (k - 1)
    if _t_power(n, mod, p) != one:
        return False
    return all(_t_power(n // r, mod, p) != one for r in _factor(n))


def primitive_modulus(p: int, k: int, search: bool = False) -> tuple:
    if not search and (p, k) in MODULI:
        return MODULI[(p, k)]
    from itertools import product

    for tail in product(range(p), repeat=k):
        mod = tuple(reversed(tail))   # lexicographic in (c_{k-1}, ..., c_0)
        if _is_primitive(mod, p):
            return mod
    raise ValueError(f"no primitive polynomial for p={p}, k={k}")


class GF:
    """The field F_{p^k}."""

    def __init__(self, p: int, k: int = 1):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("k must be >= 1")
        self.p, self.k = p, k
        self.order = p**k
        self.modulus = primitive_modulus(p, k)
        n = self.order - 1
        self._n = n
        # exp/log with respect to the class of t (a generator)
        exp = [0] * (2 * n)
        log = [0] * self.order
        cur = [1] + [0] * (k - 1)
        gen = [0, 1] + [0] * (k - 2) if k > 1 else [(-self.modulus[0]) % p]
        for e in range(n):
            v = self._encode(cur)
            exp[e] = v
            log[v] = e
            cur = _polymulmod(cur, gen, self.modulus, p)
        exp[n:] = exp[:n]
        self._exp, self._log = exp, log
        if k > 1:
            one_plus = [0] * self.order
            for x in range(self.order):
                c = self.coeffs(x)
                one_plus[x] = self._encode([(c[0] + 1) % p] + list(c[1:]))
            self._one_plus = one_plus
            self._neg = [self._encode([-c % p for c in self.coeffs(x)]) for x in range(self.order)]
            if self.order <= 1024:
                self._add_table = [[self._slow_add(a, b) for b in range(self.order)]
                                   for a in range(self.order)]
            else:
                self._add_table = None

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    # -- encoding -----------------------------------------------------------
    def _encode(self, coeffs: Sequence[int]) -> int:
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c
        return v

    def coeffs(self, x: int) -> tuple:
        out = []
        for _ in range(self.k):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.k:
            raise ValueError("wrong number of coefficients")
        return self._encode([c % self.p for c in coeffs])

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    @property
    def gen(self) -> int:
        return self._exp[1] if self._n > 1 else 1

    # -- arithmetic ---------------------------------------------------------
    def _slow_add(self, a: int, b: int) -> int:
        p = self.p
        return self._encode([(x + y) % p for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        s = self._one_plus[self._exp[self._log[b] - la + self._n]]
        return 0 if s == 0 else self._exp[la + self._log[s]]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[(self._n - self._log[a]) % self._n]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % self._n]

    def frobenius_pow(self, a: int, q: int) -> int:
        """a -> a^q."""
        return self.pow(a, q)

    def dlog(self, a: int) -> int:
        """Discrete log to the base ``gen``."""
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return self._log[a]

    def dot(self, xs: Sequence[int], ys: Sequence[int]) -> int:
        if self.k == 1:
            return sum(x * y for x, y in zip(xs, ys)) % self.p
        acc = 0
        mul, add = self.mul, self.add
        for x, y in zip(xs, ys):
            if x and y:
                acc = add(acc, mul(x, y))
        return acc

    # -- sampling -----------------------------------------------------------
    def random(self, rng: np.random.Generator) -> int:
        return int(rng.integers(self.order))

    def random_nonzero(self, rng: np.random.Generator) -> int:
        return int(rng.integers(1, self.order))

    def elem(self, x) -> "FqElem":
        if isinstance(x, FqElem):
            return x
        return FqElem(self, int(x))

    def elements(self) -> range:
        return range(self.order)


@lru_cache(maxsize=None)
def ff_make(p: int, k: int = 1) -> GF:
    return GF(p, k)


def field_of_size(q: int) -> GF:
    p, k = prime_power(q)
    return ff_make(p, k)


@dataclass(frozen=True)
class FqElem:
    field: GF
    value: int

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def k(self) -> int:
        return self.field.k

    @property
    def coeffs(self) -> tuple:
        return self.field.coeffs(self.value)

    def _lift(self, other) -> int:
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return self.field.from_int(other)

    def __add__(self, other):
        return FqElem(self.field, self.field.add(self.value, self._lift(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.field, self.field.sub(self.value, self._lift(other)))

    def __rsub__(self, other):
        return FqElem(self.field, self.field.sub(self._lift(other), self.value))

    def __mul__(self, other):
        return FqElem(self.field, self.field.mul(self.value, self._lift(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        return FqElem(self.field, self.field.div(self.value, self._lift(other)))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.value, e))

    def inv(self) -> "FqElem":
        return FqElem(self.field, self.field.inv(self.value))

    def frobenius_pow(self, q: int) -> "FqElem":
        return FqElem(self.field, self.field.frobenius_pow(self.value, q))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __repr__(self):
        return f"{self.coeffs}@F{self.field.order}" if self.k > 1 else f"{self.value}@F{self.p}"


# ---------------------------------------------------------------------------
# matrices

class SingularMatrix(ZeroDivisionError):
    pass


class FqMatrix:
    """Dense matrix over a GF, value semantics."""

    __slots__ = ("field", "rows")

    def __init__(self, field: GF, rows: Iterable[Iterable[int]]):
        self.field = field
        self.rows = tuple(tuple(int(x) for x in r) for r in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, field: GF, n: int) -> "FqMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: GF, n: int, m: int | None = None) -> "FqMatrix":
        return cls(field, [[0] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, field: GF, entries: Sequence[int]) -> "FqMatrix":
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_int_matrix(cls, field: GF, rows) -> "FqMatrix":
        """Integer matrix mapped into the prime field (signs respected)."""
        return cls(field, [[field.from_int(x) for x in r] for r in rows])

    @classmethod
    def blocks(cls, field: GF, grid) -> "FqMatrix":
        out = []
        for brow in grid:
            height = len(brow[0].rows)
            for i in range(height):
                out.append([x for b in brow for x in b.rows[i]])
        return cls(field, out)

    # -- shape --------------------------------------------------------------
    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, FqMatrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"FqMatrix({self.field}, {list(map(list, self.rows))})"

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> "FqMatrix":
        return FqMatrix(self.field, [[self.rows[i][j] for j in cols] for i in rows])

    def transpose(self) -> "FqMatrix":
        return FqMatrix(self.field, zip(*self.rows))

    @property
    def T(self) -> "FqMatrix":
        return self.transpose()

    # -- arithmetic ---------------------------------------------------------
    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        F = self.field
        cols = list(zip(*other.rows))
        if F.k == 1:
            p = F.p
            return FqMatrix(F, [[sum(x * y for x, y in zip(r, c)) % p for c in cols] for r in self.rows])
        dot = F.dot
        return FqMatrix(F, [[dot(r, c) for c in cols] for r in self.rows])

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        add = self.field.add
        return FqMatrix(self.field, [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "FqMatrix":
        neg = self.field.neg
        return FqMatrix(self.field, [[neg(x) for x in r] for r in self.rows])

    def scale(self, c: int) -> "FqMatrix":
        mul = self.field.mul
        return FqMatrix(self.field, [[mul(c, x) for x in r] for r in self.rows])

    def frobenius_pow(self, q: int) -> "FqMatrix":
        fp = self.field.frobenius_pow
        return FqMatrix(self.field, [[fp(x, q) for x in r] for r in self.rows])

    def det(self) -> int:
        return mat_det(self)

    def inv(self) -> "FqMatrix":
        return mat_inv(self)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> int:
        return mat_minor(self, rows, cols)

    def is_identity(self) -> bool:
        n = self.n
        return all(self.rows[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def to_json(self) -> list:
        F = self.field
        if F.k == 1:
            return [list(r) for r in self.rows]
        return [[list(F.coeffs(x)) for x in r] for r in self.rows]


def _eliminate(F: GF, rows: list, augment: list | None = None):
    """In-place Gauss-Jordan; returns determinant (0 if singular)."""
    n = len(rows)
    det = 1
    mul, sub, inv = F.mul, F.sub, F.inv
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            if augment is not None:
                augment[c], augment[piv] = augment[piv], augment[c]
            det = F.neg(det)
        pv = rows[c][c]
        det = mul(det, pv)
        ipv = inv(pv)
        rows[c] = [mul(ipv, x) for x in rows[c]]
        if augment is not None:
            augment[c] = [mul(ipv, x) for x in augment[c]]
        lo = 0 if augment is not None else c + 1
        for r in range(lo, n):
            if r == c:
                continue
            f = rows[r][c]
            if f:
                rows[r] = [sub(x, mul(f, y)) for x, y in zip(rows[r], rows[c])]
                if augment is not None:
                    augment[r] = [sub(x, mul(f, y)) for x, y in zip(augment[r], augment[c])]
    return det


def mat_det(m: FqMatrix) -> int:
    r, c = m.shape
    if r != c:
        raise ValueError("determinant of a non-square matrix")
    if r == 0:
        return 1
    F = m.field
    if F.k == 1:
        return _det_prime(m.rows, F.p)
    return _eliminate(F, [list(x) for x in m.rows])


def _det_prime(rows, p: int) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        pv = a[c][c]
        det = det * pv % p
        ipv = pow(pv, -1, p)
        rc = a[c]
        for r in range(c + 1, n):
            f = a[r][c] * ipv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], rc)]
    return det % p


def mat_inv(m: FqMatrix) -> FqMatrix:
    F = m.field
    n = m.n
    rows = [list(r) for r in m.rows]
    aug = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if _eliminate(F, rows, aug) == 0:
        raise SingularMatrix("matrix is singular")
    return FqMatrix(F, aug)


def mat_minor(m: FqMatrix, rows: Sequence[int], cols: Sequence[int]) -> int:
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    return mat_det(m.block(rows, cols))


def det_cofactor(m: FqMatrix) -> int:
    """Determinant by Laplace expansion along the first row (slow oracle)."""
    F = m.field
    n = m.n
    if n == 0:
        return 1
    if n == 1:
        return m.rows[0][0]
    acc = 0
    for j in range(n):
        sub = m.block(range(1, n), [c for c in range(n) if c != j])
        term = F.mul(m.rows[0][j], det_cofactor(sub))
        acc = F.add(acc, term) if j % 2 == 0 else F.sub(acc, term)
    return acc


# ---------------------------------------------------------------------------
# randomness

def stream(seed: int, index: int, tag: str = "") -> np.random.Generator:
    """Independent generator for sample ``index`` of a suite."""
    return np.random.default_rng([int(seed), int(index), zlib.crc32(tag.encode())])


def mat_random(F: GF, n: int, rng: np.random.Generator, m: int | None = None) -> FqMatrix:
    cols = n if m is None else m
    vals = rng.integers(F.order, size=(n, cols))
    return FqMatrix(F, vals.tolist())


def mat_random_invertible(F: GF, n: int, seed_or_rng, tries: int = 1000) -> FqMatrix:
    rng = seed_or_rng if isinstance(seed_or_rng, np.random.Generator) else stream(seed_or_rng, 0, "invertible")
    for _ in range(tries):
        a = mat_random(F, n, rng)
        if mat_det(a) != 0:
            return a
    raise RuntimeError("failed to draw an invertible matrix")
