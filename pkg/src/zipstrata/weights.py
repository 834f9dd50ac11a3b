"""Character-level computations: Schubert weights, divisors, cones,
Lang-map cocharacters, Levi weight supports and Steinberg digits."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .roots import (
    RootDatum, dot, integer_kernel, integer_solve, is_dominant, levi_roots, matvec,
    neg, vadd, vscale, vsub,
)
from .strata import ZipDatum


def fundamental_char(n: int, d: int) -> tuple:
    """chi_d = (1^d, 0^{n-d})."""
    return (1,) * d + (0,) * (n - d)


def schubert_weight(zd: ZipDatum, chi: Sequence[int]) -> tuple:
    """chi - q * w0_I(sigma^-1 chi)."""
    d = zd.datum
    twisted = zd.w0_levi.act(matvec(d.frob_inverse, chi))
    return vsub(chi, vscale(d.q, twisted))


def determinant_weight(zd: ZipDatum) -> tuple:
    """Weight of g -> det(g) for the GL-type families."""
    return schubert_weight(zd, (1,) * zd.datum.rank)


def weight_table(zd: ZipDatum) -> list:
    """Rows {d, chi, lambda} of the flag Hasse invariant weights."""
    d = zd.datum
    top = d.n if d.family == "sp_split" else d.n - 1
    rows = []
    for k in range(1, top + 1):
        chi = fundamental_char(d.rank, k)
        rows.append({"d": k, "chi": list(chi), "lambda": list(schubert_weight(zd, chi))})
    return rows


@dataclass(frozen=True)
class DivisorVector:
    mults: tuple      # <chi, alpha^vee> for alpha in Delta, in order
    dominant: bool

    @property
    def support(self) -> tuple:
        return tuple(i for i, m in enumerate(self.mults) if m != 0)

    def is_zero(self) -> bool:
        return not any(self.mults)


def chevalley_divisor(d: RootDatum, chi: Sequence[int]) -> DivisorVector:
    mults = tuple(dot(chi, c) for c in d.simple_coroots)
    return DivisorVector(mults, all(m >= 0 for m in mults))


def in_gs_cone(zd: ZipDatum, lam: Sequence[int]) -> bool:
    """<lam, a^vee> >= 0 on I and <= 0 on positive roots outside the Levi."""
    d = zd.datum
    if not is_dominant(d, lam, zd.levi):
        return False
    levi = set(zd.levi_positive_roots)
    return all(dot(lam, d.coroot(b)) <= 0 for b in d.positive_roots if b not in levi)


def in_gs_cone_via_dominance(zd: ZipDatum, lam: Sequence[int]) -> bool:
    """-w0_I lam is dominant."""
    return is_dominant(zd.datum, neg(zd.w0_levi.act(lam)))


# ---------------------------------------------------------------------------
# Lang map on rational cocharacters

def frob_on_cochar(d: RootDatum, c: Sequence) -> tuple:
    return tuple(sum(m * x for m, x in zip(row, c)) for row in d.frob_cochar)


def lang_pushforward(zd: ZipDatum, delta: Sequence) -> tuple:
    """delta -> delta - q sigma(delta)."""
    return tuple(x - zd.q * y for x, y in zip(delta, frob_on_cochar(zd.datum, delta)))


def delta_alpha(zd: ZipDatum, i: int) -> tuple:
    """The rational cocharacter with delta - q sigma(delta) = alpha_i^vee."""
    d = zd.datum
    o = d.frob_order
    acc = [Fraction(0)] * d.rank
    c = tuple(d.simple_coroots[i])
    for k in range(o):
        acc = [a + zd.q**k * x for a, x in zip(acc, c)]
        c = frob_on_cochar(d, c)
    scale = Fraction(1, 1 - zd.q**o)
    return tuple(scale * a for a in acc)


def weight_filter_member(zd: ZipDatum, nu: Sequence[int]) -> bool:
    return all(dot(nu, delta_alpha(zd, i)) >= 0 for i in zd.delta_p)


# ---------------------------------------------------------------------------
# Levi representations in characteristic zero

@dataclass(frozen=True)
class LeviSystem:
    datum: RootDatum
    subset: frozenset
    positive_roots: tuple = field(init=False)
    coroots: tuple = field(init=False)
    two_rho: tuple = field(init=False)

    def __post_init__(self):
        d = self.datum
        pos = levi_roots(d, self.subset)
        object.__setattr__(self, "positive_roots", pos)
        object.__setattr__(self, "coroots", tuple(d.coroot(b) for b in pos))
        two_rho = (0,) * d.rank
        for b in pos:
            two_rho = vadd(two_rho, b)
        object.__setattr__(self, "two_rho", two_rho)
        for b, c in zip(pos, self.coroots):
            if tuple(2 * x for x in b) != tuple(dot(b, b) * y for y in c):
                raise ValueError("the dot product is not Weyl-invariant for this datum")

    @property
    def simple(self) -> tuple:
        return tuple(sorted(self.subset))

    def dominant_conjugate(self, mu: Sequence[int]) -> tuple:
        d = self.datum
        mu = tuple(mu)
        changed = True
        while changed:
            changed = False
            for i in self.simple:
                p = dot(mu, d.simple_coroots[i])
                if p < 0:
                    mu = vsub(mu, vscale(p, d.simple_roots[i]))
                    changed = True
        return mu


def levi_system(zd_or_datum, subset: Iterable[int] | None = None) -> LeviSystem:
    if isinstance(zd_or_datum, ZipDatum):
        return LeviSystem(zd_or_datum.datum, frozenset(zd_or_datum.levi if subset is None else subset))
    d = zd_or_datum
    return LeviSystem(d, frozenset(d.delta if subset is None else subset))


def weyl_dimension(system: LeviSystem, lam: Sequence[int]) -> int:
    if not is_dominant(system.datum, lam, system.subset):
        raise ValueError("weight is not dominant for the Levi")
    num = den = 1
    for c in system.coroots:
        r = dot(system.two_rho, c)
        num *= 2 * dot(lam, c) + r
        den *= r
    out = Fraction(num, den)
    assert out.denominator == 1
    return int(out)


@dataclass(frozen=True)
class WeightMultiset:
    entries: dict

    def total(self) -> int:
        return sum(self.entries.values())

    def __contains__(self, mu) -> bool:
        return tuple(mu) in self.entries

    def __iter__(self):
        return iter(sorted(self.entries))


def _is_weight(system: LeviSystem, lam: tuple, mu: tuple) -> bool:
    d = system.datum
    plus = system.dominant_conjugate(mu)
    coords = d.simple_coords(vsub(lam, plus), system.subset)
    return coords is not None and all(c >= 0 and c.denominator == 1 for c in coords)


def levi_weight_support(zd_or_system, lam: Sequence[int]) -> WeightMultiset:
    """Weights with multiplicities of the irreducible Levi module of highest
    weight lam, by Freudenthal's recursion."""
    system = zd_or_system if isinstance(zd_or_system, LeviSystem) else levi_system(zd_or_system)
    return WeightMultiset(dict(_freudenthal(system, tuple(lam))))


@lru_cache(maxsize=4096)
def _freudenthal(system: LeviSystem, lam: tuple) -> tuple:
    d = system.datum
    if not is_dominant(d, lam, system.subset):
        raise ValueError("highest weight is not dominant for the Levi")
    simple = [d.simple_roots[i] for i in system.simple]
    base = dot(vadd(lam, system.two_rho), lam)   # |lam+rho|^2 - |rho|^2, doubled rho form
    mult = {lam: 1}
    layer = [lam]
    while layer:
        nxt = []
        seen = set()
        for mu in layer:
            for a in simple:
                nu = vsub(mu, a)
                if nu in mult or nu in seen or not _is_weight(system, lam, nu):
                    continue
                seen.add(nu)
                nxt.append(nu)
        nxt.sort()
        for nu in nxt:
            denom = base - dot(vadd(nu, system.two_rho), nu)
            acc = 0
            for b in system.positive_roots:
                k = 1
                while True:
                    top = vadd(nu, vscale(k, b))
                    m = mult.get(top)
                    if m is None:
                        break
                    acc += m * dot(top, b)
                    k += 1
            val = Fraction(2 * acc, denom)
            if val.denominator != 1 or val <= 0:
                raise ArithmeticError(f"Freudenthal produced {val} at {nu}")
            mult[nu] = int(val)
        layer = nxt
    return tuple(sorted(mult.items()))


def vgs_full(zd: ZipDatum, lam: Sequence[int]) -> bool:
    """Every weight of the Levi module pairs <= 0 with the coroots of Delta^P."""
    d = zd.datum
    support = levi_weight_support(zd, lam)
    cor = [d.simple_coroots[i] for i in zd.delta_p]
    return all(dot(nu, c) <= 0 for nu in support.entries for c in cor)


def levi_dimension_bound(zd: ZipDatum, chi: Sequence[int]) -> tuple:
    """(dim of the Levi module of highest weight w0_I w0 chi, dim of the
    G-module of highest weight chi).  The first never exceeds the second:
    the Levi module sits inside the restriction."""
    d = zd.datum
    low = (zd.w0_levi * zd.w0).act(tuple(chi))
    return weyl_dimension(levi_system(zd), low), weyl_dimension(levi_system(d), chi)


# ---------------------------------------------------------------------------
# Steinberg digits

def is_restricted(d: RootDatum, lam: Sequence[int], subset: Iterable[int] | None = None) -> bool:
    ks = d.delta if subset is None else subset
    return all(0 <= dot(lam, d.simple_coroots[i]) < d.q for i in ks)


def _echelon_from_end(vectors: list, n: int) -> list:
    """Integer row echelon form, pivots chosen from the last coordinate down.
    Returns (vector, pivot) pairs with positive pivot entries."""
    rows = [list(v) for v in vectors]
    out = []
    for p in range(n - 1, -1, -1):
        while True:
            live = [r for r in rows if r[p] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: abs(r[p]))
            piv = live[0]
            for r in live[1:]:
                f = r[p] // piv[p]
                for k in range(n):
                    r[k] -= f * piv[k]
        live = [r for r in rows if r[p] != 0]
        if live:
            r = live[0]
            rows.remove(r)
            if r[p] < 0:
                r = [-x for x in r]
            out.append((tuple(r), p))
    return out


def _central_reduce(d: RootDatum, lam: tuple, coroots: list, q: int) -> tuple:
    """Shift lam by q * (characters killing ``coroots``) to the minimal
    non-negative representative on the pivot coordinates."""
    basis = _echelon_from_end(integer_kernel(coroots, d.rank), d.rank)
    for b, p in basis:
        step = q * b[p]
        k = lam[p] // step
        lam = vsub(lam, vscale(k * q, b))
    return lam


def steinberg_decompose(d: RootDatum, lam: Sequence[int], m: int,
                        subset: Iterable[int] | None = None, twisted: bool = True):
    """Digits (lam_0, ..., lam_m), each restricted, with
    lam = sum_i q^i sigma^-i(lam_i) (or sum_i q^i lam_i when twisted=False).
    Returns None when no lift exists."""
    ks = tuple(sorted(d.delta if subset is None else subset))
    if not is_dominant(d, lam, ks):
        raise ValueError("steinberg_decompose needs a dominant weight")
    if m < 0:
        raise ValueError("m must be non-negative")
    q = d.q
    coroots = [d.simple_coroots[i] for i in ks]
    cur = tuple(lam)
    digits = []
    for _ in range(m):
        target = [dot(cur, c) // q for c in coroots]
        mu = integer_solve(coroots, d.rank, target)
        if mu is None:
            return None
        digit = _central_reduce(d, vsub(cur, vscale(q, mu)), coroots, q)
        digits.append(digit)
        mu = tuple(x // q for x in vsub(cur, digit))
        cur = matvec(d.frobenius, mu) if twisted else mu
    if not is_restricted(d, cur, ks):
        return None
    digits.append(cur)
    return digits


def steinberg_recompose(d: RootDatum, digits: Sequence, twisted: bool = True) -> tuple:
    total = (0,) * d.rank
    for i, dig in enumerate(digits):
        v = matvec(d.frob_power(-i), dig) if twisted else tuple(dig)
        total = vadd(total, vscale(d.q**i, v))
    return total


def condition_funda_a(zd: ZipDatum, chi: Sequence[int], i: int) -> bool:
    d = zd.datum
    if not 0 < dot(chi, d.simple_coroots[i]) < d.q:
        return False
    return all(dot(chi, d.simple_coroots[j]) == 0 for j in d.delta if j != i)


def condition_pair(zd: ZipDatum, chi: Sequence[int]) -> tuple:
    """(chi, -w0_I sigma^-1 chi): the expected I-restricted digits of the
    Schubert weight of chi."""
    d = zd.datum
    return tuple(chi), neg(zd.w0_levi.act(matvec(d.frob_inverse, chi)))
