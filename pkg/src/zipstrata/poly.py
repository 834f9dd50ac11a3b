"""Sparse polynomials over F_p, the alternating binomial sum, and the
two-variable expansion showing a section that misses the socle."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

from .roots import prime_power


@dataclass(frozen=True)
class MultiPoly:
    """Polynomial over F_p.  ``terms`` maps exponent tuples to nonzero
    residues; exponents are Python ints, never truncated."""

    p: int
    variables: tuple
    terms: Mapping

    def __post_init__(self):
        clean = {}
        for e, c in dict(self.terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(self.variables):
                raise ValueError("exponent length does not match the variables")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            c %= self.p
            if c:
                clean[e] = (clean.get(e, 0) + c) % self.p
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    # constructors
    @classmethod
    def zero(cls, p: int, variables: Sequence[str]) -> "MultiPoly":
        return cls(p, tuple(variables), {})

    @classmethod
    def const(cls, p: int, variables: Sequence[str], c: int = 1) -> "MultiPoly":
        return cls(p, tuple(variables), {(0,) * len(variables): c})

    @classmethod
    def var(cls, p: int, variables: Sequence[str], name: str) -> "MultiPoly":
        e = tuple(1 if v == name else 0 for v in variables)
        if not any(e):
            raise ValueError(f"unknown variable {name!r}")
        return cls(p, tuple(variables), {e: 1})

    @classmethod
    def monomial(cls, p: int, variables: Sequence[str], exps: Sequence[int], c: int = 1):
        return cls(p, tuple(variables), {tuple(exps): c})

    def _check(self, other: "MultiPoly"):
        if self.p != other.p or self.variables != other.variables:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = (out.get(e, 0) + c) % self.p
        return MultiPoly(self.p, self.variables, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.p, self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return MultiPoly(self.p, self.variables, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        p = self.p
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return MultiPoly(p, self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.p, self.variables)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiPoly) and self.p == other.p
                and self.variables == other.variables and self.terms == other.terms)

    def __hash__(self):
        return hash((self.p, self.variables, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list:
        """Exponents in descending lexicographic order."""
        return sorted(self.terms, reverse=True)

    def total_degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.total_degrees()) <= 1

    def frobenius_image(self) -> "MultiPoly":
        """Exponents multiplied by p; equals self ** p over F_p."""
        return MultiPoly(self.p, self.variables,
                         {tuple(self.p * x for x in e): c for e, c in self.terms.items()})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in self.support():
            c = self.terms[e]
            mono = "*".join(v if x == 1 else f"{v}^{x}" for v, x in zip(self.variables, e) if x)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def poly_add(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    return f + g


def poly_mul(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    return f * g


def poly_pow(f: MultiPoly, e: int) -> MultiPoly:
    return f ** e


# ---------------------------------------------------------------------------
# binomial sum

def binom(a: int, b: int) -> int:
    """C(a, b), zero when b < 0 or b > a."""
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def binomial_terms(n: int, i: int, d: int) -> list:
    return [(-1) ** j * binom(n - i, j + d) * binom(j + d + i, d + i)
            for j in range(0, n - i - d + 1)]


def binomial_identity_sum(n: int, i: int, d: int) -> int:
    """sum_{j=0}^{n-i-d} (-1)^j C(n-i, j+d) C(j+d+i, d+i)."""
    if n < 0 or not 0 <= i <= n:
        raise ValueError("need n >= 0 and 0 <= i <= n")
    return sum(binomial_terms(n, i, d))


def binomial_closed_form(n: int, i: int, d: int) -> int:
    """(-1)^(n-i+d) C(i, 2i+d-n), the alternating sum by the binomial
    transform.  Zero iff 2i + d < n or i + d > n."""
    return (-1) ** (n - i + d) * binom(i, 2 * i + d - n)


def binomial_condition(n: int, i: int, d: int) -> bool:
    return 4 * i - 2 * n + 3 * d < 0


def binomial_sweep(n_max: int, d_range: Iterable[int] | None = None) -> dict:
    """Every (n, i, d) with n <= n_max, |d| <= n (or d in d_range) and the
    condition holding; failures are cases whose sum is nonzero."""
    checked, failures = 0, []
    for n in range(n_max + 1):
        ds = range(-n, n + 1) if d_range is None else d_range
        for i in range(n + 1):
            for d in ds:
                if not binomial_condition(n, i, d):
                    continue
                checked += 1
                s = binomial_identity_sum(n, i, d)
                if s:
                    failures.append({"n": n, "i": i, "d": d, "sum": s})
    return {"cases_checked": checked, "failures": failures}


def termwise_vanishing(n: int, i: int, d: int) -> bool:
    """For d <= -(n+1) every summand has a zero binomial factor."""
    return all(t == 0 for t in binomial_terms(n, i, d))


# ---------------------------------------------------------------------------
# the Sp4 socle example

def socle_data(q: int) -> dict:
    p, _ = prime_power(q)
    m = q * q - q + 1
    q3 = q ** 3
    basis = [(q3 + 1, 0), (q3, 1), (1, q3), (0, q3 + 1)]
    return {"p": p, "m": m, "basis": basis}


def socle_counterexample(q: int) -> dict:
    """Expand (x y^q - y x^q)^m, m = q^2 - q + 1, over F_p and test whether
    its support lies in the span of the four socle monomials."""
    data = socle_data(q)
    p, m = data["p"], data["m"]
    vs = ("x", "y")
    f = MultiPoly.monomial(p, vs, (1, q)) - MultiPoly.monomial(p, vs, (q, 1))
    g = f ** m
    support = g.support()
    basis = set(data["basis"])
    return {
        "q": q,
        "p": p,
        "m": m,
        "support": [list(e) for e in support],
        "degrees": sorted(g.total_degrees()),
        "basis": [list(b) for b in data["basis"]],
        "contained": all(e in basis for e in support),
        "polynomial": str(g),
    }


def monomial_weight(m: int, exps: Sequence[int]) -> tuple:
    """Torus weight of delta^-m x^a y^b, with x, y the last column of the
    Levi block and delta its determinant."""
    a, b = exps
    return (m - a, m - b)


def steinberg_monomial_check(q: int) -> dict:
    """The four basis monomials against the weights of
    delta^-m (x) L(0,-1) (x) L(0,-1)^[3]."""
    data = socle_data(q)
    m, basis = data["m"], data["basis"]
    q3 = q ** 3
    low = [(-1, 0), (0, -1)]
    expected = {(m + a[0] + q3 * b[0], m + a[1] + q3 * b[1]) for a in low for b in low}
    weights = [monomial_weight(m, e) for e in basis]
    return {
        "q": q,
        "basis_size": len(basis),
        "tensor_dimension": len(low) ** 2,
        "homogeneous_degree": sorted({sum(e) for e in basis}),
        "weights": [list(w) for w in weights],
        "weights_distinct": len(set(weights)) == len(weights),
        "weights_match": set(weights) == expected,
        "pass": (len(basis) == 4 and len(set(weights)) == 4 and set(weights) == expected
                 and {sum(e) for e in basis} == {q3 + 1}),
    }
