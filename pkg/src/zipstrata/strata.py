"""Zip data and the posets of zip strata and flag strata."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .roots import (
    RootDatum, WeylElt, build_classical, dot, levi_roots, longest_element, matmul,
    matvec, min_coset_reps, neg, weyl_enumerate,
)


class FrameError(AssertionError):
    pass


def levi_from_cocharacter(d: RootDatum, mu: Sequence[int]) -> frozenset:
    if len(mu) != d.rank:
        raise ValueError("dimension mismatch")
    return frozenset(i for i in d.delta if dot(d.simple_roots[i], mu) == 0)


def standard_cocharacter(d: RootDatum) -> tuple:
    """The cocharacter used for each family: Siegel for sp, diag(x I_r, I_s)
    for the unitary signatures."""
    if d.family == "sp_split":
        return (1,) * d.n
    if d.signature is None:
        raise ValueError(f"{d.family} needs a signature to fix the cocharacter")
    r, s = d.signature
    return (1,) * r + (0,) * s


@dataclass(frozen=True)
class ZipDatum:
    datum: RootDatum
    levi: frozenset

    def __post_init__(self):
        object.__setattr__(self, "levi", frozenset(self.levi))
        if not self.levi <= set(self.datum.delta):
            raise ValueError("levi subset is not inside the simple roots")
        if self.frame_lhs != self.z:
            raise FrameError("w0 * w0_J differs from sigma(w0_I) * w0")

    @property
    def q(self) -> int:
        return self.datum.q

    @cached_property
    def w0(self) -> WeylElt:
        return longest_element(self.datum, self.datum.delta)

    @cached_property
    def w0_levi(self) -> WeylElt:
        return longest_element(self.datum, self.levi)

    @cached_property
    def J(self) -> frozenset:
        d = self.datum
        out = set()
        for i in self.levi:
            img = neg(self.w0.act(matvec(d.frobenius, d.simple_roots[i])))
            out.add(d.simple_roots.index(img))
        return frozenset(out)

    @cached_property
    def delta_p(self) -> tuple:
        return tuple(i for i in self.datum.delta if i not in self.levi)

    @cached_property
    def z(self) -> WeylElt:
        return self.w0_levi.frob(1) * self.w0

    @cached_property
    def frame_lhs(self) -> WeylElt:
        return self.w0 * longest_element(self.datum, self.J)

    @cached_property
    def levi_positive_roots(self) -> tuple:
        return levi_roots(self.datum, self.levi)

    @cached_property
    def dims(self) -> dict:
        d = self.datum
        npos = len(d.positive_roots)
        dim_b = d.rank + npos
        return {
            "dim_T": d.rank,
            "dim_B": dim_b,
            "dim_P": dim_b + len(self.levi_positive_roots),
            "dim_G": d.rank + 2 * npos,
        }

    def codim_one_zip(self) -> dict:
        """w0_I s_alpha w0 for alpha in Delta^P; equal elements share a label list."""
        d = self.datum
        out: dict = {}
        for i in self.delta_p:
            w = self.w0_levi * d.s(i) * self.w0
            out.setdefault(w, []).append(i)
        return out

    def codim_one_flag(self) -> dict:
        d = self.datum
        return {d.s(i) * self.w0: [i] for i in d.delta}


def build_zip_datum(d: RootDatum, levi: Iterable[int] | None = None) -> ZipDatum:
    if levi is None:
        levi = levi_from_cocharacter(d, standard_cocharacter(d))
    return ZipDatum(d, frozenset(levi))


def classical_zip_datum(family: str, n: int, q: int, signature=None) -> ZipDatum:
    return build_zip_datum(build_classical(family, n, q, signature))


# ---------------------------------------------------------------------------
# posets

@dataclass(frozen=True, eq=False)
class StratumPoset:
    kind: str
    elements: tuple          # WeylElt, sorted by (length, word)
    dims: tuple
    codims: tuple
    leq: np.ndarray = field(repr=False)   # leq[i, j]: element i lies in the closure of j
    datum: RootDatum | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, StratumPoset) and self.kind == other.kind
                and self.elements == other.elements and self.dims == other.dims
                and np.array_equal(self.leq, other.leq))

    def index(self, w: WeylElt) -> int:
        return self.elements.index(w)

    def covers(self) -> list:
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        # i < k < j blocks the pair (i, j)
        through = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        cov = lt & ~through
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cov))]

    def maximal(self) -> list:
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        return [i for i in range(len(self)) if not lt[i].any()]

    def is_partial_order(self) -> bool:
        m = self.leq
        refl = bool(np.all(np.diag(m)))
        anti = not np.any(m & m.T & ~np.eye(len(self), dtype=bool))
        mi = m.astype(np.int64)
        trans = not np.any(((mi @ mi) > 0) & ~m)
        return refl and anti and trans


class BruhatTable:
    """Bruhat order on an enumerated W via [e, w] = [e, sw] u s[e, sw]."""

    def __init__(self, d: RootDatum, elements: list | None = None):
        self.datum = d
        self.elements = weyl_enumerate(d) if elements is None else elements
        self.index = {w.matrix: i for i, w in enumerate(self.elements)}
        n = len(self.elements)
        left = np.empty((len(d.delta), n), dtype=np.int64)
        for s in d.delta:
            r = d.reflections[s]
            for i, w in enumerate(self.elements):
                left[s, i] = self.index[matmul(r, w.matrix)]
        down = np.zeros((n, n), dtype=bool)
        for j, w in enumerate(self.elements):   # sorted by length
            if w.length == 0:
                down[j, j] = True
                continue
            s = w.word[0]
            k = left[s, j]
            down[j] = down[k] | down[k][left[s]]
        self.down = down   # down[j, i]: element i <= element j

    def leq(self, u: WeylElt, w: WeylElt) -> bool:
        return bool(self.down[self.index[w.matrix], self.index[u.matrix]])

    def idx(self, w: WeylElt) -> int:
        return self.index[w.matrix]


def zip_orbit_poset(zd: ZipDatum, table: BruhatTable | None = None,
                    rule: str = "conjugate-lower") -> StratumPoset:
    """Poset of zip strata on ^I W.

    rule="conjugate-lower": w' <= w iff w1 w' sigma(w1)^-1 <= w (Bruhat) for
    some w1 in W_I.  rule="conjugate-upper" twists the larger element
    instead; that variant is kept only for comparison, it is not
    antisymmetric in general.
    """
    d = zd.datum
    table = table or BruhatTable(d)
    reps = min_coset_reps(d, zd.levi, "left", table.elements)
    levi_group = weyl_enumerate(d, zd.levi)
    twisted = [(w1.matrix, w1.frob(1).inverse().matrix) for w1 in levi_group]
    rep_idx = np.array([table.idx(w) for w in reps])
    n = len(reps)
    # orbit[i]: indices of the twisted conjugates of reps[i]
    orbit = []
    for w in reps:
        orbit.append(np.array(sorted({table.index[matmul(matmul(a, w.matrix), b)]
                                      for a, b in twisted})))
    sub = table.down[rep_idx]          # sub[j, k]: element k <= reps[j]
    leq = np.zeros((n, n), dtype=bool)
    if rule == "conjugate-lower":
        for i in range(n):
            leq[i] = sub[:, orbit[i]].any(axis=1)
    elif rule == "conjugate-upper":
        for j in range(n):
            leq[:, j] = table.down[orbit[j]][:, rep_idx].any(axis=0)
    else:
        raise ValueError(f"unknown rule {rule!r}")
    dim_p = zd.dims["dim_P"]
    lmax = (zd.w0_levi * zd.w0).length
    dims = tuple(w.length + dim_p for w in reps)
    codims = tuple(lmax - w.length for w in reps)
    return StratumPoset("zip", tuple(reps), dims, codims, leq, d)


def flag_orbit_poset(zd: ZipDatum, table: BruhatTable | None = None) -> StratumPoset:
    d = zd.datum
    table = table or BruhatTable(d)
    elems = table.elements
    leq = table.down.T.copy()
    dim_b = zd.dims["dim_B"]
    lmax = zd.w0.length
    return StratumPoset("flag", tuple(elems), tuple(w.length + dim_b for w in elems),
                        tuple(lmax - w.length for w in elems), leq, d)


# ---------------------------------------------------------------------------
# export

def _label(w: WeylElt) -> str:
    return w.word_str()


def export_poset(p: StratumPoset, fmt: str = "json") -> str:
    covers = p.covers()
    if fmt == "json":
        obj = {
            "kind": p.kind,
            "elements": [{"word": list(w.word), "length": w.length, "dim": dm, "codim": cd}
                         for w, dm, cd in zip(p.elements, p.dims, p.codims)],
            "covers": [list(c) for c in covers],
        }
        if p.datum is not None:
            obj["datum"] = p.datum.to_json()
        return json.dumps(obj, sort_keys=True, indent=1)
    if fmt == "dot":
        lines = [f"digraph {p.kind}_strata {{", "  rankdir=BT;"]
        for i, (w, dm) in enumerate(zip(p.elements, p.dims)):
            lines.append(f'  n{i} [label="{_label(w)}\\ndim {dm}"];')
        for i, j in covers:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def poset_from_json(text: str, d: RootDatum | None = None) -> StratumPoset:
    obj = json.loads(text)
    if d is None:
        d = RootDatum.from_json(obj["datum"])
    elems = tuple(d.from_word(e["word"]) for e in obj["elements"])
    n = len(elems)
    leq = np.eye(n, dtype=bool)
    for i, j in obj["covers"]:
        leq[i, j] = True
    # transitive closure
    while True:
        mi = leq.astype(np.int64)
        nxt = leq | ((mi @ mi) > 0)
        if np.array_equal(nxt, leq):
            break
        leq = nxt
    return StratumPoset(obj["kind"], elems, tuple(e["dim"] for e in obj["elements"]),
                        tuple(e["codim"] for e in obj["elements"]), leq, d)
