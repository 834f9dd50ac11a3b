import json

import numpy as np
import pytest

from zipstrata.roots import (
    build_classical, bruhat_leq, longest_element, min_coset_reps, weyl_enumerate,
)
from zipstrata.strata import (
    BruhatTable, StratumPoset, build_zip_datum, export_poset, flag_orbit_poset,
    levi_from_cocharacter, poset_from_json, standard_cocharacter, zip_orbit_poset,
)

from conftest import all_cases


def test_levi_from_cocharacter():
    gl3 = build_classical("gl_split", 3, 5)
    assert levi_from_cocharacter(gl3, (1, 1, 0)) == {0}
    assert levi_from_cocharacter(gl3, (0, 0, 0)) == {0, 1}
    sp2 = build_classical("sp_split", 2, 5)
    assert levi_from_cocharacter(sp2, (1, 1)) == {0}
    with pytest.raises(ValueError):
        levi_from_cocharacter(gl3, (1, 0))


def test_standard_cocharacters():
    assert standard_cocharacter(build_classical("sp_split", 3, 3)) == (1, 1, 1)
    assert standard_cocharacter(build_classical("u_inert", 3, 3, (2, 1))) == (1, 1, 0)


@pytest.mark.parametrize("family,n,sig", all_cases(8))
def test_frame_identity_and_dimensions(family, n, sig):
    d = build_classical(family, n, 3, sig)
    zd = build_zip_datum(d)
    assert zd.frame_lhs == zd.z == zd.w0_levi.frob(1) * zd.w0
    npos = len(d.positive_roots)
    assert zd.dims["dim_B"] == n + npos
    assert zd.dims["dim_G"] == n + len(d.roots)
    assert zd.dims["dim_P"] == zd.dims["dim_B"] + len(zd.levi_positive_roots)
    assert len(zd.J) == len(zd.levi)


def test_unitary_21_frame_is_block_antidiagonal():
    zd = build_zip_datum(build_classical("u_inert", 3, 5, (2, 1)))
    # e1 -> e2, e2 -> e3, e3 -> e1: the permutation of (0 I_1; I_2 0)
    assert zd.z.matrix == ((0, 0, 1), (1, 0, 0), (0, 1, 0))


def test_split_full_levi_gives_trivial_frame():
    d = build_classical("gl_split", 4, 5)
    zd = build_zip_datum(d, d.delta)
    assert zd.z == d.one


def test_siegel_frame_length():
    zd = build_zip_datum(build_classical("sp_split", 2, 3))
    assert zd.z.length == 3


def test_sp4_zip_poset_is_a_chain():
    zd = build_zip_datum(build_classical("sp_split", 2, 3))
    p = zip_orbit_poset(zd)
    assert len(p) == 4
    assert list(p.dims) == [zd.dims["dim_P"] + k for k in range(4)]
    assert p.covers() == [(0, 1), (1, 2), (2, 3)]
    assert p.is_partial_order()


def test_literal_conjugate_upper_rule_is_not_antisymmetric():
    zd = build_zip_datum(build_classical("sp_split", 2, 3))
    p = zip_orbit_poset(zd, rule="conjugate-upper")
    assert not p.is_partial_order()


def test_empty_levi_recovers_bruhat():
    d = build_classical("gl_split", 3, 3)
    zd = build_zip_datum(d, ())
    p = zip_orbit_poset(zd)
    assert len(p) == 6
    for i, u in enumerate(p.elements):
        for j, w in enumerate(p.elements):
            assert p.leq[i, j] == bruhat_leq(u, w)


@pytest.mark.parametrize("family,n,sig", [
    c for c in all_cases(5) if not (c[0] == "sp_split" and c[1] == 5)
])
def test_zip_poset_structure(family, n, sig):
    d = build_classical(family, n, 3, sig)
    zd = build_zip_datum(d)
    table = BruhatTable(d)
    p = zip_orbit_poset(zd, table)
    W, WI = len(table.elements), len(weyl_enumerate(d, zd.levi))
    assert len(p) * WI == W
    assert set(p.elements) == set(min_coset_reps(d, zd.levi))
    assert p.is_partial_order()
    top = zd.w0_levi * zd.w0
    assert [p.elements[i] for i in p.maximal()] == [top]
    assert p.leq[:, p.index(top)].all()
    lmax = top.length
    codim1 = zd.codim_one_zip()
    assert len(codim1) == len(zd.delta_p)
    for w, labels in codim1.items():
        assert len(labels) == 1
        assert w in p.elements and w.length == lmax - 1
    for i, j in p.covers():
        assert p.elements[i].length < p.elements[j].length
    for w, dm in zip(p.elements, p.dims):
        assert dm == w.length + zd.dims["dim_P"]


def test_codim_one_labels_with_frobenius_moving_delta_p():
    d = build_classical("u_inert", 4, 3, (2, 2))
    zd = build_zip_datum(d, ())
    labels = zd.codim_one_zip()
    assert len(labels) == 3 and all(len(v) == 1 for v in labels.values())


@pytest.mark.parametrize("family,n,sig,size", [
    ("gl_split", 2, None, 2), ("sp_split", 2, None, 8), ("sp_split", 3, None, 48),
])
def test_flag_posets(family, n, sig, size):
    d = build_classical(family, n, 3, sig or ((n, 0) if family == "gl_split" else None))
    zd = build_zip_datum(d)
    p = flag_orbit_poset(zd)
    assert len(p) == size
    assert p.is_partial_order()
    top = p.elements[p.maximal()[0]]
    assert top == zd.w0
    assert max(p.dims) == zd.dims["dim_G"]
    codim1 = [w for w, c in zip(p.elements, p.codims) if c == 1]
    assert set(codim1) == set(zd.codim_one_flag())
    assert len(codim1) == len(d.delta)


def test_gl2_flag_chain():
    zd = build_zip_datum(build_classical("gl_split", 2, 3, (1, 1)))
    assert flag_orbit_poset(zd).covers() == [(0, 1)]


def test_export_dot_and_json():
    zd = build_zip_datum(build_classical("sp_split", 2, 3))
    p = zip_orbit_poset(zd)
    dot = export_poset(p, "dot")
    assert dot.count("->") == 3 and dot.count("[label=") == 4
    obj = json.loads(export_poset(p, "json"))
    assert [e["dim"] for e in obj["elements"]] == list(p.dims)
    assert poset_from_json(export_poset(p, "json")) == p
    with pytest.raises(ValueError):
        export_poset(p, "xml")


def test_single_element_export():
    d = build_classical("gl_split", 3, 3)
    p = zip_orbit_poset(build_zip_datum(d, d.delta))
    assert len(p) == 1
    dot = export_poset(p, "dot")
    assert "->" not in dot and dot.count("[label=") == 1


def test_export_is_deterministic_and_sorted():
    zd = build_zip_datum(build_classical("u_inert", 4, 3, (2, 2)))
    a = export_poset(zip_orbit_poset(zd), "json")
    b = export_poset(zip_orbit_poset(zd), "json")
    assert a == b
    lens = [e["length"] for e in json.loads(a)["elements"]]
    assert lens == sorted(lens)


def test_round_trip_flag_poset():
    zd = build_zip_datum(build_classical("u_inert", 3, 3, (2, 1)))
    p = flag_orbit_poset(zd)
    assert poset_from_json(export_poset(p)) == p
