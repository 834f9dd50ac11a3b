import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zipstrata.roots import build_classical, is_dominant, dot, longest_element
from zipstrata.strata import build_zip_datum
from zipstrata.weights import (
    chevalley_divisor, condition_funda_a, condition_pair, delta_alpha, determinant_weight,
    frob_on_cochar, fundamental_char, in_gs_cone, in_gs_cone_via_dominance,
    is_restricted, lang_pushforward, levi_system, levi_weight_support, schubert_weight,
    steinberg_decompose, steinberg_recompose, vgs_full, weight_filter_member,
    weight_table, weyl_dimension,
)

from conftest import all_cases


def zd(family, n, q, sig=None):
    return build_zip_datum(build_classical(family, n, q, sig))


# -- closed forms of the weight tables ------------------------------------------

def siegel_table(n, d, q):
    return tuple(a - b for a, b in zip([1] * d + [0] * (n - d), [0] * (n - d) + [q] * d))


def unitary_table(r, s, d, q):
    n = r + s
    base = [1] * d + [0] * (n - d)
    extra = [0] * r + [q] * d + [0] * (s - d) if d <= s else [q] * (d - s) + [0] * (n - d) + [q] * s
    return tuple(a + b for a, b in zip(base, extra))


def split_table(r, s, d, q):
    n = r + s
    base = [1] * d + [0] * (n - d)
    extra = [0] * (r - d) + [-q] * d + [0] * s if d <= r else [-q] * r + [0] * (n - d) + [-q] * (d - r)
    return tuple(a + b for a, b in zip(base, extra))


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("n", range(1, 9))
def test_siegel_table(n, q):
    z = zd("sp_split", n, q)
    for d in range(1, n + 1):
        assert schubert_weight(z, fundamental_char(n, d)) == siegel_table(n, d, q)


def test_siegel_n4_q3_rows():
    rows = weight_table(zd("sp_split", 4, 3))
    assert [r["lambda"] for r in rows] == [
        [1, 0, 0, -3], [1, 1, -3, -3], [1, -2, -2, -3], [-2, -2, -2, -2]]


@pytest.mark.parametrize("q", [2, 3, 5, 7])
@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2), (5, 1)])
def test_unitary_and_split_tables(r, s, q):
    n = r + s
    u = zd("u_inert", n, q, (r, s))
    g = zd("gl_split", n, q, (r, s))
    for d in range(1, n):
        assert schubert_weight(u, fundamental_char(n, d)) == unitary_table(r, s, d, q)
        assert schubert_weight(g, fundamental_char(n, d)) == split_table(r, s, d, q)
    assert determinant_weight(u) == (q + 1,) * n
    assert determinant_weight(g) == (1 - q,) * n


def test_unitary_high_regime_matches_det_shift():
    # for s < d the weight minus lambda_det is the complementary vector
    q, r, s = 5, 3, 1
    u = zd("u_inert", 4, q, (r, s))
    for d in range(s + 1, 4):
        lam = schubert_weight(u, fundamental_char(4, d))
        diff = tuple(a - b for a, b in zip(lam, determinant_weight(u)))
        expect = tuple([0] * d + [-1] * (4 - d))
        expect = tuple(a + b for a, b in zip(expect, [0] * (d - s) + [-q] * (4 - d) + [0] * s))
        assert diff == expect


def test_schubert_weight_of_zero():
    assert schubert_weight(zd("u_inert", 3, 5, (2, 1)), (0, 0, 0)) == (0, 0, 0)


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4),
       st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_schubert_weight_is_additive(a, b):
    z = zd("u_inert", 4, 3, (3, 1))
    ab = tuple(x + y for x, y in zip(a, b))
    assert schubert_weight(z, ab) == tuple(
        x + y for x, y in zip(schubert_weight(z, a), schubert_weight(z, b)))


# -- divisors -------------------------------------------------------------------

def test_chevalley_examples():
    gl3 = build_classical("gl_split", 3, 5)
    assert chevalley_divisor(gl3, (1, 0, 0)).mults == (1, 0)
    assert chevalley_divisor(gl3, (0, 0, 0)).is_zero()
    sp2 = build_classical("sp_split", 2, 5)
    assert chevalley_divisor(sp2, (1, 1)).mults == (0, 1)


@given(st.lists(st.integers(0, 6), min_size=3, max_size=3))
def test_dominant_divisors_are_effective(steps):
    d = build_classical("sp_split", 3, 5)
    chi = (steps[0] + steps[1] + steps[2], steps[1] + steps[2], steps[2])
    div = chevalley_divisor(d, chi)
    assert div.dominant and all(m >= 0 for m in div.mults)
    assert div.is_zero() == (chi == (0, 0, 0))


# -- cones ----------------------------------------------------------------------

def test_gs_cone_examples():
    assert in_gs_cone(zd("gl_split", 4, 5, (2, 2)), (0, -1, 0, 0))
    z = zd("gl_split", 3, 5, (2, 1))
    assert not in_gs_cone(z, (1, 0, -1))
    assert not in_gs_cone_via_dominance(z, (1, 0, -1))
    assert in_gs_cone(z, (0, 0, 0))


@pytest.mark.parametrize("family,n,sig", all_cases(4))
def test_gs_cone_criteria_agree(family, n, sig):
    z = zd(family, n, 3, sig)
    rng = random.Random(7)
    for _ in range(150):
        lam = tuple(rng.randint(-4, 4) for _ in range(n))
        assert in_gs_cone(z, lam) == in_gs_cone_via_dominance(z, lam)


def test_siegel_e1_is_not_admissible():
    z = zd("sp_split", 2, 3)
    assert is_dominant(z.datum, (1, 0))
    assert not in_gs_cone(z, (1, 0))
    assert not vgs_full(z, (1, 0))
    assert vgs_full(z, (0, 0))


# -- delta_alpha ----------------------------------------------------------------

@pytest.mark.parametrize("family,n,sig", all_cases(5))
@pytest.mark.parametrize("q", [2, 5])
def test_delta_alpha_solves_lang_equation(family, n, sig, q):
    z = zd(family, n, q, sig)
    d = z.datum
    for i in d.delta:
        delta = delta_alpha(z, i)
        assert all(isinstance(x, Fraction) for x in delta)
        assert lang_pushforward(z, delta) == tuple(Fraction(x) for x in d.simple_coroots[i])
        if family != "u_inert":
            assert delta == tuple(Fraction(-x, q - 1) for x in d.simple_coroots[i])


def test_delta_alpha_unitary_n2_closed_form():
    z = zd("u_inert", 2, 5, (1, 1))
    cor = z.datum.simple_coroots[0]
    sig = frob_on_cochar(z.datum, cor)
    assert delta_alpha(z, 0) == tuple(Fraction(a + 5 * b, 1 - 25) for a, b in zip(cor, sig))


def test_weight_filter_split_reduction():
    for sig in [(2, 0), (1, 1)]:
        z = zd("gl_split", 2, 5, sig)
        for nu in [(a, b) for a in range(-3, 4) for b in range(-3, 4)]:
            expect = all(dot(nu, z.datum.simple_coroots[i]) <= 0 for i in z.delta_p)
            assert weight_filter_member(z, nu) == expect
    assert weight_filter_member(zd("u_inert", 3, 5, (2, 1)), (0, 0, 0))


# -- Levi modules -----------------------------------------------------------------

def test_levi_supports_gl2():
    z = zd("gl_split", 2, 5, (2, 0))
    assert levi_weight_support(z, (1, 0)).entries == {(1, 0): 1, (0, 1): 1}
    assert levi_weight_support(z, (2, 0)).entries == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    torus = zd("gl_split", 2, 5, (1, 1))
    assert levi_weight_support(torus, (4, -7)).entries == {(4, -7): 1}
    with pytest.raises(ValueError):
        levi_weight_support(z, (0, 1))


def test_weyl_dimensions():
    gl2 = levi_system(build_classical("gl_split", 2, 5))
    gl3 = levi_system(build_classical("gl_split", 3, 5))
    assert weyl_dimension(gl2, (1, 0)) == 2
    assert weyl_dimension(gl3, (1, 0, 0)) == 3
    assert weyl_dimension(gl2, (3, 0)) == 4
    assert levi_weight_support(gl2, (3, 0)).total() == 4


def test_adjoint_multiplicity_c2():
    sp = levi_system(build_classical("sp_split", 2, 5))
    adj = levi_weight_support(sp, (2, 0))     # highest root of C2
    assert adj.entries[(0, 0)] == 2 and adj.total() == 10


@pytest.mark.parametrize("family,n,sig", all_cases(4))
def test_freudenthal_total_equals_weyl_dimension(family, n, sig):
    z = zd(family, n, 3, sig)
    sys_I = levi_system(z)
    rng = random.Random(11)
    for _ in range(10):
        lam = sys_I.dominant_conjugate(tuple(rng.randint(-3, 3) for _ in range(n)))
        assert levi_weight_support(sys_I, lam).total() == weyl_dimension(sys_I, lam)


# -- Steinberg digits ---------------------------------------------------------------

def test_steinberg_torus_example():
    d = build_classical("gl_split", 1, 3)
    assert steinberg_decompose(d, (4,), 1) == [(1,), (1,)]


def test_steinberg_restricted_input_is_its_own_digit():
    d = build_classical("sp_split", 2, 5)
    assert steinberg_decompose(d, (3, 1), 0) == [(3, 1)]
    assert steinberg_decompose(d, (9, 1), 0) is None


def test_steinberg_rejects_non_dominant():
    with pytest.raises(ValueError):
        steinberg_decompose(build_classical("sp_split", 2, 5), (0, 1), 1)


@pytest.mark.parametrize("family,n,sig", [("sp_split", 3, None), ("u_inert", 3, (2, 1)),
                                          ("u_inert", 4, (2, 2)), ("gl_split", 3, (2, 1))])
@pytest.mark.parametrize("q", [3, 5])
def test_steinberg_round_trip(family, n, sig, q):
    d = build_classical(family, n, q, sig)
    rng = random.Random(3)
    for _ in range(40):
        pairings = [rng.randrange(q * q) for _ in d.delta]
        lam = _from_pairings(d, pairings, rng)
        digits = steinberg_decompose(d, lam, 1)
        assert digits is not None
        assert all(is_restricted(d, x) for x in digits)
        assert steinberg_recompose(d, digits) == lam


def _from_pairings(d, pairings, rng):
    """Some integral character with the given simple-coroot pairings."""
    from zipstrata.roots import integer_solve
    lam = integer_solve([d.simple_coroots[i] for i in d.delta], d.rank, pairings)
    assert lam is not None
    if d.family != "sp_split":
        shift = rng.randint(-3, 3)
        lam = tuple(x + shift for x in lam)
    return tuple(lam)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_condition_weights_split_into_pair(q):
    z = zd("sp_split", 3, q)
    d = z.datum
    for i in d.delta:
        chi = fundamental_char(3, i + 1)
        assert condition_funda_a(z, chi, i)
        lam = schubert_weight(z, chi)
        digits = steinberg_decompose(d, lam, 1, subset=z.levi, twisted=False)
        assert digits is not None
        assert tuple(digits[0]) == condition_pair(z, chi)[0]
        assert tuple(digits[1]) == condition_pair(z, chi)[1]


def test_condition_boundaries():
    z = zd("sp_split", 2, 3)
    assert not condition_funda_a(z, (0, 0), 0)
    assert not condition_funda_a(z, (3, 0), 0)     # pairing = q
    assert condition_funda_a(z, (1, 0), 0)


def test_levi_dimension_bound():
    from zipstrata.weights import levi_dimension_bound
    assert levi_dimension_bound(zd("sp_split", 3, 5), (1, 0, 0)) == (3, 6)
    assert levi_dimension_bound(zd("gl_split", 4, 5, (3, 1)), (1, 0, 0, 0)) == (1, 4)
    assert levi_dimension_bound(zd("gl_split", 3, 5, (3, 0)), (2, 1, 0)) == (8, 8)
