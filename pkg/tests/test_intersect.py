from fractions import Fraction

import pytest

from wpvol.exact import PiPoly
from wpvol.intersect import (
    check_dilaton,
    check_do_dilaton,
    check_do_string,
    check_dvv,
    check_string,
    compact_volume,
    genus0_correlator,
    intersection_number,
    psi_correlator,
    run_relation_suite,
    volume_coefficient,
    zograf_ratio,
)
from wpvol.recursion import VolumeTable, iter_signatures, moduli_dim


@pytest.fixture(scope="module")
def table():
    t = VolumeTable()
    t.ensure(4)
    return t


# ----------------------------------------------------------------------
# coefficient extraction


def test_torus_coefficient(table):
    assert volume_coefficient(table, 1, 1, (1,)) == PiPoly.rational(Fraction(1, 24))


def test_four_boundary_constant(table):
    got = volume_coefficient(table, 0, 4, (0, 0, 0, 0))
    assert got == PiPoly.monomial(1, 2)


def test_genus_two_top_coefficient(table):
    got = volume_coefficient(table, 2, 1, (4,))
    assert got == PiPoly.rational(Fraction(1, 442368))


def test_out_of_range_alpha_is_zero(table):
    assert volume_coefficient(table, 0, 4, (5, 0, 0, 0)).is_zero()


# ----------------------------------------------------------------------
# intersection numbers


def test_tau1_genus_one(table):
    assert psi_correlator(table, 1, (1,)) == Fraction(1, 24)


def test_tau0_cubed(table):
    assert psi_correlator(table, 0, (0, 0, 0)) == 1


def test_tau4_genus_two(table):
    assert psi_correlator(table, 2, (4,)) == Fraction(1, 1152)


def test_degree_mismatch_vanishes(table):
    assert psi_correlator(table, 1, (2,)) == 0
    assert psi_correlator(table, 0, (0, 0)) == 0  # unstable


def test_kappa_normalization_is_rational(table):
    # <kappa_1>_{1,1} = 1/24: omega form pi^2/12, kappa form 1/24
    value = intersection_number(table, 1, (0,))
    assert value.m == 1
    assert value.omega == PiPoly.monomial(1, Fraction(1, 12))
    assert value.kappa == Fraction(1, 24)


def test_both_normalizations_differ_by_two_pi_squared_power(table):
    value = intersection_number(table, 2, (1,))
    scale = PiPoly.monomial(value.m, Fraction(2**value.m))
    assert value.omega == scale * Fraction(value.kappa)


def test_top_degree_symbol_formula_agrees(table):
    # at |alpha| = 3g-3+n the (alpha)_g normalization has no residual factor:
    # C_alpha 2^(-delta) alpha! 2^|alpha| equals the correlator
    from math import factorial, prod

    for g, alpha in [(1, (1,)), (0, (1, 0, 0, 0)), (2, (4,)), (1, (0, 2))]:
        n = len(alpha)
        c = volume_coefficient(table, g, n, alpha).coefficient(0)
        delta = 1 if (g, n) == (1, 1) else 0
        symbol = (
            c
            * Fraction(2 ** sum(alpha), 2**delta)
            * prod(factorial(a) for a in alpha)
        )
        assert symbol == psi_correlator(table, g, alpha)


def test_genus0_closed_form():
    assert genus0_correlator((0, 0, 0)) == 1
    assert genus0_correlator((1, 0, 0, 0)) == 1
    assert genus0_correlator((2, 0, 0, 0, 0)) == 1
    assert genus0_correlator((1, 1, 0, 0, 0)) == 2
    assert genus0_correlator((1, 0, 0)) == 0  # degree mismatch


def test_genus0_cross_check(table):
    from wpvol.intersect import _sorted_compositions

    for n in range(3, 8):
        for alpha in _sorted_compositions(n - 3, n):
            assert psi_correlator(table, 0, alpha) == genus0_correlator(alpha)


# ----------------------------------------------------------------------
# string / dilaton


def test_dilaton_torus(table):
    assert check_dilaton(table, 1, (1,)).passed


def test_string_genus_zero_is_pascal(table):
    rec = check_string(table, 0, (1, 0, 0))
    assert rec.passed and rec.lhs == "1"


def test_dilaton_three_boundaries(table):
    rec = check_dilaton(table, 0, (0, 0, 0))
    assert rec.passed and rec.lhs == "1" and rec.rhs == "1"


# ----------------------------------------------------------------------
# DVV


def test_dvv_first_nontrivial_case(table):
    assert check_dvv(table, 1, (1, 0)).passed


def test_dvv_genus_zero_five_boundaries(table):
    assert check_dvv(table, 0, (2, 0, 0, 0, 0)).passed


def test_dvv_genus_two(table):
    rec = check_dvv(table, 2, (4,))
    assert rec.passed
    assert rec.lhs == "105/128"  # 9!! / 1152


# ----------------------------------------------------------------------
# boundary removal


def test_do_string_three_boundaries(table):
    assert check_do_string(table, 0, 3).passed


def test_do_dilaton_three_boundaries(table):
    assert check_do_dilaton(table, 0, 3).passed


def test_do_equations_at_torus(table):
    assert check_do_string(table, 1, 1).passed
    assert check_do_dilaton(table, 1, 1).passed


def test_compact_genus_two(table):
    assert compact_volume(table, 2) == PiPoly.monomial(3, Fraction(43, 2160))


def test_compact_genus_three(table):
    assert compact_volume(table, 3) == PiPoly.monomial(6, Fraction(176557, 1209600))


def test_compact_needs_genus_two(table):
    with pytest.raises(ValueError):
        compact_volume(table, 1)


# ----------------------------------------------------------------------
# suites and diagnostics


def test_suites_pass_at_dimension_three():
    t = VolumeTable()
    t.ensure(3)
    for relation in ("string", "dilaton", "dvv", "do-string", "do-dilaton"):
        records = run_relation_suite(t, relation, 3)
        assert records, relation
        assert all(r.passed for r in records), relation


def test_correlators_positive_in_range(table):
    for g, n in iter_signatures(4):
        d = moduli_dim(g, n)
        from wpvol.intersect import _sorted_compositions

        for alpha in _sorted_compositions(d, n):
            assert psi_correlator(table, g, alpha) > 0


def test_zograf_ratio_finite_positive(table):
    r = zograf_ratio(table, 2, 1)
    assert r > 0
    prev = None
    for g in (1, 2):
        val = zograf_ratio(table, g, 1)
        assert val > 0
        if prev is not None:
            assert val != prev
        prev = val


def test_check_record_serialization(table):
    rec = check_dvv(table, 2, (4,))
    payload = rec.to_json()
    assert payload["relation"] == "dvv"
    assert payload["pass"] is True
    assert payload["alpha"] == [4]
    assert payload["lhs"] == payload["rhs"]
