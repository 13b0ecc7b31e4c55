from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wpvol.exact import PiPoly
from wpvol.lpoly import LPoly, mul_disjoint


def pi2(q=1):
    return PiPoly.monomial(1, Fraction(q))


def v04():
    # (4 pi^2 + L1^2 + L2^2 + L3^2 + L4^2) / 2
    terms = {(0, 0, 0, 0): pi2(2)}
    for i in range(4):
        alpha = [0] * 4
        alpha[i] = 1
        terms[tuple(alpha)] = PiPoly.rational(Fraction(1, 2))
    return LPoly(4, terms)


def v11_true():
    return LPoly(1, {(0,): pi2(Fraction(1, 6)), (1,): PiPoly.rational(Fraction(1, 24))})


# ----------------------------------------------------------------------
# construction and basic arithmetic


def test_zero_coefficients_pruned():
    p = LPoly(2, {(1, 0): PiPoly.zero(), (0, 1): PiPoly.rational(1)})
    assert len(p) == 1


def test_key_length_enforced():
    with pytest.raises(ValueError):
        LPoly(2, {(1,): PiPoly.rational(1)})


def test_unit_multiplication():
    v = v04()
    assert LPoly.one(4) * v == v


def test_mul_disjoint_monomials():
    x2 = LPoly.monomial(1, (1,))
    y2 = LPoly.monomial(1, (1,))
    prod = mul_disjoint(x2, [0], y2, [1], 2)
    assert prod == LPoly.monomial(2, (1, 1))


def test_mul_disjoint_constants():
    one3 = LPoly.one(3)
    prod = mul_disjoint(one3, [0, 1, 2], one3, [3, 4, 5], 6)
    assert prod == LPoly.one(6)


def test_mul_disjoint_rejects_overlap():
    x2 = LPoly.monomial(1, (1,))
    with pytest.raises(ValueError):
        mul_disjoint(x2, [0], x2, [0], 2)


# ----------------------------------------------------------------------
# calculus


def test_integrate_back_constant():
    assert LPoly.one(1).integrate_back() == LPoly.one(1)


def test_integrate_back_divides_by_odd_integers():
    p = LPoly(1, {(0,): pi2(Fraction(1, 6)), (1,): PiPoly.rational(Fraction(3, 8))})
    q = p.integrate_back()
    assert q == LPoly(
        1, {(0,): pi2(Fraction(1, 6)), (1,): PiPoly.rational(Fraction(1, 8))}
    )


def test_integrate_back_recovers_torus_volume():
    derivative = LPoly(
        1, {(0,): pi2(Fraction(1, 6)), (1,): PiPoly.rational(Fraction(1, 8))}
    )
    assert derivative.integrate_back() == v11_true()


def test_partial_factor_of_constant_is_zero():
    assert LPoly.one(2).partial_factor(0).is_zero()


def test_partial_factor_torus():
    q = v11_true().partial_factor(0)
    assert q == LPoly.constant(1, Fraction(1, 12))


def test_partial_factor_four_boundaries():
    q = v04().partial_factor(3)
    assert q == LPoly.one(4)


def test_subst_single_variable():
    p = LPoly.monomial(2, (0, 1))
    assert p.subst_two_pi_i(1) == LPoly.constant(1, pi2(-4))


def test_subst_into_four_boundary_volume():
    got = v04().subst_two_pi_i(3)
    want = LPoly(
        3,
        {
            (1, 0, 0): PiPoly.rational(Fraction(1, 2)),
            (0, 1, 0): PiPoly.rational(Fraction(1, 2)),
            (0, 0, 1): PiPoly.rational(Fraction(1, 2)),
        },
    )
    assert got == want


def test_subst_kills_torus_volume():
    assert v11_true().subst_two_pi_i(0).is_zero()


def test_antiderivative_of_one():
    got = LPoly.one(1).antiderivative(0)
    assert got == LPoly.monomial(1, (1,), Fraction(1, 2))


def test_antiderivative_quadratic():
    got = LPoly.monomial(1, (1,)).antiderivative(0)
    assert got == LPoly.monomial(1, (2,), Fraction(1, 4))


def test_string_identity_for_three_boundaries():
    # sum_k int L_k V_{0,3} dL_k equals V_{0,4} at L_4 = 2 pi i
    one3 = LPoly.one(3)
    total = LPoly.zero(3)
    for k in range(3):
        total = total + one3.antiderivative(k)
    assert total == v04().subst_two_pi_i(3)


# ----------------------------------------------------------------------
# permutations


def test_identity_permutation():
    v = v04()
    assert v.permute([0, 1, 2, 3]) == v


def test_symmetric_polynomial_stays_fixed():
    v = v04()
    assert v.permute([1, 0, 3, 2]) == v
    assert v.is_symmetric()


def test_asymmetric_detected():
    p = LPoly.monomial(2, (1, 0))
    assert not p.is_symmetric()


# ----------------------------------------------------------------------
# properties

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=8)
pipolys = st.dictionaries(st.integers(0, 3), rationals, max_size=2).map(PiPoly)


def lpolys(n, max_exp=3, max_terms=4):
    keys = st.tuples(*([st.integers(0, max_exp)] * n))
    return st.dictionaries(keys, pipolys, max_size=max_terms).map(lambda d: LPoly(n, d))


@settings(max_examples=50)
@given(lpolys(2))
def test_integrate_back_round_trip(q):
    # multiply each L_1^(2k) coefficient by 2k+1 (the derivative of L_1 q),
    # then integrate back: must recover q
    p = LPoly(2, {a: c * (2 * a[0] + 1) for a, c in q.items()})
    assert p.integrate_back() == q


@settings(max_examples=50)
@given(lpolys(2), lpolys(2), rationals)
def test_subst_commutes_with_add_and_scale(a, b, c):
    assert (a + b).subst_two_pi_i(0) == a.subst_two_pi_i(0) + b.subst_two_pi_i(0)
    assert a.scale(c).subst_two_pi_i(0) == a.subst_two_pi_i(0).scale(c)


@settings(max_examples=40)
@given(lpolys(3), st.permutations(range(3)), st.permutations(range(3)))
def test_permute_is_group_action(p, sigma, tau):
    composed = [tau[sigma[i]] for i in range(3)]
    assert p.permute(sigma).permute(tau) == p.permute(composed)


@settings(max_examples=50)
@given(lpolys(2))
def test_antiderivative_then_partial_recovers(p):
    for k in (0, 1):
        assert p.antiderivative(k).partial_factor(k) == p


@settings(max_examples=40)
@given(lpolys(2))
def test_record_round_trip_is_exact(p):
    records = p.to_records()
    assert LPoly.from_records(2, records) == p
    # canonical order: graded lexicographic, then pi power
    keys = [(sum(r["alpha"]), tuple(r["alpha"]), r["pi_power"]) for r in records]
    assert keys == sorted(keys)


# ----------------------------------------------------------------------
# evaluation


def test_eval_rational():
    v = v04()
    got = v.eval_rational([1, 1, 1, 1])
    assert got == PiPoly({1: Fraction(2), 0: Fraction(2)})
    assert v.eval_rational([0, 0, 0, 0]) == pi2(2)


def test_eval_wrong_arity():
    with pytest.raises(ValueError):
        v04().eval_rational([1, 2])
