import math
from fractions import Fraction

import pytest

from wpvol.kernels import h_double_moment, h_moment
from wpvol.oracle import kernel_identity_report, quad_double_moment, quad_moment


def exact_moment_float(k, t):
    return h_moment(k).eval_rational([Fraction(t)]).to_float()


def exact_double_float(i, j, t):
    return h_double_moment(i, j).eval_rational([Fraction(t)]).to_float()


# ----------------------------------------------------------------------
# single integral


def test_quad_first_moment_at_zero():
    got = quad_moment(0, 0.0)
    assert got.value == pytest.approx(2 * math.pi**2 / 3, rel=1e-10)


def test_quad_first_moment_at_one():
    got = quad_moment(0, 1.0)
    assert got.value == pytest.approx(2 * math.pi**2 / 3 + 0.5, rel=1e-10)


def test_quad_third_moment_constant():
    got = quad_moment(1, 0.0)
    assert got.value == pytest.approx(28 * math.pi**4 / 15, rel=1e-10)


@pytest.mark.parametrize("k", range(9))
@pytest.mark.parametrize("t", [0.0, 1.0, 5.0])
def test_closed_form_matches_quadrature(k, t):
    """The gate for the single-moment closed form."""
    ref = exact_moment_float(k, t)
    got = quad_moment(k, t)
    assert abs(got.value - ref) / max(1.0, abs(ref)) < 1e-8


@pytest.mark.parametrize("k,t", [(0, 0.0), (3, 1.0), (8, 5.0), (10, 20.0)])
def test_single_error_estimate_bounds_truth(k, t):
    ref = exact_moment_float(k, t)
    got = quad_moment(k, t)
    assert abs(got.value - ref) <= got.abs_err + 1e-14 * abs(ref)
    assert got.spec.truncation > t


# ----------------------------------------------------------------------
# double integral


def test_quad_double_moment_at_origin():
    got = quad_double_moment(0, 0, 0.0)
    assert got.value == pytest.approx(28 * math.pi**4 / 90, rel=1e-10)


def test_quad_double_symmetry():
    a = quad_double_moment(0, 2, 1.5)
    b = quad_double_moment(2, 0, 1.5)
    assert a.value == pytest.approx(b.value, rel=1e-10)


def test_quad_double_beta_reduction_instance():
    got = quad_double_moment(0, 1, 1.0)
    assert got.value == pytest.approx(exact_moment_float(2, 1.0) / 20, rel=1e-10)


@pytest.mark.parametrize("i,j", [(i, j) for i in range(6) for j in range(6 - i)])
@pytest.mark.parametrize("t", [0.0, 1.0, 5.0])
def test_double_closed_form_matches_quadrature(i, j, t):
    """The gate for the Beta-reduction closed form."""
    ref = exact_double_float(i, j, t)
    got = quad_double_moment(i, j, t)
    assert abs(got.value - ref) / max(1.0, abs(ref)) < 1e-8


@pytest.mark.parametrize("i,j,t", [(0, 0, 0.0), (2, 3, 5.0), (5, 0, 10.0)])
def test_double_error_estimate_bounds_truth(i, j, t):
    ref = exact_double_float(i, j, t)
    got = quad_double_moment(i, j, t)
    assert abs(got.value - ref) <= got.abs_err + 1e-14 * abs(ref)


# ----------------------------------------------------------------------
# kernel identity suite


def test_identity_report_passes():
    report = kernel_identity_report()
    by_name = {rec["check"]: rec for rec in report}
    assert by_name["dD/dx = H(y+z,x)"]["max_abs_dev"] < 1e-6
    assert by_name["2 dR/dx = H(z,x+y)+H(z,x-y)"]["max_abs_dev"] < 1e-6
    assert by_name["R(x,y,z)+R(x,z,y) = x+D(x,y,z)"]["max_abs_dev"] < 1e-10
    assert all(rec["pass"] for rec in report)
