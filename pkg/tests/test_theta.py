import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from thetatorus import theta as th

TAU_I = th.UpperHalfPoint(0.0, 1.0)


def test_theta_zero_point_value():
    # frozen from a direct-summation oracle
    tv = th.eval_theta(0.0, TAU_I)
    assert abs(tv.value - 1.0864348112133080) < 1e-14
    assert tv.tail_bound < 1e-12


def test_unique_zero_of_theta():
    tv = th.eval_theta(0.5 + 0.5j, TAU_I)
    assert abs(tv.value) <= tv.tail_bound + 1e-15


def test_tail_bound_sound():
    for z, tau in [(0.3, 1j), (0.1 + 0.4j, 0.7j), (1.2 - 0.2j, 2.5j)]:
        coarse = th.eval_theta(z, tau, tol=1e-6)
        fine = th.eval_theta(z, tau, tol=1e-15)
        assert abs(coarse.value - fine.value) <= coarse.tail_bound


def test_char_reduction():
    # theta_{a,b}(z,tau) = exp(pi i tau a^2 + 2 pi i a (z+b)) theta(z+a tau+b, tau)
    tau = 0.8j
    for a, b, z in [(0.25, 0.5, 0.1), (-0.5, 0.3, 0.2 + 0.1j), (1.5, -0.25, -0.4)]:
        lhs = th.theta_char(a, b, z, tau)
        rhs = cmath.exp(1j * math.pi * tau * a * a + 2j * math.pi * a * (z + b)) \
            * th.theta(z + a * tau + b, tau)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


def test_parity_split_and_shifts():
    tau = 1.3j
    for z in (0.17, 0.42 + 0.2j):
        ev = th.theta_parity("even", z, tau)
        od = th.theta_parity("odd", z, tau)
        assert abs(ev + od - th.theta(z, tau)) < 1e-13
        assert abs(th.theta_parity("even", z + 0.5, tau) - ev) < 1e-13
        assert abs(th.theta_parity("odd", z + 0.5, tau) + od) < 1e-13
        # odd part as a difference of two thetas
        assert abs(od - (th.theta(z, tau) - th.theta(2 * z, 4 * tau))) < 1e-13


def test_env_tolerance_override(monkeypatch):
    monkeypatch.setenv("THETA_TORUS_TOL", "1e-4")
    assert th.default_tol() == 1e-4
    monkeypatch.delenv("THETA_TORUS_TOL")
    assert th.default_tol() == 1e-12


def test_invalid_tau_rejected():
    with pytest.raises(ValueError):
        th.eval_theta(0.0, th.UpperHalfPoint(0.0, -1.0))
    with pytest.raises(ValueError):
        th.eval_theta(0.0, 0.5 - 1j)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.2, max_value=4.0))
def test_modularity_random_alpha(alpha):
    lhs = th.theta(0.0, 1j * alpha)
    rhs = th.theta(0.0, 1j / alpha) / math.sqrt(alpha)
    assert abs(lhs - rhs) < 1e-11 * abs(rhs)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=-1.5, max_value=1.5),
       st.floats(min_value=0.3, max_value=3.0))
def test_transformation_random(x, t):
    lhs = th.theta(x / (1j * t), 1j / t)
    rhs = math.sqrt(t) * cmath.exp(math.pi * x * x / t) * th.theta(x, 1j * t)
    assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))


def test_bound_functions_consistency():
    for t in (0.6, 1.0, 2.0):
        c, C = th.extreme_values(t)
        assert 0 < c < C
        bf = th.bound_suite(t)
        assert bf.C / bf.c < bf.h  # ratio bound is an upper bound
        assert abs(bf.c - c) < 1e-14 and abs(bf.C - C) < 1e-14


def test_classical_suite_passes():
    rep = th.check_classical_identities()
    assert rep["passed"]
    assert all(v <= rep["tol"] for v in rep["identities"].values())
    assert all(rep["inequalities"].values())
