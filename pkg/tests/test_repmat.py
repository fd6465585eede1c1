import math

import numpy as np
import pytest

from thetatorus import nctorus as nc
from thetatorus import repmat as rm
from thetatorus import theta as th


def test_rep_relations():
    for p, q in [(1, 3), (2, 5), (3, 7)]:
        rep = rm.build_rep(p, q, 0.13, 0.27)
        omega = np.exp(2j * np.pi * p / q)
        assert np.allclose(rep.M1 @ rep.M2, omega * rep.M2 @ rep.M1, atol=1e-13)
        assert np.allclose(rep.M1 @ rep.M1.conj().T, np.eye(q), atol=1e-13)
        assert np.allclose(np.linalg.matrix_power(rep.M1, q),
                           np.exp(2j * np.pi * q * 0.13) * np.eye(q), atol=1e-12)


def test_build_rep_validation():
    with pytest.raises(ValueError):
        rm.build_rep(2, 4, 0, 0)  # gcd != 1
    with pytest.raises(ValueError):
        rm.build_rep(1, 0, 0, 0)


def test_represent_homomorphism():
    alpha = 2 / 5
    rep = rm.build_rep(2, 5, 0.1, 0.7)
    x = nc.curly(1, 1, "float", alpha)
    y = nc.curly(2, 0, "float", alpha) + nc.monomial(1, -2, 0.3 + 1j, "float", alpha)
    lhs = rm.represent(nc.mul(x, y), rep)
    rhs = rm.represent(x, rep) @ rm.represent(y, rep)
    assert np.linalg.norm(lhs - rhs, 2) < 1e-10
    assert np.linalg.norm(rm.represent(nc.adjoint(x), rep)
                          - rm.represent(x, rep).conj().T, 2) < 1e-12


def test_represent_alpha_mismatch():
    rep = rm.build_rep(1, 3, 0.0, 0.0)
    with pytest.raises(ValueError):
        rm.represent(nc.curly(1, 0, "float", 0.4), rep)


def test_harper_norm_anchors():
    assert abs(rm.harper_norm(1, 2, 2.0) - 2 * math.sqrt(2)) < 1e-8
    assert abs(rm.harper_norm(1, 3, 2.0) - (1 + math.sqrt(3))) < 1e-6


def test_spectrum_q2_symmetric_interval():
    est = rm.spectrum(1, 2, 2.0)
    lo = min(b[0] for b in est.bands)
    hi = max(b[1] for b in est.bands)
    assert abs(hi - 2 * math.sqrt(2)) < 1e-4
    assert abs(lo + 2 * math.sqrt(2)) < 1e-4


def test_spectrum_band_count_q3():
    est = rm.spectrum(1, 3, 2.0)
    assert len(est.bands) == 3
    assert all(b[0] <= b[1] for b in est.bands)


def test_duality_exact_at_lambda_two():
    assert rm.check_duality(1, 3, 2.0) < 1e-12


def test_duality_small_residuals():
    assert rm.check_duality(1, 3, 1.0) < 1e-4
    assert rm.check_duality(2, 5, 1.5) < 1e-4


def test_truncated_heisenberg_diagonal_window():
    alpha = 0.7
    trunc = rm.truncated_heisenberg(alpha, 32)
    c, C = th.extreme_values(1 / (2 * alpha))
    d = np.diag(trunc.matrix).real
    s = math.sqrt(2)
    assert np.all(d >= c / s - 1e-12)
    assert np.all(d <= C / s + 1e-12)
    assert trunc.min_singular_value > 0


def test_truncated_heisenberg_validation():
    with pytest.raises(ValueError):
        rm.truncated_heisenberg(1.2, 32)
    with pytest.raises(ValueError):
        rm.truncated_heisenberg(0.5, 4)
