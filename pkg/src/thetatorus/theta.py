"""Jacobi theta functions with rigorous truncation bounds.

theta(z, tau) = sum_m exp(pi*i*m^2*tau + 2*pi*i*m*z), Im(tau) > 0.

Truncation: for tau = x + iy and z = u + iv we keep |m| <= M where M is the
smallest integer such that the geometric-tail comparison

    exp(-pi*y*M^2 + 2*pi*M*|v|) / (1 - exp(-pi*y*(2M+1) + 2*pi*|v|)) <= tol/2

holds (requiring pi*y*(2M+1) > 2*pi*|v|).  The reported tail_bound is twice
that quantity (both tails).
"""

import math
import os
from dataclasses import dataclass

import numpy as np

HARD_TERM_CAP = 10 ** 6

_DEFAULT_TOL = 1e-12


def default_tol():
    """Default truncation tolerance, overridable via THETA_TORUS_TOL."""
    env = os.environ.get("THETA_TORUS_TOL")
    if env:
        tol = float(env)
        if tol <= 0:
            raise ValueError("THETA_TORUS_TOL must be positive")
        return tol
    return _DEFAULT_TOL


@dataclass(frozen=True)
class UpperHalfPoint:
    re: float
    im: float

    def __post_init__(self):
        if not self.im > 0:
            raise ValueError("UpperHalfPoint requires im > 0")

    @property
    def value(self):
        return complex(self.re, self.im)


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    tail_bound: float
    terms_used: int


@dataclass(frozen=True)
class Characteristics:
    a: float
    b: float


@dataclass(frozen=True)
class BoundFunctions:
    t: float
    r: float
    c: float
    C: float
    h: float
    g: float
    phi: float
    psi_domain_point: float


def _coerce_tau(tau):
    if isinstance(tau, UpperHalfPoint):
        return tau.value
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError("tau must lie in the upper half plane")
    return tau


def _choose_M(y, v, tol):
    """Smallest M satisfying the documented tail rule; returns (M, one-sided bound)."""
    av = abs(v)
    M = 1
    while True:
        gate = math.pi * y * (2 * M + 1) - 2 * math.pi * av
        if gate > 0:
            ratio = math.exp(-gate)
            expo = -math.pi * y * M * M + 2 * math.pi * M * av
            # guard exp overflow for absurd inputs; expo <= 0 once M > 2|v|/y
            bound = math.exp(min(expo, 700.0)) / (1.0 - ratio)
            if bound <= tol / 2:
                return M, bound
        M += 1
        if 2 * M + 1 > HARD_TERM_CAP:
            raise ValueError(
                "theta truncation cap exceeded: z too far from the real axis "
                "for the given tau and tolerance"
            )


def eval_theta(z, tau, tol=None):
    """theta(z, tau) with a rigorous absolute tail bound."""
    if tol is None:
        tol = default_tol()
    if tol <= 0:
        raise ValueError("tol must be positive")
    tau = _coerce_tau(tau)
    z = complex(z)
    M, bound = _choose_M(tau.imag, z.imag, tol)
    m = np.arange(-M, M + 1)
    value = complex(np.sum(np.exp(1j * math.pi * tau * m * m + 2j * math.pi * m * z)))
    return ThetaValue(value=value, tail_bound=2 * bound, terms_used=2 * M + 1)


def _char_sum(ms, a, b, z, tau):
    ma = ms + a
    return complex(np.sum(np.exp(1j * math.pi * tau * ma * ma + 2j * math.pi * ma * (z + b))))


def eval_theta_char(ch, z, tau, tol=None):
    """theta_{a,b}(z, tau) = sum_m exp(pi*i*tau*(m+a)^2 + 2*pi*i*(m+a)*(z+b))."""
    if tol is None:
        tol = default_tol()
    if tol <= 0:
        raise ValueError("tol must be positive")
    tau = _coerce_tau(tau)
    z = complex(z)
    a, b = ch.a, ch.b
    # Terms at index m have shifted index m+a; widening the window by
    # ceil(|a|) makes the plain rule's bound valid for the discarded terms.
    M0, bound = _choose_M(tau.imag, (z + b).imag, tol)
    pad = math.ceil(abs(a))
    M = M0 + pad
    ms = np.arange(-M, M + 1)
    value = _char_sum(ms, a, b, z, tau)
    return ThetaValue(value=value, tail_bound=2 * bound, terms_used=2 * M + 1)


def eval_theta_parity(parity, ch, z, tau, tol=None):
    """Parity-restricted theta with characteristics (sum over odd or even m)."""
    if parity not in ("odd", "even"):
        raise ValueError("parity must be 'odd' or 'even'")
    if tol is None:
        tol = default_tol()
    if tol <= 0:
        raise ValueError("tol must be positive")
    tau = _coerce_tau(tau)
    z = complex(z)
    a, b = ch.a, ch.b
    M0, bound = _choose_M(tau.imag, (z + b).imag, tol)
    pad = math.ceil(abs(a))
    M = M0 + pad
    ms = np.arange(-M, M + 1)
    ms = ms[ms % 2 == (1 if parity == "odd" else 0)]
    value = _char_sum(ms, a, b, z, tau)
    return ThetaValue(value=value, tail_bound=2 * bound, terms_used=len(ms))


def theta(z, tau, tol=None):
    """Convenience: the complex value of theta(z, tau)."""
    return eval_theta(z, tau, tol).value


def theta_char(a, b, z, tau, tol=None):
    return eval_theta_char(Characteristics(a, b), z, tau, tol).value


def theta_parity(parity, z, tau, tol=None):
    return eval_theta_parity(parity, Characteristics(0.0, 0.0), z, tau, tol).value


def extreme_values(t):
    """(c, C) = (min, max) of theta(., it) on R: c = theta(1/2, it), C = theta(0, it)."""
    if not t > 0:
        raise ValueError("t must be positive")
    c = eval_theta(0.5, 1j * t).value.real
    C = eval_theta(0.0, 1j * t).value.real
    return c, C


def _h_of_r(r):
    return math.exp(4 * r / ((1 - r) * (1 - r * r)))


def _g_of_r(r):
    return (2 * r / (1 - r ** 3)) * _h_of_r(r)


def _phi_of_r(r):
    return 4 * r / ((1 - r) * (1 - r ** 3)) + math.log(2) + math.log(r / (1 - r ** 3))


def _psi_of_x(x):
    return (4 * x ** 3 / ((x - 1) * (x ** 3 - 1)) + math.log(2)
            + 2 * math.log(x) - math.log(x ** 3 - 1))


def bound_suite(t):
    """All scalar bound functions at parameter t (r = exp(-pi t))."""
    if not t > 0:
        raise ValueError("t must be positive")
    r = math.exp(-math.pi * t)
    c, C = extreme_values(t)
    return BoundFunctions(
        t=t, r=r, c=c, C=C,
        h=_h_of_r(r), g=_g_of_r(r), phi=_phi_of_r(r),
        psi_domain_point=1.0 / r,
    )


def find_threshold():
    """Root x0 of psi on (1, 20) by bisection to 1e-10; t0 = log(x0)/pi."""
    lo, hi = 1.0 + 1e-9, 20.0
    flo, fhi = _psi_of_x(lo), _psi_of_x(hi)
    if not (flo > 0 > fhi):
        raise RuntimeError("psi root not bracketed on (1, 20)")
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if _psi_of_x(mid) > 0:
            lo = mid
        else:
            hi = mid
    x0 = 0.5 * (lo + hi)
    return x0, math.log(x0) / math.pi


DEFAULT_SAMPLE_SPEC = {
    "modularity_alphas": (0.3, 0.7, 1.6),
    "transform_xs": (0.05, 0.15, 0.25, 0.35, 0.45),
    "transform_ts": (0.6, 0.9, 1.3, 1.7, 2.2),
    "product_points": ((0.13 + 0.05j, 1j), (0.4, 1.5j), (0.27 + 0.1j, 0.8j)),
    "quasi_q": 2,
    "quasi_zs": (0.11, 0.37 + 0.08j, 0.62),
    "ineq_abstract_range": (0.5, 5.0),
    "ineq_ratio_range": (0.527, 5.0),
    "ineq_samples": 200,
}


def _rel_residual(lhs, rhs):
    scale = max(abs(lhs), abs(rhs), 1.0)
    return abs(lhs - rhs) / scale


def check_classical_identities(sample_spec=None, tol=1e-10):
    """Verify the classical scalar theta identities; returns a report dict."""
    spec = dict(DEFAULT_SAMPLE_SPEC)
    if sample_spec:
        spec.update(sample_spec)

    residuals = {}

    # modularity: theta(0, i*alpha) = alpha^{-1/2} theta(0, i/alpha)
    res = 0.0
    for alpha in spec["modularity_alphas"]:
        lhs = theta(0.0, 1j * alpha)
        rhs = theta(0.0, 1j / alpha) / math.sqrt(alpha)
        res = max(res, _rel_residual(lhs, rhs))
    residuals["modularity"] = res

    # transformation: theta(x/(it), i/t) = sqrt(t) exp(pi x^2 / t) theta(x, it)
    res = 0.0
    for x in spec["transform_xs"]:
        for t in spec["transform_ts"]:
            lhs = theta(x / (1j * t), 1j / t)
            rhs = math.sqrt(t) * math.exp(math.pi * x * x / t) * theta(x, 1j * t)
            res = max(res, _rel_residual(lhs, rhs))
    residuals["transformation"] = res

    # infinite product expansion
    res = 0.0
    for z, tau in spec["product_points"]:
        lhs = theta(z, tau)
        qnome = np.exp(2j * math.pi * tau)
        prod = 1.0 + 0j
        for m in range(1, 40):
            prod *= 1.0 - qnome ** m
        for m in range(0, 40):
            w = np.exp((2 * m + 1) * 1j * math.pi * tau)
            prod *= (1.0 + w * np.exp(-2j * math.pi * z)) * (1.0 + w * np.exp(2j * math.pi * z))
        res = max(res, _rel_residual(lhs, complex(prod)))
    residuals["product_expansion"] = res

    # quasi-periodicity: theta(z + i*l*q/2, iq/2) = exp(pi*q*l^2/2 - 2*pi*i*l*z) theta(z, iq/2)
    res = 0.0
    q = spec["quasi_q"]
    tau = 0.5j * q
    for z in spec["quasi_zs"]:
        base = theta(z, tau)
        for l in range(-2, 3):
            lhs = theta(z + 0.5j * l * q, tau)
            rhs = math.exp(math.pi * q * l * l / 2) * np.exp(-2j * math.pi * l * z) * base
            res = max(res, _rel_residual(lhs, complex(rhs)))
    residuals["quasi_periodicity"] = res

    # Jacobi's identity and theta(1/2, i) = 2^{-1/4} theta(0, i)
    t00 = theta(0.0, 1j)
    t01 = theta_char(0.0, 0.5, 0.0, 1j)
    t10 = theta_char(0.5, 0.0, 0.0, 1j)
    residuals["jacobi"] = _rel_residual(t00 ** 4, t01 ** 4 + t10 ** 4)
    residuals["half_quarter"] = _rel_residual(theta(0.5, 1j), 2 ** (-0.25) * t00)

    # strict inequalities
    n = spec["ineq_samples"]
    lo, hi = spec["ineq_abstract_range"]
    ts = np.linspace(lo + (hi - lo) / n, hi, n)
    abstract_ok = all(
        extreme_values(t)[1] ** 2 < sum(extreme_values(t)) for t in ts
    )
    lo, hi = spec["ineq_ratio_range"]
    ts = np.linspace(lo + (hi - lo) / n, hi, n)
    ratio_ok = True
    for t in ts:
        c, C = extreme_values(t)
        if not C * (C - 1) < c:
            ratio_ok = False
            break

    report = {
        "identities": residuals,
        "inequalities": {"abstract": abstract_ok, "ratio": ratio_ok},
        "tol": tol,
        "passed": all(v <= tol for v in residuals.values()) and abstract_ok and ratio_ok,
    }
    return report
