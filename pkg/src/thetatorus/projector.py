"""Fourier-invariant projections, invertibility criteria, norm lower bounds.

The central object is the trace-1/q projection e in the rotation algebra,
reachable three ways:
  * projection_matrix: closed theta-coefficient formula in the q-dimensional
    twisted representation (separate even/odd q forms);
  * projection_series: truncated Fourier series with coefficients from
    torus-symbol quadrature (fourier_coeff_alpha);
  * the symbols themselves (symbol_a, symbol_a_shifted) feeding both.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import theta as th
from .nctorus import NCPoly
from .repmat import clock_shift
from .theta import _choose_M, _g_of_r


class UnsupportedCaseError(Exception):
    """Raised where the construction is only derived for one parity of q."""


SQRT2 = math.sqrt(2)


# ---------------------------------------------------------------------------
# symbols and Fourier coefficients
# ---------------------------------------------------------------------------

def gaussian_coeff(m1, m2, alpha):
    """(1/sqrt2) exp(-pi (m1^2+m2^2)/(2 alpha) - pi i m1 m2 / alpha)."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    return (cmath.exp(-math.pi * (m1 * m1 + m2 * m2) / (2 * alpha)
                      - 1j * math.pi * m1 * m2 / alpha) / SQRT2)


def _theta_1d(zs, tau, odd=False, tol=1e-14):
    """Vectorized theta over an array of z values (shared tau)."""
    zs = np.asarray(zs, dtype=complex)
    vmax = float(np.max(np.abs(zs.imag))) if zs.size else 0.0
    M, _ = _choose_M(tau.imag, vmax, tol)
    m = np.arange(-M, M + 1)
    if odd:
        m = m[m % 2 != 0]
    return np.exp(1j * math.pi * tau * m ** 2
                  + 2j * math.pi * np.multiply.outer(zs, m)).sum(axis=-1)


def symbol_a(q, t1, t2):
    """Base torus symbol at tau = iq/2; real and strictly positive."""
    if q < 2:
        raise ValueError("q must be >= 2")
    tau = 0.5j * q
    th1 = th.theta(t1, tau)
    th2 = th.theta(t2, tau)
    if q % 2 == 0:
        return (th1 * th2).real / SQRT2
    o1 = th.theta_parity("odd", t1, tau)
    o2 = th.theta_parity("odd", t2, tau)
    return (th1 * th2 - 2 * o1 * o2).real / SQRT2


def symbol_a_shifted(n1, n2, q, t1, t2):
    """Shifted symbol: theta arguments displaced by the complex half-shifts."""
    if q < 2:
        raise ValueError("q must be >= 2")
    tau = 0.5j * q
    z1 = t1 - (n1 + 1j * n2) / 2
    z2 = t2 - (n2 + 1j * n1) / 2
    th1 = th.theta(z1, tau)
    th2 = th.theta(z2, tau)
    if q % 2 == 0:
        return th1 * th2
    o1 = th.theta_parity("odd", z1, tau)
    o2 = th.theta_parity("odd", z2, tau)
    return th1 * th2 - 2 * o1 * o2


def _symbol_grids(q, grid, w1=0.0, w2=0.0):
    """1D theta/theta-odd arrays over the quadrature grid, arguments shifted by -w."""
    tau = 0.5j * q
    ts = np.arange(grid) / grid
    f1 = _theta_1d(ts - w1, tau)
    f2 = _theta_1d(ts - w2, tau)
    if q % 2 == 0:
        return f1, f2, None, None
    o1 = _theta_1d(ts - w1, tau, odd=True)
    o2 = _theta_1d(ts - w2, tau, odd=True)
    return f1, f2, o1, o2


def fourier_coeff_alpha(n1, n2, q, grid=128):
    """Fourier coefficient of q*e by trapezoid quadrature of the symbol ratio."""
    if grid < 64 or grid & (grid - 1):
        raise ValueError("grid must be a power of 2, >= 64")
    w1 = (n1 + 1j * n2) / 2
    w2 = (n2 + 1j * n1) / 2
    b1, b2, ob1, ob2 = _symbol_grids(q, grid)
    s1, s2, os1, os2 = _symbol_grids(q, grid, w1, w2)
    if q % 2 == 0:
        integral = np.mean(s1 / b1) * np.mean(s2 / b2)
    else:
        num = np.outer(s1, s2) - 2 * np.outer(os1, os2)
        den = np.outer(b1, b2) - 2 * np.outer(ob1, ob2)
        integral = np.mean(num / den)
    # the 1/sqrt2 prefactor cancels against the 1/sqrt2 inside the base
    # symbol, which is omitted from the quadrature denominators above
    pref = cmath.exp(-math.pi * (n1 * n1 + n2 * n2) / (2 * q)
                     + 1j * math.pi * n1 * n2 / q)
    return pref * integral


def projection_series(q, N, grid=128, with_tail=False):
    """Truncated Fourier series of e as a float NCPoly at alpha = 1/q.

    Normal ordering: U2^{n2} U1^{n1} = e^{-2 pi i n1 n2 / q} u^{n1} v^{n2}.
    """
    if q < 2 or N < 2 * q:
        raise ValueError("need q >= 2 and N >= 2q")
    terms = {}
    for n1 in range(-N, N + 1):
        for n2 in range(-N, N + 1):
            c = fourier_coeff_alpha(n1, n2, q, grid)
            terms[(n1, n2)] = c * cmath.exp(-2j * math.pi * n1 * n2 / q) / q
    poly = NCPoly("float", terms, alpha=1.0 / q)
    if not with_tail:
        return poly
    # tail mass: the coefficients decay like exp(-pi*n/2) (the Gaussian
    # prefactor is offset by growth of the shifted-symbol integral), so sum
    # the two rings just outside the box and close with a geometric bound.
    def ring_mass(R):
        total = 0.0
        for k in range(-R, R + 1):
            total += abs(fourier_coeff_alpha(R, k, q, grid))
            total += abs(fourier_coeff_alpha(-R, k, q, grid))
        for k in range(-R + 1, R):
            total += abs(fourier_coeff_alpha(k, R, q, grid))
            total += abs(fourier_coeff_alpha(k, -R, q, grid))
        return total / q
    r1, r2 = ring_mass(N + 1), ring_mass(N + 2)
    ratio = min(r2 / r1 if r1 > 0 else 0.0, 0.5)
    tail = r1 + r2 / (1.0 - ratio)
    return poly, tail


# ---------------------------------------------------------------------------
# invertibility criteria
# ---------------------------------------------------------------------------

@dataclass
class BoundReport:
    inputs: dict
    constants: dict
    verdict: str  # invertible-criterion-met | criterion-not-met | not-applicable
    trace: float = None
    reason: str = None


def invertibility_alpha(alpha):
    """Sufficient invertibility criterion: C(C-1)/c < 1 at t = 1/(2 alpha)."""
    if not (0 < alpha < 1):
        raise ValueError("alpha must be in (0,1)")
    t = 1.0 / (2 * alpha)
    c, C = th.extreme_values(t)
    bound = C * (C - 1) / c
    met = bound < 1
    return BoundReport(
        inputs={"alpha": alpha},
        constants={"t": t, "c": c, "C": C, "bound": bound},
        verdict="invertible-criterion-met" if met else "criterion-not-met",
        trace=alpha if met else None,
        reason=None if met else "C(C-1)/c >= 1",
    )


def _sqrt_residue(target, q):
    """Smallest w in [0, q) with w^2 = target (mod q), or None."""
    target %= q
    for w in range(q):
        if (w * w) % q == target:
            return w
    return None


def invertibility_pq(p, q, alpha):
    """Sufficient criterion for a projection of trace |q alpha - p|.

    Requires 0 < gamma < 0.948/q^2 where gamma = alpha - p/q (or its mirror),
    a quadratic-residue witness (p0^2 = p mod q, mirrored -p1^2 = p mod q),
    and g(r) < 1 with r = exp(-pi/(2 q^2 gamma)).
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    gamma = alpha - p / q
    inputs = {"p": p, "q": q, "alpha": alpha}
    if gamma == 0:
        return BoundReport(inputs=inputs, constants={"gamma": 0.0},
                           verdict="not-applicable", reason="alpha equals p/q")
    mirrored = gamma < 0
    g_pos = -gamma if mirrored else gamma
    witness = _sqrt_residue(-p if mirrored else p, q)
    constants = {"gamma": g_pos, "mirrored": mirrored,
                 ("p1" if mirrored else "p0"): witness}
    if witness is None:
        return BoundReport(
            inputs=inputs, constants=constants, verdict="not-applicable",
            reason=("-p" if mirrored else "p") + " is not a quadratic residue mod q")
    limit = 0.948 / (q * q)
    constants["limit"] = limit
    if not g_pos < limit:
        return BoundReport(inputs=inputs, constants=constants,
                           verdict="criterion-not-met",
                           reason="gamma outside (0, 0.948/q^2)")
    r = math.exp(-math.pi / (2 * q * q * g_pos))
    S = _g_of_r(r)
    constants.update({"r": r, "S": S})
    if not S < 1:
        return BoundReport(inputs=inputs, constants=constants,
                           verdict="criterion-not-met", reason="series bound >= 1")
    trace = p - q * alpha if mirrored else q * alpha - p
    return BoundReport(inputs=inputs, constants=constants,
                       verdict="invertible-criterion-met", trace=trace)


# ---------------------------------------------------------------------------
# projection matrices
# ---------------------------------------------------------------------------

_monomial_cache = {}


def _monomials(q):
    """Stack W[s, r] = U2^s U1^r of untwisted clock/shift monomials."""
    if q not in _monomial_cache:
        S, D = clock_shift(q)
        p1 = [np.linalg.matrix_power(S, r) for r in range(q)]
        p2 = [np.linalg.matrix_power(D, s) for s in range(q)]
        _monomial_cache[q] = np.array([[p2[s] @ p1[r] for r in range(q)]
                                       for s in range(q)])
    return _monomial_cache[q]


def _theta_char_grid(avec, bvec, z, tau, tol=1e-15):
    """theta_{a,b}(z, tau) over vectors of characteristics; shape (len(a), len(b))."""
    M0, _ = _choose_M(tau.imag, abs(complex(z).imag), tol)
    M = M0 + 1 + int(math.ceil(float(np.max(np.abs(avec)))))
    m = np.arange(-M, M + 1)
    ma = m[:, None, None] + np.asarray(avec, float)[None, :, None]
    zb = z + np.asarray(bvec, float)[None, None, :]
    return np.exp(1j * math.pi * tau * ma ** 2 + 2j * math.pi * ma * zb).sum(axis=0)


def _projection_coeffs_even(q, t1, t2):
    """Coefficient table c[s, r] of U2^s U1^r in pi_{t1,t2}(e), q even."""
    tau = 0.5j * q
    rs = np.arange(q)
    A2 = _theta_char_grid(rs / q, rs / 2, q * t2, tau)  # [s, r]
    A1 = _theta_char_grid(rs / q, rs / 2, q * t1, tau)  # [r, s]
    den = q * th.theta(q * t2, tau, 1e-15) * th.theta(q * t1, tau, 1e-15)
    phase = np.exp(-1j * math.pi * np.outer(rs, rs) / q)  # [r, s]
    return (phase.T * A2 * A1.T) / den  # index [s, r]


def _projection_coeffs_odd(q, t1, t2):
    """Coefficient table c[s, r] of U2^s U1^r in pi_{t1,t2}(e), q odd.

    c[s, r] = (1/q) exp(-pi (r^2+s^2)/(2q) + i pi r s / q + 2 pi i (s t2 + r t1))
              * [th(a1+w1) th(a2+w2) - 2 th_o(a1+w1) th_o(a2+w2)]
              / [th(a1) th(a2) - 2 th_o(a1) th_o(a2)],
    with a1 = q t2, a2 = q t1, w1 = (r+is)/2, w2 = (s+ir)/2, tau = iq/2.
    """
    tau = 0.5j * q
    rs = np.arange(q)
    r2 = rs[None, :]  # r along axis 1
    s2 = rs[:, None]  # s along axis 0
    z1 = q * t2 + (r2 + 1j * s2) / 2
    z2 = q * t1 + (s2 + 1j * r2) / 2
    zs = np.concatenate([z1.ravel(), z2.ravel()])
    f = _theta_1d(zs, tau, tol=1e-15).reshape(2, q, q)
    fo = _theta_1d(zs, tau, odd=True, tol=1e-15).reshape(2, q, q)
    num = f[0] * f[1] - 2 * fo[0] * fo[1]
    d1 = _theta_1d([q * t2], tau, tol=1e-15)[0]
    d2 = _theta_1d([q * t1], tau, tol=1e-15)[0]
    do1 = _theta_1d([q * t2], tau, odd=True, tol=1e-15)[0]
    do2 = _theta_1d([q * t1], tau, odd=True, tol=1e-15)[0]
    den = d1 * d2 - 2 * do1 * do2
    pref = np.exp(-math.pi * (r2 ** 2 + s2 ** 2) / (2 * q)
                  + 1j * math.pi * r2 * s2 / q
                  + 2j * math.pi * (s2 * t2 + r2 * t1))
    return pref * num / den / q


def projection_coeffs(q, t1, t2):
    """Coefficients c[s, r] with pi_{t1,t2}(e) = sum c[s,r] U2^s U1^r."""
    if q < 2:
        raise ValueError("q must be >= 2")
    if q % 2 == 0:
        return _projection_coeffs_even(q, t1, t2)
    return _projection_coeffs_odd(q, t1, t2)


def projection_matrix(q, t1, t2):
    """The q x q matrix pi_{t1,t2}(e): Hermitian idempotent of normalized trace 1/q."""
    coeffs = projection_coeffs(q, t1, t2)
    return np.tensordot(coeffs, _monomials(q), axes=([0, 1], [0, 1]))


@dataclass
class ProjectionCheck:
    q: int
    t1: float
    t2: float
    idempotency: float
    self_adjointness: float
    trace_deviation: float


def projection_check(q, t1, t2):
    e = projection_matrix(q, t1, t2)
    return ProjectionCheck(
        q=q, t1=t1, t2=t2,
        idempotency=float(np.linalg.norm(e @ e - e, 2)),
        self_adjointness=float(np.linalg.norm(e - e.conj().T, 2)),
        trace_deviation=abs(np.trace(e).real / q - 1.0 / q),
    )


# ---------------------------------------------------------------------------
# norm lower bounds
# ---------------------------------------------------------------------------

def phi0_curve(t):
    """phi0 as a function of t in (0, 1/2]: 4 th(t,2it) th(1/2,i/(2t)) / (th(0,2it) th(0,i/(2t)))."""
    return 4 * (th.theta(t, 2j * t) * th.theta(0.5, 0.5j / t)
                / (th.theta(0.0, 2j * t) * th.theta(0.0, 0.5j / t))).real


def phi1_curve(t):
    """phi1 as a function of t in (0, 1/3]."""
    tau = 0.5j / t
    a = th.theta(0.5j, tau) * th.theta(0.5, tau) \
        - 2 * th.theta_parity("odd", 0.5j, tau) * th.theta_parity("odd", 0.5, tau)
    b = th.theta(0.0, tau) ** 2 - 2 * th.theta_parity("odd", 0.0, tau) ** 2
    return 4 * math.exp(-math.pi * t / 2) * (a / b).real


def phi_bounds(q):
    """The norm lower bound phi0(1/q) (even q) or phi1(1/q) (odd q)."""
    if q < 2:
        raise ValueError("q must be >= 2")
    tau = 0.5j * q
    if q % 2 == 0:
        val = 4 * math.exp(-math.pi / (2 * q)) * (
            th.theta(0.5j, tau) * th.theta(0.5, tau) / th.theta(0.0, tau) ** 2).real
        alt = 4 * (th.theta_char(0.0, 0.5, 0.0, tau)
                   * th.theta_char(1.0 / q, 0.0, 0.0, tau)
                   / th.theta(0.0, tau) ** 2).real
        if abs(val - alt) > 1e-10:
            raise AssertionError("phi0 characteristic form disagrees")
        return val
    return phi1_curve(1.0 / q)


def compression_bound(q, grid=64):
    """(F/G at (1,1), sup over the twist grid of |F/G|); even q only."""
    if q % 2 != 0:
        raise UnsupportedCaseError("compression bound derived for even q only")
    alpha = 1.0 / q
    M = 12
    ms = np.arange(-M, M + 1)
    m1 = ms[:, None]
    m2 = ms[None, :]
    base = np.exp(-math.pi * (m1 ** 2 + m2 ** 2) / (2 * alpha)
                  + 1j * math.pi * m1 * m2 / alpha)
    bracket = ((np.exp(math.pi * m2) + np.exp(-math.pi * m2)) * np.exp(1j * math.pi * m1)
               + (np.exp(math.pi * m1) + np.exp(-math.pi * m1)) * np.exp(1j * math.pi * m2))
    fco = math.exp(-math.pi * alpha / 2) * base * bracket
    gco = base
    ts = np.arange(grid) / grid
    z1 = np.exp(2j * math.pi * np.outer(ts, ms))  # [t, m]
    F = np.einsum("am,mn,bn->ab", z1, fco, z1)
    G = np.einsum("am,mn,bn->ab", z1, gco, z1)
    ratio = np.abs(F / G)
    sup = float(ratio.max())
    at_one = float((F[0, 0] / G[0, 0]).real)
    return at_one, max(sup, at_one)


# ---------------------------------------------------------------------------
# partition and theta identities
# ---------------------------------------------------------------------------

def _rel(x, scale):
    return float(abs(x) / max(scale, 1.0))


def partition_checks(q, twist_grid=4):
    """Residuals of the projection partition identities over a twist grid."""
    if q < 2:
        raise ValueError("q must be >= 2")
    rng = np.arange(twist_grid) / (twist_grid * q)
    report = {"q": q}

    if q == 2:
        # rho swaps the generators with a sign: U1 -> -U2, U2 -> -U1.
        # On Fourier coefficients of e = (1/q) sum alpha_{n1,n2} U2^{n2} U1^{n1}:
        # alpha'_{n1,n2} = (-1)^{n1+n2+n1*n2} alpha_{n2,n1}.
        N = 8
        coeff = {}
        for n1 in range(-N, N + 1):
            for n2 in range(-N, N + 1):
                coeff[(n1, n2)] = fourier_coeff_alpha(n1, n2, 2)
        e_terms = {}
        rho_terms = {}
        for (n1, n2), c in coeff.items():
            ph = cmath.exp(-2j * math.pi * n1 * n2 / q) / q
            e_terms[(n1, n2)] = c * ph
            rho_terms[(n1, n2)] = coeff[(n2, n1)] * (-1) ** (n1 + n2 + n1 * n2) * ph
        from .nctorus import NCPoly as _P
        from .repmat import build_rep, represent
        e_poly = _P("float", e_terms, alpha=0.5)
        rho_poly = _P("float", rho_terms, alpha=0.5)
        res33 = 0.0
        for t1 in rng:
            for t2 in rng:
                rep = build_rep(1, 2, t1, t2)
                total = represent(e_poly, rep) + represent(rho_poly, rep)
                res33 = max(res33, float(np.linalg.norm(total - np.eye(2), 2)))
        report["eq33"] = res33

        res34 = 0.0
        for t1 in rng:
            for t2 in rng:
                total = sum(projection_matrix(2, t1 + c1 / 2, t2 + c2 / 2)
                            for c1 in range(2) for c2 in range(2))
                res34 = max(res34, float(np.linalg.norm(total - 2 * np.eye(2), 2)))
        report["eq34"] = res34

    res35 = 0.0
    for t1 in rng[:2]:
        for t2 in rng[:2]:
            total = sum(projection_matrix(q, t1 + c1 / q, t2 + c2 / q)
                        for c1 in range(q) for c2 in range(q))
            res35 = max(res35, float(np.linalg.norm(total - q * np.eye(q), 2)))
    report["eq35"] = res35
    return report


def parity_fourier_sums(phi, L=24, grid=256):
    """The four parity-restricted Fourier-sum identities for a smooth periodic phi.

    Returns a list of (lhs, rhs) pairs: the (even,even), (even,odd),
    (odd,even), (odd,odd) restricted sums of Fourier coefficients against the
    corresponding signed quarter-sums of phi at the half-period points.
    """
    ts = np.arange(grid) / grid
    vals = np.array([[phi(x, y) for y in ts] for x in ts])
    coeffs = {}
    for l1 in range(-L, L + 1):
        e1 = np.exp(2j * math.pi * l1 * ts)
        for l2 in range(-L, L + 1):
            e2 = np.exp(2j * math.pi * l2 * ts)
            coeffs[(l1, l2)] = complex(e1 @ vals @ e2) / grid ** 2
    p00, p10 = phi(0.0, 0.0), phi(0.5, 0.0)
    p01, p11 = phi(0.0, 0.5), phi(0.5, 0.5)
    cases = [
        (0, 0, (p00 + p10 + p01 + p11) / 4),
        (0, 1, (p00 + p10 - p01 - p11) / 4),
        (1, 0, (p00 - p10 + p01 - p11) / 4),
        (1, 1, (p00 - p10 - p01 + p11) / 4),
    ]
    out = []
    for par1, par2, rhs in cases:
        lhs = sum(v for (l1, l2), v in coeffs.items()
                  if l1 % 2 == par1 and l2 % 2 == par2)
        out.append((complex(lhs), complex(rhs)))
    return out


def theta_identity_checks(qs, samples=20, tol=1e-10, seed=0):
    """Residual report for the trace-derived theta identities."""
    rng = np.random.default_rng(seed)
    report = {"tol": tol}

    def tchar(a, b, z, tau):
        return th.theta_char(a, b, z, tau)

    # trace identity (plain and reflected form) for even q
    res37 = res38 = 0.0
    for q in qs:
        if q % 2 != 0:
            raise ValueError("the trace identities require even q")
        tau = 0.5j * q
        for _ in range(samples):
            t1, t2 = rng.random(), rng.random()
            scale = abs(q * th.theta(t1, tau) ** 2 * th.theta(t2, tau) ** 2)
            s37 = 0j
            s38 = 0j
            for m in range(q):
                for n in range(q):
                    w = cmath.exp(-4j * math.pi * m * n / q)
                    s37 += (w * tchar(-n / q, -m / 2, t1, tau) * tchar(n / q, m / 2, t1, tau)
                            * tchar(-m / q, -n / 2, t2, tau) * tchar(m / q, n / 2, t2, tau))
                    s38 += (w * tchar(n / q, m / 2, t1, tau) * tchar(n / q, m / 2, -t1, tau)
                            * tchar(m / q, n / 2, t2, tau) * tchar(m / q, n / 2, -t2, tau))
            rhs = q * th.theta(t1, tau) ** 2 * th.theta(t2, tau) ** 2
            res37 = max(res37, _rel(s37 - rhs, scale))
            res38 = max(res38, _rel(s38 - rhs, scale))
    report["eq37"] = res37
    report["eq38"] = res38

    # quartic four-term identity at tau = i
    res39 = 0.0
    for _ in range(max(samples, 100)):
        x, u = rng.random(), rng.random()
        lhs = (tchar(0, 0.5, x, 1j) ** 2 * tchar(0.5, 0, u, 1j) ** 2
               + tchar(0.5, 0, x, 1j) ** 2 * tchar(0, 0.5, u, 1j) ** 2
               + tchar(0.5, 0.5, x, 1j) ** 2 * tchar(0.5, 0.5, u, 1j) ** 2)
        rhs = th.theta(x, 1j) ** 2 * th.theta(u, 1j) ** 2
        res39 = max(res39, _rel(lhs - rhs, abs(rhs)))
    report["eq39"] = res39

    # Riemann quartic relation at tau = i (both equalities)
    resA = 0.0
    for _ in range(10):
        x, u = rng.random(), rng.random()
        a = (th.theta(x, 1j) ** 2 * th.theta(u, 1j) ** 2
             + tchar(0.5, 0.5, x, 1j) ** 2 * tchar(0.5, 0.5, u, 1j) ** 2)
        b = (tchar(0, 0.5, x, 1j) ** 2 * tchar(0, 0.5, u, 1j) ** 2
             + tchar(0.5, 0, x, 1j) ** 2 * tchar(0.5, 0, u, 1j) ** 2)
        c = (th.theta(x + u, 1j) * th.theta(x - u, 1j) * th.theta(0.0, 1j) ** 2)
        scale = max(abs(a), abs(c))
        resA = max(resA, _rel(a - b, scale), _rel(b - c, scale))
    report["riemann"] = resA

    report["passed"] = all(report[k] <= tol for k in ("eq37", "eq38", "eq39", "riemann"))
    return report
