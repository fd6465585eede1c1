"""Finite-dimensional twisted representations and Harper spectra.

The q-dimensional representation pi_{t1,t2} of the rotation algebra at
alpha = p/q sends u to e^{2 pi i t1} * (cyclic shift) and v to
e^{2 pi i t2} * diag(omega^{-k}), omega = e^{2 pi i p/q}, so that
pi(u) pi(v) = omega pi(v) pi(u) matches u v = rho v u.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import theta as th

GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass
class TwistedRep:
    p: int
    q: int
    t1: float
    t2: float
    M1: np.ndarray = field(repr=False, default=None)
    M2: np.ndarray = field(repr=False, default=None)


def clock_shift(q):
    """Untwisted generators: cyclic shift S and diag(omega^{-k}) with omega = e^{2 pi i/q}."""
    S = np.roll(np.eye(q), 1, axis=0).astype(complex)
    D = np.diag(np.exp(-2j * math.pi / q * np.arange(q)))
    return S, D


def build_rep(p, q, t1, t2):
    if q < 1:
        raise ValueError("q must be >= 1")
    if math.gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    S = np.roll(np.eye(q), 1, axis=0).astype(complex)
    D = np.diag(np.exp(-2j * math.pi * p / q * np.arange(q)))
    M1 = cmath.exp(2j * math.pi * t1) * S
    M2 = cmath.exp(2j * math.pi * t2) * D
    return TwistedRep(p=p, q=q, t1=t1, t2=t2, M1=M1, M2=M2)


def represent(x, rep):
    """Evaluate a float-mode NCPoly at the representation; multiplicative and *-preserving."""
    if x.mode != "float":
        raise ValueError("represent expects a float-mode NCPoly")
    q = rep.q
    expected = rep.p / rep.q
    if x.alpha is not None and abs(x.alpha - expected) > 1e-12:
        raise ValueError(f"NCPoly alpha {x.alpha} does not match p/q = {expected}")
    out = np.zeros((q, q), dtype=complex)
    pow1 = {}
    pow2 = {}

    def mpow(M, n, cache):
        if n not in cache:
            cache[n] = np.linalg.matrix_power(M, n) if n >= 0 else \
                np.linalg.matrix_power(M.conj().T, -n)
        return cache[n]

    for (n, m), c in x.terms.items():
        out += c * (mpow(rep.M1, n, pow1) @ mpow(rep.M2, m, pow2))
    return out


def _harper_matrix(q, p, lam, t1, t2, S):
    """pi_{t1,t2}(u + u* + (lam/2)(v + v*)) assembled directly."""
    d = np.exp(-2j * math.pi * (p * np.arange(q) / q - t2))
    M = cmath.exp(2j * math.pi * t1) * S
    H = M + M.conj().T
    H[np.diag_indices(q)] += (lam / 2) * (d + d.conj())
    return H


def _harper_maxabs(q, p, lam, S):
    def f(t1, t2):
        w = np.linalg.eigvalsh(_harper_matrix(q, p, lam, t1, t2, S))
        return max(-w[0], w[-1])
    return f


def _golden_refine(f, x0, y0, h, tol=1e-7):
    """Coordinate-wise golden-section ascent around (x0, y0) with initial radius h."""
    best = f(x0, y0)
    x, y = x0, y0
    while h > tol / 10:
        for axis in (0, 1):
            a = (x - h, y) if axis == 0 else (x, y - h)
            b = (x + h, y) if axis == 0 else (x, y + h)
            lo, hi = (a[axis], b[axis])
            other = y if axis == 0 else x
            def g(c):
                return f(c, other) if axis == 0 else f(other, c)
            c1 = hi - GOLDEN * (hi - lo)
            c2 = lo + GOLDEN * (hi - lo)
            f1, f2 = g(c1), g(c2)
            while hi - lo > tol / 10:
                if f1 < f2:
                    lo, c1, f1 = c1, c2, f2
                    c2 = lo + GOLDEN * (hi - lo)
                    f2 = g(c2)
                else:
                    hi, c2, f2 = c2, c1, f1
                    c1 = hi - GOLDEN * (hi - lo)
                    f1 = g(c1)
            c = 0.5 * (lo + hi)
            fc = g(c)
            if fc > best:
                best = fc
                if axis == 0:
                    x = c
                else:
                    y = c
        h /= 4
    return best


def harper_norm(p, q, lam, grid=64, tol=1e-7):
    """||H_{p/q, lam}||: max over twists of the spectral radius, grid + refinement."""
    if math.gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    if not lam > 0:
        raise ValueError("lambda must be positive")
    S = np.roll(np.eye(q), 1, axis=0).astype(complex)
    f = _harper_maxabs(q, p, lam, S)
    step = 1.0 / (q * grid)
    ts = np.arange(grid) * step
    best = -np.inf
    bx = by = 0.0
    for t1 in ts:
        for t2 in ts:
            val = f(t1, t2)
            if val > best:
                best, bx, by = val, t1, t2
    return _golden_refine(f, bx, by, step, tol)


@dataclass
class SpectrumEstimate:
    bands: list
    grid_resolution: int
    refinement_tolerance: float


def _eigen_sweep(p, q, lam, grid):
    """Sorted eigenvalues lambda_k(t1, t2) over a uniform twist grid; (grid^2, q) array."""
    S = np.roll(np.eye(q), 1, axis=0).astype(complex)
    step = 1.0 / (q * grid)
    ts = np.arange(grid) * step
    out = np.empty((grid * grid, q))
    i = 0
    for t1 in ts:
        for t2 in ts:
            out[i] = np.linalg.eigvalsh(_harper_matrix(q, p, lam, t1, t2, S))
            i += 1
    return out


def spectrum(p, q, lam, grid=32, refinement_tolerance=1e-5):
    """Band intervals: per-index eigenvalue ranges over the twist grid, merged."""
    if grid < 2:
        raise ValueError("grid must be >= 2")
    ev = _eigen_sweep(p, q, lam, grid)
    raw = [(ev[:, k].min(), ev[:, k].max()) for k in range(q)]
    raw.sort()
    merged = []
    merge_gap = 10 * refinement_tolerance
    for lo, hi in raw:
        if merged and lo <= merged[-1][1] + merge_gap:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return SpectrumEstimate(bands=merged, grid_resolution=grid,
                            refinement_tolerance=refinement_tolerance)


def check_duality(p, q, lam, grid=32):
    """Hausdorff distance between spec(H_lam) and (lam/2) spec(H_{4/lam}).

    The twist grid is uniform over the full period, hence closed under the
    substitution (t1, t2) -> (t2, -t1) realizing the duality, so the two
    eigenvalue samples cover the same set up to numerical error.
    """
    if not lam > 0:
        raise ValueError("lambda must be positive")
    a = np.sort(_eigen_sweep(p, q, lam, grid).ravel())
    b = np.sort((lam / 2) * _eigen_sweep(p, q, 4 / lam, grid).ravel())

    def one_sided(x, y):
        idx = np.searchsorted(y, x)
        idx = np.clip(idx, 1, len(y) - 1)
        return np.max(np.minimum(np.abs(x - y[idx - 1]), np.abs(x - y[idx])))

    return max(one_sided(a, b), one_sided(b, a))


@dataclass
class TruncatedHeisenberg:
    alpha: float
    K: int
    matrix: np.ndarray = field(repr=False, default=None)
    min_singular_value: float = 0.0


def truncated_heisenberg(alpha, K):
    """Truncation of the doubly-indexed Gaussian operator to indices |k| <= K.

    Entry (k, l) is (1/sqrt 2) * exp(-pi (l-k)^2 / (2 alpha)) * beta_{l+k},
    beta_m = theta(m/(2 alpha), i/(2 alpha)) (real, in [c, C]).
    """
    if not (0 < alpha < 1):
        raise ValueError("alpha must be in (0,1)")
    if K < 8:
        raise ValueError("K must be >= 8")
    t = 1.0 / (2 * alpha)
    beta = {}
    for m in range(0, 4 * K + 1):
        x = m / (2 * alpha)
        beta[m] = th.eval_theta(x - round(x), 1j * t).value.real
    idx = np.arange(-K, K + 1)
    L, Kk = np.meshgrid(idx, idx, indexing="ij")
    gauss = np.exp(-math.pi * (L - Kk) ** 2 / (2 * alpha))
    bmat = np.array([[beta[abs(k + l)] for l in idx] for k in idx])
    M = gauss * bmat / math.sqrt(2)
    w = np.linalg.eigvalsh(M)
    return TruncatedHeisenberg(alpha=alpha, K=K, matrix=M,
                               min_singular_value=float(np.min(np.abs(w))))
