"""Exact symbolic algebra of the rotation algebra.

Elements are finitely supported normal-ordered Laurent polynomials
sum a_{n,m} u^n v^m with u v = rho v u, rho = e^{2 pi i alpha}.  Coefficients
are either exact (PhaseScalar: rational functions in s = rho^{1/2} over the
Gaussian rationals) or floating complex numbers at a concrete alpha.

Normal ordering: (u^n v^m)(u^k v^l) = rho^{-mk} u^{n+k} v^{m+l}.
Adjoint: (u^n v^m)* = rho^{-nm} u^{-n} v^{-m}.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .scalars import PS_ONE, PhaseScalar


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("SL2Matrix requires determinant 1")


SIGMA = SL2Matrix(0, 1, -1, 0)  # the order-4 Fourier automorphism


class NCPoly:
    """Normal-ordered Laurent polynomial in u, v."""

    __slots__ = ("mode", "alpha", "terms")

    def __init__(self, mode, terms=None, alpha=None):
        if mode not in ("exact", "float"):
            raise ValueError("mode must be 'exact' or 'float'")
        if mode == "float" and alpha is None:
            raise ValueError("float mode requires alpha")
        self.mode = mode
        self.alpha = alpha
        if terms is None:
            terms = {}
        if mode == "exact":
            self.terms = {k: v for k, v in terms.items() if not v.is_zero()}
        else:
            self.terms = {k: v for k, v in terms.items() if v != 0}

    # scalar helpers -----------------------------------------------------
    def _s_pow(self, k):
        """rho^{k/2} in this element's coefficient domain."""
        if self.mode == "exact":
            return PhaseScalar.s_power(k)
        return cmath.exp(1j * math.pi * self.alpha * k)

    def _conj_scalar(self, c):
        return c.conj() if self.mode == "exact" else c.conjugate()

    def _zero_like(self):
        return NCPoly(self.mode, {}, self.alpha)

    def _check_compat(self, other):
        if self.mode != other.mode:
            raise ValueError("NCPoly mode mismatch")
        if self.mode == "float" and self.alpha != other.alpha:
            raise ValueError("NCPoly alpha mismatch")

    # ring operations ----------------------------------------------------
    def __add__(self, other):
        self._check_compat(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return NCPoly(self.mode, out, self.alpha)

    def __sub__(self, other):
        self._check_compat(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] - v if k in out else -v
        return NCPoly(self.mode, out, self.alpha)

    def __neg__(self):
        return NCPoly(self.mode, {k: -v for k, v in self.terms.items()}, self.alpha)

    def scale(self, c):
        return NCPoly(self.mode, {k: v * c for k, v in self.terms.items()}, self.alpha)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self.mode == other.mode and self.alpha == other.alpha
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.mode, self.alpha, frozenset(self.terms.items())))

    def __repr__(self):
        return f"NCPoly({self.mode}, {self.terms!r})"


def unit(mode="exact", alpha=None):
    one = PS_ONE if mode == "exact" else 1.0 + 0j
    return NCPoly(mode, {(0, 0): one}, alpha)


def monomial(n, m, coeff=None, mode="exact", alpha=None):
    if coeff is None:
        coeff = PS_ONE if mode == "exact" else 1.0 + 0j
    return NCPoly(mode, {(n, m): coeff}, alpha)


def mul(x, y):
    """Normal-ordered product."""
    x._check_compat(y)
    out = {}
    for (n, m), a in x.terms.items():
        for (k, l), b in y.terms.items():
            key = (n + k, m + l)
            c = a * b * x._s_pow(-2 * m * k)
            out[key] = out[key] + c if key in out else c
    return NCPoly(x.mode, out, x.alpha)


def adjoint(x):
    out = {}
    for (n, m), a in x.terms.items():
        key = (-n, -m)
        c = x._conj_scalar(a) * x._s_pow(-2 * n * m)
        out[key] = out[key] + c if key in out else c
    return NCPoly(x.mode, out, x.alpha)


def trace(x):
    """Canonical trace: the (0,0) coefficient."""
    if (0, 0) in x.terms:
        return x.terms[(0, 0)]
    return PhaseScalar.from_int(0) if x.mode == "exact" else 0j


def apply_sl2(X, x):
    """Automorphism u -> u^a v^b, v -> u^c v^d for X in SL(2, Z).

    On a monomial: sigma_X(u^n v^m) =
        s^{-ab n(n-1) - cd m(m-1) - 2bc nm} u^{an+cm} v^{bn+dm}.
    """
    a, b, c, d = X.a, X.b, X.c, X.d
    out = {}
    for (n, m), coeff in x.terms.items():
        k = -a * b * n * (n - 1) - c * d * m * (m - 1) - 2 * b * c * n * m
        key = (a * n + c * m, b * n + d * m)
        val = coeff * x._s_pow(k)
        out[key] = out[key] + val if key in out else val
    return NCPoly(x.mode, out, x.alpha)


def sigma(x):
    """The Fourier automorphism: u -> v, v -> u^{-1}."""
    return apply_sl2(SIGMA, x)


def expectation(x):
    """Conditional expectation onto the sigma-fixed subalgebra: average of sigma orbit."""
    s1 = sigma(x)
    s2 = sigma(s1)
    s3 = sigma(s2)
    total = x + s1 + s2 + s3
    if x.mode == "exact":
        return total.scale(PhaseScalar.from_gauss(Fraction(1, 4)))
    return total.scale(0.25)


def bracket(n, m, mode="exact", alpha=None):
    """[n,m] = rho^{-nm/2} (u^n v^m + u^{-n} v^{-m})."""
    x = monomial(n, m, mode=mode, alpha=alpha) + monomial(-n, -m, mode=mode, alpha=alpha)
    return x.scale(x._s_pow(-n * m))


def curly(n, m, mode="exact", alpha=None):
    """{n,m} = [n,m] + [-m,n]."""
    return bracket(n, m, mode, alpha) + bracket(-m, n, mode, alpha)


def harper(lam=2.0, mode="float", alpha=None):
    """H = u + u* + (lam/2)(v + v*)."""
    half = lam / 2
    if mode == "exact":
        if lam != 2.0:
            raise ValueError("exact mode supports lam = 2 only")
        return curly(1, 0, mode="exact")
    out = (monomial(1, 0, mode="float", alpha=alpha)
           + monomial(-1, 0, mode="float", alpha=alpha)
           + monomial(0, 1, complex(half), mode="float", alpha=alpha)
           + monomial(0, -1, complex(half), mode="float", alpha=alpha))
    return out


def specialize_half(x):
    """Exact specialization of an exact NCPoly at alpha = 1/2 (s = i).

    Returns {(n, m): GaussRat}, dropping exact zeros.
    """
    if x.mode != "exact":
        raise ValueError("specialize_half needs exact mode")
    out = {}
    for k, v in x.terms.items():
        g = v.eval_at_i()
        if not g.is_zero():
            out[k] = g
    return out


def to_float(x, alpha):
    """Evaluate an exact NCPoly at a concrete alpha."""
    if x.mode == "float":
        return x
    return NCPoly("float", {k: v.eval_complex(alpha) for k, v in x.terms.items()}, alpha)


def check_bracket_identities(rng):
    """Exact verification of the bracket/curly product identities.

    (A1)  [n,m]* = [n,m] = [-n,-m]
    (A2)  [n,m][k,l] = rho^{(nl-mk)/2}[n+k,m+l] + rho^{(mk-nl)/2}[n-k,m-l]
    (A3)  {n,m}* = {n,m} = {-m,n} = {-n,-m} = {m,-n}
    (A4)  {n,m}{k,l} = rho^{(nl-mk)/2}{n+k,m+l} + rho^{(mk-nl)/2}{n-k,m-l}
                     + rho^{(nk+ml)/2}{n-l,m+k} + rho^{(-nk-ml)/2}{n+l,m-k}

    for all index magnitudes <= rng.  Returns a report dict with failures.
    """
    if rng < 1:
        raise ValueError("range must be >= 1")
    failures = []
    idx = range(-rng, rng + 1)
    wide = range(-2 * rng, 2 * rng + 1)
    br = {}
    cu = {}
    for n in wide:
        for m in wide:
            br[(n, m)] = bracket(n, m)
            cu[(n, m)] = curly(n, m)

    for n in idx:
        for m in idx:
            b = br[(n, m)]
            if adjoint(b) != b or br[(-n, -m)] != b:
                failures.append(("A1", (n, m)))
            c = cu[(n, m)]
            if adjoint(c) != c or cu[(-m, n)] != c or cu[(-n, -m)] != c or cu[(m, -n)] != c:
                failures.append(("A3", (n, m)))

    sp = PhaseScalar.s_power
    for n in idx:
        for m in idx:
            for k in idx:
                for l in idx:
                    lhs = mul(br[(n, m)], br[(k, l)])
                    rhs = (br[(n + k, m + l)].scale(sp(n * l - m * k))
                           + br[(n - k, m - l)].scale(sp(m * k - n * l)))
                    if lhs != rhs:
                        failures.append(("A2", (n, m, k, l)))
                    lhs = mul(cu[(n, m)], cu[(k, l)])
                    rhs = (cu[(n + k, m + l)].scale(sp(n * l - m * k))
                           + cu[(n - k, m - l)].scale(sp(m * k - n * l))
                           + cu[(n - l, m + k)].scale(sp(n * k + m * l))
                           + cu[(n + l, m - k)].scale(sp(-n * k - m * l)))
                    if lhs != rhs:
                        failures.append(("A4", (n, m, k, l)))

    return {"range": rng, "failures": failures, "passed": not failures}
