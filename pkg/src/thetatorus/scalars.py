"""Exact scalar arithmetic for the rotation algebra.

Coefficients live in the field of rational functions in a single formal unit
s (with s^2 = rho = e^{2 pi i alpha}) over the Gaussian rationals Q(i).
Conjugation sends s -> s^{-1} and i -> -i, matching |s| = 1 on the circle.

PhaseScalar keeps a canonical numerator/denominator pair: both are honest
polynomials with no common factor, the denominator is monic with nonzero
constant term.  Equality is then syntactic.
"""

import cmath
import math
from fractions import Fraction


class GaussRat:
    """Gaussian rational a + b*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re, im):
        out = object.__new__(cls)
        out.re = re
        out.im = im
        return out

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRat(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRat._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.im and not other.im:
            return GaussRat._raw(self.re * other.re, self.im)
        return GaussRat._raw(self.re * other.re - self.im * other.im,
                             self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        return GaussRat._raw((self.re * other.re + self.im * other.im) / d,
                             (self.im * other.re - self.re * other.im) / d)

    def __neg__(self):
        return GaussRat._raw(-self.re, -self.im)

    def conj(self):
        return GaussRat._raw(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


GR_ZERO = GaussRat(0)
GR_ONE = GaussRat(1)
GR_I = GaussRat(0, 1)


def _poly_trim(d):
    return {k: v for k, v in d.items() if not v.is_zero()}


class LaurentPoly:
    """Laurent polynomial in s with GaussRat coefficients, as {exponent: coeff}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = _poly_trim(coeffs or {})

    @staticmethod
    def monomial(k, c=GR_ONE):
        if not isinstance(c, GaussRat):
            c = GaussRat(c)
        return LaurentPoly({k: c})

    @staticmethod
    def const(c):
        return LaurentPoly.monomial(0, c if isinstance(c, GaussRat) else GaussRat(c))

    def is_zero(self):
        return not self.coeffs

    def min_deg(self):
        return min(self.coeffs) if self.coeffs else 0

    def max_deg(self):
        return max(self.coeffs) if self.coeffs else 0

    def is_monomial(self):
        return len(self.coeffs) == 1

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, GR_ZERO) + v
        return LaurentPoly(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, GR_ZERO) - v
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        out = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                prod = v1 * v2
                if k in out:
                    out[k] = out[k] + prod
                else:
                    out[k] = prod
        return LaurentPoly(out)

    def scale(self, c):
        return LaurentPoly({k: v * c for k, v in self.coeffs.items()})

    def shift(self, d):
        return LaurentPoly({k + d: v for k, v in self.coeffs.items()})

    def conj(self):
        """Circle conjugate: s -> s^{-1}, coefficients conjugated."""
        return LaurentPoly({-k: v.conj() for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def eval_at_s(self, s):
        return sum((complex(v) * s ** k for k, v in self.coeffs.items()), 0j)

    def eval_at_i(self):
        """Exact evaluation at s = i (alpha = 1/2)."""
        powers = (GR_ONE, GR_I, -GR_ONE, -GR_I)
        out = GR_ZERO
        for k, v in self.coeffs.items():
            out = out + v * powers[k % 4]
        return out

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"


LP_ZERO = LaurentPoly()
LP_ONE = LaurentPoly.const(GR_ONE)


def _poly_to_list(p):
    """Nonneg-degree poly dict -> dense coefficient list (index = degree)."""
    n = p.max_deg()
    out = [GR_ZERO] * (n + 1)
    for k, v in p.coeffs.items():
        out[k] = v
    return out


def _list_to_poly(lst):
    return LaurentPoly({k: v for k, v in enumerate(lst) if not v.is_zero()})


def _poly_divmod(a, b):
    """Dense polynomial division over Q(i)."""
    a = list(a)
    db = len(b) - 1
    while db >= 0 and b[db].is_zero():
        db -= 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = [GR_ZERO] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i].is_zero():
            continue
        c = a[i] / b[db]
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = a[i - db + j] - c * b[j]
    return q, a[:db] if db > 0 else []


def _poly_gcd(a, b):
    """Monic gcd of dense polynomials over Q(i)."""
    def norm(p):
        while p and p[-1].is_zero():
            p.pop()
        return p

    a, b = norm(list(a)), norm(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, norm(list(r))
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


class PhaseScalar:
    """Canonical rational function num/den in s over Q(i)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _canonical=False):
        if den is None:
            den = LP_ONE
        if den.is_zero():
            raise ZeroDivisionError("PhaseScalar with zero denominator")
        if _canonical:
            self.num, self.den = num, den
            return
        self.num, self.den = self._canonicalize(num, den)

    @staticmethod
    def _canonicalize(num, den):
        if num.is_zero():
            return LP_ZERO, LP_ONE
        # shift so den has constant term and num has nonneg degrees
        d = min(num.min_deg(), den.min_deg())
        num, den = num.shift(-d), den.shift(-d)
        sd = den.min_deg()
        if sd > 0:
            # strip common s^sd (s is a unit; keep den's constant term nonzero)
            sn = num.min_deg()
            k = min(sn, sd)
            num, den = num.shift(-k), den.shift(-k)
        if den.is_monomial():
            k, c = next(iter(den.coeffs.items()))
            num = num.shift(-k)
            if c != GR_ONE:
                num = num.scale(GR_ONE / c)
            return num, LP_ONE
        g = _poly_gcd(_poly_to_list(num), _poly_to_list(den))
        if len(g) > 1:
            qn, _ = _poly_divmod(_poly_to_list(num), g)
            qd, _ = _poly_divmod(_poly_to_list(den), g)
            num, den = _list_to_poly(qn), _list_to_poly(qd)
            d = min(num.min_deg(), den.min_deg())
            num, den = num.shift(-d), den.shift(-d)
        if den.is_monomial():
            k, c = next(iter(den.coeffs.items()))
            num = num.shift(-k)
            if c != GR_ONE:
                num = num.scale(GR_ONE / c)
            return num, LP_ONE
        lead = den.coeffs[den.max_deg()]
        if lead != GR_ONE:
            inv = GR_ONE / lead
            num, den = num.scale(inv), den.scale(inv)
        return num, den

    # constructors -------------------------------------------------------
    @staticmethod
    def from_int(n):
        return PhaseScalar(LaurentPoly.const(GaussRat(n)))

    @staticmethod
    def from_gauss(re, im=0):
        return PhaseScalar(LaurentPoly.const(GaussRat(re, im)))

    _s_power_cache = {}

    @staticmethod
    def s_power(k):
        """s^k = rho^{k/2}."""
        out = PhaseScalar._s_power_cache.get(k)
        if out is None:
            out = PhaseScalar(LaurentPoly.monomial(k), LP_ONE, _canonical=True)
            PhaseScalar._s_power_cache[k] = out
        return out

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, PhaseScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return PhaseScalar.from_int(x) if isinstance(x, int) else PhaseScalar(
                LaurentPoly.const(GaussRat(x)))
        if isinstance(x, GaussRat):
            return PhaseScalar(LaurentPoly.const(x))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            if self.den is LP_ONE or self.den == LP_ONE:
                return PhaseScalar(self.num + other.num, LP_ONE, _canonical=True)
            return PhaseScalar(self.num + other.num, self.den)
        return PhaseScalar(self.num * other.den + other.num * self.den,
                           self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            if self.den is LP_ONE or self.den == LP_ONE:
                return PhaseScalar(self.num - other.num, LP_ONE, _canonical=True)
            return PhaseScalar(self.num - other.num, self.den)
        return PhaseScalar(self.num * other.den - other.num * self.den,
                           self.den * other.den)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if (self.den is LP_ONE or self.den == LP_ONE) and \
                (other.den is LP_ONE or other.den == LP_ONE):
            return PhaseScalar(self.num * other.num, LP_ONE, _canonical=True)
        return PhaseScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero PhaseScalar")
        return PhaseScalar(self.num * other.den, self.den * other.num)

    def __neg__(self):
        return PhaseScalar(-self.num, self.den, _canonical=True)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero PhaseScalar")
        return PhaseScalar(self.den, self.num)

    def conj(self):
        return PhaseScalar(self.num.conj(), self.den.conj())

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # evaluation ---------------------------------------------------------
    def eval_complex(self, alpha):
        """Evaluate at s = exp(i*pi*alpha)."""
        s = cmath.exp(1j * math.pi * alpha)
        den = self.den.eval_at_s(s)
        if abs(den) < 1e-300:
            raise ZeroDivisionError(f"denominator vanishes at alpha={alpha}")
        return self.num.eval_at_s(s) / den

    def eval_at_i(self):
        """Exact Gaussian-rational value at s = i (alpha = 1/2)."""
        den = self.den.eval_at_i()
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes at s = i")
        return self.num.eval_at_i() / den

    def __repr__(self):
        return f"PhaseScalar({self.num!r}, {self.den!r})"


PS_ZERO = PhaseScalar(LP_ZERO)
PS_ONE = PhaseScalar(LP_ONE)
