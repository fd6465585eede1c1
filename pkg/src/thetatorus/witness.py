"""Constructive generation witnesses.

Every element {n,m} of the sigma-fixed subalgebra is an explicit *-algebra
expression over the two generators {1,0} and {2,0}.  The construction is a
triple induction driven by the curly product rule

    {n,m}{k,l} = s^{nl-mk}{n+k,m+l} + s^{mk-nl}{n-k,m-l}
               + s^{nk+ml}{n-l,m+k} + s^{-nk-ml}{n+l,m-k}      (s^2 = rho)

with all solved pivots invertible in the rational-function field:

  1. axis: {n,0} from {n-1,0}{1,0} once {n-1,1} and {1,n-1} are known;
  2. first band: {n,1} and {1,n} from the 2x2 system given by
     {n-1,0}{1,1} and {1,1}{n-1,0} (determinant s^{2(n-1)} - s^{-2(n-1)});
  3. interior n >= m >= 2: {n,m} from {n-1,m-1}{1,1};
  4. transpose m > n >= 2: {n,m} from {m,0}{n,0}.

Witness trees share subtrees (a DAG); evaluation is memoized.
"""

import cmath
import math
from dataclasses import dataclass, field

from . import nctorus as nc
from .scalars import PhaseScalar


class ExprTree:
    pass


@dataclass(frozen=True)
class Unit(ExprTree):
    pass


@dataclass(frozen=True)
class Gen1(ExprTree):
    """The generator {1,0} = u + u^{-1} + v + v^{-1}."""


@dataclass(frozen=True)
class Gen2(ExprTree):
    """The generator {2,0} = u^2 + u^{-2} + v^2 + v^{-2}."""


@dataclass(frozen=True, eq=False)
class Add(ExprTree):
    left: ExprTree
    right: ExprTree


@dataclass(frozen=True, eq=False)
class Mul(ExprTree):
    left: ExprTree
    right: ExprTree


@dataclass(frozen=True, eq=False)
class Scale(ExprTree):
    scalar: PhaseScalar
    child: ExprTree


@dataclass(frozen=True, eq=False)
class Adjoint(ExprTree):
    child: ExprTree


def eval_expr(tree, alpha=None):
    """Evaluate an ExprTree to an NCPoly.

    alpha=None -> exact mode over the rational-function field;
    numeric alpha -> float mode (scalars evaluated at s = e^{i pi alpha}).
    """
    mode = "exact" if alpha is None else "float"
    cache = {}

    def go(t):
        key = id(t)
        if key in cache:
            return cache[key]
        if isinstance(t, Unit):
            out = nc.unit(mode, alpha)
        elif isinstance(t, Gen1):
            out = nc.curly(1, 0, mode, alpha)
        elif isinstance(t, Gen2):
            out = nc.curly(2, 0, mode, alpha)
        elif isinstance(t, Add):
            out = go(t.left) + go(t.right)
        elif isinstance(t, Mul):
            out = nc.mul(go(t.left), go(t.right))
        elif isinstance(t, Scale):
            if mode == "exact":
                c = t.scalar
            else:
                s = cmath.exp(1j * math.pi * alpha)
                den = t.scalar.den.eval_at_s(s)
                if abs(den) < 1e-9:
                    raise ValueError(
                        f"pivot denominator vanishes at alpha={alpha}: the "
                        "construction excludes this specialization")
                c = t.scalar.eval_complex(alpha)
            out = go(t.child).scale(c)
        elif isinstance(t, Adjoint):
            out = nc.adjoint(go(t.child))
        else:
            raise TypeError(f"unknown ExprTree node {t!r}")
        cache[key] = out
        return out

    return go(tree)


def canonical_pair(n, m):
    """Representative of the orbit (n,m) -> (-m,n) with both coordinates >= 0."""
    for _ in range(4):
        if n >= 0 and m >= 0:
            return (max(n, m), 0) if (n == 0 or m == 0) else (n, m)
        n, m = -m, n
    raise AssertionError("orbit has no nonnegative representative")


def _sub(a, b):
    return Add(a, Scale(PhaseScalar.from_int(-1), b))


class WitnessBuilder:
    """Memoized recursive construction of witnesses for canonical pairs."""

    def __init__(self):
        sp = PhaseScalar.s_power
        self._sp = sp
        self.known = {
            (0, 0): Scale(PhaseScalar.from_int(4), Unit()),
            (1, 0): Gen1(),
            (2, 0): Gen2(),
        }

    def get(self, n, m):
        key = canonical_pair(n, m)
        if key not in self.known:
            self.known[key] = self._build(*key)
        return self.known[key]

    def _build(self, n, m):
        sp = self._sp
        if m == 0:
            # {n,0} = {n-1,0}{1,0} - {n-2,0} - s^{n-1}{n-1,1} - s^{1-n}{1,n-1}
            prod = Mul(self.get(n - 1, 0), self.get(1, 0))
            t = _sub(prod, self.get(n - 2, 0))
            t = _sub(t, Scale(sp(n - 1), self.get(n - 1, 1)))
            t = _sub(t, Scale(sp(1 - n), self.get(1, n - 1)))
            return t
        if n == 1 and m == 1:
            # {1,1} = ({1,0}^2 - {2,0} - {0,0}) / (s + s^{-1})
            num = _sub(_sub(Mul(Gen1(), Gen1()), Gen2()), self.get(0, 0))
            return Scale((sp(1) + sp(-1)).inverse(), num)
        if m == 1 or n == 1:
            k = max(n, m)  # building both {k,1} and {1,k}
            self._build_first_band(k)
            return self.known[(n, m)]
        if n >= m:
            # {n,m} = s^{m-n}( {n-1,m-1}{1,1} - s^{m-n}{n-2,m-2}
            #                  - s^{n+m-2}{n-2,m} - s^{2-n-m}{n,m-2} )
            prod = Mul(self.get(n - 1, m - 1), self.get(1, 1))
            t = _sub(prod, Scale(sp(m - n), self.get(n - 2, m - 2)))
            t = _sub(t, Scale(sp(n + m - 2), self.get(n - 2, m)))
            t = _sub(t, Scale(sp(2 - n - m), self.get(n, m - 2)))
            return Scale(sp(m - n), t)
        # transpose: m > n >= 2
        # {n,m} = s^{nm}( {m,0}{n,0} - {m+n,0} - {m-n,0} - s^{nm}{m,n} )
        prod = Mul(self.get(m, 0), self.get(n, 0))
        t = _sub(prod, self.get(m + n, 0))
        t = _sub(t, self.get(m - n, 0))
        t = _sub(t, Scale(sp(n * m), self.get(m, n)))
        return Scale(sp(n * m), t)

    def _build_first_band(self, k):
        """Solve the 2x2 system for X = {k,1}, Y = {1,k}, k >= 2."""
        sp = self._sp
        a, b = sp(k - 1), sp(1 - k)
        det_inv = (a * a - b * b).inverse()
        p1 = Mul(self.get(k - 1, 0), self.get(1, 1))
        p2 = Mul(self.get(1, 1), self.get(k - 1, 0))
        k1 = self.get(1, k - 2)  # {1,k-2}
        k2 = self.get(k - 2, 1)  # {k-2,1}
        # P1 = aX + bY + b{1,k-2} + a{k-2,1};  P2 = bX + aY + a{1,k-2} + b{k-2,1}
        x = _sub(Scale(det_inv, Add(Scale(a, p1), Scale(PhaseScalar.from_int(-1) * b, p2))), k2)
        y = _sub(Scale(det_inv, Add(Scale(a, p2), Scale(PhaseScalar.from_int(-1) * b, p1))), k1)
        self.known[(k, 1)] = x
        self.known[(1, k)] = y


_default_builder = WitnessBuilder()


def generation_witness(n, m):
    """ExprTree over {1,0}, {2,0} that evaluates identically to {n,m}."""
    if n < 0 or m < 0:
        raise ValueError("generation_witness expects n, m >= 0")
    return _default_builder.get(n, m)
