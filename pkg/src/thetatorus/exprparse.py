"""Plain-text expression syntax for rotation-algebra elements.

Grammar (whitespace-insensitive):
    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | atom
    atom    := number | number 'i' | 'i' | 'rho' power?
             | monomial | func '(' expr ')' | '(' expr ')'
    monomial:= 'u' ('^' int)? ('v' ('^' int)?)? | 'v' ('^' int)?
    power   := '^' int | '^' '(' int '/' '2' ')'
    func    := 'adj' | 'E' | 'sigma' | 'trace'

Division is defined only by scalar-valued subexpressions (multiples of the
unit).  In exact mode all numbers are rational (decimals allowed) and the
result is an exact NCPoly; in float mode pass alpha.
"""

import re
from fractions import Fraction

from . import nctorus as nc
from .scalars import GaussRat, PhaseScalar

_TOKEN = re.compile(r"""
    (?P<num>\d+(?:\.\d+)?)(?P<imag>i)?
  | (?P<name>rho|adj|E|sigma|trace|u|v|i)
  | (?P<op>[-+*/^()])
  | (?P<ws>\s+)
""", re.VERBOSE)


class ExprSyntaxError(ValueError):
    pass


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r} at {pos}")
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        if m.group("num"):
            toks.append(("imag" if m.group("imag") else "num", m.group("num")))
        elif m.group("name"):
            toks.append(("name", m.group("name")))
        else:
            toks.append(("op", m.group("op")))
    toks.append(("end", ""))
    return toks


class _Parser:
    def __init__(self, text, mode, alpha):
        self.toks = _tokenize(text)
        self.pos = 0
        self.mode = mode
        self.alpha = alpha

    # token plumbing ------------------------------------------------------
    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, value=None):
        t = self.next()
        if t[0] != kind or (value is not None and t[1] != value):
            raise ExprSyntaxError(f"expected {value or kind}, got {t[1]!r}")
        return t

    # coefficient helpers --------------------------------------------------
    def _scalar_poly(self, re_part, im_part):
        if self.mode == "exact":
            c = PhaseScalar.from_gauss(Fraction(re_part), Fraction(im_part))
            return nc.NCPoly("exact", {(0, 0): c})
        return nc.NCPoly("float", {(0, 0): complex(float(re_part), float(im_part))},
                         alpha=self.alpha)

    def _rho_half_power(self, k):
        """rho^{k/2} as a scalar element."""
        base = nc.unit(self.mode, self.alpha)
        return base.scale(base._s_pow(k))

    def _unit(self):
        return nc.unit(self.mode, self.alpha)

    # grammar --------------------------------------------------------------
    def parse(self):
        out = self.expr()
        self.expect("end")
        return out

    def expr(self):
        out = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.next()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            op = self.next()[1]
            rhs = self.factor()
            out = self._mul(out, rhs) if op == "*" else self._div(out, rhs)
        return out

    def factor(self):
        if self.peek() == ("op", "-"):
            self.next()
            return -self.factor()
        return self.atom()

    def _mul(self, x, y):
        return nc.mul(x, y)

    def _div(self, x, y):
        c = _as_scalar(y)
        if c is None:
            raise ExprSyntaxError("division only by scalar-valued expressions")
        if x.mode == "exact":
            return x.scale(c.inverse())
        if c == 0:
            raise ExprSyntaxError("division by zero")
        return x.scale(1.0 / c)

    def _signed_int(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.next()
            sign = -1
        t = self.expect("num")
        if "." in t[1]:
            raise ExprSyntaxError("exponents must be integers")
        return sign * int(t[1])

    def _monomial_exp(self):
        if self.peek() == ("op", "^"):
            self.next()
            return self._signed_int()
        return 1

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.next()
            return self._scalar_poly(val, 0)
        if kind == "imag":
            self.next()
            return self._scalar_poly(0, val)
        if kind == "op" and val == "(":
            self.next()
            out = self.expr()
            self.expect("op", ")")
            return out
        if kind == "name":
            self.next()
            if val == "i":
                return self._scalar_poly(0, 1)
            if val == "rho":
                return self._rho_atom()
            if val in ("u", "v"):
                return self._monomial_atom(val)
            # function call
            self.expect("op", "(")
            arg = self.expr()
            self.expect("op", ")")
            if val == "adj":
                return nc.adjoint(arg)
            if val == "E":
                return nc.expectation(arg)
            if val == "sigma":
                return nc.sigma(arg)
            if val == "trace":
                tr = nc.trace(arg)
                return self._unit().scale(tr)
            raise ExprSyntaxError(f"unknown function {val!r}")
        raise ExprSyntaxError(f"unexpected token {val!r}")

    def _rho_atom(self):
        if self.peek() != ("op", "^"):
            return self._rho_half_power(2)
        self.next()
        if self.peek() == ("op", "("):
            self.next()
            k = self._signed_int()
            self.expect("op", "/")
            t = self.expect("num")
            if t[1] != "2":
                raise ExprSyntaxError("rho exponents must be halves: rho^(k/2)")
            self.expect("op", ")")
            return self._rho_half_power(k)
        return self._rho_half_power(2 * self._signed_int())

    def _monomial_atom(self, first):
        if first == "u":
            n = self._monomial_exp()
            m = 0
            if self.peek() == ("name", "v"):
                self.next()
                m = self._monomial_exp()
            return nc.monomial(n, m, mode=self.mode, alpha=self.alpha)
        return nc.monomial(0, self._monomial_exp(), mode=self.mode, alpha=self.alpha)


def _as_scalar(x):
    """The coefficient if x is a multiple of the unit, else None."""
    if not x.terms:
        return PhaseScalar.from_int(0) if x.mode == "exact" else 0j
    if set(x.terms) == {(0, 0)}:
        return x.terms[(0, 0)]
    return None


def parse_expr(text, mode="exact", alpha=None):
    """Parse the expression syntax into an NCPoly."""
    if mode == "float" and alpha is None:
        raise ValueError("float mode requires alpha")
    return _Parser(text, mode, alpha).parse()


# ---------------------------------------------------------------------------
# serialization of witness trees
# ---------------------------------------------------------------------------

def _gauss_str(g: GaussRat):
    def frac(f):
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    if g.im == 0:
        return frac(g.re)
    if g.re == 0:
        return f"({frac(g.im)})*i"
    return f"({frac(g.re)}) + ({frac(g.im)})*i"


def _laurent_str(p):
    if p.is_zero():
        return "0"
    parts = []
    for k in sorted(p.coeffs):
        c = _gauss_str(p.coeffs[k])
        if k == 0:
            parts.append(f"({c})")
        else:
            parts.append(f"({c}) * rho^({k}/2)")
    return " + ".join(parts)


def phase_scalar_str(c: PhaseScalar):
    num = _laurent_str(c.num)
    if c.den.is_monomial():
        k = c.den.min_deg()
        g = c.den.coeffs[k]
        if g == GaussRat(1, 0) and k == 0:
            return f"({num})"
    return f"(({num}) / ({_laurent_str(c.den)}))"


def serialize_witness(tree):
    """Render a generation-witness tree in the CLI expression syntax."""
    from . import witness as wit

    def go(t):
        if isinstance(t, wit.Unit):
            return "1"
        if isinstance(t, wit.Gen1):
            return "(u + u^-1 + v + v^-1)"
        if isinstance(t, wit.Gen2):
            return "(u^2 + u^-2 + v^2 + v^-2)"
        if isinstance(t, wit.Add):
            return f"({go(t.left)} + {go(t.right)})"
        if isinstance(t, wit.Mul):
            return f"({go(t.left)} * {go(t.right)})"
        if isinstance(t, wit.Adjoint):
            return f"adj({go(t.child)})"
        if isinstance(t, wit.Scale):
            return f"({phase_scalar_str(t.scalar)} * {go(t.child)})"
        raise TypeError(f"unknown witness node {type(t).__name__}")

    return go(tree)
