from fractions import Fraction

from hypothesis import given, settings, strategies as st

from thetatorus import nctorus as nc
from thetatorus.scalars import PhaseScalar


def _poly(pairs):
    """Exact NCPoly from ((n, m), integer-coefficient) pairs."""
    out = nc.NCPoly("exact")
    for (n, m), c in pairs:
        out = out + nc.monomial(n, m, PhaseScalar.from_int(c))
    return out


small_int = st.integers(min_value=-3, max_value=3)
coeff = st.integers(min_value=-4, max_value=4)
poly_st = st.lists(st.tuples(st.tuples(small_int, small_int), coeff),
                   min_size=1, max_size=4).map(_poly)


def test_commutation_defining_relation():
    u = nc.monomial(1, 0)
    v = nc.monomial(0, 1)
    rho = PhaseScalar.s_power(2)
    assert nc.mul(u, v) == nc.mul(v, u).scale(rho)


@settings(max_examples=25, deadline=None)
@given(poly_st, poly_st, poly_st)
def test_ring_axioms(x, y, z):
    assert nc.mul(nc.mul(x, y), z) == nc.mul(x, nc.mul(y, z))
    assert nc.mul(x, y + z) == nc.mul(x, y) + nc.mul(x, z)
    assert nc.mul(x + y, z) == nc.mul(x, z) + nc.mul(y, z)


@settings(max_examples=25, deadline=None)
@given(poly_st, poly_st)
def test_adjoint_anti_involution(x, y):
    assert nc.adjoint(nc.adjoint(x)) == x
    assert nc.adjoint(nc.mul(x, y)) == nc.mul(nc.adjoint(y), nc.adjoint(x))


@settings(max_examples=25, deadline=None)
@given(poly_st, poly_st)
def test_trace_property(x, y):
    assert nc.trace(nc.mul(x, y)) == nc.trace(nc.mul(y, x))
    assert nc.trace(nc.adjoint(x)) == nc.trace(x).conj()


@settings(max_examples=20, deadline=None)
@given(poly_st)
def test_sigma_order_four_and_expectation(x):
    y = x
    for _ in range(4):
        y = nc.sigma(y)
    assert y == x
    e = nc.expectation(x)
    assert nc.sigma(e) == e
    assert nc.expectation(e) == e


@settings(max_examples=20, deadline=None)
@given(poly_st, poly_st)
def test_sigma_is_homomorphism(x, y):
    assert nc.sigma(nc.mul(x, y)) == nc.mul(nc.sigma(x), nc.sigma(y))
    assert nc.sigma(nc.adjoint(x)) == nc.adjoint(nc.sigma(x))


def test_sigma_on_generators():
    assert nc.sigma(nc.monomial(1, 0)) == nc.monomial(0, 1)
    # sigma(v) = u^{-1}
    assert nc.sigma(nc.monomial(0, 1)) == nc.monomial(-1, 0)


def test_curly_is_four_expectations():
    for n, m in [(1, 0), (1, 1), (2, 1), (3, 2)]:
        lhs = nc.curly(n, m)
        rhs = nc.expectation(nc.monomial(n, m)).scale(
            PhaseScalar.from_int(4) * PhaseScalar.s_power(-n * m))
        assert lhs == rhs


def test_bracket_identities_small_range():
    rep = nc.check_bracket_identities(3)
    assert rep["passed"] and not rep["failures"]


def test_bracket_product_example():
    # {1,0}^2 = {0,0} + {2,0} + (s + s^{-1}){1,1}
    lhs = nc.mul(nc.curly(1, 0), nc.curly(1, 0))
    piv = PhaseScalar.s_power(1) + PhaseScalar.s_power(-1)
    rhs = nc.curly(0, 0) + nc.curly(2, 0) + nc.curly(1, 1).scale(piv)
    assert lhs == rhs


def test_harper_square_at_half():
    # H^2 = 4*1 + {2,0} exactly at alpha = 1/2
    h = nc.harper(2.0, mode="exact")
    diff = nc.mul(h, h) - nc.unit().scale(PhaseScalar.from_int(4)) - nc.curly(2, 0)
    spec = nc.specialize_half(diff)
    assert all(v.is_zero() for v in spec.values())


def test_apply_sl2_respects_products():
    X = nc.SL2Matrix(1, 1, 0, 1)
    for x, y in [(nc.monomial(1, 0), nc.monomial(0, 1)),
                 (nc.curly(1, 1), nc.monomial(2, -1))]:
        assert nc.apply_sl2(X, nc.mul(x, y)) == nc.mul(nc.apply_sl2(X, x),
                                                       nc.apply_sl2(X, y))


def test_float_exact_agreement():
    alpha = 0.37
    x = nc.curly(2, 1)
    y = nc.curly(1, 1)
    ex = nc.to_float(nc.mul(x, y), alpha)
    fl = nc.mul(nc.curly(2, 1, "float", alpha), nc.curly(1, 1, "float", alpha))
    assert set(ex.terms) == set(fl.terms)
    assert max(abs(ex.terms[k] - fl.terms[k]) for k in ex.terms) < 1e-12
