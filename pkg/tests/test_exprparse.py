import pytest

from thetatorus import nctorus as nc
from thetatorus import witness as wit
from thetatorus.exprparse import ExprSyntaxError, parse_expr, serialize_witness


def test_monomials_and_generators():
    assert parse_expr("u + u^-1 + v + v^-1") == nc.curly(1, 0)
    assert parse_expr("u^2 + u^-2 + v^2 + v^-2") == nc.curly(2, 0)
    assert parse_expr("u^2 v^-3") == nc.monomial(2, -3)
    assert parse_expr("v^4") == nc.monomial(0, 4)


def test_scalars_and_rho():
    from thetatorus.scalars import PhaseScalar
    x = parse_expr("(1+2i) * u")
    assert x.terms[(1, 0)] == PhaseScalar.from_gauss(1, 2)
    assert parse_expr("rho^(1/2) * rho^(-1/2)") == nc.unit()
    assert parse_expr("rho") == nc.unit().scale(PhaseScalar.s_power(2))
    assert parse_expr("rho^2") == nc.unit().scale(PhaseScalar.s_power(4))


def test_functions():
    assert parse_expr("adj(u v)") == nc.adjoint(nc.monomial(1, 1))
    assert parse_expr("sigma(u)") == nc.monomial(0, 1)
    assert parse_expr("E(u) + E(v)") == nc.expectation(nc.monomial(1, 0)) \
        + nc.expectation(nc.monomial(0, 1))
    assert parse_expr("trace(u + 3)") == nc.unit().scale(
        nc.trace(parse_expr("u + 3")))


def test_scalar_division():
    got = parse_expr("(u + adj(u)) / 2")
    from thetatorus.scalars import PhaseScalar
    want = (nc.monomial(1, 0) + nc.monomial(-1, 0)).scale(
        PhaseScalar.from_gauss(1) / PhaseScalar.from_int(2))
    assert got == want


def test_division_by_nonscalar_rejected():
    with pytest.raises(ExprSyntaxError):
        parse_expr("1 / u")


def test_syntax_errors():
    for bad in ("u +", "(u", "rho^(1/3)", "u^2.5", "w + 1", "2 ** 3"):
        with pytest.raises(ExprSyntaxError):
            parse_expr(bad)


def test_float_mode():
    x = parse_expr("rho^(1/2) * u v", mode="float", alpha=0.25)
    import cmath, math
    assert abs(x.terms[(1, 1)] - cmath.exp(1j * math.pi * 0.25)) < 1e-15
    with pytest.raises(ValueError):
        parse_expr("u", mode="float")


def test_witness_round_trip():
    for n, m in [(3, 0), (1, 1), (2, 2), (3, 2), (4, 1), (5, 0)]:
        text = serialize_witness(wit.generation_witness(n, m))
        assert parse_expr(text) == nc.curly(n, m), (n, m)
