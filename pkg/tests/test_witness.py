import math

import pytest

from thetatorus import nctorus as nc
from thetatorus import witness as wit
from thetatorus.scalars import PhaseScalar


def test_generators_and_unit():
    assert wit.eval_expr(wit.generation_witness(0, 0)) == nc.curly(0, 0)
    assert wit.eval_expr(wit.generation_witness(1, 0)) == nc.curly(1, 0)
    assert wit.eval_expr(wit.generation_witness(2, 0)) == nc.curly(2, 0)


def test_one_one_witness_structure():
    # ({1,0}^2 - {2,0} - {0,0}) / (s + s^{-1})
    tree = wit.generation_witness(1, 1)
    val = wit.eval_expr(tree)
    piv = PhaseScalar.s_power(1) + PhaseScalar.s_power(-1)
    direct = (nc.mul(nc.curly(1, 0), nc.curly(1, 0)) - nc.curly(2, 0)
              - nc.curly(0, 0)).scale(piv.inverse())
    assert val == direct == nc.curly(1, 1)


def test_axis_witnesses_exact():
    for n in range(3, 6):
        assert wit.eval_expr(wit.generation_witness(n, 0)) == nc.curly(n, 0)


def test_witnesses_exact_small():
    for n in range(0, 6):
        for m in range(0, 6 - n):
            tree = wit.generation_witness(n, m)
            assert wit.eval_expr(tree) == nc.curly(n, m), (n, m)


def test_float_evaluation():
    alpha = 1 / math.sqrt(2)
    for n, m in [(4, 0), (2, 2), (3, 1)]:
        got = wit.eval_expr(wit.generation_witness(n, m), alpha=alpha)
        want = nc.curly(n, m, "float", alpha)
        err = max(abs(got.terms.get(k, 0) - want.terms.get(k, 0))
                  for k in set(got.terms) | set(want.terms))
        assert err < 1e-8


def test_excluded_specialization_refused():
    with pytest.raises(ValueError, match="pivot"):
        wit.eval_expr(wit.generation_witness(1, 1), alpha=0.5)
    # at alpha = 0 the first-band 2x2 determinant degenerates instead
    with pytest.raises(ValueError, match="pivot"):
        wit.eval_expr(wit.generation_witness(3, 1), alpha=0.0)


def test_negative_indices_rejected():
    with pytest.raises(ValueError):
        wit.generation_witness(-1, 2)


def test_canonical_pair_orbit():
    assert wit.canonical_pair(0, 3) == (3, 0)
    assert wit.canonical_pair(-2, 5) == wit.canonical_pair(5, 2)
    n, m = wit.canonical_pair(-3, -4)
    assert n >= 0 and m >= 0
