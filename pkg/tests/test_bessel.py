from fractions import Fraction

import pytest

from artifact.bessel import (MatrixVarSpace, bessel_operator, bessel_supercommutativity, fold, same_span,
                             sdim_formula, v_lambda_direct, v_lambda_printed, vdim_formula, verify_bessel)
from artifact.superspace import SuperSpace

HALF = Fraction(-1, 2)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0), (0, 2)])
def test_verify_bessel_small(m, n):
    rep = verify_bessel(m, n, degree_cap=3, samples=60)
    assert rep.ok, [c.to_dict() for c in rep.failures]


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0), (2, 1)])
def test_constructions_agree(m, n):
    s = MatrixVarSpace(m, n)
    for lam in (HALF, Fraction(1)):
        for i, j in s.pairs:
            assert bessel_operator(s, lam, i, j, "definitional") == bessel_operator(s, lam, i, j)


@pytest.mark.parametrize("m,n,lam", [(2, 0, HALF), (1, 1, Fraction(1)), (1, 1, Fraction(7, 3))])
def test_supercommute(m, n, lam):
    assert bessel_supercommutativity(m, n, lam).ok


def test_bessel_kills_constants():
    s = MatrixVarSpace(1, 1)
    for i, j in s.pairs:
        assert not bessel_operator(s, HALF, i, j).apply(s.ring.const(1))


def test_v_minus_half_20():
    s = MatrixVarSpace(2, 0)
    V = v_lambda_direct(s, HALF)
    want = s.var(1, 2) ** 2 - s.var(1, 1) * s.var(2, 2)
    assert (V.dim_even, V.dim_odd) == (1, 0)
    assert same_span(s, V.polys, [want])


def test_generic_lambda_zero_space():
    assert v_lambda_direct(MatrixVarSpace(1, 1), Fraction(2)).dim == 0


def test_sdim_at_minus_four():
    s = MatrixVarSpace(0, 2)
    assert v_lambda_direct(s, Fraction(1)).sdim == sdim_formula(-4, 1) == 1
    assert v_lambda_direct(s, HALF).sdim == sdim_formula(-4, HALF) == 20


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 0)])
def test_vdim_formulas(m, n):
    s = MatrixVarSpace(m, n)
    for lam in (Fraction(1), HALF):
        V = v_lambda_direct(s, lam)
        assert (V.dim_even, V.dim_odd) == vdim_formula(m, n, lam)
        assert same_span(s, V.polys, v_lambda_printed(s, lam).polys)


def test_fold_two_e_and_kernel():
    s = MatrixVarSpace(2, 1)
    t = SuperSpace(2, 1)
    assert fold(s.unit_poly().scale(2), s, target=t)[0] == t.R2()
    for q in v_lambda_direct(s, HALF).polys:
        assert not fold(q, s, target=t)[0]


def test_fold_pairing():
    s = MatrixVarSpace(1, 1, banks=("z", "w"))
    t = SuperSpace(1, 1, banks=("z", "w"))
    assert fold(s.pairing("z", "w").scale(4), s, target=t)[0] == t.trace_product("z", "w") ** 2
