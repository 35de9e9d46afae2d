from fractions import Fraction

import pytest

from artifact.algebra import TKK, Spo
from artifact.reps import (MuStar, PiHat, PiTilde, UStar, dim_P_enumerated, dim_P_formula, fischer_decompose,
                           gk_growth, kmcs_finiteness_check, ladder_check, make_rep, printed_f_plus_coefficient,
                           sl2_check, verify_homomorphism, verify_reps)
from artifact.scalar import I, ONE, Scalar
from artifact.superspace import DiffOperator

from oracles import count_monomials

TAGS = ("pi_lambda", "rho_lambda", "pi_tilde", "rho_tilde", "pi_hat", "mu_star", "U_star")


@pytest.mark.parametrize("tag", TAGS)
def test_homomorphisms_11(tag):
    assert verify_homomorphism(make_rep(tag, 1, 1), tag, 1, 1).ok


def test_rho_tilde_random_21():
    assert verify_homomorphism(make_rep("rho_tilde", 2, 1), "rho_tilde", 2, 1, samples=300, exhaustive=False).ok


def test_u_star_10():
    r = UStar(1, 0)
    assert verify_homomorphism(r, "U_star", 1, 0, exhaustive=True).ok
    assert r.basis_op(("Z",)) == DiffOperator.identity(r.ring, I * Fraction(1, 2))


def test_pi_tilde_examples():
    pit = PiTilde(1, 1)
    sp = pit.space
    for i in range(1, 4):
        for j in range(i, 4):
            lab = ("-", i, j)
            if lab in pit.tkk.basis:
                want = DiffOperator.multiplier(sp.var(i) * sp.var(j)).scale(I * -2)
                assert pit.basis_op(lab) == want
    assert pit(pit.tkk.e_plus()) == sp.Delta().scale(I * Fraction(-1, 4))


def test_mu_star_equals_pi_hat_on_tilde_pair():
    m, n = 1, 1
    spo = Spo(m, n)
    mu, ph = MuStar(m, n), PiHat(m, n, space=None, spo=spo)
    ti = spo.tilde
    for i in range(1, 4):
        for j in range(1, 4):
            U = spo.U(ti(i), ti(j))
            want = ph.x(i).compose(ph.x(j)).scale(I * Fraction(1, 2))
            got = mu(U)
            assert got.render() == ph(U).render()
            assert ph.closed("tilde", i, "tilde", j) == want


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0), (0, 2)])
def test_verify_reps(m, n):
    rep = verify_reps(m, n, samples=120)
    assert rep.ok, [c.to_dict() for c in rep.failures]


def test_fischer_20():
    r = fischer_decompose(2, 2, 0)
    assert r["dim_P"] == 3 and r["direct"]
    assert [(s["l"], s["kind"], s["dim"]) for s in r["summands"]] == [(2, "H", 2), (0, "H", 1)]
    r0 = fischer_decompose(0, 2, 0)
    assert r0["summands"] == [{"l": 0, "kind": "H", "dim": 1}]


def test_fischer_generalised():
    r = fischer_decompose(2, 2, 1)
    assert r["direct"] and r["summands"] == [{"l": 2, "kind": "H~", "dim": 8}]
    r = fischer_decompose(4, 0, 2)
    assert r["direct"] and {s["kind"] for s in r["summands"]} == {"H~", "H"}


@pytest.mark.parametrize("m,n", [(3, 0), (2, 1)])
def test_ladder(m, n):
    rep = ladder_check(m, n)
    assert rep.ok, [c.to_dict() for c in rep.failures]


def test_printed_f_plus_drops_l():
    # the displayed coefficient ignores l; it matches the exact one at l = 0 only
    for M in (-2, 0, 1, 3):
        for k in (1, 2, 3):
            assert printed_f_plus_coefficient(M, k, 0) == printed_f_plus_coefficient(M, k, 2)
            assert printed_f_plus_coefficient(M, k, 0) == -k * (Fraction(M, 2) + k - 1)
            assert printed_f_plus_coefficient(M, k, 1) != -k * (Fraction(M, 2) + k)


def test_sl2():
    assert sl2_check(2, 1).ok


def test_kmcs():
    assert kmcs_finiteness_check(1, 1).ok


def test_gk_counts():
    assert dim_P_formula(2, 1, 1) == 8 == count_monomials(2, 1, 2)
    for m, n in ((1, 1), (2, 0), (0, 2), (2, 1), (3, 0), (1, 2)):
        for j in range(7):
            assert dim_P_formula(m, n, j) == count_monomials(m, n, 2 * j) == dim_P_enumerated(m, n, 2 * j)
        assert gk_growth(m, n)["exponent"] == m
    assert gk_growth(1, 0, 4)["dims_formula"] == [1] * 5
