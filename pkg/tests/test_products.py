from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artifact.bessel import MatrixVarSpace, fold
from artifact.gaussian import GaussianFunction
from artifact.linalg import leading_minors
from artifact.products import (FockSpace, bessel_fischer, bessel_fischer_checks, bessel_fischer_raw, fischer,
                               fock, fock_kernel_reproduce, folded_kernel_check, fundamental_symmetry, gram_matrix,
                               kernel_checks, l2, positivity_check, skew_checks, verify_products)
from artifact.scalar import Scalar
from artifact.superspace import SuperSpace

HALF = Fraction(-1, 2)


def test_z1_squared():
    fs = FockSpace(1, 1)
    z = fs.space.var(1, "z") ** 2
    assert fischer(fs.space, z, z, "z") == Scalar(2)
    assert fock(fs, z, z) == Scalar(2)


def test_l2_normalisation():
    s = SuperSpace(2, 1)
    g = GaussianFunction(s, s.ring.const(1), 1)
    assert l2(g, g) == Scalar(1)


def test_bessel_fischer_matches_folded_fischer():
    ms = MatrixVarSpace(1, 1)
    t = SuperSpace(1, 1, banks=("z",))
    p = ms.var(1, 1) * ms.var(2, 3)
    q = ms.var(1, 1) * ms.var(2, 3)
    assert bessel_fischer(ms, HALF, p, q) == fischer(t, fold(p, ms, target=t)[0], fold(q, ms, target=t)[0])


def test_kernel_slice_10():
    ms = MatrixVarSpace(1, 0, banks=("z", "w"))
    got = bessel_fischer_raw(ms, HALF, ms.var(1, 1, "z"), ms.pairing("z", "w").scale(2), "z")
    assert got == ms.var(1, 1, "w")


def test_fock_kernel_truncated():
    s = SuperSpace(2, 0, banks=("z",))
    got, ok = fock_kernel_reproduce(2, 0, s.var(1) * s.var(2), 2)
    assert ok and got.render() == "w1*w2"


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_folded_kernel(k):
    assert folded_kernel_check(1, 1, k)[2]


def test_skew_11_exhaustive():
    assert skew_checks(1, 1, degree_cap=3).ok


def test_skew_20_deg4():
    assert skew_checks(2, 0, degree_cap=4).ok


def test_sf_examples():
    s = SuperSpace(1, 1, banks=("z",))
    assert fundamental_symmetry(s, s.var(1)) == s.var(1)
    t = SuperSpace(0, 1, banks=("z",))
    p = t.var(1) * t.var(2)
    s2 = fundamental_symmetry(t, fundamental_symmetry(t, p))
    assert s2 in (p, -p)
    s4 = fundamental_symmetry(t, fundamental_symmetry(t, s2))
    assert s4 == p


def test_sf_gram_p1_112():
    basis, G = gram_matrix(1, 1, 1, "sf")
    assert len(basis) == 3
    minors = leading_minors(G)
    assert all(x.is_rational() and x.to_fraction() > 0 for x in minors)
    assert all(G[i][j] == G[j][i].conj() for i in range(3) for j in range(3))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0), (0, 2)])
def test_verify_products(m, n):
    rep = verify_products(m, n, degree_cap=3, samples=30)
    assert rep.ok, [c.to_dict() for c in rep.failures]


SP = FockSpace(1, 1)


@st.composite
def fock_polys(draw):
    s = SP.space
    out = s.ring.zero()
    for _ in range(draw(st.integers(1, 3))):
        t = s.ring.const(Scalar(draw(st.integers(-3, 3)), draw(st.integers(-3, 3))))
        for _ in range(draw(st.integers(0, 3))):
            t = t * s.var(draw(st.integers(1, 3)), "z")
        out = out + t
    return out


@settings(max_examples=40, deadline=None)
@given(fock_polys(), fock_polys())
def test_fischer_fock_hypothesis(p, q):
    assert fischer(SP.space, p, q, "z") == fock(SP, p, q)
    for a in p.parity_parts():
        for b in q.parity_parts():
            sign = -1 if (a.parity() and b.parity()) else 1
            assert fischer(SP.space, a, b, "z") == fischer(SP.space, b, a, "z").conj() * sign
