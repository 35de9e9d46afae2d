from fractions import Fraction

from hypothesis import given, settings, strategies as st

from artifact.scalar import Scalar
from artifact.superspace import DiffOperator, SuperSpace, bracket, parse_poly


def test_koszul_derivative():
    s = SuperSpace(1, 1)
    x = s.var
    p = x(2) * x(3)
    assert p.derive(s.vindex(2)) == x(3)
    assert p.derive(s.vindex(3)) == -x(2)
    assert (x(1) ** 3).derive(s.vindex(1)) == (x(1) ** 2).scale(3)


def test_lowered_derivative_matches_contraction():
    for m, n in ((1, 1), (0, 2), (2, 1)):
        s = SuperSpace(m, n)
        for i in range(1, s.dim + 1):
            for j in range(1, s.dim + 1):
                want = s.beta[i - 1][j - 1]
                got = s.d(i).apply(s.var(j)).constant_term()
                # d_i l_j = beta_ij by contraction of beta with the raw partials
                oracle = sum(s.beta[i - 1][k - 1] * (1 if k == j else 0) for k in range(1, s.dim + 1))
                assert got == Scalar(oracle) == Scalar(want)


def test_laplacian_and_r2():
    s = SuperSpace(1, 0)
    assert s.Delta().apply(s.var(1) ** 2) == s.ring.const(2)
    t = SuperSpace(0, 1)
    # R^2 = sum beta^{ij} l_i l_j with beta^{-1} = [[0, 1], [-1, 0]]
    oracle = t.ring.zero()
    for i in range(1, 3):
        for j in range(1, 3):
            c = t.beta_inv[i - 1][j - 1]
            if c:
                oracle = oracle + (t.var(i) * t.var(j)).scale(c)
    assert t.R2() == oracle == (t.var(1) * t.var(2)).scale(2)


def test_euler_homogeneity():
    s = SuperSpace(2, 0, banks=("z",))
    p = s.var(1) ** 2 * s.var(2)
    assert s.Euler().apply(p) == p.scale(3)


def test_sl2_relations():
    for m, n in ((1, 1), (2, 0), (0, 2), (2, 1)):
        s = SuperSpace(m, n)
        R2 = DiffOperator.multiplier(s.R2())
        D, E = s.Delta(), s.Euler()
        assert bracket(D, R2) == E.scale(4) + DiffOperator.identity(s.ring, 2 * s.M)
        assert bracket(R2, E) == R2.scale(-2)
        for i in range(1, s.dim + 1):
            for j in range(1, s.dim + 1):
                assert not bracket(D, s.L(i, j))
                assert not bracket(R2, s.L(i, j))


SPACE = SuperSpace(1, 1)


@st.composite
def polys(draw):
    out = SPACE.ring.zero()
    for _ in range(draw(st.integers(0, 4))):
        mono = SPACE.ring.const(Scalar(draw(st.integers(-5, 5)), draw(st.integers(-3, 3))))
        for _ in range(draw(st.integers(0, 3))):
            mono = mono * SPACE.var(draw(st.integers(1, 3)))
        out = out + mono
    return out


@settings(max_examples=60)
@given(polys())
def test_parse_round_trip(p):
    assert parse_poly(p.render(), SPACE.ring) == p


@settings(max_examples=60)
@given(polys(), polys())
def test_supercommutativity(p, q):
    for a in p.parity_parts():
        for b in q.parity_parts():
            sign = -1 if (a.parity() and b.parity()) else 1
            assert a * b == (b * a).scale(sign)


def test_parse_rejects_unknown():
    import pytest
    with pytest.raises(ValueError):
        parse_poly("y1 + 1", SPACE.ring)
