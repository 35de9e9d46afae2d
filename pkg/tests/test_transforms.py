from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from artifact.gaussian import GaussianFunction
from artifact.scalar import Scalar
from artifact.superspace import SuperSpace
from artifact.transforms import (Fourier, SegalBargmann, fourier_checks, hermite, hermite_indices,
                                 hermite_tilde_by_rescaling, verify_transforms, x_alpha)

from oracles import classical_hermite, fourier_1d, to_sympy


@pytest.mark.parametrize("k", range(7))
def test_classical_hermite(k):
    s = SuperSpace(1, 0)
    H = hermite(s, (k,), "H")
    coeffs = [H.coefficient((e,)) for e in range(k + 1)]
    assert [to_sympy(c) for c in coeffs] == classical_hermite(k)


def test_h2_frozen():
    s = SuperSpace(1, 0)
    assert hermite(s, (2,), "H").render() == "-2 + 4*x1^2"


def test_h_tilde_linear():
    for m, n in ((1, 1), (2, 0), (1, 2)):
        s = SuperSpace(m, n)
        a = (1,) + (0,) * (s.dim - 1)
        h = hermite(s, a, "h_tilde")
        assert h == GaussianFunction(s, s.var(1).scale(2), 1)


def test_alpha_zero():
    s = SuperSpace(1, 1)
    z = (0, 0, 0)
    assert hermite(s, z, "H") == s.ring.const(1) == hermite(s, z, "H_tilde")
    assert hermite(s, z, "h").c == Fraction(1, 2) and hermite(s, z, "h_tilde").c == 1


@pytest.mark.parametrize("m,n", [(1, 1), (0, 2)])
def test_rescaling_route(m, n):
    s = SuperSpace(m, n)
    for a in hermite_indices(m, n, 3):
        assert hermite_tilde_by_rescaling(s, a) == hermite(s, a, "h_tilde")


def test_sb_examples():
    sb = SegalBargmann(1, 1)
    xs, zs = sb.xspace, sb.zspace
    assert sb(GaussianFunction(xs, xs.ring.const(1), 1)) == zs.ring.const(1)
    assert sb(GaussianFunction(xs, xs.var(1).scale(2), 1)) == zs.var(1)
    for a in hermite_indices(1, 1, 4):
        h = hermite(xs, a, "h_tilde")
        assert sb(h) == x_alpha(zs, a) == sb(h, "hermite_basis")


def test_sb_inverse_examples():
    sb = SegalBargmann(1, 1)
    xs, zs = sb.xspace, sb.zspace
    assert sb.inverse(zs.ring.const(1)) == GaussianFunction(xs, xs.ring.const(1), 1)
    assert sb.inverse(zs.var(1) * zs.var(2)) == hermite(xs, (1, 1, 0), "h_tilde")
    for a in hermite_indices(1, 1, 3):
        assert sb.inverse(x_alpha(zs, a)) == hermite(xs, a, "h_tilde")


def test_sb_rejects_weight():
    sb = SegalBargmann(1, 0)
    with pytest.raises(ValueError):
        sb(GaussianFunction(sb.xspace, sb.xspace.var(1), 2))


def _as_sympy(g, x):
    out = sp.Integer(0)
    for mono, c in g.poly.terms.items():
        out += to_sympy(c) * x ** mono[0]
    return out * sp.exp(-sp.Rational(g.c.numerator, g.c.denominator) * x ** 2)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("sign", [1, -1])
def test_fourier_1d_against_sympy(k, sign):
    s = SuperSpace(1, 0)
    F = Fourier(s)
    got = F(GaussianFunction(s, s.var(1) ** k, 1), sign)
    # the kernel is exp(-+ i x l), see the exchange rules
    ref, x = fourier_1d(lambda l: l ** k * sp.exp(-l ** 2), -sign)
    assert sp.simplify(_as_sympy(got, x) - ref) == 0


def test_fourier_gaussian_frozen():
    s = SuperSpace(1, 0)
    F = Fourier(s)
    one = GaussianFunction(s, s.ring.const(1), 1)
    want = GaussianFunction(s, s.ring.const(Scalar.two_pow_half(-1)), Fraction(1, 4))
    assert F(one, 1) == want == F(one, -1)


FS = SuperSpace(1, 1)


@st.composite
def gaussians(draw):
    out = FS.ring.zero()
    for _ in range(draw(st.integers(1, 3))):
        t = FS.ring.const(Scalar(draw(st.integers(-3, 3)), draw(st.integers(-3, 3))))
        for _ in range(draw(st.integers(0, 4))):
            t = t * FS.var(draw(st.integers(1, 3)))
        out = out + t
    return GaussianFunction(FS, out, draw(st.sampled_from([Fraction(1), Fraction(1, 2), Fraction(2)])))


@settings(max_examples=30, deadline=None)
@given(gaussians())
def test_fourier_inverse_hypothesis(f):
    F = Fourier(FS)
    assert F(F(f, 1), -1) == f
    assert F(F(f, -1), 1) == f


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0)])
def test_verify_transforms(m, n):
    rep = verify_transforms(m, n, degree_cap=3, samples=20)
    assert rep.ok, [c.to_dict() for c in rep.failures]
