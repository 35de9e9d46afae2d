from fractions import Fraction

import pytest
import sympy as sp

from artifact.gaussian import (GaussianFunction, berezin_integrate, gamma, gamma_closed,
                               gaussian_integrate_complex, gaussian_integrate_real, omega, omega_closed)
from artifact.scalar import Scalar
from artifact.superspace import SuperSpace

from oracles import real_gauss_moment, to_sympy

GRID = [(1, 1), (2, 0), (0, 2), (2, 1), (3, 0), (1, 2)]


def test_berezin_top_monomial():
    s = SuperSpace(0, 1)
    top = s.var(1) * s.var(2)
    assert berezin_integrate(top, s, orientation="printed").constant_term() == Scalar.pi(-1)
    assert not berezin_integrate(s.ring.const(1), s)


def test_berezin_odd_gaussian():
    s = SuperSpace(0, 1)
    val = berezin_integrate(GaussianFunction(s, s.ring.const(1), 2), s).constant_term()
    assert val == Scalar.pi(-1) * 4


@pytest.mark.parametrize("m,n", GRID)
def test_omega_gamma(m, n):
    assert omega(m, n) == omega_closed(m, n)
    assert gamma(m, n) == gamma_closed(m, n)


def test_omega_at_m_zero():
    assert omega(2, 1) == Scalar(2)


def test_odd_moment_vanishes():
    s = SuperSpace(2, 1)
    assert gaussian_integrate_real(GaussianFunction(s, s.var(1), 2)) == Scalar(0)


def test_even_moments_against_sympy():
    s = SuperSpace(2, 0)
    for a, b in ((0, 0), (2, 0), (2, 2), (4, 2), (6, 0)):
        got = gaussian_integrate_real(GaussianFunction(s, s.var(1) ** a * s.var(2) ** b, 2))
        assert sp.simplify(to_sympy(got) - real_gauss_moment((a, b), 2)) == 0


def test_complex_moments():
    s = SuperSpace(1, 1, banks=("z", "zbar"))
    one = gaussian_integrate_complex(s, s.var(1, "z") * s.var(1, "zbar")) * gamma_closed(1, 1).inverse()
    assert one == Scalar(1)
    assert gaussian_integrate_complex(s, s.var(1, "z")) == Scalar(0)
