"""Independent reference computations (sympy and brute force) used to derive
frozen values in the unit tests."""
from itertools import combinations_with_replacement, product

import sympy as sp


def classical_hermite(k):
    x = sp.Symbol("x")
    return sp.Poly(sp.hermite(k, x), x).all_coeffs()[::-1]


def real_gauss_moment(powers, c):
    """int_{R^m} prod x_i^{a_i} exp(-c |x|^2) dx, by sympy."""
    out = sp.Integer(1)
    x = sp.Symbol("x", real=True)
    for a in powers:
        out *= sp.integrate(x ** a * sp.exp(-sp.Rational(c) * x ** 2), (x, -sp.oo, sp.oo))
    return sp.simplify(out)


def fourier_1d(f_expr, sign=1):
    """(1/sqrt(2 pi)) int exp(sign * i x l) f(l) dl for a Gaussian-class f in l."""
    l, x = sp.symbols("l x", real=True)
    val = sp.integrate(sp.exp(sign * sp.I * x * l) * f_expr(l), (l, -sp.oo, sp.oo))
    return sp.simplify(val / sp.sqrt(2 * sp.pi)), x


def count_monomials(m, n, k):
    """dim P_k(K^{m|2n}) by listing exponent vectors."""
    total = 0
    for odd in product((0, 1), repeat=2 * n):
        rest = k - sum(odd)
        if rest < 0:
            continue
        if m == 0:
            total += rest == 0
        else:
            total += sum(1 for _ in combinations_with_replacement(range(m), rest))
    return total


def to_sympy(s):
    """Exact sympy value of an artifact Scalar."""
    out = sp.Integer(0)
    for (k, r2), (a, b) in s.terms.items():
        t = sp.Rational(a.numerator, a.denominator) + sp.I * sp.Rational(b.numerator, b.denominator)
        if r2:
            t *= sp.sqrt(2)
        out += t * sp.sqrt(sp.pi) ** k
    return out
