"""Gaussian-weighted superfunctions p * exp(-c R^2), Berezin integration and
exact real and complex super-Gaussian integrals."""
from fractions import Fraction
from math import comb, factorial, isqrt

from .scalar import Scalar, ZERO, ONE
from .superspace import SuperPoly, DiffOperator, SuperSpace

# Orientation of the real Berezin integral on the odd block.
#   "paired":  pi^{-n} prod_a d_{x_{m+a}} d_{x_{m+n+a}}  (default)
#   "printed": pi^{-n} d_{x_{m+2n}} ... d_{x_{m+1}}, rightmost applied first
REAL_ORIENTATIONS = ("paired", "printed")


def sqrt_rational(q):
    """Exact sqrt of a positive rational of the form r^2 or 2 r^2."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("sqrt of non-positive rational")
    for factor, extra in ((1, ONE), (2, Scalar.sqrt2())):
        t = q / factor
        num, den = t.numerator, t.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Scalar(Fraction(rn, rd)) * extra
    raise ValueError(f"sqrt({q}) is not representable")


def gauss_moment(b, c):
    """int_R y^b exp(-c y^2) dy as a Scalar (0 for odd b)."""
    if b % 2:
        return ZERO
    c = Fraction(c)
    k = b // 2
    dfact = 1
    for j in range(1, 2 * k, 2):
        dfact *= j
    val = Scalar(Fraction(dfact, 2 ** k) / c ** k)
    return val * Scalar.sqrtpi() / sqrt_rational(c)


def exp_series(q, max_order):
    """sum_{k <= max_order} q^k / k!."""
    out = q.ring.const(1)
    term = q.ring.const(1)
    for k in range(1, max_order + 1):
        term = (term * q).scale(Fraction(1, k))
        if not term:
            break
        out = out + term
    return out


def exp_nilpotent(q):
    """exp of a nilpotent even element, expanded until it terminates."""
    out = q.ring.const(1)
    term = q.ring.const(1)
    k = 0
    while True:
        k += 1
        term = (term * q).scale(Fraction(1, k))
        if not term:
            return out
        out = out + term
        if k > 4 * q.ring.nvars + 4:
            raise ValueError("element is not nilpotent")


def _odd_part(space, poly, bank):
    """Terms of poly built only from odd variables of the bank (others constant)."""
    lo = space.vindex(1, bank)
    keep = {}
    for mono, c in poly.terms.items():
        if any(mono[lo + i] for i in range(space.m)):
            continue
        keep[mono] = c
    return SuperPoly(poly.ring, keep)


def berezin_operator(space, bank=None, orientation="paired"):
    """The Berezin integral over the odd variables of `bank`, without pi^{-n}."""
    m, n = space.m, space.n
    ring = space.ring
    op = DiffOperator.identity(ring)
    if orientation == "printed":
        for i in range(m + 2 * n, m, -1):
            op = op.compose(space.partial(i, bank))
    elif orientation == "paired":
        for a in range(1, n + 1):
            op = op.compose(space.partial(m + a, bank)).compose(space.partial(m + n + a, bank))
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    return op


def berezin_integrate(f, space, bank=None, orientation="paired"):
    """Berezin integral of a SuperPoly or GaussianFunction over the odd part of a bank."""
    if isinstance(f, GaussianFunction):
        odd_weight = exp_nilpotent(_odd_part(space, space.R2(bank), bank).scale(-f.c))
        f = odd_weight * f.poly
    val = berezin_operator(space, bank, orientation).apply(f)
    return val.scale(Scalar.pi(-space.n))


def integrate_real(space, poly, c, bank=None, source=None, orientation="paired"):
    """int_{R^{m|2n}} exp(sum_i s_i x_i) exp(-c R_x^2) poly dx.

    `source` maps 1-based index i to a SuperPoly s_i (in other banks, of parity |i|).
    Returns (poly_result, shift) where shift = sum_{i<=m} s_i^2 / (4c) is the
    even exponent produced by completing the square (the full answer is
    exp(shift) * poly_result).
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("divergent integral: Gaussian weight must be positive")
    ring = space.ring
    m, n = space.m, space.n
    source = source or {}
    # odd factors are finite polynomials
    integrand = poly
    odd_r2 = _odd_part(space, space.R2(bank), bank)
    if n:
        integrand = exp_nilpotent(odd_r2.scale(-c)) * integrand
        lin = ring.zero()
        for i in range(m + 1, m + 2 * n + 1):
            if i in source:
                lin = lin + source[i] * space.var(i, bank)
        if lin:
            integrand = exp_nilpotent(lin) * integrand
    # even variables: shift x -> y + s/(2c)
    lo = space.vindex(1, bank)
    shift = ring.zero()
    half = {}
    for i in range(1, m + 1):
        s = source.get(i)
        if s is not None and s:
            shift = shift + (s * s).scale(Fraction(1, 4) / c)
            half[i] = s.scale(Fraction(1, 2) / c)
    moment_cache = {}

    def even_factor(i, a):
        key = (i, a)
        if key in moment_cache:
            return moment_cache[key]
        s = half.get(i)
        out = ring.zero()
        for b in range(0, a + 1, 2):
            mu = gauss_moment(b, c)
            if s is None:
                if b == a:
                    out = out + ring.const(mu)
            else:
                out = out + (s ** (a - b)).scale(mu * comb(a, b))
        moment_cache[key] = out
        return out

    reduced = ring.zero()
    for mono, coef in integrand.terms.items():
        rest = list(mono)
        factor = ring.const(coef)
        for i in range(1, m + 1):
            a = mono[lo + i - 1]
            rest[lo + i - 1] = 0
            factor = factor * even_factor(i, a)
            if not factor:
                break
        if not factor:
            continue
        reduced = reduced + factor * SuperPoly(ring, {tuple(rest): ONE})
    if m and not half:
        pass
    out = berezin_operator(space, bank, orientation).apply(reduced).scale(Scalar.pi(-n))
    return out, shift


def gaussian_integrate_real(g, orientation="paired"):
    """Exact value of int p exp(-c R^2) dx for a GaussianFunction in one bank."""
    val, _ = integrate_real(g.space, g.poly, g.c, g.bank, orientation=orientation)
    if any(any(m) for m in val.terms):
        raise ValueError("integrand depends on variables outside the integration bank")
    return val.constant_term()


def berezin_complex_operator(space, bank="z"):
    """pi^{-2n}-free part of the complex Berezin integral, printed order."""
    conj = bank + "bar"
    op = DiffOperator.identity(space.ring)
    for i in range(space.m + 2 * space.n, space.m, -1):
        op = op.compose(space.partial(i, conj)).compose(space.partial(i, bank))
    return op


def integrate_complex(space, poly, bank="z"):
    """int_{C^{m|2n}} exp(-||z||^2) poly dz where poly lives in banks z, zbar
    (and possibly parameter banks).  Even moments: pi * a! * delta_ab."""
    ring = space.ring
    m, n = space.m, space.n
    conj = bank + "bar"
    integrand = poly
    if n:
        odd_norm = ring.zero()
        for i in range(m + 1, m + 2 * n + 1):
            odd_norm = odd_norm + space.raised(i, bank) * space.var(i, conj)
        integrand = exp_nilpotent(-odd_norm) * integrand
    zlo = space.vindex(1, bank)
    wlo = space.vindex(1, conj)
    reduced = {}
    for mono, coef in integrand.terms.items():
        val = coef
        for i in range(m):
            a, b = mono[zlo + i], mono[wlo + i]
            if a != b:
                val = None
                break
            val = val * Scalar.pi() * factorial(a)
        if val is None:
            continue
        rest = list(mono)
        for i in range(m):
            rest[zlo + i] = 0
            rest[wlo + i] = 0
        rest = tuple(rest)
        prev = reduced.get(rest)
        nv = val if prev is None else prev + val
        if nv:
            reduced[rest] = nv
        elif prev is not None:
            del reduced[rest]
    red = SuperPoly(ring, reduced)
    return berezin_complex_operator(space, bank).apply(red).scale(Scalar.pi(-2 * n))


def gaussian_integrate_complex(space, poly, bank="z"):
    val = integrate_complex(space, poly, bank)
    if any(any(m) for m in val.terms):
        raise ValueError("integrand depends on variables outside the integration banks")
    return val.constant_term()


def omega(m, n, orientation="paired"):
    """omega = int exp(-2 R^2) dx computed by the integration engine."""
    S = SuperSpace(m, n)
    return gaussian_integrate_real(GaussianFunction(S, S.ring.const(1), 2), orientation)


def gamma(m, n):
    """gamma = int exp(-||z||^2) dz computed by the integration engine."""
    S = SuperSpace(m, n, banks=("z", "zbar"))
    return gaussian_integrate_complex(S, S.ring.const(1), "z")


def omega_closed(m, n):
    """2^n (pi/2)^{M/2}."""
    M = m - 2 * n
    return Scalar(2) ** n * Scalar.sqrtpi(M) * Scalar.two_pow_half(-M)


def gamma_closed(m, n):
    return Scalar.sqrtpi(2 * (m - 2 * n))


class GaussianFunction:
    """poly(x) * exp(-c R_x^2) on one bank of a SuperSpace."""

    __slots__ = ("space", "poly", "c", "bank")

    def __init__(self, space, poly, c, bank=None):
        self.space = space
        self.poly = poly
        self.c = Fraction(c)
        self.bank = space.banks[0] if bank is None else bank
        if self.c < 0:
            raise ValueError("weight must be non-negative")

    def _same(self, other):
        if not isinstance(other, GaussianFunction):
            raise TypeError("expected a GaussianFunction")
        if other.space is not self.space or other.c != self.c or other.bank != self.bank:
            raise ValueError("weights or spaces differ")

    def __add__(self, other):
        self._same(other)
        return GaussianFunction(self.space, self.poly + other.poly, self.c, self.bank)

    def __sub__(self, other):
        self._same(other)
        return GaussianFunction(self.space, self.poly - other.poly, self.c, self.bank)

    def __neg__(self):
        return GaussianFunction(self.space, -self.poly, self.c, self.bank)

    def scale(self, s):
        return GaussianFunction(self.space, self.poly.scale(s), self.c, self.bank)

    def times_poly(self, p):
        return GaussianFunction(self.space, p * self.poly, self.c, self.bank)

    def times(self, other):
        return GaussianFunction(self.space, self.poly * other.poly, self.c + other.c, self.bank)

    def __eq__(self, other):
        if not isinstance(other, GaussianFunction):
            return NotImplemented
        if self.space is not other.space or self.bank != other.bank:
            return False
        if not self.poly and not other.poly:
            return True
        return self.c == other.c and self.poly == other.poly

    def is_zero(self):
        return self.poly.is_zero()

    def partial(self, v):
        """Left derivative wrt ring variable index v: d(qE) = (d q - c (d R^2) q) E."""
        q = self.poly.derive(v)
        if self.c:
            dr = self.space.R2(self.bank).derive(v)
            q = q - (dr * self.poly).scale(self.c)
        return GaussianFunction(self.space, q, self.c, self.bank)

    def apply(self, op):
        """Apply a DiffOperator; weight unchanged."""
        ring = self.space.ring
        out = ring.zero()
        by_d = {}
        for (a, d), c in op.terms.items():
            by_d.setdefault(d, []).append((a, c))
        for d, mults in by_d.items():
            g = self
            letters = [k for k, e in enumerate(d) for _ in range(e)]
            for v in reversed(letters):
                g = g.partial(v)
                if not g.poly:
                    break
            if not g.poly:
                continue
            mult = SuperPoly(ring, {a: c for a, c in mults})
            out = out + mult * g.poly
        return GaussianFunction(self.space, out, self.c, self.bank)

    def conj(self):
        return GaussianFunction(self.space, self.poly.conj_coeffs(), self.c, self.bank)

    def integrate(self, orientation="paired"):
        return gaussian_integrate_real(self, orientation)

    def render(self):
        if self.c == 0:
            return self.poly.render()
        return f"({self.poly.render()}) * exp(-{self.c}*R^2)"

    __str__ = render

    def __repr__(self):
        return f"GaussianFunction({self.render()})"
