"""Supercommutative polynomials, super-derivatives and normal-ordered
differential operators over named variable banks."""
import ast
import re
from fractions import Fraction

from .scalar import Scalar, ZERO, ONE


class PolyRing:
    """Free supercommutative algebra on a fixed ordered list of variables.

    Monomials are dense exponent tuples; odd exponents are 0 or 1.
    """

    def __init__(self, names, parities):
        if len(names) != len(parities):
            raise ValueError("names and parities differ in length")
        self.names = tuple(names)
        self.parities = tuple(int(p) & 1 for p in parities)
        self.nvars = len(self.names)
        self.index = {name: k for k, name in enumerate(self.names)}
        self.odd = tuple(k for k, p in enumerate(self.parities) if p)
        self.one = (0,) * self.nvars
        self._mulcache = {}
        self._dcache = {}

    def mono_parity(self, mono):
        return sum(mono[k] for k in self.odd) & 1

    def mono_mul(self, a, b):
        """Return (sign, a*b) with sign 0 when an odd variable repeats."""
        key = (a, b)
        hit = self._mulcache.get(key)
        if hit is not None:
            return hit
        sign = 1
        inversions = 0
        odd_b_before = 0
        # count pairs (x in a, y in b) of odd letters with x > y
        for k in self.odd:
            if a[k] and b[k]:
                self._mulcache[key] = (0, None)
                return (0, None)
            if a[k]:
                inversions += odd_b_before
            if b[k]:
                odd_b_before += 1
        if inversions & 1:
            sign = -1
        out = tuple(x + y for x, y in zip(a, b))
        self._mulcache[key] = (sign, out)
        return (sign, out)

    def mono_derive(self, mono, v):
        """Left derivative d/dvar_v of a monomial: (coefficient, monomial) or None."""
        key = (mono, v)
        if key in self._dcache:
            return self._dcache[key]
        e = mono[v]
        if not e:
            self._dcache[key] = None
            return None
        if self.parities[v]:
            before = sum(mono[k] for k in self.odd if k < v)
            coef = -1 if before & 1 else 1
        else:
            coef = e
        new = mono[:v] + (e - 1,) + mono[v + 1:]
        self._dcache[key] = (coef, new)
        return (coef, new)

    def mono_str(self, mono):
        parts = []
        for k, e in enumerate(mono):
            if e == 1:
                parts.append(self.names[k])
            elif e > 1:
                parts.append(f"{self.names[k]}^{e}")
        return "*".join(parts)

    def var(self, name_or_index):
        k = name_or_index if isinstance(name_or_index, int) else self.index[name_or_index]
        mono = tuple(1 if j == k else 0 for j in range(self.nvars))
        return SuperPoly(self, {mono: ONE})

    def const(self, c):
        c = Scalar.coerce(c)
        return SuperPoly(self, {self.one: c} if c else {})

    def zero(self):
        return SuperPoly(self, {})

    def monomials(self, degree):
        """All monomials of total degree `degree`, in canonical order."""
        out = []

        def rec(k, left, acc):
            if k == self.nvars:
                if left == 0:
                    out.append(tuple(acc))
                return
            top = min(left, 1) if self.parities[k] else left
            for e in range(top, -1, -1):
                acc.append(e)
                rec(k + 1, left - e, acc)
                acc.pop()

        rec(0, degree, [])
        return out


class SuperPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        if terms and not all(terms.values()):
            terms = {k: v for k, v in terms.items() if v}
        self.terms = terms if terms is not None else {}

    # -- construction helpers -----------------------------------------------

    def _check(self, other):
        if self.ring is not other.ring:
            raise ValueError("polynomials live in different rings")

    def copy(self):
        return SuperPoly(self.ring, dict(self.terms))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SuperPoly):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return SuperPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SuperPoly):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Scalar.coerce(c)
        if not c:
            return SuperPoly(self.ring, {})
        return SuperPoly(self.ring, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SuperPoly):
            return self.scale(other)
        self._check(other)
        ring = self.ring
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = ring.mono_mul(m1, m2)
                if not sign:
                    continue
                c = c1 * c2
                if sign < 0:
                    c = -c
                v = out.get(m)
                if v is None:
                    out[m] = c
                else:
                    v = v + c
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return SuperPoly(ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e):
        out = self.ring.const(1)
        for _ in range(e):
            out = out * self
        return out

    def conj_coeffs(self):
        return SuperPoly(self.ring, {m: c.conj() for m, c in self.terms.items()})

    # -- calculus -------------------------------------------------------------

    def derive(self, v):
        """Left super-derivative with respect to variable index or name v."""
        ring = self.ring
        if not isinstance(v, int):
            v = ring.index[v]
        out = {}
        for m, c in self.terms.items():
            hit = ring.mono_derive(m, v)
            if hit is None:
                continue
            coef, nm = hit
            val = c * coef
            prev = out.get(nm)
            if prev is None:
                out[nm] = val
            else:
                val = prev + val
                if val:
                    out[nm] = val
                else:
                    del out[nm]
        return SuperPoly(ring, out)

    # -- inspection -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SuperPoly):
            return self.ring is other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def parity(self):
        """0 or 1 for homogeneous polynomials, None otherwise (0 for zero)."""
        ps = {self.ring.mono_parity(m) for m in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def parity_parts(self):
        even, odd = {}, {}
        for m, c in self.terms.items():
            (odd if self.ring.mono_parity(m) else even)[m] = c
        return SuperPoly(self.ring, even), SuperPoly(self.ring, odd)

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def homogeneous_part(self, k):
        return SuperPoly(self.ring, {m: c for m, c in self.terms.items() if sum(m) == k})

    def constant_term(self):
        return self.terms.get(self.ring.one, ZERO)

    def coefficient(self, mono):
        return self.terms.get(mono, ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            ms = self.ring.mono_str(m)
            cs = c.short()
            if not ms:
                parts.append(cs if " + " not in cs else f"({cs})")
            elif cs == "1":
                parts.append(ms)
            elif cs == "-1":
                parts.append("-" + ms)
            else:
                if " + " in cs or (cs.count("-") and not cs.startswith("-")):
                    cs = f"({cs})"
                parts.append(f"{cs}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"SuperPoly({self.render()})"

    __str__ = render

    def substitute(self, images, target_ring):
        """Algebra map sending variable k to images[k] (a SuperPoly in target_ring).

        Images must have the same parity as the variables they replace.
        """
        out = target_ring.zero()
        cache = {}
        for m, c in self.terms.items():
            term = target_ring.const(c)
            for k, e in enumerate(m):
                if e:
                    key = (k, e)
                    if key not in cache:
                        cache[key] = images[k] ** e
                    term = term * cache[key]
            out = out + term
        return out


class DiffOperator:
    """Finite sum of (multiplier monomial, derivative monomial) -> Scalar,
    with every multiplier to the left of every derivative."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        self.terms = terms if terms is not None else {}

    @classmethod
    def identity(cls, ring, c=1):
        c = Scalar.coerce(c)
        return cls(ring, {(ring.one, ring.one): c} if c else {})

    @classmethod
    def multiplier(cls, poly):
        ring = poly.ring
        return cls(ring, {(m, ring.one): c for m, c in poly.terms.items()})

    @classmethod
    def partial(cls, ring, v):
        if not isinstance(v, int):
            v = ring.index[v]
        d = tuple(1 if j == v else 0 for j in range(ring.nvars))
        return cls(ring, {(ring.one, d): ONE})

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    def _check(self, other):
        if self.ring is not other.ring:
            raise ValueError("operators act on different rings")

    # -- linear structure -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, DiffOperator):
            other = DiffOperator.identity(self.ring, other)
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return DiffOperator(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffOperator):
            other = DiffOperator.identity(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Scalar.coerce(c)
        if not c:
            return DiffOperator(self.ring, {})
        return DiffOperator(self.ring, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiffOperator):
            return self.compose(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    # -- structure ------------------------------------------------------------

    def parity(self):
        ring = self.ring
        ps = {(ring.mono_parity(a) + ring.mono_parity(d)) & 1 for a, d in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def parity_parts(self):
        ring = self.ring
        even, odd = {}, {}
        for (a, d), c in self.terms.items():
            p = (ring.mono_parity(a) + ring.mono_parity(d)) & 1
            (odd if p else even)[(a, d)] = c
        return DiffOperator(ring, even), DiffOperator(ring, odd)

    def order(self):
        return max((sum(d) for _, d in self.terms), default=-1)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, DiffOperator):
            return self.ring is other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == DiffOperator.identity(self.ring, other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- application and composition ------------------------------------------

    def apply(self, poly):
        """Apply to a SuperPoly; derivative words act right-to-left."""
        if self.ring is not poly.ring:
            raise ValueError("operator and polynomial live in different rings")
        ring = self.ring
        out = {}
        by_d = {}
        for (a, d), c in self.terms.items():
            by_d.setdefault(d, []).append((a, c))
        for d, mults in by_d.items():
            q = _apply_dword(ring, d, poly.terms)
            if not q:
                continue
            for a, c in mults:
                for m, v in q.items():
                    sign, nm = ring.mono_mul(a, m)
                    if not sign:
                        continue
                    val = c * v
                    if sign < 0:
                        val = -val
                    prev = out.get(nm)
                    if prev is None:
                        out[nm] = val
                    else:
                        val = prev + val
                        if val:
                            out[nm] = val
                        else:
                            del out[nm]
        return SuperPoly(ring, out)

    __call__ = apply

    def compose(self, other):
        """self o other, normal ordered."""
        self._check(other)
        ring = self.ring
        out = {}
        # group self terms by derivative word
        by_d = {}
        for (a, d), c in self.terms.items():
            by_d.setdefault(d, []).append((a, c))
        for d, mults in by_d.items():
            moved = _commute_dword(ring, d, other.terms)
            for a, c in mults:
                for (b, e), v in moved.items():
                    sign, nb = ring.mono_mul(a, b)
                    if not sign:
                        continue
                    val = c * v
                    if sign < 0:
                        val = -val
                    key = (nb, e)
                    prev = out.get(key)
                    if prev is None:
                        out[key] = val
                    else:
                        val = prev + val
                        if val:
                            out[key] = val
                        else:
                            del out[key]
        return DiffOperator(ring, out)

    def render(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for (a, d), c in sorted(self.terms.items(), key=lambda t: (sum(t[0][1]), sum(t[0][0]), t[0][1], t[0][0]), reverse=False):
            word = []
            ms = ring.mono_str(a)
            if ms:
                word.append(ms)
            for k, e in enumerate(d):
                if e:
                    nm = "D" + ring.names[k]
                    word.append(nm if e == 1 else f"{nm}^{e}")
            cs = c.short()
            if not word:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(word))
            elif cs == "-1":
                parts.append("-" + "*".join(word))
            else:
                if " + " in cs:
                    cs = f"({cs})"
                parts.append(cs + "*" + "*".join(word))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"DiffOperator({self.render()})"

    __str__ = render


def _accumulate(out, terms, factor=None):
    for k, c in terms.items():
        if factor is not None:
            c = c * factor
        prev = out.get(k)
        if prev is None:
            if c:
                out[k] = c
        else:
            c = prev + c
            if c:
                out[k] = c
            else:
                del out[k]


def _letters(d):
    """Derivative word as a list of variable indices, leftmost first."""
    out = []
    for k, e in enumerate(d):
        out.extend([k] * e)
    return out


def _apply_dword(ring, d, terms):
    if not any(d):
        return terms
    cur = terms
    for v in reversed(_letters(d)):
        nxt = {}
        for m, c in cur.items():
            hit = ring.mono_derive(m, v)
            if hit is None:
                continue
            coef, nm = hit
            val = c * coef
            prev = nxt.get(nm)
            if prev is None:
                nxt[nm] = val
            else:
                val = prev + val
                if val:
                    nxt[nm] = val
                else:
                    del nxt[nm]
        cur = nxt
        if not cur:
            break
    return cur


def _commute_dword(ring, d, terms):
    """Normal-ordered form of (derivative word d) o (operator with given terms)."""
    if not any(d):
        return terms
    cur = terms
    for v in reversed(_letters(d)):
        pv = ring.parities[v]
        unit = tuple(1 if j == v else 0 for j in range(ring.nvars))
        nxt = {}
        for (b, e), c in cur.items():
            # d_v (b D^e) = (d_v b) D^e + (-1)^{|v||b|} b d_v D^e
            hit = ring.mono_derive(b, v)
            if hit is not None:
                coef, nb = hit
                _accumulate(nxt, {(nb, e): c * coef})
            sign, ne = ring.mono_mul(unit, e)
            if sign:
                if pv and ring.mono_parity(b):
                    sign = -sign
                _accumulate(nxt, {(b, ne): c if sign > 0 else -c})
        cur = nxt
    return cur


def bracket(a, b):
    """Super-commutator a o b - (-1)^{|a||b|} b o a, bilinear in parity parts."""
    out = DiffOperator.zero(a.ring)
    for pa, ap in enumerate(a.parity_parts()):
        if not ap:
            continue
        for pb, bp in enumerate(b.parity_parts()):
            if not bp:
                continue
            t = ap.compose(bp)
            s = bp.compose(ap)
            out = out + (t + s if (pa and pb) else t - s)
    return out


def op_algebra(a, b, mode):
    if mode == "compose":
        return a.compose(b)
    if mode == "bracket":
        return bracket(a, b)
    if mode == "equal":
        return a == b
    raise ValueError(f"unknown mode {mode!r}")


def poly_mul(p, q):
    return p * q


def derive(p, i, lowered=False, space=None, bank=None):
    """Left super-derivative with respect to variable i (1-based in a SuperSpace bank).

    With lowered=True, applies d_i = sum_j beta_ij d/dl_j.
    """
    if space is None:
        if lowered:
            raise ValueError("lowered derivatives need a SuperSpace")
        return p.derive(i)
    return space.d(i, bank=bank, lowered=lowered).apply(p)


class SuperSpace:
    """K^{m|2n} with the fixed metric beta and any number of variable banks.

    Bank variables are named f"{bank}{i}" for i = 1..m+2n.  A bank listed in
    `grassmann` has flipped parities.
    """

    def __init__(self, m, n, banks=("x",), grassmann=()):
        if m < 0 or n < 0:
            raise ValueError("m and n must be non-negative")
        self.m = m
        self.n = n
        self.M = m - 2 * n
        self.dim = m + 2 * n
        self.banks = tuple(banks)
        self.grassmann = frozenset(grassmann)
        self.beta = metric_beta(m, n)
        self.beta_inv = metric_beta_inv(m, n)
        names, pars = [], []
        for bank in self.banks:
            flip = 1 if bank in self.grassmann else 0
            for i in range(1, self.dim + 1):
                names.append(f"{bank}{i}")
                pars.append(self.p(i) ^ flip)
        self.ring = PolyRing(names, pars)
        self._dcache = {}

    def p(self, i):
        """Parity |i| of the 1-based index i in the standard assignment."""
        return 0 if i <= self.m else 1

    def bank_parity(self, bank, i):
        return self.p(i) ^ (1 if bank in self.grassmann else 0)

    def _bank(self, bank):
        if bank is None:
            return self.banks[0]
        if bank not in self.banks:
            raise ValueError(f"unknown bank {bank!r}")
        return bank

    def vindex(self, i, bank=None):
        bank = self._bank(bank)
        return self.banks.index(bank) * self.dim + (i - 1)

    def var(self, i, bank=None):
        return self.ring.var(self.vindex(i, bank))

    def raised(self, i, bank=None):
        """l^i = sum_j l_j beta^{ji}."""
        out = self.ring.zero()
        for j in range(1, self.dim + 1):
            c = self.beta_inv[j - 1][i - 1]
            if c:
                out = out + self.var(j, bank).scale(c)
        return out

    def partial(self, i, bank=None):
        return DiffOperator.partial(self.ring, self.vindex(i, bank))

    def d(self, i, bank=None, lowered=True):
        """Lowered derivative d_i = sum_j beta_ij d/dl_j (or the plain one)."""
        key = (i, bank, lowered)
        if key in self._dcache:
            return self._dcache[key]
        if not lowered:
            out = self.partial(i, bank)
        else:
            out = DiffOperator.zero(self.ring)
            for j in range(1, self.dim + 1):
                c = self.beta[i - 1][j - 1]
                if c:
                    out = out + self.partial(j, bank).scale(c)
        self._dcache[key] = out
        return out

    def R2(self, bank=None):
        out = self.ring.zero()
        for i in range(1, self.dim + 1):
            for j in range(1, self.dim + 1):
                c = self.beta_inv[i - 1][j - 1]
                if c:
                    out = out + (self.var(i, bank) * self.var(j, bank)).scale(c)
        return out

    def Delta(self, bank=None):
        out = DiffOperator.zero(self.ring)
        for i in range(1, self.dim + 1):
            for j in range(1, self.dim + 1):
                c = self.beta_inv[i - 1][j - 1]
                if c:
                    out = out + self.d(i, bank).compose(self.d(j, bank)).scale(c)
        return out

    def Euler(self, bank=None):
        out = DiffOperator.zero(self.ring)
        for i in range(1, self.dim + 1):
            out = out + DiffOperator.multiplier(self.var(i, bank)).compose(self.partial(i, bank))
        return out

    def L(self, i, j, bank=None):
        """L_ij = l_i d_j - (-1)^{|i||j|} l_j d_i."""
        a = DiffOperator.multiplier(self.var(i, bank)).compose(self.d(j, bank))
        b = DiffOperator.multiplier(self.var(j, bank)).compose(self.d(i, bank))
        sign = -1 if self.p(i) * self.p(j) else 1
        return a - b.scale(sign)

    def trace_product(self, bank_a, bank_b):
        """z . w = sum_i z^i w_i."""
        out = self.ring.zero()
        for i in range(1, self.dim + 1):
            out = out + self.raised(i, bank_a) * self.var(i, bank_b)
        return out

    def norm2(self, bank=None):
        """||z||^2 = z . zbar, using the bank named bank + 'bar'."""
        bank = self._bank(bank)
        return self.trace_product(bank, bank + "bar")

    def monomials(self, degree, bank=None):
        """Monomials of one bank as SuperPolys, canonical order."""
        bank = self._bank(bank)
        base = self.banks.index(bank) * self.dim
        sub = PolyRing(self.ring.names[base:base + self.dim], self.ring.parities[base:base + self.dim])
        out = []
        for mono in sub.monomials(degree):
            full = [0] * self.ring.nvars
            full[base:base + self.dim] = mono
            out.append(SuperPoly(self.ring, {tuple(full): ONE}))
        return out

    def rename(self, poly, src, dst):
        """Copy a polynomial from bank src to bank dst (same ring)."""
        a = self.banks.index(src) * self.dim
        b = self.banks.index(dst) * self.dim
        out = {}
        for mono, c in poly.terms.items():
            if any(mono[k] for k in range(self.ring.nvars) if not (a <= k < a + self.dim)):
                raise ValueError("polynomial uses variables outside the source bank")
            new = [0] * self.ring.nvars
            new[b:b + self.dim] = mono[a:a + self.dim]
            out[tuple(new)] = c
        return SuperPoly(self.ring, out)

    def special_operator(self, which, bank=None, i=None, j=None, bank_b=None):
        if which == "R2":
            return self.R2(bank)
        if which == "Delta":
            return self.Delta(bank)
        if which == "Euler":
            return self.Euler(bank)
        if which == "L":
            return self.L(i, j, bank)
        if which == "trace_product":
            return self.trace_product(bank, bank_b)
        if which == "norm2":
            return self.norm2(bank)
        raise ValueError(f"unknown operator {which!r}")


def metric_beta(m, n):
    """Block matrix diag(I_m, [[0, -I_n], [I_n, 0]]) with int entries."""
    d = m + 2 * n
    b = [[0] * d for _ in range(d)]
    for i in range(m):
        b[i][i] = 1
    for a in range(n):
        b[m + a][m + n + a] = -1
        b[m + n + a][m + a] = 1
    return b


def metric_beta_inv(m, n):
    d = m + 2 * n
    b = [[0] * d for _ in range(d)]
    for i in range(m):
        b[i][i] = 1
    for a in range(n):
        b[m + a][m + n + a] = 1
        b[m + n + a][m + a] = -1
    return b


# -- parsing ------------------------------------------------------------------------------

_IMAG = re.compile(r"(\d)\s*i\b")


def parse_poly(text, ring):
    """Read a polynomial in the rendered grammar: sums of coefficient*monomial
    terms, ^ for powers, `i` for the complex unit and sqrt2 for its namesake."""
    src = _IMAG.sub(r"\1*i", text.replace("^", "**"))
    try:
        tree = ast.parse(src, mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}") from exc
    return _eval_node(tree, ring)


def _eval_node(node, ring):
    if isinstance(node, ast.BinOp):
        a, b = _eval_node(node.left, ring), _eval_node(node.right, ring)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if any(any(mm) for mm in b.terms) or not b:
                raise ValueError("can only divide by a nonzero constant")
            return a.scale(b.constant_term().inverse())
        if isinstance(node.op, ast.Pow):
            if any(any(mm) for mm in b.terms):
                raise ValueError("exponent must be a constant")
            e = b.constant_term()
            if not e.is_rational() or e.to_fraction().denominator != 1 or e.to_fraction() < 0:
                raise ValueError("exponent must be a non-negative integer")
            return a ** int(e.to_fraction())
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, ring)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return ring.const(node.value)
    if isinstance(node, ast.Name):
        if node.id == "i":
            return ring.const(Scalar.i())
        if node.id == "sqrt2":
            return ring.const(Scalar.sqrt2())
        if node.id in ring.index:
            return ring.var(node.id)
        raise ValueError(f"unknown variable {node.id!r}")
    raise ValueError(f"unsupported expression: {ast.dump(node)}")
