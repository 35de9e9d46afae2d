"""Exact scalars in Q(i, sqrt2) with a formal, invertible sqrt(pi).

A Scalar is stored as a map (k, s) -> (re, im) meaning
sum (re + im*i) * sqrt2**s * sqrtpi**k with s in {0, 1}.
"""
import re
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


class Scalar:
    __slots__ = ("terms", "_hash")

    def __init__(self, value=0, im=0):
        if isinstance(value, Scalar):
            self.terms = value.terms
        else:
            re_ = _frac(value)
            im_ = _frac(im)
            self.terms = {(0, 0): (re_, im_)} if (re_ or im_) else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        out = cls.__new__(cls)
        out.terms = terms
        out._hash = None
        return out

    @classmethod
    def i(cls):
        return cls(0, 1)

    @classmethod
    def sqrt2(cls):
        return cls._raw({(0, 1): (_ONE, _ZERO)})

    @classmethod
    def sqrtpi(cls, k=1):
        """(sqrt pi)**k for any integer k."""
        return cls._raw({(k, 0): (_ONE, _ZERO)})

    @classmethod
    def pi(cls, k=1):
        return cls.sqrtpi(2 * k)

    @classmethod
    def two_pow_half(cls, k):
        """(sqrt 2)**k for any integer k."""
        q, r = divmod(k, 2)
        c = Fraction(2) ** q
        return cls._raw({(0, r): (c, _ZERO)})

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_rational(self):
        t = self.terms
        if not t:
            return True
        return len(t) == 1 and (0, 0) in t and t[(0, 0)][1] == 0

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.terms[(0, 0)][0] if self.terms else _ZERO

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return NotImplemented

    def __add__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for key, (a, b) in other.terms.items():
            if key in out:
                c, d = out[key]
                c += a
                d += b
                if c or d:
                    out[key] = (c, d)
                else:
                    del out[key]
            else:
                out[key] = (a, b)
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({k: (-a, -b) for k, (a, b) in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            if other == 1:
                return self
            return Scalar._raw({k: (a * other, b * other) for k, (a, b) in self.terms.items()})
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ZERO
        out = {}
        for (k1, s1), (a1, b1) in self.terms.items():
            for (k2, s2), (a2, b2) in other.terms.items():
                re_ = a1 * a2 - b1 * b2
                im_ = a1 * b2 + b1 * a2
                s = s1 + s2
                if s == 2:
                    re_ *= 2
                    im_ *= 2
                    s = 0
                key = (k1 + k2, s)
                if key in out:
                    c, d = out[key]
                    c += re_
                    d += im_
                    if c or d:
                        out[key] = (c, d)
                    else:
                        del out[key]
                elif re_ or im_:
                    out[key] = (re_, im_)
        return Scalar._raw(out)

    __rmul__ = __mul__

    def inverse(self):
        t = self.terms
        if not t:
            raise ZeroDivisionError("Scalar division by zero")
        powers = {k for k, _ in t}
        if len(powers) != 1:
            raise ValueError(f"{self} is not a unit: it mixes several powers of sqrt(pi)")
        (k,) = powers
        a = t.get((k, 0), (_ZERO, _ZERO))
        b = t.get((k, 1), (_ZERO, _ZERO))
        # (a + b sqrt2)^-1 = (a - b sqrt2) / (a^2 - 2 b^2), all in Q(i)
        a2 = _gmul(a, a)
        b2 = _gmul(b, b)
        norm = (a2[0] - 2 * b2[0], a2[1] - 2 * b2[1])
        ninv = _ginv(norm)
        out = {}
        x = _gmul(a, ninv)
        if x[0] or x[1]:
            out[(-k, 0)] = x
        y = _gmul(b, ninv)
        if y[0] or y[1]:
            out[(-k, 1)] = (-y[0], -y[1])
        return Scalar._raw(out)

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self):
        return Scalar._raw({k: (a, -b) for k, (a, b) in self.terms.items()})

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- rendering ----------------------------------------------------------

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for (k, s) in sorted(self.terms):
            a, b = self.terms[(k, s)]
            txt = f"(({_rfrac(a)}) + ({_rfrac(b)})i)"
            if s:
                txt += " * sqrt2"
            if k:
                txt += f" * pi^({k}/2)"
            parts.append(txt)
        return " + ".join(parts)

    def __str__(self):
        return self.short()

    def __repr__(self):
        return f"Scalar({self.render()!r})"

    def short(self):
        """Compact human-readable form, e.g. 3/2, -i, (1+i)*sqrt2*pi^(-1/2)."""
        if not self.terms:
            return "0"
        parts = []
        for (k, s) in sorted(self.terms):
            a, b = self.terms[(k, s)]
            if b == 0:
                c = str(a)
            elif a == 0:
                c = "i" if b == 1 else "-i" if b == -1 else f"{b}i"
            else:
                c = f"({a}{'+' if b > 0 else '-'}{abs(b) if abs(b) != 1 else ''}i)"
            extra = []
            if s:
                extra.append("sqrt2")
            if k:
                extra.append(f"pi^({k}/2)" if k % 2 else f"pi^{k // 2}" if k != 2 else "pi")
            if extra:
                if c == "1":
                    c = "*".join(extra)
                elif c == "-1":
                    c = "-" + "*".join(extra)
                else:
                    c = "*".join([c] + extra)
            parts.append(c)
        return " + ".join(parts)

    def approx(self):
        """Floating-point diagnostic value; never used for decisions."""
        import math
        total = 0j
        for (k, s), (a, b) in self.terms.items():
            total += complex(float(a), float(b)) * (math.sqrt(2) ** s) * (math.sqrt(math.pi) ** k)
        return total


def _rfrac(x):
    if x.denominator == 1:
        return f"{x.numerator}/1"
    return f"{x.numerator}/{x.denominator}"


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _ginv(x):
    d = x[0] * x[0] + x[1] * x[1]
    if not d:
        raise ZeroDivisionError("Scalar division by zero")
    return (x[0] / d, -x[1] / d)


_TERM = re.compile(
    r"\(\(\s*(-?\d+)\s*/\s*(\d+)\s*\)\s*\+\s*\(\s*(-?\d+)\s*/\s*(\d+)\s*\)i\)"
    r"(\s*\*\s*sqrt2)?"
    r"(?:\s*\*\s*pi\^\(\s*(-?\d+)\s*/\s*2\s*\))?"
)


def parse_scalar(text):
    """Inverse of Scalar.render."""
    text = text.strip()
    if text == "0":
        return ZERO
    out = ZERO
    pos = 0
    first = True
    while pos < len(text):
        if not first:
            m = re.compile(r"\s*\+\s*").match(text, pos)
            if not m:
                raise ValueError(f"bad scalar text at {pos}: {text!r}")
            pos = m.end()
        m = _TERM.match(text, pos)
        if not m:
            raise ValueError(f"bad scalar text at {pos}: {text!r}")
        re_ = Fraction(int(m.group(1)), int(m.group(2)))
        im_ = Fraction(int(m.group(3)), int(m.group(4)))
        term = Scalar(re_, im_)
        if m.group(5):
            term = term * Scalar.sqrt2()
        if m.group(6):
            term = term * Scalar.sqrtpi(int(m.group(6)))
        out = out + term
        pos = m.end()
        first = False
    return out


def scalar_arith(a, b, mode):
    a = Scalar.coerce(a)
    if mode == "conj":
        return a.conj()
    b = Scalar.coerce(b)
    if mode == "add":
        return a + b
    if mode == "sub":
        return a - b
    if mode == "mul":
        return a * b
    if mode == "div":
        return a / b
    raise ValueError(f"unknown mode {mode!r}")


def scalar_is_zero(a):
    return Scalar.coerce(a).is_zero()


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)
HALF = Scalar(Fraction(1, 2))
