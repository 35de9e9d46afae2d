from fractions import Fraction

from hypothesis import given, strategies as st

from artifact.scalar import Scalar, ZERO, ONE, parse_scalar


def test_gaussian_integer_norm():
    assert Scalar(1, 1) * Scalar(1, -1) == Scalar(2)


def test_sqrt2_relation():
    s = Scalar.sqrt2()
    assert s * s == Scalar(2)
    assert not (Scalar(2) - s * s)
    assert not (s - s)
    assert not ZERO


def test_laurent_cancellation():
    a = Scalar.sqrtpi(-1) * Scalar.two_pow_half(1) * 2
    b = Scalar.sqrtpi(1) * Scalar.two_pow_half(-1)
    assert a * b == Scalar(2)


def test_inverse_and_conj():
    x = Scalar(3, -4) * Scalar.sqrt2() * Scalar.pi(2)
    assert x * x.inverse() == ONE
    assert x.conj() == Scalar(3, 4) * Scalar.sqrt2() * Scalar.pi(2)


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def scalars(draw):
    out = ZERO
    for _ in range(draw(st.integers(1, 3))):
        t = Scalar(draw(fracs), draw(fracs))
        if draw(st.booleans()):
            t = t * Scalar.sqrt2()
        out = out + t * Scalar.sqrtpi(draw(st.integers(-2, 2)))
    return out


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b).conj() == a.conj() * b.conj()


@given(scalars())
def test_render_parse_round_trip(a):
    assert parse_scalar(a.render()) == a


@given(fracs, fracs)
def test_single_power_inverse(a, b):
    x = Scalar(a, b) * Scalar.sqrtpi(3)
    if a or b:
        assert x * x.inverse() == ONE
