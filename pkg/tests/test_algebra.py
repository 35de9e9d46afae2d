import pytest

from artifact.algebra import (TKK, Spo, Phi, Cayley, Heisenberg, JOSP, cayley_by_exponentials, verify_structure,
                              vsub, vscale)
from artifact.scalar import ONE, I

KINDS = ("super_jacobi", "jordan_identity", "grading", "tkk_phi", "kc_unitary_isom", "cayley",
         "heisenberg_rep_axioms")


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0)])
@pytest.mark.parametrize("which", KINDS)
def test_structure_small(which, m, n):
    rep = verify_structure(which, m, n, samples=100)
    assert rep.ok, [c.to_dict() for c in rep.failures]


def test_jacobi_random_triples_21():
    rep = verify_structure("super_jacobi", 2, 1, samples=200)
    assert rep.ok


def test_excluded_pair():
    with pytest.raises(ValueError):
        verify_structure("super_jacobi", 0, 1)


def test_heisenberg_brackets():
    h = Heisenberg(1, 1)
    Z = ("Z",)
    for a in h.basis:
        assert not h.bracket({Z: ONE}, {a: ONE})
    for a in h.basis[:-1]:
        for b in h.basis[:-1]:
            c = h.Om[a[1] - 1][b[1] - 1]
            assert h.bracket({a: ONE}, {b: ONE}) == ({Z: c} if c else {})


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0), (0, 2)])
def test_phi_sl2_triple(m, n):
    tkk, spo = TKK(m, n), Spo(m, n)
    phi = Phi(tkk, spo)
    a, h, b = spo.sl2_triple()
    assert not vsub(phi(tkk.e_minus()), a)
    assert not vsub(phi(tkk.two_L_e()), h)
    assert not vsub(phi(tkk.e_plus()), b)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 0)])
def test_cayley_two_routes(m, n):
    tkk = TKK(m, n)
    c = Cayley(tkk)
    for lab in tkk.basis:
        x = {lab: ONE}
        assert not vsub(c(x), cayley_by_exponentials(tkk, x))
        assert not vsub(c.inverse(c(x)), x)


def test_cayley_on_L():
    tkk = TKK(1, 1)
    c = Cayley(tkk)
    e = tkk.e
    img = c(tkk.L_elem(e))
    want_minus = tkk.as_minus(vscale(e, I * ONE / 4))
    want_plus = tkk.as_plus(vscale(e, -I))
    for lab, v in {**want_minus, **want_plus}.items():
        assert img.get(lab) == v
