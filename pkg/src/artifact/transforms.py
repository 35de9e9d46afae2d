"""Hermite superfunctions, the Segal-Bargmann transform and its inverse, and the
super Fourier transform on the Gaussian class."""
from fractions import Fraction
from itertools import product as iproduct

from .scalar import Scalar, ONE, I as IU
from .superspace import DiffOperator, SuperPoly, SuperSpace
from .gaussian import (GaussianFunction, integrate_complex, integrate_real, exp_nilpotent,
                       exp_series, omega_closed, gamma_closed, _odd_part)
from .bessel import MatrixVarSpace, fold, unfold
from .algebra import TKK, Spo, Phi
from .report import Report, rng_for

VARIANTS = ("h", "H", "h_tilde", "H_tilde")


def hermite_indices(m, n, max_degree):
    """All alpha in N^m x {0,1}^{2n} with |alpha| <= max_degree."""
    out = []
    for odd in iproduct((0, 1), repeat=2 * n):
        rest = max_degree - sum(odd)
        if rest < 0:
            continue
        for even in _compositions(m, rest):
            out.append(tuple(even) + odd)
    return sorted(out, key=lambda a: (sum(a), tuple(-x for x in a)))


def _compositions(m, cap):
    if m == 0:
        yield ()
        return
    for a in range(cap + 1):
        for rest in _compositions(m - 1, cap - a):
            yield (a,) + rest


def check_index(space, alpha):
    if len(alpha) != space.dim:
        raise ValueError(f"alpha needs {space.dim} entries")
    if any(a < 0 for a in alpha) or any(a > 1 for a in alpha[space.m:]):
        raise ValueError("odd slots of alpha must be 0 or 1")
    return tuple(alpha)


def d_alpha(space, alpha, bank=None):
    """d^alpha = d_1^{a_1} ... d_d^{a_d} with lowered derivatives."""
    op = DiffOperator.identity(space.ring)
    for i, a in enumerate(alpha, start=1):
        for _ in range(a):
            op = op.compose(space.d(i, bank))
    return op


def x_alpha(space, alpha, bank=None):
    out = space.ring.const(1)
    for i, a in enumerate(alpha, start=1):
        for _ in range(a):
            out = out * space.var(i, bank)
    return out


def hermite(space, alpha, variant="h"):
    """h and h_tilde come back as GaussianFunctions, H and H_tilde as polynomials."""
    alpha = check_index(space, alpha)
    k = sum(alpha)
    sign = -1 if k & 1 else 1
    if variant in ("h", "H"):
        g = GaussianFunction(space, space.ring.const(1), 1).apply(d_alpha(space, alpha))
        poly = g.poly.scale(sign)
        return GaussianFunction(space, poly, Fraction(1, 2)) if variant == "h" else poly
    if variant in ("h_tilde", "H_tilde"):
        g = GaussianFunction(space, space.ring.const(1), 2).apply(d_alpha(space, alpha))
        poly = g.poly.scale(Fraction(sign, 2 ** k))
        return GaussianFunction(space, poly, 1) if variant == "h_tilde" else poly
    raise ValueError(f"unknown Hermite variant {variant!r}")


def hermite_tilde_by_rescaling(space, alpha):
    """h_tilde(x) = sqrt2^{-|alpha|} h(sqrt2 x), computed from h."""
    h = hermite(space, alpha, "h")
    s2 = Scalar.sqrt2()
    images = [space.var(i).scale(s2) for i in range(1, space.dim + 1)]
    scaled = h.poly.substitute(images, space.ring)
    return GaussianFunction(space, scaled.scale(Scalar.two_pow_half(-sum(alpha))), 1)


def hermite_table(m, n, max_degree, variant="H"):
    space = SuperSpace(m, n, banks=("x",))
    rows = []
    for a in hermite_indices(m, n, max_degree):
        v = hermite(space, a, variant)
        rows.append((a, v.render()))
    return rows


# -- Segal-Bargmann ----------------------------------------------------------------------

def _transport(p, target, bank):
    images = [target.var(k % target.dim + 1, bank) for k in range(p.ring.nvars)]
    return p.substitute(images, target.ring)


def _extract(p, joint, bank, target):
    """Move a polynomial living only in `bank` of joint onto the single bank of target."""
    lo = joint.vindex(1, bank)
    out = {}
    for mono, c in p.terms.items():
        if any(e for k, e in enumerate(mono) if not lo <= k < lo + joint.dim):
            raise ValueError("result depends on variables outside the output bank")
        out[mono[lo:lo + joint.dim]] = c
    return SuperPoly(target.ring, out)


class SegalBargmann:
    """SB from weight-1 Gaussian functions on `xspace` to polynomials on `zspace`."""

    def __init__(self, m, n, xspace=None, zspace=None):
        self.m, self.n = m, n
        self.xspace = xspace or SuperSpace(m, n, banks=("x",))
        self.zspace = zspace or SuperSpace(m, n, banks=("z",))
        self.joint = SuperSpace(m, n, banks=("x", "z"))
        self.cjoint = SuperSpace(m, n, banks=("z", "zbar", "x"))
        self.omega = omega_closed(m, n)
        self.gamma = gamma_closed(m, n)
        self._htilde = {}

    def _check(self, f):
        if not isinstance(f, GaussianFunction) or f.space is not self.xspace:
            raise ValueError("SB takes a GaussianFunction on its own x space")
        if f.c != 1 and f.poly:
            raise ValueError(f"SB needs weight exactly 1, got {f.c}")

    def moments(self, f):
        self._check(f)
        J = self.joint
        p = _transport(f.poly, J, "x")
        source = {i: J.raised(i, "z").scale(2) for i in range(1, J.dim + 1)}
        val, shift = integrate_real(J, p, 2, "x", source)
        half_even = J.R2("z") - _odd_part(J, J.R2("z"), "z")
        if shift != half_even.scale(Fraction(1, 2)):
            raise ArithmeticError("completed square does not match exp(R^2/2)")
        val = exp_nilpotent(_odd_part(J, J.R2("z"), "z").scale(Fraction(-1, 2))) * val
        return _extract(val.scale(self.omega.inverse()), J, "z", self.zspace)

    def htilde(self, alpha):
        hit = self._htilde.get(alpha)
        if hit is None:
            hit = hermite(self.xspace, alpha, "H_tilde")
            self._htilde[alpha] = hit
        return hit

    def hermite_basis(self, f):
        """Peel off top-degree terms against H_tilde and send h_tilde_alpha to z^alpha."""
        self._check(f)
        p = f.poly
        out = self.zspace.ring.zero()
        while p:
            top = max(sum(mono) for mono in p.terms)
            mono = max((mm for mm in p.terms if sum(mm) == top), key=lambda t: t)
            alpha = mono
            H = self.htilde(alpha)
            lead = H.homogeneous_part(top)
            if len(lead.terms) != 1 or alpha not in lead.terms:
                raise ArithmeticError("H_tilde is not triangular on the monomial basis")
            c = p.terms[mono] * lead.terms[alpha].inverse()
            p = p - H.scale(c)
            out = out + x_alpha(self.zspace, alpha).scale(c)
        return out

    def __call__(self, f, method="moments"):
        if method == "moments":
            return self.moments(f)
        if method == "hermite_basis":
            return self.hermite_basis(f)
        raise ValueError(f"unknown SB method {method!r}")

    def inverse(self, p):
        """(1/gamma) exp(-R_x^2) int exp(-||z||^2) exp(-R_zbar^2/2) exp(2 zbar . x) p(z) dz."""
        C = self.cjoint
        pz = _transport(p, C, "z")
        deg = max(0, p.degree())
        quad = C.R2("zbar").scale(Fraction(-1, 2))
        lin = C.ring.zero()
        for i in range(1, C.dim + 1):
            lin = lin + C.raised(i, "zbar") * C.var(i, "x")
        kernel = _truncate(exp_series(quad, deg // 2) * exp_series(lin.scale(2), deg), C, "zbar", deg)
        val = integrate_complex(C, kernel * pz, "z")
        poly = _extract(val.scale(self.gamma.inverse()), C, "x", self.xspace)
        return GaussianFunction(self.xspace, poly, 1)


def _truncate(p, space, bank, deg):
    lo = space.vindex(1, bank)
    keep = {mm: c for mm, c in p.terms.items() if sum(mm[lo:lo + space.dim]) <= deg}
    return SuperPoly(p.ring, keep)


def segal_bargmann(f, method="moments", sb=None):
    sb = sb or SegalBargmann(f.space.m, f.space.n, xspace=f.space)
    return sb(f, method)


def inverse_segal_bargmann(p, sb):
    return sb.inverse(p)


# -- Fourier --------------------------------------------------------------------------------

class Fourier:
    """F^{+-}(f)(x) = (2^m pi^M)^{-1/2} int exp(-+i x . l) f(l) dl on one space.

    The kernel sign is the one compatible with the exchange rules
    F(d_i f) = +-i x_i F(f) and F(l_i f) = +-i d_i F(f)."""

    def __init__(self, space):
        self.space = space
        m, n = space.m, space.n
        self.joint = SuperSpace(m, n, banks=("l", "x"))
        M = m - 2 * n
        self.norm = (Scalar.two_pow_half(m) * Scalar.sqrtpi(M)).inverse()

    def __call__(self, f, sign=1):
        if f.space is not self.space:
            raise ValueError("function lives on another space")
        if f.c <= 0:
            raise ValueError("Fourier needs a positive Gaussian weight")
        J = self.joint
        # kernel exp(-+i x . l): the sign for which F(d_i f) = +-i x_i F(f)
        s = -IU if sign > 0 else IU
        source = {i: J.raised(i, "x").scale(s) for i in range(1, J.dim + 1)}
        val, shift = integrate_real(J, _transport(f.poly, J, "l"), f.c, "l", source)
        w = Fraction(1, 4) / f.c
        R2 = J.R2("x")
        odd = _odd_part(J, R2, "x")
        if shift != (R2 - odd).scale(-w):
            raise ArithmeticError("completed square does not give the dual weight")
        val = exp_nilpotent(odd.scale(w)) * val
        return GaussianFunction(self.space, _extract(val.scale(self.norm), J, "x", self.space), w)

    def plus(self, f):
        return self(f, 1)

    def minus(self, f):
        return self(f, -1)


def fourier(f, sign=1):
    return Fourier(f.space)(f, sign)


# -- the folded transform --------------------------------------------------------------------

class FoldedSB:
    """SB-hat = psi_C^{-1} o SB o psi_R on even polynomials in the matrix variables."""

    def __init__(self, m, n):
        self.sb = SegalBargmann(m, n)
        self.mspace = MatrixVarSpace(m, n)
        self.cspace = MatrixVarSpace(m, n, banks=("w",))

    def __call__(self, p):
        f = GaussianFunction(self.sb.xspace, fold(p, self.mspace, target=self.sb.xspace)[0], 1)
        return unfold(self.sb(f), self.cspace)


# -- checks ---------------------------------------------------------------------------------

def _par(p):
    return p.parity() or 0


def hermite_family(space, max_degree):
    return [(a, hermite(space, a, "h_tilde")) for a in hermite_indices(space.m, space.n, max_degree)]


def verify_transforms(m, n, report=None, degree_cap=4, samples=60, seed=0):
    from .products import FockSpace, fock, l2, bessel_fischer, SchrodingerModel
    from .reps import PiTildeU, PiTilde, PiHat, OnSpo
    rep = report if report is not None else Report()
    tag = f"[{m},{n}]"
    sb = SegalBargmann(m, n)
    xs, zs = sb.xspace, sb.zspace
    fam = hermite_family(xs, degree_cap)
    # hermite cross-route and the classical table
    bad = None
    for a, h in fam:
        if hermite_tilde_by_rescaling(xs, a) != h:
            bad = {"alpha": list(a)}
            break
    rep.record("transforms", f"hermite_rescaling{tag}", "h~_a(x) = sqrt2^{-|a|} h_a(sqrt2 x)", bad is None, bad)
    # SB on the family
    bad_one = sb(GaussianFunction(xs, xs.ring.const(1), 1)) != zs.ring.const(1)
    rep.record("transforms", f"sb_gaussian{tag}", "SB(exp(-R_x^2))(z) = 1", not bad_one,
               {"SB(exp(-R^2))": sb(GaussianFunction(xs, xs.ring.const(1), 1)).render()} if bad_one else None)
    f1 = GaussianFunction(xs, xs.var(1).scale(2), 1)
    got = sb(f1)
    rep.record("transforms", f"sb_linear{tag}", "SB(2 x_1 exp(-R^2)) = z_1", got == zs.var(1),
               {"got": got.render()})
    bad = badpipe = None
    images = {}
    for a, h in fam:
        mom = sb.moments(h)
        images[a] = mom
        if mom != x_alpha(zs, a) and bad is None:
            bad = {"alpha": list(a), "SB": mom.render()}
    rng = rng_for(seed, "sb_pipelines", m, n)
    monos = [q for d in range(degree_cap + 1) for q in xs.monomials(d)]
    for _ in range(samples // 3):
        p = xs.ring.zero()
        for _ in range(3):
            p = p + rng.choice(monos).scale(Scalar(rng.randint(-3, 3), rng.randint(-2, 2)))
        f = GaussianFunction(xs, p, 1)
        A, B = sb.moments(f), sb.hermite_basis(f)
        if A != B:
            badpipe = {"f": f.render(), "moments": A.render(), "hermite_basis": B.render()}
            break
    rep.record("transforms", f"sb_hermite_monomials{tag}", "SB(h~_a(x))(z) = z^a", bad is None, bad,
               detail={"family": len(fam)})
    rep.record("transforms", f"sb_pipelines_agree{tag}", "SB_moments = SB_hermite",
               badpipe is None, badpipe)
    # inverse
    bad = None
    for a, h in fam:
        if sum(a) > 3:
            continue
        back = sb.inverse(images[a])
        if back != h:
            bad = {"alpha": list(a), "SB^-1 SB": back.render()}
            break
        if sb(sb.inverse(x_alpha(zs, a))) != x_alpha(zs, a):
            bad = {"alpha": list(a), "direction": "SB SB^-1"}
            break
    rep.record("transforms", f"sb_inverse{tag}", "SB^{-1} o SB = id", bad is None, bad)
    # intertwining over the U-basis
    tkk, spo = TKK(m, n), Spo(m, n)
    phi = Phi(tkk, spo)
    pit = PiTildeU(m, n, space=xs, spo=spo)
    rho = OnSpo(PiTilde(m, n, twist=True, tkk=tkk, space=zs), phi)
    bad = None
    small = [(a, h) for a, h in fam if sum(a) <= min(degree_cap, 4)]
    for X in spo.basis:
        A, B = pit.basis_op(X), rho.basis_op(X)
        for a, h in small:
            if sb(h.apply(A)) != B.apply(images[a]):
                bad = {"X": str(X), "alpha": list(a)}
                break
        if bad:
            break
    rep.record("transforms", f"sb_intertwines{tag}", "SB o pi~(X) = rho~(X) o SB", bad is None, bad,
               detail={"X": len(spo.basis), "family": len(small)})
    # superunitarity and parity bookkeeping
    fs = FockSpace(m, n)
    bad = badpar = None
    pairs = [(a, b) for a in small for b in small if sum(a[0]) + sum(b[0]) <= 6]
    for (a, f), (b, g) in pairs:
        lhs = fock(fs, fs.to_z(images[a]), fs.to_z(images[b]))
        rhs = l2(f, g)
        if lhs != rhs:
            bad = {"f": list(a), "g": list(b), "fock": str(lhs), "l2": str(rhs)}
            break
        if (sum(a) + sum(b)) & 1 and lhs:
            badpar = {"f": list(a), "g": list(b)}
    rep.record("transforms", f"sb_superunitary{tag}", "<SB f, SB g> = <f, g>", bad is None, bad,
               detail={"pairs": len(pairs)})
    rep.record("transforms", f"sb_parity_orthogonal{tag}", "<SB f, SB g> = 0, |f| != |g|",
               badpar is None, badpar)
    # folded transform
    rep.extend(folded_sb_check(m, n))
    # Fourier
    rep.extend(fourier_checks(m, n, degree_cap=min(degree_cap, 3), samples=samples, seed=seed))
    return rep


def folded_sb_check(m, n, max_degree=2, report=None):
    from .products import SchrodingerModel, bessel_fischer
    rep = report if report is not None else Report()
    tag = f"[{m},{n}]"
    F = FoldedSB(m, n)
    model = SchrodingerModel(m, n)
    ms = model.mspace
    monos = [SuperPoly(ms.ring, {mm: ONE}) for d in range(max_degree + 1) for mm in ms.monomials(d)]
    imgs = []
    bad = None
    for p in monos:
        f = GaussianFunction(F.sb.xspace, fold(p, ms, target=F.sb.xspace)[0], 1)
        direct = F.sb(f)
        q = unfold(direct, F.cspace)
        if fold(q, F.cspace, target=F.sb.zspace)[0] != direct:
            bad = {"p": p.render(), "note": "psi_C o SB-hat differs from SB o psi_R"}
        imgs.append(q)
    rep.record("transforms", f"folded_sb_diagram{tag}", "SB-hat = psi_C^{-1} o SB o psi_R", bad is None, bad)
    bad = None
    for p, P in zip(monos, imgs):
        for q, Q in zip(monos, imgs):
            lhs = bessel_fischer(F.cspace, Fraction(-1, 2), P, Q)
            rhs = model.pair(p, q)
            if lhs != rhs:
                bad = {"p": p.render(), "q": q.render(), "B": str(lhs), "W": str(rhs)}
                break
        if bad:
            break
    rep.record("transforms", f"folded_sb_unitary{tag}", "superunitary isomorphisms", bad is None, bad,
               detail={"family": len(monos)})
    return rep


def fourier_checks(m, n, degree_cap=3, samples=40, seed=0, report=None):
    from .products import l2
    from .reps import PiTildeU, PiHat
    rep = report if report is not None else Report()
    tag = f"[{m},{n}]"
    xs = SuperSpace(m, n, banks=("x",))
    F = Fourier(xs)
    rng = rng_for(seed, "fourier", m, n)
    monos = [q for d in range(degree_cap + 1) for q in xs.monomials(d)]
    fam = []
    for c in (Fraction(1), Fraction(1, 2), Fraction(2)):
        for q in monos:
            fam.append(GaussianFunction(xs, q, c))
    for _ in range(samples // 4):
        q = xs.ring.zero()
        for _ in range(3):
            q = q + rng.choice(monos).scale(Scalar(rng.randint(-3, 3), rng.randint(-3, 3)))
        fam.append(GaussianFunction(xs, q if q else monos[0], rng.choice((1, 2))))
    bad = None
    for f in fam:
        for s in (1, -1):
            if F(F(f, s), -s) != f:
                bad = {"f": f.render(), "sign": s}
                break
        if bad:
            break
    rep.record("transforms", f"fourier_inverse{tag}", "F^+- F^-+ = id", bad is None, bad,
               detail={"family": len(fam)})
    bad_d = bad_x = None
    for f in fam[: 3 * len(monos)]:
        for s in (1, -1):
            Ff = F(f, s)
            for i in range(1, xs.dim + 1):
                lhs = F(f.apply(xs.d(i)), s)
                rhs = Ff.times_poly(xs.var(i).scale(IU * s))
                if lhs != rhs and bad_d is None:
                    bad_d = {"f": f.render(), "i": i, "sign": s, "lhs": lhs.render(), "rhs": rhs.render()}
                lhs = F(f.times_poly(xs.var(i)), s)
                rhs = Ff.apply(xs.d(i)).scale(IU * s)
                if lhs != rhs and bad_x is None:
                    bad_x = {"f": f.render(), "i": i, "sign": s, "lhs": lhs.render(), "rhs": rhs.render()}
    rep.record("transforms", f"fourier_derivative{tag}", "F(d_i f) = +-i x_i F(f)", bad_d is None, bad_d)
    rep.record("transforms", f"fourier_multiplication{tag}", "F(l_i f) = +-i d_i F(f)", bad_x is None, bad_x)
    bad = None
    for _ in range(samples):
        # the dual weight keeps both sides inside Q(i, sqrt2, sqrt(pi))
        f, g = rng.choice(fam), rng.choice(fam)
        g = GaussianFunction(xs, g.poly, Fraction(1, 4) / f.c)
        for s in (1, -1):
            if l2(F(f, s), g) != l2(f, F(g, -s)):
                bad = {"f": f.render(), "g": g.render(), "sign": s}
        if bad:
            break
    rep.record("transforms", f"fourier_adjoint{tag}", "<F^+- f, g> = <f, F^-+ g>", bad is None, bad)
    spo = Spo(m, n)
    pit = PiTildeU(m, n, space=xs, spo=spo)
    pih = PiHat(m, n, space=xs, spo=spo)
    bad = None
    for X in spo.basis:
        A, B = pit.basis_op(X), pih.basis_op(X)
        for f in fam[: 2 * len(monos)]:
            if F(F(f, 1).apply(A), -1) != f.apply(B):
                bad = {"X": str(X), "f": f.render()}
                break
        if bad:
            break
    rep.record("transforms", f"pi_hat_fourier{tag}", "pi^(X) = F^- o pi~(X) o F^+", bad is None, bad)
    return rep
