"""Fischer, Bessel-Fischer, Fock, L2 and Schroedinger products, reproducing
kernels, skew-supersymmetry and the fundamental symmetry S_F."""
from fractions import Fraction
from math import factorial

from .scalar import Scalar, ZERO, ONE
from .superspace import DiffOperator, SuperPoly, SuperSpace
from .gaussian import GaussianFunction, integrate_complex, integrate_real, omega_closed, gamma_closed
from .bessel import MatrixVarSpace, bessel_operator, fold, v_lambda_direct
from .linalg import SparseBasis, rank, leading_minors
from .report import Report, rng_for

PRODUCTS = ("fischer", "bessel_fischer", "fock", "l2", "schrodinger")


def conj_poly(p):
    """q-bar: conjugate the coefficients only."""
    return p.conj_coeffs()


def _letters(space, mono, bank):
    base = space.vindex(1, bank)
    out = []
    for i in range(1, space.dim + 1):
        out.extend([i] * mono[base + i - 1])
    return out


def _eval_zero(poly, space, bank):
    """Set the variables of `bank` to zero."""
    lo = space.vindex(1, bank)
    keep = {m: c for m, c in poly.terms.items() if not any(m[lo:lo + space.dim])}
    return SuperPoly(poly.ring, keep)


def _scalar_of(poly):
    if any(any(m) for m in poly.terms):
        raise ValueError("pairing did not reduce to a scalar")
    return poly.constant_term()


# -- Fischer ---------------------------------------------------------------------------

def fischer_operator(space, p, bank=None):
    """p(d): each z_i of p replaced by the lowered derivative d_i, letters in monomial order."""
    bank = bank or space.banks[0]
    out = DiffOperator.zero(space.ring)
    for mono, c in p.terms.items():
        op = DiffOperator.identity(space.ring, c)
        for i in _letters(space, mono, bank):
            op = op.compose(space.d(i, bank))
        out = out + op
    return out


def fischer_raw(space, p, q, bank=None):
    """p(d) q-bar at z = 0, leaving any other bank as parameters."""
    bank = bank or space.banks[0]
    qb = conj_poly(q)
    out = space.ring.zero()
    for mono, c in p.terms.items():
        r = qb
        for i in reversed(_letters(space, mono, bank)):
            r = space.d(i, bank).apply(r)
            if not r:
                break
        if r:
            out = out + _eval_zero(r, space, bank).scale(c)
    return out


def fischer(space, p, q, bank=None):
    return _scalar_of(fischer_raw(space, p, q, bank))


# -- Fock ---------------------------------------------------------------------------------

class FockSpace:
    """C^{m|2n} with banks z and zbar for the Fock integral."""

    def __init__(self, m, n, extra=()):
        self.space = SuperSpace(m, n, banks=("z", "zbar") + tuple(extra))
        self.gamma = gamma_closed(m, n)

    def to_z(self, p, src=None):
        """Move a single-bank polynomial onto bank z of this space."""
        return _transport(p, self.space, "z")

    def bar(self, p):
        """conj(q(z)) = q-bar(z-bar) on bank zbar."""
        q = conj_poly(p)
        return self.space.rename(q, "z", "zbar")


def _transport(p, target, bank):
    src_ring = p.ring
    images = []
    for k in range(src_ring.nvars):
        i = k % target.dim + 1
        images.append(target.var(i, bank))
    return p.substitute(images, target.ring)


def fock(fs, p, q):
    """(1/gamma) int exp(-||z||^2) p(z) conj(q(z)) dz, p and q on bank z of fs.space."""
    integrand = p * fs.bar(q)
    val = integrate_complex(fs.space, integrand, "z")
    return _scalar_of(val) * fs.gamma.inverse()


# -- L2 and Schroedinger -------------------------------------------------------------------

def l2(f, g):
    """(1/omega) int f conj(g) dx for GaussianFunctions on one bank."""
    if f.space is not g.space:
        raise ValueError("functions live on different spaces")
    sp = f.space
    w = f.c + g.c
    if w <= 0:
        raise ValueError("divergent integrand")
    val, _ = integrate_real(sp, f.poly * conj_poly(g.poly), w, f.bank)
    return _scalar_of(val) * omega_closed(sp.m, sp.n).inverse()


def exp_linear_apply(op, poly, L):
    """Apply op to poly * exp(L) with L linear in even variables; returns q with result q * exp(L)."""
    ring = poly.ring
    consts = {}
    for v in range(ring.nvars):
        c = L.derive(v).constant_term() if L.derive(v) else ZERO
        if c:
            consts[v] = c
    out = ring.zero()
    for (a, d), c in op.terms.items():
        letters = [k for k, e in enumerate(d) for _ in range(e)]
        q = poly
        for v in reversed(letters):
            nq = q.derive(v)
            if v in consts:
                nq = nq + q.scale(consts[v])
            q = nq
            if not q:
                break
        if q:
            out = out + SuperPoly(ring, {a: c}) * q
    return out


class SchrodingerModel:
    """W_{-1/2}: p(l_ij) exp(-2e), paired through psi_R with the L2 product."""

    def __init__(self, m, n):
        self.mspace = MatrixVarSpace(m, n)
        self.target = SuperSpace(m, n, banks=("x",))
        self.L = self.mspace.unit_poly().scale(-2)

    def psi(self, p):
        return GaussianFunction(self.target, fold(p, self.mspace, target=self.target)[0], 1)

    def pair(self, p, q):
        return l2(self.psi(p), self.psi(q))

    def act(self, op, p):
        return exp_linear_apply(op, p, self.L)


# -- Bessel-Fischer ----------------------------------------------------------------------

def bessel_fischer_operator(mspace, lam, p, bank=None, order=None):
    """p(B_lambda); `order` permutes the letters of each monomial to test order independence."""
    bank = bank or mspace.banks[0]
    base = mspace.banks.index(bank) * len(mspace.pairs)
    out = DiffOperator.zero(mspace.ring)
    for mono, c in p.terms.items():
        letters = []
        for k, (i, j) in enumerate(mspace.pairs):
            letters.extend([(i, j)] * mono[base + k])
        sign = 1
        if order is not None:
            letters, sign = order(letters, mspace)
        op = DiffOperator.identity(mspace.ring, c * sign)
        for i, j in letters:
            op = op.compose(bessel_operator(mspace, lam, i, j, bank=bank))
        out = out + op
    return out


_BESSEL_CACHE = {}


def _bessel_ops(mspace, lam, bank):
    key = (id(mspace), Fraction(lam), bank)
    hit = _BESSEL_CACHE.get(key)
    if hit is None or hit[0] is not mspace:
        hit = (mspace, [bessel_operator(mspace, lam, i, j, bank=bank) for i, j in mspace.pairs])
        _BESSEL_CACHE[key] = hit
    return hit[1]


def bessel_fischer_raw(mspace, lam, p, q, bank=None):
    bank = bank or mspace.banks[0]
    base = mspace.banks.index(bank) * len(mspace.pairs)
    ops = _bessel_ops(mspace, lam, bank)
    qb = conj_poly(q)
    val = mspace.ring.zero()
    for mono, c in p.terms.items():
        r = qb
        for k in reversed(range(len(mspace.pairs))):
            for _ in range(mono[base + k]):
                r = ops[k].apply(r)
                if not r:
                    break
            if not r:
                break
        if r:
            val = val + r.scale(c)
    keep = {m: c for m, c in val.terms.items() if not any(m[base:base + len(mspace.pairs)])}
    return SuperPoly(val.ring, keep)


def bessel_fischer(mspace, lam, p, q):
    return _scalar_of(bessel_fischer_raw(mspace, lam, p, q))


def reversed_order(letters, mspace):
    """Reverse a letter word, with the Koszul sign of the permutation."""
    par = [mspace.p(i) ^ mspace.p(j) for i, j in letters]
    odd = [k for k, x in enumerate(par) if x]
    t = len(odd)
    return list(reversed(letters)), (-1) ** (t * (t - 1) // 2)


def pair(product, p, q, space=None, lam=Fraction(-1, 2)):
    """Dispatch on the product tag; `space` is the SuperSpace, FockSpace,
    MatrixVarSpace or SchrodingerModel the arguments live in."""
    if product == "fischer":
        return fischer(space, p, q)
    if product == "fock":
        return fock(space, p, q)
    if product == "l2":
        return l2(p, q)
    if product == "bessel_fischer":
        return bessel_fischer(space, lam, p, q)
    if product == "schrodinger":
        return space.pair(p, q)
    raise ValueError(f"unknown product {product!r}")


# -- S_F ----------------------------------------------------------------------------------

def fundamental_symmetry(space, p, bank=None):
    """S_F(z_1 z_2 ... z_k) = z^k ... z^1: reverse the letters then raise each index."""
    bank = bank or space.banks[0]
    out = space.ring.zero()
    for mono, c in p.terms.items():
        term = space.ring.const(c)
        for i in reversed(_letters(space, mono, bank)):
            term = term * space.raised(i, bank)
        out = out + term
    return out


# -- kernels --------------------------------------------------------------------------------

def pochhammer(a, k):
    out = Fraction(1)
    for t in range(k):
        out *= a + t
    return out


def kernel_coefficient(lam, k):
    lam = Fraction(lam)
    if lam == Fraction(-1, 2):
        return Fraction((-1) ** k, factorial(k)) / pochhammer(Fraction(1, 2) - k, k)
    if lam == 1:
        return Fraction(2 ** k, factorial(k)) / pochhammer(-1 - k, k)
    raise ValueError("kernels are defined for lambda in {1, -1/2}")


def kernel_slice(mspace, lam, k):
    """I_{lambda,k}(z, w) on banks z, w (the w bank stands for w-bar)."""
    return mspace.pairing("z", "w") ** k * kernel_coefficient(lam, k) if k else mspace.ring.const(1)


_V_CACHE = {}


def _v_polys(mspace, lam):
    key = (id(mspace), Fraction(lam))
    hit = _V_CACHE.get(key)
    if hit is None or hit[0] is not mspace:
        hit = (mspace, v_lambda_direct(mspace, lam).polys)
        _V_CACHE[key] = hit
    return hit[1]


def _ideal_part(mspace, V, d, bank):
    sb = SparseBasis()
    if d >= 2:
        for mono in mspace.monomials(d - 2, bank):
            f = SuperPoly(mspace.ring, {mono: ONE})
            for q in V:
                sb.add((f * q).terms)
    return sb


def _move_bank(mspace, p, src, dst):
    k = len(mspace.pairs)
    a, b = mspace.banks.index(src) * k, mspace.banks.index(dst) * k
    out = {}
    for mono, c in p.terms.items():
        new = [0] * len(mono)
        for t in range(k):
            new[b + t] = mono[a + t]
        out[tuple(new)] = c
    return SuperPoly(p.ring, out)


def kernel_reproduce(lam, m, n, p=None, degree=None, mspace=None):
    """<p(z), I_{lambda,k}(z,w)>_B for p homogeneous of degree k, and whether it is p(w) mod I_lambda."""
    mspace = mspace or MatrixVarSpace(m, n, banks=("z", "w"))
    k = degree if degree is not None else max(sum(mono) for mono in p.terms)
    K = kernel_slice(mspace, lam, k)
    got = bessel_fischer_raw(mspace, lam, p, K, "z")
    want = _move_bank(mspace, p, "z", "w")
    diff = got - want
    if lam == Fraction(-1, 2) or Fraction(lam) == Fraction(-1, 2):
        target = SuperSpace(m, n, banks=("w",))
        ok = not fold(diff, mspace, target=target, bank_map={"w": "w"})[0]
    else:
        V = [_move_bank(mspace, q, "z", "w") for q in _v_polys(mspace, lam)]
        ok = _ideal_part(mspace, V, k, "w").contains(diff.terms)
    return got, ok


def fock_kernel_reproduce(m, n, p, truncation):
    """<p(z), exp(z . w-bar)>_F with the exponential cut at `truncation`."""
    deg = max((sum(mono) for mono in p.terms), default=0)
    if truncation < deg:
        raise ValueError("truncation below the degree of p")
    sp = SuperSpace(m, n, banks=("z", "w"))
    pz = _transport(p, sp, "z")
    tw = sp.trace_product("z", "w")
    kern = sp.ring.const(1)
    term = sp.ring.const(1)
    for j in range(1, truncation + 1):
        term = (term * tw).scale(Fraction(1, j))
        kern = kern + term
    got = fischer_raw(sp, pz, kern, "z")
    return got, got == _transport(p, sp, "w")


def folded_kernel_check(m, n, k):
    """psi(I_{-1/2,k}(z,w)) equals (z . w)^{2k} / (2k)!."""
    mspace = MatrixVarSpace(m, n, banks=("z", "w"))
    target = SuperSpace(m, n, banks=("z", "w"))
    img = fold(kernel_slice(mspace, Fraction(-1, 2), k), mspace, target=target)[0]
    want = target.trace_product("z", "w") ** (2 * k) * Fraction(1, factorial(2 * k)) if k else target.ring.const(1)
    return img, want, img == want


# -- checks ---------------------------------------------------------------------------------

def _par(p):
    return p.parity() or 0


def _mono_polys(space, degree, bank=None):
    return space.monomials(degree, bank)


def verify_products(m, n, report=None, degree_cap=4, samples=60, seed=0):
    rep = report if report is not None else Report()
    tag = f"[{m},{n}]"
    rng = rng_for(seed, "products", m, n)
    fs = FockSpace(m, n)
    sp = fs.space
    cap6 = min(degree_cap + 2, 6)
    # fischer = fock on monomial pairs
    bad = None
    count = 0
    for d in range(0, cap6 + 1):
        monos = _mono_polys(sp, d, "z")
        for a in monos:
            for b in monos:
                fi, fo = fischer(sp, a, b, "z"), fock(fs, a, b)
                count += 1
                if fi != fo:
                    bad = {"p": a.render(), "q": b.render(), "fischer": str(fi), "fock": str(fo)}
                    break
            if bad:
                break
        if bad:
            break
    rep.record("products", f"fischer_equals_fock{tag}", "<p,q>_F = <p,q>_Fock", bad is None, bad,
               detail={"pairs": count, "max_degree": cap6})
    # adjoint identities and superhermitianity
    polys = [q for d in range(0, min(degree_cap, 3) + 1) for q in _mono_polys(sp, d, "z")]
    bad = None
    herm_bad = None
    for _ in range(samples):
        p = _random_combo(rng, polys)
        q = _random_combo(rng, polys)
        i = rng.randint(1, sp.dim)
        pp = p.parity_parts()[rng.randint(0, 1)]
        if pp:
            s = -1 if sp.p(i) * _par(pp) else 1
            lhs = fock(fs, sp.d(i, "z").apply(pp), q)
            rhs = fock(fs, pp, sp.var(i, "z") * q) * s
            lhs2 = fock(fs, sp.var(i, "z") * pp, q)
            rhs2 = fock(fs, pp, sp.d(i, "z").apply(q)) * s
            if lhs != rhs or lhs2 != rhs2:
                bad = {"i": i, "p": pp.render(), "q": q.render()}
        a, b = p.parity_parts()[rng.randint(0, 1)], q.parity_parts()[rng.randint(0, 1)]
        if a and b:
            s = -1 if _par(a) * _par(b) else 1
            if fischer(sp, a, b, "z") != fischer(sp, b, a, "z").conj() * s:
                herm_bad = {"p": a.render(), "q": b.render()}
    rep.record("products", f"adjoint_identities{tag}", "<d_i p, q> = (-1)^{|i||p|} <p, z_i q>", bad is None, bad)
    rep.record("products", f"superhermitian{tag}", "superhermitian", herm_bad is None, herm_bad)
    # S_F
    rep.extend(positivity_check(m, n, degree_cap))
    # Bessel-Fischer against Fischer after folding, and kernels
    rep.extend(bessel_fischer_checks(m, n, degree_cap=min(degree_cap, 3), samples=samples, seed=seed))
    rep.extend(kernel_checks(m, n, k_max=3))
    rep.extend(skew_checks(m, n, degree_cap=min(degree_cap, 3), samples=samples, seed=seed))
    return rep


def _random_combo(rng, polys, terms=3):
    out = polys[0].ring.zero()
    for _ in range(terms):
        c = rng.randint(-3, 3)
        if c:
            out = out + rng.choice(polys).scale(Scalar(c, rng.randint(-3, 3)))
    return out if out else polys[0]


def gram_matrix(m, n, k, product="fock", lam=Fraction(-1, 2)):
    """Exact Gram matrix of a product on the degree-k monomials (or a basis of P_k mod I_lambda)."""
    if product in ("fock", "fischer", "sf"):
        fs = FockSpace(m, n)
        sp = fs.space
        basis = _mono_polys(sp, k, "z")
        if product == "fock":
            f = lambda a, b: fock(fs, a, b)
        elif product == "fischer":
            f = lambda a, b: fischer(sp, a, b, "z")
        else:
            f = lambda a, b: fischer(sp, a, fundamental_symmetry(sp, b, "z"), "z")
        return basis, [[f(a, b) for b in basis] for a in basis]
    if product == "bessel_fischer":
        mspace = MatrixVarSpace(m, n)
        basis = quotient_basis(mspace, lam, k)
        return basis, [[bessel_fischer(mspace, lam, a, b) for b in basis] for a in basis]
    raise ValueError(f"no Gram matrix for {product!r}")


def quotient_basis(mspace, lam, k):
    """Monomials whose classes form a basis of P_k / I_lambda."""
    V = _v_polys(mspace, lam)
    sb = _ideal_part(mspace, V, k, mspace.banks[0])
    out = []
    for mono in mspace.monomials(k):
        f = SuperPoly(mspace.ring, {mono: ONE})
        if sb.add(f.terms):
            out.append(f)
    return out


def positivity_check(m, n, degree_cap=4, report=None):
    rep = report if report is not None else Report()
    tag = f"[{m},{n}]"
    fs = FockSpace(m, n)
    sp = fs.space
    bad4 = badiso = badpd = None
    for k in range(0, degree_cap + 1):
        basis = _mono_polys(sp, k, "z")
        S = [fundamental_symmetry(sp, b, "z") for b in basis]
        for b, s in zip(basis, S):
            s4 = fundamental_symmetry(sp, fundamental_symmetry(sp, fundamental_symmetry(sp, s, "z"), "z"), "z")
            if s4 != b:
                bad4 = {"p": b.render(), "S^4 p": s4.render()}
        for a, sa in zip(basis, S):
            for b, sb in zip(basis, S):
                if fischer(sp, sa, sb, "z") != fischer(sp, a, b, "z"):
                    badiso = {"p": a.render(), "q": b.render()}
        G = [[fischer(sp, a, s, "z") for s in S] for a in basis]
        herm = all(G[i][j] == G[j][i].conj() for i in range(len(G)) for j in range(len(G)))
        minors = leading_minors(G) if G else []
        pos = all(x.is_rational() and x.to_fraction() > 0 for x in minors)
        if not (herm and pos):
            badpd = {"k": k, "hermitian": herm, "minors": [str(x) for x in minors]}
    rep.record("products", f"S_F_fourth_power{tag}", "J^4 = 1", bad4 is None, bad4)
    rep.record("products", f"S_F_isometry{tag}", "<J(x), J(y)> = <x, y>", badiso is None, badiso)
    rep.record("products", f"S_F_positive{tag}", "<x, J(x)> > 0", badpd is None, badpd,
               detail={"degree_cap": degree_cap})
    return rep


def bessel_fischer_checks(m, n, degree_cap=3, samples=40, seed=0, report=None):
    rep = report if report is not None else Report()
    tag = f"[{m},{n}]"
    mspace = MatrixVarSpace(m, n)
    target = SuperSpace(m, n, banks=("z",))
    lam = Fraction(-1, 2)
    bad = None
    count = 0
    for d in range(0, degree_cap + 1):
        monos = [SuperPoly(mspace.ring, {mono: ONE}) for mono in mspace.monomials(d)]
        for a in monos:
            fa = fold(a, mspace, target=target)[0]
            for b in monos:
                fb = fold(b, mspace, target=target)[0]
                lhs = bessel_fischer(mspace, lam, a, b)
                rhs = fischer(target, fa, fb)
                count += 1
                if lhs != rhs:
                    bad = {"p": a.render(), "q": b.render(), "bessel_fischer": str(lhs), "fischer(psi)": str(rhs)}
                    break
            if bad:
                break
        if bad:
            break
    rep.record("products", f"bessel_fischer_equals_fischer_psi{tag}", "<p,q>_B = <psi(p), psi(q)>_F",
               bad is None, bad, detail={"pairs": count})
    # order independence of p(B)
    rng = rng_for(seed, "bf_order", m, n)
    bad = None
    for lam_ in (Fraction(-1, 2), Fraction(1)):
        for _ in range(samples // 4):
            d = rng.randint(2, 3)
            monos = mspace.monomials(d)
            p = SuperPoly(mspace.ring, {rng.choice(monos): ONE})
            A = bessel_fischer_operator(mspace, lam_, p)
            B = bessel_fischer_operator(mspace, lam_, p, order=reversed_order)
            if A != B:
                bad = {"p": p.render(), "lambda": str(lam_)}
                break
    rep.record("products", f"bessel_fischer_order_independent{tag}", "the operators supercommute", bad is None, bad)
    # non-degeneracy on the quotient
    for lam_ in (Fraction(-1, 2), Fraction(1)):
        ranks = []
        ok = True
        for k in range(0, degree_cap + 1):
            basis, G = gram_matrix(m, n, k, "bessel_fischer", lam_)
            r = rank(G, len(basis)) if basis else 0
            ranks.append((k, len(basis), r))
            ok = ok and r == len(basis)
        rep.record("products", f"bessel_fischer_nondegenerate{tag}[lambda={lam_}]", "non-degenerate on F_lambda", ok,
                   {"ranks": ranks}, detail={"ranks": ranks})
    return rep


def kernel_checks(m, n, k_max=3, report=None):
    rep = report if report is not None else Report()
    tag = f"[{m},{n}]"
    mspace = MatrixVarSpace(m, n, banks=("z", "w"))
    for lam in (Fraction(-1, 2), Fraction(1)):
        bad = None
        for k in range(0, k_max + 1):
            for mono in mspace.monomials(k, "z"):
                p = SuperPoly(mspace.ring, {mono: ONE})
                got, ok = kernel_reproduce(lam, m, n, p, k, mspace)
                if not ok:
                    bad = {"p": p.render(), "k": k, "got": got.render()}
                    break
            if bad:
                break
        rep.record("products", f"kernel_slice_reproduces{tag}[lambda={lam}]", "<p(z), I_{lambda,k}(z,w)> = p(w) mod I_lambda",
                   bad is None, bad)
    bad = None
    fsp = SuperSpace(m, n, banks=("z",))
    for d in range(0, 4):
        for p in fsp.monomials(d):
            for t in (d, d + 2):
                got, ok = fock_kernel_reproduce(m, n, p, t)
                if not ok:
                    bad = {"p": p.render(), "truncation": t, "got": got.render()}
    rep.record("products", f"fock_kernel_reproduces{tag}", "<p(z), exp(z . w-bar)> = p(w)", bad is None, bad)
    bad = None
    for k in range(0, k_max + 1):
        img, want, ok = folded_kernel_check(m, n, k)
        if not ok:
            bad = {"k": k, "psi(I_k)": img.render(), "cosh slice": want.render()}
    rep.record("products", f"folded_kernel_cosh{tag}", "psi(I_{-1/2}(z,w)) = cosh(z|w-bar)", bad is None, bad)
    return rep


def skew_checks(m, n, degree_cap=3, samples=40, seed=0, report=None):
    """<rep(X) f, g> = -(-1)^{|X||f|} <f, rep(X) g> for (l2, pi~), (fock, rho~), (schrodinger, pi_{-1/2})."""
    from .reps import PiTilde, PiLambda
    from .algebra import TKK
    rep = report if report is not None else Report()
    tag = f"[{m},{n}]"
    tkk = TKK(m, n)
    rng = rng_for(seed, "skew", m, n)
    exhaustive = (m, n) in ((1, 1), (2, 0), (0, 2))

    def xs():
        if exhaustive:
            return list(tkk.basis)
        return [rng.choice(tkk.basis) for _ in range(min(samples, 2 * len(tkk.basis)))]

    # l2 with pi-tilde
    pit = PiTilde(m, n, tkk=tkk)
    sp = pit.space
    fam = [GaussianFunction(sp, q, 1) for d in range(0, degree_cap + 1) for q in sp.monomials(d)]
    bad = _skew(pit, tkk, xs(), fam, rng, samples, l2, lambda op, f: f.apply(op), lambda f: _par(f.poly))
    rep.record("products", f"skew_l2_pi_tilde{tag}", "<pi(X) f, g> = -(-1)^{|X||f|} <f, pi(X) g>", bad is None, bad)
    # fock with rho-tilde
    fs = FockSpace(m, n)
    rho = PiTilde(m, n, twist=True, tkk=tkk, space=SuperSpace(m, n, banks=("z",)))
    famz = [q for d in range(0, degree_cap + 1) for q in rho.space.monomials(d)]
    pf = lambda a, b: fock(fs, fs.to_z(a), fs.to_z(b))
    bad = _skew(rho, tkk, xs(), famz, rng, samples, pf, lambda op, f: op.apply(f), _par)
    rep.record("products", f"skew_fock_rho_tilde{tag}", "<rho(X) p, q> = -(-1)^{|X||p|} <p, rho(X) q>", bad is None, bad)
    # schrodinger with pi_{-1/2}
    model = SchrodingerModel(m, n)
    pil = PiLambda(m, n, Fraction(-1, 2), tkk=tkk, space=model.mspace)
    famj = [SuperPoly(model.mspace.ring, {mono: ONE}) for d in range(0, 2) for mono in model.mspace.monomials(d)]
    bad = _skew(pil, tkk, xs(), famj, rng, samples, model.pair, model.act, _par)
    rep.record("products", f"skew_schrodinger_pi_lambda{tag}", "skew-supersymmetric for pi_lambda", bad is None, bad)
    return rep


def _skew(r, alg, xs, fam, rng, samples, prod, act, parity):
    for X in xs:
        op = r.basis_op(X)
        px = alg.parity_of[X]
        for _ in range(max(3, samples // max(1, len(xs)))):
            f, g = rng.choice(fam), rng.choice(fam)
            lhs = prod(act(op, f), g)
            rhs = prod(f, act(op, g)) * (1 if px * parity(f) else -1)
            if lhs != rhs:
                return {"X": str(X), "f": str(f.render()), "g": str(g.render()), "lhs": str(lhs), "rhs": str(rhs)}
    return None
