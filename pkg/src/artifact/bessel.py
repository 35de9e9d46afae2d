"""Polynomials on J = JOSP(m|2n), Bessel operators, the spaces V_lambda and
the folding maps psi (lambda = -1/2) and psi1 (lambda = 1)."""
from fractions import Fraction
from itertools import product as iproduct

from .scalar import Scalar, ZERO, ONE
from .superspace import PolyRing, SuperPoly, DiffOperator, SuperSpace, bracket, metric_beta, metric_beta_inv
from .algebra import JOSP
from .linalg import SparseBasis, nullspace
from .report import Report


def _sgn(e):
    return -1 if e & 1 else 1


class MatrixVarSpace:
    """P(K^{mh|2nh}) with variables z_ij (i <= j, no odd diagonal) in one or
    more banks.  Variable names are f"{bank}{i}_{j}"."""

    def __init__(self, m, n, banks=("z",)):
        if m < 0 or n < 0 or (m, n) == (0, 0):
            raise ValueError("need m + 2n > 0")
        self.m, self.n = m, n
        self.d = m + 2 * n
        self.M = m - 2 * n
        self.mhat = m * (m + 1) // 2 + n * (2 * n - 1)
        self.nhat = m * n
        self.banks = tuple(banks)
        self.beta = metric_beta(m, n)
        self.beta_inv = metric_beta_inv(m, n)
        self.pairs = [(i, j) for i in range(1, self.d + 1) for j in range(i, self.d + 1)
                      if i < j or self.p(i) == 0]
        names, pars = [], []
        for bank in self.banks:
            for i, j in self.pairs:
                names.append(f"{bank}{i}_{j}")
                pars.append((self.p(i) + self.p(j)) & 1)
        self.ring = PolyRing(names, pars)
        self._pos = {}
        for b, bank in enumerate(self.banks):
            for k, pr in enumerate(self.pairs):
                self._pos[(bank, pr)] = b * len(self.pairs) + k
        self._cache = {}

    def p(self, i):
        return 0 if i <= self.m else 1

    def b(self, i, j):
        return self.beta[i - 1][j - 1]

    def binv(self, i, j):
        return self.beta_inv[i - 1][j - 1]

    def _bank(self, bank):
        return self.banks[0] if bank is None else bank

    def slot(self, i, j, bank=None):
        """(ring index, sign) of l_ij, or None when l_ij = 0."""
        bank = self._bank(bank)
        if i == j and self.p(i):
            return None
        if i <= j:
            return self._pos[(bank, (i, j))], 1
        return self._pos[(bank, (j, i))], _sgn(self.p(i) * self.p(j))

    def var(self, i, j, bank=None):
        s = self.slot(i, j, bank)
        if s is None:
            return self.ring.zero()
        return self.ring.var(s[0]).scale(s[1])

    def var_raised(self, i, j, bank=None):
        """l^{ij} = sum_kl l_kl beta^{ki} beta^{lj}."""
        out = self.ring.zero()
        for k in range(1, self.d + 1):
            a = self.binv(k, i)
            if not a:
                continue
            for l in range(1, self.d + 1):
                c = self.binv(l, j)
                if c:
                    out = out + self.var(k, l, bank).scale(a * c)
        return out

    def d_up(self, i, j, bank=None):
        """The derivative d/dl_ij (zero for an odd diagonal index)."""
        key = ("up", i, j, bank)
        hit = self._cache.get(key)
        if hit is None:
            s = self.slot(i, j, bank)
            if s is None:
                hit = DiffOperator.zero(self.ring)
            else:
                hit = DiffOperator.partial(self.ring, s[0]).scale(s[1])
            self._cache[key] = hit
        return hit

    def d_low(self, i, j, bank=None):
        """d_ij = sum_kl d^{kl} beta_ik beta_jl."""
        key = ("low", i, j, bank)
        hit = self._cache.get(key)
        if hit is None:
            hit = DiffOperator.zero(self.ring)
            for k in range(1, self.d + 1):
                a = self.b(i, k)
                if not a:
                    continue
                for l in range(1, self.d + 1):
                    c = self.b(j, l)
                    if c:
                        hit = hit + self.d_up(k, l, bank).scale(a * c)
            self._cache[key] = hit
        return hit

    def check_derivative_identity(self, bank=None):
        """d_ij l^{kl} = d^{ij} l_kl = delta_ik delta_jl + (-1)^{|i||j|} delta_il delta_jk
        - delta_ij delta_kl delta_ik, over all quadruples with l_kl and d^{ij} nonzero.
        Returns the first failing quadruple or None."""
        rng = range(1, self.d + 1)
        for i, j, k, l in iproduct(rng, rng, rng, rng):
            if self.slot(k, l, bank) is None or self.slot(i, j, bank) is None:
                continue
            expect = ((1 if (i == k and j == l) else 0)
                      + (_sgn(self.p(i) * self.p(j)) if (i == l and j == k) else 0)
                      - (1 if (i == j == k == l) else 0))
            one = self.d_up(i, j, bank).apply(self.var(k, l, bank))
            two = self.d_low(i, j, bank).apply(self.var_raised(k, l, bank))
            if one != self.ring.const(expect) or two != self.ring.const(expect):
                return (i, j, k, l)
        return None

    def unit_poly(self, bank=None):
        """e = 1/2 sum l_ij beta^{ij} as a polynomial."""
        out = self.ring.zero()
        for i in range(1, self.d + 1):
            for j in range(1, self.d + 1):
                c = self.binv(i, j)
                if c:
                    out = out + self.var(i, j, bank).scale(Fraction(c, 2))
        return out

    def trace_poly(self, bank=None):
        out = self.ring.zero()
        for i in range(1, self.d + 1):
            for j in range(1, self.d + 1):
                c = self.binv(i, j)
                if c:
                    w = Fraction(1, 2) if self.p(i) * self.p(j) else 1
                    out = out + self.var(i, j, bank).scale(c * w)
        return out

    def pairing(self, bank_a="z", bank_b="w"):
        """(z|w) = 1/4 sum_ij z^{ji} w_ij."""
        out = self.ring.zero()
        for i in range(1, self.d + 1):
            for j in range(1, self.d + 1):
                out = out + self.var_raised(j, i, bank_a) * self.var(i, j, bank_b)
        return out.scale(Fraction(1, 4))

    def monomials(self, degree, bank=None, parity=None):
        bank = self._bank(bank)
        base = self.banks.index(bank) * len(self.pairs)
        k = len(self.pairs)
        sub = PolyRing(self.ring.names[base:base + k], self.ring.parities[base:base + k])
        out = []
        for mono in sub.monomials(degree):
            full = [0] * self.ring.nvars
            full[base:base + k] = mono
            full = tuple(full)
            if parity is not None and self.ring.mono_parity(full) != parity:
                continue
            out.append(full)
        return out

    def poly_of_jvec(self, x, bank=None):
        """Linear polynomial of a JOSP coordinate vector {("l", i, j): c}."""
        out = self.ring.zero()
        for (_, i, j), c in x.items():
            out = out + self.var(i, j, bank).scale(c)
        return out


def _as_scalar(lam):
    return Scalar.coerce(Fraction(lam) if not isinstance(lam, Scalar) else lam)


def character(J, lam, y):
    """lambda(L_y) = lambda * sum_ij y_ij beta_ij on canonical coordinates."""
    out = ZERO
    for (_, i, j), c in y.items():
        b = J.b(i, j)
        if b:
            out = out + c * b
    return out * lam


def bessel_definitional(space, lam, x, bank=None):
    """B_lambda(x) from lambda_u(x) = -2 lambda(L_{xu}) and
    P_{u,v}(x) = (-1)^{|x|(|u|+|v|)} (L_u L_v + (-1)^{|u||v|} L_v L_u - L_{uv})(x)."""
    lam = _as_scalar(lam)
    J = _josp(space.m, space.n)
    ring = space.ring
    out = DiffOperator.zero(ring)
    px = J.parity(x)
    if px is None:
        for part in _parity_split(J, x):
            out = out + bessel_definitional(space, lam, part, bank)
        return out
    basis = J.basis
    dpart = {b: space.d_up(b[1], b[2], bank) for b in basis}
    for b in basis:
        u = {b: ONE}
        c = character(J, lam, J.product(x, u)) * -2
        if c:
            out = out + dpart[b].scale(c)
    for bu in basis:
        u = {bu: ONE}
        pu = J.parity_of[bu]
        Lu_x = J.product(u, x)
        for bv in basis:
            v = {bv: ONE}
            pv = J.parity_of[bv]
            t1 = J.product(u, J.product(v, x))
            t2 = J.product(v, Lu_x)
            t3 = J.product(J.product(u, v), x)
            y = {}
            for vec, s in ((t1, 1), (t2, _sgn(pu * pv)), (t3, -1)):
                for k, cc in vec.items():
                    nv = y.get(k, ZERO) + cc * s
                    if nv:
                        y[k] = nv
                    else:
                        y.pop(k, None)
            if not y:
                continue
            sign = _sgn(px * (pu + pv))
            mult = DiffOperator.multiplier(space.poly_of_jvec(y, bank).scale(sign))
            out = out + mult.compose(dpart[bv].compose(dpart[bu]))
    return out


def bessel_explicit(space, lam, i, j, bank=None, sign_index="i"):
    """The closed double/quadruple sum for B_lambda(l_ij).

    sign_index selects the exponent (-1)^{|k||i|} ("i") or (-1)^{|k||s|} ("s");
    the two agree because beta_is = 0 unless |i| = |s|."""
    lam = _as_scalar(lam)
    key = ("bexp", lam, i, j, bank, sign_index)
    hit = space._cache.get(key)
    if hit is not None:
        return hit
    d = space.d
    p, b = space.p, space.b
    out = DiffOperator.zero(space.ring)
    for k in range(1, d + 1):
        for l in range(1, d + 1):
            c = b(j, k) * b(i, l)
            if c:
                out = out + space.d_up(k, l, bank).scale(lam * (-2 * c * (2 if k == l else 1)))
    for s in range(1, d + 1):
        bis = b(i, s)
        if not bis:
            continue
        for l in range(1, d + 1):
            bjl = b(j, l)
            if not bjl:
                continue
            for k in range(1, d + 1):
                for r in range(1, d + 1):
                    mult = space.var(k, r, bank)
                    if not mult:
                        continue
                    w = 1 + (k == l) + (r == s) + (k == l and r == s)
                    e = p(k) * (p(i) if sign_index == "i" else p(s))
                    coef = _sgn(e) * w * bis * bjl
                    op = space.d_up(s, r, bank).compose(space.d_up(l, k, bank))
                    if op:
                        out = out + DiffOperator.multiplier(mult).compose(op).scale(coef)
    space._cache[key] = out
    return out


def bessel_raised(space, lam, i, j, bank=None):
    """The rewritten form -2 lambda (1+delta_ij) d_ji
    + sum_kl (-1)^{|k||i|} (1 + delta_jk + delta_il + delta_jk delta_il) l^{kl} d_il d_jk."""
    lam = _as_scalar(lam)
    d = space.d
    p = space.p
    out = space.d_low(j, i, bank).scale(lam * (-2 * (2 if i == j else 1)))
    for k in range(1, d + 1):
        for l in range(1, d + 1):
            mult = space.var_raised(k, l, bank)
            if not mult:
                continue
            w = 1 + (j == k) + (i == l) + (j == k and i == l)
            op = space.d_low(i, l, bank).compose(space.d_low(j, k, bank))
            if op:
                out = out + DiffOperator.multiplier(mult).compose(op).scale(_sgn(p(k) * p(i)) * w)
    return out


def bessel_operator(space, lam, i, j, construction="explicit", bank=None):
    if construction == "explicit":
        return bessel_explicit(space, lam, i, j, bank)
    if construction == "definitional":
        J = _josp(space.m, space.n)
        return bessel_definitional(space, lam, J.ell(i, j), bank)
    if construction == "raised":
        return bessel_raised(space, lam, i, j, bank)
    raise ValueError(f"unknown construction {construction!r}")


_JCACHE = {}


def _josp(m, n):
    key = (m, n)
    if key not in _JCACHE:
        _JCACHE[key] = JOSP(m, n)
    return _JCACHE[key]


def _parity_split(J, x):
    parts = {}
    for k, c in x.items():
        parts.setdefault(J.parity_of[k], {})[k] = c
    return list(parts.values())


# -- checks ---------------------------------------------------------------------

def check_bessel_constructions(m, n, lam, report=None):
    rep = report if report is not None else Report()
    space = MatrixVarSpace(m, n)
    bad = space.check_derivative_identity()
    rep.record("bessel", f"derivative_identity[{m},{n}]", "d_ij l^{kl} = delta_ik delta_jl + ...", bad is None,
               {"quadruple": bad})
    bad = None
    for i, j in space.pairs:
        a = bessel_operator(space, lam, i, j, "definitional")
        b = bessel_operator(space, lam, i, j, "explicit")
        c = bessel_operator(space, lam, i, j, "raised")
        if a != b or b != c:
            bad = {"i": i, "j": j, "definitional": a.render(), "explicit": b.render(), "raised": c.render()}
            break
    rep.record("bessel", f"bessel_two_constructions[{m},{n};{Fraction(lam)}]",
               "B_lambda definitional = explicit", bad is None, bad)
    return rep


def bessel_supercommutativity(m, n, lam, report=None):
    rep = report if report is not None else Report()
    space = MatrixVarSpace(m, n)
    ops = {pr: bessel_operator(space, lam, *pr) for pr in space.pairs}
    bad = None
    prs = space.pairs
    for a in range(len(prs)):
        for b in range(a, len(prs)):
            br = bracket(ops[prs[a]], ops[prs[b]])
            if br:
                bad = {"x": f"l_{prs[a]}", "y": f"l_{prs[b]}", "bracket": br.render()}
                break
        if bad:
            break
    rep.record("bessel", f"bessel_supercommute[{m},{n};{Fraction(lam)}]", "[B_ij, B_kl] = 0",
               bad is None, bad, detail={"pairs": len(prs) * (len(prs) + 1) // 2})
    return rep


# -- V_lambda ----------------------------------------------------------------------

class VLambdaBasis:
    def __init__(self, lam, polys, dim_even, dim_odd):
        self.lam = lam
        self.polys = polys
        self.dim_even = dim_even
        self.dim_odd = dim_odd

    @property
    def sdim(self):
        return self.dim_even - self.dim_odd

    @property
    def dim(self):
        return self.dim_even + self.dim_odd


def _vectors_to_polys(ring, monos, vecs):
    out = []
    for v in vecs:
        terms = {monos[k]: c for k, c in enumerate(v) if c}
        out.append(SuperPoly(ring, terms))
    return out


def v_lambda_direct(space, lam):
    """V_lambda as the joint kernel of all B_lambda(l_ab) on P_2, per parity."""
    ops = [bessel_operator(space, lam, a, b) for a, b in space.pairs]
    res = {}
    for par in (0, 1):
        monos = space.monomials(2, parity=par)
        rowsmap = {}
        for col, mono in enumerate(monos):
            q = SuperPoly(space.ring, {mono: ONE})
            for oi, op in enumerate(ops):
                for mm, c in op.apply(q).terms.items():
                    rowsmap.setdefault((oi, mm), {})[col] = c
        rows = [[r.get(c, ZERO) for c in range(len(monos))] for r in rowsmap.values()]
        ns = nullspace(rows, len(monos)) if rows else [[ONE if c == k else ZERO for c in range(len(monos))]
                                                       for k in range(len(monos))]
        res[par] = _vectors_to_polys(space.ring, monos, ns)
    return VLambdaBasis(lam, res[0] + res[1], len(res[0]), len(res[1]))


def _alpha_orbits(space):
    """Orbit representatives for the alpha symmetries with the sign of each member,
    or sign 0 when the orbit forces alpha = 0."""
    p = space.p
    d = space.d
    rep_of = {}
    reps = []
    for q in iproduct(range(1, d + 1), repeat=4):
        if q in rep_of:
            continue
        signs = {q: 1}
        stack = [q]
        consistent = True
        while stack:
            t = stack.pop()
            i, j, k, l = t
            s = signs[t]
            moves = (((j, i, k, l), _sgn(p(i) * p(j))),
                     ((i, j, l, k), _sgn(p(k) * p(l))),
                     ((k, l, i, j), _sgn((p(i) + p(j)) * (p(k) + p(l)))))
            for nt, f in moves:
                # alpha_t = f * alpha_nt, so alpha_nt = f * alpha_t
                ns = s * f
                if nt in signs:
                    if signs[nt] != ns:
                        consistent = False
                else:
                    signs[nt] = ns
                    stack.append(nt)
        idx = len(reps)
        reps.append(q)
        for t, s in signs.items():
            rep_of[t] = (idx, s if consistent else 0)
    return reps, rep_of


def v_lambda_lemma(space, lam):
    """V_lambda from the coefficient conditions on alpha_{ijkl}."""
    lam = _as_scalar(lam)
    p = space.p
    d = space.d
    reps, rep_of = _alpha_orbits(space)
    live = sorted({idx for idx, s in rep_of.values() if s})
    col = {idx: c for c, idx in enumerate(live)}
    rows = []
    for i, j, k, l in iproduct(range(1, d + 1), repeat=4):
        row = {}

        def add(t, coef):
            idx, s = rep_of[t]
            if s:
                c = col[idx]
                row[c] = row.get(c, ZERO) + coef * s

        add((i, j, k, l), lam * (2 * _sgn(p(i) * p(j))))
        add((j, k, i, l), Scalar(-_sgn(p(i) * p(k))))
        add((j, l, i, k), Scalar(-_sgn(p(k) * p(l) + p(i) * p(l))))
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append([row.get(c, ZERO) for c in range(len(live))])
    ns = nullspace(rows, len(live)) if rows else [[ONE if c == k else ZERO for c in range(len(live))]
                                                  for k in range(len(live))]
    polys = []
    for v in ns:
        q = space.ring.zero()
        for t in iproduct(range(1, d + 1), repeat=4):
            idx, s = rep_of[t]
            if not s or idx not in col:
                continue
            c = v[col[idx]]
            if c:
                q = q + (space.var(t[0], t[1]) * space.var(t[2], t[3])).scale(c * s)
        polys.append(q)
    return _basis_by_parity(space, lam, polys)


def _basis_by_parity(space, lam, polys):
    out = {0: SparseBasis(), 1: SparseBasis()}
    kept = {0: [], 1: []}
    for q in polys:
        for par, part in _poly_parity_parts(q).items():
            if out[par].add(part.terms):
                kept[par].append(part)
    return VLambdaBasis(lam, kept[0] + kept[1], len(kept[0]), len(kept[1]))


def _poly_parity_parts(q):
    parts = {}
    for mono, c in q.terms.items():
        parts.setdefault(q.ring.mono_parity(mono), {})[mono] = c
    return {par: SuperPoly(q.ring, t) for par, t in parts.items()}


def v_lambda_printed(space, lam):
    """The displayed spanning sets of V_1 and V_{-1/2} over all index quadruples."""
    lam = Fraction(lam)
    p = space.p
    d = space.d
    v = space.var
    polys = []
    for i, j, k, l in iproduct(range(1, d + 1), repeat=4):
        if lam == 1:
            q = (v(i, j) * v(k, l) + (v(i, k) * v(j, l)).scale(_sgn(p(k) * p(j)))
                 + (v(i, l) * v(j, k)).scale(_sgn((p(j) + p(k)) * p(l))))
        elif lam == Fraction(-1, 2):
            q = v(i, j) * v(k, l) - (v(i, k) * v(j, l)).scale(_sgn(p(k) * p(j)))
        else:
            raise ValueError("spanning sets are only displayed for lambda in {1, -1/2}")
        if q:
            polys.append(q)
    return _basis_by_parity(space, lam, polys)


def compute_V_lambda(m, n, lam, method="direct"):
    space = MatrixVarSpace(m, n)
    if method == "direct":
        return v_lambda_direct(space, lam)
    if method == "lemma":
        return v_lambda_lemma(space, lam)
    if method == "printed":
        return v_lambda_printed(space, lam)
    raise ValueError(f"unknown method {method!r}")


def same_span(space, a, b):
    sa, sb = SparseBasis(), SparseBasis()
    for q in a:
        sa.add(q.terms)
    for q in b:
        sb.add(q.terms)
    return len(sa) == len(sb) and all(sa.contains(q.terms) for q in b)


def vdim_formula(m, n, lam):
    """(dim_even, dim_odd) of V_lambda from the counting formulas."""
    lam = Fraction(lam)
    if lam == 1:
        ev = Fraction(m ** 4 + 24 * m ** 2 * n ** 2 + 16 * n ** 4 + 6 * m ** 3 - 12 * m ** 2 * n
                      + 24 * m * n ** 2 - 48 * n ** 3 + 11 * m ** 2 - 12 * m * n + 44 * n ** 2
                      + 6 * m - 12 * n, 24)
        od = Fraction(m * n * (m ** 2 + 4 * n ** 2 + 3 * m - 6 * n + 4), 3)
    elif lam == Fraction(-1, 2):
        ev = Fraction(m ** 4 + 24 * m ** 2 * n ** 2 + 16 * n ** 4 - m ** 2 - 12 * m * n - 4 * n ** 2, 12)
        od = Fraction(2 * m * n * (m ** 2 + 4 * n ** 2 - 2), 3)
    else:
        return (0, 0)
    return (ev, od)


def sdim_formula(M, lam):
    lam = Fraction(lam)
    if lam == 1:
        return Fraction(M * (M + 1) * (M + 2) * (M + 3), 24)
    if lam == Fraction(-1, 2):
        return Fraction((M - 1) * M * M * (M + 1), 12)
    return Fraction(0)


# -- folding -------------------------------------------------------------------------

def fold(poly, mspace, variant="psi", target=None, bank_map=None):
    """Multiplicative extension of l_ij -> l_i l_j (psi) or l_ij -> theta_i theta_j (psi1).

    bank_map sends matrix banks to target banks; by default each bank goes to
    the target bank of the same name, or to the only target bank."""
    if variant == "psi":
        if target is None:
            target = SuperSpace(mspace.m, mspace.n, banks=mspace.banks if len(mspace.banks) > 1 else ("x",))
        bmap = _bank_map(mspace, target.banks, bank_map)
        images = []
        for bk in mspace.banks:
            tb = bmap.get(bk)
            for i, j in mspace.pairs:
                images.append(None if tb is None else target.var(i, tb) * target.var(j, tb))
        return _subst(poly, images, target.ring), target
    if variant == "psi1":
        if target is None:
            target = GrassmannAlgebra(mspace.m, mspace.n)
        bmap = _bank_map(mspace, ("t",), bank_map)
        images = []
        for bk in mspace.banks:
            for i, j in mspace.pairs:
                images.append(target.pair(i, j) if bk in bmap else None)
        return target.substitute(poly, images), target
    raise ValueError(f"unknown folding map {variant!r}")


def _bank_map(mspace, tbanks, bank_map):
    if bank_map is not None:
        return dict(bank_map)
    if len(tbanks) == 1 and len(mspace.banks) == 1:
        return {mspace.banks[0]: tbanks[0]}
    return {b: b for b in mspace.banks if b in tbanks}


def _subst(poly, images, tring):
    for mono in poly.terms:
        for k, e in enumerate(mono):
            if e and images[k] is None:
                raise ValueError("polynomial uses variables outside the folded bank")
    return poly.substitute(images, tring)


def unfold(poly, mspace, bank=None):
    """Section of psi on even-degree polynomials: pair consecutive letters of
    each canonical monomial."""
    ring = poly.ring
    out = mspace.ring.zero()
    nv = ring.nvars
    dim = mspace.d
    for mono, c in poly.terms.items():
        if any(mono[k] for k in range(dim, nv)):
            raise ValueError("unfold expects a single-bank polynomial")
        letters = []
        for k in range(dim):
            letters.extend([k + 1] * mono[k])
        if len(letters) % 2:
            raise ValueError("unfold is only defined on even degrees")
        term = mspace.ring.const(c)
        for a in range(0, len(letters), 2):
            term = term * mspace.var(letters[a], letters[a + 1], bank)
        out = out + term
    return out


class GrassmannAlgebra:
    """Lambda(K^{2n|m}) with generators theta_i (i = 1..m+2n).  The theta_i with
    i <= m are the Grassmann ones (square zero); those with i > m are the
    polynomial ones and commute with each other; mixed pairs anticommute."""

    def __init__(self, m, n):
        self.m, self.n = m, n
        self.d = m + 2 * n
        self.names = tuple(f"t{i}" for i in range(1, self.d + 1))

    def comm(self, i):
        return i > self.m

    def mono_mul(self, a, b):
        for k in range(self.d):
            if not self.comm(k + 1) and a[k] and b[k]:
                return 0, None
        sign = 1
        for x in range(self.d):
            if not a[x]:
                continue
            for y in range(x):
                if b[y] and not (self.comm(x + 1) and self.comm(y + 1)):
                    if (a[x] * b[y]) & 1:
                        sign = -sign
        return sign, tuple(u + v for u, v in zip(a, b))

    def mul(self, p, q):
        out = {}
        for a, ca in p.items():
            for b, cb in q.items():
                s, mono = self.mono_mul(a, b)
                if not s:
                    continue
                v = out.get(mono, ZERO) + ca * cb * s
                if v:
                    out[mono] = v
                else:
                    out.pop(mono, None)
        return out

    def gen(self, i):
        return {tuple(1 if k == i - 1 else 0 for k in range(self.d)): ONE}

    def one(self):
        return {(0,) * self.d: ONE}

    def pair(self, i, j):
        return self.mul(self.gen(i), self.gen(j))

    def substitute(self, poly, images):
        out = {}
        for mono, c in poly.terms.items():
            term = {(0,) * self.d: c}
            for k, e in enumerate(mono):
                if e:
                    if images[k] is None:
                        raise ValueError("polynomial uses variables outside the folded bank")
                    for _ in range(e):
                        term = self.mul(term, images[k])
            for mm, v in term.items():
                nv = out.get(mm, ZERO) + v
                if nv:
                    out[mm] = nv
                else:
                    out.pop(mm, None)
        return out

    def render(self, elem):
        if not elem:
            return "0"
        parts = []
        for mono, c in sorted(elem.items()):
            w = "*".join(self.names[k] + (f"^{e}" if e > 1 else "") for k, e in enumerate(mono) if e)
            parts.append(f"({c.short()})*{w}" if w else c.short())
        return " + ".join(parts)


def fold_kernel_certificate(m, n, k, lam=Fraction(-1, 2)):
    """Compare ker(fold) on P_k(J) with P_{k-2} V_lambda.  Returns (dim_kernel, dim_ideal, equal)."""
    space = MatrixVarSpace(m, n)
    variant = "psi" if Fraction(lam) == Fraction(-1, 2) else "psi1"
    V = v_lambda_direct(space, lam)
    monos = space.monomials(k)
    cols = []
    target = None
    for mono in monos:
        img, target = fold(SuperPoly(space.ring, {mono: ONE}), space, variant, target)
        cols.append(img.terms if variant == "psi" else img)
    keys = sorted({key for c in cols for key in c}, key=repr)
    rows = [[cols[j].get(key, ZERO) for j in range(len(monos))] for key in keys]
    ker = nullspace(rows, len(monos)) if rows else [[ONE if c == j else ZERO for c in range(len(monos))]
                                                    for j in range(len(monos))]
    kb = SparseBasis()
    for v in ker:
        kb.add({monos[c]: x for c, x in enumerate(v) if x})
    ib = SparseBasis()
    if k >= 2:
        for mono in space.monomials(k - 2):
            base = SuperPoly(space.ring, {mono: ONE})
            for q in V.polys:
                ib.add((base * q).terms)
    equal = len(kb) == len(ib) and all(kb.contains(r) for _, r in ib.rows)
    return len(kb), len(ib), equal


def bessel_of_poly_vector(space, lam, coeffs, bank=None):
    """B_lambda(x) for x = sum c_ij l_ij given as {(i, j): c}."""
    out = DiffOperator.zero(space.ring)
    for (i, j), c in coeffs.items():
        if c:
            out = out + bessel_operator(space, lam, i, j, bank=bank).scale(c)
    return out


def bessel_two_e(space, lam, bank=None):
    """B_lambda(2e) = sum_ij beta^{ij} B_lambda(l_ij)."""
    coeffs = {}
    for i in range(1, space.d + 1):
        for j in range(1, space.d + 1):
            c = space.binv(i, j)
            if c and space.slot(i, j, bank) is not None:
                coeffs[(i, j)] = c
    return bessel_of_poly_vector(space, lam, coeffs, bank)


def _psi1_witness(space, V1):
    for q in V1.polys:
        img, tg = fold(q, space, "psi1")
        if img:
            return {"q": q.render(), "psi1(q)": tg.render(img)}
    return None


def verify_bessel(m, n, report=None, degree_cap=4, samples=300, seed=0):
    """All bessel-module checks for one grid point."""
    from .report import rng_for
    rep = report if report is not None else Report()
    tag = f"[{m},{n}]"
    space = MatrixVarSpace(m, n)
    bad = space.check_derivative_identity()
    rep.record("bessel", f"derivative_identity{tag}", "d_ij l^{kl} = delta_ik delta_jl + ...", bad is None,
               {"quadruple": bad})
    for lam in (Fraction(-1, 2), Fraction(1), Fraction(7, 3)):
        bad = None
        for i, j in space.pairs:
            a = bessel_operator(space, lam, i, j, "definitional")
            b = bessel_operator(space, lam, i, j, "explicit")
            c = bessel_operator(space, lam, i, j, "raised")
            if a != b or b != c:
                bad = {"i": i, "j": j, "definitional": a.render(), "explicit": b.render(), "raised": c.render()}
                break
        rep.record("bessel", f"bessel_constructions_equal{tag}[lambda={lam}]",
                   "B_lambda definitional = explicit", bad is None, bad)
    for lam in (Fraction(1), Fraction(-1, 2), Fraction(2)):
        bessel_supercommutativity(m, n, lam, rep)

    spaces = {}
    for lam in (Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(2), Fraction(-3)):
        a = v_lambda_direct(space, lam)
        b = v_lambda_lemma(space, lam)
        spaces[lam] = a
        ok = (a.dim_even, a.dim_odd) == (b.dim_even, b.dim_odd) and same_span(space, a.polys, b.polys)
        rep.record("bessel", f"v_lambda_solver{tag}[lambda={lam}]", "B_lambda Q = 0", ok,
                   {"direct": [a.dim_even, a.dim_odd], "solver": [b.dim_even, b.dim_odd]},
                   detail={"dim": [a.dim_even, a.dim_odd]})
        ev, od = vdim_formula(m, n, lam)
        ok = (a.dim_even, a.dim_odd) == (ev, od) and a.sdim == sdim_formula(m - 2 * n, lam)
        rep.record("bessel", f"v_lambda_dimension{tag}[lambda={lam}]", "dim V_lambda closed forms", ok,
                   {"computed": [a.dim_even, a.dim_odd], "formula": [str(ev), str(od)],
                    "sdim_formula": str(sdim_formula(m - 2 * n, lam))})
        if lam in (1, Fraction(-1, 2)):
            c = v_lambda_printed(space, lam)
            rep.record("bessel", f"v_lambda_spanning_set{tag}[lambda={lam}]", "span V_lambda",
                       same_span(space, a.polys, c.polys),
                       {"solver": [a.dim_even, a.dim_odd], "spanning_set": [c.dim_even, c.dim_odd]})

    # random quadratics: annihilated iff the coefficient tensor solves the lemma
    rng = rng_for(seed, "bessel", "lemma", m, n)
    ops = [bessel_operator(space, Fraction(-1, 2), a, b) for a, b in space.pairs]
    Vb = SparseBasis()
    for q in spaces[Fraction(-1, 2)].polys:
        Vb.add(q.terms)
    monos = space.monomials(2)
    bad = None
    for t in range(min(samples, 60)):
        q = space.ring.zero()
        if t % 2 == 0 and spaces[Fraction(-1, 2)].polys:
            for base in spaces[Fraction(-1, 2)].polys:
                q = q + base.scale(rng.randint(-3, 3))
        else:
            for mono in rng.sample(monos, min(3, len(monos))):
                q = q + SuperPoly(space.ring, {mono: Scalar.coerce(rng.randint(-3, 3))})
        killed = all(not op.apply(q) for op in ops)
        if killed != Vb.contains(q.terms):
            bad = {"Q": q.render(), "annihilated": killed}
            break
    rep.record("bessel", f"lemma_equivalence{tag}", "B_lambda Q = 0", bad is None, bad)

    # folding
    img, tg = fold(space.unit_poly().scale(2), space)
    rep.record("bessel", f"psi_two_e{tag}", "psi(2e) = R^2", img == tg.R2(),
               {"psi(2e)": img.render(), "R2": tg.R2().render()})
    bad = next((q.render() for q in spaces[Fraction(-1, 2)].polys if fold(q, space, target=tg)[0]), None)
    rep.record("bessel", f"psi_kills_V{tag}", "psi(V_{-1/2}) = 0", bad is None, {"q": bad})
    ok = True
    for k in range(0, degree_cap + 1, 2):
        for p in tg.monomials(k):
            if fold(unfold(p, space), space, target=tg)[0] != p:
                ok = False
                bad = p.render()
                break
    rep.record("bessel", f"fold_unfold{tag}", "psi(P(J)) = P_even", ok, {"p": bad})
    for k in range(2, min(degree_cap, 3) + 1):
        dk, di, eq = fold_kernel_certificate(m, n, k)
        rep.record("bessel", f"psi_kernel{tag}[k={k}]", "ker psi = I_{-1/2}", eq,
                   {"dim_kernel": dk, "dim_ideal": di}, detail={"dim": dk})
    B = bessel_two_e(space, Fraction(-1, 2))
    bad = None
    for k in range(1, min(degree_cap, 3) + 1):
        for mono in space.monomials(k):
            p = SuperPoly(space.ring, {mono: ONE})
            if fold(B.apply(p), space, target=tg)[0] != tg.Delta().apply(fold(p, space, target=tg)[0]):
                bad = p.render()
                break
        if bad:
            break
    rep.record("bessel", f"bessel_two_e_is_laplacian{tag}", "psi B(2e) = Delta psi", bad is None, {"p": bad})

    # psi1: only meaningful while no four distinct indices exist
    V1 = spaces[Fraction(1)]
    if space.d <= 3:
        w = _psi1_witness(space, V1)
        rep.record("bessel", f"psi1_kills_V1{tag}", "l_ij -> theta_i theta_j", w is None, w)
    else:
        rep.add(_skipped(f"psi1_kills_V1{tag}", _psi1_witness(space, V1)))

    sp2 = MatrixVarSpace(m, n, banks=("z", "w"))
    zw = sp2.pairing()
    bad = None
    for lam in (Fraction(1), Fraction(-1, 2), Fraction(7, 3)):
        for i, j in sp2.pairs:
            if bessel_operator(sp2, lam, i, j, bank="z").apply(zw) != sp2.var(i, j, "w").scale(-lam):
                bad = {"lambda": str(lam), "i": i, "j": j}
                break
    rep.record("bessel", f"bessel_on_pairing{tag}", "B_lambda(z_ij)(z|w) = -lambda w_ij", bad is None, bad)
    img, tg2 = fold(zw.scale(4), sp2)
    rhs = tg2.trace_product("z", "w") ** 2
    rep.record("bessel", f"psi_pairing{tag}", "psi(4(z|w)) = (z.w)^2", img == rhs,
               {"lhs": img.render(), "rhs": rhs.render()})
    return rep


def _skipped(check_id, witness):
    from .report import Check
    return Check("bessel", check_id, "l_ij -> theta_i theta_j", "skipped",
                 detail={"reason": "with four distinct indices the image of the three-term V_1 generator is an "
                                   "odd multiple of one monomial, so it cannot vanish",
                         "example": witness})
