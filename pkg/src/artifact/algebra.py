"""Structure-constant models of JOSP(m|2n, beta), spo(2m|4n, Omega), gl(m|2n),
the TKK algebra of JOSP, the Heisenberg algebra and the quadratic algebra L2,
together with the explicit isomorphism phi and the Cayley transform."""
from fractions import Fraction
from functools import lru_cache

from .scalar import Scalar, ZERO, ONE, I as IU
from .superspace import metric_beta, metric_beta_inv
from .linalg import SparseBasis
from .report import Report, rng_for

HALF = Fraction(1, 2)


# -- sparse vectors -----------------------------------------------------------

def vadd(*vs):
    out = {}
    for v in vs:
        for k, c in v.items():
            nc = out.get(k, ZERO) + c
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
    return out


def vscale(v, c):
    c = Scalar.coerce(c)
    if not c:
        return {}
    return {k: x * c for k, x in v.items()}


def vsub(a, b):
    return vadd(a, vscale(b, -1))


def vclean(v):
    return {k: c for k, c in v.items() if c}


def vrender(v):
    if not v:
        return "0"
    return " + ".join(f"({c.short()})*{_label(k)}" for k, c in sorted(v.items(), key=lambda t: repr(t[0])))


def _label(k):
    if isinstance(k, tuple):
        return k[0] + "".join(f"_{x}" for x in k[1:])
    return str(k)


def _sgn(e):
    return -1 if e & 1 else 1


def check_for_rng(seed, *labels):
    return rng_for(seed, *labels)


class SuperLieAlgebra:
    """Basis labels, parities and a basis bracket; brackets extend bilinearly."""

    def __init__(self, name, basis, parity, basis_bracket):
        self.name = name
        self.basis = list(basis)
        self.parity_of = dict(parity)
        self._bb = basis_bracket
        self._cache = {}

    def bb(self, a, b):
        key = (a, b)
        hit = self._cache.get(key)
        if hit is None:
            hit = vclean(self._bb(a, b))
            self._cache[key] = hit
        return hit

    def bracket(self, x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                r = self.bb(a, b)
                if r:
                    out = vadd(out, vscale(r, ca * cb))
        return out

    def parity(self, x):
        ps = {self.parity_of[k] for k in x}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def super_jacobi(self, x, y, z):
        """(-1)^{|x||z|}[x,[y,z]] + cyclic, which must vanish."""
        px, py, pz = self.parity(x), self.parity(y), self.parity(z)
        t1 = vscale(self.bracket(x, self.bracket(y, z)), _sgn(px * pz))
        t2 = vscale(self.bracket(y, self.bracket(z, x)), _sgn(py * px))
        t3 = vscale(self.bracket(z, self.bracket(x, y)), _sgn(pz * py))
        return vadd(t1, t2, t3)

    def skew(self, x, y):
        """[x,y] + (-1)^{|x||y|}[y,x], which must vanish."""
        px, py = self.parity(x), self.parity(y)
        return vadd(self.bracket(x, y), vscale(self.bracket(y, x), _sgn(px * py)))

    def unit(self, label):
        return {label: ONE}

    def random_homogeneous(self, rng, parity=None, terms=3):
        pool = self.basis if parity is None else [b for b in self.basis if self.parity_of[b] == parity]
        if parity is None:
            p = self.parity_of[rng.choice(self.basis)]
            pool = [b for b in self.basis if self.parity_of[b] == p]
        out = {}
        for _ in range(terms):
            c = rng.randint(-3, 3)
            if c:
                out = vadd(out, {rng.choice(pool): Scalar(c)})
        if not out:
            out = {rng.choice(pool): ONE}
        return out


# -- matrices (supermatrix oracle) ---------------------------------------------

def mat_mul(A, B):
    """Sparse matrices as dicts {(r, c): Scalar}."""
    rows = {}
    for (r, c), x in B.items():
        rows.setdefault(r, []).append((c, x))
    out = {}
    for (r, k), a in A.items():
        for c, b in rows.get(k, ()):
            nv = out.get((r, c), ZERO) + a * b
            if nv:
                out[(r, c)] = nv
            else:
                out.pop((r, c), None)
    return out


def mat_supercommutator(A, B, pa, pb):
    return vsub(mat_mul(A, B), vscale(mat_mul(B, A), _sgn(pa * pb)))


# -- JOSP(m|2n, beta) -----------------------------------------------------------

class JOSP:
    def __init__(self, m, n):
        if (m, n) == (0, 0):
            raise ValueError("empty Jordan superalgebra")
        self.m, self.n = m, n
        self.d = m + 2 * n
        self.beta = [[Scalar(x) for x in row] for row in metric_beta(m, n)]
        self.beta_inv = [[Scalar(x) for x in row] for row in metric_beta_inv(m, n)]
        self.basis = [("l", i, j) for i in range(1, self.d + 1) for j in range(i, self.d + 1)
                      if i < j or self.p(i) == 0]
        self.parity_of = {b: (self.p(b[1]) + self.p(b[2])) & 1 for b in self.basis}
        self._prod = {}

    def p(self, i):
        return 0 if i <= self.m else 1

    def b(self, i, j):
        return self.beta[i - 1][j - 1]

    def binv(self, i, j):
        return self.beta_inv[i - 1][j - 1]

    def ell(self, i, j):
        """l_ij as a vector, with l_ji = (-1)^{|i||j|} l_ij and l_ii = 0 for odd i."""
        if i == j:
            return {} if self.p(i) else {("l", i, i): ONE}
        if i < j:
            return {("l", i, j): ONE}
        return {("l", j, i): Scalar(_sgn(self.p(i) * self.p(j)))}

    def parity(self, x):
        ps = {self.parity_of[k] for k in x}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def _basis_product(self, a, b):
        key = (a, b)
        if key in self._prod:
            return self._prod[key]
        _, i, j = a
        _, k, l = b
        p = self.p
        terms = [
            vscale(self.ell(i, l), self.b(j, k)),
            vscale(self.ell(j, l), self.b(i, k) * _sgn(p(i) * p(j))),
            vscale(self.ell(i, k), self.b(j, l) * _sgn(p(k) * p(l))),
            vscale(self.ell(j, k), self.b(i, l) * _sgn(p(i) * p(j) + p(k) * p(l))),
        ]
        out = vscale(vadd(*terms), HALF)
        self._prod[key] = out
        return out

    def product(self, x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                r = self._basis_product(a, b)
                if r:
                    out = vadd(out, vscale(r, ca * cb))
        return out

    def unit(self):
        """e = 1/2 sum_ij l_ij beta^{ij}."""
        out = {}
        for i in range(1, self.d + 1):
            for j in range(1, self.d + 1):
                c = self.binv(i, j)
                if c:
                    out = vadd(out, vscale(self.ell(i, j), c * HALF))
        return out

    def trace_element(self):
        """tr(l) = sum_ij 2^{-|i||j|} l_ij beta^{ij}."""
        out = {}
        for i in range(1, self.d + 1):
            for j in range(1, self.d + 1):
                c = self.binv(i, j)
                if c:
                    w = Fraction(1, 2) if self.p(i) * self.p(j) else 1
                    out = vadd(out, vscale(self.ell(i, j), c * w))
        return out

    # operators on J as {basis_label: image vector}
    def L(self, a):
        return {b: self.product(a, {b: ONE}) for b in self.basis}

    def op_apply(self, A, x):
        out = {}
        for b, c in x.items():
            img = A.get(b)
            if img:
                out = vadd(out, vscale(img, c))
        return out

    def op_compose(self, A, B):
        return {b: self.op_apply(A, B.get(b, {})) for b in self.basis}

    def op_add(self, A, B, cb=1):
        return {b: vadd(A.get(b, {}), vscale(B.get(b, {}), cb)) for b in self.basis}

    def op_scale(self, A, c):
        return {b: vscale(A.get(b, {}), c) for b in self.basis}

    def op_supercommutator(self, A, B, pa, pb):
        return self.op_add(self.op_compose(A, B), self.op_compose(B, A), -_sgn(pa * pb))

    def op_flat(self, A):
        out = {}
        for b, img in A.items():
            for k, c in img.items():
                if c:
                    out[(b, k)] = c
        return out

    def jordan_identity_defect(self, x, y, z):
        """Operator (-1)^{|x||z|}[L_x, L_{yz}] + cyclic, flattened; must vanish."""
        px, py, pz = self.parity(x), self.parity(y), self.parity(z)

        def term(a, b, c, pa, pb, pc):
            bc = self.product(b, c)
            return self.op_scale(self.op_supercommutator(self.L(a), self.L(bc), pa, (pb + pc) & 1), _sgn(pa * pc))

        t = self.op_add(term(x, y, z, px, py, pz), term(y, z, x, py, pz, px))
        t = self.op_add(t, term(z, x, y, pz, px, py))
        return self.op_flat(t)

    def matrix(self, x):
        """Supermatrix realisation in JGL(m|2n): l_ij = sum_k beta_jk E_ik + (-1)^{|i||j|} beta_ik E_jk."""
        out = {}
        for (_, i, j), c in x.items():
            for k in range(1, self.d + 1):
                if self.b(j, k):
                    out = vadd(out, {(i, k): c * self.b(j, k)})
                if self.b(i, k):
                    out = vadd(out, {(j, k): c * self.b(i, k) * _sgn(self.p(i) * self.p(j))})
            if i == j:
                pass
        return out

    def matrix_jordan_product(self, x, y):
        """x o y = 1/2 (xy + (-1)^{|x||y|} yx) in JGL."""
        X, Y = self.matrix(x), self.matrix(y)
        px, py = self.parity(x), self.parity(y)
        return vscale(vadd(mat_mul(X, Y), vscale(mat_mul(Y, X), _sgn(px * py))), HALF)

    def random_homogeneous(self, rng, terms=3):
        p = self.parity_of[rng.choice(self.basis)]
        pool = [b for b in self.basis if self.parity_of[b] == p]
        out = {}
        for _ in range(terms):
            c = rng.randint(-3, 3)
            if c:
                out = vadd(out, {rng.choice(pool): Scalar(c)})
        return out or {rng.choice(pool): ONE}


def jordan_product(J, x, y):
    return J.product(x, y)


# -- spo(2m|4n, Omega) -----------------------------------------------------------

def omega_matrix(m, n):
    N = 2 * m + 4 * n
    O = [[0] * N for _ in range(N)]
    for a in range(m):
        O[a][m + a] = -1
        O[m + a][a] = 1
    b1, b2, b3, b4 = 2 * m, 2 * m + n, 2 * m + 2 * n, 2 * m + 3 * n
    for a in range(n):
        O[b1 + a][b4 + a] = 1
        O[b2 + a][b3 + a] = -1
        O[b3 + a][b2 + a] = -1
        O[b4 + a][b1 + a] = 1
    return O


def _int_inverse(A):
    """Inverse of a signed permutation matrix (entries in {0, +-1})."""
    N = len(A)
    inv = [[0] * N for _ in range(N)]
    for i in range(N):
        for j in range(N):
            if A[i][j]:
                inv[j][i] = A[i][j]
    return inv


class Spo(SuperLieAlgebra):
    def __init__(self, m, n):
        if (m, n) == (0, 1):
            raise ValueError("(m, n) = (0, 1) is excluded")
        if (m, n) == (0, 0):
            raise ValueError("empty algebra")
        self.m, self.n = m, n
        self.N = 2 * m + 4 * n
        self.Om = [[Scalar(x) for x in row] for row in omega_matrix(m, n)]
        self.Om_inv = [[Scalar(x) for x in row] for row in _int_inverse(omega_matrix(m, n))]
        basis = [("U", i, j) for i in range(1, self.N + 1) for j in range(i, self.N + 1)
                 if i < j or self.p(i) == 0]
        parity = {b: (self.p(b[1]) + self.p(b[2])) & 1 for b in basis}
        super().__init__(f"spo({2 * m}|{4 * n})", basis, parity, self._basis_bracket)

    def p(self, i):
        return 0 if i <= 2 * self.m else 1

    def O(self, i, j):
        return self.Om[i - 1][j - 1]

    def U(self, i, j):
        if i == j:
            return {} if self.p(i) else {("U", i, i): ONE}
        if i < j:
            return {("U", i, j): ONE}
        return {("U", j, i): Scalar(_sgn(self.p(i) * self.p(j)))}

    def U_raised(self, i, j):
        """U^{ij} = sum_kl U_kl Omega^{ki} Omega^{lj}."""
        out = {}
        for k in range(1, self.N + 1):
            a = self.Om_inv[k - 1][i - 1]
            if not a:
                continue
            for l in range(1, self.N + 1):
                b = self.Om_inv[l - 1][j - 1]
                if b:
                    out = vadd(out, vscale(self.U(k, l), a * b))
        return out

    def _basis_bracket(self, a, b):
        _, i, j = a
        _, k, l = b
        p = self.p
        return vadd(
            vscale(self.U(i, l), self.O(j, k)),
            vscale(self.U(j, l), self.O(i, k) * _sgn(p(i) * p(j))),
            vscale(self.U(i, k), self.O(j, l) * _sgn(p(k) * p(l))),
            vscale(self.U(j, k), self.O(i, l) * _sgn(p(i) * p(j) + p(k) * p(l))),
        )

    # index maps
    def low(self, i):
        return i + self.m if i <= self.m else i + self.m + 2 * self.n

    def tilde(self, i):
        return i if i <= self.m else i + self.m

    def matrix(self, x):
        """U_ij = sum_k Omega_jk E_ik + (-1)^{|i||j|} Omega_ik E_jk (U_ii = 2 sum_k Omega_ik E_ik)."""
        out = {}
        for (_, i, j), c in x.items():
            for k in range(1, self.N + 1):
                if self.O(j, k):
                    out = vadd(out, {(i, k): c * self.O(j, k)})
                if self.O(i, k):
                    out = vadd(out, {(j, k): c * self.O(i, k) * _sgn(self.p(i) * self.p(j))})
        return out

    def sl2_triple(self):
        """The three elements of the short subalgebra, in U coordinates."""
        m, n = self.m, self.n
        lo, ti = self.low, self.tilde
        a = {}
        h = {}
        b = {}
        for i in range(1, m + 1):
            a = vadd(a, vscale(self.U(lo(i), lo(i)), -HALF))
            h = vadd(h, self.U(ti(i), lo(i)))
            b = vadd(b, vscale(self.U(ti(i), ti(i)), HALF))
        for i in range(m + 1, m + n + 1):
            a = vadd(a, vscale(self.U(lo(i), lo(i + n)), -1))
            h = vadd(h, self.U(ti(i), lo(i + n)), vscale(self.U(ti(i + n), lo(i)), -1))
            b = vadd(b, self.U(ti(i), ti(i + n)))
        return a, h, b

    def grading_spans(self):
        d = self.m + 2 * self.n
        rng = range(1, d + 1)
        minus = [self.U(self.low(i), self.low(j)) for i in rng for j in rng]
        zero = [self.U(self.tilde(i), self.low(j)) for i in rng for j in rng]
        plus = [self.U(self.tilde(i), self.tilde(j)) for i in rng for j in rng]
        return minus, zero, plus

    def kmcs_basis(self):
        """U_ij + U^{ij} for |i| = |j|."""
        out = []
        sb = SparseBasis()
        for i in range(1, self.N + 1):
            for j in range(i, self.N + 1):
                if self.p(i) != self.p(j):
                    continue
                v = vadd(self.U(i, j), self.U_raised(i, j))
                if v and sb.add(v):
                    out.append(v)
        return out


def lie_bracket(alg, X, Y):
    return alg.bracket(X, Y)


# -- gl(m|2n) ---------------------------------------------------------------------

class GL(SuperLieAlgebra):
    def __init__(self, m, n):
        self.m, self.n = m, n
        self.d = m + 2 * n
        basis = [("E", i, j) for i in range(1, self.d + 1) for j in range(1, self.d + 1)]
        parity = {b: (self.p(b[1]) + self.p(b[2])) & 1 for b in basis}
        super().__init__(f"gl({m}|{2 * n})", basis, parity, self._basis_bracket)

    def p(self, i):
        return 0 if i <= self.m else 1

    def _basis_bracket(self, a, b):
        _, i, j = a
        _, k, l = b
        out = {}
        if j == k:
            out = vadd(out, {("E", i, l): ONE})
        if l == i:
            s = _sgn((self.p(i) + self.p(j)) * (self.p(k) + self.p(l)))
            out = vadd(out, {("E", k, j): Scalar(-s)})
        return out


def gl_to_spo_printed(spo, i, j):
    """E_ij -> -U_{i~, j_} if exactly one of i, j lies in {m+1..m+n}, else U_{i~, j_}.

    Only a homomorphism when n = 0; see gl_to_spo."""
    m, n = spo.m, spo.n
    inI = lambda t: m + 1 <= t <= m + n
    sign = -1 if inI(i) != inI(j) else 1
    return vscale(spo.U(spo.tilde(i), spo.low(j)), sign)


def gl_to_spo(spo, i, j):
    """E_ij -> +-sum_k beta_kj U_{i~, k_}, sign as in gl_to_spo_printed.

    The beta contraction is trivial on the even block, so this agrees with the
    uncontracted form whenever n = 0."""
    m, n = spo.m, spo.n
    inI = lambda t: m + 1 <= t <= m + n
    sign = -1 if inI(i) != inI(j) else 1
    beta = metric_beta(m, n)
    out = {}
    for k in range(1, m + 2 * n + 1):
        b = beta[k - 1][j - 1]
        if b:
            out = vadd(out, vscale(spo.U(spo.tilde(i), spo.low(k)), sign * b))
    return out


def gl_map_defect(spo, gl, f):
    """First basis pair on which f fails to be a homomorphism, or None."""
    for x in gl.basis:
        for y in gl.basis:
            lhs = {}
            for k, c in gl.bb(x, y).items():
                lhs = vadd(lhs, vscale(f(spo, k[1], k[2]), c))
            rhs = spo.bracket(f(spo, x[1], x[2]), f(spo, y[1], y[2]))
            if vsub(lhs, rhs):
                return {"X": _label(x), "Y": _label(y), "map([X,Y])": vrender(lhs), "[mapX,mapY]": vrender(rhs)}
    return None


# -- TKK(JOSP) ----------------------------------------------------------------------

class TKK(SuperLieAlgebra):
    """J^- + istr(J) + J^+ with istr coordinatised by L_{l_ij} and a chosen
    basis of inner derivations [L_a, L_b]."""

    def __init__(self, m, n):
        if (m, n) == (0, 1):
            raise ValueError("(m, n) = (0, 1) is excluded")
        J = JOSP(m, n)
        self.J = J
        self.m, self.n = m, n
        self._istr = SparseBasis()
        self.istr_labels = []
        self.istr_ops = {}
        self.istr_parity = {}
        self.inner_pairs = {}
        for b in J.basis:
            op = J.L({b: ONE})
            lab = ("L",) + b[1:]
            self._istr.add(J.op_flat(op))
            self.istr_labels.append(lab)
            self.istr_ops[lab] = op
            self.istr_parity[lab] = J.parity_of[b]
        k = 0
        target = J.d * J.d
        for a in J.basis:
            for b in J.basis:
                if len(self.istr_labels) == target:
                    break
                pa, pb = J.parity_of[a], J.parity_of[b]
                op = J.op_supercommutator(J.L({a: ONE}), J.L({b: ONE}), pa, pb)
                flat = J.op_flat(op)
                if flat and self._istr.add(flat):
                    lab = ("D", k)
                    k += 1
                    self.istr_labels.append(lab)
                    self.istr_ops[lab] = op
                    self.istr_parity[lab] = (pa + pb) & 1
                    self.inner_pairs[lab] = (a, b)
        basis = [("-",) + b[1:] for b in J.basis] + self.istr_labels + [("+",) + b[1:] for b in J.basis]
        parity = {}
        for b in J.basis:
            parity[("-",) + b[1:]] = J.parity_of[b]
            parity[("+",) + b[1:]] = J.parity_of[b]
        parity.update(self.istr_parity)
        super().__init__(f"TKK(JOSP({m}|{2 * n}))", basis, parity, self._basis_bracket)
        self.e = J.unit()

    # conversions
    def jvec(self, label):
        return {("l",) + label[1:]: ONE}

    def as_minus(self, x):
        return {("-",) + k[1:]: c for k, c in x.items()}

    def as_plus(self, x):
        return {("+",) + k[1:]: c for k, c in x.items()}

    def istr_coords(self, op):
        flat = self.J.op_flat(op)
        coords = self._istr.coordinates(flat)
        if coords is None:
            raise ValueError("operator is not in istr(J)")
        return {self.istr_labels[k]: c for k, c in coords.items() if c}

    def istr_operator(self, v):
        """Operator on J of an istr coordinate vector."""
        J = self.J
        out = {b: {} for b in J.basis}
        for lab, c in v.items():
            out = J.op_add(out, self.istr_ops[lab], c)
        return out

    def L_elem(self, a):
        """L_a for a in J, in TKK coordinates."""
        return {("L",) + k[1:]: c for k, c in a.items()}

    def inner_elem(self, a, b):
        """[L_a, L_b] in TKK coordinates."""
        J = self.J
        op = J.op_supercommutator(J.L(a), J.L(b), J.parity(a), J.parity(b))
        return self.istr_coords(op)

    def _basis_bracket(self, a, b):
        J = self.J
        ka, kb = a[0], b[0]
        pa, pb = self.parity_of[a], self.parity_of[b]
        if ka in "-+" and kb == ka:
            return {}
        if ka == "+" and kb == "-":
            x, u = self.jvec(a), self.jvec(b)
            Lx, Lu = J.L(x), J.L(u)
            op = J.op_add(J.op_scale(J.L(J.product(x, u)), 2),
                          J.op_scale(J.op_supercommutator(Lx, Lu, pa, pb), 2))
            return self.istr_coords(op)
        if ka == "-" and kb == "+":
            return vscale(self._basis_bracket(b, a), -_sgn(pa * pb))
        if ka in "LD" and kb in "LD":
            op = J.op_supercommutator(self.istr_ops[a], self.istr_ops[b], pa, pb)
            return self.istr_coords(op)
        if ka in "LD":
            A = self.istr_ops[a]
            x = self.jvec(b)
            if kb == "+":
                return self.as_plus(J.op_apply(A, x))
            # [A, u^-] = -(A# u)^-, A# = 2 L_{A e} - A
            Ae = J.op_apply(A, self.e)
            sharp = J.op_add(J.op_scale(J.L(Ae), 2), A, -1)
            return self.as_minus(vscale(J.op_apply(sharp, x), -1))
        # b in istr, a in J^{+-}
        return vscale(self._basis_bracket(b, a), -_sgn(pa * pb))

    # distinguished elements
    def e_minus(self):
        return self.as_minus(self.e)

    def e_plus(self):
        return self.as_plus(self.e)

    def two_L_e(self):
        return vscale(self.L_elem(self.e), 2)


def phi_four_term(spo, J, i, j, r, s):
    """phi(4[L_{l_ij}, L_{l_rs}])."""
    p = J.p
    lo, ti = spo.low, spo.tilde
    b = J.b

    def pair(x, y):
        # U_{x~, y_} - (-1)^{|y||x|} U_{y~, x_}
        return vsub(spo.U(ti(x), lo(y)), vscale(spo.U(ti(y), lo(x)), _sgn(p(y) * p(x))))

    return vadd(
        vscale(pair(i, s), b(j, r)),
        vscale(pair(j, r), b(i, s) * _sgn(p(i) * p(j) + p(r) * p(s))),
        vscale(pair(i, r), b(j, s) * _sgn(p(r) * p(s))),
        vscale(pair(j, s), b(i, r) * _sgn(p(i) * p(j))),
    )


class Phi:
    """The explicit isomorphism TKK(JOSP(m|2n)) -> spo(2m|4n)."""

    def __init__(self, tkk, spo):
        self.tkk = tkk
        self.spo = spo
        self._img = {}
        J = tkk.J
        for lab in tkk.basis:
            self._img[lab] = self._basis_image(lab)

    def _basis_image(self, lab):
        spo, J = self.spo, self.tkk.J
        lo, ti = spo.low, spo.tilde
        kind = lab[0]
        if kind == "-":
            _, i, j = lab
            return vscale(spo.U(lo(i), lo(j)), -1)
        if kind == "+":
            _, i, j = lab
            return spo.U(ti(i), ti(j))
        if kind == "L":
            _, i, j = lab
            v = vadd(spo.U(ti(i), lo(j)), vscale(spo.U(ti(j), lo(i)), _sgn(J.p(i) * J.p(j))))
            return vscale(v, HALF)
        a, b = self.tkk.inner_pairs[lab]
        return vscale(phi_four_term(spo, J, a[1], a[2], b[1], b[2]), Fraction(1, 4))

    def __call__(self, x):
        out = {}
        for lab, c in x.items():
            out = vadd(out, vscale(self._img[lab], c))
        return out

    def inverse_map(self):
        """Coordinates of U basis elements in TKK coordinates (phi is a bijection)."""
        sb = SparseBasis()
        labs = []
        for lab in self.tkk.basis:
            if sb.add(self._img[lab]):
                labs.append(lab)
        if len(labs) != len(self.spo.basis):
            raise ValueError("phi is not bijective")
        return sb, labs

    def inverse(self, v):
        if not hasattr(self, "_inv"):
            self._inv = self.inverse_map()
        sb, labs = self._inv
        coords = sb.coordinates(v)
        if coords is None:
            raise ValueError("not in the image of phi")
        return {labs[k]: c for k, c in coords.items() if c}


def tkk_phi(m, n, x):
    tkk = TKK(m, n)
    return Phi(tkk, Spo(m, n))(x)


# -- Cayley transform -------------------------------------------------------------------

class Cayley:
    """c = exp(i/2 ad e^-) exp(i ad e^+) on TKK(J_C), given piecewise."""

    def __init__(self, tkk):
        self.tkk = tkk
        J = tkk.J
        self._img = {}
        for lab in tkk.basis:
            kind = lab[0]
            if kind in "-+":
                a = tkk.jvec(lab)
                L = tkk.L_elem(a)
                img = vadd(tkk.as_minus(vscale(a, Fraction(1, 4))),
                           vscale(L, IU if kind == "-" else -IU),
                           tkk.as_plus(a))
            else:
                op = tkk.istr_ops[lab]
                a = J.op_apply(op, tkk.e)
                inner = vsub({lab: ONE}, tkk.L_elem(a))
                img = vadd(tkk.as_minus(vscale(a, IU * Fraction(1, 4))), inner,
                           tkk.as_plus(vscale(a, -IU)))
            self._img[lab] = img
        self._inv = None

    def __call__(self, x):
        out = {}
        for lab, c in x.items():
            out = vadd(out, vscale(self._img[lab], c))
        return out

    def inverse(self, x):
        if self._inv is None:
            sb = SparseBasis()
            labs = []
            for lab in self.tkk.basis:
                sb.add(self._img[lab])
                labs.append(lab)
            self._inv = (sb, labs)
        sb, labs = self._inv
        coords = sb.coordinates(x)
        if coords is None:
            raise ValueError("not in the image of c")
        return {labs[k]: c for k, c in coords.items() if c}


def exp_ad(alg, x, y, coeff):
    """exp(coeff * ad x)(y) for ad-nilpotent x."""
    out = dict(y)
    term = dict(y)
    k = 0
    while True:
        k += 1
        term = vscale(alg.bracket(x, term), Scalar(coeff) * Fraction(1, k) if not isinstance(coeff, Scalar) else coeff * Fraction(1, k))
        if not term:
            return out
        out = vadd(out, term)
        if k > 10:
            raise ValueError("ad is not nilpotent")


def cayley_by_exponentials(tkk, x):
    """Independent route: exp(i/2 ad e^-) exp(i ad e^+) x."""
    y = exp_ad(tkk, tkk.e_plus(), x, IU)
    return exp_ad(tkk, tkk.e_minus(), y, IU * HALF)


def cayley_apply(tkk, x, inverse=False):
    c = Cayley(tkk)
    return c.inverse(x) if inverse else c(x)


def cayley_sl2(tkk):
    """f^+ = c^{-1}(e^+), f^- = c^{-1}(e^-), h = c^{-1}(2 L_e)."""
    c = Cayley(tkk)
    return c.inverse(tkk.e_plus()), c.inverse(tkk.e_minus()), c.inverse(tkk.two_L_e())


# -- k_c and u(m|2n, beta') -------------------------------------------------------------

def kc_basis(spo):
    """Pairs (k_c element in U coordinates, u(m|2n, beta') matrix)."""
    m, n = spo.m, spo.n
    d = m + 2 * n
    J = JOSP(m, n)
    p, b = J.p, J.b
    lo, ti = spo.low, spo.tilde
    out = []

    def mat(i, j, sign, scale):
        M = {}
        for k in range(1, d + 1):
            if b(j, k):
                M = vadd(M, {(i, k): b(j, k)})
            if b(i, k):
                M = vadd(M, {(j, k): b(i, k) * sign})
        return vscale(M, scale)

    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            s = _sgn(p(i) * p(j))
            out.append((vsub(spo.U(ti(i), lo(j)), vscale(spo.U(ti(j), lo(i)), s)), mat(i, j, -s, ONE)))
    for i in range(1, d + 1):
        if p(i):
            M = {}
            for k in range(1, d + 1):
                if b(i, k):
                    M = vadd(M, {(i, k): 2 * b(i, k)})
            out.append((vscale(spo.U(ti(i), lo(i)), 2), M))
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            s = _sgn(p(i) * p(j))
            out.append((vadd(spo.U(lo(i), lo(j)), spo.U(ti(i), ti(j))), mat(i, j, s, IU)))
    for i in range(1, d + 1):
        if not p(i):
            M = {}
            for k in range(1, d + 1):
                if b(i, k):
                    M = vadd(M, {(i, k): 2 * b(i, k) * IU})
            out.append((vadd(spo.U(lo(i), lo(i)), spo.U(ti(i), ti(i))), M))
    return out


def matrix_parity(M, m):
    ps = {((0 if r <= m else 1) + (0 if c <= m else 1)) & 1 for (r, c) in M}
    return ps.pop() if len(ps) == 1 else (0 if not ps else None)


# -- Heisenberg and L2 --------------------------------------------------------------------

class Heisenberg(SuperLieAlgebra):
    """h(2m|4n, Omega): [e_i, e_j] = Omega_ij Z, Z central."""

    def __init__(self, m, n):
        self.m, self.n = m, n
        self.N = 2 * m + 4 * n
        self.Om = [[Scalar(x) for x in row] for row in omega_matrix(m, n)]
        basis = [("e", a) for a in range(1, self.N + 1)] + [("Z",)]
        parity = {("e", a): (0 if a <= 2 * m else 1) for a in range(1, self.N + 1)}
        parity[("Z",)] = 0
        super().__init__(f"h({2 * m}|{4 * n})", basis, parity, self._basis_bracket)

    def _basis_bracket(self, a, b):
        if a[0] == "Z" or b[0] == "Z":
            return {}
        c = self.Om[a[1] - 1][b[1] - 1]
        return {("Z",): c} if c else {}


class Quadratic(SuperLieAlgebra):
    """L2 spanned by V_ij = e_i e_j + (-1)^{|i||j|} e_j e_i with
    [V_ij, V_kl] = 2(Omega_jk V_il + ...)."""

    def __init__(self, m, n):
        self.spo = Spo(m, n)
        sp = self.spo
        basis = [("V",) + b[1:] for b in sp.basis]
        parity = {("V",) + b[1:]: sp.parity_of[b] for b in sp.basis}
        super().__init__(f"L2({2 * m}|{4 * n})", basis, parity, self._basis_bracket)

    def V(self, i, j):
        return {("V",) + k[1:]: c for k, c in self.spo.U(i, j).items()}

    def _basis_bracket(self, a, b):
        r = self.spo.bb(("U",) + a[1:], ("U",) + b[1:])
        return {("V",) + k[1:]: c * 2 for k, c in r.items()}

    def to_spo(self, x):
        """V_ij -> 2 U_ij."""
        return {("U",) + k[1:]: c * 2 for k, c in x.items()}


# -- verification -----------------------------------------------------------------------------

SUPPORTED = "(m, n) != (0, 1)"


def _pairs_or_sample(basis, rng, samples, exhaustive):
    if exhaustive:
        return [(a, b) for a in basis for b in basis]
    return [(rng.choice(basis), rng.choice(basis)) for _ in range(samples)]


def verify_structure(which, m, n, seed=0, samples=300, exhaustive=None, report=None):
    """Run one structural identity family; returns a Report."""
    if (m, n) == (0, 1):
        raise ValueError("(m, n) = (0, 1) is excluded")
    rep = report if report is not None else Report()
    rng = rng_for(seed, "algebra", which, m, n)
    small = (m, n) in ((1, 1), (2, 0), (1, 0), (0, 2)) if exhaustive is None else exhaustive
    if which == "super_jacobi":
        g = Spo(m, n)
        _jacobi(rep, g, rng, samples, (m, n) in ((1, 1), (2, 0), (1, 0)) if exhaustive is None else exhaustive,
                "super_jacobi", "Super Jacobi identity")
        # skew-supersymmetry and the matrix oracle for the bracket formula
        bad = None
        for a, b in _pairs_or_sample(g.basis, rng, samples, small):
            if g.skew({a: ONE}, {b: ONE}):
                bad = {"X": _label(a), "Y": _label(b)}
                break
        rep.record("algebra", f"spo_skew[{m},{n}]", "[X,Y] = -(-1)^{|X||Y|} [Y,X]", bad is None, bad)
        bad = None
        sb = SparseBasis()
        mats = {}
        for bl in g.basis:
            mats[bl] = g.matrix({bl: ONE})
            sb.add(mats[bl])
        for a, b in _pairs_or_sample(g.basis, rng, samples, small):
            lhs = g.matrix(g.bb(a, b))
            rhs = mat_supercommutator(mats[a], mats[b], g.parity_of[a], g.parity_of[b])
            if vsub(lhs, rhs):
                bad = {"X": _label(a), "Y": _label(b), "formula": vrender(lhs), "matrix": vrender(rhs)}
                break
        rep.record("algebra", f"spo_matrix_oracle[{m},{n}]", "[X,Y] = XY - (-1)^{|X||Y|} YX", bad is None, bad)
    elif which == "jordan_identity":
        J = JOSP(m, n)
        exh = (m, n) in ((1, 1), (2, 0), (1, 0)) if exhaustive is None else exhaustive
        triples = ([(a, b, c) for a in J.basis for b in J.basis for c in J.basis] if exh else
                   [(rng.choice(J.basis), rng.choice(J.basis), rng.choice(J.basis)) for _ in range(samples)])
        bad = None
        for a, b, c in triples:
            d = J.jordan_identity_defect({a: ONE}, {b: ONE}, {c: ONE})
            if d:
                bad = {"x": _label(a), "y": _label(b), "z": _label(c)}
                break
        if bad is None and not exh:
            for _ in range(max(1, samples // 10)):
                x, y, z = (J.random_homogeneous(rng) for _ in range(3))
                if J.jordan_identity_defect(x, y, z):
                    bad = {"x": vrender(x), "y": vrender(y), "z": vrender(z)}
                    break
        rep.record("algebra", f"jordan_identity[{m},{n}]", "Jordan identity", bad is None, bad,
                   detail={"triples": len(triples), "exhaustive": exh})
        # supercommutativity, unit, matrix oracle
        bad = None
        e = J.unit()
        for a in J.basis:
            if vsub(J.product(e, {a: ONE}), {a: ONE}):
                bad = {"unit_fails_on": _label(a)}
                break
        rep.record("algebra", f"jordan_unit[{m},{n}]", "e . x = x", bad is None, bad)
        bad = None
        for a in J.basis:
            for b in J.basis:
                x, y = {a: ONE}, {b: ONE}
                if vsub(J.product(x, y), vscale(J.product(y, x), _sgn(J.parity_of[a] * J.parity_of[b]))):
                    bad = {"x": _label(a), "y": _label(b), "issue": "supercommutativity"}
                    break
                if vsub(J.matrix(J.product(x, y)), J.matrix_jordan_product(x, y)):
                    bad = {"x": _label(a), "y": _label(b), "issue": "matrix oracle"}
                    break
            if bad:
                break
        rep.record("algebra", f"jordan_product_oracle[{m},{n}]", "2 l_ij . l_kl = beta_jk l_il + ...", bad is None, bad)
        # trace element relation: 2e - tr(l) = sum_{odd i<j} l_ij beta^{ij}
        rel = vsub(vscale(e, 2), J.trace_element())
        expect = {}
        for i in range(m + 1, J.d + 1):
            for j in range(i + 1, J.d + 1):
                if J.binv(i, j):
                    expect = vadd(expect, vscale(J.ell(i, j), J.binv(i, j)))
        rep.record("algebra", f"trace_vs_unit[{m},{n}]", "str(L_l) vs tr(l)", not vsub(rel, expect),
                   {"2e-tr": vrender(rel), "expected": vrender(expect)})
    elif which == "grading":
        _grading(rep, m, n)
    elif which == "tkk_phi":
        _tkk_checks(rep, m, n, rng, samples, True if exhaustive is None else exhaustive)
    elif which == "kc_unitary_isom":
        _kc_check(rep, m, n)
    elif which == "cayley":
        _cayley_checks(rep, m, n, rng, samples, small)
    elif which == "heisenberg_rep_axioms":
        _heisenberg_checks(rep, m, n, rng, samples, small)
    else:
        raise ValueError(f"unknown structure check {which!r}")
    return rep


def _jacobi(rep, g, rng, samples, exhaustive, tag, anchor):
    bad = None
    count = 0
    if exhaustive:
        B = g.basis
        for a in B:
            for b in B:
                for c in B:
                    count += 1
                    if g.super_jacobi({a: ONE}, {b: ONE}, {c: ONE}):
                        bad = {"x": _label(a), "y": _label(b), "z": _label(c)}
                        break
                if bad:
                    break
            if bad:
                break
    else:
        for _ in range(samples):
            count += 1
            x, y, z = (g.random_homogeneous(rng) for _ in range(3))
            if g.super_jacobi(x, y, z):
                bad = {"x": vrender(x), "y": vrender(y), "z": vrender(z)}
                break
    rep.record("algebra", f"{tag}[{g.name}]", anchor, bad is None, bad,
               detail={"triples": count, "exhaustive": exhaustive})


def _grading(rep, m, n):
    g = Spo(m, n)
    a, h, b = g.sl2_triple()
    ok_sl2 = (not vsub(g.bracket(h, a), vscale(a, -2)) and not vsub(g.bracket(h, b), vscale(b, 2))
              and not vsub(g.bracket(b, a), h))
    rep.record("algebra", f"sl2_triple[{m},{n}]", "[h,e] = 2e, [h,f] = -2f, [e,f] = h", ok_sl2,
               {"[h,a]": vrender(g.bracket(h, a)), "[h,b]": vrender(g.bracket(h, b)), "[b,a]": vrender(g.bracket(b, a))})
    minus, zero, plus = g.grading_spans()
    found = {}
    bad = None
    for name, span, ev in (("U_{i_,j_}", minus, -2), ("U_{i~,j_}", zero, 0), ("U_{i~,j~}", plus, 2)):
        for v in span:
            if v and vsub(g.bracket(h, v), vscale(v, ev)):
                bad = {"span": name, "element": vrender(v), "ad_h": vrender(g.bracket(h, v))}
                break
        found[name] = ev
    sb = SparseBasis()
    for v in minus + zero + plus:
        if v:
            sb.add(v)
    complete = len(sb) == len(g.basis)
    rep.record("algebra", f"three_grading[{m},{n}]", "g = g_- + g_0 + g_+",
               bad is None and complete, bad or {"spanned": len(sb), "dim": len(g.basis)},
               detail={"eigenvalues": found})


def _tkk_checks(rep, m, n, rng, samples, exhaustive):
    tkk = TKK(m, n)
    g = Spo(m, n)
    phi = Phi(tkk, g)
    J = tkk.J
    # well-definedness of the four-term formula on every pair
    bad = None
    for a in J.basis:
        for b in J.basis:
            coords = tkk.inner_elem({a: ONE}, {b: ONE})
            lhs = phi(vscale(coords, 4))
            rhs = phi_four_term(g, J, a[1], a[2], b[1], b[2])
            if vsub(lhs, rhs):
                bad = {"a": _label(a), "b": _label(b), "via_basis": vrender(lhs), "formula": vrender(rhs)}
                break
        if bad:
            break
    rep.record("algebra", f"phi_inner_formula[{m},{n}]", "phi(4[L_{l_ij}, L_{l_rs}]) = ...", bad is None, bad)
    try:
        phi.inverse_map()
        bij = True
        wit = None
    except ValueError as exc:
        bij = False
        wit = {"error": str(exc)}
    rep.record("algebra", f"phi_bijective[{m},{n}]", "TKK(JOSP(m|2n,beta)) = spo(2m|4n,Omega)", bij, wit,
               detail={"dim": len(tkk.basis)})
    bad = None
    pairs = _pairs_or_sample(tkk.basis, rng, samples, exhaustive)
    for a, b in pairs:
        lhs = phi(tkk.bb(a, b))
        rhs = g.bracket(phi({a: ONE}), phi({b: ONE}))
        if vsub(lhs, rhs):
            bad = {"X": _label(a), "Y": _label(b), "phi([X,Y])": vrender(lhs), "[phiX,phiY]": vrender(rhs)}
            break
    rep.record("algebra", f"phi_homomorphism[{m},{n}]", "TKK(JOSP(m|2n,beta)) = spo(2m|4n,Omega)", bad is None, bad,
               detail={"pairs": len(pairs), "exhaustive": exhaustive})
    a, h, b = g.sl2_triple()
    ok = (not vsub(phi(tkk.e_minus()), a) and not vsub(phi(tkk.two_L_e()), h) and not vsub(phi(tkk.e_plus()), b))
    rep.record("algebra", f"phi_sl2[{m},{n}]", "{e^-, 2L_e, e^+}", ok,
               {"phi(e-)": vrender(phi(tkk.e_minus())), "phi(2Le)": vrender(phi(tkk.two_L_e())),
                "phi(e+)": vrender(phi(tkk.e_plus()))})
    # gl(m|2n) dictionary
    gl = GL(m, n)
    bad = gl_map_defect(g, gl, gl_to_spo)
    printed = gl_map_defect(g, gl, gl_to_spo_printed)
    rep.record("algebra", f"gl_dictionary[{m},{n}]", "E_ij -> -U_{i~,j_} if i in I, j not in I", bad is None, bad,
               detail={"uncontracted_form_is_hom": printed is None})
    # istr(J) = L(J) + Inn(J) has dimension (m+2n)^2 and Inn basis matches
    inn = []
    d = m + 2 * n
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            inn.append(vsub(g.U(g.tilde(i), g.low(j)), vscale(g.U(g.tilde(j), g.low(i)), _sgn(J.p(i) * J.p(j)))))
    for i in range(1, d + 1):
        if J.p(i):
            inn.append(vscale(g.U(g.tilde(i), g.low(i)), 2))
    img = SparseBasis()
    for lab in tkk.istr_labels:
        if lab[0] == "D":
            img.add(phi({lab: ONE}))
    ok = all(img.contains(v) for v in inn) and len(img) == len(inn)
    rep.record("algebra", f"inn_basis[{m},{n}]", "Inn(J) = osp(m|2n,beta)", ok,
               {"inn_dim_from_tkk": len(img), "listed": len(inn)})


def _kc_check(rep, m, n):
    g = Spo(m, n)
    pairs = kc_basis(g)
    sb = SparseBasis()
    for x, _ in pairs:
        sb.add(x)
    bad = None
    if len(sb) != len(pairs):
        bad = {"issue": "listed k_c elements are dependent"}
    else:
        for a, (xa, Ma) in enumerate(pairs):
            for b, (xb, Mb) in enumerate(pairs):
                br = g.bracket(xa, xb)
                coords = sb.coordinates(br)
                if coords is None:
                    bad = {"issue": "k_c not closed", "a": a, "b": b}
                    break
                lhs = {}
                for k, c in coords.items():
                    lhs = vadd(lhs, vscale(pairs[k][1], c))
                pa, pb = g.parity(xa), g.parity(xb)
                rhs = mat_supercommutator(Ma, Mb, pa, pb)
                if vsub(lhs, rhs):
                    bad = {"a": vrender(xa), "b": vrender(xb), "image_of_bracket": vrender(lhs), "bracket_of_images": vrender(rhs)}
                    break
            if bad:
                break
    rep.record("algebra", f"kc_unitary_isom[{m},{n}]", "k_c = u(m|2n,beta')", bad is None, bad)


def _cayley_checks(rep, m, n, rng, samples, exhaustive):
    tkk = TKK(m, n)
    c = Cayley(tkk)
    bad = None
    for lab in tkk.basis:
        x = {lab: ONE}
        if vsub(c(x), cayley_by_exponentials(tkk, x)):
            bad = {"X": _label(lab), "piecewise": vrender(c(x)), "exponentials": vrender(cayley_by_exponentials(tkk, x))}
            break
    rep.record("algebra", f"cayley_piecewise_vs_exp[{m},{n}]", "c(X) piecewise = exp form", bad is None, bad)
    bad = None
    for a, b in _pairs_or_sample(tkk.basis, rng, samples, exhaustive):
        lhs = c(tkk.bb(a, b))
        rhs = tkk.bracket(c({a: ONE}), c({b: ONE}))
        if vsub(lhs, rhs):
            bad = {"X": _label(a), "Y": _label(b)}
            break
    rep.record("algebra", f"cayley_automorphism[{m},{n}]", "c = exp(i/2 ad e^-) exp(i ad e^+)", bad is None, bad)
    bad = None
    for lab in tkk.basis:
        x = {lab: ONE}
        if vsub(c.inverse(c(x)), x):
            bad = {"X": _label(lab)}
            break
    rep.record("algebra", f"cayley_inverse[{m},{n}]", "c o c^{-1} = id", bad is None, bad)
    # k_c -> istr: (a, I, -a) -> I + 2i L_a
    J = tkk.J
    bad = None
    for b in J.basis:
        a = {b: ONE}
        for lab in tkk.istr_labels:
            if lab[0] != "D":
                continue
            x = vadd(tkk.as_minus(a), {lab: ONE}, tkk.as_plus(vscale(a, -1)))
            expect = vadd({lab: ONE}, vscale(tkk.L_elem(a), 2 * IU))
            if vsub(c(x), expect):
                bad = {"a": _label(b), "I": _label(lab), "c(x)": vrender(c(x)), "expected": vrender(expect)}
                break
        if bad:
            break
    rep.record("algebra", f"cayley_kc[{m},{n}]", "(a, I, -a) -> I + 2i L_a", bad is None, bad)


def _heisenberg_checks(rep, m, n, rng, samples, exhaustive):
    h = Heisenberg(m, n)
    _jacobi(rep, h, rng, samples, True, "heisenberg_jacobi", "[e_i, e_j] = Omega_ij Z")
    ok = all(not h.bb(("Z",), b) for b in h.basis)
    rep.record("algebra", f"heisenberg_central[{m},{n}]", "Z is central", ok, {"issue": "Z not central"})
    q = Quadratic(m, n)
    g = q.spo
    bad = None
    for a, b in _pairs_or_sample(q.basis, rng, samples, exhaustive):
        lhs = q.to_spo(q.bb(a, b))
        rhs = g.bracket(q.to_spo({a: ONE}), q.to_spo({b: ONE}))
        if vsub(lhs, rhs):
            bad = {"X": _label(a), "Y": _label(b)}
            break
    rep.record("algebra", f"L2_isomorphism[{m},{n}]", "V_ij -> 2U_ij", bad is None, bad)
