"""Exact Gaussian elimination over Scalar entries.

Vectors are dicts {key: Scalar}; matrices are lists of such rows or dense
lists of lists.
"""
from .scalar import Scalar, ZERO, ONE


def _nonzero(x):
    return bool(x)


def rref(rows, ncols):
    """Row-reduce dense rows (lists of Scalars).  Returns (rref_rows, pivots)."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for k in range(r, len(A)):
            if A[k][c]:
                p = k
                break
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv if x else x for x in A[r]]
        for k in range(len(A)):
            if k != r and A[k][c]:
                f = A[k][c]
                A[k] = [a - f * b if b else a for a, b in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of {v : A v = 0} as dense lists."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows, ncols, rhs):
    """One solution x of A x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


class SparseBasis:
    """Incrementally built echelon basis of sparse vectors for membership
    tests and coordinate extraction."""

    def __init__(self):
        self.rows = []       # list of (pivot_key, vector dict)
        self.origin = []     # coordinates of each echelon row in terms of inserted vectors
        self.count = 0

    def _reduce(self, v):
        v = dict(v)
        coords = {}
        for (pk, row), org in zip(self.rows, self.origin):
            c = v.get(pk)
            if c:
                for k, x in row.items():
                    nv = v.get(k, ZERO) - c * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
                for k, x in org.items():
                    nc = coords.get(k, ZERO) + c * x
                    if nc:
                        coords[k] = nc
                    else:
                        coords.pop(k, None)
        return v, coords

    def add(self, v):
        """Insert v; returns True when it was independent."""
        rem, coords = self._reduce(v)
        rem = {k: x for k, x in rem.items() if x}
        if not rem:
            return False
        pk = min(rem, key=_sort_key)
        inv = rem[pk].inverse()
        row = {k: x * inv for k, x in rem.items()}
        org = {k: -x * inv for k, x in coords.items()}
        org[self.count] = org.get(self.count, ZERO) + inv
        # keep the basis fully reduced on the new pivot
        for idx, ((opk, orow), oorg) in enumerate(zip(self.rows, self.origin)):
            c = orow.get(pk)
            if c:
                for k, x in row.items():
                    nv = orow.get(k, ZERO) - c * x
                    if nv:
                        orow[k] = nv
                    else:
                        orow.pop(k, None)
                for k, x in org.items():
                    nv = oorg.get(k, ZERO) - c * x
                    if nv:
                        oorg[k] = nv
                    else:
                        oorg.pop(k, None)
        self.rows.append((pk, row))
        self.origin.append(org)
        self.count += 1
        return True

    def contains(self, v):
        rem, _ = self._reduce(v)
        return not any(rem.values())

    def coordinates(self, v):
        """Coefficients of v in terms of the inserted independent vectors, or None."""
        rem, coords = self._reduce(v)
        if any(rem.values()):
            return None
        return coords

    def __len__(self):
        return len(self.rows)


def _sort_key(k):
    return repr(k)


def leading_minors(matrix):
    """Exact leading principal minors of a square matrix."""
    n = len(matrix)
    A = [list(r) for r in matrix]
    minors = []
    det = ONE
    # fraction-free would be faster; plain elimination is exact here
    for k in range(n):
        if not A[k][k]:
            # a zero pivot means this leading minor is zero only if no row swap
            # within the leading block is allowed; compute directly instead
            minors.append(determinant([row[:k + 1] for row in matrix[:k + 1]]))
            for j in range(k + 1, n):
                minors.append(determinant([row[:j + 1] for row in matrix[:j + 1]]))
            return minors
        det = det * A[k][k]
        minors.append(det)
        inv = A[k][k].inverse()
        for r in range(k + 1, n):
            if A[r][k]:
                f = A[r][k] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[k])]
    return minors


def determinant(matrix):
    n = len(matrix)
    A = [list(r) for r in matrix]
    det = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det = det * A[c][c]
        inv = A[c][c].inverse()
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det
