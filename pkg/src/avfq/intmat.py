"""Exact integer matrix kernel: HNF, SNF, solving, inversion.

Matrices are lists of rows of Python ints. Lattices are row spans.
HNF here is row-style: H = U*M with U unimodular, H in row echelon form,
positive pivots, entries above each pivot reduced into [0, pivot).
"""

from __future__ import annotations

from fractions import Fraction

from .intarith import xgcd


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    Bc = list(zip(*B))
    return [[sum(A[i][t] * Bc[j][t] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(A, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in A]


def vec_mat(v, A):
    m = len(A[0])
    return [sum(v[i] * A[i][j] for i in range(len(v))) for j in range(m)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _row_sub(r, s, q):
    if q:
        for j in range(len(r)):
            r[j] -= q * s[j]


class RowLattice:
    """Incremental integer row-span in echelon form (sorted by pivot column)."""

    __slots__ = ("n", "rows", "pivcol")

    def __init__(self, n: int):
        self.n = n
        self.rows: list[list[int]] = []
        self.pivcol: list[int] = []

    def copy(self) -> "RowLattice":
        other = RowLattice(self.n)
        other.rows = [r[:] for r in self.rows]
        other.pivcol = self.pivcol[:]
        return other

    def _pivot_index(self, j: int) -> int | None:
        # binary search over sorted pivcol
        lo, hi = 0, len(self.pivcol)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.pivcol[mid] < j:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self.pivcol) and self.pivcol[lo] == j:
            return lo
        return None

    def add(self, vec) -> bool:
        """Add a vector to the span. Returns True if the span grew."""
        grew = False
        stack = [list(vec)]
        while stack:
            v = stack.pop()
            j = 0
            n = self.n
            while j < n:
                if v[j] == 0:
                    j += 1
                    continue
                k = self._pivot_index(j)
                if k is None:
                    if v[j] < 0:
                        v = [-x for x in v]
                    lo, hi = 0, len(self.pivcol)
                    while lo < hi:
                        mid = (lo + hi) // 2
                        if self.pivcol[mid] < j:
                            lo = mid + 1
                        else:
                            hi = mid
                    self.rows.insert(lo, v)
                    self.pivcol.insert(lo, j)
                    grew = True
                    break
                a = self.rows[k][j]
                b = v[j]
                if b % a == 0:
                    _row_sub(v, self.rows[k], b // a)
                else:
                    g, s, t = xgcd(a, b)
                    old = self.rows[k]
                    new = [s * old[i] + t * v[i] for i in range(n)]
                    self.rows[k] = new
                    _row_sub(v, new, b // g)
                    rem = [old[i] - (a // g) * new[i] for i in range(n)]
                    stack.append(rem)
                    grew = True
                # v[j] is now 0
            # fully reduced to zero: nothing to do
        return grew

    def contains(self, vec) -> bool:
        v = list(vec)
        for j in range(self.n):
            if v[j] == 0:
                continue
            k = self._pivot_index(j)
            if k is None or v[j] % self.rows[k][j] != 0:
                return False
            _row_sub(v, self.rows[k], v[j] // self.rows[k][j])
        return True

    def reduce(self, vec) -> list[int]:
        """Canonical representative of vec modulo the span."""
        v = list(vec)
        for k, j in enumerate(self.pivcol):
            if v[j]:
                _row_sub(v, self.rows[k], v[j] // self.rows[k][j])
        return v

    def solve(self, vec):
        """Integer coefficients y with vec = sum y_k * rows[k], or None."""
        v = list(vec)
        y = [0] * len(self.rows)
        for k, j in enumerate(self.pivcol):
            if v[j]:
                if v[j] % self.rows[k][j] != 0:
                    return None
                y[k] = v[j] // self.rows[k][j]
                _row_sub(v, self.rows[k], y[k])
        if any(v):
            return None
        return y

    def normalize(self) -> list[list[int]]:
        """Return the HNF basis (pivots positive, reduced above).

        Ascending pivot order: reducing by row k only touches columns at or
        right of pivcol[k], so earlier columns stay reduced.
        """
        for k in range(len(self.rows)):
            j = self.pivcol[k]
            if self.rows[k][j] < 0:
                self.rows[k] = [-x for x in self.rows[k]]
            for i in range(k):
                q = self.rows[i][j] // self.rows[k][j]
                _row_sub(self.rows[i], self.rows[k], q)
        return self.rows

    def rank(self) -> int:
        return len(self.rows)


def hnf(mat: list[list[int]]) -> list[list[int]]:
    """Row HNF basis (nonzero rows only) of the row span of mat."""
    if not mat:
        return []
    lat = RowLattice(len(mat[0]))
    for row in mat:
        lat.add(row)
    lat.normalize()
    return [r[:] for r in lat.rows]


def hnf_with_transform(mat: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Full HNF (zero rows kept) and unimodular U with U*mat = H."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    A = [list(mat[i]) + [1 if k == i else 0 for k in range(m)] for i in range(m)]
    r = 0
    for j in range(n):
        # gcd-eliminate column j among rows r..m-1
        while True:
            nz = [i for i in range(r, m) if A[i][j] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(A[i][j]), i))
            A[r], A[i0] = A[i0], A[r]
            done = True
            for i in range(r + 1, m):
                if A[i][j]:
                    q = A[i][j] // A[r][j]
                    _row_sub(A[i], A[r], q)
                    if A[i][j]:
                        done = False
            if done:
                break
        if r < m and A[r][j] != 0:
            if A[r][j] < 0:
                A[r] = [-x for x in A[r]]
            for i in range(r):
                q = A[i][j] // A[r][j]
                _row_sub(A[i], A[r], q)
            r += 1
    H = [row[:n] for row in A]
    U = [row[n:] for row in A]
    return H, U


def _diagonalize(A, U, V):
    m, n = len(A), len(A[0]) if A else 0

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for i in range(m):
            A[i][j], A[i][k] = A[i][k], A[i][j]
        for i in range(n):
            V[i][j], V[i][k] = V[i][k], V[i][j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    _row_sub(A[i], A[t], q)
                    _row_sub(U[i], U[t], q)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for i in range(m):
                        A[i][j] -= q * A[i][t]
                    for i in range(n):
                        V[i][j] -= q * V[i][t]
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return t


def snf_with_transforms(mat):
    """Smith normal form: returns (D, U, V) with U*mat*V = D diagonal,
    d1 | d2 | ..., U and V unimodular."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    A = [list(r) for r in mat]
    U = identity(m)
    V = identity(n)
    while True:
        rank = _diagonalize(A, U, V)
        bad = None
        for i in range(rank - 1):
            if A[i + 1][i + 1] % A[i][i] != 0:
                bad = i
                break
        if bad is None:
            return A, U, V
        # fold column bad+1 into column bad and rediagonalize
        j, k = bad, bad + 1
        for i in range(m):
            A[i][j] += A[i][k]
        for i in range(n):
            V[i][j] += V[i][k]


def diagonal_of(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def det_triangular(rows) -> int:
    d = 1
    for i, r in enumerate(rows):
        d *= r[i]
    return d


def invert_upper_triangular(H):
    """Exact inverse of a square upper-triangular matrix, as Fractions."""
    n = len(H)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        inv[i][i] = Fraction(1, H[i][i])
        for j in range(i + 1, n):
            s = Fraction(0)
            for k in range(i + 1, j + 1):
                if H[i][k]:
                    s += H[i][k] * inv[k][j]
            inv[i][j] = -s / H[i][i]
    return inv


def frac_mat_to_scaled(M):
    """Convert a Fraction matrix to (int matrix, positive denominator)."""
    den = 1
    for row in M:
        for x in row:
            den = den * x.denominator // __import__("math").gcd(den, x.denominator)
    return [[int(x * den) for x in row] for row in M], den


def solve_left_int(A, b):
    """Integer solution x of x*A = b, or None. A: m x n rows, b: n-vector."""
    m = len(A)
    H, U = hnf_with_transform(A)
    # solve y*H = b by forward substitution over echelon H
    y = [0] * m
    v = list(b)
    pivots = []
    for i in range(m):
        j = next((jj for jj in range(len(v)) if H[i][jj] != 0), None)
        pivots.append(j)
    for i in range(m):
        j = pivots[i]
        if j is None:
            continue
        if v[j] % H[i][j] != 0:
            return None
        q = v[j] // H[i][j]
        y[i] = q
        _row_sub(v, H[i], q)
    if any(v):
        return None
    return vec_mat(y, U)


def kernel_int(A):
    """Basis of {x : x*A = 0} over Z."""
    H, U = hnf_with_transform(A)
    out = []
    for i, row in enumerate(H):
        if not any(row):
            out.append(U[i])
    return out


def snf_diagonal(mat):
    """Elementary divisors only (no transform bookkeeping)."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    A = [list(r) for r in mat]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]

    def swap_cols(j, k):
        for i in range(m):
            A[i][j], A[i][k] = A[i][k], A[i][j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    _row_sub(A[i], A[t], q)
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for i in range(m):
                        A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
        t += 1
    diag = [abs(A[i][i]) for i in range(t)]
    # divisibility chain by gcd/lcm folding
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            from math import gcd
            g = gcd(a, b)
            diag[i], diag[j] = g, a // g * b
    return diag
