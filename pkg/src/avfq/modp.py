"""Dense linear algebra over F_p and small finite fields GF(p^f)."""

from __future__ import annotations

from .intarith import inv_mod, is_prime
from .intpoly import IntPoly
from .polyfactor import factor_mod_p, pdivmod, pmul, psub


def rref_mod(rows, p):
    """Reduced row echelon form mod p. Returns (rref_rows, pivot_columns)."""
    A = [[c % p for c in r] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = inv_mod(A[r][j], p)
        A[r] = [c * inv % p for c in A[r]]
        for i in range(m):
            if i != r and A[i][j]:
                c = A[i][j]
                A[i] = [(A[i][k] - c * A[r][k]) % p for k in range(n)]
        pivots.append(j)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def kernel_mod(rows, p):
    """Basis of {x : x*rows = 0} over F_p (x are row vectors)."""
    # kernel of the transpose action: work with columns
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    # solve x * A = 0  <=>  A^T x^T = 0
    At = [[rows[i][j] % p for i in range(m)] for j in range(n)]
    R, piv = rref_mod(At, p)
    free = [j for j in range(m) if j not in piv]
    out = []
    for fj in free:
        v = [0] * m
        v[fj] = 1
        for i, pj in enumerate(piv):
            v[pj] = (-R[i][fj]) % p
        out.append(v)
    return out


def solve_mod(rows, b, p):
    """One solution x of x*rows = b mod p, or None."""
    m = len(rows)
    n = len(rows[0]) if m else len(b)
    # solve A^T x^T = b^T with augmented column
    At = [[rows[i][j] % p for i in range(m)] + [b[j] % p] for j in range(n)]
    R, piv = rref_mod(At, p)
    x = [0] * m
    for i, pj in enumerate(piv):
        if pj == m:
            return None  # inconsistent
        x[pj] = R[i][m]
    return x


def matmul_mod(A, B, p):
    n, k, m = len(A), len(B), len(B[0])
    Bc = list(zip(*B))
    return [[sum(A[i][t] * Bc[j][t] for t in range(k)) % p for j in range(m)] for i in range(n)]


def find_irreducible(p: int, f: int) -> IntPoly:
    """A monic irreducible polynomial of degree f over F_p (deterministic)."""
    if f == 1:
        return IntPoly([0, 1])
    # deterministic sweep of monic polynomials
    from itertools import product

    for tail in product(range(p), repeat=f):
        coeffs = list(tail) + [1]
        if coeffs[0] == 0:
            continue
        g = IntPoly(coeffs)
        facs = factor_mod_p(g, p)
        if len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree == f:
            return g
    raise AssertionError("no irreducible polynomial found")


class SmallField:
    """GF(p^f) with elements as tuples of ints mod p (coefficients in theta)."""

    def __init__(self, p: int, minpoly: IntPoly):
        assert is_prime(p)
        self.p = p
        self.f = minpoly.degree
        self.minpoly = [c % p for c in minpoly.coeffs]
        self.card = p**self.f

    def zero(self):
        return (0,) * self.f

    def one(self):
        return (1,) + (0,) * (self.f - 1)

    def gen(self):
        if self.f == 1:
            return ((-self.minpoly[0]) % self.p,)
        return (0, 1) + (0,) * (self.f - 2)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = pmul(list(a), list(b), self.p)
        _, r = pdivmod(prod, self.minpoly, self.p)
        r = list(r) + [0] * (self.f - len(r))
        return tuple(r)

    def scalar(self, c: int):
        return (c % self.p,) + (0,) * (self.f - 1)

    def inv(self, a):
        # extended euclid in F_p[x]
        if not any(a):
            raise ZeroDivisionError
        r0, r1 = list(self.minpoly), list(a)
        s0, s1 = [], [1]
        while _deg(r1) > 0:
            q, r = pdivmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, psub(s0, pmul(q, s1, self.p), self.p)
            if not r1:
                raise ZeroDivisionError
        c = inv_mod(r1[0], self.p)
        out = [x * c % self.p for x in s1]
        out += [0] * (self.f - len(out))
        return tuple(out[: self.f])

    def elements(self):
        from itertools import product

        for tup in product(range(self.p), repeat=self.f):
            yield tup

    def nonzero_elements(self):
        for e in self.elements():
            if any(e):
                yield e


def _deg(a):
    return len(a) - 1


def subspaces_over_field(F: SmallField, d: int, dims=None):
    """All subspaces of F^d in RREF form; yields lists of F-row-vectors.

    dims: optional iterable restricting the subspace dimensions.
    """
    from itertools import combinations, product

    wanted = set(range(d + 1)) if dims is None else set(dims)
    if 0 in wanted:
        yield []
    for k in range(1, d + 1):
        if k not in wanted:
            continue
        for pivots in combinations(range(d), k):
            free_positions = []
            for r in range(k):
                for c in range(d):
                    if c > pivots[r] and c not in pivots:
                        free_positions.append((r, c))
            for values in product(list(F.elements()), repeat=len(free_positions)):
                rows = [[F.zero()] * d for _ in range(k)]
                for r in range(k):
                    rows[r][pivots[r]] = F.one()
                for (r, c), v in zip(free_positions, values):
                    rows[r][c] = v
                yield [list(row) for row in rows]
