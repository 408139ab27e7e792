"""Etale Q-algebras Q[x]/(f) with exact element arithmetic.

Elements are integer coordinate vectors over a common denominator in the
power basis. Since f is monic integral, products of integral vectors stay
integral, which keeps the hot paths in pure int arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .intarith import is_prime_power
from .intmat import invert_upper_triangular  # noqa: F401  (re-export convenience)
from .intpoly import IntPoly, QPoly, gcd_q
from .polyfactor import factor_over_q


class ZeroDivisor(ArithmeticError):
    def __init__(self, msg, component=None):
        super().__init__(msg)
        self.component = component


class EtaleAlgebra:
    """Q[x]/(f) for a monic squarefree integer polynomial f."""

    def __init__(self, f: IntPoly, factors: list[IntPoly] | None = None):
        if f.lc() != 1:
            raise ValueError("defining polynomial must be monic")
        self.poly = f
        self.degree = f.degree
        n = self.degree
        # reduction table: coords of x^(n+k) mod f for k = 0..n-2
        red = []
        cur = [-c for c in f.coeffs[:-1]]
        red.append(list(cur))
        for _ in range(n - 2):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for j in range(n):
                    nxt[j] -= top * f.coeffs[j]
            cur = nxt
            red.append(list(cur))
        self._red = red
        self._factors = factors
        self._cache: dict = {}

    # -- construction of elements ------------------------------------------
    def zero(self) -> "AlgElem":
        return AlgElem(self, (0,) * self.degree, 1)

    def one(self) -> "AlgElem":
        return AlgElem(self, (1,) + (0,) * (self.degree - 1), 1)

    def gen(self) -> "AlgElem":
        if self.degree == 1:
            return AlgElem(self, (-self.poly.coeffs[0],), 1)
        return AlgElem(self, (0, 1) + (0,) * (self.degree - 2), 1)

    def element(self, coeffs) -> "AlgElem":
        """Element from rational coordinates in the power basis."""
        fr = [Fraction(c) for c in coeffs]
        fr += [Fraction(0)] * (self.degree - len(fr))
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return AlgElem(self, tuple(int(c * den) for c in fr), den)

    def from_int(self, k: int) -> "AlgElem":
        return AlgElem(self, (k,) + (0,) * (self.degree - 1), 1)

    def from_poly(self, g: IntPoly, den: int = 1) -> "AlgElem":
        num = list(g.coeffs)
        while len(num) > self.degree:
            # reduce mod f
            top = num.pop()
            d = len(num)
            if top:
                for j, c in enumerate(self.poly.coeffs[:-1]):
                    num[d - self.degree + j] -= top * c
        num += [0] * (self.degree - len(num))
        return AlgElem(self, tuple(num), den)

    # -- raw vector arithmetic ---------------------------------------------
    def mul_vec(self, a, b):
        """Product of two integer coordinate vectors, reduced mod f."""
        n = self.degree
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = prod[:n]
        for k in range(n - 1):
            c = prod[n + k]
            if c:
                row = self._red[k]
                for j in range(n):
                    out[j] += c * row[j]
        return out

    # -- components ----------------------------------------------------------
    @property
    def components(self) -> list[IntPoly]:
        if self._factors is None:
            self._factors = [g for g, _ in factor_over_q(self.poly)]
        return self._factors

    def component_project(self, x: "AlgElem", t: int) -> "AlgElem":
        """Image of x in the component Q[x]/h_t."""
        comp = self.component_algebra(t)
        g = IntPoly(x.num)
        _, r = g.monic_divmod(self.components[t])
        return comp.from_poly(r, x.den).normalized()

    def component_algebra(self, t: int) -> "EtaleAlgebra":
        key = ("compalg", t)
        if key not in self._cache:
            self._cache[key] = EtaleAlgebra(self.components[t])
        return self._cache[key]

    def idempotents(self) -> list["AlgElem"]:
        """CRT idempotents e_t, one per component."""
        if "idem" not in self._cache:
            out = []
            for t, ht in enumerate(self.components):
                rest = IntPoly([1])
                for s, hs in enumerate(self.components):
                    if s != t:
                        rest = rest * hs
                # invert rest mod ht over Q
                inv = _poly_invmod_q(rest, ht)
                e = _poly_mulmod_q(inv, QPoly(rest), self.poly)
                out.append(self.element(e.fractions()))
            assert sum(out[1:], out[0]) == self.one() if out else True
            self._cache["idem"] = out
        return self._cache["idem"]

    def __repr__(self):
        return f"EtaleAlgebra({self.poly!r})"


def _poly_invmod_q(g: IntPoly, f: IntPoly) -> QPoly:
    """Inverse of g mod f over Q (f irreducible or gcd(g,f)=1)."""
    r0, r1 = [Fraction(c) for c in f.coeffs], [Fraction(c) for c in g.coeffs]
    s0, s1 = [Fraction(0)], [Fraction(1)]

    def trim(a):
        while a and a[-1] == 0:
            a.pop()
        return a

    def sub_scaled(a, b, q, shift):
        for i, c in enumerate(b):
            a[i + shift] -= q * c
        return trim(a)

    r0, r1 = trim(r0), trim(r1)
    while len(r1) > 1:
        if not r1:
            raise ZeroDivisor("zero divisor")
        # divide r0 by r1
        q = [Fraction(0)] * (len(r0) - len(r1) + 1) if len(r0) >= len(r1) else []
        while len(r0) >= len(r1) and r0:
            c = r0[-1] / r1[-1]
            q[len(r0) - len(r1)] = c
            r0 = sub_scaled(r0, r1, c, len(r0) - len(r1))
        # s update: s0 - q*s1
        qs = [Fraction(0)] * (len(q) + len(s1) - 1) if q and s1 else []
        for i, qi in enumerate(q):
            for j, sj in enumerate(s1):
                qs[i + j] += qi * sj
        ns = list(s0) + [Fraction(0)] * max(0, len(qs) - len(s0))
        for i, c in enumerate(qs):
            ns[i] -= c
        r0, r1 = list(r1), r0
        s0, s1 = s1, trim(ns)
    if not r1:
        raise ZeroDivisor("zero divisor")
    c = r1[0]
    return QPoly.from_fractions([x / c for x in s1])


def _poly_mulmod_q(a: QPoly, b: QPoly, f: IntPoly) -> QPoly:
    prod = a.num * b.num
    _, r = prod.monic_divmod(f)
    return QPoly(r, a.den * b.den)


class CoordAlgebra:
    """An etale algebra presented by structure constants on a fixed basis.

    Used to run lattice-heavy computations in coordinates where the maximal
    order is the identity lattice, keeping all entries index-bounded."""

    def __init__(self, mult_mats, one_coords):
        self.degree = len(mult_mats)
        self.mult_mats = mult_mats  # M_i[j][k]: coord k of b_i * b_j
        self._one = tuple(one_coords)
        self._cache: dict = {}

    def zero(self):
        return AlgElem(self, (0,) * self.degree, 1)

    def one(self):
        return AlgElem(self, self._one, 1)

    def from_int(self, k: int):
        return AlgElem(self, tuple(c * k for c in self._one), 1)

    def element(self, coeffs):
        fr = [Fraction(c) for c in coeffs]
        fr += [Fraction(0)] * (self.degree - len(fr))
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return AlgElem(self, tuple(int(c * den) for c in fr), den)

    def mul_vec(self, a, b):
        n = self.degree
        out = [0] * n
        for i, ai in enumerate(a):
            if ai:
                Mi = self.mult_mats[i]
                for j, bj in enumerate(b):
                    if bj:
                        c = ai * bj
                        row = Mi[j]
                        for k in range(n):
                            if row[k]:
                                out[k] += c * row[k]
        return out

    def __repr__(self):
        return f"CoordAlgebra(degree={self.degree})"


class AlgElem:
    """Element of an EtaleAlgebra: integer vector over a denominator."""

    __slots__ = ("alg", "num", "den")

    def __init__(self, alg: EtaleAlgebra, num, den: int = 1):
        self.alg = alg
        self.num = tuple(num)
        self.den = den

    def normalized(self) -> "AlgElem":
        g = math.gcd(self.den, *self.num) if any(self.num) else self.den
        if g > 1:
            return AlgElem(self.alg, tuple(c // g for c in self.num), self.den // g)
        return self

    def coords(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def __eq__(self, other):
        a, b = self.normalized(), other.normalized()
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        a = self.normalized()
        return hash((a.num, a.den))

    def is_zero(self) -> bool:
        return not any(self.num)

    def __add__(self, other):
        d = math.gcd(self.den, other.den)
        la, lb = other.den // d, self.den // d
        return AlgElem(
            self.alg,
            tuple(a * la + b * lb for a, b in zip(self.num, other.num)),
            self.den * la,
        ).normalized()

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgElem(self.alg, tuple(-c for c in self.num), self.den)

    def __mul__(self, other):
        if isinstance(other, int):
            return AlgElem(self.alg, tuple(c * other for c in self.num), self.den).normalized()
        if isinstance(other, Fraction):
            return AlgElem(
                self.alg,
                tuple(c * other.numerator for c in self.num),
                self.den * other.denominator,
            ).normalized()
        return AlgElem(
            self.alg, self.alg.mul_vec(self.num, other.num), self.den * other.den
        ).normalized()

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.alg.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mult_matrix(self):
        """(M, den): row i of M = den * coords of (basis_i * self)."""
        n = self.alg.degree
        if isinstance(self.alg, EtaleAlgebra):
            rows = []
            cur = list(self.num)
            rows.append(list(cur))
            for _ in range(n - 1):
                cur = self.alg.mul_vec([0, 1] + [0] * (n - 2), cur)
                rows.append(list(cur))
            return rows, self.den
        rows = []
        for i in range(n):
            e = [1 if k == i else 0 for k in range(n)]
            rows.append(self.alg.mul_vec(e, list(self.num)))
        return rows, self.den

    def minpoly(self) -> QPoly:
        """Monic minimal polynomial over Q."""
        from .intmat import kernel_int

        n = self.alg.degree
        pows = [self.alg.one()]
        for _ in range(n):
            pows.append(pows[-1] * self)
        for d in range(1, n + 1):
            # solve c_0 + c_1 x + ... + x^d = 0
            rows = []
            den = 1
            for e in pows[: d + 1]:
                den = den * e.den // math.gcd(den, e.den)
            for e in pows[: d + 1]:
                s = den // e.den
                rows.append([c * s for c in e.num])
            ker = kernel_int(rows)
            for v in ker:
                if v[d] != 0:
                    return QPoly.from_fractions([Fraction(c, v[d]) for c in v])
        raise AssertionError("minpoly not found")

    def charpoly(self) -> QPoly:
        """Characteristic polynomial of multiplication by self."""
        M, den = self.mult_matrix()
        # char poly of M/den via char poly of M scaled
        cp = _charpoly_int(M)  # monic, integer coefficients
        n = len(M)
        coeffs = [Fraction(cp[i], den ** (n - i)) for i in range(n + 1)]
        return QPoly.from_fractions(coeffs)

    def norm(self) -> Fraction:
        cp = self.charpoly()
        n = self.alg.degree
        c0 = cp.fractions()[0]
        return c0 if n % 2 == 0 else -c0

    def trace(self) -> Fraction:
        M, den = self.mult_matrix()
        return Fraction(sum(M[i][i] for i in range(len(M))), den)

    def inverse(self) -> "AlgElem":
        if not isinstance(self.alg, EtaleAlgebra):
            # generic basis: solve z * M_num = den * 1
            M, den = self.mult_matrix()
            one = self.alg.one()
            target = [Fraction(c * den, one.den) for c in one.num]
            sol = _solve_rational_rows(M, target)
            if sol is None:
                raise ZeroDivisor("zero divisor")
            return self.alg.element(sol)
        g = IntPoly(self.num)
        try:
            inv = _poly_invmod_q(g, self.alg.poly)
        except ZeroDivisor:
            comp = None
            for t in range(len(self.alg.components)):
                if self.alg.component_project(self, t).is_zero():
                    comp = t
                    break
            raise ZeroDivisor(
                f"zero divisor: element vanishes on component {comp}", comp
            ) from None
        return self.alg.element([c * self.den for c in inv.fractions()])

    def is_unit_in_algebra(self) -> bool:
        return self.norm() != 0

    def __repr__(self):
        return f"AlgElem({self.num}, den={self.den})"


def _charpoly_int(M) -> list[int]:
    """Characteristic polynomial det(xI - M) of an integer matrix.

    Faddeev-LeVerrier is fraction-prone; use exact Hessenberg-free expansion
    via the Berkowitz algorithm (division-free).
    """
    n = len(M)
    # Berkowitz: iteratively build the char poly via Toeplitz products
    polys = [[1]]  # char poly of the empty matrix
    for k in range(1, n + 1):
        A = [row[:k] for row in M[:k]]
        # Toeplitz column: c = (1, -a_kk, -(R*S), -(R*A*S), ...)
        akk = A[k - 1][k - 1]
        R = A[k - 1][: k - 1]
        S = [row[k - 1] for row in A[: k - 1]]
        Asub = [row[: k - 1] for row in A[: k - 1]]
        col = [1, -akk]
        vec = S
        for _ in range(k - 1):
            col.append(-sum(R[i] * vec[i] for i in range(k - 1)))
            vec = [sum(Asub[i][j] * vec[j] for j in range(k - 1)) for i in range(k - 1)]
        prev = polys[-1]
        cur = [0] * (k + 1)
        for i, pc in enumerate(prev):
            for j, cc in enumerate(col):
                if i + j <= k:
                    cur[i + j] += pc * cc
        polys.append(cur)
    cp = polys[-1]
    # cp is [1, c1, ..., cn] with leading first; convert to ascending
    return list(reversed(cp))


def _solve_rational_rows(rows, target):
    """Solve y * rows = target over Q."""
    m = len(rows)
    n = len(rows[0])
    A = [[Fraction(c) for c in r] + [Fraction(1 if k == i else 0) for k in range(m)]
         for i, r in enumerate(rows)]
    t = [Fraction(c) for c in target]
    used = []
    for j in range(n):
        piv = next((i for i in range(len(used), m) if A[i][j] != 0), None)
        if piv is None:
            continue
        r = len(used)
        A[r], A[piv] = A[piv], A[r]
        d = A[r][j]
        A[r] = [c / d for c in A[r]]
        for i in range(m):
            if i != r and A[i][j] != 0:
                c = A[i][j]
                A[i] = [x - c * y for x, y in zip(A[i], A[r])]
        used.append(j)
        if len(used) == m:
            break
    y = [Fraction(0)] * m
    t = list(t)
    for r, j in enumerate(used):
        if t[j] != 0:
            c = t[j]
            for k in range(n):
                t[k] -= c * A[r][k]
            for k in range(m):
                y[k] += c * A[r][n + k]
    if any(t):
        return None
    return y
