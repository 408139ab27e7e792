"""Univariate polynomials with exact integer/rational coefficients.

Coefficients are stored lowest degree first. Rational polynomials are a
primitive integer polynomial together with a positive denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


class IntPoly:
    """Integer polynomial; immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = _trim([int(c) for c in coeffs])

    @staticmethod
    def x_power(k: int) -> "IntPoly":
        return IntPoly([0] * k + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly([])
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPoly":
        c = self.content()
        if c in (0, 1):
            return self
        return IntPoly([x // c for x in self.coeffs])

    def monic_divmod(self, d: "IntPoly"):
        """Exact division by a monic divisor over Z: (quotient, remainder)."""
        assert d.lc() == 1
        r = list(self.coeffs)
        n = d.degree
        q = [0] * max(len(r) - n, 0)
        for i in range(len(r) - 1, n - 1, -1):
            c = r[i]
            if c:
                q[i - n] = c
                for j, dj in enumerate(d.coeffs):
                    r[i - n + j] -= c * dj
        return IntPoly(q), IntPoly(r[:n])

    def pseudo_rem(self, d: "IntPoly") -> "IntPoly":
        """lc(d)^(deg-degd+1) * self mod d."""
        r = self
        n = d.degree
        ld = d.lc()
        steps = r.degree - n + 1
        if steps <= 0:
            return r
        for _ in range(steps):
            if r.degree < n:
                r = r * ld
                continue
            c = r.lc()
            r = r * ld - (d * c).shift(r.degree - n)
        return r

    def evaluate(self, x):
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def reverse(self) -> "IntPoly":
        return IntPoly(tuple(reversed(self.coeffs)))

    def compose_neg(self) -> "IntPoly":
        """p(-x)."""
        return IntPoly([(-1) ** i * c for i, c in enumerate(self.coeffs)])

    def shift_arg(self, a: int) -> "IntPoly":
        """p(x + a) by Horner."""
        out = IntPoly([])
        for c in reversed(self.coeffs):
            out = out * IntPoly([a, 1]) + IntPoly([c])
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(terms).replace("+ -", "- ")


def gcd_q(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Q (returned with positive leading coefficient)."""
    a, b = f.primitive(), g.primitive()
    if a.is_zero():
        return b if b.lc() >= 0 else -b
    if b.is_zero():
        return a if a.lc() >= 0 else -a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = a.pseudo_rem(b).primitive()
        a, b = b, r
    return a if a.lc() > 0 else -a


def is_squarefree(f: IntPoly) -> bool:
    return gcd_q(f, f.derivative()).degree == 0


def sylvester_matrix(f: IntPoly, g: IntPoly):
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(mat) -> int:
    """Fraction-free determinant of an integer matrix."""
    A = [list(r) for r in mat]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def resultant(f: IntPoly, g: IntPoly) -> int:
    if f.is_zero() or g.is_zero():
        return 0
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    return bareiss_det(sylvester_matrix(f, g))


def discriminant(f: IntPoly) -> int:
    n = f.degree
    r = resultant(f, f.derivative())
    s = (-1) ** (n * (n - 1) // 2)
    assert r % f.lc() == 0
    return s * (r // f.lc())


class QPoly:
    """Rational polynomial as primitive integer polynomial over a denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: IntPoly, den: int = 1):
        if den == 0:
            raise ZeroDivisionError
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num.content(), den)
        if g > 1:
            num = IntPoly([c // g for c in num.coeffs])
            den //= g
        self.num = num
        self.den = den

    @staticmethod
    def from_fractions(coeffs) -> "QPoly":
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return QPoly(IntPoly([int(c * den) for c in fr]), den)

    def fractions(self):
        return [Fraction(c, self.den) for c in self.num.coeffs]

    @property
    def degree(self):
        return self.num.degree

    def __eq__(self, other):
        return self.num == other.num and self.den == other.den

    def __repr__(self):
        if self.den == 1:
            return repr(self.num)
        return f"({self.num!r})/{self.den}"
