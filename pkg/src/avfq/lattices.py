"""Full-rank Z-lattices in an etale algebra: ideals, orders, colon arithmetic.

A lattice is (1/den) * rowspan_Z(basis) with basis an upper-triangular HNF
integer matrix. All ideal arithmetic (sum, product, intersection, colon,
index) reduces to exact integer linear algebra on these bases.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .etale import AlgElem, EtaleAlgebra
from .intmat import RowLattice, snf_with_transforms

__all__ = ["Lattice", "Order", "lattice_from_elements"]


def _tri_det(rows) -> int:
    d = 1
    for i in range(len(rows)):
        d *= rows[i][i]
    return d


def _hnf_rows(rows, n, modulus=None):
    """HNF of the row span; if modulus D is given (a positive integer with
    D*Z^n inside the span), the D*e_i rows are inserted first to keep every
    intermediate entry bounded."""
    lat = RowLattice(n)
    if modulus:
        D = abs(modulus)
        for i in range(n):
            lat.add([D if k == i else 0 for k in range(n)])
    for r in rows:
        lat.add(lat.reduce(list(r)) if modulus else r)
    lat.normalize()
    return [tuple(r) for r in lat.rows]


def _basis_mult_rows(alg, b):
    """Rows: coordinates of (basis_i * b) for the algebra's basis."""
    from .etale import EtaleAlgebra

    n = alg.degree
    if isinstance(alg, EtaleAlgebra):
        cur = list(b)
        mb = [cur]
        unit = [0, 1] + [0] * (n - 2)
        for _ in range(n - 1):
            cur = alg.mul_vec(unit, cur)
            mb.append(cur)
        return mb
    return [alg.mul_vec([1 if k == i else 0 for k in range(n)], list(b))
            for i in range(n)]


class Lattice:
    __slots__ = ("alg", "basis", "den", "_cache")

    def __init__(self, alg: EtaleAlgebra, basis, den: int = 1,
                 _normalized=False, _modulus=None):
        self.alg = alg
        if not _normalized:
            rows = _hnf_rows([list(r) for r in basis], alg.degree,
                             modulus=_modulus)
            if len(rows) != alg.degree:
                raise ValueError("lattice is not full rank")
            g = den
            for r in rows:
                for c in r:
                    if c:
                        g = math.gcd(g, c)
            if g > 1:
                rows = [tuple(c // g for c in r) for r in rows]
                den //= g
            basis, den = rows, den
        self.basis = tuple(tuple(r) for r in basis)
        self.den = den
        self._cache = {}

    # -- constructors --------------------------------------------------------
    @staticmethod
    def from_elements(alg: EtaleAlgebra, elems) -> "Lattice":
        den = 1
        for e in elems:
            den = den * e.den // math.gcd(den, e.den)
        rows = [[c * (den // e.den) for c in e.num] for e in elems]
        return Lattice(alg, rows, den)

    def copy_with(self, rows, den) -> "Lattice":
        return Lattice(self.alg, rows, den)

    # -- basic accessors -----------------------------------------------------
    def elements(self) -> list[AlgElem]:
        return [AlgElem(self.alg, r, self.den).normalized() for r in self.basis]

    def __eq__(self, other):
        return self.den == other.den and self.basis == other.basis

    def __hash__(self):
        return hash((self.den, self.basis))

    def key(self):
        return (self.den, self.basis)

    def det_fraction(self) -> Fraction:
        d = 1
        for i in range(self.alg.degree):
            d *= self.basis[i][i]
        return Fraction(d, self.den ** self.alg.degree)

    # -- membership ----------------------------------------------------------
    def _solve_int(self, v):
        """Integer y with y*basis = v, or None."""
        n = self.alg.degree
        v = list(v)
        y = [0] * n
        for j in range(n):
            piv = self.basis[j][j]
            if v[j] % piv != 0:
                return None
            c = v[j] // piv
            y[j] = c
            if c:
                row = self.basis[j]
                for k in range(j, n):
                    v[k] -= c * row[k]
        if any(v):
            return None
        return y

    def contains(self, e: AlgElem) -> bool:
        v = [c * self.den for c in e.num]
        y = self._solve_int(v)
        if y is None:
            return False
        return all(c % e.den == 0 for c in y)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(e) for e in other.elements())

    def coords_of(self, e: AlgElem):
        """Rational coordinates of e w.r.t. this basis, or None."""
        v = [c * self.den for c in e.num]
        y = self._solve_int(v)
        if y is None:
            return None
        return [Fraction(c, e.den) for c in y]

    # -- arithmetic ----------------------------------------------------------
    def add(self, other: "Lattice") -> "Lattice":
        d = math.gcd(self.den, other.den)
        la, lb = other.den // d, self.den // d
        rows = [[c * la for c in r] for r in self.basis]
        rows += [[c * lb for c in r] for r in other.basis]
        n = self.alg.degree
        D = abs(la**n * _tri_det(self.basis))
        return Lattice(self.alg, rows, self.den * la, _modulus=D)

    def add_elements(self, elems) -> "Lattice":
        """Lattice generated by self together with the given elements."""
        den = self.den
        for e in elems:
            den = den * e.den // math.gcd(den, e.den)
        scale = den // self.den
        rows = [[c * scale for c in r] for r in self.basis]
        rows += [[c * (den // e.den) for c in e.num] for e in elems]
        n = self.alg.degree
        D = abs(scale**n * _tri_det(self.basis))
        return Lattice(self.alg, rows, den, _modulus=D)

    def mul(self, other: "Lattice") -> "Lattice":
        n = self.alg.degree
        mulv = self.alg.mul_vec
        lat = RowLattice(n)
        # the integer span of pairwise products contains det(B)*det(C)*Z^n
        D = abs(_tri_det(self.basis) * _tri_det(other.basis))
        for i in range(n):
            lat.add([D if k == i else 0 for k in range(n)])
        brows = [list(r) for r in self.basis]
        crows = [list(r) for r in other.basis]
        for b in brows:
            for c in crows:
                v = lat.reduce(mulv(b, c))
                if any(v):
                    lat.add(v)
        lat.normalize()
        if len(lat.rows) != n:
            raise ValueError("product lattice not full rank")
        return Lattice(self.alg, [tuple(r) for r in lat.rows], self.den * other.den)

    def mul_elem(self, e: AlgElem) -> "Lattice":
        rows = [self.alg.mul_vec(list(r), list(e.num)) for r in self.basis]
        return Lattice(self.alg, rows, self.den * e.den)

    def scale(self, c) -> "Lattice":
        c = Fraction(c)
        rows = [[x * c.numerator for x in r] for r in self.basis]
        return Lattice(self.alg, rows, self.den * c.denominator)

    def power(self, k: int) -> "Lattice":
        assert k >= 0
        if k == 0:
            return Lattice.from_elements(self.alg, [self.alg.one()])
        out = None
        base = self
        while k:
            if k & 1:
                out = base if out is None else out.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        return out

    def _inverse_int(self):
        """(A, d) with (basis/den)^{-1} = A/d; integer A, cached."""
        if "invint" not in self._cache:
            n = self.alg.degree
            det = 1
            for i in range(n):
                det *= self.basis[i][i]
            # rows w_i with w_i * basis = det * e_i (integer by adjugate)
            A = []
            for i in range(n):
                v = [det if k == i else 0 for k in range(n)]
                y = [0] * n
                for j in range(n):
                    piv = self.basis[j][j]
                    assert v[j] % piv == 0
                    c = v[j] // piv
                    y[j] = c
                    if c:
                        row = self.basis[j]
                        for k in range(j, n):
                            v[k] -= c * row[k]
                A.append([c * self.den for c in y])
            self._cache["invint"] = (A, det)
        return self._cache["invint"]

    def dual(self) -> "Lattice":
        """Coordinate dual {x : <x, v> in Z for all v in L}."""
        A, d = self._inverse_int()
        n = self.alg.degree
        rows = [[A[i][j] for i in range(n)] for j in range(n)]
        return Lattice(self.alg, rows, d) if d > 0 else Lattice(self.alg, [[-c for c in r] for r in rows], -d)

    def intersect(self, other: "Lattice") -> "Lattice":
        return self.dual().add(other.dual()).dual()

    def index_in(self, other: "Lattice") -> int:
        """[other : self] for self contained in other."""
        r = self.det_fraction() / other.det_fraction()
        assert r.denominator == 1 and r > 0, "index_in: not a finite-index sublattice"
        return int(r)

    def colon(self, other: "Lattice") -> "Lattice":
        """(self : other) = {x in algebra : x*other contained in self}."""
        n = self.alg.degree
        A, dA = self._inverse_int()  # (basis/den)^{-1} = A/dA
        Acols = list(zip(*A))
        den = dA * other.den
        sign = -1 if den < 0 else 1
        rows = []
        D = None
        from .intpoly import bareiss_det

        for b in other.basis:
            mb = _basis_mult_rows(self.alg, b)
            if D is None:
                db = bareiss_det(mb)
                if db:
                    # columns of M_b * A alone span a lattice containing
                    # det(M_b) * det(A) * Z^n
                    D = abs(db * _tri_det(A) * self.den ** 0)
                    dA_det = 1
                    for i in range(n):
                        pass
            # K = M_b * (A/dA) / other.den; push columns of K as rows
            for j in range(n):
                col = Acols[j]
                rows.append([sign * sum(mb[i][t] * col[t] for t in range(n) if mb[i][t])
                             for i in range(n)])
        constraint = Lattice(self.alg, rows, sign * den, _modulus=D)
        return constraint.dual()

    def multiplicator_ring(self) -> "Order":
        if "mring" not in self._cache:
            self._cache["mring"] = Order(self.colon(self))
        return self._cache["mring"]

    # -- finite quotient helpers ---------------------------------------------
    def coords_matrix_in(self, other: "Lattice"):
        """Integer matrix C with rows = coordinates of self's basis in other's.

        Requires self contained in other (C integral)."""
        n = self.alg.degree
        out = []
        for r in self.basis:
            v = [c * other.den for c in r]
            y = other._solve_int(v)
            assert y is not None, "coords_matrix_in: not contained (lattice)"
            assert all(c % self.den == 0 for c in y), "coords_matrix_in: not contained (den)"
            out.append([c // self.den for c in y])
        return out

    def quotient_invariants(self, sub: "Lattice") -> list[int]:
        """Elementary divisors of self/sub (nontrivial ones, ascending)."""
        from .intmat import snf_diagonal

        C = sub.coords_matrix_in(self)
        return [d for d in snf_diagonal(C) if d not in (0, 1)]

    def quotient_exponent(self, sub: "Lattice") -> int:
        inv = self.quotient_invariants(sub)
        return inv[-1] if inv else 1

    def p_exponent_of_quotient(self, sub: "Lattice", p: int) -> int:
        """val_p of the exponent of self/sub, transform-free.

        Strips the prime-to-p part of the index, then finds the least k with
        p^k * self inside the stripped sublattice."""
        from .intarith import valuation as _val

        n = self.alg.degree
        C = sub.coords_matrix_in(self)
        lat = RowLattice(n)
        for r in C:
            lat.add(list(r))
        lat.normalize()
        det = 1
        for i in range(n):
            det *= lat.rows[i][i]
        det = abs(det)
        vp = _val(det, p) if det % p == 0 else 0
        if vp == 0:
            return 0
        s = det // p**vp
        if s > 1:
            for i in range(n):
                lat.add([s if k == i else 0 for k in range(n)])
            lat.normalize()
        for k in range(vp + 1):
            pk = p**k
            if all(lat.contains([pk if t == i else 0 for t in range(n)])
                   for i in range(n)):
                return k
        return vp

    def __repr__(self):
        return f"Lattice(den={self.den}, det={self.det_fraction()})"


def lattice_from_elements(alg, elems):
    return Lattice.from_elements(alg, elems)


class Order:
    """A lattice that is a unital ring (closure is the caller's business,
    verified cheaply on demand via verify_closed)."""

    __slots__ = ("lattice",)

    def __init__(self, lattice: Lattice):
        self.lattice = lattice

    @property
    def alg(self):
        return self.lattice.alg

    def verify_closed(self) -> bool:
        lat = self.lattice
        one = lat.alg.one()
        if not lat.contains(one):
            return False
        els = lat.elements()
        for i, a in enumerate(els):
            for b in els[i:]:
                if not lat.contains(a * b):
                    return False
        return True

    def __eq__(self, other):
        return self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def key(self):
        return self.lattice.key()

    def contains(self, e) -> bool:
        return self.lattice.contains(e)

    def index_in(self, other: "Order") -> int:
        return self.lattice.index_in(other.lattice)

    def __repr__(self):
        return f"Order({self.lattice!r})"
