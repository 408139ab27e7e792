"""Orders and fractional ideals: R = Z[pi, q/pi], maximal orders, maximal
ideals, overorders, weak equivalence classes, CRT gluing."""

from __future__ import annotations

import math
import random as _random
from dataclasses import dataclass, field

from .etale import AlgElem, EtaleAlgebra
from .intarith import factorize, inv_mod, valuation
from .intmat import RowLattice
from .intpoly import IntPoly, bareiss_det
from .lattices import Lattice, Order
from .modp import SmallField, kernel_mod, matmul_mod, rref_mod, subspaces_over_field
from .polyfactor import factor_mod_p
from .weil import FrobeniusAlgebra


class BoundExceeded(RuntimeError):
    """A configured enumeration cap was hit."""


# --------------------------------------------------------------- orders ----

def make_R(fa: FrobeniusAlgebra) -> Order:
    """Z[pi, q/pi] as a lattice: spanned by powers of pi and of q/pi."""
    gens = [fa.algebra.one()]
    cur = fa.algebra.one()
    for _ in range(fa.algebra.degree - 1):
        cur = cur * fa.frobenius
        gens.append(cur)
    cur = fa.algebra.one()
    for _ in range(fa.algebra.degree - 1):
        cur = cur * fa.verschiebung
        gens.append(cur)
    return Order(Lattice.from_elements(fa.algebra, gens))


def equation_order(alg: EtaleAlgebra) -> Order:
    """Z[x]/(f) inside its own algebra."""
    gens = [alg.one()]
    for _ in range(alg.degree - 1):
        gens.append(gens[-1] * alg.gen())
    return Order(Lattice.from_elements(alg, gens))


# ------------------------------------------------- finite quotient S/lS ----

class FpAlgebra:
    """S/lS with multiplication via structure constants mod l."""

    def __init__(self, order: Order, ell: int):
        self.order = order
        self.ell = ell
        lat = order.lattice
        n = lat.alg.degree
        self.n = n
        els = lat.elements()
        self.table = []
        for i in range(n):
            row = []
            for j in range(n):
                coords = lat.coords_of(els[i] * els[j])
                assert coords is not None, "order not multiplicatively closed"
                row.append(tuple(int(c) % ell for c in coords))
            self.table.append(row)
        one = lat.coords_of(lat.alg.one())
        assert one is not None, "order does not contain 1"
        self.one = tuple(int(c) % ell for c in one)

    def mul(self, a, b):
        ell = self.ell
        n = self.n
        out = [0] * n
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        t = self.table[i][j]
                        c = ai * bj
                        for k in range(n):
                            if t[k]:
                                out[k] += c * t[k]
        return tuple(c % ell for c in out)

    def power(self, a, e):
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frobenius_matrix(self):
        """Matrix of x -> x^l (row i = image of basis vector i)."""
        rows = []
        for i in range(self.n):
            e = tuple(1 if k == i else 0 for k in range(self.n))
            rows.append(list(self.power(e, self.ell)))
        return rows


@dataclass
class MaxIdeal:
    """Maximal ideal of an order, above the rational prime ell."""

    order: Order
    ell: int
    lattice: Lattice
    residue_degree: int
    rows_mod: list = field(default_factory=list)  # F_l-rows in order coords

    def residue_cardinality(self) -> int:
        return self.ell**self.residue_degree

    def key(self):
        return self.lattice.key()

    def __hash__(self):
        return hash(self.lattice)

    def __eq__(self, other):
        return self.lattice == other.lattice


def _rows_to_lattice(order_lat: Lattice, rows, ell: int) -> Lattice:
    """Lattice ell*S + <lifted rows> for F_l rows in order coordinates."""
    n = order_lat.alg.degree
    gen_rows = [[c * ell for c in b] for b in order_lat.basis]
    for v in rows:
        vec = [0] * n
        for i, c in enumerate(v):
            if c:
                for t in range(n):
                    vec[t] += c * order_lat.basis[i][t]
        gen_rows.append(vec)
    return Lattice(order_lat.alg, gen_rows, order_lat.den)


def _reduce_vec(v, R, piv, p):
    v = [c % p for c in v]
    for i, j in enumerate(piv):
        if v[j]:
            c = v[j]
            v = [(v[k] - c * R[i][k]) % p for k in range(len(v))]
    return v


def _minpoly_mod(powers_q, dim, ell):
    """Monic minimal polynomial from quotient coordinates of 1, y, y^2, ..."""
    for d in range(1, dim + 1):
        ker = kernel_mod([powers_q[i] for i in range(d + 1)], ell)
        cand = next((v for v in ker if v[d] % ell), None)
        if cand:
            c = inv_mod(cand[d], ell)
            return [x * c % ell for x in cand[: d + 1]]
    return None


def maximal_ideals_above(order: Order, ell: int) -> list[MaxIdeal]:
    """Maximal ideals of the order above ell, via radical + eigen splitting."""
    B = FpAlgebra(order, ell)
    n = B.n
    F = B.frobenius_matrix()
    k = 1
    while ell**k < n:
        k += 1
    Fk = F
    for _ in range(k - 1):
        Fk = matmul_mod(Fk, F, ell)
    radical = kernel_mod(Fk, ell)

    found = []

    def split(ideal_rows):
        R, piv = rref_mod(ideal_rows, ell) if ideal_rows else ([], [])
        comp = [j for j in range(n) if j not in piv]
        dim = len(comp)
        # frobenius on the quotient
        Fq = []
        for j in comp:
            e = tuple(1 if t == j else 0 for t in range(n))
            img = _reduce_vec(B.power(e, ell), R, piv, ell)
            Fq.append([img[c] for c in comp])
        FmI = [[(Fq[i][j] - (1 if i == j else 0)) % ell for j in range(dim)]
               for i in range(dim)]
        fix = kernel_mod(FmI, ell)
        if len(fix) == 1:
            found.append((R, dim))
            return
        onev = _reduce_vec(B.one, R, piv, ell)
        one_q = [onev[c] for c in comp]
        y = next(v for v in fix if len(rref_mod([one_q, v], ell)[0]) == 2)
        yfull = [0] * n
        for t, j in enumerate(comp):
            yfull[j] = y[t]
        pows = [B.one]
        for _ in range(dim):
            pows.append(B.mul(pows[-1], tuple(yfull)))
        pows_q = []
        for pw in pows:
            red = _reduce_vec(pw, R, piv, ell)
            pows_q.append([red[c] for c in comp])
        mp = _minpoly_mod(pows_q, dim, ell)
        facs = factor_mod_p(IntPoly(mp), ell)
        assert all(m == 1 and g.degree == 1 for g, m in facs), "fixed element must split"
        roots = [(-g.coeffs[0]) % ell for g, _ in facs]
        assert len(roots) >= 2
        for lam in roots:
            z = [(zc - lam * oc) % ell for zc, oc in zip(yfull, B.one)]
            new_rows = [list(r) for r in R]
            for j in range(n):
                e = tuple(1 if t == j else 0 for t in range(n))
                new_rows.append(list(B.mul(e, tuple(z))))
            split(rref_mod(new_rows, ell)[0])

    split(rref_mod(radical, ell)[0] if radical else [])

    seen = set()
    result = []
    for rows, dim in found:
        key = tuple(tuple(r) for r in rows)
        if key in seen:
            continue
        seen.add(key)
        lat = _rows_to_lattice(order.lattice, rows, ell)
        result.append(MaxIdeal(order, ell, lat, dim, rows_mod=[list(r) for r in rows]))
    result.sort(key=lambda m: m.lattice.key())
    return result


def residue_field_generator(order: Order, P: MaxIdeal):
    """(theta in the order, its monic minpoly mod l of degree f) generating
    the residue field order/P."""
    ell = P.ell
    B = FpAlgebra(order, ell)
    n = B.n
    R, piv = rref_mod(P.rows_mod, ell) if P.rows_mod else ([], [])
    comp = [j for j in range(n) if j not in piv]
    f = len(comp)
    candidates = [tuple(1 if t == j else 0 for t in range(n)) for j in comp]
    for i in range(len(comp)):
        for j in range(i + 1, len(comp)):
            v = [0] * n
            v[comp[i]] = 1
            v[comp[j]] = 1
            candidates.append(tuple(v))
    rng = _random.Random(0x5EED)
    for _ in range(300):
        candidates.append(tuple(rng.randrange(ell) for _ in range(n)))
    for cand in candidates:
        red = _reduce_vec(cand, R, piv, ell)
        pows = [B.one]
        for _ in range(f):
            pows.append(B.mul(pows[-1], tuple(red)))
        pq = []
        for pw in pows:
            r2 = _reduce_vec(pw, R, piv, ell)
            pq.append([r2[c] for c in comp])
        mp = _minpoly_mod(pq, f, ell)
        if mp is None or len(mp) - 1 != f:
            continue
        lat = order.lattice
        vec = [0] * lat.alg.degree
        for i, ci in enumerate(red):
            if ci:
                for t in range(lat.alg.degree):
                    vec[t] += ci * lat.basis[i][t]
        theta = AlgElem(lat.alg, vec, lat.den).normalized()
        return theta, IntPoly(mp)
    raise AssertionError("no residue field generator found")


# ---------------------------------------------------------- round 2 --------

def _p_radical(order: Order, p: int) -> Lattice:
    B = FpAlgebra(order, p)
    n = B.n
    F = B.frobenius_matrix()
    k = 1
    while p**k < n:
        k += 1
    Fk = F
    for _ in range(k - 1):
        Fk = matmul_mod(Fk, F, p)
    rad_rows = kernel_mod(Fk, p)
    return _rows_to_lattice(order.lattice, rad_rows, p)


def p_maximalize(order: Order, p: int) -> Order:
    """Round 2: replace the order by the multiplier ring of its p-radical
    until stable."""
    cur = order
    while True:
        rad = _p_radical(cur, p)
        new = rad.colon(rad)
        if new == cur.lattice:
            return cur
        cur = Order(new)


def order_discriminant(order: Order) -> int:
    els = order.lattice.elements()
    n = len(els)
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            t = (els[i] * els[j]).trace()
            assert t.denominator == 1
            gram[i][j] = gram[j][i] = int(t)
    return bareiss_det(gram)


def maximal_order_of(alg: EtaleAlgebra, start: Order | None = None) -> Order:
    """Integral closure via Round 2 at every prime whose square divides the
    discriminant of the starting order."""
    cur = start if start is not None else equation_order(alg)
    disc = order_discriminant(cur)
    for p in sorted(factorize(disc)):
        if disc % (p * p) == 0:
            cur = p_maximalize(cur, p)
    return cur


def maximal_order(fa: FrobeniusAlgebra) -> Order:
    """Maximal order of E, assembled from component maximal orders."""
    alg = fa.algebra
    if len(alg.components) == 1:
        return maximal_order_of(alg, make_R(fa))
    gens = []
    idem = alg.idempotents()
    for t in range(len(alg.components)):
        comp = alg.component_algebra(t)
        omax = maximal_order_of(comp)
        for b in omax.lattice.elements():
            lifted = alg.from_poly(IntPoly(list(b.num)), b.den)
            gens.append(idem[t] * lifted)
    return Order(Lattice.from_elements(alg, gens))


# -------------------------------------------------------- ideal helpers ----

def conductor(S: Order, O: Order) -> Lattice:
    """(S : O), the largest O-ideal contained in S."""
    return S.lattice.colon(O.lattice)


def singular_primes(S: Order, O: Order) -> list[MaxIdeal]:
    """Maximal ideals of S containing the conductor (S:O)."""
    idx = S.lattice.index_in(O.lattice)
    if idx == 1:
        return []
    cond = conductor(S, O)
    out = []
    for ell in sorted(factorize(idx)):
        for P in maximal_ideals_above(S, ell):
            if P.lattice.contains_lattice(cond):
                out.append(P)
    return out


def anti_uniformizer(O: Order, P: MaxIdeal) -> AlgElem:
    inv = O.lattice.colon(P.lattice)
    for e in inv.elements():
        if not O.lattice.contains(e):
            return e
    raise AssertionError("prime of maximal order has no anti-uniformizer")


def prime_valuation_of_int(O: Order, P: MaxIdeal, c: int, a=None) -> int:
    if a is None:
        a = anti_uniformizer(O, P)
    if abs(c) == 1:
        return 0
    e = O.alg.from_int(c)
    v = 0
    while O.lattice.contains(e):
        e = e * a
        v += 1
    return v - 1


def prime_valuation(O: Order, P: MaxIdeal, I: Lattice, _anti=None) -> int:
    """val_P(I) for a fractional O-ideal I (O maximal at P)."""
    a = _anti if _anti is not None else anti_uniformizer(O, P)
    c = 1
    for e in I.elements():
        c = c * e.den // math.gcd(c, e.den)
    J = I.scale(c) if c > 1 else I
    shift = prime_valuation_of_int(O, P, c, a)
    v = 0
    while O.lattice.contains_lattice(J):
        J = J.mul_elem(a)
        v += 1
    return (v - 1) - shift


def ramification_index(O: Order, P: MaxIdeal) -> int:
    a = anti_uniformizer(O, P)
    return prime_valuation_of_int(O, P, P.ell, a)


# ----------------------------------------------- residue-field structure ---

class ResidueModule:
    """An elementary-abelian quotient top/bottom that is a vector space over
    the residue field F = order/P, with an F-basis built from theta-orbits.

    Rows are expressed in `top` coordinates; everything mod ell."""

    def __init__(self, top: Lattice, bottom: Lattice, theta: AlgElem,
                 F: SmallField, ell: int):
        self.top = top
        self.bottom = bottom
        self.F = F
        self.ell = ell
        n = top.alg.degree
        self.n = n
        sub = RowLattice(n)
        for r in bottom.coords_matrix_in(top):
            sub.add(list(r))
        sub.normalize()
        diag = [sub.rows[i][i] for i in range(n)]
        assert all(d in (1, ell) for d in diag), "quotient not elementary abelian"
        self.sub = sub
        self.comp = [i for i in range(n) if diag[i] == ell]
        d = len(self.comp)
        self.dim = d
        els = top.elements()
        self.theta_rows = []
        for i in self.comp:
            coords = top.coords_of(els[i] * theta)
            assert coords is not None
            red = sub.reduce([int(c) for c in coords])
            self.theta_rows.append([red[t] % ell for t in self.comp])
        # F-basis via theta-orbits
        span: list = []
        self.orbit_reps = []
        for i in range(d):
            v = [1 if t == i else 0 for t in range(d)]
            if len(rref_mod(span + [v], ell)[0]) == len(span):
                continue
            self.orbit_reps.append(v)
            cur = v
            for _ in range(F.f):
                span.append(cur)
                cur = self._theta_apply(cur)
            span = [list(r) for r in rref_mod(span, ell)[0]]
            if len(span) == d:
                break
        assert len(self.orbit_reps) * F.f == d, "quotient not free over residue field"
        self.dimF = len(self.orbit_reps)

    def _theta_apply(self, v):
        d = self.dim
        return [sum(v[t] * self.theta_rows[t][s] for t in range(d)) % self.ell
                for s in range(d)]

    def f_row_to_vec(self, row):
        """F-coordinate row (list of F elements per orbit rep) -> F_l vector."""
        out = [0] * self.dim
        for rep, c in zip(self.orbit_reps, row):
            cur = list(rep)
            for coeff in c:
                if coeff:
                    for t in range(self.dim):
                        out[t] = (out[t] + coeff * cur[t]) % self.ell
                cur = self._theta_apply(cur)
        return out

    def vec_to_elem(self, v) -> AlgElem:
        """F_l vector on comp coordinates -> element of top."""
        n = self.n
        vec = [0] * n
        for t, i in enumerate(self.comp):
            c = v[t]
            if c:
                for s in range(n):
                    vec[s] += c * self.top.basis[i][s]
        return AlgElem(self.top.alg, vec, self.top.den).normalized()

    def subspace_lattices(self, dims=None):
        """All F-subspaces, returned as lattices bottom + <F-span lifts>."""
        for rows in subspaces_over_field(self.F, self.dimF, dims=dims):
            if not rows:
                yield self.bottom, 0
                continue
            elems = []
            for r in rows:
                v = self.f_row_to_vec(r)
                for _ in range(self.F.f):
                    elems.append(self.vec_to_elem(v))
                    v = self._theta_apply(v)
            yield self.bottom.add_elements(elems), len(rows)


# ------------------------------------------------------------ overorders ---

def minimal_overorder_candidates(S: Order, P: MaxIdeal) -> list[Order]:
    """Rings T with S < T <= (S:P) and P*T <= S; contains every minimal
    overorder of S whose conductor is supported at P."""
    colon = S.lattice.colon(P.lattice)
    if colon == S.lattice:
        return []
    theta, mp = residue_field_generator(S, P)
    F = SmallField(P.ell, mp)
    M = ResidueModule(colon, S.lattice, theta, F, P.ell)
    out = []
    for lat, dim in M.subspace_lattices():
        if dim == 0:
            continue
        T = lat
        new_els = [e for e in T.elements() if not S.lattice.contains(e)]
        ok = all(T.contains(a * b) for i, a in enumerate(new_els)
                 for b in new_els[i:])
        if ok:
            out.append(Order(T))
    return out


def overorders(R: Order, O: Order) -> list[Order]:
    """All orders between R and the maximal order O."""
    seen = {R.key(): R}
    frontier = [R]
    while frontier:
        S = frontier.pop()
        for P in singular_primes(S, O):
            for T in minimal_overorder_candidates(S, P):
                if T.key() not in seen:
                    seen[T.key()] = T
                    frontier.append(T)
    out = list(seen.values())
    out.sort(key=lambda s: (s.lattice.index_in(O.lattice), s.key()))
    return out


# ------------------------------------------------------- weak equivalence --

def weakly_equivalent(I: Lattice, J: Lattice) -> bool:
    """Colon-product criterion: same multiplicator ring and 1 in (I:J)(J:I)."""
    if I.multiplicator_ring() != J.multiplicator_ring():
        return False
    prod = I.colon(J).mul(J.colon(I))
    return prod.contains(I.alg.one())


class _FiniteDescent:
    """Submodule enumeration inside the finite quotient top/bottom.

    Submodules are row lattices in top-coordinates containing the bottom
    rows; all arithmetic stays bounded by the quotient index."""

    def __init__(self, top: Lattice, bottom: Lattice, T: Order):
        self.top = top
        self.n = top.alg.degree
        n = self.n
        base = RowLattice(n)
        for r in bottom.coords_matrix_in(top):
            base.add(list(r))
        base.normalize()
        self.base = base
        self.index = 1
        for i in range(n):
            self.index *= base.rows[i][i]
        self.prime_data = []
        for P in _support_primes(T, top, bottom):
            theta, mp = residue_field_generator(T, P)
            F = SmallField(P.ell, mp)
            gens = self._action_matrices(P.lattice)
            tmat = self._elem_action(theta)
            self.prime_data.append((P, F, gens, tmat))

    def _coords_in_top(self, e) -> list[int]:
        c = self.top.coords_of(e)
        assert c is not None and all(x.denominator == 1 for x in c)
        return [int(x) for x in c]

    def _elem_action(self, e):
        """Matrix rows: top-coords of (top basis element * e)."""
        els = self.top.elements()
        return [self._coords_in_top(b * e) for b in els]

    def _action_matrices(self, ideal: Lattice):
        return [self._elem_action(e) for e in ideal.elements()]

    def _mod_reduce(self, v):
        return self.base.reduce(list(v))

    def enumerate(self, cap: int):
        n = self.n
        top_rows = RowLattice(n)
        for i in range(n):
            top_rows.add([1 if k == i else 0 for k in range(n)])
        top_rows.normalize()
        seen = {tuple(map(tuple, top_rows.rows)): True}
        out = []
        stack = [top_rows]
        while stack:
            L = stack.pop()
            out.append(L)
            if len(out) > cap:
                raise BoundExceeded(
                    f"submodule enumeration exceeded cap {cap}; raise size caps")
            for P, F, gens, tmat in self.prime_data:
                PL = RowLattice(n)
                for r in self.base.rows:
                    PL.add(list(r))
                for g in gens:
                    for r in L.rows:
                        PL.add(self._mod_reduce(_apply_rows(g, r)))
                PL.normalize()
                if PL.rows == L.rows:
                    continue
                for cand in self._hyperplanes(L, PL, F, tmat, P.ell):
                    key = tuple(map(tuple, cand.rows))
                    if key in seen:
                        continue
                    seen[key] = True
                    stack.append(cand)
        return out

    def _hyperplanes(self, L: RowLattice, PL: RowLattice, F: SmallField,
                     tmat, ell: int):
        """Maximal T-submodules between PL and L."""
        n = self.n
        # quotient L/PL in L's own row coordinates
        sub = RowLattice(n)
        for r in PL.rows:
            y = L.solve(list(r))
            assert y is not None
            sub.add(y)
        sub.normalize()
        diag = [sub.rows[i][i] for i in range(n)]
        assert all(d in (1, ell) for d in diag)
        comp = [i for i in range(n) if diag[i] == ell]
        d = len(comp)
        if d == 0:
            return
        # theta action on the quotient
        theta_rows = []
        for i in comp:
            img = _apply_rows(tmat, L.rows[i])
            y = L.solve(img)
            assert y is not None
            red = sub.reduce(y)
            theta_rows.append([red[t] % ell for t in comp])

        def theta_apply(v):
            return [sum(v[t] * theta_rows[t][s] for t in range(d)) % ell
                    for s in range(d)]

        # F-basis via theta orbits
        span: list = []
        orbit_reps = []
        for i in range(d):
            v = [1 if t == i else 0 for t in range(d)]
            if len(rref_mod(span + [v], ell)[0]) == len(span):
                continue
            orbit_reps.append(v)
            cur = v
            for _ in range(F.f):
                span.append(cur)
                cur = theta_apply(cur)
            span = [list(r) for r in rref_mod(span, ell)[0]]
            if len(span) == d:
                break
        dF = len(orbit_reps)
        assert dF * F.f == d, "quotient not free over the residue field"

        def f_scalar(rep, c):
            cur = list(rep)
            acc = [0] * d
            for coeff in c:
                if coeff:
                    for t in range(d):
                        acc[t] = (acc[t] + coeff * cur[t]) % ell
                cur = theta_apply(cur)
            return acc

        for rows in subspaces_over_field(F, dF, dims=[dF - 1]):
            cand = RowLattice(self.n)
            for r in PL.rows:
                cand.add(list(r))
            for row in rows:
                acc = [0] * d
                for rep, c in zip(orbit_reps, row):
                    if any(c):
                        sv = f_scalar(rep, c)
                        for t in range(d):
                            acc[t] = (acc[t] + sv[t]) % ell
                # lift the F-span of the vector
                cur = acc
                for _ in range(F.f):
                    vec = [0] * self.n
                    for t, i in enumerate(comp):
                        if cur[t]:
                            for s in range(self.n):
                                vec[s] += cur[t] * L.rows[i][s]
                    cand.add(self._mod_reduce(vec))
                    cur = theta_apply(cur)
            cand.normalize()
            yield cand

    def materialize(self, L: RowLattice) -> Lattice:
        n = self.n
        rows = []
        for r in L.rows:
            vec = [0] * n
            for i, c in enumerate(r):
                if c:
                    for t in range(n):
                        vec[t] += c * self.top.basis[i][t]
            rows.append(vec)
        return Lattice(self.top.alg, rows, self.top.den)


def _support_primes(T: Order, top: Lattice, bottom: Lattice) -> list[MaxIdeal]:
    idx = bottom.index_in(top)
    out = []
    for ell in sorted(factorize(idx)) if idx > 1 else []:
        for P in maximal_ideals_above(T, ell):
            # P is relevant iff the quotient has P-torsion: P*top + bottom != top
            out.append(P)
    return out


def _apply_rows(mat, vec):
    n = len(mat[0])
    out = [0] * n
    for i, c in enumerate(vec):
        if c:
            row = mat[i]
            for j in range(n):
                if row[j]:
                    out[j] += c * row[j]
    return out


def _submodules(top: Lattice, bottom: Lattice, T: Order, O: Order, cap: int,
                require_full_extension: bool) -> list[Lattice]:
    """All T-stable lattices between bottom and top."""
    idx = bottom.index_in(top)
    if idx == 1:
        return [top]
    desc = _FiniteDescent(top, bottom, T)
    found = desc.enumerate(cap)
    return [desc.materialize(L) for L in found]


def weak_classes(Sp: Order, O: Order, cap: int = 20000) -> list[Lattice]:
    """Representatives of the weak equivalence classes of fractional
    Sp-ideals.

    Any class has a representative J with trivial extension J*O = O: such a
    J avoids every maximal ideal of O over the singular cluster, so some
    u in J is a local unit there and u^{-1}J contains 1, hence contains Sp.
    So the Sp-submodules of O/Sp with full extension cover all classes;
    bucket them by multiplicator ring and dedupe by weak equivalence."""
    cands = _submodules(O.lattice, Sp.lattice, Sp, O, cap,
                        require_full_extension=True)
    buckets: dict = {}
    for J in cands:
        if J.mul(O.lattice) != O.lattice:
            continue
        T = J.colon(J)
        bucket = buckets.setdefault(T.key(), [])
        if any(weakly_equivalent(J, K) for K in bucket):
            continue
        bucket.append(J)
    out = [J for b in buckets.values() for J in b]
    out.sort(key=lambda L: L.key())
    return out


def compute_W_classes(S: Order, P: MaxIdeal, O: Order, k: int | None = None,
                      cap: int = 20000) -> list[Lattice]:
    """Representatives of W(S + P^k O), k defaulting to val_l([O:S])."""
    if k is None:
        k = valuation(S.lattice.index_in(O.lattice), P.ell)
    if k == 0:
        return [O.lattice]
    PO = P.lattice.mul(O.lattice)
    Sp = Order(S.lattice.add(PO.power(k)))
    return weak_classes(Sp, O, cap=cap)


# ------------------------------------------------------------- gluing ------

def glue_ideals(S: Order, specs) -> Lattice:
    """Lattice J with J_{P_i} = (I_i)_{P_i} and J = S locally elsewhere.

    specs: list of (P_i: MaxIdeal of S, I_i: Lattice contained in S, k_i)."""
    if not specs:
        return S.lattice
    terms = []
    for i, (P, I, k) in enumerate(specs):
        term = I.add(P.lattice.power(k))
        for j, (Q, _, kj) in enumerate(specs):
            if j != i:
                term = term.mul(Q.lattice.power(kj))
        terms.append(term)
    out = terms[0]
    for t in terms[1:]:
        out = out.add(t)
    return out


def glue_orders(O: Order, specs) -> Order:
    """Order S with S_{P_i} = (S_i)_{P_i} and maximal at every other prime.

    specs: list of (P_i: MaxIdeal of R, S_i: Order, k_i)."""
    if not specs:
        return O
    cur = None
    for P, Si, k in specs:
        term = Si.lattice.add(P.lattice.mul(O.lattice).power(k))
        cur = term if cur is None else cur.intersect(term)
    return Order(cur)


def locally_equal(A: Lattice, B: Lattice, P: MaxIdeal) -> bool:
    """A_P == B_P, decided by killing the P-primary parts of (A+B)/A, (A+B)/B."""
    C = A.add(B)
    if C == A and C == B:
        return True
    bound = 1
    for lat in (A, B):
        inv = C.quotient_invariants(lat)
        if inv:
            bound = max(bound, sum(valuation(d, P.ell) for d in inv if d % P.ell == 0))
    PN = P.lattice.power(bound + 1)
    return C == A.add(PN.mul(C)) and C == B.add(PN.mul(C))
