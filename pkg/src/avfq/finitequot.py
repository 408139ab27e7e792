"""Finite quotients of orders: rings O/m, their unit groups with discrete
logarithms (Teichmueller part + principal-unit filtration), and finite
module quotients carrying semilinear operators.

Unit groups are presented as Z^s / (relation lattice) with an exact dlog,
so subgroup/quotient/preimage questions reduce to integer linear algebra.
"""

from __future__ import annotations

import math

from .etale import AlgElem
from .intarith import inv_mod
from .intmat import RowLattice, hnf, kernel_int, solve_left_int, snf_with_transforms
from .lattices import Lattice, Order
from .orders import MaxIdeal
from .modp import kernel_mod, rref_mod


class FiniteRing:
    """O/m with elements as canonical coordinate vectors in O's basis."""

    def __init__(self, order: Order, modulus: Lattice):
        lat = order.lattice
        self.order = order
        self.lattice = lat
        n = lat.alg.degree
        self.n = n
        C = modulus.coords_matrix_in(lat)
        red = RowLattice(n)
        for r in C:
            red.add(list(r))
        red.normalize()
        assert red.rank() == n, "modulus must have finite index"
        self.red = red
        self.modulus = modulus
        els = lat.elements()
        self.table = []
        for i in range(n):
            row = []
            for j in range(i + 1):
                coords = lat.coords_of(els[i] * els[j])
                assert coords is not None
                row.append(tuple(int(c) for c in coords))
            self.table.append(row)
        self.one = self.reduce([int(c) for c in lat.coords_of(lat.alg.one())])
        self.size = abs(_det_of(red.rows))

    def reduce(self, vec):
        return tuple(self.red.reduce(list(vec)))

    def elem_to_vec(self, e: AlgElem):
        coords = self.lattice.coords_of(e)
        assert coords is not None, "element not in the order"
        out = []
        for c in coords:
            if c.denominator == 1:
                out.append(int(c))
            else:
                # denominator must be invertible modulo the modulus index
                d = inv_mod(c.denominator, self.size)
                out.append(c.numerator * d)
        return self.reduce(out)

    def vec_to_elem(self, vec) -> AlgElem:
        lat = self.lattice
        n = self.n
        out = [0] * n
        for i, c in enumerate(vec):
            if c:
                for t in range(n):
                    out[t] += c * lat.basis[i][t]
        return AlgElem(lat.alg, out, lat.den).normalized()

    def mul(self, a, b):
        n = self.n
        out = [0] * n
        for i, ai in enumerate(a):
            if ai:
                ti = self.table[i]
                for j, bj in enumerate(b):
                    if bj:
                        t = ti[j] if j <= i else self.table[j][i]
                        c = ai * bj
                        for k in range(n):
                            if t[k]:
                                out[k] += c * t[k]
        return self.reduce(out)

    def pow(self, a, e):
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        """Inverse of a unit: solve x * M_a = 1 modulo the modulus."""
        n = self.n
        rows = []
        for i in range(n):
            e = [1 if k == i else 0 for k in range(n)]
            rows.append(list(self.mul(e, a)))
        stacked = rows + [list(r) for r in self.red.rows]
        sol = solve_left_int(stacked, list(self.one))
        assert sol is not None, "element is not a unit in the quotient"
        return self.reduce(sol[:n])

    def is_one(self, a):
        return tuple(a) == tuple(self.one)


def _det_of(rows):
    d = 1
    for i, r in enumerate(rows):
        d *= r[i]
    return d


class LocalUnitGroup:
    """(O/Q)^x for a P-primary modulus Q: Teichmueller generator for the
    residue field, plus principal units 1 + (P^t + Q)/Q by filtration."""

    def __init__(self, ring: FiniteRing, P: MaxIdeal):
        self.ring = ring
        self.P = P
        ell = P.ell
        f = P.residue_degree
        self.res_card = ell**f
        order = ring.order
        lat = order.lattice
        n = ring.n
        R, piv = rref_mod(P.rows_mod, ell) if P.rows_mod else ([], [])
        self._res_R, self._res_piv = R, piv
        self._res_comp = [j for j in range(n) if j not in piv]
        # find a generator of the residue field's multiplicative group:
        # brute force over residue representatives
        gen = self._find_residue_generator()
        # Teichmueller lift: iterate x -> x^(res_card) until stable
        tau = self.ring.reduce(gen)
        for _ in range(64):
            nxt = ring.pow(tau, self.res_card)
            if nxt == tau:
                break
            tau = nxt
        assert ring.pow(tau, self.res_card) == tau
        self.tau = tau
        self.tau_inv = ring.pow(tau, self.res_card - 2)
        # residue dlog table for tau
        self._dlog_table = {}
        cur = ring.one
        for k in range(self.res_card - 1):
            self._dlog_table[self._res_vec(cur)] = k
            cur = ring.mul(cur, tau)
        # principal-unit filtration
        Pl = P.lattice
        level_data = []
        cur_ideal = Pl
        t = 1
        while True:
            nxt_ideal = cur_ideal.mul(Pl)
            cur_mod = cur_ideal.add(ring.modulus)
            nxt_mod = nxt_ideal.add(ring.modulus)
            if cur_mod == ring.modulus:
                break
            space = _LevelSpace(ring, cur_mod, nxt_mod, ell)
            if space.comp:
                level_data.append((space, space.basis_ring_vecs()))
            cur_ideal = nxt_ideal
            t += 1
            assert t < 200, "filtration did not terminate"
        self.levels = level_data
        self.gens = [self.tau] + [self.ring.reduce(_add_one(b, ring))
                                  for _, bs in level_data for b in bs]
        # relation matrix
        s = len(self.gens)
        rels = []
        row0 = [0] * s
        row0[0] = self.res_card - 1
        nf = self._nf(self.ring.pow(self.tau, self.res_card - 1))
        rels.append([a - b for a, b in zip(row0, nf)])
        gi = 1
        for _, bs in level_data:
            for _b in bs:
                g = self.gens[gi]
                row = [0] * s
                row[gi] = ell
                nfv = self._nf(self.ring.pow(g, ell))
                rels.append([a - b for a, b in zip(row, nfv)])
                gi += 1
        self.relations = rels
        self.order_count = (self.res_card - 1) * (ell ** (s - 1)) if s else 1

    def _res_vec(self, vec):
        ell = self.P.ell
        v = [c % ell for c in vec]
        R, piv = self._res_R, self._res_piv
        for i, j in enumerate(piv):
            if v[j]:
                c = v[j]
                v = [(v[k] - c * R[i][k]) % ell for k in range(len(v))]
        return tuple(v[c] for c in self._res_comp)

    def _find_residue_generator(self):
        ring = self.ring
        ell = self.P.ell
        n = ring.n
        card = self.res_card
        from itertools import product as iproduct

        # try sparse candidates first, then dense enumeration
        zero = tuple([0] * len(self._res_comp))
        seen = set()
        for coeffs in iproduct(range(ell), repeat=len(self._res_comp)):
            if not any(coeffs):
                continue
            vec = [0] * n
            for c, j in zip(coeffs, self._res_comp):
                vec[j] = c
            rv = self._res_vec(vec)
            if rv in seen or rv == zero:
                continue
            seen.add(rv)
            if self._res_order(vec) == card - 1:
                return vec
        raise AssertionError("no residue generator found")

    def _res_mul(self, a, b):
        return self.ring.mul(a, b)

    def _res_order(self, vec):
        onev = self._res_vec(self.ring.one)
        cur = vec
        for k in range(1, self.res_card):
            if self._res_vec(cur) == onev:
                return k
            cur = self.ring.mul(cur, vec)
        return 0

    def _nf(self, u):
        """Express the unit u as a word in the generators; returns exponents."""
        ring = self.ring
        ell = self.P.ell
        out = [0] * len(self.gens)
        rv = self._res_vec(u)
        d = self._dlog_table.get(rv)
        assert d is not None, "element is not a unit"
        out[0] = d
        cur = ring.mul(u, ring.pow(self.tau_inv, d)) if d else u
        gi = 1
        for space, basis in self.levels:
            # cur is in 1 + cur_mod; express (cur - 1) in the level basis
            y = [a - b for a, b in zip(cur, ring.one)]
            coeffs = space.coords(y)
            for t, c in enumerate(coeffs):
                out[gi + t] = c
            if any(coeffs):
                corr = ring.one
                for t, c in enumerate(coeffs):
                    if c:
                        g = self.gens[gi + t]
                        corr = ring.mul(corr, ring.pow(g, c))
                cur = ring.mul(cur, ring.inv(corr))
            gi += len(basis)
        assert ring.is_one(cur), "unit normal form did not terminate at 1"
        return out

    def dlog(self, u):
        return self._nf(u)


def _add_one(bvec, ring: FiniteRing):
    return [a + b for a, b in zip(bvec, ring.one)]


class _LevelSpace:
    """cur_mod/nxt_mod as an F_ell-space, in cur_mod's own coordinates."""

    def __init__(self, ring: FiniteRing, cur_mod: Lattice, nxt_mod: Lattice,
                 ell: int):
        self.ring = ring
        self.cur = cur_mod
        self.ell = ell
        n = ring.n
        sub = RowLattice(n)
        for r in nxt_mod.coords_matrix_in(cur_mod):
            sub.add(list(r))
        sub.normalize()
        diag = [sub.rows[i][i] for i in range(n)]
        assert all(d in (1, ell) for d in diag), "level quotient not elementary"
        self.sub = sub
        self.comp = [i for i in range(n) if diag[i] == ell]

    def basis_ring_vecs(self):
        out = []
        for i in self.comp:
            e = AlgElem(self.cur.alg, self.cur.basis[i], self.cur.den).normalized()
            out.append(self.ring.elem_to_vec(e))
        return out

    def coords(self, ring_vec):
        """F_ell-coordinates of a ring vector lying in cur_mod."""
        e = self.ring.vec_to_elem(list(ring_vec))
        c = self.cur.coords_of(e)
        assert c is not None and all(x.denominator == 1 for x in c), \
            "element not in the expected filtration level"
        red = self.sub.reduce([int(x) for x in c])
        return [red[i] % self.ell for i in self.comp]


class UnitGroup:
    """(O/m)^x as a product of local unit groups over the support primes."""

    def __init__(self, order: Order, modulus: Lattice, support: list[MaxIdeal]):
        self.order = order
        self.modulus = modulus
        self.ring = FiniteRing(order, modulus)
        # primary decomposition
        self.parts = []
        for P in support:
            Q = modulus.add(P.lattice)
            power = P.lattice
            while True:
                nxt = modulus.add(power)
                if nxt == Q and power is not P.lattice:
                    break
                Q = nxt
                power = power.mul(P.lattice)
            # Q is now modulus + P^big = P-primary part
            self.parts.append((P, Q))
        # consistency: intersection of the primary parts is the modulus
        inter = None
        for _, Q in self.parts:
            inter = Q if inter is None else inter.intersect(Q)
        if inter is not None:
            assert inter == modulus, "support does not decompose the modulus"
        self.locals = []
        for P, Q in self.parts:
            self.locals.append(LocalUnitGroup(FiniteRing(order, Q), P))
        # global generators via CRT idempotents
        self.gens: list[tuple] = []
        self._gen_split = []
        for i, (P, Q) in enumerate(self.parts):
            others = [Qo for j, (Po, Qo) in enumerate(self.parts) if j != i]
            e = _idempotent(order, Q, others)
            for g in self.locals[i].gens:
                galg = self.locals[i].ring.vec_to_elem(g)
                lifted = order.alg.one() + e * (galg - order.alg.one())
                self.gens.append(self.ring.elem_to_vec(lifted))
        self.relations = _block_diag([L.relations for L in self.locals])
        self.ngens = len(self.gens)
        self.order_count = 1
        for L in self.locals:
            self.order_count *= L.order_count

    def dlog(self, vec):
        out = []
        for (P, Q), L in zip(self.parts, self.locals):
            out.extend(L.dlog(L.ring.elem_to_vec(self.ring.vec_to_elem(vec))))
        return out

    def exp(self, exps):
        out = self.ring.one
        for g, e in zip(self.gens, exps):
            if e:
                out = self.ring.mul(out, self.ring.pow(g, e % self.order_count) if e >= 0 else self.ring.inv(self.ring.pow(g, (-e) % self.order_count)))
        return out

    def elem_dlog(self, e: AlgElem):
        return self.dlog(self.ring.elem_to_vec(e))


def _idempotent(order: Order, Q: Lattice, others: list[Lattice]) -> AlgElem:
    """e = 1 mod Q-complement... element congruent to 1 mod each of `others`
    and 0 mod Q is built; we need 1 mod Q and 0 mod the others."""
    if not others:
        return order.alg.one()
    prod = others[0]
    for o in others[1:]:
        prod = prod.mul(o)
    # solve 1 = a + b with a in Q, b in prod; e := b  (b = 1 mod Q, 0 mod others)
    den = Q.den * prod.den // math.gcd(Q.den, prod.den)
    rows = [[c * (den // Q.den) for c in r] for r in Q.basis]
    rows += [[c * (den // prod.den) for c in r] for r in prod.basis]
    one = order.alg.one()
    sol = solve_left_int(rows, [c * den for c in one.num])
    assert sol is not None, "primary parts not comaximal"
    nQ = len(Q.basis)
    b_vec = [0] * order.alg.degree
    for i in range(len(prod.basis)):
        if sol[nQ + i]:
            for k in range(order.alg.degree):
                b_vec[k] += sol[nQ + i] * prod.basis[i][k]
    return AlgElem(order.alg, b_vec, prod.den).normalized()


def _block_diag(blocks):
    total = sum(len(b[0]) if b else 0 for b in blocks)
    offsets = []
    off = 0
    for b in blocks:
        offsets.append(off)
        off += len(b[0]) if b else 0
    rows = []
    for b, o in zip(blocks, offsets):
        for r in b:
            row = [0] * total
            for j, c in enumerate(r):
                row[o + j] = c
            rows.append(row)
    return rows


# ------------------------------------------------------------ subgroups ----

def solve_in_group(A_rows, rel_target, b):
    """Solve x*A = b in a finitely presented abelian group: A_rows maps
    Z^k -> Z^s, rel_target spans the relation lattice of the target.
    Returns x or None."""
    if not A_rows:
        return None
    k = len(A_rows)
    stacked = [list(r) for r in A_rows] + [list(r) for r in rel_target]
    sol = solve_left_int(stacked, list(b))
    if sol is None:
        return None
    return sol[:k]


def subgroup_with_quotient(ngens, relations, sub_vectors):
    """Quotient of Z^ngens/relations by the subgroup generated by sub_vectors.

    Returns (invariants, transversal) where the transversal lists exponent
    vectors (in the ambient generators) for every element of the quotient."""
    rows = [list(r) for r in relations] + [list(v) for v in sub_vectors]
    if not rows:
        rows = [[0] * ngens]
    D, U, V = snf_with_transforms(rows)
    # quotient group Z^n / rowspan: invariants from SNF diagonal
    diag = [D[i][i] if i < len(D) and i < len(D[0]) else 0
            for i in range(ngens)]
    # pad: if rows < ngens columns rank-deficient -> infinite quotient
    rank = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i] != 0)
    assert rank == ngens, "quotient is infinite"
    invariants = [diag[i] for i in range(ngens) if diag[i] not in (0, 1)]
    # transversal: x = y * V^{-1}... coordinates: Z^n / L with L = rowspan(rows)
    # columns transform: new coords z = x * V; L becomes diagonal D
    # so transversal: z ranges over prod Z/d_i; x = z * V^{-1}
    Vinv = _int_inverse(V)
    from itertools import product as iproduct

    ranges = [range(d) for d in diag]
    transversal = []
    for tup in iproduct(*[range(d) if d > 1 else range(1) for d in diag]):
        x = [sum(tup[i] * Vinv[i][j] for i in range(ngens)) for j in range(ngens)]
        transversal.append(x)
    return invariants, transversal


def _int_inverse(V):
    n = len(V)
    from fractions import Fraction

    A = [[Fraction(V[i][j]) for j in range(n)] + [Fraction(1 if k == i else 0) for k in range(n)]
         for i in range(n)]
    for j in range(n):
        piv = next(i for i in range(j, n) if A[i][j] != 0)
        A[j], A[piv] = A[piv], A[j]
        d = A[j][j]
        A[j] = [c / d for c in A[j]]
        for i in range(n):
            if i != j and A[i][j] != 0:
                c = A[i][j]
                A[i] = [x - c * y for x, y in zip(A[i], A[j])]
    out = [[A[i][n + j] for j in range(n)] for i in range(n)]
    assert all(c.denominator == 1 for row in out for c in row)
    return [[int(c) for c in row] for row in out]
