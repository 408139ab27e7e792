"""Global avatar of the p-adic theory: the algebra A~ = L~ (x) E, its orders
W~_R and O_A~, the diagonal embedding of E, primes over the places of slope
in (0,1), nice uniformizers, and finite-quotient approximations of the
coefficient Frobenius sigma."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .etale import AlgElem, EtaleAlgebra
from .intarith import inv_mod, valuation
from .intmat import kernel_int, solve_left_int
from .intpoly import IntPoly
from .lattices import Lattice, Order
from .localinv import PlaceData
from .orders import (
    MaxIdeal,
    anti_uniformizer,
    equation_order,
    maximal_ideals_above,
    maximal_order_of,
    prime_valuation,
    prime_valuation_of_int,
    ramification_index,
)
from .polyfactor import factor_mod_p
from .weil import FrobeniusAlgebra


def choose_inertia_polynomial(p: int, a: int, skip: int = 0) -> IntPoly:
    """Lift of an irreducible degree-a factor of x^(q-1) - 1 mod p with
    coefficients in [0, p); least (by ascending coefficient tuple), with
    `skip` allowing the choice-independence cross-test to take the next one."""
    if a == 1:
        return IntPoly([-1, 1])
    q = p**a
    f = IntPoly([-1] + [0] * (q - 2) + [1])  # x^(q-1) - 1
    facs = [g for g, _ in factor_mod_p(f, p) if g.degree == a]
    facs.sort(key=lambda g: g.coeffs)
    return facs[skip % len(facs)]


class _TensorElem:
    """Element of L~ (x) E as a matrix c[j][i] (zeta^j * pi^i coefficients)."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = c


class _TensorAlgebra:
    def __init__(self, cpoly: IntPoly, hpoly: IntPoly):
        self.a = cpoly.degree
        self.n = hpoly.degree
        self.cpoly = cpoly
        self.hpoly = hpoly
        self.Lred = _power_table(cpoly)
        self.Ered = _power_table(hpoly)

    def zero(self):
        return [[Fraction(0)] * self.n for _ in range(self.a)]

    def one(self):
        z = self.zero()
        z[0][0] = Fraction(1)
        return z

    def mul(self, x, y):
        a, n = self.a, self.n
        big = [[Fraction(0)] * (2 * n - 1) for _ in range(2 * a - 1)]
        for j1 in range(a):
            row1 = x[j1]
            for j2 in range(a):
                row2 = y[j2]
                tgt = big[j1 + j2]
                for i1 in range(n):
                    v = row1[i1]
                    if v:
                        for i2 in range(n):
                            if row2[i2]:
                                tgt[i1 + i2] += v * row2[i2]
        # reduce pi-powers
        mid = [[Fraction(0)] * n for _ in range(2 * a - 1)]
        for j in range(2 * a - 1):
            row = big[j]
            out = list(row[:n])
            for k in range(n, 2 * n - 1):
                v = row[k]
                if v:
                    red = self.Ered[k - n]
                    for t in range(n):
                        if red[t]:
                            out[t] += v * red[t]
            mid[j] = out
        # reduce zeta-powers
        out = [row[:] for row in mid[: self.a]]
        for j in range(a, 2 * a - 1):
            row = mid[j]
            if any(row):
                red = self.Lred[j - a]
                for s in range(a):
                    if red[s]:
                        for t in range(n):
                            if row[t]:
                                out[s][t] += red[s] * row[t]
        return out

    def flatten(self, x):
        return [x[j][i] for j in range(self.a) for i in range(self.n)]


def _power_table(f: IntPoly):
    """Rows: coordinates of x^(deg+k) mod f, k = 0..deg-2."""
    n = f.degree
    if n <= 1:
        return []
    rows = []
    cur = [-c for c in f.coeffs[:-1]]
    rows.append(list(cur))
    for _ in range(n - 2):
        nxt = [0] + cur[:-1]
        top = cur[-1]
        if top:
            for j in range(n):
                nxt[j] -= top * f.coeffs[j]
        cur = nxt
        rows.append(list(cur))
    return rows


@dataclass
class PlacePrimes:
    place: PlaceData
    primes: list[MaxIdeal]          # primes of O_A~ over the place
    uniformizers: list[AlgElem]     # nice uniformizer per prime


class GlobalModel:
    """All global data the Dieudonne-side algorithms consume."""

    def __init__(self, fa: FrobeniusAlgebra, places: list[PlaceData],
                 c_skip: int = 0):
        w = fa.weil
        self.fa = fa
        self.weil = w
        self.places = places
        self.cpoly = choose_inertia_polynomial(w.p, w.a, skip=c_skip)
        a, h = w.a, w.h
        nA = a * h.degree

        if a == 1:
            self.algebra = fa.algebra
            self._tensor_to_A = None
            self.delta_pi = fa.frobenius
            self.zeta = fa.algebra.one()
        else:
            T = _TensorAlgebra(self.cpoly, h)
            # primitive element theta = pi + t*zeta
            theta_poly = None
            for t in range(1, 40):
                theta = T.zero()
                theta[0][1] = Fraction(1)
                theta[1][0] = Fraction(t)
                pows = [T.one()]
                for _ in range(nA):
                    pows.append(T.mul(pows[-1], theta))
                rows = [_scaled_int_row(T.flatten(pw)) for pw in pows]
                den = 1
                for r, d in rows:
                    den = den * d // math.gcd(den, d)
                mat = [[c * (den // d) for c in r] for r, d in rows]
                ker = kernel_int(mat)
                if len(ker) == 1 and ker[0][nA] != 0:
                    v = ker[0]
                    fr = [Fraction(v[i], v[nA]) for i in range(nA)]
                    if all(x.denominator == 1 for x in fr):
                        theta_poly = IntPoly([int(x) for x in fr] + [1])
                        self._theta_t = t
                        break
            assert theta_poly is not None, "no primitive element found"
            self.algebra = EtaleAlgebra(theta_poly)
            # change of basis: tensor coords -> theta-power coords
            # rows of `mat`: theta^k in tensor coords; tensor coords of an
            # element x give theta-coords by solving y * M = x
            M = mat[:nA]
            self._tensor_den = den
            self._tensor_M = M
            zeta_t = T.zero()
            zeta_t[1][0] = Fraction(1)
            pi_t = T.zero()
            pi_t[0][1] = Fraction(1)
            self.zeta = self._from_tensor(T.flatten(zeta_t))
            self.delta_pi = self._from_tensor(T.flatten(pi_t))

        # embeddings
        self._delta_pows = [self.algebra.one()]
        for _ in range(h.degree - 1):
            self._delta_pows.append(self._delta_pows[-1] * self.delta_pi)
        assert self.embed(fa.frobenius).minpoly().num == h, "delta(pi) must satisfy h"

        # L-tilde ring of integers (inside A~): zeta-power algebra
        if a == 1:
            self.OL_elems = [self.algebra.one()]
        else:
            Lalg = EtaleAlgebra(self.cpoly)
            OL = maximal_order_of(Lalg)
            self.OL_elems = []
            for b in OL.lattice.elements():
                acc = self.algebra.zero()
                zpow = self.algebra.one()
                for cc in b.num:
                    if cc:
                        acc = acc + zpow * cc
                    zpow = zpow * self.zeta
                self.OL_elems.append((acc * Fraction(1, b.den)).normalized())
        self._build_orders()
        self._rebase_to_maximal_order()

    # -- basis plumbing ------------------------------------------------------
    def _from_tensor(self, flat) -> AlgElem:
        target = [c * self._tensor_den for c in flat]
        y = _solve_rational(self._tensor_M, target)
        assert y is not None, "tensor coords outside the theta power basis"
        return self.algebra.element(y)

    def embed(self, x: AlgElem) -> AlgElem:
        """Diagonal embedding E -> A~ (pi to the class of x in each factor)."""
        acc = self.algebra.zero()
        for c, pw in zip(x.num, self._delta_pows):
            if c:
                acc = acc + pw * c
        return (acc * Fraction(1, x.den)).normalized() if x.den != 1 else acc.normalized()

    def preimage(self, y: AlgElem) -> AlgElem | None:
        """x in E with embed(x) = y, or None."""
        n = self.fa.algebra.degree
        den = y.den
        for pw in self._delta_pows:
            den = den * pw.den // math.gcd(den, pw.den)
        rows = [[c * (den // pw.den) for c in pw.num] for pw in self._delta_pows]
        target = [c * (den // y.den) for c in y.num]
        sol = _solve_rational(rows, target)
        if sol is None:
            return None
        return self.fa.algebra.element(sol)

    # -- orders ----------------------------------------------------------------
    def _build_orders(self):
        fa = self.fa
        from .orders import make_R, maximal_order, order_discriminant
        from .intarith import factorize

        self.OE = maximal_order(fa)
        self.R = make_R(fa)
        gens_WR = []
        gens_OA = []
        for z in self.OL_elems:
            for r in self.R.lattice.elements():
                gens_WR.append(z * self.embed(r))
            for b in self.OE.lattice.elements():
                gens_OA.append(z * self.embed(b))
        self.WR = Order(Lattice.from_elements(self.algebra, gens_WR))
        tensor_order = Order(Lattice.from_elements(self.algebra, gens_OA))
        # maximal at p already; close up at primes dividing the two discs
        cur = tensor_order
        from .orders import p_maximalize

        disc = order_discriminant(cur)
        for ell in sorted(factorize(disc)):
            if disc % (ell * ell) == 0:
                cur = p_maximalize(cur, ell)
        self.OA = cur
        assert self.OA.lattice.contains_lattice(self.WR.lattice)
        self._sigma_cache: dict[int, "SigmaApprox"] = {}
        self._uniformizer_cache = None

    def _match_places(self):
        p = self.weil.p
        primes = maximal_ideals_above(self.OA, p)
        self.place_primes: list[PlacePrimes] = []
        used = set()
        for pl in self.places:
            mine = []
            gens = [self.embed(e) for e in pl.prime.lattice.elements()]
            for Q in primes:
                if all(Q.lattice.contains(g) for g in gens):
                    mine.append(Q)
                    used.add(Q.key())
            assert len(mine) == pl.g, (
                f"expected {pl.g} primes over the place, found {len(mine)}")
            for Q in mine:
                assert Q.residue_degree == pl.f * self.weil.a // pl.g
                assert ramification_index(self.OA, Q) == pl.e
            self.place_primes.append(PlacePrimes(place=pl, primes=mine,
                                                 uniformizers=[]))
        assert len(used) == len(primes), "every prime of O_A~ lies over a place"

    def _rebase_to_maximal_order(self):
        """Switch to coordinates on the maximal order: O_A~ becomes the
        identity lattice and every entry is index-bounded from here on."""
        from .etale import CoordAlgebra

        if self.weil.a == 1:
            self.power_algebra = self.algebra
            self.component_degrees = [g.degree for g in self.algebra.components]
            self._match_places()
            return
        power_alg = self.algebra
        OAlat = self.OA.lattice
        els = OAlat.elements()
        n = power_alg.degree
        mult_mats = []
        for i in range(n):
            rows = []
            for j in range(n):
                coords = OAlat.coords_of(els[i] * els[j])
                assert coords is not None and all(c.denominator == 1 for c in coords)
                rows.append([int(c) for c in coords])
            mult_mats.append(rows)
        one_coords = [int(c) for c in OAlat.coords_of(power_alg.one())]
        coord_alg = CoordAlgebra(mult_mats, one_coords)
        self.power_algebra = power_alg
        self.component_degrees = [g.degree for g in power_alg.components]
        self._power_OA = OAlat

        def conv_elem(e: AlgElem) -> AlgElem:
            coords = OAlat.coords_of(e)
            assert coords is not None
            den = 1
            for c in coords:
                den = den * c.denominator // math.gcd(den, c.denominator)
            return AlgElem(coord_alg, tuple(int(c * den) for c in coords),
                           den).normalized()

        def conv_lattice(L: Lattice) -> Lattice:
            rows = []
            den = 1
            coords_rows = []
            for r in L.basis:
                e = AlgElem(power_alg, r, L.den)
                coords = OAlat.coords_of(e)
                assert coords is not None
                coords_rows.append(coords)
                for c in coords:
                    den = den * c.denominator // math.gcd(den, c.denominator)
            for coords in coords_rows:
                rows.append([int(c * den) for c in coords])
            return Lattice(coord_alg, rows, den)

        self._conv_elem = conv_elem
        self.algebra = coord_alg
        self.OA = Order(conv_lattice(OAlat))
        self.WR = Order(conv_lattice(self.WR.lattice))
        self.zeta = conv_elem(self.zeta)
        self.delta_pi = conv_elem(self.delta_pi)
        self._delta_pows = [conv_elem(e) for e in self._delta_pows]
        self.OL_elems = [conv_elem(e) for e in self.OL_elems]
        self._match_places()

    # -- nice uniformizers -----------------------------------------------------
    def local_local_primes(self) -> list[tuple[PlaceData, list[MaxIdeal]]]:
        return [(pp.place, pp.primes) for pp in self.place_primes
                if 0 < pp.place.slope < 1]

    def nice_uniformizers(self):
        """Per slope-(0,1) place: elements with valuation 1 at one prime over
        it and 0 at every other prime of O_A~ above p."""
        if self._uniformizer_cache is not None:
            return self._uniformizer_cache
        out = {}
        ll = self.local_local_primes()
        all_p_primes = [Q for pp in self.place_primes for Q in pp.primes]
        for pl, primes in ll:
            for i, Q in enumerate(primes):
                Q2 = Q.lattice.mul(Q.lattice)
                b = next(e for e in Q.lattice.elements()
                         if not Q2.contains(e))
                # CRT: b mod Q^2; 1 mod every other prime above p
                moduli = [Lattice(self.algebra, Q2.basis, Q2.den)]
                targets = [b]
                for other in all_p_primes:
                    if other.key() != Q.key():
                        moduli.append(other.lattice)
                        targets.append(self.algebra.one())
                t = _crt_element(self.OA, moduli, targets)
                # only the p-valuations of t matter downstream; reduce the
                # representative mod p^3 to keep coordinates small
                t = _elem_from_coords(
                    self.OA.lattice,
                    [c % self.weil.p**3 for c in _int_oa_coords(self, t)])
                anti = anti_uniformizer(self.OA, Q)
                assert prime_valuation_elem(self.OA, Q, t, anti) == 1
                for other in all_p_primes:
                    if other.key() != Q.key():
                        assert prime_valuation_elem(self.OA, other, t) == 0
                out[(pl.key(), i)] = t
        self._uniformizer_cache = out
        return out

    # -- sigma approximation ----------------------------------------------------
    def sigma(self, m: int) -> "SigmaApprox":
        if m not in self._sigma_cache:
            self._sigma_cache[m] = SigmaApprox(self, m)
        return self._sigma_cache[m]


def _int_oa_coords(gm, e: AlgElem):
    coords = gm.OA.lattice.coords_of(e)
    assert coords is not None
    assert all(c.denominator == 1 for c in coords)
    return [int(c) for c in coords]


def prime_valuation_elem(O: Order, P: MaxIdeal, x: AlgElem, anti=None) -> int:
    if anti is None:
        anti = anti_uniformizer(O, P)
    assert O.lattice.contains(x), "valuation of non-integral element"
    v = 0
    cur = x
    while O.lattice.contains(cur):
        cur = cur * anti
        v += 1
    return v - 1


def _scaled_int_row(flat):
    den = 1
    for c in flat:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in flat], den


def _solve_rational(rows, target):
    """Solve y * rows = target over Q (rows full row rank)."""
    from fractions import Fraction as F

    m = len(rows)
    n = len(rows[0])
    A = [[F(c) for c in r] + [F(1) if k == i else F(0) for k in range(m)]
         for i, r in enumerate(rows)]
    t = [F(c) for c in target]
    # gaussian elimination on columns of rows
    used = []
    for j in range(n):
        piv = next((i for i in range(len(used), m) if A[i][j] != 0), None)
        if piv is None:
            continue
        A[len(used)], A[piv] = A[piv], A[len(used)]
        r = len(used)
        d = A[r][j]
        A[r] = [c / d for c in A[r]]
        for i in range(m):
            if i != r and A[i][j] != 0:
                c = A[i][j]
                A[i] = [x - c * y for x, y in zip(A[i], A[r])]
        used.append(j)
        if len(used) == m:
            break
    y = [F(0)] * m
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


def _crt_element(O: Order, moduli: list[Lattice], targets: list[AlgElem]) -> AlgElem:
    """Element of O congruent to targets[i] mod moduli[i] (pairwise comaximal
    integral O-ideals)."""
    cur_x = targets[0]
    cur_mod = moduli[0]
    for M, t in zip(moduli[1:], targets[1:]):
        # find a in cur_mod, b in M with a + b = 1
        den = cur_mod.den * M.den // math.gcd(cur_mod.den, M.den)
        rows = [[c * (den // cur_mod.den) for c in r] for r in cur_mod.basis]
        rows += [[c * (den // M.den) for c in r] for r in M.basis]
        one = O.alg.one()
        sol = solve_left_int(rows, [c * den for c in one.num])
        assert sol is not None, "moduli not comaximal"
        na = len(cur_mod.basis)
        a_vec = [0] * O.alg.degree
        for i in range(na):
            if sol[i]:
                for k in range(O.alg.degree):
                    a_vec[k] += sol[i] * cur_mod.basis[i][k]
        a = AlgElem(O.alg, a_vec, cur_mod.den).normalized()  # a in cur_mod
        b = one - a                                           # b in M
        x = t * a + cur_x * b
        cur_mod = cur_mod.mul(M)
        cur_x = x
    return cur_x.normalized()


class SigmaApprox:
    """The coefficient Frobenius on O_A~/p^m, via a Teichmueller generator."""

    def __init__(self, gm: GlobalModel, m: int):
        self.gm = gm
        self.m = m
        w = gm.weil
        p, a, q = w.p, w.a, w.q
        pm = p**m
        self.modulus = pm
        n = gm.algebra.degree
        if a == 1:
            self.matrix = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            self._post_checks()
            return
        # o_L = (Z/p^m)[zeta image], basis zeta^s in A-coordinates
        OAlat = gm.OA.lattice
        zpows = [gm.algebra.one()]
        for _ in range(a - 1):
            zpows.append(zpows[-1] * gm.zeta)
        # find u generating (O_L/p)^x: try small combinations of zeta powers
        Fq_card = q
        u = None
        from itertools import product as iproduct

        for coeffs in iproduct(range(p), repeat=a):
            if not any(coeffs):
                continue
            cand = gm.algebra.zero()
            for c, zp in zip(coeffs, zpows):
                if c:
                    cand = cand + zp * c
            if _mult_order_mod(gm, cand, p) == Fq_card - 1:
                u = cand
                break
        assert u is not None, "no generator of the residue field found"
        # Teichmueller: iterate u -> u^q until stable mod p^m (on OA coords)
        z = u
        for _ in range(10 * m + 10):
            znew = _pow_mod_lattice(gm, z, q, pm)
            if _coords_mod(OAlat, znew, pm) == _coords_mod(OAlat, z, pm):
                z = znew
                break
            z = znew
        assert _coords_mod(OAlat, _pow_mod_lattice(gm, z, q, pm), pm) == \
            _coords_mod(OAlat, z, pm), "Teichmueller iteration did not stabilize"
        self.z = z
        # module basis: z^s * delta(w_j) for OE basis w_j
        wbasis = gm.OE.lattice.elements()
        mod_basis = []
        zp = gm.algebra.one()
        zs = [gm.algebra.one()]
        for _ in range(a - 1):
            zs.append(zs[-1] * z)
        for s in range(a):
            for wj in wbasis:
                mod_basis.append(zs[s] * gm.embed(wj))
        B = [_coords_mod(OAlat, e, pm) for e in mod_basis]
        Binv = _matinv_mod(B, p, m)
        # sigma on o_L sends z^s to z^(p*s) (z is Teichmueller)
        zsig = [gm.algebra.one()]
        for s in range(1, a):
            zsig.append(_pow_mod_lattice(gm, z, p * s, pm))
        # sigma(basis element i) = sum_j c_{i,(s,j)} z^(ps) delta(w_j)
        rows = []
        for i in range(n):
            coords = [0] * n
            coords[i] = 1
            cvec = _vecmat_mod(coords, Binv, pm)
            img = gm.algebra.zero()
            idx = 0
            for s in range(a):
                for j in range(len(wbasis)):
                    c = cvec[idx]
                    idx += 1
                    if c:
                        img = img + (zsig[s] * gm.embed(wbasis[j])) * c
            rows.append(_coords_mod(OAlat, img, pm))
        self.matrix = rows
        self._post_checks()

    def apply_coords(self, vec):
        """Apply sigma to O_A~ coordinates (mod p^m)."""
        pm = self.modulus
        n = len(self.matrix)
        out = [0] * n
        for i, c in enumerate(vec):
            if c % pm:
                row = self.matrix[i]
                for j in range(n):
                    if row[j]:
                        out[j] += c * row[j]
        return [c % pm for c in out]

    def _post_checks(self):
        gm = self.gm
        pm = self.modulus
        OAlat = gm.OA.lattice
        # sigma^a = id and sigma fixes delta(pi)
        vec = _coords_mod(OAlat, gm.embed(gm.fa.frobenius), pm)
        assert self.apply_coords(vec) == vec, "sigma must fix delta(pi)"
        for i in range(len(self.matrix)):
            v = [1 if k == i else 0 for k in range(len(self.matrix))]
            cur = v
            for _ in range(gm.weil.a):
                cur = self.apply_coords(cur)
            assert cur == v, "sigma^a must be the identity"


def _coords_mod(lat: Lattice, e: AlgElem, pm: int):
    coords = lat.coords_of(e)
    assert coords is not None, "element not in the order"
    out = []
    for c in coords:
        num, den = c.numerator, c.denominator
        assert math.gcd(den, pm) == 1, "denominator not invertible mod p^m"
        out.append(num * inv_mod(den, pm) % pm if den != 1 else num % pm)
    return out


def _elem_from_coords(lat: Lattice, coords) -> AlgElem:
    n = lat.alg.degree
    vec = [0] * n
    for i, c in enumerate(coords):
        if c:
            for t in range(n):
                vec[t] += c * lat.basis[i][t]
    return AlgElem(lat.alg, vec, lat.den).normalized()


def _pow_mod_lattice(gm: GlobalModel, x: AlgElem, e: int, pm: int) -> AlgElem:
    """x^e with coordinates reduced mod p^m in O_A~ at every step."""
    lat = gm.OA.lattice
    out = gm.algebra.one()
    base = x
    while e:
        if e & 1:
            out = _elem_from_coords(lat, _coords_mod(lat, out * base, pm))
        base = _elem_from_coords(lat, _coords_mod(lat, base * base, pm))
        e >>= 1
    return out


def _mult_order_mod(gm: GlobalModel, x: AlgElem, p: int) -> int:
    """Multiplicative order of x in O_A~/p restricted to the o_L part...
    order of x mod p (0 if not a unit)."""
    lat = gm.OA.lattice
    one = _coords_mod(lat, gm.algebra.one(), p)
    cur = x
    for k in range(1, p ** (gm.weil.a) + 1):
        if _coords_mod(lat, cur, p) == one:
            return k
        cur = _elem_from_coords(lat, _coords_mod(lat, cur * x, p))
    return 0


def _matinv_mod(B, p: int, m: int):
    """Inverse of B mod p^m by lifting the mod-p inverse (Newton)."""
    from .modp import rref_mod

    n = len(B)
    pm = p**m
    # invert mod p by gaussian elimination
    aug = [[B[i][j] % p for j in range(n)] + [1 if k == i else 0 for k in range(n)]
           for i in range(n)]
    R, piv = rref_mod(aug, p)
    assert piv == list(range(n)), "matrix not invertible mod p"
    X = [row[n:] for row in R]
    # newton lifting: X <- X(2I - BX) mod p^(2k)
    k = 1
    while k < m:
        k = min(2 * k, m)
        mod = p**k
        BX = _matmul_mod_int(B, X, mod)
        twoI = [[(2 if i == j else 0) - BX[i][j] for j in range(n)] for i in range(n)]
        X = _matmul_mod_int(X, twoI, mod)
    return [[c % pm for c in row] for row in X]


def _matmul_mod_int(A, B, mod):
    n = len(A)
    m = len(B[0])
    k = len(B)
    Bc = list(zip(*B))
    return [[sum(A[i][t] * Bc[j][t] for t in range(k)) % mod for j in range(m)]
            for i in range(n)]


def _vecmat_mod(v, M, mod):
    n = len(M)
    m = len(M[0])
    return [sum(v[i] * M[i][j] for i in range(n)) % mod for j in range(m)]
