"""Picard groups of orders in E.

Per CM component: torsion and fundamental units plus the class group, found
by exact lattice-point enumeration under the rational trace form
Tr(x * conj(y)) and certified by exhaustive non-principality tests. The
conductor exact sequence then assembles Pic(S) for any order S.

Backends: "naive" computes component data live under configurable caps;
"fixture" loads committed component data files.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .etale import AlgElem, EtaleAlgebra
from .finitequot import UnitGroup
from .intarith import factorize, is_prime, isqrt_ceil, valuation
from .intmat import solve_left_int
from .intpoly import IntPoly
from .lattices import Lattice, Order
from .orders import (
    MaxIdeal,
    anti_uniformizer,
    conductor,
    equation_order,
    maximal_ideals_above,
    maximal_order_of,
    order_discriminant,
    prime_valuation,
    singular_primes,
)


class PicardBoundExceeded(RuntimeError):
    """Naive backend exceeded its configured bounds; use the fixture backend."""


FIXTURE_SCHEMA_VERSION = 1


# ------------------------------------------------------- quadratic forms ---

def trace_pairing_gram(alg: EtaleAlgebra, conj, basis_elems):
    """Gram matrix of (x, y) -> Tr(x * conj(y)) on the given basis."""
    n = len(basis_elems)
    conj_els = [conj(b) for b in basis_elems]
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            G[i][j] = (basis_elems[i] * conj_els[j]).trace()
    # symmetrize (it is symmetric; guard against convention slips)
    for i in range(n):
        for j in range(i + 1, n):
            assert G[i][j] == G[j][i]
    return G


def fincke_pohst(G, bound: Fraction, limit: int | None = None):
    """All integer vectors x != 0 (up to sign) with x G x^T <= bound.

    Exact rational Cholesky; yields tuples. `limit` caps the output size."""
    n = len(G)
    q = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    # Cholesky-style decomposition: x G x^T = sum_i d_i (x_i + sum_j q_ij x_j)^2
    A = [row[:] for row in G]
    for i in range(n):
        d[i] = A[i][i]
        assert d[i] > 0, "form must be positive definite"
        for j in range(i + 1, n):
            q[i][j] = A[i][j] / d[i]
        for k in range(i + 1, n):
            for l in range(k, n):
                A[k][l] -= A[k][i] * A[i][l] / d[i]
                A[l][k] = A[k][l]
    out = []

    def rec(i, rem, partial):
        if len(out) > (limit or 10**9):
            raise PicardBoundExceeded("short-vector enumeration blew past cap")
        if i < 0:
            if any(partial):
                out.append(tuple(partial))
            return
        center = -sum(q[i][j] * partial[j] for j in range(i + 1, n))
        radius2 = rem / d[i]
        # integer range around center with (x - center)^2 <= radius2
        lo = center
        # integer bounds via exact comparisons
        r_int = _isqrt_frac(radius2)
        start = _ceil_frac(center - r_int - 1)
        stop = _floor_frac(center + r_int + 1)
        for x in range(start, stop + 1):
            diff = Fraction(x) - center
            cost = d[i] * diff * diff
            if cost <= rem:
                partial[i] = x
                rec(i - 1, rem - cost, partial)
        partial[i] = 0

    # canonical sign: leading nonzero coordinate positive; enumerate all and
    # filter, cheaper to enumerate with last coordinate >= 0
    def rec_all():
        rec(n - 1, Fraction(bound), [0] * n)

    rec_all()
    # dedupe sign pairs
    seen = set()
    final = []
    for v in out:
        nv = tuple(-c for c in v)
        if nv in seen:
            continue
        seen.add(v)
        final.append(v)
    return final


def _isqrt_frac(x: Fraction) -> int:
    if x < 0:
        return 0
    return isqrt_ceil(x.numerator // x.denominator + 1)


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


# ------------------------------------------------------- component data ----

@dataclass
class ComponentData:
    poly: IntPoly
    alg: EtaleAlgebra
    maximal: Order
    disc: int
    torsion_order: int
    torsion_gen: AlgElem
    fundamental_units: list[AlgElem]
    cl_invariants: list[int]
    cl_gens: list[Lattice]          # ideals of the component maximal order
    cl_gen_orders: list[int]
    cl_rel_gens: list[AlgElem]      # generator of cl_gens[i] ** order
    backend: str = "naive"

    def class_number(self) -> int:
        h = 1
        for d in self.cl_invariants:
            h *= d
        return h


@dataclass
class NaiveBounds:
    unit_t2_cap: Fraction = Fraction(10**7)
    enum_cap: int = 400000
    relation_rounds: int = 40
    unit_rank_required: bool = True


def _conj_map(alg: EtaleAlgebra, q: int):
    """x -> image of q/x: complex conjugation on a CM component of E."""
    gen_inv = alg.gen().inverse()
    qinv = gen_inv * q
    pows = [alg.one()]
    for _ in range(alg.degree - 1):
        pows.append(pows[-1] * qinv)

    def conj(x: AlgElem) -> AlgElem:
        acc = alg.zero()
        for c, pw in zip(x.num, pows):
            if c:
                acc = acc + pw * c
        return (acc * Fraction(1, x.den)).normalized() if x.den != 1 else acc.normalized()

    return conj


def _minkowski_bound(disc: int, n: int) -> int:
    # (4/pi)^(n/2) * n!/n^n * sqrt(|disc|), rounded up; 4/pi < 1.2733
    r2 = n // 2
    bound = Fraction(12733, 10000) ** r2 * Fraction(math.factorial(n), n**n)
    s = isqrt_ceil(abs(disc))
    return int(bound * s) + 1


def _ideal_of_element(O: Order, x: AlgElem) -> Lattice:
    return O.lattice.mul_elem(x)


def compute_component_data(poly: IntPoly, q: int,
                           bounds: NaiveBounds | None = None) -> ComponentData:
    """Class group and units of the maximal order of Q[x]/poly (CM)."""
    bounds = bounds or NaiveBounds()
    alg = EtaleAlgebra(poly)
    O = maximal_order_of(alg)
    disc = order_discriminant(O)
    n = alg.degree
    conj = _conj_map(alg, q)
    basis = O.lattice.elements()
    G = trace_pairing_gram(alg, conj, basis)

    # torsion: units with Tr(x conj(x)) = n
    tors = [v for v in fincke_pohst(G, Fraction(n), limit=bounds.enum_cap)]
    tors_elems = [_from_coords(O, v) for v in tors]
    tors_units = [u for u in tors_elems if abs(u.norm()) == 1]
    w = 2 * len(tors_units)  # sign pairs were deduped
    # find a generator of the torsion group
    tgen = None
    for u in tors_units + [-u for u in tors_units]:
        if _mult_order(alg, u, 2 * w + 2) == w:
            tgen = u
            break
    assert tgen is not None, "torsion group must be cyclic"

    rank = n // 2 - 1
    fundamentals: list[AlgElem] = []
    if rank > 0:
        fundamentals = _find_units(alg, O, G, conj, rank, bounds)
        fundamentals = _saturate_units(alg, O, G, conj, tgen, w, fundamentals,
                                       bounds)

    cl_inv, cl_gens, cl_orders, cl_rels = _class_group(
        alg, O, G, conj, disc, tgen, w, fundamentals, bounds)
    return ComponentData(poly=poly, alg=alg, maximal=O, disc=disc,
                         torsion_order=w, torsion_gen=tgen,
                         fundamental_units=fundamentals,
                         cl_invariants=cl_inv, cl_gens=cl_gens,
                         cl_gen_orders=cl_orders, cl_rel_gens=cl_rels)


def _from_coords(O: Order, v) -> AlgElem:
    n = O.alg.degree
    vec = [0] * n
    for i, c in enumerate(v):
        if c:
            for t in range(n):
                vec[t] += c * O.lattice.basis[i][t]
    return AlgElem(O.alg, vec, O.lattice.den).normalized()


def _mult_order(alg, u: AlgElem, cap: int) -> int | None:
    cur = u
    for k in range(1, cap + 1):
        if cur == alg.one():
            return k
        cur = cur * u
    return None


def _log_embedding(alg: EtaleAlgebra, conj, x: AlgElem):
    """Float vector (log |x|^2 at each complex place), via the characteristic
    polynomial of x * conj(x) (totally positive; its roots are the |x|^2)."""
    y = x * conj(x)
    cp = y.charpoly()
    fr = cp.fractions()
    import numpy as np

    roots = np.roots([float(c) for c in reversed(fr)])
    vals = sorted(float(abs(r)) for r in roots)
    # each |x|^2 appears twice in the degree-n char poly (conjugate pairs)
    return [math.log(v) for v in vals[::2]]


def _find_units(alg, O, G, conj, rank, bounds: NaiveBounds):
    """A full-rank set of independent units, by growing the search radius."""
    n = alg.degree
    found: list[AlgElem] = []
    logs: list[list[float]] = []
    bound = Fraction(4 * n)
    while True:
        vecs = fincke_pohst(G, bound, limit=bounds.enum_cap)
        for v in vecs:
            u = _from_coords(O, v)
            if u.is_zero() or abs(u.norm()) != 1:
                continue
            lv = _log_embedding(alg, conj, u)
            if _rank_of(logs + [lv]) > len(logs):
                found.append(u)
                logs.append(lv)
                if len(found) == rank:
                    return found
        bound *= 4
        if bound > bounds.unit_t2_cap:
            raise PicardBoundExceeded(
                "unit search exceeded the T2 cap; use the fixture backend")


def _rank_of(rows, tol=1e-9):
    import numpy as np

    if not rows:
        return 0
    m = np.array(rows, dtype=float)
    return int(np.linalg.matrix_rank(m, tol=tol))


def _regulator(logs):
    import numpy as np

    m = np.array(logs, dtype=float)
    # drop one coordinate (sum is fixed); regulator = |det| of the square part
    if m.shape[0] == 0:
        return 1.0
    sq = m[:, : m.shape[0]]
    return abs(float(np.linalg.det(sq)))


def _saturate_units(alg, O, G, conj, tgen, w, units, bounds: NaiveBounds):
    """Reduce the found unit subgroup to the full unit group.

    Index bound from the unconditional regulator lower bound (0.2), with a
    safety factor; exact p-th-root tests by bounded enumeration."""
    logs = [_log_embedding(alg, conj, u) for u in units]
    reg = _regulator(logs)
    index_bound = max(1, int(reg / 0.2 * 1.5) + 1)
    p = 2
    while p <= index_bound:
        if is_prime(p):
            changed = True
            while changed:
                changed = False
                for exps in _exponent_tuples(len(units), p):
                    cand = alg.one()
                    for u, e in zip(units, exps):
                        if e:
                            cand = cand * u**e
                    for t in range(w):
                        target = cand * tgen**t
                        root = _nth_root_in_order(alg, O, G, conj, target, p,
                                                  bounds)
                        if root is not None:
                            # replace a unit with nonzero exponent by the root
                            i = next(i for i, e in enumerate(exps) if e)
                            units[i] = root
                            logs = [_log_embedding(alg, conj, u) for u in units]
                            reg = _regulator(logs)
                            changed = True
                            break
                    if changed:
                        break
            index_bound = max(1, int(reg / 0.2 * 1.5) + 1)
        p += 1
    return units


def _exponent_tuples(k, p):
    from itertools import product

    for tup in product(range(p), repeat=k):
        if any(tup) and next(c for c in tup if c) == 1:
            yield tup


def _nth_root_in_order(alg, O, G, conj, target: AlgElem, p: int,
                       bounds: NaiveBounds) -> AlgElem | None:
    """v in O with v^p = target (target a unit), by bounded enumeration."""
    # T2(v) = sum |target_i|^(2/p) <= n * max(1, T2(target))
    t2 = (target * conj(target)).trace()
    n = alg.degree
    bound = Fraction(n) * (1 + t2)  # generous: |t|^(2/p) <= max(1, |t|^2)
    if bound > bounds.unit_t2_cap:
        raise PicardBoundExceeded("root-test bound exceeds the T2 cap")
    for v in fincke_pohst(G, bound, limit=bounds.enum_cap):
        u = _from_coords(O, v)
        if abs(u.norm()) != 1:
            continue
        if u**p == target:
            return u
        if (-u) ** p == target:
            return -u
    return None


def _class_group(alg, O, G, conj, disc, tgen, w, fundamentals,
                 bounds: NaiveBounds):
    n = alg.degree
    B = _minkowski_bound(disc, n)
    fb: list[MaxIdeal] = []
    ell = 2
    while ell <= B:
        if is_prime(ell):
            for P in maximal_ideals_above(O, ell):
                if P.residue_cardinality() <= B:
                    fb.append(P)
        ell += 1
    if not fb:
        return [], [], [], []
    antis = [anti_uniformizer(O, P) for P in fb]
    norms = [P.residue_cardinality() for P in fb]

    relations: list[list[int]] = []
    rel_gens: list[AlgElem] = []

    def add_relation(vec, gen):
        relations.append(list(vec))
        rel_gens.append(gen)

    # relations from rational primes: (ell) = prod P^(e_P)
    for ell in sorted({P.ell for P in fb}):
        ideals = maximal_ideals_above(O, ell)
        if any(P.residue_cardinality() > B for P in ideals):
            continue
        vec = [0] * len(fb)
        ok = True
        for P in ideals:
            try:
                i = next(i for i, Q in enumerate(fb) if Q.lattice == P.lattice)
            except StopIteration:
                ok = False
                break
            e = prime_valuation(O, P, O.lattice.scale(ell))
            vec[i] = e
        if ok:
            add_relation(vec, alg.from_int(ell))

    # relations from small elements with B-smooth norms
    bound = Fraction(2 * n)
    rounds = 0
    while rounds < bounds.relation_rounds:
        rounds += 1
        vecs = fincke_pohst(G, bound, limit=bounds.enum_cap)
        for v in vecs:
            x = _from_coords(O, v)
            if x.is_zero():
                continue
            nx = x.norm()
            assert nx.denominator == 1
            nx = abs(int(nx))
            if nx == 0:
                continue
            fac = factorize(nx) if nx > 1 else {}
            if any(pp > B for pp in fac):
                continue
            xO = _ideal_of_element(O, x)
            vec = [0] * len(fb)
            rem = nx
            for i, P in enumerate(fb):
                if rem % P.ell == 0 or True:
                    e = prime_valuation(O, P, xO, antis[i])
                    vec[i] = e
                    rem //= norms[i] ** e
            if rem != 1:
                continue
            add_relation(vec, x)
        # candidate group
        inv, done = _try_close(fb, relations)
        if done:
            break
        bound *= 3
    inv, done = _try_close(fb, relations)
    if not done:
        raise PicardBoundExceeded("class group relations did not close")
    # certify: every nontrivial candidate class must be non-principal
    while True:
        inv, transversal = _group_from_relations(fb, relations)
        missing = None
        for cls in transversal:
            if not any(cls):
                continue
            I, nrm = _integral_ideal_from_exponents(O, fb, cls)
            gen = _principal_generator(alg, O, G, conj, I, nrm, fundamentals,
                                       bounds)
            if gen is not None:
                missing = (cls, gen)
                break
        if missing is None:
            break
        add_relation(missing[0], missing[1])
    # final presentation with representative ideals and relation generators
    inv, gens, orders, rels = _snf_presentation(alg, O, fb, relations, rel_gens)
    return inv, gens, orders, rels


def _try_close(fb, relations):
    if len(relations) < len(fb):
        return None, False
    from .intmat import snf_diagonal

    diag = snf_diagonal([list(r) for r in relations])
    if len(diag) < len(fb) or any(d == 0 for d in diag):
        return None, False
    return [d for d in diag if d > 1], True


def _group_from_relations(fb, relations):
    from .intmat import snf_with_transforms
    from .finitequot import _int_inverse
    from itertools import product as iproduct

    k = len(fb)
    rows = [list(r) for r in relations] if relations else [[0] * k]
    D, U, V = snf_with_transforms(rows)
    diag = [D[i][i] if i < len(D) and i < len(D[0]) else 0 for i in range(k)]
    assert all(diag), "class group candidate is infinite; add relations"
    Vinv = _int_inverse(V)
    transversal = []
    for tup in iproduct(*[range(d) for d in diag]):
        x = [sum(tup[i] * Vinv[i][j] for i in range(k)) for j in range(k)]
        transversal.append(x)
    return [d for d in diag if d > 1], transversal


def _integral_ideal_from_exponents(O: Order, fb, cls):
    """prod fb_i^cls_i scaled integral; returns (ideal, its index in O)."""
    I = O.lattice
    for e, P in zip(cls, fb):
        if e > 0:
            I = I.mul(P.lattice.power(e))
        elif e < 0:
            I = I.mul(O.lattice.colon(P.lattice).power(-e))
    c = I.add(O.lattice).index_in(O.lattice)
    if c > 1:
        I = I.scale(c)
    assert O.lattice.contains_lattice(I)
    return I, I.index_in(O.lattice)


def _principal_generator(alg, O, G, conj, I: Lattice, nrm: int, fundamentals,
                         bounds: NaiveBounds) -> AlgElem | None:
    """Exact principality test: search a generator of the integral ideal I."""
    n = alg.degree
    # bound: a unit-reduced generator has T2 <= n * nrm^(2/n) * slack
    slack = 4.0
    for u in fundamentals:
        lv = _log_embedding(alg, conj, u)
        slack *= math.exp(sum(abs(c) for c in lv) / 2)
    t2_bound = Fraction(int(n * float(nrm) ** (2.0 / n) * slack) + 2)
    if t2_bound > bounds.unit_t2_cap:
        raise PicardBoundExceeded("principality bound exceeds the T2 cap")
    Gram_I = trace_pairing_gram(alg, conj, I.elements())
    for v in fincke_pohst(Gram_I, t2_bound, limit=bounds.enum_cap):
        x = _from_coords_lat(I, v)
        if abs(x.norm()) != nrm:
            continue
        if _ideal_of_element(O, x) == I:
            return x
    return None


def _from_coords_lat(L: Lattice, v) -> AlgElem:
    n = L.alg.degree
    vec = [0] * n
    for i, c in enumerate(v):
        if c:
            for t in range(n):
                vec[t] += c * L.basis[i][t]
    return AlgElem(L.alg, vec, L.den).normalized()


def _snf_presentation(alg, O, fb, relations, rel_gens):
    """SNF presentation with per-generator representative ideals and
    principal generators of gen^order."""
    from .intmat import snf_with_transforms
    from .finitequot import _int_inverse

    k = len(fb)
    rows = [list(r) for r in relations]
    D, U, V = snf_with_transforms(rows)
    diag = [D[i][i] for i in range(k)]
    Vinv = _int_inverse(V)
    # new generators: g_j = prod fb_i ^ V[i][j]; order diag[j]
    gens = []
    orders = []
    rels = []
    for j in range(k):
        if diag[j] in (0, 1):
            continue
        # representative ideal with nonnegative exponents: use exponents mod
        # large positive shift of principal relations is overkill; build the
        # fractional ideal directly
        I = O.lattice
        for i in range(k):
            e = V[i][j]
            if e > 0:
                I = I.mul(fb[i].lattice.power(e))
            elif e < 0:
                inv = O.lattice.colon(fb[i].lattice)  # P^{-1}
                I = I.mul(inv.power(-e))
        gens.append(I)
        orders.append(diag[j])
        # g_j^diag[j] = prod fb^(diag[j] * V[:,j]) which lies in the relation
        # lattice: express in terms of the relation rows to get a generator
        target = [diag[j] * V[i][j] for i in range(k)]
        sol = solve_left_int(rows, target)
        assert sol is not None, "SNF relation not in the relation lattice"
        gen = alg.one()
        for c, gelem in zip(sol, rel_gens):
            if c:
                gen = gen * (gelem**c if c > 0 else gelem.inverse() ** (-c))
        rels.append(gen)
    inv = [d for d in diag if d > 1]
    return inv, gens, orders, rels
