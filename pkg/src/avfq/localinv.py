"""Places of E above p: slopes, p-rank, the slope partition of primes of R,
and Waterhouse's classification data for the local-local part."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .intarith import binomial, valuation
from .lattices import Lattice, Order
from .orders import (
    MaxIdeal,
    anti_uniformizer,
    maximal_ideals_above,
    prime_valuation_of_int,
)
from .weil import FrobeniusAlgebra, WeilData


@dataclass
class PlaceData:
    prime: MaxIdeal          # prime of the maximal order above p
    e: int                   # ramification index
    f: int                   # inertia degree
    g: int                   # gcd(a, f)
    val_pi: int              # valuation of pi at the place
    slope: Fraction

    def key(self):
        return (self.slope, self.e, self.f, self.prime.key())


def places_above_p(fa: FrobeniusAlgebra, O: Order) -> list[PlaceData]:
    w = fa.weil
    out = []
    for P in maximal_ideals_above(O, w.p):
        a = anti_uniformizer(O, P)
        e = prime_valuation_of_int(O, P, w.p, a)
        # valuation of pi: iterate the anti-uniformizer on the element
        x = fa.frobenius
        v = 0
        while O.lattice.contains(x):
            x = x * a
            v += 1
        val_pi = v - 1
        out.append(PlaceData(prime=P, e=e, f=P.residue_degree,
                             g=_gcd(w.a, P.residue_degree), val_pi=val_pi,
                             slope=Fraction(val_pi, w.a * e)))
    assert sum(pl.e * pl.f for pl in out) == 2 * w.g, "ramification bookkeeping off"
    slopes = sorted(pl.slope for pl in out for _ in range(pl.e * pl.f))
    assert slopes == sorted(1 - s for s in slopes), "slope symmetry violated"
    out.sort(key=lambda pl: pl.key())
    return out


def _gcd(a, b):
    import math

    return math.gcd(a, b)


def p_rank(places: list[PlaceData]) -> int:
    return sum(pl.e * pl.f for pl in places if pl.slope == 0)


@dataclass
class SlopePartition:
    etale: list[tuple[MaxIdeal, list[PlaceData]]]       # slope 0
    local_local: list[tuple[MaxIdeal, list[PlaceData]]]  # slope in (0,1)
    multiplicative: list[tuple[MaxIdeal, list[PlaceData]]]  # slope 1


def partition_primes(R: Order, places: list[PlaceData], p: int) -> SlopePartition:
    """Assign each prime of R above p to its slope class."""
    rprimes = maximal_ideals_above(R, p)
    buckets: dict = {m.key(): (m, []) for m in rprimes}
    for pl in places:
        owners = [m for m in rprimes if _below(pl.prime, m)]
        assert len(owners) == 1, "place must lie over exactly one prime of R"
        buckets[owners[0].key()][1].append(pl)
    part = SlopePartition([], [], [])
    for m, pls in buckets.values():
        assert pls, "prime of R above p with no place over it"
        classes = set()
        for pl in pls:
            if pl.slope == 0:
                classes.add(0)
            elif pl.slope == 1:
                classes.add(1)
            else:
                classes.add("ll")
        assert len(classes) == 1, "slope classes must be coherent over a prime of R"
        cls = classes.pop()
        if cls == 0:
            part.etale.append((m, pls))
        elif cls == 1:
            part.multiplicative.append((m, pls))
        else:
            part.local_local.append((m, pls))
    if part.local_local:
        assert len(part.local_local) == 1, "local-local part has a unique prime"
        assert part.local_local[0][0].residue_degree == 1, \
            "local-local prime must have residue field F_p"
    for lst in (part.etale, part.local_local, part.multiplicative):
        lst.sort(key=lambda t: t[0].key())
    return part


def _below(P: MaxIdeal, m: MaxIdeal) -> bool:
    """Is m = P `intersect` R (m maximal in R, P in the maximal order)?"""
    # m is below P iff every generator of m lies in P
    return P.lattice.contains_lattice(P.lattice.add(m.lattice))


@dataclass
class WaterhouseTuple:
    place: PlaceData
    ns: tuple[int, ...]
    eps: tuple[int, ...]


def waterhouse_tuples(pl: PlaceData, a: int) -> list[WaterhouseTuple]:
    """All tuples 0 <= n_i <= e with sum = g*val/a, as epsilon-vectors."""
    assert 0 < pl.slope < 1, "only local-local places carry Waterhouse data"
    g, e = pl.g, pl.e
    target = pl.g * pl.val_pi
    if target % a != 0:
        raise ValueError("inconsistent place data")
    m = target // a
    out = []
    for ns in product(range(e + 1), repeat=g):
        if sum(ns) == m:
            eps = [0]
            for i in range(g - 1):
                eps.append(eps[-1] + ns[i])
            out.append(WaterhouseTuple(pl, tuple(ns), tuple(eps)))
    out.sort(key=lambda t: t.ns)
    return out


def waterhouse_count(pl: PlaceData, a: int) -> int:
    """Closed form for len(waterhouse_tuples): bounded compositions of
    g*val/a into g parts of size at most e."""
    g, e = pl.g, pl.e
    target = pl.g * pl.val_pi
    if target % a != 0:
        raise ValueError("inconsistent place data")
    m = target // a
    total = 0
    for i in range(g + 1):
        total += (-1) ** i * binomial(g, i) * binomial(m - i * (e + 1) + g - 1, g - 1)
    return total


def upsilon(places: list[PlaceData], a: int) -> list[dict]:
    """Cartesian product of the Waterhouse epsilon-vectors over the
    slope-(0,1) places; each entry maps place key -> epsilon vector."""
    ll = [pl for pl in places if 0 < pl.slope < 1]
    choices = [waterhouse_tuples(pl, a) for pl in ll]
    out = []
    for combo in product(*choices):
        out.append({t.place.key(): t for t in combo})
    return out
