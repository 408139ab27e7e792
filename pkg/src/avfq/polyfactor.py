"""Polynomial factorization over prime fields and over Q.

Mod-p polynomials are plain lists of ints in [0, p), lowest degree first.
Over Q: Zassenhaus (modular factorization + Hensel lifting + subset
recombination); adequate for the small degrees this library meets.
"""

from __future__ import annotations

import math
import random

from .intarith import inv_mod, is_prime, isqrt_ceil
from .intpoly import IntPoly, gcd_q


# ---------------------------------------------------------------- mod p ----

def _ptrim(c):
    i = len(c)
    while i and c[i - 1] == 0:
        i -= 1
    return c[:i]


def pmod(f: IntPoly, p: int) -> list[int]:
    return _ptrim([c % p for c in f.coeffs])


def padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _ptrim(out)


def psub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _ptrim(out)


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _ptrim([c % p for c in out])


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    inv = inv_mod(b[-1], p)
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(r) - 1, len(b) - 2, -1):
        c = r[i] * inv % p
        if c:
            q[i - len(b) + 1] = c
            for j, bj in enumerate(b):
                r[i - len(b) + 1 + j] = (r[i - len(b) + 1 + j] - c * bj) % p
    return _ptrim(q), _ptrim(r[: len(b) - 1])


def pgcd(a, b, p):
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    if a:
        inv = inv_mod(a[-1], p)
        a = [c * inv % p for c in a]
    return a


def pmonic(a, p):
    if not a or a[-1] == 1:
        return list(a)
    inv = inv_mod(a[-1], p)
    return [c * inv % p for c in a]


def ppowmod(base, e, f, p):
    out = [1]
    b = pdivmod(base, f, p)[1]
    while e:
        if e & 1:
            out = pdivmod(pmul(out, b, p), f, p)[1]
        b = pdivmod(pmul(b, b, p), f, p)[1]
        e >>= 1
    return out


def _psquarefree_parts(f, p):
    """Squarefree decomposition mod p: list of (squarefree poly, multiplicity)."""
    out = []
    c = pgcd(f, _pderiv(f, p), p)
    w = pdivmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((pmonic(z, p), i))
        w = y
        c = pdivmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        # c = g(x^p) = g(x)^p over F_p
        g = _ptrim([c[j] for j in range(0, len(c), p)])
        for sq, m in _psquarefree_parts(g, p):
            out.append((sq, m * p))
    return out


def _pderiv(f, p):
    return _ptrim([(i * c) % p for i, c in enumerate(f)][1:])


def _distinct_degree(f, p):
    """Split squarefree monic f into (product of irreducibles of degree d, d)."""
    out = []
    h = [0, 1]  # x
    g = list(f)
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, p, g, p)
        gd = pgcd(psub(h, [0, 1], p), g, p)
        if len(gd) > 1:
            out.append((gd, d))
            g = pdivmod(g, gd, p)[0]
            h = pdivmod(h, g, p)[1]
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def _equal_degree(f, d, p, rng):
    """Cantor-Zassenhaus split of monic squarefree f (all factors degree d)."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        r = [rng.randrange(p) for _ in range(n)] + [1]
        r = _ptrim(r)
        if p == 2:
            # trace map over F_{2^d}
            t = list(r)
            acc = list(r)
            for _ in range(d - 1):
                t = pdivmod(pmul(t, t, p), f, p)[1]
                acc = padd(acc, t, p)
            g = pgcd(acc, f, p)
        else:
            e = (p**d - 1) // 2
            t = ppowmod(r, e, f, p)
            g = pgcd(psub(t, [1], p), f, p)
        if 0 < len(g) - 1 < n:
            left = _equal_degree(g, d, p, rng)
            right = _equal_degree(pdivmod(f, g, p)[0], d, p, rng)
            return left + right


def factor_mod_p(f: IntPoly, p: int) -> list[tuple[IntPoly, int]]:
    """Factor f mod p into monic irreducibles with multiplicities."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    fp = pmod(f, p)
    if not fp:
        raise ValueError("zero polynomial mod p")
    rng = random.Random(hash((p, tuple(fp))) & 0xFFFFFFFF)
    out = []
    lead_seen = []
    for sq, mult in _psquarefree_parts(pmonic(fp, p), p):
        for g, d in _distinct_degree(sq, p):
            for irr in _equal_degree(g, d, p, rng):
                out.append((IntPoly(irr), mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    # consistency: product reconstructs f mod p
    prod = [fp[-1] % p]
    for g, m in out:
        for _ in range(m):
            prod = pmul(prod, pmod(g, p), p)
    assert prod == fp, "factor_mod_p: product check failed"
    return out


# ------------------------------------------------------------- Hensel ------

def _hensel_step(f, g, h, s, t, m):
    """One quadratic Hensel step: f = g*h mod m, s*g + t*h = 1 mod m.
    Returns (g', h', s', t') valid mod m^2. All polys integer lists, h monic."""
    M = m * m

    def mul(a, b):
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % M
        return _ptrim(out)

    def add(a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % M
        return _ptrim(out)

    def sub(a, b):
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, c in enumerate(b):
            out[i] = (out[i] - c) % M
        return _ptrim(out)

    def divmod_monic(a, b):
        r = list(a)
        q = [0] * max(len(a) - len(b) + 1, 0)
        for i in range(len(r) - 1, len(b) - 2, -1):
            c = r[i] % M
            if c:
                q[i - len(b) + 1] = c
                for j, bj in enumerate(b):
                    r[i - len(b) + 1 + j] = (r[i - len(b) + 1 + j] - c * bj) % M
        return _ptrim(q), _ptrim(r[: len(b) - 1])

    e = sub(f, mul(g, h))
    qq, rr = divmod_monic(mul(s, e), h)
    g1 = add(add(g, mul(t, e)), mul(qq, g))
    h1 = add(h, rr)
    b = sub(add(mul(s, g1), mul(t, h1)), [1])
    cq, cr = divmod_monic(mul(s, b), h1)
    s1 = sub(s, cr)
    t1 = sub(sub(t, mul(t, b)), mul(cq, g1))
    return g1, h1, s1, t1


def _pxgcd(a, b, p):
    """Extended gcd of polynomials mod p: returns (g, s, t), g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    inv = inv_mod(r0[-1], p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0])


def hensel_lift_factors(f: IntPoly, factors_mod_p: list[list[int]], p: int, k: int):
    """Lift monic coprime factors of monic f modulo p to modulo p^k.

    Quadratic lifting on a binary tree of the factor list.
    """
    def lift_tree(fcur, facs, modulus_target):
        if len(facs) == 1:
            return [[c % modulus_target for c in fcur]]
        mid = len(facs) // 2
        g = [1]
        for fac in facs[:mid]:
            g = pmul(g, fac, p)
        h = [1]
        for fac in facs[mid:]:
            h = pmul(h, fac, p)
        gg, s, t = _pxgcd(g, h, p)
        assert gg == [1], "factors not coprime mod p"
        m = p
        G, H, S, T = g, h, s, t
        while m < modulus_target:
            G, H, S, T = _hensel_step([c % (m * m) for c in fcur], G, H, S, T, m)
            m *= m
        G = [c % modulus_target for c in G]
        H = [c % modulus_target for c in H]
        return (lift_tree(G, facs[:mid], modulus_target)
                + lift_tree(H, facs[mid:], modulus_target))

    q = p**k
    lifted = lift_tree([c % q for c in f.coeffs], factors_mod_p, q)
    return [_ptrim(x) for x in lifted]


# ---------------------------------------------------------- over Q ---------

def _symmetric(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _mignotte_bound(f: IntPoly) -> int:
    norm2 = isqrt_ceil(sum(c * c for c in f.coeffs))
    return (1 << (f.degree + 1)) * (norm2 + abs(f.lc()))


def _factor_squarefree_monic(f: IntPoly) -> list[IntPoly]:
    from itertools import combinations

    n = f.degree
    if n <= 1:
        return [f]
    # choose a prime keeping f squarefree, preferring few modular factors
    best = None
    p = 2
    tried = 0
    while tried < 6:
        fp = pmod(f, p)
        if len(fp) == n + 1 and pgcd(fp, _pderiv(fp, p), p) == [1]:
            facs = factor_mod_p(f, p)
            if best is None or len(facs) < len(best[1]):
                best = (p, facs)
            tried += 1
            if len(facs) <= 2:
                break
        p = _next_prime(p)
    p, facs = best
    if len(facs) == 1:
        return [f]
    modfacs = [pmod(g, p) for g, _ in facs]
    bound = 2 * _mignotte_bound(f) + 1
    k = 1
    while p**k < bound:
        k *= 2
    lifted = hensel_lift_factors(f, modfacs, p, k)
    q = p**k
    result = []
    remaining = f
    avail = list(range(len(lifted)))
    size = 1
    while 2 * size <= len(avail):
        restart = False
        for combo in combinations(avail, size):
            cand = [1]
            for i in combo:
                cand = pmul(cand, lifted[i], q)
            g = IntPoly([_symmetric(c, q) for c in cand])
            if remaining[0] != 0 and g[0] != 0 and remaining[0] % g[0] != 0:
                continue
            quot, rem = remaining.monic_divmod(g)
            if rem.is_zero():
                result.append(g)
                remaining = quot
                avail = [i for i in avail if i not in combo]
                restart = True
                break
        if not restart:
            size += 1
    if remaining.degree > 0:
        result.append(remaining)
    result.sort(key=lambda g: (g.degree, g.coeffs))
    return result


def _factor_squarefree_primitive(f: IntPoly) -> list[IntPoly]:
    n = f.degree
    if n <= 1:
        return [f]
    lc = f.lc()
    if lc == 1:
        return _factor_squarefree_monic(f)
    # factor the monicized polynomial lc^(n-1) f(x/lc), then map g(x) -> pp(g(lc x))
    monic_facs = _factor_squarefree_monic(_monicize(f))
    out = []
    for g in monic_facs:
        mapped = IntPoly([c * lc**i for i, c in enumerate(g.coeffs)]).primitive()
        out.append(mapped if mapped.lc() > 0 else -mapped)
    out.sort(key=lambda g: (g.degree, g.coeffs))
    return out


def _poly_divmod_exact(f: IntPoly, g: IntPoly):
    """Divide f by g over Z when lc(g) | intermediate coefficients; else None."""
    r = list(f.coeffs)
    n = g.degree
    lg = g.lc()
    q = [0] * max(len(r) - n, 0)
    for i in range(len(r) - 1, n - 1, -1):
        c = r[i]
        if c:
            if c % lg != 0:
                return None, None
            c //= lg
            q[i - n] = c
            for j, dj in enumerate(g.coeffs):
                r[i - n + j] -= c * dj
    return IntPoly(q), IntPoly(r[:n])


def _monicize(f: IntPoly) -> IntPoly:
    """lc^(n-1) * f(x/lc): monic with integer coefficients."""
    n = f.degree
    lc = f.lc()
    return IntPoly([c * lc ** (n - 1 - i) for i, c in enumerate(f.coeffs)])


def _next_prime(p: int) -> int:
    p += 1
    while not is_prime(p):
        p += 1
    return p


def factor_over_q(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Factor a nonzero integer polynomial into primitive irreducibles over Q.

    Returns (factor, multiplicity) pairs; the product of factor^mult times a
    rational unit equals f. Factors have positive leading coefficient.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    f = f.primitive()
    if f.lc() < 0:
        f = -f
    out: dict[IntPoly, int] = {}
    # squarefree decomposition over Q (Yun)
    g = gcd_q(f, f.derivative())
    parts: list[tuple[IntPoly, int]] = []
    if g.degree == 0:
        parts = [(f, 1)]
    else:
        w = _poly_divmod_exact(f * g.lc() ** (f.degree - g.degree + 1), g)[0].primitive()
        rest, mult = g, 1
        while w.degree > 0:
            y = gcd_q(w, rest)
            z = _poly_divmod_exact(w * y.lc() ** (w.degree - y.degree + 1), y)[0].primitive()
            if z.degree > 0:
                parts.append((z if z.lc() > 0 else -z, mult))
            w = y
            rest = _poly_divmod_exact(rest * y.lc() ** (rest.degree - y.degree + 1), y)[0].primitive()
            mult += 1
        if rest.degree > 0:
            parts.append((rest if rest.lc() > 0 else -rest, mult))
        # fold equal squarefree parts
    for sqf, mult in parts:
        for irr in _factor_squarefree_primitive(sqf):
            out[irr] = out.get(irr, 0) + mult
    res = sorted(out.items(), key=lambda t: (t[0].degree, t[0].coeffs))
    # verify: product reconstructs f up to a positive rational unit
    prod = IntPoly([1])
    for irr, m in res:
        prod = prod * irr**m
    assert prod.primitive() == f.primitive(), "factor_over_q: product check failed"
    return res
