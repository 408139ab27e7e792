"""Weil polynomial input handling and the Frobenius algebra E = Q[x]/h."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .etale import AlgElem, EtaleAlgebra
from .intarith import is_prime_power
from .intpoly import IntPoly, gcd_q


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class WeilData:
    p: int
    a: int
    q: int
    g: int
    h: IntPoly
    label: str | None = None


def _check_functional_equation(h: IntPoly, q: int, g: int) -> bool:
    # x^(2g) * h(q/x) == q^g * h(x)
    lhs = IntPoly([h[2 * g - j] * q ** (2 * g - j) for j in range(2 * g + 1)])
    return lhs == h * q**g


def weil_from_poly(h: IntPoly, q: int, label: str | None = None) -> WeilData:
    pp = is_prime_power(q)
    if pp is None:
        raise InputError(f"q = {q} is not a prime power")
    p, a = pp
    if h.lc() != 1 or h.degree % 2 != 0 or h.degree == 0:
        raise InputError("Weil polynomial must be monic of even degree")
    g = h.degree // 2
    if not _check_functional_equation(h, q, g):
        raise InputError("polynomial violates the q-symmetry functional equation")
    return WeilData(p=p, a=a, q=q, g=g, h=h, label=label)


def _token_value(tok: str) -> int:
    if not tok or any(c < "a" or c > "z" for c in tok):
        raise InputError(f"malformed label token {tok!r}")
    if len(tok) > 1 and tok[0] == "a":
        # leading 'a' negates the value of the remaining letters
        rest = tok[1:]
        val = 0
        for c in rest:
            val = val * 26 + (ord(c) - ord("a"))
        return -val
    val = 0
    for c in tok:
        val = val * 26 + (ord(c) - ord("a"))
    return val


def parse_label(label: str) -> WeilData:
    """LMFDB-style isogeny class label g.q.t1_t2_..._tg."""
    parts = label.split(".")
    if len(parts) != 3:
        raise InputError(f"malformed label {label!r}")
    try:
        g = int(parts[0])
        q = int(parts[1])
    except ValueError as exc:
        raise InputError(f"malformed label {label!r}") from exc
    toks = parts[2].split("_")
    if len(toks) != g:
        raise InputError(f"label {label!r}: expected {g} coefficient tokens")
    avec = [_token_value(t) for t in toks]
    coeffs = [0] * (2 * g + 1)
    coeffs[2 * g] = 1
    for i, ai in enumerate(avec, start=1):
        coeffs[2 * g - i] = ai
    coeffs[g] = avec[g - 1] if g >= 1 else 1
    for i in range(1, g + 1):
        coeffs[g - i] = q**i * coeffs[g + i]
    h = IntPoly(coeffs)
    return weil_from_poly(h, q, label=label)


class FrobeniusAlgebra:
    """E = Q[pi] for an isogeny class, with pi, q/pi and the CM involution."""

    def __init__(self, w: WeilData):
        h = w.h
        if gcd_q(h, h.derivative()).degree != 0:
            raise InputError("non-commutative endomorphism algebra: out of scope")
        self.weil = w
        self.algebra = EtaleAlgebra(h)
        self.frobenius = self.algebra.gen()
        self.verschiebung = (self.algebra.from_int(w.q) * self.frobenius.inverse()).normalized()
        self._cm_rows = None

    def cm_involution(self, x: AlgElem) -> AlgElem:
        """The Q-algebra involution with pi -> q/pi (complex conjugation)."""
        if self._cm_rows is None:
            rows = [self.algebra.one()]
            for _ in range(self.algebra.degree - 1):
                rows.append(rows[-1] * self.verschiebung)
            self._cm_rows = rows
        acc = self.algebra.zero()
        for c, row in zip(x.num, self._cm_rows):
            if c:
                acc = acc + row * c
        return (acc * Fraction(1, x.den)).normalized() if x.den != 1 else acc.normalized()


def build_algebra(w: WeilData) -> FrobeniusAlgebra:
    return FrobeniusAlgebra(w)
