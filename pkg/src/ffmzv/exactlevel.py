"""Scalable exact evaluation of level realizations.

Values here are kept as fractions whose denominators stay in factored form:
a product of bracket polynomials theta^(q^n) - theta with recorded
exponents.  Every power sum at level d is a short signed sum of such
monomial fractions (obtained from the additive polynomial with root set the
degree-< d polynomials, via the logarithmic derivative of the monic-rooted
product), so sums and products of level values never need a polynomial gcd:
zero testing is an exact numerator comparison.

This module backs the exact binary-relation verifier; the enumeration-based
power-sum table in `eval` is the independent small-scale reference that the
closed form is tested against.
"""

from __future__ import annotations

import functools
import math

from .fields import GF, THETA, Poly, RationalFunc, theta_bracket
from .hspace import LI, ZETA, HElem, _as_bullet


@functools.lru_cache(maxsize=None)
def _bracket_power(n: int, e: int, q: int) -> Poly:
    if e == 0:
        return Poly.one(GF(q), THETA)
    if e == 1:
        return theta_bracket(n, q)
    half = _bracket_power(n, e // 2, q)
    out = half * half
    if e % 2:
        out = out * theta_bracket(n, q)
    return out


def _cofactor(exps: dict, q: int) -> Poly:
    out = Poly.one(GF(q), THETA)
    for n in sorted(exps):
        e = exps[n]
        if e:
            out = out * _bracket_power(n, e, q)
    return out


class LFrac:
    """num / prod_n bracket(n)^exps[n]; exponents nonnegative, no gcd kept."""

    __slots__ = ("q", "num", "exps")

    def __init__(self, q: int, num: Poly, exps: dict | None = None):
        self.q = q
        self.num = num
        if num.is_zero():
            self.exps = {}
        else:
            self.exps = {n: e for n, e in (exps or {}).items() if e}

    @staticmethod
    def zero(q: int) -> "LFrac":
        return LFrac(q, Poly.zero(GF(q), THETA))

    @staticmethod
    def one(q: int) -> "LFrac":
        return LFrac(q, Poly.one(GF(q), THETA))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "LFrac") -> "LFrac":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        alln = set(self.exps) | set(other.exps)
        E = {n: max(self.exps.get(n, 0), other.exps.get(n, 0)) for n in alln}
        ca = {n: E[n] - self.exps.get(n, 0) for n in alln}
        cb = {n: E[n] - other.exps.get(n, 0) for n in alln}
        num = self.num * _cofactor(ca, self.q) + other.num * _cofactor(cb, self.q)
        return LFrac(self.q, num, E)

    def __neg__(self) -> "LFrac":
        return LFrac(self.q, -self.num, self.exps)

    def __sub__(self, other: "LFrac") -> "LFrac":
        return self + (-other)

    def __mul__(self, other: "LFrac") -> "LFrac":
        if self.is_zero() or other.is_zero():
            return LFrac.zero(self.q)
        alln = set(self.exps) | set(other.exps)
        E = {n: self.exps.get(n, 0) + other.exps.get(n, 0) for n in alln}
        return LFrac(self.q, self.num * other.num, E)

    def scale_poly(self, c: Poly) -> "LFrac":
        return LFrac(self.q, self.num * c, self.exps)

    def den_degree(self) -> int:
        return sum(e * self.q**n for n, e in self.exps.items())

    def valuation_at_infinity(self) -> int:
        if self.is_zero():
            raise ValueError("zero has no finite valuation")
        return self.den_degree() - self.num.degree

    def to_ratfunc(self) -> RationalFunc:
        return RationalFunc(self.num, _cofactor(self.exps, self.q))

    def __eq__(self, other):
        if not isinstance(other, LFrac):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return f"LFrac(num_deg={self.num.degree}, exps={self.exps})"


# ---------------------------------------------------------------------------
# closed-form power sums
# ---------------------------------------------------------------------------

def _multisets(total: int, imax: int, q: int):
    """Multisets of exponents i (0..imax) with sum of q^i equal to total."""

    def rec(remaining, i):
        if remaining == 0:
            yield ()
            return
        if i < 0:
            return
        step = q**i
        maxcount = remaining // step
        for m in range(maxcount, -1, -1):
            for rest in rec(remaining - m * step, i - 1):
                yield (i,) * m + rest

    yield from rec(total, imax)


@functools.lru_cache(maxsize=None)
def power_sum_terms(d: int, s: int, q: int, bullet: str) -> tuple:
    """Level-d power sum as ((coeff mod p, exps-items), ...) monomial terms."""
    bullet = _as_bullet(bullet)
    p = GF(q).p
    if d == 0:
        return ((1, ()),)
    if bullet == LI:
        sign = (-1) ** (d * s) % p
        return ((sign, tuple((n, s) for n in range(1, d + 1))),)
    terms = []
    imax = 0
    while q ** (imax + 1) <= max(s - 1, 1):
        imax += 1
    imax = min(imax, d)
    for I in _multisets(s - 1, imax, q):
        k = len(I)
        counts: dict = {}
        for i in I:
            counts[i] = counts.get(i, 0) + 1
        multinom = math.factorial(k)
        for m in counts.values():
            multinom //= math.factorial(m)
        sign = (-1) ** d
        exps = {n: 1 for n in range(1, d + 1)}
        for i in I:
            sign *= (-1) ** ((d - i) * (q**i))
            for n in range(1, i + 1):
                exps[n] = exps.get(n, 0) + q ** (i - n)
            for n in range(1, d - i + 1):
                exps[n] = exps.get(n, 0) + q**i
        coeff = (sign * multinom) % p
        if coeff:
            terms.append((coeff, tuple(sorted(exps.items()))))
    return tuple(terms)


@functools.lru_cache(maxsize=None)
def power_sum(d: int, s: int, q: int, bullet: str) -> LFrac:
    """Level-d power sum as a factored fraction."""
    if d < 0:
        return LFrac.zero(q)
    field = GF(q)
    terms = power_sum_terms(d, s, q, bullet)
    out = LFrac.zero(q)
    for coeff, exps_items in terms:
        exps = dict(exps_items)
        out = out + LFrac(q, Poly.const(field, THETA, coeff), exps)
    return out


# ---------------------------------------------------------------------------
# batched level evaluation and pair checking
# ---------------------------------------------------------------------------

class LevelEvaluator:
    """Rolling evaluator of 𝓛-levels for a fixed (q, bullet).

    Feeds levels upward one at a time; `level_of` returns exact level values
    for any index whose suffixes were registered, and `advance` folds the
    current level into the running below-accumulators.
    """

    def __init__(self, q: int, bullet: str):
        self.q = q
        self.bullet = _as_bullet(bullet)
        self.current = 0  # the level about to be produced
        self.below: dict = {}   # suffix -> value of levels < current
        self._level_cache: dict = {}

    def register(self, indices):
        for s in indices:
            s = tuple(s)
            for i in range(len(s) + 1):
                suf = s[i:]
                if suf not in self.below:
                    self.below[suf] = LFrac.zero(self.q)

    def level_of(self, s: tuple) -> LFrac:
        """Exact level value at the current level for a registered index."""
        d = self.current
        hit = self._level_cache.get(s)
        if hit is not None:
            return hit
        if not s:
            val = LFrac.one(self.q) if d == 0 else LFrac.zero(self.q)
        elif d == 0:
            val = power_sum(0, s[0], self.q, self.bullet) if len(s) == 1 \
                else LFrac.zero(self.q)
        elif d < len(s) - 1:
            val = LFrac.zero(self.q)
        else:
            val = power_sum(d, s[0], self.q, self.bullet) * self.below[s[1:]]
        self._level_cache[s] = val
        return val

    def level_of_elem(self, P: HElem, coeffs_poly: dict) -> LFrac:
        out = LFrac.zero(self.q)
        for s in P.coeffs:
            v = self.level_of(s)
            if not v.is_zero():
                out = out + v.scale_poly(coeffs_poly[s])
        return out

    def advance(self):
        # two phases: folding in place would corrupt values whose suffix
        # accumulator happens to be updated first
        levels = {s: self.level_of(s) for s in self.below}
        for s, v in levels.items():
            if not v.is_zero():
                self.below[s] = self.below[s] + v
        self._level_cache = {}
        self.current += 1


def _poly_coeffs_cleared(P: HElem, Q: HElem):
    """Scale the pair by the lcm of coefficient denominators.

    Scaling by a nonzero field element preserves the level identities, and
    afterwards every coefficient is a plain polynomial.
    """
    q = P.q
    lcm = Poly.one(GF(q), THETA)
    for elem in (P, Q):
        for c in elem.coeffs.values():
            g = lcm.gcd(c.den)
            lcm = lcm * c.den.exact_div(g)
    cp = {s: (c * lcm).num for s, c in P.coeffs.items()}
    cq = {s: (c * lcm).num for s, c in Q.coeffs.items()}
    return cp, cq


def check_level_identities(pairs, bullet: str, q: int, dmaxes) -> list:
    """For each pair (P, Q) check 𝓛_d(P) + 𝓛_(d+1)(Q) = 0, -1 <= d <= dmax.

    Returns a list of (passed, failures) with failures the offending levels.
    All checks are exact; work is shared through one rolling evaluator.
    """
    bullet = _as_bullet(bullet)
    ev = LevelEvaluator(q, bullet)
    cleared = []
    for (P, Q) in pairs:
        cp, cq = _poly_coeffs_cleared(P, Q)
        cleared.append((P, Q, cp, cq))
        ev.register(P.coeffs.keys())
        ev.register(Q.coeffs.keys())
    top = max(dmaxes) + 1 if dmaxes else 0
    # pending[i][d] accumulates 𝓛_d(P_i) + 𝓛_(d+1)(Q_i)
    pending = [dict() for _ in pairs]
    failures = [[] for _ in pairs]
    for level in range(0, top + 1):
        for i, (P, Q, cp, cq) in enumerate(cleared):
            dmax = dmaxes[i]
            if level <= dmax:
                vP = ev.level_of_elem(P, cp)
                acc = pending[i].get(level)
                pending[i][level] = vP if acc is None else acc + vP
            if level - 1 >= -1 and level - 1 <= dmax:
                vQ = ev.level_of_elem(Q, cq)
                acc = pending[i].get(level - 1)
                pending[i][level - 1] = vQ if acc is None else acc + vQ
                # both contributions are in; finalize level - 1
                if not pending[i][level - 1].is_zero():
                    failures[i].append(level - 1)
                del pending[i][level - 1]
        ev.advance()
    return [(not f, f) for f in failures]
