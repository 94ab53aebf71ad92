"""Power sums over monic polynomials and the exact/truncated realization maps.

The zeta-side power sum at level d is the sum of a^(-s) over all q^d monic
polynomials of degree d; it is evaluated by complete enumeration (organized
as a product tree so only one gcd is paid per (d, s) entry) and guarded by a
hard cap on q^d.  The polylog side is the closed form 1/L_d^s.

Realizations: `realize_level` and `realize_below` are exact (valued in the
rational function field), `realize_trunc` expands to a requested precision
with a certified cutoff: every omitted level has u-valuation exceeding the
precision because a level-d term always carries a full 1/L_d factor, whose
degree q + ... + q^d eventually dwarfs any fixed precision.
"""

from __future__ import annotations

import itertools

import numpy as np

from .fields import (
    GF,
    THETA,
    LaurentSeries,
    Poly,
    RationalFunc,
    carlitz_l,
    carlitz_l_degree,
    laurent_expand,
)
from .hspace import LI, ZETA, HElem, _as_bullet
from .indices import dep

DEFAULT_ENUM_CAP = 10**6


class EnumerationCapExceeded(Exception):
    """Raised when a power-sum enumeration would exceed the resource cap."""


def monic_polys(d: int, q: int) -> list:
    """All monic degree-d polynomials over F_q, in lexicographic order."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    field = GF(q)
    out = []
    for lower in itertools.product(range(q), repeat=d):
        coeffs = np.array(list(lower) + [1], dtype=np.int16)
        out.append(Poly(field, THETA, coeffs, _trusted=True))
    return out


def monic_product(d: int, q: int) -> Poly:
    """Product of all monic polynomials of degree d."""
    polys = monic_polys(d, q)
    return _product_tree(polys)


def _product_tree(polys):
    while len(polys) > 1:
        nxt = []
        for i in range(0, len(polys) - 1, 2):
            nxt.append(polys[i] * polys[i + 1])
        if len(polys) % 2:
            nxt.append(polys[-1])
        polys = nxt
    return polys[0]


def _sum_of_coproducts(polys):
    """Given [a_1..a_m], return (prod a_i, sum_i prod_{j != i} a_j)."""
    def merge(left, right):
        p1, n1 = left
        p2, n2 = right
        return p1 * p2, n1 * p2 + p1 * n2

    field = polys[0].field
    items = [(a, Poly.one(field, THETA)) for a in polys]
    while len(items) > 1:
        nxt = []
        for i in range(0, len(items) - 1, 2):
            nxt.append(merge(items[i], items[i + 1]))
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


class PowerSumTable:
    """Memo table of exact level power sums for one realization.

    The polylog entry at (d, s) is 1/L_d^s.  The zeta entry is the full
    enumeration over monic polynomials of degree d, refused (with an
    explicit error) when q^d exceeds the cap.
    """

    def __init__(self, q: int, bullet: str, cap: int = DEFAULT_ENUM_CAP):
        self.q = q
        self.bullet = _as_bullet(bullet)
        self.cap = cap
        self.field = GF(q)
        self._cache: dict = {}

    def value(self, d: int, s: int) -> RationalFunc:
        if d < 0:
            raise ValueError("level must be >= 0")
        if s < 1:
            raise ValueError("exponent must be >= 1")
        key = (d, s)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self.bullet == LI:
            val = RationalFunc(Poly.one(self.field, THETA),
                               carlitz_l(d, self.q) ** s)
        else:
            val = self._zeta_sum(d, s)
        self._cache[key] = val
        return val

    def _zeta_sum(self, d: int, s: int) -> RationalFunc:
        if d == 0:
            return RationalFunc.one(self.field, THETA)
        if self.q ** d > self.cap:
            raise EnumerationCapExceeded(
                f"power-sum enumeration needs q^d = {self.q}^{d} > cap {self.cap}")
        powers = [a ** s for a in monic_polys(d, self.q)]
        den, num = _sum_of_coproducts(powers)
        return RationalFunc(num, den)


_TABLES: dict = {}
_LEVEL_MEMO: dict = {}


def get_table(q: int, bullet: str, cap: int = DEFAULT_ENUM_CAP) -> PowerSumTable:
    key = (q, _as_bullet(bullet), cap)
    if key not in _TABLES:
        _TABLES[key] = PowerSumTable(q, bullet, cap)
    return _TABLES[key]


def _level_index(s: tuple, bullet: str, d: int, table: PowerSumTable) -> RationalFunc:
    q = table.q
    field = table.field
    if d < 0:
        return RationalFunc.zero(field, THETA)
    if not s:
        return (RationalFunc.one(field, THETA) if d == 0
                else RationalFunc.zero(field, THETA))
    if d == 0:
        if len(s) == 1:
            return table.value(0, s[0])
        return RationalFunc.zero(field, THETA)
    if d < len(s) - 1:
        return RationalFunc.zero(field, THETA)
    memo = _LEVEL_MEMO.setdefault((q, table.bullet, table.cap), {})
    key = (s, d)
    hit = memo.get(key)
    if hit is not None:
        return hit
    val = table.value(d, s[0]) * _below_index(s[1:], table.bullet, d, table)
    memo[key] = val
    return val


def _below_index(s: tuple, bullet: str, d: int, table: PowerSumTable) -> RationalFunc:
    field = table.field
    if d <= 0:
        return RationalFunc.zero(field, THETA)
    memo = _LEVEL_MEMO.setdefault((table.q, table.bullet, table.cap), {})
    key = (s, "<", d)
    hit = memo.get(key)
    if hit is not None:
        return hit
    val = _below_index(s, bullet, d - 1, table) + _level_index(s, bullet, d - 1, table)
    memo[key] = val
    return val


def realize_level(P, bullet: str, d: int, q: int = None,
                  cap: int = DEFAULT_ENUM_CAP) -> RationalFunc:
    """Exact level-d realization (k-valued)."""
    if not isinstance(P, HElem):
        P = HElem.basis(q, tuple(P))
    table = get_table(P.q, bullet, cap)
    out = RationalFunc.zero(table.field, THETA)
    for s, c in P.coeffs.items():
        term = _level_index(s, table.bullet, d, table)
        if not term.is_zero():
            out = out + c * term
    return out


def realize_below(P, bullet: str, d: int, q: int = None,
                  cap: int = DEFAULT_ENUM_CAP) -> RationalFunc:
    """Exact sum of all levels strictly below d (k-valued)."""
    if not isinstance(P, HElem):
        P = HElem.basis(q, tuple(P))
    table = get_table(P.q, bullet, cap)
    out = RationalFunc.zero(table.field, THETA)
    for s, c in P.coeffs.items():
        term = _below_index(s, table.bullet, d, table)
        if not term.is_zero():
            out = out + c * term
    return out


def truncation_cutoff(P: HElem, N: int, q: int) -> tuple[int, int]:
    """Return (D, vshift): levels >= D have u-valuation > N on P.

    vshift absorbs coefficients with poles at infinity; the cutoff D is the
    least level whose mandatory 1/L_D factor has degree > N + vshift.
    """
    vshift = 0
    for c in P.coeffs.values():
        v = c.valuation_at_infinity()
        if v < 0:
            vshift = max(vshift, -v)
    D = 1
    while carlitz_l_degree(D, q) <= N + vshift:
        D += 1
    return D, vshift


def realize_trunc(P, bullet: str, N: int, q: int = None,
                  cap: int = DEFAULT_ENUM_CAP) -> LaurentSeries:
    """Realization expanded at the infinite place, exact through exponent N.

    Internally evaluates all levels below a cutoff D exactly and expands;
    the level-D value is computed and its valuation asserted to exceed N,
    and all higher levels are covered by the monotone growth of deg L_d.
    """
    if N < 0:
        raise ValueError("precision must be >= 0")
    if not isinstance(P, HElem):
        P = HElem.basis(q, tuple(P))
    field = GF(P.q)
    if P.is_zero():
        return LaurentSeries(field, 0, np.zeros(N + 1, dtype=np.int16))
    D, _ = truncation_cutoff(P, N, P.q)
    value = realize_below(P, bullet, D, cap=cap)
    guard = realize_level(P, bullet, D, cap=cap)
    if not guard.is_zero():
        assert guard.valuation_at_infinity() > N, \
            "truncation cutoff failed to clear the requested precision"
    if value.is_zero():
        return LaurentSeries(field, 0, np.zeros(N + 1, dtype=np.int16))
    v0 = value.valuation_at_infinity()
    if v0 > N:
        return LaurentSeries(field, 0, np.zeros(N + 1, dtype=np.int16))
    return laurent_expand(value, N - v0)
