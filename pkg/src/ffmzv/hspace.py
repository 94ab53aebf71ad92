"""The graded space of formal k-linear combinations of indices, with the
multilinear bracket, the boundary-fusing operator, and the harmonic and
q-shuffle products.

Coefficients are rational functions in theta over F_q.  Products of basis
indices have prime-field structure constants; those expansions are memoized
per (q, product) since the q-shuffle recursion revisits subterms heavily.
"""

from __future__ import annotations

import math

from .fields import GF, THETA, Poly, RationalFunc, carlitz_l, parse_ratfunc
from .indices import Index, check_index, dep, wt

LI = "li"
ZETA = "zeta"
BULLETS = (LI, ZETA)


def _as_bullet(bullet: str) -> str:
    b = bullet.lower()
    if b in ("li", "l"):
        return LI
    if b in ("zeta", "z"):
        return ZETA
    raise ValueError(f"unknown realization {bullet!r}")


class HElem:
    """Finite k-linear combination of indices; zero coefficients are absent."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs=None):
        self.q = q
        self.coeffs = {}
        if coeffs:
            for s, c in coeffs.items():
                if isinstance(c, int):
                    c = RationalFunc.const(GF(q), THETA, GF(q).from_int(c))
                if not c.is_zero():
                    self.coeffs[tuple(s)] = c

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(q: int) -> "HElem":
        return HElem(q)

    @staticmethod
    def basis(q: int, s) -> "HElem":
        return HElem(q, {check_index(s): 1})

    @staticmethod
    def from_int_map(q: int, m: dict) -> "HElem":
        return HElem(q, dict(m))

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        return set(self.coeffs)

    def coeff(self, s) -> RationalFunc:
        return self.coeffs.get(tuple(s), RationalFunc.zero(GF(self.q), THETA))

    def weight(self):
        """Common weight of the support, or None if mixed/zero."""
        ws = {wt(s) for s in self.coeffs}
        if len(ws) == 1:
            return ws.pop()
        return None

    def is_homogeneous(self) -> bool:
        return len({wt(s) for s in self.coeffs}) <= 1

    def max_depth(self) -> int:
        return max((dep(s) for s in self.coeffs), default=0)

    # -- linear structure ------------------------------------------------

    def _check(self, other: "HElem"):
        if self.q != other.q:
            raise ValueError("mixing elements over different F_q")

    def __add__(self, other: "HElem") -> "HElem":
        self._check(other)
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            acc = out.get(s)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                out.pop(s, None)
            else:
                out[s] = acc
        r = HElem(self.q)
        r.coeffs = out
        return r

    def __neg__(self) -> "HElem":
        r = HElem(self.q)
        r.coeffs = {s: -c for s, c in self.coeffs.items()}
        return r

    def __sub__(self, other: "HElem") -> "HElem":
        return self + (-other)

    def scale(self, c) -> "HElem":
        if isinstance(c, Poly):
            c = RationalFunc.from_poly(c)
        if isinstance(c, int):
            c = RationalFunc.const(GF(self.q), THETA, GF(self.q).from_int(c))
        if c.is_zero():
            return HElem.zero(self.q)
        r = HElem(self.q)
        r.coeffs = {s: cc * c for s, cc in self.coeffs.items()}
        return r

    def __eq__(self, other):
        return (isinstance(other, HElem) and self.q == other.q
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.q, frozenset(self.coeffs.items())))

    # -- display -----------------------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for s in sorted(self.coeffs):
            c = self.coeffs[s]
            idx = "[" + ",".join(map(str, s)) + "]"
            parts.append(f"{c}*{idx}")
        return " + ".join(parts)

    def __repr__(self):
        return f"HElem(q={self.q}, {self})"

    def to_json(self):
        return [{"index": list(s), "coeff": str(self.coeffs[s])}
                for s in sorted(self.coeffs)]

    @staticmethod
    def from_json(q: int, data) -> "HElem":
        out = HElem.zero(q)
        for item in data:
            c = parse_ratfunc(item["coeff"], q, THETA)
            out = out + HElem.basis(q, item["index"]).scale(c)
        return out


def bracket(q: int, parts) -> HElem:
    """Multilinear concatenation bracket.

    Each part is an index or an HElem; indices concatenate and HElem slots
    expand multilinearly.  A zero element in any slot kills the bracket,
    while the empty index is the neutral concatenand.
    """
    partial = [((), RationalFunc.one(GF(q), THETA))]
    for part in parts:
        if isinstance(part, HElem):
            if part.q != q:
                raise ValueError("bracket parts over different F_q")
            nxt = []
            for s0, c0 in partial:
                for s1, c1 in part.coeffs.items():
                    nxt.append((s0 + s1, c0 * c1))
            partial = nxt
        else:
            s1 = check_index(part)
            partial = [(s0 + s1, c0) for s0, c0 in partial]
    out = HElem.zero(q)
    for s, c in partial:
        out = out + HElem(q, {s: c})
    return out


def fuse(P, Q, q: int = None) -> HElem:
    """Concatenate two elements while adding the boundary entries.

    On indices s, n this is (s[:-1], s[-1]+n[0], n[1:]); the empty index on
    either side annihilates.  Extended bilinearly.
    """
    if not isinstance(P, HElem):
        P = HElem.basis(q, P)
    if not isinstance(Q, HElem):
        Q = HElem.basis(P.q, Q)
    P._check(Q)
    out = HElem.zero(P.q)
    for s, cs in P.coeffs.items():
        if not s:
            continue
        for n, cn in Q.coeffs.items():
            if not n:
                continue
            u = s[:-1] + (s[-1] + n[0],) + n[1:]
            out = out + HElem(P.q, {u: cs * cn})
    return out


# ---------------------------------------------------------------------------
# carry coefficients and the two products
# ---------------------------------------------------------------------------

def carry_coeff(s: int, n: int, j: int, q: int) -> int:
    """Chen's carry coefficient in the prime field of F_q.

    Nonzero only when (q-1) | j and 1 <= j < s+n, where it equals
    (-1)^(s-1) C(j-1, s-1) + (-1)^(n-1) C(j-1, n-1) reduced mod p.
    """
    p = GF(q).p
    if j < 1 or j >= s + n or j % (q - 1) != 0:
        return 0
    v = (-1) ** (s - 1) * math.comb(j - 1, s - 1) \
        + (-1) ** (n - 1) * math.comb(j - 1, n - 1)
    return v % p


_PROD_MEMO: dict = {}


def _index_product(s: Index, n: Index, q: int, bullet: str) -> dict:
    """Product of two basis indices as a dict index -> prime-field int."""
    if not s:
        return {n: 1}
    if not n:
        return {s: 1}
    memo = _PROD_MEMO.setdefault((q, bullet), {})
    key = (s, n)
    hit = memo.get(key)
    if hit is not None:
        return hit
    p = GF(q).p
    out: dict = {}

    def acc(u, c):
        c = (out.get(u, 0) + c) % p
        if c:
            out[u] = c
        else:
            out.pop(u, None)

    for u, c in _index_product(s[1:], n, q, bullet).items():
        acc((s[0],) + u, c)
    for u, c in _index_product(s, n[1:], q, bullet).items():
        acc((n[0],) + u, c)
    for u, c in _index_product(s[1:], n[1:], q, bullet).items():
        acc((s[0] + n[0],) + u, c)
    if bullet == ZETA:
        inner = _index_product(s[1:], n[1:], q, bullet)
        for j in range(1, s[0] + n[0]):
            dj = carry_coeff(s[0], n[0], j, q)
            if not dj:
                continue
            for u, cu in inner.items():
                for v, cv in _index_product((j,), u, q, bullet).items():
                    acc((s[0] + n[0] - j,) + v, dj * cu * cv)
    memo[key] = out
    return out


def _bilinear_product(P: HElem, Q: HElem, bullet: str) -> HElem:
    P._check(Q)
    q = P.q
    acc: dict = {}
    field = GF(q)
    for s, cs in P.coeffs.items():
        for n, cn in Q.coeffs.items():
            c = cs * cn
            for u, m in _index_product(s, n, q, bullet).items():
                term = c * m
                prev = acc.get(u)
                acc[u] = term if prev is None else prev + term
    out = HElem.zero(q)
    out.coeffs = {u: c for u, c in acc.items() if not c.is_zero()}
    return out


def harmonic_product(P, Q, q: int = None) -> HElem:
    """The stuffle-style product realized by the polylog side."""
    if not isinstance(P, HElem):
        P = HElem.basis(q, P)
    if not isinstance(Q, HElem):
        Q = HElem.basis(P.q, Q)
    return _bilinear_product(P, Q, LI)


def qshuffle_product(P, Q, q: int = None) -> HElem:
    """The product realized by the zeta side, with carry correction terms."""
    if not isinstance(P, HElem):
        P = HElem.basis(q, P)
    if not isinstance(Q, HElem):
        Q = HElem.basis(P.q, Q)
    return _bilinear_product(P, Q, ZETA)


def product(P, Q, bullet: str, q: int = None) -> HElem:
    b = _as_bullet(bullet)
    return harmonic_product(P, Q, q) if b == LI else qshuffle_product(P, Q, q)


def carry_term(s, n, q: int, bullet: str = ZETA) -> HElem:
    """Correction term distinguishing the two products on first entries.

    Vanishes identically on the polylog side; on the zeta side it is the
    weighted sum of carry splittings of s1 + n1.  Requires nonempty inputs.
    """
    s, n = check_index(s), check_index(n)
    if not s or not n:
        raise ValueError("carry term needs nonempty indices")
    if _as_bullet(bullet) == LI:
        return HElem.zero(q)
    out = HElem.zero(q)
    inner = _index_product(s[1:], n[1:], q, ZETA)
    for j in range(1, s[0] + n[0]):
        dj = carry_coeff(s[0], n[0], j, q)
        if not dj:
            continue
        for u, cu in inner.items():
            for v, cv in _index_product((j,), u, q, ZETA).items():
                out = out + HElem(q, {(s[0] + n[0] - j,) + v: dj * cu * cv})
    return out


def carry_term_elem(s: int, Q: HElem, q: int, bullet: str) -> HElem:
    """Carry term against a combination: sum of coeff * carry_term(s, n)."""
    out = HElem.zero(q)
    if _as_bullet(bullet) == LI:
        return out
    for n, c in Q.coeffs.items():
        if not n:
            continue
        out = out + carry_term((s,), n, q, ZETA).scale(c)
    return out


def qwrap(P, bullet: str, q: int = None) -> HElem:
    """One rewriting wrap: [1, (q-1) * P] with the chosen product."""
    if not isinstance(P, HElem):
        P = HElem.basis(q, P)
    q = P.q
    prod = product(HElem.basis(q, (q - 1,)), P, bullet)
    return bracket(q, [(1,), prod])


def qwrap_iter(P, m: int, bullet: str, q: int = None) -> HElem:
    """m-fold iteration of qwrap; m = 0 is the identity."""
    if m < 0:
        raise ValueError("iteration count must be >= 0")
    if not isinstance(P, HElem):
        P = HElem.basis(q, P)
    for _ in range(m):
        P = qwrap(P, bullet)
    return P


def coeffs_in_prime_carlitz(P: HElem) -> bool:
    """True when every coefficient is a prime-field polynomial in L_1."""
    L1 = carlitz_l(1, P.q)
    p = GF(P.q).p
    for c in P.coeffs.values():
        if not c.is_poly():
            return False
        f = c.num
        while not f.is_zero():
            quo, rem = f.divmod(L1)
            if rem.degree > 0:
                return False
            if not rem.is_zero() and rem.coeff(0) >= p:
                return False
            f = quo
    return True
