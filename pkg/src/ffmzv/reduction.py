"""Rewriting toward the Thakur-admissible basis.

One rewriting step replaces the leading non-admissible block of an index by
a combination of deeper or lexicographically later indices while preserving
every realized value; iterating lands the support inside the admissible
family.  The soundness certificate is the binary-relation machinery: each
step corresponds to a pair (P, Q) with vanishing shifted level sums, built
from the seed pair by three structure-preserving maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fields import GF, THETA, Poly, RationalFunc, carlitz_l
from .hspace import (
    HElem,
    ZETA,
    _as_bullet,
    bracket,
    carry_term,
    carry_term_elem,
    fuse,
    qwrap_iter,
)
from .exactlevel import check_level_identities
from .indices import (
    check_index,
    decompose_thakur,
    dep,
    enumerate_family,
    init_part,
    is_thakur,
    termination_rank,
    wt,
)
from .eval import realize_trunc


class ReductionError(Exception):
    pass


@dataclass(frozen=True)
class BinaryRelation:
    """A pair (left, right) asserting 𝓛_d(left) + 𝓛_(d+1)(right) = 0 for
    every level d; each finite level is exactly checkable."""

    left: HElem
    right: HElem

    @property
    def q(self) -> int:
        return self.left.q

    def weight(self):
        ws = {w for w in (self.left.weight(), self.right.weight())
              if w is not None}
        if len(ws) > 1:
            raise ValueError("components have different weights")
        return ws.pop() if ws else None

    def max_depth(self) -> int:
        return max(self.left.max_depth(), self.right.max_depth())


@dataclass
class LevelCheckReport:
    q: int
    bullet: str
    d_min: int
    d_max: int
    passed: bool
    first_failing_d: int | None = None
    failing_levels: list = field(default_factory=list)

    def __str__(self):
        status = "pass" if self.passed else f"FAIL at d={self.first_failing_d}"
        return (f"level check q={self.q} {self.bullet} "
                f"d in [{self.d_min},{self.d_max}]: {status}")


def seed_relation(q: int) -> BinaryRelation:
    """The weight-q seed pair ([q], -L_1 [1, q-1])."""
    if q < 2:
        raise ValueError("q must be >= 2")
    left = HElem.basis(q, (q,))
    right = HElem.basis(q, (1, q - 1)).scale(-carlitz_l(1, q))
    return BinaryRelation(left, right)


def _require_positive(R: BinaryRelation):
    for elem in (R.left, R.right):
        if () in elem.coeffs:
            raise ValueError("relation components must have positive weight")


def rel_prefix(s, R: BinaryRelation, bullet: str) -> BinaryRelation:
    """Prefix map: absorb the pair into a single left component under s.

    Sends (P, Q) to ([s,P] + [s,Q] + (s fused Q) + [s[:-1], carry(s[-1], Q)], 0).
    """
    s = check_index(s)
    if not s:
        raise ValueError("prefix map needs a nonempty index")
    _require_positive(R)
    q = R.q
    bullet = _as_bullet(bullet)
    P, Q = R.left, R.right
    out = bracket(q, [s, P]) + bracket(q, [s, Q]) + fuse(HElem.basis(q, s), Q)
    d_part = carry_term_elem(s[-1], Q, q, bullet)
    out = out + bracket(q, [s[:-1], d_part])
    return BinaryRelation(out, HElem.zero(q))


def rel_product(s, R: BinaryRelation, bullet: str) -> BinaryRelation:
    """Product map: multiply the level identity through by the index s."""
    s = check_index(s)
    if not s:
        raise ValueError("product map needs a nonempty index")
    _require_positive(R)
    q = R.q
    bullet = _as_bullet(bullet)
    from .hspace import product

    left = HElem.zero(q)
    right = HElem.zero(q)
    for n, a in R.left.coeffs.items():
        left = left + bracket(
            q, [(n[0] + s[0],),
                product(HElem.basis(q, n[1:]), HElem.basis(q, s[1:]), bullet)]
        ).scale(a)
        left = left + bracket(
            q, [(n[0],), product(HElem.basis(q, n[1:]), HElem.basis(q, s), bullet)]
        ).scale(a)
        left = left + carry_term(n, s, q, bullet).scale(a)
    for n, b in R.right.coeffs.items():
        right = right + bracket(
            q, [(n[0],), product(HElem.basis(q, n[1:]), HElem.basis(q, s), bullet)]
        ).scale(b)
    return BinaryRelation(left, right)


def rel_qshift(m: int, R: BinaryRelation, bullet: str) -> BinaryRelation:
    """q-block map iterated m times: ([q,...,q, P], L_1^m wrap^m(Q))."""
    if m < 0:
        raise ValueError("iteration count must be >= 0")
    _require_positive(R)
    q = R.q
    bullet = _as_bullet(bullet)
    left = bracket(q, [(q,) * m, R.left])
    right = qwrap_iter(R.right, m, bullet).scale(carlitz_l(1, q) ** m)
    return BinaryRelation(left, right)


# ---------------------------------------------------------------------------
# the rewriting operator
# ---------------------------------------------------------------------------

def rewrite_parts(s, bullet: str, q: int):
    """The three summands of one rewriting step on a basis index."""
    s = check_index(s)
    bullet = _as_bullet(bullet)
    head, m, tail, red = decompose_thakur(s, q)
    L1 = carlitz_l(1, q)
    if tail:
        wrapped = qwrap_iter(HElem.basis(q, red), m + 1, bullet)
        Lpow = L1 ** (m + 1)
        u1 = (-bracket(q, [head, (q,) * (m + 1), red])
              + bracket(q, [head, wrapped]).scale(Lpow))
        u2 = fuse(HElem.basis(q, head), wrapped).scale(Lpow)
        u3 = -bracket(q, [head, (q,) * m, carry_term((q,), red, q, bullet)])
    else:
        wrapped = qwrap_iter(HElem.basis(q, ()), m, bullet)
        Lpow = L1 ** m
        u1 = bracket(q, [head, wrapped]).scale(Lpow)
        u2 = fuse(HElem.basis(q, head), wrapped).scale(Lpow)
        u3 = HElem.zero(q)
    return u1, u2, u3


def _check_expansion(s, parts, q: int):
    """Support conditions of the three summands and strict rank growth."""
    u1, u2, u3 = parts
    ini = init_part(s, q)
    l1 = len(ini)
    rank_s = termination_rank(s, q)
    for n in u1.support():
        if not dep(n) > dep(s):
            raise ReductionError(f"depth condition fails on {n} from {s}")
    for n in u2.support():
        if not (dep(n) >= dep(s) and init_part(n, q) > ini):
            raise ReductionError(f"initial-part condition fails on {n} from {s}")
    for n in u3.support():
        ok = (dep(n) >= dep(s) > l1
              and init_part(n, q) >= ini
              and 1 <= n[l1] < s[l1])
        if not ok:
            raise ReductionError(f"carry-part condition fails on {n} from {s}")
    for part in parts:
        for n in part.support():
            if not termination_rank(n, q) > rank_s:
                raise ReductionError(f"rank does not increase: {s} -> {n}")


def rewrite_once_index(s, bullet: str, q: int, check: bool = True) -> HElem:
    s = check_index(s)
    if is_thakur(s, q):
        return HElem.basis(q, s)
    parts = rewrite_parts(s, bullet, q)
    if check:
        _check_expansion(s, parts, q)
    return parts[0] + parts[1] + parts[2]


def rewrite_once(P, bullet: str, q: int = None, check: bool = True) -> HElem:
    """One application of the value-preserving rewriting operator."""
    if not isinstance(P, HElem):
        P = HElem.basis(q, tuple(P))
    out = HElem.zero(P.q)
    for s, c in P.coeffs.items():
        out = out + rewrite_once_index(s, bullet, P.q, check=check).scale(c)
    return out


def rewrite_to_basis(P, bullet: str, q: int = None, check: bool = True,
                     max_steps: int = None):
    """Iterate the rewriting step until the support is Thakur-admissible.

    Returns (result, steps) with steps the number of applications needed;
    a safety cap (generous, weight-dependent) guards against implementation
    bugs, since termination is guaranteed by the strictly increasing rank.
    """
    if not isinstance(P, HElem):
        P = HElem.basis(q, tuple(P))
    q = P.q
    w = max((wt(s) for s in P.coeffs), default=0)
    cap = max_steps if max_steps is not None else 8 * (w + 2)
    steps = 0
    cur = P
    while any(not is_thakur(s, q) for s in cur.coeffs):
        if steps >= cap:
            raise ReductionError(
                f"rewriting did not stabilize within {cap} steps (bug?)")
        cur = rewrite_once(cur, bullet, check=check)
        steps += 1
    return cur, steps


def basis_coordinates(P, bullet: str, q: int = None, check: bool = True) -> dict:
    """Coordinates of the rewritten element on the admissible family.

    Requires homogeneous input; reassembling the returned map reproduces
    the rewritten element exactly.
    """
    if not isinstance(P, HElem):
        P = HElem.basis(q, tuple(P))
    if not P.is_homogeneous():
        raise ValueError("basis coordinates need a homogeneous element")
    reduced, _ = rewrite_to_basis(P, bullet, check=check)
    return dict(reduced.coeffs)


# ---------------------------------------------------------------------------
# pair construction certifying one rewriting step
# ---------------------------------------------------------------------------

def step_pair(s, bullet: str, q: int) -> BinaryRelation:
    """The binary relation whose realized sum is [s] - rewrite(s).

    Built from the seed pair by the product, q-block and prefix maps; only
    defined for non-admissible s.
    """
    s = check_index(s)
    if is_thakur(s, q):
        raise ValueError("admissible indices are fixed points; no pair")
    bullet = _as_bullet(bullet)
    head, m, tail, red = decompose_thakur(s, q)
    R = seed_relation(q)
    if tail:
        R = rel_qshift(m, rel_product(red, R, bullet), bullet)
    else:
        R = rel_qshift(m - 1, R, bullet)
    if head:
        R = rel_prefix(head, R, bullet)
    # structural identity: the pair sums to [s] - rewrite(s)
    expect = HElem.basis(q, s) - rewrite_once_index(s, bullet, q, check=False)
    if R.left + R.right != expect:
        raise ReductionError(f"pair construction mismatch at {s}")
    return R


def default_dmax(R: BinaryRelation) -> int:
    """Depth bound of the pair's support plus a small verification window."""
    return R.max_depth() + 4


def verify_binary_relation(R: BinaryRelation, bullet: str,
                           d_max: int = None) -> LevelCheckReport:
    """Exactly check 𝓛_d(left) + 𝓛_(d+1)(right) = 0 for -1 <= d <= d_max."""
    bullet = _as_bullet(bullet)
    if d_max is None:
        d_max = default_dmax(R)
    results = check_level_identities([(R.left, R.right)], bullet, R.q, [d_max])
    passed, failures = results[0]
    return LevelCheckReport(
        q=R.q, bullet=bullet, d_min=-1, d_max=d_max, passed=passed,
        first_failing_d=failures[0] if failures else None,
        failing_levels=failures)


def verify_binary_relations(pairs, bullet: str, q: int, dmaxes=None):
    """Batch version sharing one level evaluator across many pairs."""
    bullet = _as_bullet(bullet)
    if dmaxes is None:
        dmaxes = [default_dmax(R) for R in pairs]
    raw = check_level_identities(
        [(R.left, R.right) for R in pairs], bullet, q, dmaxes)
    return [
        LevelCheckReport(q=q, bullet=bullet, d_min=-1, d_max=dm,
                         passed=ok, first_failing_d=(f[0] if f else None),
                         failing_levels=f)
        for (ok, f), dm in zip(raw, dmaxes)
    ]


# ---------------------------------------------------------------------------
# relation generation
# ---------------------------------------------------------------------------

def relations_for_weight(w: int, q: int, check: bool = True) -> list:
    """Generators [s] - rewrite(s) over non-admissible weight-w indices.

    Each generator is normalized to unit coefficient at its source index
    (automatic: the rewrite never reproduces the source) and sorted by
    source for stable output.
    """
    if w < 1:
        raise ValueError("weight must be >= 1")
    out = []
    admissible = set(enumerate_family("T", w, q).members)
    for s in enumerate_family("ALL", w, q):
        if s in admissible:
            continue
        gen = HElem.basis(q, s) - rewrite_once_index(s, ZETA, q, check=check)
        c = gen.coeff(s)
        if not c.is_one():
            gen = gen.scale(c.inverse())
        out.append((s, gen))
    return out


def relation_residual_ok(gen: HElem, bullet: str, precision: int) -> bool:
    """Numeric certificate: the truncated realization vanishes."""
    return realize_trunc(gen, bullet, precision).is_zero_to_precision()
