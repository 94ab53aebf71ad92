"""Index tuples, index families, the counting recurrence, and the
bijection between non-divisible and Thakur-admissible indices.

An index is a tuple of positive ints; () is the empty index.  Families of a
given weight are materialized as lexicographically sorted lists so output is
stable across runs.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

Index = tuple  # tuple of positive ints; () is the empty index

FAMILY_TAGS = ("ALL", "T", "ND", "ND0")


def wt(s: Index) -> int:
    return sum(s)


def dep(s: Index) -> int:
    return len(s)


def check_index(s) -> Index:
    t = tuple(int(x) for x in s)
    if any(x <= 0 for x in t):
        raise ValueError(f"index entries must be positive: {s}")
    return t


def is_thakur(s: Index, q: int) -> bool:
    """All entries <= q and the last entry < q (the empty index qualifies)."""
    if not s:
        return True
    return all(x <= q for x in s[:-1]) and s[-1] < q


def is_nondiv(s: Index, q: int) -> bool:
    """No entry divisible by q."""
    return all(x % q != 0 for x in s)


def is_nondiv0(s: Index, q: int) -> bool:
    """Non-divisible with every entry after the first divisible by q-1."""
    if not s:
        return True
    if not is_nondiv(s, q):
        return False
    if q == 2:
        return True
    return all(x % (q - 1) == 0 for x in s[1:])


_PREDICATES = {
    "ALL": lambda s, q: True,
    "T": is_thakur,
    "ND": is_nondiv,
    "ND0": is_nondiv0,
}


def compositions(w: int):
    """All compositions of w (2^(w-1) of them for w >= 1), any order."""
    if w == 0:
        yield ()
        return
    for first in range(1, w + 1):
        for rest in compositions(w - first):
            yield (first,) + rest


@dataclass(frozen=True)
class IndexFamily:
    tag: str
    weight: int
    q: int
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s):
        return tuple(s) in set(self.members)


@functools.lru_cache(maxsize=None)
def enumerate_family(tag: str, w: int, q: int) -> IndexFamily:
    """Complete, duplicate-free, lexicographically sorted family of weight w."""
    if tag not in FAMILY_TAGS:
        raise ValueError(f"unknown family tag {tag!r}")
    if w < 0:
        raise ValueError("weight must be >= 0")
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    pred = _PREDICATES[tag]
    members = sorted(s for s in compositions(w) if pred(s, q))
    return IndexFamily(tag, w, q, tuple(members))


@functools.lru_cache(maxsize=None)
def basis_count(w: int, q: int) -> int:
    """Size of the weight-w Thakur family by the standard recurrence.

    basis_count(0) = 1; 2^(w-1) below weight q; 2^(q-1) - 1 at weight q;
    and the sum of the previous q values above weight q.
    """
    if w < 0:
        return 0
    if w == 0:
        return 1
    if w < q:
        return 2 ** (w - 1)
    if w == q:
        return 2 ** (q - 1) - 1
    return sum(basis_count(w - i, q) for i in range(1, q + 1))


def nondiv_to_thakur(s: Index, q: int) -> Index:
    """(m1 q + n1, ..., mr q + nr) -> (q^{m1}, n1, ..., q^{mr}, nr)."""
    out = []
    for x in s:
        if x % q == 0:
            raise ValueError(f"{s} has an entry divisible by q={q}")
        m, n = divmod(x, q)
        out.extend([q] * m)
        out.append(n)
    return tuple(out)


def thakur_to_nondiv(s: Index, q: int) -> Index:
    """Inverse of nondiv_to_thakur on Thakur-admissible indices."""
    if not is_thakur(s, q):
        raise ValueError(f"{s} is not Thakur-admissible for q={q}")
    out = []
    m = 0
    for x in s:
        if x == q:
            m += 1
        else:
            out.append(m * q + x)
            m = 0
    if m:
        raise ValueError(f"{s} ends with a maximal entry; not in the image")
    return tuple(out)


def prefix_set(indices) -> set:
    """All prefixes (including the empty index and the indices themselves)."""
    out = {()}
    for s in indices:
        s = tuple(s)
        for i in range(1, len(s) + 1):
            out.add(s[:i])
    return out


def decompose_thakur(s: Index, q: int):
    """Split s = (head, q-run, tail) with head Thakur-admissible, the run a
    maximal block of entries equal to q, and the tail empty or starting > q.

    Returns (head, m, tail, reduced) where m is the run length and reduced is
    (tail[0]-q, *tail[1:]) when the tail is nonempty, else None.
    """
    s = tuple(s)
    cut = len(s)
    for i, x in enumerate(s):
        if x > q:
            cut = i
            break
    tail = s[cut:]
    j = cut
    while j > 0 and s[j - 1] == q:
        j -= 1
    head, m = s[:j], cut - j
    reduced = (tail[0] - q,) + tail[1:] if tail else None
    return head, m, tail, reduced


def init_part(s: Index, q: int) -> Index:
    """(head, q-run) of the decomposition; fixed points return themselves."""
    head, m, _, _ = decompose_thakur(s, q)
    return head + (q,) * m


def termination_rank(s: Index, q: int):
    """Strictly increasing measure along rewriting chains.

    The triple is (depth, initial part, -(entry after the initial part)),
    ordered lexicographically; when the initial part is all of s the last
    component defaults to -1.
    """
    ini = init_part(s, q)
    nxt = s[len(ini)] if len(ini) < len(s) else 1
    return (len(s), ini, -nxt)
