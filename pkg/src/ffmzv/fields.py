"""Exact arithmetic over F_q: finite fields, polynomials, rational functions,
and truncated Laurent series at the infinite place.

Field elements are plain ints in ``0..q-1``.  For prime q the int is the
residue itself.  For q = p^e the int encodes a polynomial over F_p in a fixed
generator g (base-p digits, digit k = coefficient of g^k), reduced modulo a
fixed irreducible modulus so that outputs are bit-reproducible.

Polynomials carry a variable tag ('theta' or 't'); mixing tags is a hard
error.  Rational functions are kept in canonical form (coprime, monic
denominator), so structural equality is semantic equality.  Laurent series
live in u = 1/theta and track precision pessimistically: every stored
coefficient is exact.
"""

from __future__ import annotations

import functools
import re

import numpy as np
from scipy.signal import fftconvolve

# Fixed irreducible moduli for the non-prime fields we support (q <= 25).
# Key (p, e), value = coefficients of the modulus, low degree first, monic.
MODULI = {
    (2, 2): (1, 1, 1),         # g^2 + g + 1
    (2, 3): (1, 1, 0, 1),      # g^3 + g + 1
    (2, 4): (1, 1, 0, 0, 1),   # g^4 + g + 1
    (3, 2): (2, 2, 1),         # g^2 + 2g + 2
    (5, 2): (2, 4, 1),         # g^2 + 4g + 2
}

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23)


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    for p in _SMALL_PRIMES:
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a supported prime power (q <= 25 required)")


def _poly_mod_irreducible(coeffs, p):
    """Brute-force irreducibility check for a monic modulus over F_p."""
    e = len(coeffs) - 1
    if e < 2:
        return True

    def divmod_small(a, b):
        a = list(a)
        db = len(b) - 1
        inv = pow(b[-1], p - 2, p)
        for i in range(len(a) - 1, db - 1, -1):
            f = (a[i] * inv) % p
            if f:
                for j in range(db + 1):
                    a[i - db + j] = (a[i - db + j] - f * b[j]) % p
        while a and a[-1] == 0:
            a.pop()
        return a

    # trial-divide by every monic polynomial of degree 1..e//2
    for d in range(1, e // 2 + 1):
        for code in range(p ** d):
            div = []
            m = code
            for _ in range(d):
                div.append(m % p)
                m //= p
            div.append(1)
            if not divmod_small(coeffs, div):
                return False
    return True


@functools.lru_cache(maxsize=None)
def GF(q: int) -> "FiniteField":
    """Return the (cached) finite field with q elements."""
    return FiniteField(q)


class FiniteField:
    """The field F_q with table-driven arithmetic on int-encoded elements."""

    def __init__(self, q: int):
        p, e = factor_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.modulus = None
        else:
            if (p, e) not in MODULI:
                raise ValueError(f"no modulus on record for q = {p}^{e}")
            self.modulus = MODULI[(p, e)]
            if not _poly_mod_irreducible(self.modulus, p):
                raise ValueError(f"modulus for q={q} is not irreducible")
        self._build_tables()

    # -- encoding helpers ---------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def encode(self, digs) -> int:
        a = 0
        for d in reversed(list(digs)):
            a = a * self.p + (d % self.p)
        return a

    def from_int(self, n: int) -> int:
        """Embed an integer through the prime subfield."""
        return n % self.p

    def _build_tables(self):
        q, p, e = self.q, self.p, self.e
        add = np.zeros((q, q), dtype=np.int16)
        mul = np.zeros((q, q), dtype=np.int16)
        if e == 1:
            for a in range(q):
                for b in range(q):
                    add[a, b] = (a + b) % p
                    mul[a, b] = (a * b) % p
        else:
            mod = self.modulus
            for a in range(q):
                da = self.digits(a)
                for b in range(q):
                    db = self.digits(b)
                    add[a, b] = self.encode((x + y) % p for x, y in zip(da, db))
                    prod = [0] * (2 * e - 1)
                    for i, x in enumerate(da):
                        if x:
                            for j, y in enumerate(db):
                                prod[i + j] = (prod[i + j] + x * y) % p
                    for i in range(2 * e - 2, e - 1, -1):
                        c = prod[i]
                        if c:
                            prod[i] = 0
                            for j in range(e):
                                prod[i - e + j] = (prod[i - e + j] - c * mod[j]) % p
                    mul[a, b] = self.encode(prod[:e])
        self.add_table = add
        self.mul_table = mul
        neg = np.zeros(q, dtype=np.int16)
        for a in range(q):
            row = add[a]
            neg[a] = int(np.nonzero(row == 0)[0][0])
        self.neg_table = neg
        inv = np.zeros(q, dtype=np.int16)
        for a in range(1, q):
            row = mul[a]
            inv[a] = int(np.nonzero(row == 1)[0][0])
        self.inv_table = inv

    # -- scalar operations --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero in F_q")
        return int(self.inv_table[a])

    def power(self, a: int, n: int) -> int:
        if n < 0:
            return self.power(self.inv(a), -n)
        r, b = 1, a
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            n >>= 1
        return r

    # -- vectorized operations on int arrays of encodings --------------------

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a + b) % self.p
        return self.add_table[a, b]

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (-a) % self.p
        return self.neg_table[a]

    def vscale(self, s: int, a: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a * s) % self.p
        return self.mul_table[s, a]

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(("FiniteField", self.q))


# ---------------------------------------------------------------------------
# dense convolution helpers
# ---------------------------------------------------------------------------

_FFT_THRESHOLD = 256


def _conv_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact convolution of F_p coefficient vectors (int arrays)."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    if min(len(a), len(b)) < _FFT_THRESHOLD:
        return np.convolve(a.astype(np.int64), b.astype(np.int64)) % p
    # float64 FFT is exact here: products are < p^2 * min(len) << 2^53
    c = fftconvolve(a.astype(np.float64), b.astype(np.float64))
    return np.rint(c).astype(np.int64) % p


def poly_mul_arrays(a: np.ndarray, b: np.ndarray, field: FiniteField) -> np.ndarray:
    """Multiply coefficient arrays of encodings over F_q, returning encodings."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int16)
    p, e = field.p, field.e
    if e == 1:
        return _conv_mod_p(a, b, p).astype(np.int16)
    # split into base-p digit planes, convolve pairwise, reduce powers of g
    pa = [(a // p**k) % p for k in range(e)]
    pb = [(b // p**k) % p for k in range(e)]
    acc = [np.zeros(len(a) + len(b) - 1, dtype=np.int64) for _ in range(2 * e - 1)]
    for i in range(e):
        if not pa[i].any():
            continue
        for j in range(e):
            if not pb[j].any():
                continue
            acc[i + j] += _conv_mod_p(pa[i], pb[j], p)
    # rewrite g^m for m >= e using the modulus
    gpow = {}
    g = field.encode([0, 1] + [0] * (e - 2))
    for m in range(e, 2 * e - 1):
        gpow[m] = field.digits(field.power(g, m))
    out_digits = [np.zeros(len(a) + len(b) - 1, dtype=np.int64) for _ in range(e)]
    for m in range(2 * e - 1):
        plane = acc[m] % p
        if m < e:
            out_digits[m] += plane
        else:
            dm = gpow[m]
            for k in range(e):
                if dm[k]:
                    out_digits[k] += dm[k] * plane
    res = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for k in range(e):
        res += (out_digits[k] % p) * p**k
    return res.astype(np.int16)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

THETA = "theta"
TVAR = "t"


def _trim(c: np.ndarray) -> np.ndarray:
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n]


class Poly:
    """Univariate polynomial over F_q with a variable tag.

    Coefficients are stored low-degree-first as an int16 array of field
    encodings with no trailing zeros; the zero polynomial has an empty array.
    Instances are treated as immutable.
    """

    __slots__ = ("field", "var", "c", "_hash")

    def __init__(self, field: FiniteField, var: str, coeffs, _trusted=False):
        self.field = field
        self.var = var
        if _trusted:
            self.c = coeffs
        else:
            arr = np.asarray(list(coeffs), dtype=np.int16)
            if arr.size and (arr.min() < 0 or arr.max() >= field.q):
                arr = np.asarray(
                    [x % field.p if field.e == 1 else x % field.q for x in arr],
                    dtype=np.int16,
                )
            self.c = _trim(arr)
        self.c.flags.writeable = False
        self._hash = None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(field, var):
        return Poly(field, var, np.zeros(0, dtype=np.int16), _trusted=True)

    @staticmethod
    def const(field, var, a: int):
        if a % field.q == 0 and field.e == 1:
            a = 0
        if field.e == 1:
            a %= field.p
        if a == 0:
            return Poly.zero(field, var)
        return Poly(field, var, np.array([a], dtype=np.int16), _trusted=True)

    @staticmethod
    def one(field, var):
        return Poly.const(field, var, 1)

    @staticmethod
    def gen(field, var):
        return Poly(field, var, np.array([0, 1], dtype=np.int16), _trusted=True)

    @staticmethod
    def monomial(field, var, k: int, a: int = 1):
        if a == 0:
            return Poly.zero(field, var)
        c = np.zeros(k + 1, dtype=np.int16)
        c[k] = a
        return Poly(field, var, c, _trusted=True)

    # -- basic queries --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return len(self.c) == 0

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 1

    @property
    def lead(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return int(self.c[-1])

    def coeff(self, k: int) -> int:
        if 0 <= k < len(self.c):
            return int(self.c[k])
        return 0

    def _check(self, other: "Poly"):
        if self.field.q != other.field.q:
            raise ValueError("field mismatch")
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = a.astype(np.int16).copy()
        if len(b):
            out[: len(b)] = self.field.vadd(a[: len(b)], b)
        return Poly(self.field, self.var, _trim(out), _trusted=True)

    def __neg__(self):
        if self.field.p == 2:
            return self
        return Poly(self.field, self.var, self.field.vneg(self.c).astype(np.int16),
                    _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field, self.var)
        return Poly(self.field, self.var,
                    _trim(poly_mul_arrays(self.c, other.c, self.field)),
                    _trusted=True)

    __rmul__ = __mul__

    def scale(self, s: int) -> "Poly":
        if s == 0:
            return Poly.zero(self.field, self.var)
        if s == 1:
            return self
        return Poly(self.field, self.var,
                    self.field.vscale(s, self.c).astype(np.int16), _trusted=True)

    def shift(self, k: int) -> "Poly":
        """Multiply by var^k."""
        if self.is_zero() or k == 0:
            return self if k >= 0 else self
        c = np.concatenate([np.zeros(k, dtype=np.int16), self.c])
        return Poly(self.field, self.var, c, _trusted=True)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        r = Poly.one(self.field, self.var)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def divmod(self, other: "Poly"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        r = self.c.astype(np.int16).copy()
        db = other.degree
        if self.degree < db:
            return Poly.zero(f, self.var), self
        qc = np.zeros(self.degree - db + 1, dtype=np.int16)
        inv_lead = f.inv(other.lead)
        bc = other.c
        for i in range(len(r) - 1, db - 1, -1):
            cv = int(r[i])
            if cv:
                factor = f.mul(cv, inv_lead)
                qc[i - db] = factor
                seg = f.vscale(factor, bc)
                r[i - db: i + 1] = f.vadd(r[i - db: i + 1], f.vneg(seg))
        return (Poly(f, self.var, _trim(qc), _trusted=True),
                Poly(f, self.var, _trim(r), _trusted=True))

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("exact_div with nonzero remainder")
        return q

    def monic(self) -> "Poly":
        if self.is_zero() or self.lead == 1:
            return self
        return self.scale(self.field.inv(self.lead))

    def gcd(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def subs_var(self, new_var: str) -> "Poly":
        """Rename the variable (e.g. the theta -> t substitution)."""
        return Poly(self.field, new_var, self.c, _trusted=True)

    def frobenius_coeffs(self) -> "Poly":
        """Apply x -> x^q coefficientwise (identity on F_q, kept for clarity)."""
        return self

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field.q == other.field.q
                and self.var == other.var and len(self.c) == len(other.c)
                and bool(np.all(self.c == other.c)))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.q, self.var, self.c.tobytes()))
        return self._hash

    # -- printing / parsing -----------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            a = self.coeff(k)
            if a == 0:
                continue
            if k == 0:
                parts.append(str(a))
            else:
                head = "" if a == 1 else f"{a}*"
                v = self.var if k == 1 else f"{self.var}^{k}"
                parts.append(head + v)
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.field.q},{self.var},{self})"


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunc:
    """Reduced fraction num/den over F_q[var], denominator monic and coprime
    to the numerator.  Canonical form makes structural equality semantic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, _reduced=False):
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.one(num.field, num.var)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lead_inv = num.field.inv(den.lead)
                if lead_inv != 1:
                    num = num.scale(lead_inv)
                    den = den.scale(lead_inv)
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_poly(p: Poly) -> "RationalFunc":
        return RationalFunc(p, Poly.one(p.field, p.var), _reduced=True)

    @staticmethod
    def zero(field, var) -> "RationalFunc":
        return RationalFunc.from_poly(Poly.zero(field, var))

    @staticmethod
    def one(field, var) -> "RationalFunc":
        return RationalFunc.from_poly(Poly.one(field, var))

    @staticmethod
    def const(field, var, a: int) -> "RationalFunc":
        return RationalFunc.from_poly(Poly.const(field, var, a))

    # -- queries ---------------------------------------------------------------

    @property
    def field(self):
        return self.num.field

    @property
    def var(self):
        return self.num.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def valuation_at_infinity(self) -> int:
        """u-valuation: deg den - deg num (raises on zero)."""
        if self.is_zero():
            raise ValueError("zero has no finite valuation")
        return self.den.degree - self.num.degree

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Poly):
            other = RationalFunc.from_poly(other)
        return RationalFunc(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    def __neg__(self):
        return RationalFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        if isinstance(other, Poly):
            other = RationalFunc.from_poly(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            other = RationalFunc.from_poly(other)
        if isinstance(other, int):
            return RationalFunc(self.num.scale(self.field.from_int(other)),
                                self.den, _reduced=True)
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            other = RationalFunc.from_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RationalFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunc(self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunc(self.num ** n, self.den ** n, _reduced=True)

    def subs_var(self, new_var: str) -> "RationalFunc":
        return RationalFunc(self.num.subs_var(new_var),
                            self.den.subs_var(new_var), _reduced=True)

    def __eq__(self, other):
        if isinstance(other, Poly):
            other = RationalFunc.from_poly(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return poly_paren(self.num)
        return f"{poly_paren(self.num)}/{poly_paren(self.den)}"

    def __repr__(self):
        return f"RationalFunc({self})"


def poly_paren(p: Poly) -> str:
    s = str(p)
    if "+" in s or "-" in s:
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# parser for polynomials / rational functions
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-|/|\(|\))")


class _Parser:
    def __init__(self, text: str, field: FiniteField, var: str):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip() == "":
                    break
                raise ValueError(f"bad token at {text[pos:]!r}")
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0
        self.field = field
        self.var = var

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> RationalFunc:
        r = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input near {self.peek()!r}")
        return r

    def expr(self) -> RationalFunc:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -sign
        r = self.term()
        if sign < 0:
            r = -r
        while self.peek() in ("+", "-"):
            op = self.next()
            t = self.term()
            r = r + t if op == "+" else r - t
        return r

    def term(self) -> RationalFunc:
        r = self.factor()
        while self.peek() in ("*", "/"):
            op = self.next()
            f = self.factor()
            r = r * f if op == "*" else r / f
        return r

    def factor(self) -> RationalFunc:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            neg = False
            if self.peek() == "-":
                self.next()
                neg = True
            tok = self.next()
            if tok is None or not tok.isdigit():
                raise ValueError("expected integer exponent")
            n = int(tok)
            return base ** (-n if neg else n)
        return base

    def atom(self) -> RationalFunc:
        tok = self.next()
        if tok is None:
            raise ValueError("unexpected end of input")
        if tok == "(":
            r = self.expr()
            if self.next() != ")":
                raise ValueError("expected ')'")
            return r
        if tok == "-":
            return -self.atom()
        if tok.isdigit():
            n = int(tok)
            if self.field.e > 1:
                if n >= self.field.q:
                    raise ValueError(
                        f"literal {n} out of range for encoded F_{self.field.q}")
                return RationalFunc.const(self.field, self.var, n)
            return RationalFunc.const(self.field, self.var, n % self.field.p)
        if tok == self.var:
            return RationalFunc.from_poly(Poly.gen(self.field, self.var))
        raise ValueError(f"unexpected token {tok!r} (variable is {self.var!r})")


def parse_ratfunc(text: str, q: int, var: str) -> RationalFunc:
    """Parse the textual `num/den` form (round-trips with str())."""
    return _Parser(text, GF(q), var).parse()


def parse_poly(text: str, q: int, var: str) -> Poly:
    r = parse_ratfunc(text, q, var)
    if not r.is_poly():
        raise ValueError("expected a polynomial, got a proper fraction")
    return r.num


# ---------------------------------------------------------------------------
# truncated Laurent series at the infinite place (u = 1/theta)
# ---------------------------------------------------------------------------

class LaurentSeries:
    """Truncated expansion in u = 1/theta.

    ``coeffs[k]`` is the exact coefficient of u^(v0+k); the value is known to
    be f = sum + O(u^(v0+N+1)) where N = precision = len(coeffs)-1.  All
    exponents below v0 have coefficient exactly zero.
    """

    __slots__ = ("field", "v0", "coeffs")

    def __init__(self, field: FiniteField, v0: int, coeffs):
        arr = np.asarray(coeffs, dtype=np.int16)
        # leading exact zeros raise v0 without losing information
        k = 0
        while k < len(arr) and arr[k] == 0:
            k += 1
        if k and k < len(arr):
            v0 += k
            arr = arr[k:]
        elif k == len(arr) and k > 0:
            v0 += k - 1
            arr = arr[k - 1:]
        self.field = field
        self.v0 = v0
        self.coeffs = arr
        self.coeffs.flags.writeable = False

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    @property
    def prec_end(self) -> int:
        """First exponent whose coefficient is unknown."""
        return self.v0 + len(self.coeffs)

    def is_zero_to_precision(self) -> bool:
        return not self.coeffs.any()

    def valuation(self):
        """Exponent of the first known nonzero coefficient, or None."""
        nz = np.nonzero(self.coeffs)[0]
        if len(nz) == 0:
            return None
        return self.v0 + int(nz[0])

    def coeff(self, k: int) -> int:
        """Exact coefficient of u^k (raises if k is beyond the precision)."""
        if k >= self.prec_end:
            raise ValueError(f"coefficient of u^{k} is beyond the precision")
        if k < self.v0:
            return 0
        return int(self.coeffs[k - self.v0])

    def _check(self, other):
        if self.field.q != other.field.q:
            raise ValueError("field mismatch")

    def __add__(self, other):
        self._check(other)
        v0 = min(self.v0, other.v0)
        end = min(self.prec_end, other.prec_end)
        if end <= v0:
            raise ValueError("no overlapping exact window in series addition")
        out = np.zeros(end - v0, dtype=np.int16)
        sa = self.coeffs[: max(0, end - self.v0)]
        out[self.v0 - v0: self.v0 - v0 + len(sa)] = sa
        sb = other.coeffs[: max(0, end - other.v0)]
        seg = out[other.v0 - v0: other.v0 - v0 + len(sb)]
        out[other.v0 - v0: other.v0 - v0 + len(sb)] = self.field.vadd(seg, sb)
        return LaurentSeries(self.field, v0, out)

    def __neg__(self):
        return LaurentSeries(self.field, self.v0,
                             self.field.vneg(self.coeffs).astype(np.int16))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        # product exact through min over the two (v0_a + end_b, v0_b + end_a) - 1
        end = min(self.v0 + other.prec_end, other.v0 + self.prec_end)
        v0 = self.v0 + other.v0
        if self.is_zero_to_precision() or other.is_zero_to_precision():
            return LaurentSeries(self.field, v0, np.zeros(end - v0, dtype=np.int16))
        prod = poly_mul_arrays(self.coeffs, other.coeffs, self.field)
        out = prod[: end - v0]
        if len(out) < end - v0:
            out = np.concatenate(
                [out, np.zeros(end - v0 - len(out), dtype=np.int16)])
        return LaurentSeries(self.field, v0, out)

    def scale(self, s: int) -> "LaurentSeries":
        return LaurentSeries(self.field, self.v0,
                             self.field.vscale(s, self.coeffs).astype(np.int16))

    def truncate(self, N: int) -> "LaurentSeries":
        """Restrict to precision N relative to v0' = valuation floor."""
        end = self.v0 + N + 1
        if end > self.prec_end:
            raise ValueError("cannot truncate beyond known precision")
        return LaurentSeries(self.field, self.v0, self.coeffs[: end - self.v0])

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        end = min(self.prec_end, other.prec_end)
        v0 = min(self.v0, other.v0)
        for k in range(v0, end):
            if self.coeff(k) != other.coeff(k):
                return False
        return True

    def __str__(self):
        if self.is_zero_to_precision():
            return f"O(u^{self.prec_end})"
        terms = " + ".join(
            f"{int(c)}*u^{k}" if k else str(int(c))
            for k, c in ((self.v0 + i, c) for i, c in enumerate(self.coeffs))
            if c
        )
        return f"{terms} + O(u^{self.prec_end})"

    def __repr__(self):
        return f"LaurentSeries({self})"


def laurent_expand(f: RationalFunc, N: int) -> LaurentSeries:
    """Expand a rational function in theta at the infinite place.

    For nonzero f the leading exponent is v0 = deg den - deg num and the
    N+1 returned coefficients are exact.  Zero expands to the zero series.
    """
    if N < 0:
        raise ValueError("precision must be >= 0")
    field = f.field
    if f.var != THETA:
        raise ValueError("Laurent expansion is at the theta place")
    if f.is_zero():
        return LaurentSeries(field, 0, np.zeros(N + 1, dtype=np.int16))
    num, den = f.num, f.den
    v0 = den.degree - num.degree
    # reverse coefficients: f = u^v0 * (ntilde(u) / dtilde(u)) with dtilde(0) != 0
    nt = num.c[::-1].astype(np.int16)
    dt = den.c[::-1].astype(np.int16)
    out = np.zeros(N + 1, dtype=np.int16)
    inv0 = field.inv(int(dt[0]))
    for k in range(N + 1):
        acc = int(nt[k]) if k < len(nt) else 0
        jmax = min(k, len(dt) - 1)
        for j in range(1, jmax + 1):
            acc = field.sub(acc, field.mul(int(dt[j]), int(out[k - j])))
        out[k] = field.mul(acc, inv0)
    return LaurentSeries(field, v0, out)


# ---------------------------------------------------------------------------
# the standard A-side constants
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def theta_bracket(n: int, q: int) -> Poly:
    """The bracket polynomial theta^(q^n) - theta (n >= 1)."""
    if n < 1:
        raise ValueError("bracket index must be >= 1")
    field = GF(q)
    c = np.zeros(q**n + 1, dtype=np.int16)
    c[q**n] = 1
    c[1] = field.neg(1)
    return Poly(field, THETA, c, _trusted=True)


@functools.lru_cache(maxsize=None)
def carlitz_l(d: int, q: int) -> Poly:
    """L_0 = 1 and L_d = (theta - theta^q)...(theta - theta^(q^d))."""
    if d < 0:
        raise ValueError("depth must be >= 0")
    field = GF(q)
    if d == 0:
        return Poly.one(field, THETA)
    prev = carlitz_l(d - 1, q)
    c = np.zeros(q**d + 1, dtype=np.int16)
    c[1] = 1
    c[q**d] = field.neg(1)
    return prev * Poly(field, THETA, c, _trusted=True)


def carlitz_l_degree(d: int, q: int) -> int:
    """deg L_d = q + q^2 + ... + q^d without building the polynomial."""
    return (q**(d + 1) - q) // (q - 1)
