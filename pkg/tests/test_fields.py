"""Field, polynomial, rational function and Laurent series tests."""

import random

import pytest

from ffmzv.fields import (
    GF,
    THETA,
    LaurentSeries,
    Poly,
    RationalFunc,
    carlitz_l,
    carlitz_l_degree,
    laurent_expand,
    parse_poly,
    parse_ratfunc,
    theta_bracket,
)

ALL_Q = [2, 3, 4, 5, 7, 8, 9, 16, 25]


# ---------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------

@pytest.mark.parametrize("q", ALL_Q)
def test_field_axioms_exhaustive(q):
    f = GF(q)
    els = range(q)
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.mul(a, 0) == 0
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a in els:
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = rng.randrange(q), rng.randrange(q), rng.randrange(q)
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)


@pytest.mark.parametrize("q", ALL_Q)
def test_frobenius_is_identity(q):
    f = GF(q)
    for a in range(q):
        assert f.power(a, q) == a


def test_char_2_addition():
    assert GF(2).add(1, 1) == 0


def test_gf4_generator_square():
    # with modulus g^2 + g + 1 the generator satisfies g*g = g + 1
    f = GF(4)
    g = 2  # encoding of the generator
    assert f.mul(g, g) == f.add(g, 1)


def test_gf5_inverse():
    assert GF(5).inv(3) == 2


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GF(3).inv(0)


def test_bad_q_rejected():
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        GF(1)


# ---------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------

def rand_poly(rng, q, var=THETA, maxdeg=12):
    f = GF(q)
    deg = rng.randrange(-1, maxdeg + 1)
    if deg < 0:
        return Poly.zero(f, var)
    coeffs = [rng.randrange(q) for _ in range(deg)] + [rng.randrange(1, q)]
    return Poly(f, var, coeffs)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_poly_ring_axioms_random(q):
    rng = random.Random(q * 31)
    for _ in range(60):
        a = rand_poly(rng, q)
        b = rand_poly(rng, q)
        c = rand_poly(rng, q)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        if not a.is_zero() and not b.is_zero():
            assert (a * b).degree == a.degree + b.degree


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_poly_divmod_random(q):
    rng = random.Random(q * 17)
    for _ in range(80):
        a = rand_poly(rng, q, maxdeg=16)
        b = rand_poly(rng, q, maxdeg=7)
        if b.is_zero():
            continue
        quo, rem = a.divmod(b)
        assert quo * b + rem == a
        assert rem.degree < b.degree


def test_poly_zero_is_canonical():
    f = GF(3)
    assert Poly(f, THETA, [0, 0, 0]) == Poly.zero(f, THETA)
    assert Poly(f, THETA, [1, 2]) - Poly(f, THETA, [1, 2]) == Poly.zero(f, THETA)


def test_var_mismatch_is_error():
    f = GF(2)
    with pytest.raises(ValueError):
        Poly.gen(f, "theta") * Poly.gen(f, "t")


@pytest.mark.parametrize("q", [2, 3, 4])
def test_poly_gcd_random(q):
    rng = random.Random(q + 5)
    for _ in range(40):
        a = rand_poly(rng, q, maxdeg=8)
        b = rand_poly(rng, q, maxdeg=8)
        g = a.gcd(b)
        if a.is_zero() and b.is_zero():
            assert g.is_zero()
            continue
        assert (a % g).is_zero() if not a.is_zero() else True
        assert (b % g).is_zero() if not b.is_zero() else True
        assert g.lead == 1


# ---------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------

def test_ratfunc_add_char2():
    # 1/theta + 1/(theta+1) = 1/(theta^2+theta)
    f = GF(2)
    th = Poly.gen(f, THETA)
    one = Poly.one(f, THETA)
    r = RationalFunc(one, th) + RationalFunc(one, th + one)
    assert r == RationalFunc(one, th * th + th)


def test_ratfunc_additive_identity():
    rng = random.Random(11)
    for q in (2, 3, 5):
        for _ in range(10):
            num = rand_poly(rng, q)
            den = rand_poly(rng, q, maxdeg=5)
            if den.is_zero():
                continue
            r = RationalFunc(num, den)
            assert r + RationalFunc.zero(GF(q), THETA) == r


def test_ratfunc_normalizes_gcd():
    # (theta^2-1)/(theta-1) -> theta+1 over F_3
    f = GF(3)
    th = Poly.gen(f, THETA)
    one = Poly.one(f, THETA)
    r = RationalFunc(th * th - one, th - one)
    assert r.is_poly()
    assert r.num == th + one


@pytest.mark.parametrize("q", [2, 3, 4])
def test_ratfunc_structural_equality_is_semantic(q):
    rng = random.Random(q * 3 + 1)
    for _ in range(40):
        a, b = rand_poly(rng, q, maxdeg=6), rand_poly(rng, q, maxdeg=6)
        c, d = rand_poly(rng, q, maxdeg=6), rand_poly(rng, q, maxdeg=6)
        if b.is_zero() or d.is_zero():
            continue
        r1 = RationalFunc(a, b)
        r2 = RationalFunc(c, d)
        # cross-multiplication equality must match structural equality
        assert (r1 == r2) == (a * d == c * b)


def test_ratfunc_div_by_zero():
    f = GF(2)
    with pytest.raises(ZeroDivisionError):
        RationalFunc.one(f, THETA) / RationalFunc.zero(f, THETA)


def test_parser_round_trip():
    rng = random.Random(23)
    for q in (2, 3, 5):
        for _ in range(30):
            num = rand_poly(rng, q, maxdeg=6)
            den = rand_poly(rng, q, maxdeg=4)
            if den.is_zero():
                continue
            r = RationalFunc(num, den)
            assert parse_ratfunc(str(r), q, THETA) == r


def test_parser_examples():
    r = parse_ratfunc("(t^2+1)/(t+1)", 3, "t")
    assert str(r.den) == "t + 1"
    p = parse_poly("theta^2+theta", 2, THETA)
    assert p == carlitz_l(1, 2)


# ---------------------------------------------------------------------
# Laurent expansion
# ---------------------------------------------------------------------

def test_laurent_inverse_theta():
    f = GF(2)
    th = Poly.gen(f, THETA)
    s = laurent_expand(RationalFunc(Poly.one(f, THETA), th), 5)
    assert s.v0 == 1
    assert [s.coeff(k) for k in range(1, 7)] == [1, 0, 0, 0, 0, 0]


def test_laurent_geometric_char2():
    # 1/(theta^2+theta) = u^2 + u^3 + u^4 + ...
    f = GF(2)
    s = laurent_expand(RationalFunc(Poly.one(f, THETA), carlitz_l(1, 2)), 6)
    assert s.v0 == 2
    assert all(s.coeff(k) == 1 for k in range(2, 8))


def test_laurent_polynomial_case():
    f = GF(3)
    th = Poly.gen(f, THETA)
    s = laurent_expand(RationalFunc.from_poly(th + Poly.one(f, THETA)), 4)
    assert s.v0 == -1
    assert s.coeff(-1) == 1 and s.coeff(0) == 1
    assert all(s.coeff(k) == 0 for k in range(1, 4))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_laurent_multiplicativity(q):
    rng = random.Random(q * 7)
    N = 12
    for _ in range(25):
        a = rand_poly(rng, q, maxdeg=5)
        b = rand_poly(rng, q, maxdeg=4)
        c = rand_poly(rng, q, maxdeg=4)
        d = rand_poly(rng, q, maxdeg=5)
        if a.is_zero() or b.is_zero() or c.is_zero() or d.is_zero():
            continue
        f1 = RationalFunc(a, b)
        f2 = RationalFunc(c, d)
        lhs = laurent_expand(f1 * f2, N)
        rhs = laurent_expand(f1, N) * laurent_expand(f2, N)
        assert lhs == rhs


@pytest.mark.parametrize("q", [2, 3, 4])
def test_laurent_times_denominator_recovers_numerator(q):
    rng = random.Random(q * 13)
    N = 20
    for _ in range(20):
        num = rand_poly(rng, q, maxdeg=5)
        den = rand_poly(rng, q, maxdeg=6)
        if den.is_zero() or num.is_zero():
            continue
        f = RationalFunc(num, den)
        s = laurent_expand(f, N) * laurent_expand(RationalFunc.from_poly(f.den), N)
        expect = laurent_expand(RationalFunc.from_poly(f.num), N)
        assert s == expect


def test_zero_expands_to_zero_series():
    s = laurent_expand(RationalFunc.zero(GF(3), THETA), 7)
    assert s.is_zero_to_precision()


# ---------------------------------------------------------------------
# Carlitz L polynomials and brackets
# ---------------------------------------------------------------------

def test_carlitz_l_base():
    assert carlitz_l(0, 2).is_one()
    assert carlitz_l(0, 5).is_one()


def test_carlitz_l_q2_d1():
    assert str(carlitz_l(1, 2)) == "theta^2 + theta"


def test_carlitz_l_q3_d1():
    # theta - theta^3 = 2*theta^3 + theta over F_3
    p = carlitz_l(1, 3)
    assert p.coeff(3) == 2 and p.coeff(1) == 1 and p.degree == 3


@pytest.mark.parametrize("q,d", [(2, 4), (3, 3), (5, 2)])
def test_carlitz_l_degree_formula(q, d):
    assert carlitz_l(d, q).degree == carlitz_l_degree(d, q)


def test_bracket_relation():
    # L_d = (-1)^d * product of brackets
    for q in (2, 3):
        for d in (1, 2, 3):
            prod = Poly.one(GF(q), THETA)
            for n in range(1, d + 1):
                prod = prod * theta_bracket(n, q)
            sign = 1 if (d % 2 == 0 or q % 2 == 0) else -1
            expect = prod if sign == 1 else -prod
            assert carlitz_l(d, q) == expect
