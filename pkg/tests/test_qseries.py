"""Truncated fractional-grid q-expansions and the Euler products.

Product coefficients are rechecked against a term-by-term binomial-series
expansion written here in the test, which shares no code with the module's
repeated-convolution route.  Truncation bookkeeping gets its own tests
because a silently wrong tail is the failure mode that matters."""

import math
import random
from fractions import Fraction

import pytest

from sheafcount.qseries import (
    PuiseuxSeries,
    eta24,
    goettsche_series,
    hilb_euler,
    series_invert,
    series_mul,
    series_shift,
)

GOETTSCHE24 = [1, 24, 324, 3200, 25650, 176256, 1073720, 5930496, 30178575]
ETA24 = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643]


def binomial_euler_pow(e, top):
    # prod_k (1-q^k)^e by multiplying one binomial series at a time;
    # works for either sign of e
    co = [Fraction(0)] * (top + 1)
    co[0] = Fraction(1)
    for k in range(1, top + 1):
        new = [Fraction(0)] * (top + 1)
        for i, c in enumerate(co):
            if not c:
                continue
            j = 0
            while i + k * j <= top:
                if e >= 0:
                    term = (-1) ** j * math.comb(e, j) if j <= e else 0
                else:
                    term = math.comb(-e + j - 1, j)
                if term:
                    new[i + k * j] += c * term
                j += 1
        co = new
    return co


def test_goettsche_frozen_prefix():
    g = goettsche_series(24, 8)
    for m, c in enumerate(GOETTSCHE24):
        assert g.coefficient(m) == c


def test_goettsche_enriques_prefix():
    g = goettsche_series(12, 4)
    assert [g.coefficient(m) for m in range(5)] == [1, 12, 90, 520, 2535]


def test_goettsche_against_binomial_expansion():
    for e in (1, 2, 12, 24):
        want = binomial_euler_pow(-e, 12)
        g = goettsche_series(e, 12)
        assert [g.coefficient(m) for m in range(13)] == want


def test_eta24_frozen_prefix():
    e = eta24(9)
    assert e.coefficient(0) == 0
    for m, c in enumerate(ETA24):
        assert e.coefficient(m + 1) == c


def test_eta24_against_binomial_expansion():
    want = binomial_euler_pow(24, 10)
    e = eta24(11)
    assert [e.coefficient(m + 1) for m in range(11)] == want


def test_eta_goettsche_inverse_to_30():
    prod = eta24(31) * goettsche_series(24, 30).shift(-1)
    assert prod.trunc == 30 and prod.grid == 1
    assert prod == PuiseuxSeries(1, {0: 1}, 30)


def test_goettsche_additive_in_euler_number():
    for e1 in (-24, 0, 12, 24):
        for e2 in (-24, 0, 12, 24):
            lhs = goettsche_series(e1, 20) * goettsche_series(e2, 20)
            assert lhs == goettsche_series(e1 + e2, 20)


def test_goettsche_nonnegative_integer_coefficients():
    for e in (1, 12, 24):
        g = goettsche_series(e, 30)
        for m in range(31):
            c = g.coefficient(m)
            assert c.denominator == 1 and c >= 0


def test_hilb_euler_values():
    g = goettsche_series(24, 20)
    for m in range(21):
        assert hilb_euler(m) == g.coefficient(m)
    assert hilb_euler(-1) == 0
    assert hilb_euler(-5, 12) == 0
    assert hilb_euler(2, 12) == 90
    assert hilb_euler(3, 0) == 0
    assert hilb_euler(0, 0) == 1


def test_terms_validation():
    with pytest.raises(ValueError):
        goettsche_series(24, 0)
    with pytest.raises(ValueError):
        eta24(0)


# -- series mechanics ---------------------------------------------------

def test_constructor_normalizes():
    s = PuiseuxSeries(2, {1: Fraction(1, 2), 3: 0}, 6)
    assert s.coeffs == {1: Fraction(1, 2)}
    with pytest.raises(ValueError):
        PuiseuxSeries(2, {7: 1}, 6)      # above truncation
    with pytest.raises(ValueError):
        PuiseuxSeries(0, {}, 1)


def test_equality_is_grid_invariant():
    a = PuiseuxSeries(1, {1: 5}, 5)
    b = PuiseuxSeries(2, {2: 5}, 10)
    assert a == b
    assert hash(a) == hash(b)
    assert a != PuiseuxSeries(1, {1: 5}, 6)


def test_coefficient_lookup_rules():
    s = PuiseuxSeries(8, {-7: Fraction(3, 4), 1: 18}, 17)
    assert s.coefficient(Fraction(-7, 8)) == Fraction(3, 4)
    assert s.coefficient(Fraction(1, 2)) == 0       # on a coarser point, zero
    assert s.coefficient(Fraction(1, 3)) == 0       # off-grid but below bound
    with pytest.raises(ValueError):
        s.coefficient(3)                            # beyond the bound


def test_addition_mixed_grids():
    a = PuiseuxSeries(2, {1: 1}, 8)       # q^(1/2), known to q^4
    b = PuiseuxSeries(3, {3: 2}, 9)       # 2q, known to q^3
    s = a + b
    assert s.grid == 6 and s.bound == 3
    assert s.coefficient(Fraction(1, 2)) == 1
    assert s.coefficient(1) == 2


def test_scalar_addition_keeps_truncation():
    s = PuiseuxSeries(8, {-7: Fraction(1, 4)}, 17)
    t = s + 3
    assert t.trunc == 17 and t.grid == 8
    assert t.coefficient(0) == 3
    assert (5 - s).coefficient(Fraction(-7, 8)) == Fraction(-1, 4)


def test_multiplication_truncation_rule():
    # bound of the product is min over factors of (own bound + other's
    # lowest exponent)
    a = PuiseuxSeries(1, {2: 1}, 10)
    b = PuiseuxSeries(1, {-1: 1, 0: 4}, 3)
    p = a * b
    assert p.trunc == 5                   # min(10 + (-1), 3 + 2)
    assert p.coefficient(1) == 1 and p.coefficient(2) == 4


def test_multiplication_by_scalar():
    a = PuiseuxSeries(4, {1: Fraction(1, 3)}, 9)
    assert (3 * a).coefficient(Fraction(1, 4)) == 1
    assert (a * 0).coeffs == {}


def test_shift_refines_grid():
    s = PuiseuxSeries(1, {0: 1, 1: 2}, 4)
    t = s.shift(Fraction(9, 8))
    assert t.grid == 8
    assert t.coefficient(Fraction(9, 8)) == 1
    assert t.coefficient(Fraction(17, 8)) == 2
    assert t.bound == Fraction(4) + Fraction(9, 8)
    assert t.shift(Fraction(-9, 8)) == s


def test_invert_truncation_rule():
    # leading monomial at exponent m costs 2m of the known window
    s = PuiseuxSeries(1, {1: 1, 2: -24}, 10)
    inv = s.invert()
    assert inv.trunc == 8
    assert inv.coefficient(-1) == 1
    assert inv.coefficient(0) == 24
    with pytest.raises(ZeroDivisionError):
        PuiseuxSeries(1, {}, 5).invert()


def test_invert_roundtrip_random():
    rng = random.Random(1729)
    for _ in range(200):
        grid = rng.choice([1, 2, 4, 8])
        lo = rng.randint(-4, 3)
        support = sorted(rng.sample(range(lo, lo + 9), rng.randint(1, 5)))
        coeffs = {k: Fraction(rng.randint(1, 40), rng.randint(1, 9))
                  for k in support}
        trunc = support[-1] + rng.randint(1, 6)
        s = PuiseuxSeries(grid, coeffs, trunc)
        prod = s * s.invert()
        one = PuiseuxSeries(prod.grid, {0: 1} if prod.trunc >= 0 else {},
                            prod.trunc)
        assert prod == one


def test_ring_identities_random():
    rng = random.Random(85)
    def rand_series():
        grid = rng.choice([1, 2, 3])
        trunc = rng.randint(2, 8)
        coeffs = {rng.randint(-3, trunc): Fraction(rng.randint(-5, 5))
                  for _ in range(rng.randint(0, 4))}
        coeffs = {k: v for k, v in coeffs.items() if k <= trunc}
        return PuiseuxSeries(grid, coeffs, trunc)
    for _ in range(300):
        a, b, c = rand_series(), rand_series(), rand_series()
        assert a + b == b + a
        assert series_mul(a, b) == series_mul(b, a)
        assert (a + b) + c == a + (b + c)
        # distributivity needs a common truncation to compare on
        lhs = a * (b + c)
        rhs = a * b + a * c
        t = min(lhs.bound, rhs.bound)
        assert lhs.truncate(t) == rhs.truncate(t)


def test_truncate_floor_behavior():
    s = PuiseuxSeries(8, {-7: 1, 1: 2, 9: 3}, 17)
    t = s.truncate(Fraction(9, 8))
    assert t.trunc == 9 and t.coefficient(Fraction(9, 8)) == 3
    u = s.truncate(1)
    assert u.trunc == 8 and 9 not in u.coeffs
    assert s.truncate(100).trunc == 17   # never extends knowledge


def test_shift_helper_and_min_exponent():
    s = PuiseuxSeries(2, {-1: 7}, 4)
    assert s.min_exponent() == Fraction(-1, 2)
    assert PuiseuxSeries(2, {}, 4).min_exponent() is None
    assert series_shift(s, Fraction(1, 2)) == PuiseuxSeries(2, {0: 7}, 5)


def test_monomial_and_zero_constructors():
    m = PuiseuxSeries.monomial(Fraction(3, 2), Fraction(1, 4), 2, grid=4)
    assert m.coefficient(Fraction(1, 4)) == Fraction(3, 2)
    z = PuiseuxSeries.zero(5, grid=2)
    assert not z and z.bound == 5
    with pytest.raises(ValueError):
        PuiseuxSeries.monomial(1, Fraction(1, 3), 2, grid=4)


def test_string_form():
    s = PuiseuxSeries(8, {-7: Fraction(3, 4), 1: 18}, 17)
    text = str(s)
    assert "q^(-7/8)" in text and "O(q^(9/4))" in text
    assert str(PuiseuxSeries(1, {}, 3)) == "0 + O(q^(4))"


def test_to_pairs_exact_strings():
    s = PuiseuxSeries(8, {-7: Fraction(3, 4)}, 17)
    assert s.to_pairs() == [("-7/8", "3/4")]


def test_invert_agrees_with_series_invert():
    s = PuiseuxSeries(1, {0: 1, 1: -1}, 6)
    assert series_invert(s).coeffs == {m: Fraction(1) for m in range(7)}
