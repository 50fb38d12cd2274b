"""Truncated q-expansions on a fractional exponent grid, and eta products.

A PuiseuxSeries stores finitely many exact rational coefficients at
exponents in (1/grid) * Z together with a truncation bound: coefficients at
exponents strictly above the bound are unknown, not zero.  All arithmetic
propagates the tightest truncation the inputs justify, so a wrong tail can
never appear silently.  Mixed grids refine automatically to the lcm.

The module also provides the two standard products consumed downstream:
the generating function of Hilbert-scheme Euler numbers for a surface with
Euler number e (the e-th power of the inverse Euler product) and the
twenty-fourth power of the Dedekind eta function.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

__all__ = [
    "PuiseuxSeries", "series_add", "series_mul", "series_shift",
    "series_invert", "goettsche_series", "eta24", "hilb_euler",
]


def _lcm(a: int, b: int) -> int:
    return a * b // _int_gcd(a, b)


class PuiseuxSeries:
    """Finitely supported q-expansion with tracked truncation.

    coeffs maps exponent numerators (exponent = numerator/grid) to nonzero
    Fraction values; trunc is the largest numerator whose coefficient is
    claimed to be known.  Keys above trunc are meaningless and are never
    stored; absent keys at or below trunc mean coefficient zero.
    """

    __slots__ = ("grid", "coeffs", "trunc")

    def __init__(self, grid: int, coeffs, trunc: int):
        if not isinstance(grid, int) or grid < 1:
            raise ValueError("grid must be a positive integer")
        if not isinstance(trunc, int):
            raise ValueError("truncation must be an integer numerator")
        clean = {}
        for k, v in dict(coeffs).items():
            if not isinstance(k, int):
                raise ValueError("exponent numerators must be integers")
            v = v if isinstance(v, Fraction) else Fraction(v)
            if v:
                if k > trunc:
                    raise ValueError(
                        "coefficient at %s/%s lies above the truncation %s/%s"
                        % (k, grid, trunc, grid))
                clean[k] = v
        self.grid = grid
        self.coeffs = clean
        self.trunc = trunc

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, trunc_exponent, grid: int = 1):
        n = _on_grid(trunc_exponent, grid, "truncation")
        return cls(grid, {}, n)

    @classmethod
    def monomial(cls, coeff, exponent, trunc_exponent, grid: int = 1):
        e = _on_grid(exponent, grid, "exponent")
        n = _on_grid(trunc_exponent, grid, "truncation")
        return cls(grid, {e: Fraction(coeff)}, n)

    # -- bookkeeping ----------------------------------------------------

    @property
    def bound(self) -> Fraction:
        """Largest exponent whose coefficient is known."""
        return Fraction(self.trunc, self.grid)

    def min_exponent(self):
        if not self.coeffs:
            return None
        return Fraction(min(self.coeffs), self.grid)

    def with_grid(self, grid: int):
        """Refine to a finer grid; the new grid must be a multiple."""
        if grid == self.grid:
            return self
        if grid % self.grid:
            raise ValueError("grid %d does not refine %d" % (grid, self.grid))
        f = grid // self.grid
        return PuiseuxSeries(
            grid, {k * f: v for k, v in self.coeffs.items()}, self.trunc * f)

    def coefficient(self, exponent) -> Fraction:
        """Coefficient at an exact exponent; ValueError above the truncation."""
        e = Fraction(exponent)
        if e > self.bound:
            raise ValueError(
                "coefficient at q^%s is beyond the truncation q^%s" % (e, self.bound))
        n = e * self.grid
        if n.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(int(n), Fraction(0))

    def truncate(self, exponent):
        """Forget all coefficients above the given exponent."""
        e = Fraction(exponent)
        n = (e * self.grid).__floor__()
        n = min(n, self.trunc)
        return PuiseuxSeries(
            self.grid, {k: v for k, v in self.coeffs.items() if k <= n}, n)

    # -- ring operations ------------------------------------------------

    def _pair(self, other):
        grid = _lcm(self.grid, other.grid)
        return self.with_grid(grid), other.with_grid(grid)

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = self._pair(other)
        return a.trunc == b.trunc and a.coeffs == b.coeffs

    def __hash__(self):
        g = 0
        for k in self.coeffs:
            g = _int_gcd(g, k)
        g = _int_gcd(g, self.trunc) or 1
        # hash is grid-refinement invariant
        return hash((self.grid // _int_gcd(self.grid, g),
                     frozenset((Fraction(k, self.grid), v) for k, v in self.coeffs.items()),
                     Fraction(self.trunc, self.grid)))

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return PuiseuxSeries(
            self.grid, {k: -v for k, v in self.coeffs.items()}, self.trunc)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxSeries(self.grid, {0: Fraction(other)}, self.trunc)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = self._pair(other)
        trunc = min(a.trunc, b.trunc)
        out = {k: v for k, v in a.coeffs.items() if k <= trunc}
        for k, v in b.coeffs.items():
            if k <= trunc:
                s = out.get(k, Fraction(0)) + v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return PuiseuxSeries(a.grid, out, trunc)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, PuiseuxSeries) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return PuiseuxSeries(self.grid, {}, self.trunc)
        return PuiseuxSeries(
            self.grid, {k: v * c for k, v in self.coeffs.items()}, self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = self._pair(other)
        # the product coefficient at k is complete only while every split
        # k = i + j keeps i and j inside the known ranges
        la = min(a.coeffs) if a.coeffs else a.trunc
        lb = min(b.coeffs) if b.coeffs else b.trunc
        trunc = min(a.trunc + lb, b.trunc + la)
        out = {}
        for i, ca in a.coeffs.items():
            for j, cb in b.coeffs.items():
                k = i + j
                if k <= trunc:
                    s = out.get(k, Fraction(0)) + ca * cb
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return PuiseuxSeries(a.grid, out, trunc)

    __rmul__ = __mul__

    def shift(self, exponent):
        """Multiply by q^exponent, refining the grid as needed."""
        e = Fraction(exponent)
        grid = _lcm(self.grid, e.denominator)
        s = self.with_grid(grid)
        step = int(e * grid)
        return PuiseuxSeries(
            grid, {k + step: v for k, v in s.coeffs.items()}, s.trunc + step)

    def invert(self):
        """Multiplicative inverse, handling a leading monomial by shifting.

        With leading term c*q^(m/grid) and knowledge up to trunc, the
        inverse is known up to trunc - 2m: the unit part is invertible to
        the same relative order, and the shift moves the window by -m.
        """
        if not self.coeffs:
            raise ZeroDivisionError("cannot invert a series with no nonzero term")
        m = min(self.coeffs)
        c0 = self.coeffs[m]
        horizon = self.trunc - m
        u = {k - m: v for k, v in self.coeffs.items()}
        inv = {0: 1 / c0}
        for k in range(1, horizon + 1):
            acc = Fraction(0)
            for j, uj in u.items():
                if 0 < j <= k:
                    w = inv.get(k - j)
                    if w:
                        acc += uj * w
            if acc:
                inv[k] = -acc / c0
        out = {k - m: v for k, v in inv.items() if v}
        return PuiseuxSeries(self.grid, out, horizon - m)

    # -- presentation ---------------------------------------------------

    def terms(self):
        """Sorted list of (exponent, coefficient) Fraction pairs."""
        return [(Fraction(k, self.grid), v) for k, v in sorted(self.coeffs.items())]

    def to_pairs(self):
        """Serialization: (exponent, coefficient) as exact fraction strings."""
        return [(str(e), str(c)) for e, c in self.terms()]

    def __str__(self):
        bits = []
        for e, c in self.terms():
            if e == 0:
                mon = str(abs(c))
            else:
                q = "q" if e == 1 else "q^(%s)" % e
                mon = q if abs(c) == 1 else "%s*%s" % (abs(c), q)
            if not bits:
                bits.append(("-" if c < 0 else "") + mon)
            else:
                bits.append(("- " if c < 0 else "+ ") + mon)
        body = " ".join(bits) if bits else "0"
        return "%s + O(q^(%s))" % (body, Fraction(self.trunc + 1, self.grid))

    def __repr__(self):
        return "PuiseuxSeries(grid=%d, %r, trunc=%d)" % (
            self.grid, self.coeffs, self.trunc)


def _on_grid(exponent, grid: int, what: str) -> int:
    e = Fraction(exponent)
    n = e * grid
    if n.denominator != 1:
        raise ValueError("%s %s does not lie on the 1/%d grid" % (what, e, grid))
    return int(n)


def series_add(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    return a + b


def series_mul(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    return a * b


def series_shift(a: PuiseuxSeries, exponent) -> PuiseuxSeries:
    return a.shift(exponent)


def series_invert(a: PuiseuxSeries) -> PuiseuxSeries:
    return a.invert()


# -- Euler products -----------------------------------------------------

def _euler_coeffs(terms: int):
    # prod_{n>=1} (1-q^n), truncated; integer list, index = exponent
    co = [0] * (terms + 1)
    co[0] = 1
    for n in range(1, terms + 1):
        for i in range(terms - n, -1, -1):
            if co[i]:
                co[i + n] -= co[i]
    return co


def _list_mul(a, b, terms: int):
    out = [0] * (terms + 1)
    for i, x in enumerate(a):
        if x:
            top = terms - i
            for j, y in enumerate(b[: top + 1]):
                if y:
                    out[i + j] += x * y
    return out


def _list_inv(a, terms: int):
    # inverse of a power series with a[0] == +-1 (stays integral)
    c0 = a[0]
    out = [0] * (terms + 1)
    out[0] = c0
    for k in range(1, terms + 1):
        acc = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                acc += a[j] * out[k - j]
        out[k] = -acc * c0
    return out


_euler_pow_cache: dict = {}


def _euler_pow(k: int, terms: int):
    """Coefficient list of prod_{n>=1} (1-q^n)^k to order q^terms."""
    cached = _euler_pow_cache.get(k)
    if cached is not None and len(cached) > terms:
        return cached[: terms + 1]
    want = max(terms, 2 * len(cached) if cached else 32)
    out = [0] * (want + 1)
    out[0] = 1
    if k:
        base = _euler_coeffs(want)
        acc = out
        for _ in range(abs(k)):
            acc = _list_mul(acc, base, want)
        out = _list_inv(acc, want) if k < 0 else acc
    _euler_pow_cache[k] = out
    return out[: terms + 1]


def goettsche_series(e: int, terms: int) -> PuiseuxSeries:
    """Generating function of Hilbert-scheme Euler numbers, to order q^terms.

    The coefficient of q^m is the Euler number of the Hilbert scheme of m
    points on a surface with topological Euler number e, i.e. the expansion
    of prod_{n>=1} (1-q^n)^(-e).  e = 24 is the K3 case, e = 12 the
    Enriques case, e = 0 the trivial one.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    co = _euler_pow(-e, terms)
    return PuiseuxSeries(1, {m: Fraction(c) for m, c in enumerate(co) if c}, terms)


def eta24(terms: int) -> PuiseuxSeries:
    """q * prod_{n>=1} (1-q^n)^24, the 24th power of the Dedekind eta
    function, to order q^terms."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    co = _euler_pow(24, terms - 1)
    return PuiseuxSeries(
        1, {m + 1: Fraction(c) for m, c in enumerate(co) if c}, terms)


def hilb_euler(m: int, e: int = 24) -> Fraction:
    """Euler number of the Hilbert scheme of m points; 0 for m < 0.

    The negative-index convention is what makes the sheaf-count sums over
    all integers h finite: indices below zero correspond to empty moduli.
    """
    if m < 0:
        return Fraction(0)
    return Fraction(_euler_pow(-e, m)[m])
