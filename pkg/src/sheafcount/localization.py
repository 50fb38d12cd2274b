"""Torus fixed points on Hilbert schemes of plane points and their weights.

The two-dimensional torus acting on the projective plane has three fixed
points; a torus-fixed length-n subscheme splits into monomial ideals at
those points, so the fixed locus of Hilb^n of the plane is indexed by
triples of partitions with total size n.  Each fixed point carries two
characters: the tangent space of the Hilbert scheme and the fiber of the
obstruction bundle whose top Chern class is being integrated.  Both are
recorded as multisets of integer exponent pairs (i, j), one summand
t1^i t2^j per pair.

Weight recipe for a box b with arm a and leg l (see partitions for the
diagram convention):

  tangent, box in p1:  (l+1, -a)    and (-l, a+1)
  tangent, box in p2:  (a-l-1, -a)  and (l-a-1, a+1)
  tangent, box in p3:  (-a, a-l-1)  and (a+1, l-a-1)

The obstruction character is identical except that every p2 pair is shifted
by t1^-1 and every p3 pair by t2^-1.  The p1 blocks of the two characters
coincide, so their weight factors cancel in the fixed-point contribution;
fixed_point_contribution never materializes them, while the slower
character-quotient route in contribution_from_characters cancels them as
multisets and serves as an independent check.

The localization sum over all triples of total size n evaluates the
integral of the top Chern class of the rank-2n obstruction bundle; by
theory it is a constant (the equivariant parameters drop out), which the
symbolic mode verifies literally and the sampled mode verifies at random
rational points.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

from .errors import ConsistencyError, PoleError
from .partitions import arm, boxes, enumerate_triples, leg
from .ratfunc import ONE, Poly, RationalFunction

# default seed for sampled mode; any fixed value works, reproducibility is
# the only requirement
DEFAULT_SEED = 1729

_BOUND = 10**6


def _weights(triple, shift):
    p1, p2, p3 = triple
    out = []
    for b in boxes(p1):
        a, l = arm(p1, b), leg(p1, b)
        out.append((l + 1, -a))
        out.append((-l, a + 1))
    for b in boxes(p2):
        a, l = arm(p2, b), leg(p2, b)
        out.append((a - l - 1 - shift, -a))
        out.append((l - a - 1 - shift, a + 1))
    for b in boxes(p3):
        a, l = arm(p3, b), leg(p3, b)
        out.append((-a, a - l - 1 - shift))
        out.append((a + 1, l - a - 1 - shift))
    return tuple(sorted(out))


def tangent_character(triple):
    """Tangent-space character at the fixed point, as sorted (i, j) pairs."""
    return _weights(triple, 0)


def obstruction_character(triple):
    """Obstruction-fiber character: p2 pairs shifted by t1^-1, p3 by t2^-1."""
    return _weights(triple, 1)


def fixed_point_contribution(triple) -> RationalFunction:
    """Contribution of one fixed point to the localization sum.

    Direct closed product over the boxes of p2 and p3, specialized at
    s1 = t, s2 = 1:

      prod over p2 of ((a-l-2)t - a)((l-a-2)t + a+1)
                    / ((a-l-1)t - a)((l-a-1)t + a+1)

    times the same product over p3 with the roles of s1 and s2 swapped.
    Every denominator factor is a nonzero polynomial: a-l-1 = 0 with a = 0
    would need l = -1, and the other factor has constant term a+1 >= 1.
    """
    _, p2, p3 = triple
    num = ONE
    den = ONE
    for b in boxes(p2):
        a, l = arm(p2, b), leg(p2, b)
        num = num * Poly((-a, a - l - 2)) * Poly((a + 1, l - a - 2))
        den = den * Poly((-a, a - l - 1)) * Poly((a + 1, l - a - 1))
    for b in boxes(p3):
        a, l = arm(p3, b), leg(p3, b)
        num = num * Poly((a - l - 2, -a)) * Poly((l - a - 2, a + 1))
        den = den * Poly((a - l - 1, -a)) * Poly((l - a - 1, a + 1))
    return RationalFunction(num, den)


def contribution_from_characters(triple) -> RationalFunction:
    """The same contribution computed the slow way, as a weight quotient.

    A pair (i, j) becomes the linear form i*t + j; the contribution is the
    product of the obstruction forms divided by the product of the tangent
    forms, after cancelling pairs common to both multisets (in particular
    the whole p1 block).  Shares no algebra with fixed_point_contribution,
    which is the point: the two routes check each other.
    """
    obs = Counter(obstruction_character(triple))
    tan = Counter(tangent_character(triple))
    common = obs & tan
    obs -= common
    tan -= common
    num = ONE
    den = ONE
    for (i, j), m in sorted(obs.items()):
        num = num * Poly((j, i)) ** m
    for (i, j), m in sorted(tan.items()):
        den = den * Poly((j, i)) ** m
    return RationalFunction(num, den)


def _contribution_at(triple, t0: Fraction) -> Fraction:
    # fixed_point_contribution factor by factor, as numbers; avoids building
    # polynomials in the inner loop of sampled mode
    _, p2, p3 = triple
    num = Fraction(1)
    den = Fraction(1)
    for b in boxes(p2):
        a, l = arm(p2, b), leg(p2, b)
        num *= ((a - l - 2) * t0 - a) * ((l - a - 2) * t0 + a + 1)
        den *= ((a - l - 1) * t0 - a) * ((l - a - 1) * t0 + a + 1)
    for b in boxes(p3):
        a, l = arm(p3, b), leg(p3, b)
        num *= ((a - l - 2) - a * t0) * ((l - a - 2) + (a + 1) * t0)
        den *= ((a - l - 1) - a * t0) * ((l - a - 1) + (a + 1) * t0)
    if not den:
        raise PoleError("sample point t = %s hits a pole" % t0)
    return num / den


def _chunks(seq, k):
    # round-robin split; any deterministic partition of the fixed-order
    # list gives the same exact sum
    return [seq[i::k] for i in range(k)]


def hilb_chern_integral(n: int, mode: str = "symbolic", *, seed=None,
                        samples: int = 3, workers: int = 1) -> Fraction:
    """Integral of the top Chern class over Hilb^n of the plane.

    symbolic mode sums the contributions as rational functions and reads
    off the constant; a non-constant sum would mean a bug and raises
    ConsistencyError.  sampled mode evaluates the sum at `samples` distinct
    random rational points with numerators and denominators bounded by
    10**6, resampling on the rare pole hit, and requires exact agreement.
    The sum may be partitioned across `workers` chunks; exact arithmetic
    makes the result partition independent.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    triples = enumerate_triples(n)
    chunks = _chunks(triples, workers)
    if mode == "symbolic":
        total = RationalFunction(0)
        for chunk in chunks:
            part = RationalFunction(0)
            for t in chunk:
                part = part + fixed_point_contribution(t)
            total = total + part
        try:
            return total.as_constant()
        except ValueError:
            raise ConsistencyError(
                "localization sum for n=%d is not constant: %s" % (n, total)
            ) from None
    if mode == "sampled":
        if samples < 3:
            raise ValueError("sampled mode needs at least 3 points")
        rng = random.Random(DEFAULT_SEED if seed is None else seed)
        seen = set()
        values = []
        points = []
        while len(values) < samples:
            t0 = Fraction(rng.randint(-_BOUND, _BOUND), rng.randint(1, _BOUND))
            if t0 in seen:
                continue
            seen.add(t0)
            try:
                total = Fraction(0)
                for chunk in chunks:
                    part = Fraction(0)
                    for t in chunk:
                        part += _contribution_at(t, t0)
                    total += part
            except PoleError:
                continue
            values.append(total)
            points.append(t0)
        if any(v != values[0] for v in values):
            raise ConsistencyError(
                "sampled localization values disagree for n=%d: %s"
                % (n, list(zip(points, values)))
            )
        return values[0]
    raise ValueError("mode must be 'symbolic' or 'sampled', got %r" % (mode,))


def p3_point_count(s: int, d: int) -> int:
    """Expected number of surface points carried by a curve configuration.

    A degree-s surface and a degree-d curve in projective 3-space meet the
    counting problem through n = s(s+3)/2 - d + 1 free points; a negative
    value has no moduli interpretation and is rejected.
    """
    n = s * (s + 3) // 2 - d + 1
    if n < 0:
        raise ValueError("no configuration: s=%d, d=%d give n=%d < 0" % (s, d, n))
    return n


def dt_p3(s: int, d: int, mode: str = "symbolic", **kwargs) -> Fraction:
    """Sheaf count for projective 3-space with one point insertion."""
    return hilb_chern_integral(p3_point_count(s, d), mode, **kwargs)
