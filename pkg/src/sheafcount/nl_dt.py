"""Fiberwise sheaf counting on K3 fibrations from intersection-number tables.

A fibration over a curve with K3 surface fibers (finitely many allowed to
have one node) determines, for each pair (h, d), an intersection number
against a divisor on the base: the table entry NL[h, d].  These numbers are
inputs here, loaded from documents; computing them from geometry is a
Hodge-theoretic problem outside this package's scope.  What the package
does: validates tables against the vanishing bound h <= 1 + d^2/(2*ell),
extends them along their translation symmetry, and assembles sheaf-counting
invariants and their generating series.

Conventions that every formula below relies on:

* The table always describes the smooth side of the story: for a nodal
  fibration that is its double-cover resolution, and for a smooth fibration
  the disjoint union of two copies of itself (so honest tables of smooth
  geometries carry doubled values).  In both cases the invariant of the
  original fibration is half the tabulated-side sum, so a single uniform
  factor 1/2 covers smooth and nodal alike and the `nodal` flag is
  descriptive metadata only.

* The constant k of a FibrationSpec is the degree of the associated line
  bundle on the base of that same tabulated (resolved or doubled)
  fibration.  It enters only the d = 0 sector, through the correction term
  -k * chi(Hilb^(r^2 + 1 - r*c)) inside the halved sum.

* The translation symmetry of tables is (h, d) -> (h + d + ell/2, d + ell),
  value preserved; it requires even ell to stay integral.  On invariants it
  induces, for rank 1, the matching (d, c) -> (d + ell, c + (2d + ell)/2):
  the shift of c has to grow with d for the two generating series to line
  up, which independently follows from twisting sheaves by the
  polarization.  dt_symmetry_pair implements precisely that pairing and
  the test suite verifies the invariance it promises.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, NLValidationError
from .qseries import PuiseuxSeries, goettsche_series, hilb_euler, series_invert

__all__ = [
    "MukaiVector", "HilbertPolyK3", "NLTable", "FibrationSpec",
    "mukai_from_data", "moduli_dim", "hilb_index",
    "nl_load", "nl_loads", "nl_load_path", "nl_dump",
    "nl_symmetry_extend", "dt_from_nl", "dt_symmetry_pair",
    "phi_series", "z_series_closed", "z_series_direct",
]


@dataclass(frozen=True)
class MukaiVector:
    """Rank, fiberwise curve self-intersection, and second Chern number.

    The derived entries: s = beta_sq/2 - tau + r is the last component of
    the vector (r, beta, s); omega = beta_sq/2 - tau; h = beta_sq/2 + 1 is
    the arithmetic genus attached to beta.
    """

    r: int
    beta_sq: int
    tau: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError("rank must be a positive integer")
        if not isinstance(self.beta_sq, int) or self.beta_sq % 2:
            raise ValueError("beta_sq must be an even integer")
        if self.beta_sq < -2:
            raise ValueError("beta_sq must be >= -2")
        if not isinstance(self.tau, int):
            raise ValueError("tau must be an integer")

    @property
    def s(self) -> int:
        return self.beta_sq // 2 - self.tau + self.r

    @property
    def omega(self) -> int:
        return self.beta_sq // 2 - self.tau

    @property
    def h(self) -> int:
        return self.beta_sq // 2 + 1


def mukai_from_data(r: int, beta_sq: int, tau: int) -> MukaiVector:
    return MukaiVector(r, beta_sq, tau)


def moduli_dim(v: MukaiVector, p0: int) -> int:
    """Dimension of the fiberwise moduli space, 2 + 2r^2 + beta^2 - 2r*P(0)."""
    return 2 + 2 * v.r * v.r + v.beta_sq - 2 * v.r * p0


def hilb_index(v: MukaiVector) -> int:
    """Number of points n with the fiberwise moduli deformation equivalent
    to Hilb^n.

    Two closed forms exist: n = r*tau - (r-1)*beta_sq/2 - r^2 + 1 and
    n = h - r*omega - r^2.  They agree identically; both are computed and
    compared as a typo guard.
    """
    n1 = v.r * v.tau - (v.r - 1) * (v.beta_sq // 2) - v.r * v.r + 1
    n2 = v.h - v.r * v.omega - v.r * v.r
    if n1 != n2:
        raise ConsistencyError(
            "index formulas disagree on %r: %d vs %d" % (v, n1, n2))
    return n1


@dataclass(frozen=True)
class HilbertPolyK3:
    """Quadratic Hilbert polynomial P(m) = (r*ell/2) m^2 + d m + c."""

    r: int
    ell: int
    d: int
    c: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("rank must be >= 1")
        if self.ell < 1:
            raise ValueError("ell must be >= 1")

    def value(self, m: int) -> Fraction:
        return Fraction(self.r * self.ell, 2) * m * m + self.d * m + self.c

    @classmethod
    def from_mukai(cls, v: MukaiVector, ell: int, d: int):
        # constant term c = omega + 2r for the sheaves carrying v
        return cls(v.r, ell, d, v.omega + 2 * v.r)


class NLTable:
    """Finitely supported map (h, d) -> exact rational intersection number.

    Every nonzero entry must satisfy the vanishing bound
    h <= 1 + d^2/(2*ell); entries equal to zero are not stored.
    """

    __slots__ = ("ell", "entries")

    def __init__(self, ell: int, entries):
        if not isinstance(ell, int) or isinstance(ell, bool) or ell < 1:
            raise NLValidationError("ell must be a positive integer")
        table = {}
        for (h, d), v in dict(entries).items():
            if not isinstance(h, int) or not isinstance(d, int):
                raise NLValidationError("indices must be integers: (%r, %r)" % (h, d))
            v = v if isinstance(v, Fraction) else Fraction(v)
            if not v:
                continue
            if not self.bound_ok(h, d, ell):
                raise NLValidationError(
                    "entry at (h=%d, d=%d) violates the vanishing bound "
                    "h <= 1 + d^2/(2*%d)" % (h, d, ell))
            table[(h, d)] = v
        self.ell = ell
        self.entries = table

    @staticmethod
    def bound_ok(h: int, d: int, ell: int) -> bool:
        # h <= 1 + d^2/(2 ell), cleared of denominators
        return 2 * ell * (h - 1) <= d * d

    def value(self, h: int, d: int) -> Fraction:
        return self.entries.get((h, d), Fraction(0))

    def support(self):
        return sorted(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, NLTable):
            return NotImplemented
        return self.ell == other.ell and self.entries == other.entries

    def __repr__(self):
        return "NLTable(ell=%d, %d entries)" % (self.ell, len(self.entries))


@dataclass(frozen=True)
class FibrationSpec:
    """A fibration's constants plus its intersection-number table."""

    ell: int
    k: int
    nl: NLTable
    euler: int = 24
    nodal: bool = False

    def __post_init__(self):
        if self.nl.ell != self.ell:
            raise NLValidationError("table ell %d does not match spec ell %d"
                                    % (self.nl.ell, self.ell))


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def _parse_rational(raw, where: str) -> Fraction:
    if isinstance(raw, bool):
        raise NLValidationError("%s: boolean is not a number" % where)
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        s = raw.strip()
        if not _RATIONAL_RE.match(s):
            raise NLValidationError(
                "%s: %r is not an exact rational 'p' or 'p/q'" % (where, raw))
        return Fraction(s)
    raise NLValidationError(
        "%s: %r is not an exact rational (floating point is not accepted)"
        % (where, raw))


def _require_int(doc, key, default=None):
    if key not in doc:
        if default is not None:
            return default
        raise NLValidationError("missing required key %r" % key)
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise NLValidationError("key %r must be an integer, got %r" % (key, v))
    return v


def nl_load(doc) -> FibrationSpec:
    """Build a validated FibrationSpec from a parsed table document.

    Expected shape:
      { "ell": int, "k": int, "euler": int (default 24),
        "nodal": bool (default false),
        "nl": [ {"h": int, "d": int, "value": "p/q" or "p"}, ... ] }

    Values must be exact: integers or 'p/q' strings.  Duplicate (h, d)
    rows and bound violations are rejected with the offending pair named.
    """
    if not isinstance(doc, dict):
        raise NLValidationError("table document must be an object")
    unknown = set(doc) - {"ell", "k", "euler", "nodal", "nl"}
    if unknown:
        raise NLValidationError("unknown keys: %s" % ", ".join(sorted(unknown)))
    ell = _require_int(doc, "ell")
    k = _require_int(doc, "k")
    euler = _require_int(doc, "euler", 24)
    nodal = doc.get("nodal", False)
    if not isinstance(nodal, bool):
        raise NLValidationError("key 'nodal' must be a boolean")
    rows = doc.get("nl")
    if not isinstance(rows, list):
        raise NLValidationError("key 'nl' must be a list of rows")
    entries = {}
    for i, row in enumerate(rows):
        if not isinstance(row, dict) or set(row) != {"h", "d", "value"}:
            raise NLValidationError(
                "row %d must be an object with keys h, d, value" % i)
        h = row["h"]
        d = row["d"]
        if not isinstance(h, int) or isinstance(h, bool) \
                or not isinstance(d, int) or isinstance(d, bool):
            raise NLValidationError("row %d: h and d must be integers" % i)
        if (h, d) in entries:
            raise NLValidationError("duplicate entry at (h=%d, d=%d)" % (h, d))
        entries[(h, d)] = _parse_rational(row["value"], "row %d" % i)
    return FibrationSpec(ell=ell, k=k, euler=euler, nodal=nodal,
                         nl=NLTable(ell, entries))


def _reject_float(raw):
    raise NLValidationError(
        "floating point literal %r is not accepted; write an exact "
        "rational string instead" % raw)


def nl_loads(text: str) -> FibrationSpec:
    """Parse a JSON table document from a string, rejecting any float."""
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise NLValidationError("malformed document: %s" % exc) from exc
    return nl_load(doc)


def nl_load_path(path) -> FibrationSpec:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    try:
        return nl_loads(text)
    except NLValidationError as exc:
        raise NLValidationError("%s: %s" % (path, exc)) from exc


def nl_dump(spec: FibrationSpec) -> dict:
    """Document form of a spec; inverse of nl_load up to row order."""
    order = sorted(spec.nl.entries, key=lambda hd: (hd[1], hd[0]))
    rows = [{"h": h, "d": d, "value": str(spec.nl.entries[(h, d)])}
            for (h, d) in order]
    return {"ell": spec.ell, "k": spec.k, "euler": spec.euler,
            "nodal": spec.nodal, "nl": rows}


def _sym_image(h, d, ell):
    return h + d + ell // 2, d + ell


def _sym_preimage(h, d, ell):
    return h - d + ell // 2, d - ell


def nl_symmetry_extend(table: NLTable, h_lo: int, d_min: int, d_max: int) -> NLTable:
    """Close a table under its translation symmetry within a window.

    The symmetry identifies (h, d) with (h + d + ell/2, d + ell) at equal
    value; it is applied in both directions and the closure keeps every
    generated cell with d_min <= d <= d_max and h >= h_lo.  Existing
    entries are never modified; two routes assigning different values to
    one cell raise ConsistencyError.  The vanishing bound is equivariant
    under the shift, so extension cannot create a violating entry; the
    returned table revalidates anyway.
    """
    ell = table.ell
    if ell % 2:
        raise ValueError("symmetry extension requires even ell, got %d" % ell)
    out = dict(table.entries)
    work = list(out)
    while work:
        h, d = work.pop()
        v = out[(h, d)]
        for nh, nd in (_sym_image(h, d, ell), _sym_preimage(h, d, ell)):
            if not (d_min <= nd <= d_max) or nh < h_lo:
                continue
            old = out.get((nh, nd))
            if old is None:
                out[(nh, nd)] = v
                work.append((nh, nd))
            elif old != v:
                raise ConsistencyError(
                    "symmetry conflict at (h=%d, d=%d): %s vs %s"
                    % (nh, nd, old, v))
    return NLTable(ell, out)


def dt_from_nl(spec: FibrationSpec, P: HilbertPolyK3) -> Fraction:
    """Sheaf-counting invariant of the fibration for Hilbert polynomial P.

    Half of [ sum over table entries (h, P.d) of
              NL[h, d] * chi(Hilb^(r^2 + h - r*c))
              - (k * chi(Hilb^(r^2 + 1 - r*c)) if d = 0) ],
    with chi taken for the spec's fiber Euler number and chi(Hilb^(m<0)) = 0.
    The factor 1/2 undoes the tabulated side being a double cover or a
    disjoint double, as described in the module docstring.  Runtime is
    linear in the table support.
    """
    if P.ell != spec.ell:
        raise ValueError("polynomial ell %d does not match spec ell %d"
                         % (P.ell, spec.ell))
    r, c, d = P.r, P.c, P.d
    total = Fraction(0)
    for (h, dd), v in spec.nl.entries.items():
        if dd == d:
            total += v * hilb_euler(r * r + h - r * c, spec.euler)
    if d == 0 and spec.k:
        total -= spec.k * hilb_euler(r * r + 1 - r * c, spec.euler)
    return total / 2


def dt_symmetry_pair(r: int, ell: int, d: int, c: int):
    """The (d', c') cell carrying the same invariant as (d, c).

    d' = d + ell and c' = c + (2d + ell)/(2r); the pair is usable only
    when c' is an integer (valid flag).  The sign of the c shift is forced:
    twisting a sheaf by the polarization raises both the linear and the
    constant coefficient of its Hilbert polynomial, and only this direction
    matches the table symmetry term by term.
    """
    c2 = c + Fraction(2 * d + ell, 2 * r)
    return d + ell, c2, c2.denominator == 1


def phi_series(spec: FibrationSpec, d: int, terms: int) -> PuiseuxSeries:
    """Degree-d component of the table generating series.

    Each entry (h, d) contributes its value at exponent 1 + d^2/(2*ell) - h
    on the 1/(2*ell) grid; the vanishing bound makes every exponent
    nonnegative.  d must already be reduced to [0, ell).
    """
    if not 0 <= d < spec.ell:
        raise ValueError("d must lie in [0, ell), got %d" % d)
    grid = 2 * spec.ell
    trunc = terms * grid
    coeffs = {}
    for (h, dd), v in spec.nl.entries.items():
        if dd != d:
            continue
        num = grid + d * d - grid * h
        if num <= trunc:
            coeffs[num] = v
    return PuiseuxSeries(grid, coeffs, trunc)


def _eta_inverse_half(terms: int, euler: int = 24) -> PuiseuxSeries:
    # 1 / (2 q prod (1-q^n)^e), known to order q^terms; e = 24 is 1/(2 eta^24)
    num = goettsche_series(-euler, terms + 1).shift(1)
    return series_invert(num.scale(2))


def z_series_closed(spec: FibrationSpec, terms: int, d=None):
    """Generating series of invariants, closed form.

    Component d is (phi_series(d) - k*[d=0]) / (2 q prod (1-q^n)^e) with e
    the spec's fiber Euler number (for e = 24 the divisor is 2*eta^24),
    truncated at q^terms.  With d omitted, returns the dict of all
    components indexed by d in [0, ell).
    """
    if d is None:
        return {dd: z_series_closed(spec, terms, dd) for dd in range(spec.ell)}
    phi = phi_series(spec, d, terms + 1)
    if d == 0 and spec.k:
        phi = phi - Fraction(spec.k)
    return (phi * _eta_inverse_half(terms, spec.euler)).truncate(terms)


def z_series_direct(spec: FibrationSpec, terms: int, d=None, r: int = 1):
    """Generating series assembled cell by cell from dt_from_nl, rank 1.

    Component d is q^(1 + d^2/2ell) * sum over c of DT(d, c) * q^(-c),
    with each DT value computed independently of the closed form.  Only
    rank 1 is supported; agreement with z_series_closed is the module's
    central consistency property.
    """
    if r != 1:
        raise ValueError("only rank 1 is supported, got r=%d" % r)
    if d is None:
        return {dd: z_series_direct(spec, terms, dd) for dd in range(spec.ell)}
    if not 0 <= d < spec.ell:
        raise ValueError("d must lie in [0, ell), got %d" % d)
    ell = spec.ell
    grid = 2 * ell
    trunc = terms * grid
    # exponent of the c term is 1 + d^2/2ell - c; keep exponents <= terms
    c_lo_num = grid + d * d - trunc
    c_lo = -((-c_lo_num) // grid)
    highs = [1 + h for (h, dd) in spec.nl.entries if dd == d]
    if d == 0 and spec.k:
        highs.append(2)
    coeffs = {}
    for c in range(c_lo, max(highs) + 1 if highs else c_lo):
        v = dt_from_nl(spec, HilbertPolyK3(1, ell, d, c))
        if v:
            coeffs[grid + d * d - grid * c] = v
    return PuiseuxSeries(grid, coeffs, trunc)
