"""Command line front end.

Exit codes form part of the contract: 0 on success, 1 for unusable input
(bad arguments, malformed or invalid table documents, file errors), 2 when
an internal cross-check fails, meaning two computations that must agree by
theory did not.  argparse's habit of exiting 2 on bad arguments is
overridden to keep code 2 unambiguous.

All output is deterministic: same invocation, same bytes.  Sampled
evaluation uses a fixed default seed unless --seed is given.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

from .errors import ConsistencyError, NLValidationError
from .localization import (
    fixed_point_contribution,
    hilb_chern_integral,
    p3_point_count,
    tangent_character,
    obstruction_character,
    contribution_from_characters,
)
from .nl_dt import (
    FibrationSpec,
    HilbertPolyK3,
    MukaiVector,
    dt_from_nl,
    dt_symmetry_pair,
    hilb_index,
    nl_dump,
    nl_load_path,
    nl_loads,
    nl_symmetry_extend,
    phi_series,
    z_series_closed,
    z_series_direct,
)
from .partitions import enumerate_triples
from .qseries import PuiseuxSeries, eta24, goettsche_series

_FIXTURE_NAMES = ("two_copies", "mixed_shift", "symmetry_window", "quartic_pencil")


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def _emit_value(v, fmt: str):
    if fmt == "structured":
        print(json.dumps({"value": str(v)}))
    else:
        print(v)


def _series_doc(s: PuiseuxSeries) -> dict:
    return {
        "grid": s.grid,
        "truncation": str(s.bound),
        "terms": [[e, c] for e, c in s.to_pairs()],
    }


def _print_series_text(s: PuiseuxSeries):
    for e, c in s.terms():
        print("q^(%s): %s" % (e, c))
    print("O(q^(%s))" % Fraction(s.trunc + 1, s.grid))


def _emit_series(s: PuiseuxSeries, fmt: str):
    if fmt == "structured":
        print(json.dumps(_series_doc(s)))
    else:
        _print_series_text(s)


def _emit_components(comp: dict, fmt: str):
    if fmt == "structured":
        print(json.dumps(
            {"components": [[d, _series_doc(comp[d])] for d in sorted(comp)]}))
    else:
        for d in sorted(comp):
            print("# d = %d" % d)
            _print_series_text(comp[d])


def _bundled_specs() -> dict:
    root = resources.files("sheafcount") / "fixtures"
    return {name: nl_loads((root / (name + ".json")).read_text(encoding="utf-8"))
            for name in _FIXTURE_NAMES}


# -- subcommands ---------------------------------------------------------

def cmd_p3(args) -> int:
    if args.n is not None:
        if args.s is not None or args.d is not None:
            raise ValueError("give either --n or the pair --s/--d, not both")
        n = args.n
    else:
        if args.s is None or args.d is None:
            raise ValueError("give either --n or both --s and --d")
        n = p3_point_count(args.s, args.d)
    if n < 0:
        raise ValueError("the number of points must be nonnegative")
    if args.verbose:
        triples = enumerate_triples(n)
        print("# %d monomial configurations for n = %d" % (len(triples), n))
        if args.mode == "symbolic":
            for tr in triples:
                print("# %r: %s" % (tr, fixed_point_contribution(tr)))
    value = hilb_chern_integral(n, args.mode, seed=args.seed,
                                samples=args.samples, workers=args.workers)
    _emit_value(value, args.format)
    return 0


def cmd_goettsche(args) -> int:
    _emit_series(goettsche_series(args.euler, args.terms), args.format)
    return 0


def cmd_phi(args) -> int:
    spec = nl_load_path(args.nl)
    _emit_series(phi_series(spec, args.d, args.terms), args.format)
    return 0


def cmd_z(args) -> int:
    spec = nl_load_path(args.nl)
    if args.check:
        if args.d is None:
            closed = z_series_closed(spec, args.terms)
            direct = z_series_direct(spec, args.terms)
            bad = sorted(d for d in closed if closed[d] != direct[d])
        else:
            bad = [] if (z_series_closed(spec, args.terms, args.d)
                         == z_series_direct(spec, args.terms, args.d)) \
                else [args.d]
        if bad:
            raise ConsistencyError(
                "closed and direct series disagree for d in %s" % bad)
        print("closed = direct: OK")
        return 0
    if args.d is None:
        _emit_components(z_series_closed(spec, args.terms), args.format)
    else:
        _emit_series(z_series_closed(spec, args.terms, args.d), args.format)
    return 0


def cmd_dt(args) -> int:
    spec = nl_load_path(args.nl)
    value = dt_from_nl(spec, HilbertPolyK3(args.r, spec.ell, args.d, args.c))
    _emit_value(value, args.format)
    return 0


def cmd_nl_validate(args) -> int:
    spec = nl_load_path(args.file)
    if args.format == "structured":
        print(json.dumps({"value": "ok", "entries": len(spec.nl),
                          "ell": spec.ell, "k": spec.k}))
    else:
        print("ok: %d entries, ell = %d, k = %d"
              % (len(spec.nl), spec.ell, spec.k))
    return 0


def cmd_nl_extend(args) -> int:
    spec = nl_load_path(args.file)
    bigger = nl_symmetry_extend(spec.nl, args.h_lo, args.d_min, args.d_max)
    doc = nl_dump(FibrationSpec(ell=spec.ell, k=spec.k, euler=spec.euler,
                                nodal=spec.nodal, nl=bigger))
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _expect(cond, msg: str):
    if not cond:
        raise ConsistencyError(msg)


def cmd_check(args) -> int:
    """Deterministic self-test battery; exit 2 if anything disagrees."""
    failures = 0

    def run(name, fn):
        nonlocal failures
        try:
            fn()
        except Exception as exc:  # a failed check must not stop the rest
            failures += 1
            print("FAIL: %s (%s)" % (name, exc))
        else:
            print("ok: %s" % name)

    def chern_values():
        for n, want in enumerate([1, 7, 35, 140]):
            got = hilb_chern_integral(n)
            _expect(got == want, "n=%d: %s != %s" % (n, got, want))

    def sampled_value():
        got = hilb_chern_integral(4, "sampled", seed=args.seed)
        _expect(got == 490, "n=4 sampled: %s != 490" % got)

    def character_sizes():
        for n in range(5):
            for tr in enumerate_triples(n):
                _expect(len(tangent_character(tr)) == 2 * n,
                        "tangent size off at %r" % (tr,))
                _expect(len(obstruction_character(tr)) == 2 * n,
                        "obstruction size off at %r" % (tr,))

    def weight_quotient():
        for n in range(4):
            for tr in enumerate_triples(n):
                _expect(fixed_point_contribution(tr)
                        == contribution_from_characters(tr),
                        "contribution routes disagree at %r" % (tr,))

    def eta_identity():
        lhs = goettsche_series(24, 20) * eta24(21).shift(-1)
        _expect(lhs == PuiseuxSeries(1, {0: 1}, 20),
                "eta product does not invert the Euler-number series")

    def closed_equals_direct():
        for name, spec in _bundled_specs().items():
            _expect(z_series_closed(spec, 6) == z_series_direct(spec, 6),
                    "series routes disagree on %s" % name)

    def symmetry_pairing():
        spec = _bundled_specs()["symmetry_window"]
        for c in range(-2, 3):
            d2, c2, ok = dt_symmetry_pair(1, spec.ell, 1, c)
            _expect(ok, "pair (1, %d) not integral" % c)
            a = dt_from_nl(spec, HilbertPolyK3(1, spec.ell, 1, c))
            b = dt_from_nl(spec, HilbertPolyK3(1, spec.ell, d2, int(c2)))
            _expect(a == b, "pairing broken at c=%d: %s vs %s" % (c, a, b))

    def triple_counts():
        want = [1, 3, 9, 22, 51, 108, 221, 429, 810]
        for n, w in enumerate(want):
            got = len(enumerate_triples(n))
            _expect(got == w, "n=%d: %d triples, expected %d" % (n, got, w))

    def index_forms():
        for r in range(1, 4):
            for b2 in (-2, 0, 2, 4):
                for tau in range(-3, 4):
                    hilb_index(MukaiVector(r, b2, tau))
        _expect(hilb_index(MukaiVector(2, -2, 3)) == 4, "frozen index value off")

    def parallel_sum():
        _expect(hilb_chern_integral(3, workers=3) == hilb_chern_integral(3),
                "chunked summation changes the total")

    run("fixed-point sums n<=3", chern_values)
    run("sampled evaluation n=4", sampled_value)
    run("character cardinalities", character_sizes)
    run("contribution via weight quotient", weight_quotient)
    run("eta product identity", eta_identity)
    run("closed form = direct sum on bundled tables", closed_equals_direct)
    run("invariant symmetry pairing", symmetry_pairing)
    run("configuration counts", triple_counts)
    run("index formula agreement", index_forms)
    run("parallel summation", parallel_sum)

    if failures:
        print("%d of 10 checks failed" % failures)
        return 2
    print("all 10 checks passed")
    return 0


# -- wiring --------------------------------------------------------------

def build_parser() -> CliParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"),
                        default="text",
                        help="text (default) or one JSON object per result")

    parser = CliParser(prog="sheafcount",
                       description="Exact sheaf-counting invariants: "
                                   "fixed-point sums on Hilbert schemes of "
                                   "the plane, and K3-fibration counts "
                                   "driven by intersection-number tables.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="COMMAND")

    p = sub.add_parser("p3", parents=[common],
                       help="point-insertion invariant of projective 3-space")
    p.add_argument("--n", type=int, default=None,
                   help="number of points (overrides --s/--d)")
    p.add_argument("--s", type=int, default=None, help="surface degree")
    p.add_argument("--d", type=int, default=None, help="curve degree")
    p.add_argument("--mode", choices=("symbolic", "sampled"),
                   default="symbolic")
    p.add_argument("--samples", type=int, default=3,
                   help="evaluation points in sampled mode (>= 3)")
    p.add_argument("--workers", type=int, default=1,
                   help="chunks for the fixed-point sum")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for sampled mode (fixed default)")
    p.add_argument("--verbose", action="store_true",
                   help="list fixed points and their contributions")
    p.set_defaults(func=cmd_p3)

    p = sub.add_parser("goettsche", parents=[common],
                       help="Hilbert-scheme Euler-number series")
    p.add_argument("--euler", type=int, default=24,
                   help="surface Euler number (default 24)")
    p.add_argument("--terms", type=int, required=True,
                   help="truncation order")
    p.set_defaults(func=cmd_goettsche)

    p = sub.add_parser("phi", parents=[common],
                       help="table generating series, one degree component")
    p.add_argument("--nl", required=True, help="table document (JSON)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--terms", type=int, required=True)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("z", parents=[common],
                       help="invariant generating series from a table")
    p.add_argument("--nl", required=True, help="table document (JSON)")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--d", type=int, default=None,
                   help="single degree component (default: all)")
    p.add_argument("--check", action="store_true",
                   help="verify the closed form against the direct sum")
    p.set_defaults(func=cmd_z)

    p = sub.add_parser("dt", parents=[common],
                       help="single invariant from a table")
    p.add_argument("--nl", required=True, help="table document (JSON)")
    p.add_argument("--r", type=int, default=1, help="rank (default 1)")
    p.add_argument("--d", type=int, required=True,
                   help="linear coefficient of the Hilbert polynomial")
    p.add_argument("--c", type=int, required=True,
                   help="constant coefficient of the Hilbert polynomial")
    p.set_defaults(func=cmd_dt)

    p = sub.add_parser("nl-validate", parents=[common],
                       help="validate a table document")
    p.add_argument("file")
    p.set_defaults(func=cmd_nl_validate)

    p = sub.add_parser("nl-extend", parents=[common],
                       help="close a table under its translation symmetry")
    p.add_argument("file")
    p.add_argument("--h-lo", type=int, required=True, dest="h_lo",
                   help="keep generated entries with h >= this")
    p.add_argument("--d-min", type=int, required=True, dest="d_min")
    p.add_argument("--d-max", type=int, required=True, dest="d_max")
    p.add_argument("-o", "--out", default=None,
                   help="write the extended document here instead of stdout")
    p.set_defaults(func=cmd_nl_extend)

    p = sub.add_parser("check", parents=[common],
                       help="run the deterministic self-test battery")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for the sampled-evaluation check")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print("consistency failure: %s" % exc, file=sys.stderr)
        return 2
    except (NLValidationError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
