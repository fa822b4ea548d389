"""Command-line front end: ``elliptic-summer <command> <problem-file> [flags]``."""

import argparse
import sys
import time

from . import __version__
from .ancillary import ancillary_for
from .applications import (additive_integrability, dlog_summable, eventually_integrable_char0,
                           gauge_equivalent_constant, summable_rr_dim, summable_rr_dim_bruteforce)
from .curve import assert_non_torsion
from .divisors import rr_basis
from .errors import (CrossCheckFailure, EmptySpace, NotRationalPoint, ParseError, PointNotOnCurve,
                     SummerError, TorsionPoint)
from .function_field import divisor_of, tau_shift
from .orbits import DEFAULT_ORBIT_BOUND
from .problem import DEFAULT_TORSION_BOUND, load_problem, parse_point
from .report import Report, add_conditions, add_input, add_orbits, add_residues, fmt, orbit_label
from .residues import (decide_summable, default_pinning, pano1_via_residues, reduced_form,
                       residue_report, telescoper, verify_reduction)
from .selftest import run_selftest

EXIT_OK = 0
EXIT_USAGE = 1          # bad arguments, unreadable or malformed problem file
EXIT_POINT = 2          # NotRationalPoint, TorsionPoint, point not on the curve
EXIT_CAVEAT = 3         # verdict reached with the orbit search bound in force
EXIT_DOMAIN = 4         # any other domain error (failed cross-check, construction)
EXIT_SELFTEST = 5       # selftest failure

TARGETS = {
    "residues": "f", "decide": "f", "reduce": "f", "integrable-additive": "f",
    "rrdim": "D", "sdim": "D",
    "integrable-multiplicative": "a", "gauge-constant": "a",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="elliptic-summer", description="Elliptic summability and integrability decisions.")
    p.add_argument("--version", action="version", version=f"elliptic-summer v{__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in list(TARGETS) + ["selftest"]:
        sp = sub.add_parser(name)
        if name == "selftest":
            continue
        sp.add_argument("file", help="problem file")
        sp.add_argument("--bound", type=int, help=f"orbit search bound (default {DEFAULT_ORBIT_BOUND})")
        sp.add_argument("--torsion-bound", type=int,
                        help=f"non-torsion check bound (default {DEFAULT_TORSION_BOUND})")
        sp.add_argument("--pinning", choices=("tau", "super"))
        sp.add_argument("--rep-zs", choices=("O", "auto"))
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--oracle", action="store_true", help="force independent cross-checks on")
        sp.add_argument("--timing", action="store_true", help="print elapsed time to stderr")
        sp.add_argument("-o", "--output", help="also write the report to this file")
        if TARGETS[name] == "f":
            sp.add_argument("--builtin", nargs="+", metavar="ARG",
                            help="replace f by: zeta L M | phi OMEGA N K | psi N")
    return p


# ------------------------------------------------------------------ helpers

def _pinning(prob, args):
    E = prob.curve
    points = []
    if prob.target_kind == "D":
        points = prob.target.support()
    rep_zs = args.rep_zs or prob.rep_zs or "O"
    return default_pinning(
        E, prob.s, points,
        mode=args.pinning or prob.pinning or "tau",
        rep_zs=rep_zs,
        bound=args.bound or prob.bound or DEFAULT_ORBIT_BOUND,
    )


def _builtin(words, prob, pin):
    """Synthesize zeta(l, m), phi(omega, n, k) or Psi_n; returns (f, label, pinning)."""
    E = prob.curve
    kind, rest = words[0], words[1:]
    try:
        if kind == "zeta" and len(rest) == 2:
            l, m = int(rest[0]), int(rest[1])
            return ancillary_for(pin).zeta(l, m), f"zeta({l}, {m})", pin
        if kind == "psi" and len(rest) == 1:
            n = int(rest[0])
            anc = ancillary_for(pin)
            return anc.zeta(1, 0) * n - anc.zeta(n, 0), f"Psi({n})", pin
        if kind == "phi" and len(rest) == 3:
            P = parse_point(rest[0], E)
            n, k = int(rest[1]), int(rest[2])
            if k < 1:
                raise ValueError
            pin = pin.extended([P])
            oid = pin.locate(P)[0].id
            return ancillary_for(pin).phi(oid, n, k), f"phi({orbit_label(oid)}, {n}, {k})", pin
    except ValueError:
        pass
    raise ParseError(f"bad --builtin arguments: {' '.join(words)}")


def _verdict_exit(pin):
    return EXIT_CAVEAT if pin.bound_caveat else EXIT_OK


# ------------------------------------------------------------ subcommands

def cmd_residues(prob, pin, args, rep):
    r = residue_report(prob.target, pin)
    check = pano1_via_residues(prob.target, r.pinning)
    if check != r.pano1:
        raise CrossCheckFailure("pano1 disagrees with the twisted residue sum")
    if r.residue_identity() != 0:
        raise CrossCheckFailure("residue identity violated")
    add_residues(rep, r, check)
    return _verdict_exit(r.pinning)


def cmd_decide(prob, pin, args, rep):
    f = prob.target
    res = decide_summable(f, pin)
    r = res.report
    check = pano1_via_residues(f, r.pinning) if args.oracle else None
    if check is not None and check != r.pano1:
        raise CrossCheckFailure("pano1 disagrees with the twisted residue sum")
    add_residues(rep, r, check)
    if res.summable:
        rep.add("verdict", "verdict", "Summable")
        rep.add("certificate", "g", fmt(res.certificate))
        rep.add("certificate", "verified", "tau(g) - g = f")
        return EXIT_OK
    label = "NotSummableWithinBound" if r.bound_caveat else "NotSummable"
    rep.add("verdict", "verdict", label)
    if args.oracle and not verify_reduction(r):
        raise CrossCheckFailure("reduction identity failed")
    return _verdict_exit(r.pinning)


def cmd_reduce(prob, pin, args, rep):
    r = residue_report(prob.target, pin)
    add_residues(rep, r)
    fbar, g0 = reduced_form(r), telescoper(r)
    s = r.pinning.s
    if fbar - prob.target != tau_shift(g0, 1, s) - g0:
        raise CrossCheckFailure("reduction identity failed")
    rep.add("reduced", "fbar", fmt(fbar))
    rep.add("certificate", "g0", fmt(g0))
    rep.add("certificate", "verified", "fbar - f = tau(g0) - g0")
    return _verdict_exit(r.pinning)


def cmd_rrdim(prob, pin, args, rep):
    D = prob.target
    rep.add("divisor", "D", fmt(D))
    try:
        basis = rr_basis(D, prob.curve)
    except EmptySpace:
        basis = []
    rep.add("dimension", "dim L(D)", len(basis))
    for i, b in enumerate(basis):
        rep.add("basis", f"b{i}", fmt(b))
    return EXIT_OK


def cmd_sdim(prob, pin, args, rep):
    D = prob.target
    if not D.is_effective():
        raise ParseError("sdim needs an effective divisor")
    pin = pin.extended(D.support())
    rep.add("divisor", "D", fmt(D))
    add_orbits(rep, pin, D.support())
    dim = summable_rr_dim(D, pin)
    brute, members = summable_rr_dim_bruteforce(D, pin)
    rep.add("dimension", "dim S(D)", dim)
    rep.add("dimension", "bruteforce", brute)
    for i, g in enumerate(members):
        rep.add("basis", f"g{i}", fmt(g))
    if dim != brute:
        raise CrossCheckFailure(f"formula gives {dim}, kernel dimension is {brute}")
    return _verdict_exit(pin)


def _add_verdict(rep, v, field):
    add_conditions(rep, v, field)
    rep.add("verdict", "verdict", v.decision)
    if v.direct is not None:
        rep.add("verdict", "direct", "Summable" if v.direct.summable else "NotSummable")


def cmd_additive(prob, pin, args, rep):
    f = prob.target
    v = additive_integrability(f, pin)
    F = prob.field
    _add_verdict(rep, v, F)
    if v.certificate is not None:
        rep.add("certificate", "g", fmt(v.certificate))
        rep.add("certificate", "verified", "tau(g) - g = delta(f)")
    if F.characteristic == 0:
        ok, fstar, g0 = eventually_integrable_char0(f, pin)
        rep.add("eventually", "some nonzero operator in delta makes f summable", ok)
        if ok:
            rep.add("eventually", "f_star", fmt(fstar))
            rep.add("eventually", "g0", fmt(g0))
    return _verdict_exit(v.direct.report.pinning)


def cmd_multiplicative(prob, pin, args, rep):
    v = dlog_summable(prob.target, pin)
    rep.add("divisor", "div(a)", fmt(divisor_of(prob.target)))
    _add_verdict(rep, v, prob.field)
    if v.certificate is not None:
        rep.add("certificate", "g", fmt(v.certificate))
        rep.add("certificate", "verified", "tau(g) - g = delta(a)/a")
    return _verdict_exit(v.direct.report.pinning)


def cmd_gauge(prob, pin, args, rep):
    a = prob.target
    div = divisor_of(a)
    v = gauge_equivalent_constant(a, pin)
    rep.add("divisor", "div(a)", fmt(div))
    add_conditions(rep, v, prob.field)
    rep.add("verdict", "verdict", v.decision)
    if v.certificate is not None:
        r, c = v.certificate
        rep.add("certificate", "r", fmt(r))
        rep.add("certificate", "c", fmt(c, prob.field))
        rep.add("certificate", "verified", "a = c * tau(r)/r")
    caveat = pin.extended(div.support()).bound_caveat
    return EXIT_CAVEAT if caveat else EXIT_OK


COMMANDS = {
    "residues": cmd_residues, "decide": cmd_decide, "reduce": cmd_reduce, "rrdim": cmd_rrdim,
    "sdim": cmd_sdim, "integrable-additive": cmd_additive,
    "integrable-multiplicative": cmd_multiplicative, "gauge-constant": cmd_gauge,
}


# ------------------------------------------------------------------ driver

def _run(args, out):
    prob = load_problem(args.file)
    want = TARGETS[args.command]
    builtin = getattr(args, "builtin", None)
    if prob.target_kind != want and not (builtin and want == "f"):
        raise ParseError(f"{args.command} needs a target '{want} = ...'")
    assert_non_torsion(prob.s, prob.curve, args.torsion_bound or prob.torsion_bound or DEFAULT_TORSION_BOUND)
    pin = _pinning(prob, args)
    if builtin:
        f, label, pin = _builtin(builtin, prob, pin)
        prob.target_kind, prob.target = "f", f
    rep = Report(args.command)
    add_input(rep, prob, pin)
    if builtin:
        rep.add("input", "builtin", label)
    code = COMMANDS[args.command](prob, pin, args, rep)
    text = rep.json() if args.json else rep.text()
    out.write(text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:     # usage errors, --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out = sys.stdout
    if args.command == "selftest":
        out.write(f"elliptic-summer v{__version__}\ncommand = selftest\n\n")
        ok, results = run_selftest(lambda line: out.write(line + "\n"))
        out.write(f"\n{sum(r[1] for r in results)}/{len(results)} passed\n")
        return EXIT_OK if ok else EXIT_SELFTEST
    t0 = time.perf_counter()
    try:
        code = _run(args, out)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        code = EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        code = EXIT_USAGE
    except (NotRationalPoint, TorsionPoint, PointNotOnCurve) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        code = EXIT_POINT
    except SummerError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        code = EXIT_DOMAIN
    if args.timing:
        sys.stderr.write(f"elapsed {time.perf_counter() - t0:.3f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
