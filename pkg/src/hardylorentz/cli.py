"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 divergent norm, 3 an inequality
or invariant fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

from . import checks
from ._io import dumps, fmt
from ._quad import DEFAULT_TOL
from .errors import DivergenceError, DomainError, ProfileFormatError
from .extremals import (
    EvidenceRow,
    SweepRow,
    attainment_reports,
    default_family,
    epsilon_sweep,
    make_psi,
    make_v_eps,
    non_attainment_evidence,
)
from .inequalities import (
    CSV_FIELDS,
    gradient_norm,
    target_norm,
    verify_embedding,
    verify_hardy,
)
from .lorentz import LorentzParams
from .profile import RadialProfile, cap

EXIT_OK, EXIT_USAGE, EXIT_DIVERGENCE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument types
# ---------------------------------------------------------------------------


def parse_q(text: str) -> float:
    if text.strip().lower() == "inf":
        return math.inf
    try:
        q = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be a number >= 1 or 'inf', got {text!r}")
    if not q >= 1 or math.isinf(q):
        raise argparse.ArgumentTypeError(f"q must be a number >= 1 or 'inf', got {text!r}")
    return q


def parse_builtin(text: str) -> tuple[str, float | None]:
    name, _, arg = text.partition(":")
    if name in ("psi", "cap") and not arg:
        return name, None
    if name == "v_eps" and arg:
        try:
            return name, float(arg)
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(
        f"unknown builtin {text!r}; expected psi, cap or v_eps:<epsilon>")


def parse_eps_list(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad epsilon list {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty epsilon list")
    return vals


def positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=3, help="dimension (default 3)")
    common.add_argument("--p", type=float, default=2.0, help="gradient exponent (default 2)")
    common.add_argument("--q", type=parse_q, default=math.inf,
                        help="second Lorentz index, a number >= 1 or 'inf' (default inf)")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--tol", type=positive_float, default=DEFAULT_TOL,
                        help="relative quadrature tolerance")

    source = _Parser(add_help=False)
    group = source.add_mutually_exclusive_group()
    group.add_argument("--builtin", type=parse_builtin, help="psi, cap or v_eps:<epsilon>")
    group.add_argument("--profile", help="profile JSON file, or inline JSON text")

    parser = _Parser(prog="hardylorentz",
                     description="Rearrangements, Lorentz norms and sharp Hardy/Sobolev checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("norm", parents=[common, source], help="target or gradient Lorentz norm")
    p.add_argument("--which", choices=("target", "gradient"), default="target")
    p.add_argument("--method", choices=("auto", "generic"), default="auto")
    sub.add_parser("hardy", parents=[common, source], help="check the Hardy inequality")
    p = sub.add_parser("embed", parents=[common, source], help="check the Sobolev-Lorentz inequality")
    p.add_argument("--method", choices=("auto", "generic"), default="auto")
    p = sub.add_parser("sweep", parents=[common], help="ratio of v_eps against the sharp limit")
    p.add_argument("--eps", type=parse_eps_list, default=None,
                   help="comma separated epsilons (default 1e-1,...,1e-6)")
    p = sub.add_parser("attain", parents=[common, source],
                       help="attainment (q=inf) or non-attainment (finite q) evidence")
    p.add_argument("--radius", type=positive_float, default=1.0,
                   help="support radius of the shifted psi example")
    sub.add_parser("props", parents=[common], help="run the invariant corpus")
    return parser


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _params(args) -> LorentzParams:
    try:
        return LorentzParams(args.n, args.p, args.q)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def load_profile(args, params: LorentzParams) -> tuple[str, RadialProfile]:
    if getattr(args, "builtin", None):
        name, arg = args.builtin
        if name == "psi":
            return "psi", make_psi(params)
        if name == "cap":
            return "cap", cap(1.0)
        try:
            return f"v_eps:{arg:g}", make_v_eps(arg, params)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    text = getattr(args, "profile", None)
    if text is None:
        raise UsageError("a profile is required (--builtin or --profile)")
    label = "inline"
    if not text.lstrip().startswith(("{", "[")):
        path = Path(text)
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read profile {path}: {exc.strerror}") from None
        label = path.name
    try:
        return label, RadialProfile.from_json(text)
    except ProfileFormatError as exc:
        where = f" (segment {exc.index})" if exc.index is not None else ""
        raise UsageError(f"malformed profile{where}: {exc}") from None


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def _q_json(q):
    return "inf" if math.isinf(q) else q


# ---------------------------------------------------------------------------
# commands; each returns (text, exit status)
# ---------------------------------------------------------------------------


def cmd_norm(args):
    params = _params(args)
    label, u = load_profile(args, params)
    fn = target_norm if args.which == "target" else gradient_norm
    res = fn(u, params, method=args.method, tol=args.tol)
    if res.diverged:
        raise DivergenceError(f"{args.which} norm of {label} is infinite",
                              side="lhs" if args.which == "target" else "rhs")
    header = ("profile", "which", "n", "p", "q", "value", "abs_error")
    row = (label, args.which, params.n, float(params.p), float(params.q), res.value,
           res.abs_error_estimate)
    if args.format == "json":
        d = dict(zip(header, row))
        d["q"] = _q_json(params.q)
        return dumps(d) + "\n", EXIT_OK
    return _csv(header, [row]), EXIT_OK


def _report_output(args, reports):
    status = EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATION
    if args.format == "json":
        body = [r.to_dict() for r in reports]
        return dumps(body[0] if len(body) == 1 else body) + "\n", status
    return _csv(CSV_FIELDS, [r.csv_values() for r in reports]), status


def cmd_hardy(args):
    params = _params(args)
    _, u = load_profile(args, params)
    try:
        rep = verify_hardy(u, params, tol=args.tol)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return _report_output(args, [rep])


def cmd_embed(args):
    params = _params(args)
    _, u = load_profile(args, params)
    try:
        rep = verify_embedding(u, params, method=args.method, tol=args.tol)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return _report_output(args, [rep])


def cmd_sweep(args):
    params = _params(args)
    if math.isinf(params.q):
        raise UsageError("sweep needs a finite --q")
    eps = args.eps if args.eps is not None else None
    try:
        rows = epsilon_sweep(params, eps, tol=args.tol) if eps else \
            epsilon_sweep(params, tol=args.tol)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        return dumps([r._asdict() for r in rows]) + "\n", EXIT_OK
    return _csv(SweepRow._fields, rows), EXIT_OK


def cmd_attain(args):
    params = _params(args)
    if math.isinf(params.q):
        pairs = attainment_reports(params, args.radius)
        rows = [EvidenceRow(ident, r.ratio, r.margin, r.quad_error) for ident, r in pairs]
        # equality is the claim; a ratio above the constant is a violation
        status = EXIT_OK if all(r.holds for _, r in pairs) else EXIT_VIOLATION
    else:
        if getattr(args, "builtin", None) or getattr(args, "profile", None):
            family = [load_profile(args, params)]
        else:
            family = default_family(params)
        rows = non_attainment_evidence(params, family, tol=args.tol)
        status = EXIT_OK if all(r.margin > 10 * r.quad_error for r in rows) else EXIT_VIOLATION
    if args.format == "json":
        return dumps([r._asdict() for r in rows]) + "\n", status
    return _csv(EvidenceRow._fields, rows), status


def cmd_props(args):
    results = checks.run_all()
    status = EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION
    if args.format == "json":
        return dumps([r._asdict() for r in results]) + "\n", status
    return _csv(("check", "passed", "cases", "detail"), results), status


COMMANDS = {
    "norm": cmd_norm,
    "hardy": cmd_hardy,
    "embed": cmd_embed,
    "sweep": cmd_sweep,
    "attain": cmd_attain,
    "props": cmd_props,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, status = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hardylorentz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DivergenceError as exc:
        side = f" [{exc.side}]" if exc.side else ""
        print(f"hardylorentz: divergent{side}: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
