"""Batch verification front-end.

One subcommand per verification task. Every run emits a single report
(JSON by default) and exits with a code that encodes the outcome:

    0   verified / satisfied
    1   witness / violated: a refutation was produced and validated
    2   inconclusive: the search budget ran out before a decision
    64  usage error (bad flags, malformed descriptors or RLE JSON)
    70  internal error or a reported computational cap

Identical invocations produce byte-identical JSON apart from the timing
field. Reports embed the effective search parameters so sampled evidence
is auditable. The --threads flag is accepted for interface stability and
recorded in the report; the current implementation is single-threaded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from fractions import Fraction
from typing import Sequence

from . import construction as con
from . import dynamics as dyn
from . import intervalmap as imap
from .points import Cylinder, PointError, SymbolicPoint
from .words import WordError, from_json as word_from_json, word_from_text

STATUS_EXIT = {
    "verified": 0,
    "satisfied": 0,
    "witness": 1,
    "violated": 1,
    "inconclusive": 2,
    "error": 70,
}

DEFAULT_HORIZON = 10**4
DEFAULT_ORBIT_DEPTH = 10**4
DEFAULT_UV_DEPTH = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse's default error() exits with 2, which collides with the
    # "inconclusive" exit code; route everything through UsageError instead.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Token parsers
# ---------------------------------------------------------------------------


def parse_point(token: str) -> SymbolicPoint:
    if token == "x":
        return con.point_x()
    if token == "y":
        return con.point_y()
    if token.startswith("closing:"):
        try:
            return con.closing_point(int(token.split(":", 1)[1]))
        except ValueError as exc:
            raise UsageError(f"bad point {token!r}: closing:N needs an integer") from exc
    raise UsageError(f"bad point {token!r}: expected x, y, or closing:N")


def parse_cylinder(token: str) -> Cylinder:
    try:
        if token.startswith("C:"):
            return Cylinder(con.c_runs(int(token[2:])))
        if token.startswith("Q:"):
            return Cylinder(con.q_runs(int(token[2:])))
        if token.startswith("word:"):
            return Cylinder(word_from_json(token[5:]))
    except (ValueError, WordError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad cylinder {token!r}: {exc}") from exc
    raise UsageError(
        f"bad cylinder {token!r}: expected C:N, Q:N, or word:<rle-json>"
    )


def parse_fraction(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {token!r}") from exc


def _build_model(args: argparse.Namespace) -> dyn.SpaceModel:
    name = args.model
    if name not in dyn.MODEL_BUILDERS:
        raise UsageError(f"unknown model {name!r}")
    depth = getattr(args, "orbit_depth", DEFAULT_ORBIT_DEPTH)
    return dyn.MODEL_BUILDERS[name](orbit_depth=depth)


def _resolve(model: dyn.SpaceModel, name: str) -> SymbolicPoint:
    try:
        return model.resolve(name)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Command handlers: each returns (status, data, params)
# ---------------------------------------------------------------------------

Outcome = tuple[str, dict, dict]


def cmd_lengths(args: argparse.Namespace) -> Outcome:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    rows = []
    for i in range(args.n + 1):
        row = con.lengths(i)
        rows.append(
            {k: (v if k == "n" or v is None else str(v)) for k, v in row.items()}
        )
    return "verified", {"rows": rows}, {"n": args.n}


def _inequality_rows(reports) -> Outcome:
    rows = [r.to_obj() for r in reports]
    all_hold = all(r["holds"] for r in rows)
    status = "verified" if all_hold else "violated"
    return status, {"rows": rows, "all_hold": all_hold}, {}


def cmd_verify_claim1(args: argparse.Namespace) -> Outcome:
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    status, data, _ = _inequality_rows(
        con.verify_claim1(n) for n in range(args.n_max + 1)
    )
    return status, data, {"n_max": args.n_max}


def cmd_verify_one_part(args: argparse.Namespace) -> Outcome:
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    status, data, _ = _inequality_rows(
        con.verify_one_part_remark(n) for n in range(args.n_max + 1)
    )
    return status, data, {"n_max": args.n_max}


def cmd_verify_corollary(args: argparse.Namespace) -> Outcome:
    if args.n < 0 or args.k < 0:
        raise UsageError("--n and --k must be >= 0")
    rep = con.verify_corollary(args.n, args.k)
    status = "verified" if rep.holds else "violated"
    return status, {"report": rep.to_obj()}, {"n": args.n, "k": args.k}


def cmd_verify_hitting_order(args: argparse.Namespace) -> Outcome:
    rep = con.verify_hitting_order(args.n, args.k_max)
    if rep.holds:
        status = "verified"
    elif rep.inconclusive:
        status = "inconclusive"
    else:
        status = "violated"
    return status, {"report": rep.to_obj()}, {"n": args.n, "k_max": args.k_max}


def cmd_tau(args: argparse.Namespace) -> Outcome:
    point = parse_point(args.point)
    cyl = parse_cylinder(args.cylinder)
    params = {
        "point": args.point,
        "cylinder": args.cylinder,
        "horizon": args.horizon,
    }
    t = con.tau(point, cyl, args.horizon)
    if t is None:
        return "inconclusive", {"tau": None}, params
    return "verified", {"tau": str(t)}, params


def cmd_witness(args: argparse.Namespace) -> Outcome:
    kind = args.witness_kind
    if kind == "evp-x-10inf":
        cert = con.witness_not_evp_x_10inf(args.m, args.l)
        params = {"m": args.m, "l": args.l}
    elif kind == "eqp-y-zero":
        cert = con.witness_not_eqp_y_fixed(0, args.n)
        params = {"n": args.n}
    elif kind == "eqp-y-one":
        cert = con.witness_not_eqp_y_fixed(1, args.n)
        params = {"n": args.n}
    else:
        try:
            prefix = word_from_text(args.prefix)
        except WordError as exc:
            raise UsageError(f"bad --prefix {args.prefix!r}: {exc}") from exc
        cert = con.witness_not_eqp_y_general(prefix, args.n)
        params = {"prefix": args.prefix, "n": args.n}
    params["validate"] = bool(args.validate)
    # every exit-code-1 report must carry a certificate that replays cleanly,
    # so validation always runs; --validate additionally emits the breakdown
    check = con.validate_certificate(cert)
    if not check.valid:
        return (
            "error",
            {"error": "certificate_failed_validation", "detail": check.to_obj()},
            params,
        )
    data = {"certificate": cert.to_obj(), "valid": True, "time": str(cert.time)}
    if args.validate:
        data["validation"] = check.to_obj()
    return "witness", data, params


def cmd_check_pair(args: argparse.Namespace) -> Outcome:
    if args.kind not in ("eqp", "evp"):
        raise UsageError("--kind must be eqp or evp")
    model = _build_model(args)
    x_point = _resolve(model, args.x)
    y_point = _resolve(model, args.y)
    verdict = dyn.check_pair(
        model,
        args.kind,
        x_point,
        y_point,
        args.o_depth,
        max_uv_depth=args.uv_depth,
        horizon=args.horizon,
        sample_cap=args.sample_cap,
    )
    params = {
        "model": args.model,
        "kind": args.kind,
        "x": args.x,
        "y": args.y,
        "o_depth": args.o_depth,
        "uv_depth": args.uv_depth,
        "horizon": args.horizon,
        "orbit_depth": args.orbit_depth,
        "sample_cap": args.sample_cap,
    }
    return verdict.status, verdict.to_obj(), params


def cmd_hitting(args: argparse.Namespace) -> Outcome:
    model = _build_model(args)
    u = parse_cylinder(args.u)
    v = parse_cylinder(args.v)
    if args.entourage is not None:
        rep = dyn.splitting_times(
            model, u, v, args.entourage, args.horizon, sample_cap=args.sample_cap
        )
    else:
        rep = dyn.hitting_times(
            model, u, v, args.horizon, sample_cap=args.sample_cap
        )
    params = {
        "model": args.model,
        "u": args.u,
        "v": args.v,
        "horizon": args.horizon,
        "entourage": args.entourage,
        "orbit_depth": args.orbit_depth,
        "sample_cap": args.sample_cap,
    }
    data = rep.to_obj()
    if args.figure:
        from . import figures

        figures.render_hitting_times(rep.times, rep.horizon, rep.kind, args.figure)
        data["figure"] = args.figure
    return "verified", data, params


def cmd_periodic_scan(args: argparse.Namespace) -> Outcome:
    model = _build_model(args)
    scan = dyn.periodic_scan(model, args.max_period, args.horizon)
    params = {
        "model": args.model,
        "max_period": args.max_period,
        "horizon": args.horizon,
    }
    return "verified", scan, params


def _es_map() -> imap.PiecewiseLinearMap:
    return imap.example_es_map()


def cmd_interval(args: argparse.Namespace) -> Outcome:
    which = args.interval_kind
    f = _es_map()
    if which == "eval":
        x = parse_fraction(args.x)
        return "verified", {"x": str(x), "fx": str(f(x))}, {"x": args.x}
    if which == "orbit":
        x = parse_fraction(args.x)
        orbit = f.orbit(x, args.steps, args.max_denominator_bits)
        params = {
            "x": args.x,
            "steps": args.steps,
            "max_denominator_bits": args.max_denominator_bits,
        }
        return "verified", {"orbit": [str(v) for v in orbit]}, params
    if which == "constant":
        lo, hi = parse_fraction(args.lo), parse_fraction(args.hi)
        params = {"lo": args.lo, "hi": args.hi}
        value = imap.constant_value_on(f, lo, hi)
        if value is not None:
            return "verified", {"constant": str(value)}, params
        witness = None
        for p in f.pieces:
            if p.hi <= lo or p.lo >= hi:
                continue
            if p.slope != 0:
                witness = {
                    "piece": [str(p.lo), str(p.hi)],
                    "slope": str(p.slope),
                }
                break
        return "violated", {"constant": None, "witness": witness}, params
    if which == "invariant":
        lo, hi = parse_fraction(args.lo), parse_fraction(args.hi)
        params = {"lo": args.lo, "hi": args.hi}
        if imap.verify_invariant_interval(f, lo, hi):
            return "verified", {"invariant": True}, params
        witness = None
        for p in f.pieces:
            a, b = max(p.lo, lo), min(p.hi, hi)
            if a >= b:
                continue
            for point in (a, b):
                val = p.value(point)
                if not (lo <= val <= hi):
                    witness = {"x": str(point), "fx": str(val)}
                    break
            if witness:
                break
        return "violated", {"invariant": False, "witness": witness}, params
    if which == "eventual":
        x = parse_fraction(args.x)
        eps = parse_fraction(args.eps)
        delta = parse_fraction(args.delta)
        params = {
            "x": args.x,
            "eps": args.eps,
            "delta": args.delta,
            "n_max": args.n_max,
            "k_max": args.k_max,
            "grid_denominator": args.grid,
        }
        wit = imap.eventual_sensitivity_witness(
            f, x, eps, delta, args.n_max, args.k_max, args.grid
        )
        if wit is None:
            return "inconclusive", {"witness": None}, params
        # the witness here confirms the separation property, so it maps to
        # exit 0, unlike the refutation certificates of the witness command
        return "verified", {"witness": wit.to_obj()}, params
    samples = imap.plot_samples(f, args.count)
    csv = imap.samples_to_csv(samples)
    data = {"csv": csv, "sample_count": len(samples)}
    params = {"count": args.count}
    if args.figure:
        from . import figures

        figures.render_interval_map(samples, args.figure)
        data["figure"] = args.figure
    return "verified", data, params


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "text"), default="json", help="report format"
    )
    common.add_argument(
        "--output", metavar="PATH", help="write the report here (atomically)"
    )
    common.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted and recorded; the implementation is single-threaded",
    )

    parser = _Parser(prog="shiftlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lengths", parents=[common], help="block length table")
    p.add_argument("--n", type=int, required=True, help="largest index to tabulate")
    p.set_defaults(handler=cmd_lengths, echo="lengths")

    verify = sub.add_parser("verify", help="exact inequality and ordering checks")
    vsub = verify.add_subparsers(
        dest="verify_kind", required=True, parser_class=_Parser
    )
    p = vsub.add_parser("claim1", parents=[common], help="growth inequality rows")
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.set_defaults(handler=cmd_verify_claim1, echo="verify claim1")
    p = vsub.add_parser(
        "corollary", parents=[common], help="shifted growth inequality"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=cmd_verify_corollary, echo="verify corollary")
    p = vsub.add_parser(
        "one-part", parents=[common], help="ones-part dominance rows"
    )
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.set_defaults(handler=cmd_verify_one_part, echo="verify one-part")
    p = vsub.add_parser(
        "hitting-order", parents=[common], help="first-entry order chain"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-max", dest="k_max", type=int, required=True)
    p.set_defaults(handler=cmd_verify_hitting_order, echo="verify hitting-order")

    p = sub.add_parser("tau", parents=[common], help="first entry time of a point")
    p.add_argument("--point", required=True, help="x, y, or closing:N")
    p.add_argument(
        "--cylinder", required=True, help="C:N, Q:N, or word:<rle-json>"
    )
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    p.set_defaults(handler=cmd_tau, echo="tau")

    witness = sub.add_parser("witness", help="refutation certificates")
    wsub = witness.add_subparsers(
        dest="witness_kind", required=True, parser_class=_Parser
    )
    p = wsub.add_parser("evp-x-10inf", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--validate", action="store_true")
    p.set_defaults(handler=cmd_witness, echo="witness evp-x-10inf")
    p = wsub.add_parser("eqp-y-zero", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--validate", action="store_true")
    p.set_defaults(handler=cmd_witness, echo="witness eqp-y-zero")
    p = wsub.add_parser("eqp-y-one", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--validate", action="store_true")
    p.set_defaults(handler=cmd_witness, echo="witness eqp-y-one")
    p = wsub.add_parser("eqp-y-general", parents=[common])
    p.add_argument("--prefix", required=True, help="target prefix, e.g. 100")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--validate", action="store_true")
    p.set_defaults(handler=cmd_witness, echo="witness eqp-y-general")

    check = sub.add_parser("check", help="sampled pair conditions")
    csub = check.add_subparsers(dest="check_kind", required=True, parser_class=_Parser)
    p = csub.add_parser("pair", parents=[common])
    p.add_argument("--kind", required=True, help="eqp or evp")
    p.add_argument("--model", required=True, help="s7, ex2, or ex3")
    p.add_argument("--x", required=True, help="point name in the model")
    p.add_argument("--y", required=True, help="point name in the model")
    p.add_argument("--o-depth", dest="o_depth", type=int, required=True)
    p.add_argument("--uv-depth", dest="uv_depth", type=int, default=DEFAULT_UV_DEPTH)
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    p.add_argument(
        "--orbit-depth", dest="orbit_depth", type=int, default=DEFAULT_ORBIT_DEPTH
    )
    p.add_argument(
        "--sample-cap", dest="sample_cap", type=int, default=dyn.DEFAULT_SAMPLE_CAP
    )
    p.set_defaults(handler=cmd_check_pair, echo="check pair")

    p = sub.add_parser("hitting", parents=[common], help="sampled hitting times")
    p.add_argument("--model", required=True)
    p.add_argument("--u", required=True, help="cylinder: C:N, Q:N, or word:<rle-json>")
    p.add_argument("--v", required=True, help="cylinder: C:N, Q:N, or word:<rle-json>")
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    p.add_argument(
        "--entourage",
        type=int,
        default=None,
        help="also require an entourage escape (splitting times)",
    )
    p.add_argument(
        "--orbit-depth", dest="orbit_depth", type=int, default=DEFAULT_ORBIT_DEPTH
    )
    p.add_argument(
        "--sample-cap", dest="sample_cap", type=int, default=dyn.DEFAULT_SAMPLE_CAP
    )
    p.add_argument("--figure", metavar="PATH", help="also render a figure here")
    p.set_defaults(handler=cmd_hitting, echo="hitting")

    p = sub.add_parser("periodic-scan", parents=[common], help="periodic word scan")
    p.add_argument("--max-period", dest="max_period", type=int, required=True)
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    p.add_argument("--model", default="s7")
    p.add_argument(
        "--orbit-depth", dest="orbit_depth", type=int, default=DEFAULT_ORBIT_DEPTH
    )
    p.set_defaults(handler=cmd_periodic_scan, echo="periodic-scan")

    interval = sub.add_parser("interval", help="piecewise-linear map checks")
    isub = interval.add_subparsers(
        dest="interval_kind", required=True, parser_class=_Parser
    )
    p = isub.add_parser("eval", parents=[common])
    p.add_argument("--x", required=True)
    p.set_defaults(handler=cmd_interval, echo="interval eval")
    p = isub.add_parser("orbit", parents=[common])
    p.add_argument("--x", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument(
        "--max-denominator-bits",
        dest="max_denominator_bits",
        type=int,
        default=imap.DEFAULT_DENOMINATOR_BITS,
    )
    p.set_defaults(handler=cmd_interval, echo="interval orbit")
    p = isub.add_parser("constant", parents=[common])
    p.add_argument("--lo", required=True)
    p.add_argument("--hi", required=True)
    p.set_defaults(handler=cmd_interval, echo="interval constant")
    p = isub.add_parser("invariant", parents=[common])
    p.add_argument("--lo", required=True)
    p.add_argument("--hi", required=True)
    p.set_defaults(handler=cmd_interval, echo="interval invariant")
    p = isub.add_parser("eventual", parents=[common])
    p.add_argument("--x", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--delta", default="1/4")
    p.add_argument("--n-max", dest="n_max", type=int, default=5)
    p.add_argument("--k-max", dest="k_max", type=int, default=64)
    p.add_argument("--grid", type=int, default=2**20, help="grid denominator")
    p.set_defaults(handler=cmd_interval, echo="interval eventual")
    p = isub.add_parser("plot", parents=[common])
    p.add_argument("--count", type=int, default=201)
    p.add_argument("--figure", metavar="PATH", help="also render a figure here")
    p.set_defaults(handler=cmd_interval, echo="interval plot")

    return parser


# ---------------------------------------------------------------------------
# Envelope and dispatch
# ---------------------------------------------------------------------------


def render_text(report: dict) -> str:
    data = report["data"]
    if report["command"] == "interval plot" and "csv" in data:
        return data["csv"]
    lines = [
        f"command: {report['command']}",
        f"status: {report['status']}",
        "params: " + json.dumps(report["params"], sort_keys=True),
        json.dumps(data, indent=2, sort_keys=True),
    ]
    return "\n".join(lines) + "\n"


def emit(report: dict, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = render_text(report)
    if output:
        # single atomic write so partial reports never land on disk
        directory = os.path.dirname(os.path.abspath(output))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".shiftlab-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, output)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"shiftlab: error: {exc}", file=sys.stderr)
        return 64
    started = time.perf_counter()
    try:
        status, data, params = args.handler(args)
    except UsageError as exc:
        print(f"shiftlab: error: {exc}", file=sys.stderr)
        return 64
    except (WordError, PointError, imap.DomainError, dyn.HorizonTooLarge) as exc:
        print(f"shiftlab: error: {exc}", file=sys.stderr)
        return 64
    except con.InsufficientHorizon as exc:
        status, data, params = "inconclusive", {"reason": str(exc)}, {}
    except imap.PrecisionCap as exc:
        status, data, params = (
            "error",
            {"error": "precision_cap", "message": str(exc)},
            {},
        )
    except ValueError as exc:
        print(f"shiftlab: error: {exc}", file=sys.stderr)
        return 64
    except Exception as exc:  # pragma: no cover - defensive
        print(f"shiftlab: internal error: {exc}", file=sys.stderr)
        return 70
    elapsed = time.perf_counter() - started
    params["threads"] = args.threads
    report = {
        "command": args.echo,
        "status": status,
        "data": data,
        "params": params,
        "timing": {"seconds": round(elapsed, 6)},
    }
    try:
        emit(report, args.format, args.output)
    except OSError as exc:
        print(f"shiftlab: error: cannot write report: {exc}", file=sys.stderr)
        return 70
    return STATUS_EXIT[status]


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
