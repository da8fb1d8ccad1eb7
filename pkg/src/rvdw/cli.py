"""Command-line front end: ``rvdw <command> [options]``.

Commands: ``enumerate``, ``decide``, ``certify``, ``verify``, ``census``,
``sweep``, ``isolate`` and ``plot``.

Exit codes: 0 success (or colourable), 20 not colourable (``decide``),
30 indeterminate (budget exhausted), 2 usage error, 1 internal error.
``verify`` exits 0 for a valid certificate and 20 for an invalid one.

``--config FILE`` reads ``key = value`` pairs from the ``[DEFAULT]``
section and from a section named after the command; command-line flags
win.  ``RVDW_THREADS`` sets the default number of worker processes.
"""

from __future__ import annotations

import argparse
import configparser
import datetime as _dt
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from . import __version__
from .aps import DomainError, enumerate_aps
from .blocking_asym import extract_blocking_asym
from .blocking_sym import extract_blocking_sym
from .coloring import DEFAULT_BUDGET, ColorSpec, Decision, find_proper_coloring
from .hypergraph import induced_hypergraph
from .montecarlo import (SweepConfig, configuration_census, isolation_stats, threshold_p,
                         threshold_sweep)
from .sampling import GroundSubset, SamplingParams, random_subset
from .serialize import (atomic_write, certificate_json_text, read_results_csv,
                        results_csv_text, reverify_certificate_json, svg_plot_text)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_NOT_COLORABLE = 20
EXIT_INDETERMINATE = 30


class UsageError(Exception):
    pass


@dataclass
class ResultEnvelope:
    mode: str
    config: dict
    payload: object
    exit_status: int
    tool: str = "rvdw"
    version: str = __version__
    timestamp: str = field(default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat())

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=1, default=str) + "\n"


# ---------------------------------------------------------------------------
# parsing


def _int_list(text) -> tuple[int, ...]:
    return tuple(int(t) for t in str(text).replace(" ", "").split(",") if t)


def _float_list(text) -> tuple[float, ...]:
    return tuple(float(t) for t in str(text).replace(" ", "").split(",") if t)


def _spec(text) -> ColorSpec:
    try:
        return ColorSpec.parse(text)
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("RVDW_THREADS", "1")))
    except ValueError:
        return 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rvdw", description="Random Van der Waerden laboratory")
    parser.add_argument("--version", action="version", version=f"rvdw {__version__}")
    sub = parser.add_subparsers(dest="mode", parser_class=_Parser)

    def common(p, sample=True):
        p.add_argument("--config", help="key = value file; flags override it")
        p.add_argument("--out", help="output file (stdout when omitted)")
        if sample:
            p.add_argument("--n", type=int, help="ground set size")
            p.add_argument("--lengths", type=_spec, help="comma separated q_1 >= q_2 >= ...")
            p.add_argument("--p", type=float, help="sampling probability (full [n] when omitted)")
            p.add_argument("--c", type=float, help="p = c * n^-(q2/(q1(q2-1))) instead of --p")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--elements", help="explicit comma separated subset of [n]")
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="solver node budget")

    p = sub.add_parser("enumerate", help="list the q-APs of [n]")
    common(p, sample=False)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)

    p = sub.add_parser("decide", help="decide colourability of a (random) subset")
    common(p)
    p = sub.add_parser("certify", help="emit a 2-blocking certificate for a non-colourable subset")
    common(p)
    p = sub.add_parser("verify", help="re-verify a certificate JSON file")
    common(p, sample=False)
    p.add_argument("--cert", help="certificate JSON path")
    p = sub.add_parser("census", help="configuration census of a subset")
    common(p)
    p.add_argument("--max-len", type=int, default=None)
    p = sub.add_parser("isolate", help="mostly-independent statistic of a subset")
    common(p)
    p = sub.add_parser("sweep", help="threshold sweep to CSV")
    common(p, sample=False)
    p.add_argument("--ns", type=_int_list)
    p.add_argument("--lengths", type=_spec)
    p.add_argument("--cs", type=_float_list)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--census-max-len", type=int, default=None)
    p.add_argument("--isolation", action="store_true")
    p.add_argument("--details", help="optional JSON file with per-cell census and isolation means")
    p = sub.add_parser("plot", help="SVG plot of a sweep CSV")
    common(p, sample=False)
    p.add_argument("--csv", help="sweep CSV path")
    return parser


_CONVERTERS = {
    "n": int, "q": int, "p": float, "c": float, "seed": int, "budget": int, "trials": int,
    "workers": int, "max_len": int, "census_max_len": int, "lengths": _spec, "ns": _int_list,
    "cs": _float_list, "isolation": lambda s: str(s).strip().lower() in ("1", "true", "yes", "on"),
}


def _parse(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(list(argv))
    if args.mode is None:
        raise UsageError("a command is required")
    if getattr(args, "config", None):
        cp = configparser.ConfigParser()
        if not cp.read(args.config):
            raise UsageError(f"cannot read config file {args.config}")
        values = dict(cp.defaults())
        if cp.has_section(args.mode):
            values.update(cp.items(args.mode))
        sub = parser._subparsers._group_actions[0].choices[args.mode]  # type: ignore[union-attr]
        known = {a.dest for a in sub._actions}
        defaults = {}
        for k, v in values.items():
            dest = k.replace("-", "_")
            if dest not in known:
                raise UsageError(f"unknown config key {k!r}")
            defaults[dest] = _CONVERTERS.get(dest, str)(v)
        sub.set_defaults(**defaults)
        args = parser.parse_args(list(argv))
    return args


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _subset(args) -> tuple[GroundSubset, dict]:
    _require(args, "n", "lengths")
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.budget <= 0:
        raise UsageError("--budget must be positive")
    given = [x for x in ("p", "c", "elements") if getattr(args, x) is not None]
    if len(given) > 1:
        raise UsageError("use at most one of --p, --c, --elements")
    info = {"n": args.n, "lengths": list(args.lengths.lengths), "seed": args.seed}
    if args.elements is not None:
        els = _int_list(args.elements)
        try:
            sub = GroundSubset.of(args.n, els)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        info["elements"] = list(sub.elements)
        return sub, info
    p = args.p
    if args.c is not None:
        p = threshold_p(args.n, args.lengths, args.c)
        info["c"] = args.c
    if p is None:
        return GroundSubset.full(args.n), info
    if not 0 <= p <= 1:
        raise UsageError("--p must lie in [0, 1]")
    info["p"] = p
    return random_subset(SamplingParams(args.n, p, args.seed)), info


def _emit(args, text: str):
    if getattr(args, "out", None):
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def _cmd_enumerate(args):
    _require(args, "n", "q")
    if args.q < 3 or args.n < 1:
        raise UsageError("need --n >= 1 and --q >= 3")
    lines = ["first,diff,length"] + [f"{a.first},{a.diff},{a.length}" for a in enumerate_aps(args.n, args.q)]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _decision_code(res) -> int:
    return {Decision.COLORABLE: EXIT_OK, Decision.NOT_COLORABLE: EXIT_NOT_COLORABLE,
            Decision.INDETERMINATE: EXIT_INDETERMINATE}[res.status]


def _cmd_decide(args):
    sub, info = _subset(args)
    res = find_proper_coloring(sub, args.lengths, args.budget)
    code = _decision_code(res)
    payload = {"decision": res.status.value, "nodes": res.nodes, "subset": list(sub.elements),
               "coloring": dict(sorted(res.coloring.assignment.items())) if res.coloring else None}
    _emit(args, ResultEnvelope("decide", info, payload, code).to_json())
    return code


def _cmd_certify(args):
    sub, info = _subset(args)
    spec = args.lengths
    if spec.r != 2:
        raise UsageError("certificates exist for two colours only (two lengths)")
    res = find_proper_coloring(sub, spec, args.budget)
    if not res.not_colorable:
        code = _decision_code(res)
        _emit(args, ResultEnvelope("certify", info, {"decision": res.status.value, "certificate": None},
                                   code).to_json())
        return code
    h = induced_hypergraph(sub, spec.lengths)
    cert = extract_blocking_sym(h, args.budget) if spec.symmetric else extract_blocking_asym(h, args.budget)
    _emit(args, certificate_json_text(cert, h, spec.q1, spec.q2))
    return EXIT_OK


def _cmd_verify(args):
    _require(args, "cert")
    ok = reverify_certificate_json(args.cert)
    _emit(args, json.dumps({"certificate": args.cert, "valid": ok}) + "\n")
    return EXIT_OK if ok else EXIT_NOT_COLORABLE


def _cmd_census(args):
    sub, info = _subset(args)
    rec = configuration_census(sub, args.lengths, args.max_len)
    _emit(args, ResultEnvelope("census", info, rec.as_dict(), EXIT_OK).to_json())
    return EXIT_OK


def _cmd_isolate(args):
    sub, info = _subset(args)
    spec = args.lengths
    if not spec.q1 > spec.q2:
        raise UsageError("isolation needs --lengths q1,q2 with q1 > q2")
    st = isolation_stats(sub, spec.q1, spec.q2)
    _emit(args, ResultEnvelope("isolate", info, asdict(st), EXIT_OK).to_json())
    return EXIT_OK


def _cmd_sweep(args):
    _require(args, "ns", "lengths", "cs", "trials")
    workers = args.workers if args.workers is not None else _default_workers()
    try:
        cfg = SweepConfig(args.ns, args.lengths, args.cs, args.trials, args.seed, args.budget,
                          args.census_max_len, args.isolation, workers)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    rows = threshold_sweep(cfg)
    _emit(args, results_csv_text(rows))
    if args.details:
        details = [{"n": r.n, "c": r.c, "error": r.error, "census_means": r.census_means,
                    "isolation": r.isolation} for r in rows]
        atomic_write(args.details, json.dumps(details, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def _cmd_plot(args):
    _require(args, "csv")
    _emit(args, svg_plot_text(read_results_csv(args.csv)))
    return EXIT_OK


_COMMANDS = {"enumerate": _cmd_enumerate, "decide": _cmd_decide, "certify": _cmd_certify,
             "verify": _cmd_verify, "census": _cmd_census, "isolate": _cmd_isolate,
             "sweep": _cmd_sweep, "plot": _cmd_plot}


def run_command(argv: Sequence[str]) -> int:
    try:
        args = _parse(argv)
        return _COMMANDS[args.mode](args)
    except UsageError as exc:
        sys.stderr.write(f"rvdw: usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except Exception as exc:
        sys.stderr.write(f"rvdw: error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
