"""Command-line surface: JSON I/O, sweeps, and an append-only results ledger.

Every command is a thin adapter over the library API; no computation lives
here.  Payloads are emitted with sorted keys and contain no timestamps, so
repeated runs with identical inputs are byte-identical.  Ledger records (one
JSON object per line, timestamped) are the only mutable output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from typing import Any

from . import __version__
from .coset_enum import DEFAULT_MAX_COSETS, surgered_presentation, todd_coxeter
from .criterion import Slope, check_family_slope, minimal_integer_bound
from .presentations import Presentation, alexander_polynomial, homology
from .twisted_torus import TwistParams, closed_form, derive_from_diagram, verify_proof
from .wirtinger import builtin_link_L, diagram_from_json, wirtinger_presentation

MAX_COSETS_ENV = "TWISTKNOT_MAX_COSETS"


def _default_max_cosets() -> int:
    raw = os.environ.get(MAX_COSETS_ENV)
    return int(raw) if raw else DEFAULT_MAX_COSETS


def _params(args: argparse.Namespace) -> TwistParams:
    return TwistParams(args.u, args.v)


def _load_presentation(path: str) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return Presentation.from_json(json.load(fh))


def _presentation_for(args: argparse.Namespace) -> Presentation:
    if getattr(args, "presentation", None):
        return _load_presentation(args.presentation)
    model = closed_form(_params(args))
    if getattr(args, "p", None) is not None:
        slope = Slope(args.p, args.q)
        return surgered_presentation(model, slope, args.longitude)
    return model.presentation


# -- command handlers ---------------------------------------------------------


def _cmd_wirtinger(args) -> dict:
    if args.diagram:
        with open(args.diagram, "r", encoding="utf-8") as fh:
            diagram = diagram_from_json(json.load(fh))
    else:
        diagram = builtin_link_L()
    return wirtinger_presentation(diagram).to_json()


def _cmd_generate(args) -> dict:
    params = _params(args)
    model = derive_from_diagram(params) if args.mode == "derive" else closed_form(params)
    return model.to_json()


def _cmd_verify_proof(args) -> Any:
    if args.sweep:
        reports = []
        for u in range(args.umin, args.umax + 1):
            for v in range(args.vmin, args.vmax + 1):
                reports.append(verify_proof(TwistParams(u, v)).to_json())
        return reports
    return verify_proof(_params(args)).to_json()


def _cmd_check_slope(args) -> dict:
    report = check_family_slope(_params(args), Slope(args.p, args.q), args.longitude)
    return report.to_json()


def _cmd_bound(args) -> int:
    return minimal_integer_bound(_params(args), args.longitude)


def _cmd_h1(args) -> dict:
    return homology(_presentation_for(args)).to_json()


def _cmd_alexander(args) -> dict:
    return alexander_polynomial(_presentation_for(args)).to_json()


def _cmd_enumerate(args) -> dict:
    model = closed_form(_params(args))
    pres = surgered_presentation(model, Slope(args.p, args.q), args.longitude)
    return todd_coxeter(pres, args.max_cosets).to_json()


# -- parser -------------------------------------------------------------------


def _add_uv(sub, required: bool = True) -> None:
    sub.add_argument("--u", type=int, required=required, help="full twists on two strands")
    sub.add_argument("--v", type=int, required=required, help="torus parameter: type (3, 3v+2)")


def _add_slope(sub) -> None:
    sub.add_argument("--p", type=int, required=True, help="slope numerator")
    sub.add_argument("--q", type=int, required=True, help="slope denominator")


def _add_longitude(sub) -> None:
    sub.add_argument(
        "--longitude",
        choices=("paper", "corrected"),
        default="paper",
        help="which meridian correction to use for the longitude",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistknot",
        description="Knot group presentations of twisted torus knots and the "
        "non-left-orderability slope criterion.",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--ledger", metavar="FILE", help="append results to a JSONL ledger")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("wirtinger", help="Wirtinger presentation of a link diagram")
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--diagram", metavar="FILE", help="diagram JSON file")
    group.add_argument("--builtin", action="store_true", help="use the built-in link")
    s.set_defaults(handler=_cmd_wirtinger)

    s = sub.add_parser("generate", help="two-generator knot group model")
    _add_uv(s)
    s.add_argument("--mode", choices=("closed", "derive"), default="closed")
    s.set_defaults(handler=_cmd_generate)

    s = sub.add_parser("verify-proof", help="replay the derivation's identities")
    _add_uv(s, required=False)
    s.add_argument("--sweep", action="store_true", help="sweep a parameter box, JSONL output")
    s.add_argument("--umin", type=int, default=-3)
    s.add_argument("--umax", type=int, default=3)
    s.add_argument("--vmin", type=int, default=0)
    s.add_argument("--vmax", type=int, default=4)
    s.set_defaults(handler=_cmd_verify_proof)

    s = sub.add_parser("check-slope", help="criterion verdict for one slope")
    _add_uv(s)
    _add_slope(s)
    _add_longitude(s)
    s.set_defaults(handler=_cmd_check_slope)

    s = sub.add_parser("bound", help="smallest certified integer slope")
    _add_uv(s)
    _add_longitude(s)
    s.set_defaults(handler=_cmd_bound)

    s = sub.add_parser("h1", help="first homology via Smith normal form")
    _add_uv(s, required=False)
    s.add_argument("--presentation", metavar="FILE", help="presentation JSON file")
    s.add_argument("--p", type=int, help="optional surgery slope numerator")
    s.add_argument("--q", type=int, default=1, help="surgery slope denominator")
    _add_longitude(s)
    s.set_defaults(handler=_cmd_h1)

    s = sub.add_parser("alexander", help="Alexander polynomial by Fox calculus")
    _add_uv(s, required=False)
    s.add_argument("--presentation", metavar="FILE", help="presentation JSON file")
    s.set_defaults(handler=_cmd_alexander)

    s = sub.add_parser("enumerate", help="Todd-Coxeter enumeration of a filling")
    _add_uv(s)
    _add_slope(s)
    _add_longitude(s)
    s.add_argument("--max-cosets", type=int, default=None)
    s.set_defaults(handler=_cmd_enumerate)

    return parser


def _emit(payload: Any, fmt: str) -> None:
    if isinstance(payload, list):
        for item in payload:
            print(json.dumps(item, sort_keys=True))
        return
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif isinstance(payload, dict):
        for key in sorted(payload):
            print(f"{key}: {json.dumps(payload[key], sort_keys=True)}")
    else:
        print(payload)


def _ledger_params(args: argparse.Namespace) -> dict:
    skip = {"handler", "command", "format", "ledger"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def _append_ledger(path: str, command: str, params: dict, payload: Any) -> None:
    record = {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "command": command,
        "params": params,
        "result": payload,
        "version": __version__,
    }
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify-proof" and not args.sweep and (args.u is None or args.v is None):
        parser.error("verify-proof requires --u and --v unless --sweep is given")
    if args.command in ("h1", "alexander") and not getattr(args, "presentation", None):
        if args.u is None or args.v is None:
            parser.error(f"{args.command} requires --u and --v or --presentation FILE")
    if args.command == "enumerate" and args.max_cosets is None:
        args.max_cosets = _default_max_cosets()
    try:
        payload = args.handler(args)
    except (ValueError, RuntimeError, OSError, KeyError) as exc:
        module = type(exc).__module__
        qualifier = module.rsplit(".", 1)[-1] if module != "builtins" else "twistknot"
        print(f"{qualifier}: {exc}", file=sys.stderr)
        return 1
    _emit(payload, args.format)
    if args.ledger:
        records = payload if isinstance(payload, list) else [payload]
        for record in records:
            _append_ledger(args.ledger, args.command, _ledger_params(args), record)
    return 0


if __name__ == "__main__":
    sys.exit(main())
