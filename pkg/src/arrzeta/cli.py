"""Command-line front end.

Subcommands: lattice | zeta | poles | certify | conjecture | eval | verify.
Reports are JSON by default (all numbers as exact "p/q" strings, stable key
order) or plain text tables with --format text.

Exit codes: 0 success, 1 invalid input, 2 unsupported operation,
3 no certificate found / certificate does not verify.
The environment variable ARRZETA_WORKERS (default 1) sets the worker count
for the certificate search; output does not depend on it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import aomoto, conjecture, zeta
from .arrangement import (
    arrangement_from_dict,
    arrangement_to_dict,
    lattice_to_dict,
    load_arrangement,
    _frac_str,
)
from .errors import ArrZetaError, InvalidInputError, PoleError, UnsupportedError
from .ratfunc import parse_expression

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNSUPPORTED = 2
EXIT_NO_CERTIFICATE = 3


def _emit(obj: dict, fmt: str, text_renderer=None) -> None:
    if fmt == "json" or text_renderer is None:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text_renderer(obj))


def _workers() -> int:
    raw = os.environ.get("ARRZETA_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidInputError(f"ARRZETA_WORKERS must be an integer, got {raw!r}")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not a rational number: {text!r}") from exc


# ---------------------------------------------------------------------------
# text renderers


def _lattice_text(obj) -> str:
    lines = [f"rank {obj['rank']}  d {obj['d']}  edges {len(obj['edges'])}"]
    lines.append(f"{'indices':<20}{'codim':>6}{'mult':>6}{'dense':>7}{'good':>6}")
    for e in obj["edges"]:
        good = "-" if e["good"] is None else ("yes" if e["good"] else "no")
        dense = "yes" if e["dense"] else "no"
        lines.append(f"{str(e['indices']):<20}{e['codim']:>6}{e['mult']:>6}{dense:>7}{good:>6}")
    return "\n".join(lines)


def _zeta_text(obj) -> str:
    lines = [f"Z(s) = {obj['zeta']['string']}"]
    lines.append("candidate poles: " + ", ".join(c["pole"] for c in obj["candidate_poles"]))
    for a in obj["actual_poles"]:
        fa, fb = a["factor"]
        factor = ("s" if fa == 1 else f"{fa}s") + (f" + {fb}" if fb >= 0 else f" - {-fb}")
        extra = "" if a["coefficient"] is None else f"  coefficient {a['coefficient']} at ({factor})"
        lines.append(f"pole {a['pole']}  order {a['order']}{extra}")
    flags = obj["flags"]
    lines.append(
        f"center: dense {flags['center_dense']}, good {flags['center_good']}, "
        f"pole order {flags['center_pole_order']}"
    )
    return "\n".join(lines)


def _conjecture_text(obj) -> str:
    lines = [f"verdict: {obj['verdict']}  (moderate type: {obj['moderate_type']})"]
    lines.append(f"{'edge':<18}{'root':>8}{'case':>22}{'outcome':>11}")
    for e in obj["edges"]:
        case = e["case"] or "-"
        lines.append(f"{str(e['edge']):<18}{e['root']:>8}{case:>22}{e['outcome']:>11}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_lattice(args) -> int:
    arr = load_arrangement(args.input)
    _emit(lattice_to_dict(arr), args.format, _lattice_text)
    return EXIT_OK


def _cmd_zeta(args) -> int:
    arr = load_arrangement(args.input)
    report = zeta.pole_report(arr)
    _emit(report.to_dict(), args.format, _zeta_text)
    return EXIT_OK


def _cmd_poles(args) -> int:
    arr = load_arrangement(args.input)
    candidates = [c.to_dict() for c in zeta.candidate_poles(arr)]
    obj: dict = {"candidate_poles": candidates}
    if arr.is_central:
        from .arrangement import essentialize

        if essentialize(arr).n <= 3:
            report = zeta.pole_report(arr)
            obj["actual_poles"] = [a.to_dict() for a in report.actual]
    _emit(obj, args.format)
    return EXIT_OK


def _cmd_certify(args) -> int:
    arr = load_arrangement(args.input)
    k = args.k
    if args.root is not None:
        target = _parse_fraction(args.root)
        k_frac = -target * arr.d
        if k_frac.denominator != 1 or k_frac <= 0:
            raise InvalidInputError(
                f"root {args.root} is not of the form -k/d for this arrangement (d = {arr.d})"
            )
        k = int(k_frac)
    cert = aomoto.certify_root(arr, k=k, convention=args.convention, workers=_workers())
    if cert is None:
        _emit({"certificate": None, "root": _frac_str(Fraction(-k, arr.d))}, args.format)
        return EXIT_NO_CERTIFICATE
    obj = {"arrangement": arrangement_to_dict(arr), "certificate": cert.to_dict()}
    _emit(obj, args.format)
    return EXIT_OK


def _cmd_conjecture(args) -> int:
    arr = load_arrangement(args.input)
    report = conjecture.certify_dense_edges(arr)
    _emit(report.to_dict(), args.format, _conjecture_text)
    return EXIT_OK


def _cmd_eval(args) -> int:
    rf = parse_expression(args.expression)
    if args.at is not None:
        value = rf.eval(_parse_fraction(args.at))
        _emit({"value": _frac_str(value), "at": args.at}, args.format)
    else:
        _emit(rf.to_dict(), args.format)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.certificate == "-":
        raw = sys.stdin.read()
    else:
        try:
            with open(args.certificate) as fh:
                raw = fh.read()
        except OSError as exc:
            raise InvalidInputError(f"cannot read {args.certificate}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"certificate is not valid JSON: {exc}") from exc
    if args.arrangement is not None:
        arr = load_arrangement(args.arrangement)
    elif isinstance(data, dict) and "arrangement" in data:
        arr = arrangement_from_dict(data["arrangement"])
    else:
        raise InvalidInputError("no arrangement: embed one in the certificate or pass --arrangement")
    cert_data = data.get("certificate", data) if isinstance(data, dict) else data
    cert = aomoto.certificate_from_dict(cert_data)
    ok, results = aomoto.verify_certificate(arr, cert)
    _emit(
        {"verified": ok, "checks": [{"name": n, "passed": p} for n, p in results]},
        args.format,
    )
    return EXIT_OK if ok else EXIT_NO_CERTIFICATE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrzeta",
        description="Exact zeta functions and Bernstein-Sato root certificates "
        "for rational hyperplane arrangements.",
    )
    parser.add_argument(
        "--format", choices=("json", "text"), default="json", help="report format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="edges with density and goodness flags")
    p.add_argument("input", help="arrangement JSON file")
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("zeta", help="closed-form local zeta function and pole report")
    p.add_argument("input")
    p.set_defaults(func=_cmd_zeta)

    p = sub.add_parser("poles", help="candidate poles (any rank) and actual poles (rank <= 3)")
    p.add_argument("input")
    p.set_defaults(func=_cmd_poles)

    p = sub.add_parser("certify", help="search for a Bernstein-Sato root certificate")
    p.add_argument("input")
    p.add_argument("--k", type=int, default=3, help="certify the root -k/d (default k = 3)")
    p.add_argument("--root", help="certify this root (overrides --k), e.g. -1/3")
    p.add_argument(
        "--convention",
        choices=(aomoto.CONVENTION_DEFAULT, aomoto.CONVENTION_ALT),
        default=aomoto.CONVENTION_DEFAULT,
        help="weight-subset size convention",
    )
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("conjecture", help="per-dense-edge certification report")
    p.add_argument("input")
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("eval", help="evaluate or canonicalize a rational expression in s")
    p.add_argument("expression")
    p.add_argument("--at", help="evaluate at this rational point, e.g. -1/2")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verify", help="replay a serialized certificate ('-' reads stdin)")
    p.add_argument("certificate")
    p.add_argument("--arrangement", help="arrangement file (optional if embedded)")
    p.set_defaults(func=_cmd_verify)
    return parser


def _merge_option_values(argv):
    """Rewrite ['--at', '-1/2'] as ['--at=-1/2'] so values like -1/2 survive argparse."""
    merged = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in ("--at", "--root") and i + 1 < len(argv):
            merged.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            merged.append(tok)
    return merged


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_option_values(list(argv)))
    try:
        return args.func(args)
    except (InvalidInputError, PoleError) as exc:
        print(json.dumps({"error": {"code": "invalid-input", "message": str(exc)}}))
        return EXIT_INVALID
    except UnsupportedError as exc:
        print(json.dumps({"error": {"code": "unsupported", "message": str(exc)}}))
        return EXIT_UNSUPPORTED
    except ArrZetaError as exc:  # internal check failures: report, fail loudly
        print(json.dumps({"error": {"code": "internal", "message": str(exc)}}))
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
