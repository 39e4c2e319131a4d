"""Command-line front end.

Thin client over the service layer: every subcommand builds a request
model, calls the same handler the HTTP routes use, and formats the response
as JSON lines or RFC 4180 CSV.

Exit codes are a stable contract: 0 success / no violation, 1 a
mathematical violation was found (the counterexample is the output),
2 usage or size errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import InconclusiveError, PairlabError
from .service import ops
from .service.models import (
    BoundsRequest,
    CurveSelector,
    DescentRequest,
    DhRequest,
    DWeightRequest,
    LemmaRequest,
    ScanRequest,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _parse_q_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"cannot parse prime list {text!r}")


def _parse_curve(text: str) -> CurveSelector:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError("curve selector must be 'q,a,b,r'")
    q, a, b, r = (int(p) for p in parts)
    return CurveSelector(q=q, a=a, b=b, r=r)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _jsonl(rows: list[dict]) -> str:
    return "".join(json.dumps(row) + "\n" for row in rows)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _digits(ds: list[int]) -> str:
    return ":".join(str(d) for d in ds)


def cmd_scan(args) -> int:
    req = ScanRequest(q_list=_parse_q_list(args.q), k_max=args.kmax,
                      r_min=args.rmin, cap=args.cap)
    resp = ops.scan(req)
    rows = [r.model_dump() for r in resp.records]
    if args.format == "csv":
        header = ["q", "a", "b", "n", "r", "k", "d"]
        text = _csv_text(header, [[row[c] for c in header] for row in rows])
    else:
        text = _jsonl(rows)
    _emit(text, args.output)
    return EXIT_OK


def cmd_dweight(args) -> int:
    req = DWeightRequest(q=args.q, k=args.k, a=args.a)
    resp = ops.dweight(req)
    if args.format == "csv":
        header = ["a", "D(a)", "witness_plus", "witness_minus"]
        rows = [[e.a, e.weight, _digits(e.witness.a_digits), _digits(e.witness.b_digits)]
                for e in resp.entries]
        text = _csv_text(header, rows)
    else:
        text = _jsonl([e.model_dump() for e in resp.entries])
    _emit(text, args.output)
    return EXIT_OK


def cmd_dh_demo(args) -> int:
    sel = _parse_curve(args.curve)
    a_scalar = None if args.random else args.A
    b_scalar = None if args.random else args.B
    req = DhRequest(curve=sel, A=a_scalar, B=b_scalar, seed=args.seed)
    resp = ops.dh_demo(req)
    _emit(json.dumps(resp.model_dump()) + "\n", args.output)
    return EXIT_OK if resp.match else EXIT_VIOLATION


def cmd_verify_bounds(args) -> int:
    req = BoundsRequest(q_list=_parse_q_list(args.q), k_max=args.kmax,
                        r_min=args.rmin, cap=args.cap)
    resp = ops.verify_bounds(req)
    if args.format == "csv":
        header = list(_BOUND_COLUMNS)
        rows = []
        for rep in resp.reports:
            d = rep.model_dump()
            d["corollary_pass"] = ("" if d["corollary_pass"] is None
                                   else str(d["corollary_pass"]).lower())
            d["prop2_pass"] = str(d["prop2_pass"]).lower()
            d["prop3_pass"] = str(d["prop3_pass"]).lower()
            rows.append([d[c] for c in header])
        text = _csv_text(header, rows)
    else:
        text = _jsonl([rep.model_dump() for rep in resp.reports])
    _emit(text, args.output)
    sys.stderr.write(resp.summary + "\n")
    return EXIT_OK if resp.ok else EXIT_VIOLATION


_BOUND_COLUMNS = ("q", "a", "b", "r", "k", "d", "deg_f", "D_d", "c", "d1",
                  "D_d1", "prop2_lhs", "prop3_lhs", "corollary_lhs",
                  "prop2_pass", "prop3_pass", "corollary_pass")


def cmd_verify_lemma(args) -> int:
    resp = ops.lemma(LemmaRequest(q=args.q, k=args.k))
    _emit(json.dumps(resp.model_dump()) + "\n", args.output)
    return EXIT_OK if resp.passed else EXIT_VIOLATION


def cmd_verify_descent(args) -> int:
    req = DescentRequest(curve=_parse_curve(args.curve), f=args.f, d=args.d)
    resp = ops.verify_descent(req)
    _emit(json.dumps(resp.model_dump()) + "\n", args.output)
    return EXIT_OK if resp.passed else EXIT_VIOLATION


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _add_common(p, fmt=True):
    p.add_argument("--output", help="write to this path instead of stdout")
    if fmt:
        p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairlab",
        description="Desk-scale Tate pairings, digit weights, and degree-bound scans",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="emit pairing-friendly curve records")
    p.add_argument("--q", required=True, help="comma-separated primes, e.g. 5,7,11")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--rmin", type=int, default=3)
    p.add_argument("--cap", type=int, default=None,
                   help="bound on q^k - 1 (default: PAIRLAB_CAP env or 2^40)")
    _add_common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("dweight", help="digit-weight table or single value")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", type=int, default=None, help="single residue (omit for the full table)")
    _add_common(p)
    p.set_defaults(func=cmd_dweight)

    p = sub.add_parser("dh-demo", help="solve a DH instance via pairing inversion")
    p.add_argument("--curve", required=True, help="record selector 'q,a,b,r'")
    p.add_argument("--A", type=int, default=None)
    p.add_argument("--B", type=int, default=None)
    p.add_argument("--random", action="store_true",
                   help="draw A and B from the seeded generator")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, fmt=False)
    p.set_defaults(func=cmd_dh_demo)

    v = sub.add_parser("verify", help="run a verification suite")
    vsub = v.add_subparsers(dest="suite", required=True)

    p = vsub.add_parser("bounds", help="degree-bound scan over a corpus")
    p.add_argument("--q", required=True, help="comma-separated primes")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--rmin", type=int, default=3)
    p.add_argument("--cap", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify_bounds)

    p = vsub.add_parser("lemma", help="exhaustive D((q-1)a) <= 2 D(a) check")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_common(p, fmt=False)
    p.set_defaults(func=cmd_verify_lemma)

    p = vsub.add_parser("descent", help="semantic check of the descent construction")
    p.add_argument("--curve", required=True, help="record selector 'q,a,b,r'")
    p.add_argument("--f", choices=("x", "y", "line"), required=True)
    p.add_argument("--d", type=int, required=True)
    _add_common(p, fmt=False)
    p.set_defaults(func=cmd_verify_descent)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InconclusiveError as exc:
        sys.stderr.write(f"inconclusive: {exc}\n")
        return EXIT_USAGE
    except (PairlabError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
