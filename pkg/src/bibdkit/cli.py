"""Command-line surface.

Every command is a thin client of the service handlers: by default they
run in process, with --server URL the same requests go over HTTP to a
running `bibdkit serve` instance, producing identical output.  The data
stream (stdout) carries only the requested payload; diagnostics go to
stderr.  Exit codes: 0 success / affirmative, 1 negative domain outcome,
2 usage or transport error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import httpx

from .designs import Design, DesignFormatError, design_from_obj, design_to_json
from .params import BibdParams
from .scanner import ClaimFinding, ComputedRow, findings_jsonl, table_csv
from .service import handlers
from .service import schemas as sc
from .service.handlers import DomainRejection

# rejection codes whose cause is a bad invocation rather than a negative
# mathematical answer
_USAGE_CODES = frozenset(
    {"unknown_claim", "bad_request", "point_out_of_range", "invalid_design"}
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# transports


class LocalClient:
    """In-process transport: calls the service handlers directly."""

    def check(self, req: sc.CheckRequest) -> sc.CheckResponse:
        return handlers.svc_check(req)

    def bounds(self, req: sc.BoundsRequest) -> sc.BoundsResponse:
        return handlers.svc_bounds(req)

    def table(self, workers: int) -> sc.TableResponse:
        return handlers.svc_table(workers)

    def scan(self, req: sc.ScanRequest) -> sc.ScanResponse:
        return handlers.svc_scan(req)

    def construct(self, req: sc.ConstructRequest) -> sc.ConstructResponse:
        return handlers.svc_construct(req)

    def verify(self, payload: sc.DesignPayload) -> sc.VerifyResponse:
        return handlers.svc_verify(payload)

    def complement(self, payload: sc.DesignPayload) -> sc.ComplementResponse:
        return handlers.svc_complement(payload)

    def residual(self, req: sc.ResidualRequest) -> sc.ResidualResponse:
        return handlers.svc_residual(req)

    def resolve(self, req: sc.ResolveRequest) -> sc.ResolveResponse:
        return handlers.svc_resolve(req)


class RemoteClient:
    """HTTP transport against a running service."""

    def __init__(self, base_url: str):
        self.base = base_url.rstrip("/")

    def _request(self, method: str, path: str, out_type, body=None, params=None):
        payload = None if body is None else body.model_dump(mode="json", by_alias=True)
        with httpx.Client(timeout=600.0) as client:
            resp = client.request(method, self.base + path, json=payload, params=params)
        if resp.status_code == 400:
            detail = resp.json().get("detail", {})
            raise DomainRejection(
                detail.get("code", "bad_request"), detail.get("message", resp.text)
            )
        if resp.status_code == 422:
            raise UsageError(f"request rejected by server: {resp.text}")
        resp.raise_for_status()
        return out_type.model_validate(resp.json())

    def check(self, req: sc.CheckRequest) -> sc.CheckResponse:
        return self._request("POST", "/params/check", sc.CheckResponse, body=req)

    def bounds(self, req: sc.BoundsRequest) -> sc.BoundsResponse:
        return self._request("POST", "/bounds", sc.BoundsResponse, body=req)

    def table(self, workers: int) -> sc.TableResponse:
        return self._request("GET", "/table", sc.TableResponse, params={"workers": workers})

    def scan(self, req: sc.ScanRequest) -> sc.ScanResponse:
        return self._request("POST", "/scan", sc.ScanResponse, body=req)

    def construct(self, req: sc.ConstructRequest) -> sc.ConstructResponse:
        return self._request("POST", "/designs/construct", sc.ConstructResponse, body=req)

    def verify(self, payload: sc.DesignPayload) -> sc.VerifyResponse:
        return self._request("POST", "/designs/verify", sc.VerifyResponse, body=payload)

    def complement(self, payload: sc.DesignPayload) -> sc.ComplementResponse:
        return self._request("POST", "/designs/complement", sc.ComplementResponse, body=payload)

    def residual(self, req: sc.ResidualRequest) -> sc.ResidualResponse:
        return self._request("POST", "/designs/residual", sc.ResidualResponse, body=req)

    def resolve(self, req: sc.ResolveRequest) -> sc.ResolveResponse:
        return self._request("POST", "/designs/resolve", sc.ResolveResponse, body=req)


def _client(args):
    return RemoteClient(args.server) if getattr(args, "server", None) else LocalClient()


# ---------------------------------------------------------------------------
# rendering helpers


def _aligned(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = [
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    ]
    return "\n".join(lines) + "\n"


def _json_dump(model) -> str:
    return model.model_dump_json(indent=2, by_alias=True) + "\n"


def _dash(value) -> str:
    return "-" if value is None else str(value)


def _yesno(flag: bool | None) -> str:
    if flag is None:
        return "-"
    return "yes" if flag else "no"


def _require_format(fmt: str, allowed: tuple[str, ...]) -> None:
    if fmt not in allowed:
        raise UsageError(
            f"--format {fmt} is not supported here; choose from {', '.join(allowed)}"
        )


def _read_design(path: str) -> sc.DesignPayload:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read design file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"design file {path} is not valid JSON: {e}") from e
    if not isinstance(obj, dict) or set(obj) != {"v", "blocks"}:
        raise UsageError(
            f"design file {path} must be an object with exactly the keys "
            '"v" and "blocks"'
        )
    return sc.DesignPayload(v=obj["v"], blocks=obj["blocks"])


def _payload_to_design(payload: sc.DesignPayload) -> Design:
    return design_from_obj({"v": payload.v, "blocks": payload.blocks})


def _write_design(path: str, payload: sc.DesignPayload) -> None:
    text = design_to_json(_payload_to_design(payload))
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"cannot write design file {path}: {e}") from e
    print(f"wrote design to {path}", file=sys.stderr)


def _block_lines(payload: sc.DesignPayload) -> str:
    return "".join(" ".join(str(x) for x in blk) + "\n" for blk in payload.blocks)


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    _require_format(args.format, ("table", "json"))
    req = sc.CheckRequest(v=args.v, b=args.b, r=args.r, k=args.k, lam=args.lam)
    resp = _client(args).check(req)
    if args.format == "json":
        sys.stdout.write(_json_dump(resp))
    else:
        rows = [["check", "result", "detail"]]
        rows += [
            [c.name, "pass" if c.passed else "FAIL", c.detail or ""]
            for c in resp.checks
        ]
        sys.stdout.write(_aligned(rows))
        sys.stdout.write(f"admissible: {_yesno(resp.admissible)}\n")
    return 0 if resp.admissible else 1


def cmd_bounds(args) -> int:
    _require_format(args.format, ("table", "json"))
    req = sc.BoundsRequest(
        v=args.v,
        b=args.b,
        r=args.r,
        k=args.k,
        lam=args.lam,
        resolvable_not_affine=args.resolvable_not_affine,
    )
    resp = _client(args).bounds(req)
    if args.format == "json":
        sys.stdout.write(_json_dump(resp))
    else:
        rows = [["bound", "applicable", "value", "satisfied", "note"]]
        rows += [
            [
                b.name,
                _yesno(b.applicable),
                _dash(b.value),
                _yesno(b.satisfied),
                b.reason or "",
            ]
            for b in resp.bounds
        ]
        sys.stdout.write(_aligned(rows))
        winner_value = next(b.value for b in resp.bounds if b.name == resp.winner)
        sys.stdout.write(f"winner: {resp.winner} = {winner_value}\n")
    return 0


def _rows_to_computed(resp: sc.TableResponse) -> list[ComputedRow]:
    return [
        ComputedRow(
            label=row.label,
            params=BibdParams(row.v, row.b, row.r, row.k, row.lam),
            khan_a=row.khan_a,
            khan_b=row.khan_b,
            bose=row.bose,
            kageyama=row.kageyama,
            winner=row.winner,
        )
        for row in resp.rows
    ]


def cmd_table(args) -> int:
    _require_format(args.format, ("table", "csv", "json"))
    resp = _client(args).table(args.workers)
    code = 0 if resp.table_clean else 1
    if args.diff_only:
        if args.format == "json":
            diffs = [d.model_dump(by_alias=True) for d in resp.diffs]
            sys.stdout.write(json.dumps(diffs, indent=2) + "\n")
        elif args.format == "csv":
            lines = ["row,column,computed,printed"]
            lines += [
                f"{d.row},{d.column},{_dash(d.computed)},{_dash(d.printed)}"
                for d in resp.diffs
            ]
            sys.stdout.write("\n".join(lines) + "\n")
        else:
            for d in resp.diffs:
                sys.stdout.write(
                    f"diff {d.row}.{d.column}: computed {_dash(d.computed)}"
                    f" != printed {_dash(d.printed)}\n"
                )
        return code
    if args.format == "json":
        sys.stdout.write(_json_dump(resp))
    elif args.format == "csv":
        sys.stdout.write(table_csv(_rows_to_computed(resp)))
    else:
        rows = [["no", "v", "b", "r", "k", "lambda", "part_a", "part_b", "bose", "kageyama", "winner"]]
        rows += [
            [
                row.label,
                str(row.v),
                str(row.b),
                str(row.r),
                str(row.k),
                str(row.lam),
                _dash(row.khan_a),
                _dash(row.khan_b),
                _dash(row.bose),
                _dash(row.kageyama),
                row.winner,
            ]
            for row in resp.rows
        ]
        sys.stdout.write(_aligned(rows))
        for d in resp.diffs:
            sys.stdout.write(
                f"diff {d.row}.{d.column}: computed {_dash(d.computed)}"
                f" != printed {_dash(d.printed)}\n"
            )
        sys.stdout.write(
            "published rows: clean\n" if resp.table_clean else "published rows: DIFFS\n"
        )
    return code


def _findings_from_response(resp: sc.ScanResponse) -> list[ClaimFinding]:
    out = []
    for f in resp.findings:
        witness = None
        if f.witness is not None:
            witness = design_from_obj({"v": f.witness.v, "blocks": f.witness.blocks})
        out.append(
            ClaimFinding(
                claim=f.claim,
                params=BibdParams(f.v, f.b, f.r, f.k, f.lam),
                operands=dict(f.operands),
                witness=witness,
                witness_note=f.witness_note,
            )
        )
    return out


def cmd_scan(args) -> int:
    _require_format(args.format, ("table", "json"))
    claims = None
    if args.claims:
        claims = [c for chunk in args.claims for c in chunk.split(",") if c]
    req = sc.ScanRequest(
        max_r=args.max_r,
        claims=claims,
        construct_budget=args.construct_budget,
        workers=args.workers,
    )
    resp = _client(args).scan(req)
    if args.format == "json":
        sys.stdout.write(findings_jsonl(_findings_from_response(resp)))
    else:
        rows = [["claim", "r-max", "scanned", "findings"]]
        per_claim = {c: 0 for c in resp.claims}
        for f in resp.findings:
            per_claim[f.claim] += 1
        rows += [
            [c, str(resp.claim_ranges[c]), str(resp.scanned[c]), str(per_claim[c])]
            for c in resp.claims
        ]
        sys.stdout.write(_aligned(rows))
        for f in resp.findings:
            ops = ", ".join(f"{key} = {val}" for key, val in f.operands.items())
            if f.witness is not None:
                tail = f"; witness: design with {len(f.witness.blocks)} blocks"
            elif f.witness_note is not None:
                tail = f"; witness: none ({f.witness_note})"
            else:
                tail = ""
            sys.stdout.write(
                f"finding {f.claim} at (v, b, r, k, lambda) = "
                f"({f.v}, {f.b}, {f.r}, {f.k}, {f.lam}): {ops}{tail}\n"
            )
    return 1 if resp.findings else 0


def cmd_construct(args) -> int:
    _require_format(args.format, ("table", "json"))
    req = sc.ConstructRequest(v=args.v, k=args.k, lam=args.lam, budget=args.budget)
    resp = _client(args).construct(req)
    if resp.status == "found":
        if args.out:
            _write_design(args.out, resp.design)
        elif args.format == "json":
            sys.stdout.write(_json_dump(resp))
        else:
            sys.stdout.write(
                f"found design on v = {resp.design.v} points, "
                f"{len(resp.design.blocks)} blocks:\n"
            )
            sys.stdout.write(_block_lines(resp.design))
        return 0
    if args.format == "json":
        sys.stdout.write(_json_dump(resp))
    elif resp.status == "nonexistent":
        sys.stdout.write("no such design (exhaustive search completed)\n")
    else:
        sys.stdout.write(
            f"search budget exhausted after {resp.nodes} nodes; existence undecided\n"
        )
    return 1


def cmd_verify(args) -> int:
    _require_format(args.format, ("table", "json"))
    resp = _client(args).verify(_read_design(args.file))
    if args.format == "json":
        sys.stdout.write(_json_dump(resp))
    else:
        def const(value) -> str:
            return "not constant" if value is None else str(value)

        params = "-"
        if resp.params is not None:
            p = resp.params
            params = f"({p.v}, {p.b}, {p.r}, {p.k}, {p.lam})"
        sys.stdout.write(
            f"v: {resp.v}\n"
            f"blocks: {resp.block_count}\n"
            f"uniform block size: {const(resp.uniform_block_size)}\n"
            f"constant replication: {const(resp.constant_replication)}\n"
            f"constant pair index: {const(resp.constant_pair_index)}\n"
            f"bibd: {_yesno(resp.is_bibd)}\n"
            f"nontrivial: {_yesno(resp.nontrivial)}\n"
            f"params: {params}\n"
        )
    return 0 if resp.is_bibd else 1


def cmd_complement(args) -> int:
    _require_format(args.format, ("table", "json"))
    resp = _client(args).complement(_read_design(args.file))
    if args.out:
        _write_design(args.out, resp.design)
    elif args.format == "json":
        sys.stdout.write(_json_dump(resp))
    else:
        if resp.params is not None:
            p = resp.params
            sys.stdout.write(
                f"complement is a 2-({p.v}, {p.b}, {p.r}, {p.k}, {p.lam}) design:\n"
            )
        else:
            sys.stdout.write(
                f"complement on v = {resp.design.v} points, "
                f"{len(resp.design.blocks)} blocks (not a 2-design):\n"
            )
        sys.stdout.write(_block_lines(resp.design))
    return 0


def cmd_residual(args) -> int:
    _require_format(args.format, ("table", "json"))
    req = sc.ResidualRequest(design=_read_design(args.file), point=args.point)
    resp = _client(args).residual(req)
    if args.out:
        _write_design(args.out, resp.design)
    elif args.format == "json":
        sys.stdout.write(_json_dump(resp))
    else:
        sys.stdout.write(
            f"residual after removing point {resp.removed_point}: "
            f"v = {resp.design.v}, {len(resp.design.blocks)} blocks\n"
        )
        sys.stdout.write(
            "point labels: "
            + " ".join(str(x) for x in resp.point_labels)
            + "\n"
        )
        sys.stdout.write(_block_lines(resp.design))
    return 0


def cmd_resolve(args) -> int:
    _require_format(args.format, ("table", "json"))
    req = sc.ResolveRequest(design=_read_design(args.file), budget=args.budget)
    resp = _client(args).resolve(req)
    if args.format == "json":
        sys.stdout.write(_json_dump(resp))
    elif resp.status == "resolved":
        sys.stdout.write(
            f"resolved: {len(resp.classes)} parallel classes, "
            f"affine: {_yesno(resp.affine)}\n"
        )
        for i, cls in enumerate(resp.classes):
            sys.stdout.write(f"class {i}: " + " ".join(str(b) for b in cls) + "\n")
    elif resp.status == "none":
        sys.stdout.write("not resolvable (exhaustive search completed)\n")
    else:
        sys.stdout.write(
            f"search budget exhausted after {resp.nodes} nodes; "
            "resolvability undecided\n"
        )
    return 0 if resp.status == "resolved" else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# ---------------------------------------------------------------------------
# parser


def _int_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")


def _nonneg_int(text: str) -> int:
    value = _int_arg(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be nonnegative")
    return value


def _pos_int(text: str) -> int:
    value = _int_arg(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return value


def _add_quintuple(sub) -> None:
    sub.add_argument("v", type=_nonneg_int)
    sub.add_argument("b", type=_nonneg_int)
    sub.add_argument("r", type=_nonneg_int)
    sub.add_argument("k", type=_nonneg_int)
    sub.add_argument("lam", metavar="lambda", type=_nonneg_int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bibdkit",
        description="Block-design bound reports, table reproduction, claim "
        "scanning and small-design construction.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("table", "csv", "json"),
        default="table",
        help="output format (default: table)",
    )
    common.add_argument(
        "--server",
        metavar="URL",
        default=None,
        help="send the request to a running service instead of computing in process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="admissibility report for a quintuple")
    _add_quintuple(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bounds", parents=[common], help="all block-count bounds for a quintuple")
    _add_quintuple(p)
    p.add_argument(
        "--resolvable-not-affine",
        action="store_true",
        help="assert the parameters belong to a resolvable, non-affine design",
    )
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", parents=[common], help="recompute the embedded comparison table")
    p.add_argument("--diff-only", action="store_true", help="print only discrepancies")
    p.add_argument("--workers", type=_pos_int, default=1, help="thread count (default 1)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("scan", parents=[common], help="stress-test stated claims over admissible quintuples")
    p.add_argument("--max-r", type=_int_arg, default=None, help="replication ceiling (default: per-claim)")
    p.add_argument(
        "--claims",
        action="append",
        metavar="LIST",
        help="comma-separated claim ids (default: all claims)",
    )
    p.add_argument(
        "--construct-budget",
        type=_pos_int,
        default=10**6,
        help="node budget for witness construction (default 1000000)",
    )
    p.add_argument("--workers", type=_pos_int, default=1, help="thread count (default 1)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("construct", parents=[common], help="exhaustive search for a design")
    p.add_argument("v", type=_nonneg_int)
    p.add_argument("k", type=_nonneg_int)
    p.add_argument("lam", metavar="lambda", type=_nonneg_int)
    p.add_argument("--budget", type=_pos_int, default=10**6, help="node budget (default 1000000)")
    p.add_argument("--out", metavar="FILE", default=None, help="write the design file here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="verification report for a design file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("complement", parents=[common], help="complement of a design file")
    p.add_argument("file")
    p.add_argument("--out", metavar="FILE", default=None, help="write the design file here")
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("residual", parents=[common], help="drop a point and all blocks through it")
    p.add_argument("file")
    p.add_argument("--point", type=_nonneg_int, required=True, help="point to remove")
    p.add_argument("--out", metavar="FILE", default=None, help="write the design file here")
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("resolve", parents=[common], help="search for a resolution into parallel classes")
    p.add_argument("file")
    p.add_argument("--budget", type=_pos_int, default=None, help="optional node budget")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=_pos_int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DomainRejection as e:
        print(f"error[{e.code}]: {e.message}", file=sys.stderr)
        return 2 if e.code in _USAGE_CODES else 1
    except DesignFormatError as e:
        print(f"error[invalid_design]: {e}", file=sys.stderr)
        return 2
    except httpx.HTTPError as e:
        print(f"error[transport]: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
