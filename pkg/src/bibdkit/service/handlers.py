"""Service handlers: schema models in, schema models out.

Both transports go through these functions: the FastAPI routes wrap them
in HTTP, and the CLI calls them directly when no server URL is given.
Domain rejections (well-formed request, refused by the mathematics) are
raised as DomainRejection with a stable machine code; transport layers
translate them (HTTP 400, CLI exit codes).
"""

from __future__ import annotations

from .. import __version__
from ..bounds import bound_report
from ..designs import (
    Design,
    DesignFormatError,
    InadmissibleParamsError,
    SearchBudgetExceededError,
    construct,
    design_from_obj,
    find_resolution,
    is_affine,
    verify_design,
)
from ..params import BibdParams, ParamError, check_admissible, derive_params
from ..scanner import (
    UnknownClaimError,
    check_claims,
    finding_to_obj,
    reproduce_table,
)
from ..transforms import FullBlockError, complement_design, point_residual
from .schemas import (
    BoundItem,
    BoundsRequest,
    BoundsResponse,
    CheckItem,
    CheckRequest,
    CheckResponse,
    ComplementResponse,
    ConstructRequest,
    ConstructResponse,
    DeriveRequest,
    DeriveResponse,
    DesignPayload,
    FindingOut,
    HealthResponse,
    ParamsPayload,
    ResidualRequest,
    ResidualResponse,
    ResolveRequest,
    ResolveResponse,
    ScanRequest,
    ScanResponse,
    TableDiffOut,
    TableResponse,
    TableRowOut,
    VerifyResponse,
)


class DomainRejection(Exception):
    """A well-formed request the domain refuses, with a machine code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _params_payload(p: BibdParams) -> ParamsPayload:
    return ParamsPayload(v=p.v, b=p.b, r=p.r, k=p.k, lam=p.lam)


def _design_payload(d: Design) -> DesignPayload:
    return DesignPayload(v=d.v, blocks=[list(blk) for blk in d.blocks])


def _load_design(payload: DesignPayload) -> Design:
    try:
        return design_from_obj({"v": payload.v, "blocks": payload.blocks})
    except DesignFormatError as e:
        raise DomainRejection("invalid_design", str(e)) from e


def svc_health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


def svc_check(req: CheckRequest) -> CheckResponse:
    report = check_admissible(req.v, req.b, req.r, req.k, req.lam)
    return CheckResponse(
        checks=[
            CheckItem(name=c.name, passed=c.passed, detail=c.detail)
            for c in report.checks
        ],
        admissible=report.admissible,
    )


def svc_derive(req: DeriveRequest) -> DeriveResponse:
    try:
        p = derive_params(req.v, req.k, req.lam)
    except ParamError as e:
        raise DomainRejection(_DERIVE_CODES.get(type(e).__name__, "invalid_params"), str(e)) from e
    return DeriveResponse(params=_params_payload(p))


_DERIVE_CODES = {
    "NonIntegralError": "non_integral",
    "DegenerateBlockSizeError": "degenerate_block_size",
}


def svc_bounds(req: BoundsRequest) -> BoundsResponse:
    report = check_admissible(req.v, req.b, req.r, req.k, req.lam)
    if not report.admissible:
        detail = "; ".join(c.detail for c in report.failures)
        raise DomainRejection("inadmissible_params", detail)
    p = BibdParams(req.v, req.b, req.r, req.k, req.lam)
    rep = bound_report(p, resolvable_not_affine=req.resolvable_not_affine)
    return BoundsResponse(
        params=_params_payload(p),
        bounds=[
            BoundItem(
                name=bv.name.value,
                applicable=bv.applicable,
                value=bv.value,
                satisfied=bv.satisfied,
                reason=bv.reason,
            )
            for bv in rep.bounds
        ],
        winner=rep.winner.value,
    )


def svc_table(workers: int = 1) -> TableResponse:
    if workers < 1:
        raise DomainRejection("bad_request", f"workers must be at least 1, got {workers}")
    repro = reproduce_table(workers=workers)
    rows = [
        TableRowOut(
            label=row.label,
            v=row.params.v,
            b=row.params.b,
            r=row.params.r,
            k=row.params.k,
            lam=row.params.lam,
            khan_a=row.khan_a,
            khan_b=row.khan_b,
            bose=row.bose,
            kageyama=row.kageyama,
            winner=row.winner,
        )
        for row in repro.rows
    ]
    diffs = [
        TableDiffOut(row=d.row, column=d.column, computed=d.computed, printed=d.printed)
        for d in repro.diffs
    ]
    return TableResponse(rows=rows, diffs=diffs, table_clean=repro.table_clean)


def svc_scan(req: ScanRequest) -> ScanResponse:
    try:
        rep = check_claims(
            max_r=req.max_r,
            claims=req.claims,
            construct_budget=req.construct_budget,
            workers=req.workers,
        )
    except UnknownClaimError as e:
        raise DomainRejection("unknown_claim", str(e)) from e
    except ValueError as e:
        raise DomainRejection("bad_request", str(e)) from e
    return ScanResponse(
        claims=list(rep.claims),
        claim_ranges=dict(rep.claim_ranges),
        scanned=dict(rep.scanned),
        findings=[FindingOut.model_validate(finding_to_obj(f)) for f in rep.findings],
    )


def svc_construct(req: ConstructRequest) -> ConstructResponse:
    try:
        d = construct(req.v, req.k, req.lam, node_budget=req.budget)
    except InadmissibleParamsError as e:
        raise DomainRejection("inadmissible_params", str(e)) from e
    except SearchBudgetExceededError as e:
        return ConstructResponse(status="budget_exceeded", nodes=e.nodes)
    if d is None:
        return ConstructResponse(status="nonexistent")
    return ConstructResponse(status="found", design=_design_payload(d))


def svc_verify(payload: DesignPayload) -> VerifyResponse:
    d = _load_design(payload)
    rep = verify_design(d)
    return VerifyResponse(
        v=rep.v,
        block_count=rep.block_count,
        uniform_block_size=rep.uniform_block_size,
        constant_replication=rep.constant_replication,
        constant_pair_index=rep.constant_pair_index,
        is_bibd=rep.is_bibd,
        nontrivial=rep.nontrivial,
        params=None if rep.params is None else _params_payload(rep.params),
    )


def svc_complement(payload: DesignPayload) -> ComplementResponse:
    d = _load_design(payload)
    try:
        comp = complement_design(d)
    except FullBlockError as e:
        raise DomainRejection("full_block", str(e)) from e
    rep = verify_design(comp)
    return ComplementResponse(
        design=_design_payload(comp),
        params=None if rep.params is None else _params_payload(rep.params),
    )


def svc_residual(req: ResidualRequest) -> ResidualResponse:
    d = _load_design(req.design)
    try:
        res = point_residual(d, req.point)
    except ValueError as e:
        raise DomainRejection("point_out_of_range", str(e)) from e
    except DesignFormatError as e:
        raise DomainRejection("invalid_design", f"residual is degenerate: {e}") from e
    return ResidualResponse(
        design=_design_payload(res.design),
        removed_point=res.removed_point,
        point_labels=list(res.point_labels),
    )


def svc_resolve(req: ResolveRequest) -> ResolveResponse:
    d = _load_design(req.design)
    try:
        res = find_resolution(d, node_budget=req.budget)
    except SearchBudgetExceededError as e:
        return ResolveResponse(status="budget_exceeded", nodes=e.nodes)
    if res is None:
        return ResolveResponse(status="none")
    return ResolveResponse(
        status="resolved",
        classes=[list(cls) for cls in res.classes],
        affine=is_affine(d, res),
    )
