"""FastAPI application: HTTP transport over the service handlers.

Domain rejections become HTTP 400 with {"detail": {"code", "message"}};
request-shape problems keep FastAPI's native 422.  Negative but
well-posed outcomes (nonexistence, exhausted budgets, empty scans) are
ordinary 200 payloads, since they are answers, not errors.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query

from . import handlers
from .handlers import DomainRejection
from .schemas import (
    BoundsRequest,
    BoundsResponse,
    CheckRequest,
    CheckResponse,
    ComplementResponse,
    ConstructRequest,
    ConstructResponse,
    DeriveRequest,
    DeriveResponse,
    DesignPayload,
    HealthResponse,
    ResidualRequest,
    ResidualResponse,
    ResolveRequest,
    ResolveResponse,
    ScanRequest,
    ScanResponse,
    TableResponse,
    VerifyResponse,
)

app = FastAPI(
    title="bibdkit",
    description="Block-design bound reports, table reproduction, "
    "claim scanning and small-design construction.",
    version=handlers.svc_health().version,
)


def _guard(fn, *args):
    try:
        return fn(*args)
    except DomainRejection as exc:
        raise HTTPException(
            status_code=400, detail={"code": exc.code, "message": exc.message}
        ) from exc


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return handlers.svc_health()


@app.post("/params/check", response_model=CheckResponse)
def params_check(req: CheckRequest) -> CheckResponse:
    return _guard(handlers.svc_check, req)


@app.post("/params/derive", response_model=DeriveResponse)
def params_derive(req: DeriveRequest) -> DeriveResponse:
    return _guard(handlers.svc_derive, req)


@app.post("/bounds", response_model=BoundsResponse)
def bounds(req: BoundsRequest) -> BoundsResponse:
    return _guard(handlers.svc_bounds, req)


@app.get("/table", response_model=TableResponse)
def table(workers: int = Query(default=1, ge=1)) -> TableResponse:
    return _guard(handlers.svc_table, workers)


@app.post("/scan", response_model=ScanResponse)
def scan(req: ScanRequest) -> ScanResponse:
    return _guard(handlers.svc_scan, req)


@app.post("/designs/construct", response_model=ConstructResponse)
def designs_construct(req: ConstructRequest) -> ConstructResponse:
    return _guard(handlers.svc_construct, req)


@app.post("/designs/verify", response_model=VerifyResponse)
def designs_verify(payload: DesignPayload) -> VerifyResponse:
    return _guard(handlers.svc_verify, payload)


@app.post("/designs/complement", response_model=ComplementResponse)
def designs_complement(payload: DesignPayload) -> ComplementResponse:
    return _guard(handlers.svc_complement, payload)


@app.post("/designs/residual", response_model=ResidualResponse)
def designs_residual(req: ResidualRequest) -> ResidualResponse:
    return _guard(handlers.svc_residual, req)


@app.post("/designs/resolve", response_model=ResolveResponse)
def designs_resolve(req: ResolveRequest) -> ResolveResponse:
    return _guard(handlers.svc_resolve, req)
