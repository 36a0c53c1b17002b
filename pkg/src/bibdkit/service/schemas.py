"""Request and response models for the HTTP service.

The JSON field for the pair index is spelled "lambda"; the Python
attribute is `lam` because of the keyword.  Every model accepts either
spelling on input and serializes with the JSON spelling (dump by alias).
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class ApiModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)


class ParamsPayload(ApiModel):
    v: int
    b: int
    r: int
    k: int
    lam: int = Field(alias="lambda")


class CheckRequest(ApiModel):
    v: int = Field(ge=0)
    b: int = Field(ge=0)
    r: int = Field(ge=0)
    k: int = Field(ge=0)
    lam: int = Field(ge=0, alias="lambda")


class CheckItem(ApiModel):
    name: str
    passed: bool
    detail: str | None = None


class CheckResponse(ApiModel):
    checks: list[CheckItem]
    admissible: bool


class DeriveRequest(ApiModel):
    v: int
    k: int
    lam: int = Field(alias="lambda")


class DeriveResponse(ApiModel):
    params: ParamsPayload


class BoundsRequest(CheckRequest):
    resolvable_not_affine: bool = False


class BoundItem(ApiModel):
    name: str
    applicable: bool
    value: int | None = None
    satisfied: bool | None = None
    reason: str | None = None


class BoundsResponse(ApiModel):
    params: ParamsPayload
    bounds: list[BoundItem]
    winner: str


class TableRowOut(ApiModel):
    label: str
    v: int
    b: int
    r: int
    k: int
    lam: int = Field(alias="lambda")
    khan_a: int | None
    khan_b: int | None
    bose: int | None
    kageyama: int | None
    winner: str


class TableDiffOut(ApiModel):
    row: str
    column: str
    computed: int | None
    printed: int | None


class TableResponse(ApiModel):
    rows: list[TableRowOut]
    diffs: list[TableDiffOut]
    table_clean: bool


class ScanRequest(ApiModel):
    max_r: int | None = None
    claims: list[str] | None = None
    construct_budget: int = Field(default=10**6, ge=1)
    workers: int = Field(default=1, ge=1)


class DesignPayload(ApiModel):
    v: int
    blocks: list[list[int]]


class FindingOut(ApiModel):
    claim: str
    v: int
    b: int
    r: int
    k: int
    lam: int = Field(alias="lambda")
    operands: dict[str, int]
    witness: DesignPayload | None = None
    witness_note: str | None = None


class ScanResponse(ApiModel):
    claims: list[str]
    claim_ranges: dict[str, int]
    scanned: dict[str, int]
    findings: list[FindingOut]


class ConstructRequest(ApiModel):
    v: int
    k: int
    lam: int = Field(alias="lambda")
    budget: int = Field(default=10**6, ge=1)


class ConstructResponse(ApiModel):
    status: Literal["found", "nonexistent", "budget_exceeded"]
    design: DesignPayload | None = None
    nodes: int | None = None


class VerifyResponse(ApiModel):
    v: int
    block_count: int
    uniform_block_size: int | None
    constant_replication: int | None
    constant_pair_index: int | None
    is_bibd: bool
    nontrivial: bool
    params: ParamsPayload | None


class ComplementResponse(ApiModel):
    design: DesignPayload
    params: ParamsPayload | None


class ResidualRequest(ApiModel):
    design: DesignPayload
    point: int = Field(ge=0)


class ResidualResponse(ApiModel):
    design: DesignPayload
    removed_point: int
    point_labels: list[int]


class ResolveRequest(ApiModel):
    design: DesignPayload
    budget: int | None = Field(default=None, ge=1)


class ResolveResponse(ApiModel):
    status: Literal["resolved", "none", "budget_exceeded"]
    classes: list[list[int]] | None = None
    affine: bool | None = None
    nodes: int | None = None


class HealthResponse(ApiModel):
    status: str
    version: str
