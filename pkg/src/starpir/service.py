"""HTTP service wrapping the core package.

Thin FastAPI layer over the same workflows the CLI uses; all request and
response payloads are plain pydantic models.  Validation problems map to
400, enumeration-budget exhaustion to 422.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .errors import BudgetExceededError, ValidationError
from .rates import rows_to_csv, series_rows
from .workflows import run_audit, run_retrieval_demo, scheme_summary

app = FastAPI(
    title="starpir",
    description=(
        "Private information retrieval schemes from star products of linear "
        "codes: scheme construction, retrieval simulation, collusion audits."
    ),
)


def _run(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except BudgetExceededError as exc:
        raise HTTPException(status_code=422, detail=f"budget exceeded: {exc}")
    except ValidationError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


class SchemeInfoRequest(BaseModel):
    code: str
    dcode: str
    plan: str = "auto"


class SchemeInfoResponse(BaseModel):
    servers: int
    storage_dimension: int
    retrieval_dimension: int
    storage_distance: Optional[int]
    retrieval_dual_distance: Optional[int]
    star_dimension: int
    dual_star_dimension: int
    rows_per_file: int
    iterations: int
    rate: str
    rate_decimal: float
    collusion: Optional[int]
    strategy: str
    notes: list[str]


class RetrieveRequest(BaseModel):
    code: str
    dcode: str
    plan: str = "auto"
    files: int
    want: int
    seed: int = 0


class RetrieveResponse(BaseModel):
    target: int
    file: list[list[int]]
    download_symbols: int
    rate: str
    verified: bool


class AuditRequest(BaseModel):
    dcode: str
    t: int = 0
    mode: str = "exact"
    coalition: Optional[list[int]] = None


class AuditResponse(BaseModel):
    code: str
    coalition_size: Optional[int] = None
    total: Optional[int] = None
    unprotected: Optional[int] = None
    protected_fraction: Optional[str] = None
    bound_count: Optional[int] = None
    tight: Optional[bool] = None
    coalition: Optional[list[int]] = None
    coalition_protected: Optional[bool] = None


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/scheme/info", response_model=SchemeInfoResponse)
def scheme_info(request: SchemeInfoRequest) -> SchemeInfoResponse:
    s = _run(scheme_summary, request.code, request.dcode, request.plan)
    return SchemeInfoResponse(
        servers=s.n,
        storage_dimension=s.storage_dimension,
        retrieval_dimension=s.retrieval_dimension,
        storage_distance=s.storage_distance,
        retrieval_dual_distance=s.retrieval_dual_distance,
        star_dimension=s.star_dimension,
        dual_star_dimension=s.dual_star_dimension,
        rows_per_file=s.rows_per_file,
        iterations=s.iterations,
        rate=f"{s.rate.numerator}/{s.rate.denominator}",
        rate_decimal=float(s.rate),
        collusion=s.collusion,
        strategy=s.strategy,
        notes=list(s.notes),
    )


@app.post("/retrieve", response_model=RetrieveResponse)
def retrieve_file(request: RetrieveRequest) -> RetrieveResponse:
    demo = _run(
        run_retrieval_demo,
        request.code,
        request.dcode,
        request.plan,
        request.files,
        request.want,
        request.seed,
    )
    return RetrieveResponse(
        target=demo.target,
        file=demo.file_rows,
        download_symbols=demo.download_symbols,
        rate=f"{demo.rate.numerator}/{demo.rate.denominator}",
        verified=demo.verified,
    )


@app.post("/audit", response_model=AuditResponse)
def audit_code(request: AuditRequest) -> AuditResponse:
    if request.coalition is None and request.t <= 0:
        raise HTTPException(
            status_code=400, detail="give t for a size audit or a coalition"
        )
    outcome = _run(
        run_audit, request.dcode, request.t, request.mode, request.coalition
    )
    if outcome.coalition is not None:
        return AuditResponse(
            code=request.dcode,
            coalition=[j + 1 for j in outcome.coalition],
            coalition_protected=outcome.coalition_protected,
        )
    r = outcome.report
    frac = (
        None
        if r.protected_fraction is None
        else f"{r.protected_fraction.numerator}/{r.protected_fraction.denominator}"
    )
    return AuditResponse(
        code=r.code,
        coalition_size=r.coalition_size,
        total=r.total,
        unprotected=r.unprotected,
        protected_fraction=frac,
        bound_count=r.bound_count,
        tight=r.tight,
    )


@app.get("/rates/{series}", response_class=PlainTextResponse)
def rates(series: str, m: int = 0, collusion: str = "1,3,7") -> str:
    levels = tuple(int(x) for x in collusion.split(",") if x)
    return _run(lambda: rows_to_csv(series_rows(series, m, levels)))
