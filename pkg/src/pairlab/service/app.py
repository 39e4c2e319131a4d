"""FastAPI service exposing the toolkit over HTTP.

All endpoints are pure request/response computations; mathematical
violations (a failed bound, a DH mismatch) are reported in the body with
ok/match flags, never as HTTP errors. Bad inputs and desk-scale cap
overruns come back as 400.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import PairlabError
from . import ops
from .models import (
    BoundsRequest,
    BoundsResponse,
    DescentRequest,
    DescentResponse,
    DhRequest,
    DhResponse,
    DWeightRequest,
    DWeightResponse,
    LemmaRequest,
    LemmaResponse,
    ScanRequest,
    ScanResponse,
)

app = FastAPI(
    title="pairlab",
    description="Desk-scale Tate pairings, digit weights, and degree-bound scans",
    version="0.1.0",
)


@app.exception_handler(PairlabError)
async def _pairlab_error(request: Request, exc: PairlabError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/scan", response_model=ScanResponse)
def scan(req: ScanRequest) -> ScanResponse:
    return ops.scan(req)


@app.post("/dweight", response_model=DWeightResponse)
def dweight(req: DWeightRequest) -> DWeightResponse:
    return ops.dweight(req)


@app.post("/dweight/lemma", response_model=LemmaResponse)
def lemma(req: LemmaRequest) -> LemmaResponse:
    return ops.lemma(req)


@app.post("/dh/solve", response_model=DhResponse)
def dh_solve(req: DhRequest) -> DhResponse:
    return ops.dh_demo(req)


@app.post("/verify/descent", response_model=DescentResponse)
def verify_descent(req: DescentRequest) -> DescentResponse:
    return ops.verify_descent(req)


@app.post("/verify/bounds", response_model=BoundsResponse)
def verify_bounds(req: BoundsRequest) -> BoundsResponse:
    return ops.verify_bounds(req)
