"""Core orchestration behind the service endpoints.

Each function turns a request model into response models by calling the
library; the FastAPI routes and the CLI are both thin clients of this layer.
Invalid inputs surface as ValueError or PairlabError subclasses; callers map
those to HTTP 400 or exit code 2.
"""

from __future__ import annotations

import os

from .. import bounds as bounds_mod
from .. import curve as curve_mod
from .. import dweight as dweight_mod
from .. import pairing as pairing_mod
from ..curve import CurveRecord, DEFAULT_SCAN_CAP, group_order, embedding_degree, is_prime
from ..dweight import DParams
from ..funcfield import make_coord, make_line
from .models import (
    BoundReportModel,
    BoundsRequest,
    BoundsResponse,
    CurveRecordModel,
    CurveSelector,
    DescentRequest,
    DescentResponse,
    DhRequest,
    DhResponse,
    DWeightEntry,
    DWeightRequest,
    DWeightResponse,
    LemmaRequest,
    LemmaResponse,
    ScanRequest,
    ScanResponse,
    WitnessModel,
)

CAP_ENV_VAR = "PAIRLAB_CAP"


def effective_cap(cap: int | None) -> int:
    """Explicit cap, else the PAIRLAB_CAP environment override, else 2^40."""
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV_VAR)
    return int(env) if env else DEFAULT_SCAN_CAP


def _record_model(rec: CurveRecord) -> CurveRecordModel:
    return CurveRecordModel(**rec.to_dict())


def resolve_record(sel: CurveSelector, cap: int | None = None) -> CurveRecord:
    """Build the CurveRecord a selector names, validating every hypothesis."""
    if not is_prime(sel.q) or sel.q < 5:
        raise ValueError(f"q = {sel.q} must be a prime >= 5")
    if not is_prime(sel.r):
        raise ValueError(f"r = {sel.r} must be prime")
    if (4 * sel.a ** 3 + 27 * sel.b ** 2) % sel.q == 0:
        raise ValueError("singular curve: 4a^3 + 27b^2 = 0 mod q")
    n = group_order(sel.q, sel.a % sel.q, sel.b % sel.q)
    if n % sel.r != 0:
        raise ValueError(f"r = {sel.r} does not divide the group order {n}")
    if n % (sel.r * sel.r) == 0:
        raise ValueError(f"r^2 divides the group order {n}; |G1| = r fails")
    k = embedding_degree(sel.q, sel.r, cap=effective_cap(cap))
    return CurveRecord(q=sel.q, a=sel.a % sel.q, b=sel.b % sel.q, n=n, r=sel.r,
                       k=k, d=(sel.q ** k - 1) // sel.r)


def scan(req: ScanRequest) -> ScanResponse:
    records = curve_mod.scan_corpus(
        req.q_list, req.k_max, req.r_min, cap=effective_cap(req.cap)
    )
    return ScanResponse(records=[_record_model(r) for r in records])


def _witness_model(wit) -> WitnessModel:
    return WitnessModel(a_digits=list(wit.a_digits), b_digits=list(wit.b_digits),
                        weight=wit.weight)


def dweight(req: DWeightRequest) -> DWeightResponse:
    params = DParams(req.q, req.k)
    residues = range(params.m) if req.a is None else [req.a % params.m]
    entries = []
    for a in residues:
        w, wit = dweight_mod.d_weight(a, params)
        entries.append(DWeightEntry(a=a, weight=w, witness=_witness_model(wit)))
    return DWeightResponse(q=req.q, k=req.k, m=params.m, entries=entries)


def lemma(req: LemmaRequest) -> LemmaResponse:
    rep = dweight_mod.check_qminus1_lemma(DParams(req.q, req.k))
    return LemmaResponse(
        q=rep.q, k=rep.k, m=rep.m, passed=rep.passed,
        max_ratio=[rep.max_ratio_num, rep.max_ratio_den],
        argmax_a=rep.argmax_a, violations=list(rep.violations),
    )


def dh_demo(req: DhRequest) -> DhResponse:
    record = resolve_record(req.curve)
    ctx = pairing_mod.build_context(record)
    if req.A is None or req.B is None:
        ra, rb = pairing_mod.random_scalars(ctx, req.seed)
        a_scalar = ra if req.A is None else req.A
        b_scalar = rb if req.B is None else req.B
    else:
        a_scalar, b_scalar = req.A, req.B
    trace = pairing_mod.dh_trace(ctx, a_scalar, b_scalar)
    return DhResponse(record=CurveRecordModel(**trace["record"]), A=trace["A"],
                      B=trace["B"], z=trace["z"], V=trace["V"], w=trace["w"],
                      answer=trace["answer"], ground_truth=trace["ground_truth"],
                      match=trace["match"])


def verify_descent(req: DescentRequest) -> DescentResponse:
    record = resolve_record(req.curve)
    ctx = pairing_mod.build_context(record)
    E = ctx.curve
    if req.f == "x":
        f = make_coord(E, "x")
    elif req.f == "y":
        f = make_coord(E, "y")
    else:
        f = make_line(E, ctx.p1, curve_mod.scalar_mul(E, ctx.p1, 2))
    params = DParams(record.q, record.k)
    result = bounds_mod.frobenius_descent(f, req.d, params)
    check = bounds_mod.verify_descent(E, f, result, list(ctx.g1))
    return DescentResponse(
        record=_record_model(record), f=req.f, d=req.d,
        weight=result.witness.weight, witness=_witness_model(result.witness),
        claimed_bound=result.claimed_bound, actual_deg=result.actual_deg,
        checked=check.checked, skipped=check.skipped,
        mismatches=len(check.mismatches), passed=check.passed,
    )


def _report_model(rep) -> BoundReportModel:
    rec = rep.record
    return BoundReportModel(
        q=rec.q, a=rec.a, b=rec.b, r=rec.r, k=rec.k, d=rep.d,
        deg_f=rep.deg_f, D_d=rep.D_d, c=rep.c, d1=rep.d1, D_d1=rep.D_d1,
        prop2_lhs=rep.prop2_lhs, prop3_lhs=rep.prop3_lhs,
        corollary_lhs=rep.corollary_lhs, prop2_pass=rep.prop2_pass,
        prop3_pass=rep.prop3_pass, corollary_pass=rep.corollary_pass,
    )


def verify_bounds(req: BoundsRequest) -> BoundsResponse:
    corpus = curve_mod.scan_corpus(
        req.q_list, req.k_max, req.r_min, cap=effective_cap(req.cap)
    )
    scan_result = bounds_mod.scan_bounds(corpus)

    def ratio(fr):
        return None if fr is None else [fr.numerator, fr.denominator]

    return BoundsResponse(
        reports=[_report_model(r) for r in scan_result.reports],
        violations=len(scan_result.violations),
        min_prop3_ratio=ratio(scan_result.min_prop3_ratio),
        min_corollary_ratio=ratio(scan_result.min_corollary_ratio),
        summary=scan_result.summary_line(),
        ok=scan_result.ok,
    )
