"""Pydantic request/response schemas for the HTTP service and the CLI.

Wire conventions: field elements are coefficient lists (low degree first),
points are [x_coeffs, y_coeffs] pairs with null for the point at infinity,
and exact ratios travel as [numerator, denominator] integer pairs.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class CurveRecordModel(BaseModel):
    q: int
    a: int
    b: int
    n: int
    r: int
    k: int
    d: int


class CurveSelector(BaseModel):
    """Identifies one corpus record by curve and chosen prime r."""

    q: int
    a: int
    b: int
    r: int


class ScanRequest(BaseModel):
    q_list: list[int]
    k_max: int = Field(ge=1)
    r_min: int = Field(default=3, ge=2)
    cap: Optional[int] = None


class ScanResponse(BaseModel):
    records: list[CurveRecordModel]


class WitnessModel(BaseModel):
    a_digits: list[int]
    b_digits: list[int]
    weight: int


class DWeightRequest(BaseModel):
    q: int = Field(ge=2)
    k: int = Field(ge=1)
    a: Optional[int] = None  # omitted: full table


class DWeightEntry(BaseModel):
    a: int
    weight: int
    witness: WitnessModel


class DWeightResponse(BaseModel):
    q: int
    k: int
    m: int
    entries: list[DWeightEntry]


class LemmaRequest(BaseModel):
    q: int = Field(ge=2)
    k: int = Field(ge=1)


class LemmaResponse(BaseModel):
    q: int
    k: int
    m: int
    passed: bool
    max_ratio: list[int]  # [num, den]
    argmax_a: int
    violations: list[int]


class DhRequest(BaseModel):
    curve: CurveSelector
    A: Optional[int] = None  # omitted: drawn from the seeded generator
    B: Optional[int] = None
    seed: int = 0


class DhResponse(BaseModel):
    record: CurveRecordModel
    A: int
    B: int
    z: list[int]
    V: Optional[list[list[int]]]
    w: list[int]
    answer: Optional[list[list[int]]]
    ground_truth: Optional[list[list[int]]]
    match: bool


class DescentRequest(BaseModel):
    curve: CurveSelector
    f: Literal["x", "y", "line"]
    d: int


class DescentResponse(BaseModel):
    record: CurveRecordModel
    f: str
    d: int
    weight: int
    witness: WitnessModel
    claimed_bound: int
    actual_deg: int
    checked: int
    skipped: int
    mismatches: int
    passed: bool


class BoundReportModel(BaseModel):
    q: int
    a: int
    b: int
    r: int
    k: int
    d: int
    deg_f: int
    D_d: int
    c: int
    d1: int
    D_d1: int
    prop2_lhs: int
    prop3_lhs: int
    corollary_lhs: int
    prop2_pass: bool
    prop3_pass: bool
    corollary_pass: Optional[bool]


class BoundsRequest(BaseModel):
    q_list: list[int]
    k_max: int = Field(ge=1)
    r_min: int = Field(default=3, ge=2)
    cap: Optional[int] = None


class BoundsResponse(BaseModel):
    reports: list[BoundReportModel]
    violations: int
    min_prop3_ratio: Optional[list[int]]
    min_corollary_ratio: Optional[list[int]]
    summary: str
    ok: bool
