"""Frobenius descent of f^d to a single function on the base-field torsion,
with semantic verification, and exact integer verifiers for the degree lower
bounds across a curve corpus.

The descent replaces f^d on G1 by F = prod_i twist(f, i)^{a_i} *
prod_i twist(1/f, i)^{b_i} where (a_i, b_i) is a minimal digit witness for d
mod q^k - 1. Because Frobenius fixes base-field points, F agrees with f^d on
G1 wherever both are defined and f is nonzero, and deg F is at most
deg(f) * D(d). Eager divisor cancellation can push deg F strictly below that
product when twisted supports collide; the gap is reported, never hidden.

Bound checks compare 6*lhs >= r and 12*lhs >= r in exact integers. The
halved threshold only applies at embedding degree k >= 2 (the
multiply-by-(q-1) argument needs a nontrivial extension), so k = 1 records
carry no verdict for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curve import Curve, CurvePoint, CurveRecord, point_add
from .dweight import DParams, DigitWitness, d_weight, distance_table
from .errors import DomainError, InconclusiveError, PoleError, IndeterminateError
from .funcfield import (
    TrackedFunction,
    evaluate,
    func_inv,
    func_mul,
    func_pow,
    make_const,
    twist,
)
from .pairing import PairingContext

_MODES = ("prop2", "prop3", "corollary")


@dataclass(frozen=True, eq=False)
class DescentResult:
    """Outcome of one descent: the function F, the witness used, the claimed
    degree bound deg(f)*D(d), and the exact degree after cancellation."""

    func: TrackedFunction
    d: int
    params: DParams
    witness: DigitWitness
    claimed_bound: int
    actual_deg: int

    @property
    def cancellation(self) -> int:
        return self.claimed_bound - self.actual_deg


def frobenius_descent(f: TrackedFunction, d: int, params: DParams) -> DescentResult:
    """Build F from coefficient-twisted copies of f using a minimal digit
    witness for d; F matches f^d on base-field points of order dividing
    q^k - 1 in the multiplicative sense."""
    fp = f.curve.params
    if params.q != fp.q or params.k != fp.k:
        raise ValueError("digit frame does not match the function's field")
    weight, wit = d_weight(d, params)
    factors = []
    finv = None
    for i in range(params.k):
        if wit.a_digits[i]:
            factors.append(func_pow(twist(f, i), wit.a_digits[i]))
        if wit.b_digits[i]:
            if finv is None:
                finv = func_inv(f)
            factors.append(func_pow(twist(finv, i), wit.b_digits[i]))
    if not factors:
        F = make_const(f.curve, 1)
    else:
        F = factors[0]
        for g in factors[1:]:
            F = func_mul(F, g)
    claimed = f.deg * weight
    if F.deg > claimed:
        raise DomainError("descent degree exceeded deg(f)*D(d); divisor bookkeeping broken")
    return DescentResult(func=F, d=d, params=params, witness=wit,
                         claimed_bound=claimed, actual_deg=F.deg)


@dataclass(frozen=True)
class DescentCheck:
    """Pointwise comparison of F against f^d over G1."""

    checked: int
    skipped: int
    mismatches: tuple
    passed: bool


def verify_descent(
    E: Curve, f: TrackedFunction, result: DescentResult, g1_points: list[CurvePoint]
) -> DescentCheck:
    """Evaluate F and f^d at every point of G1 where both are defined and f
    is nonzero; zero mismatches means the descent identity holds there."""
    checked = 0
    skipped = 0
    mismatches = []
    for P in g1_points:
        try:
            fv = evaluate(f, P)
        except (PoleError, IndeterminateError):
            skipped += 1
            continue
        if fv.is_zero:
            skipped += 1
            continue
        try:
            Fv = evaluate(result.func, P)
        except (PoleError, IndeterminateError):
            skipped += 1
            continue
        checked += 1
        if Fv != fv ** result.d:
            mismatches.append(P)
    if checked == 0:
        raise InconclusiveError("every G1 point hit a support; pick a different f")
    return DescentCheck(checked=checked, skipped=skipped,
                        mismatches=tuple(mismatches), passed=not mismatches)


@dataclass(frozen=True)
class BoundReport:
    """Exact integers behind one record's bound checks.

    corollary_pass is None when the record has k = 1 and the halved
    threshold does not apply.
    """

    record: CurveRecord
    family: str
    deg_f: int
    d: int
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
    lemma_ok: bool

    def passed_for(self, mode: str) -> bool:
        if mode == "prop2":
            return self.prop2_pass
        if mode == "prop3":
            return self.prop3_pass
        if mode == "corollary":
            return bool(self.corollary_pass)
        raise ValueError(f"unknown mode {mode!r}")

    def csv_row(self) -> list:
        rec = self.record
        cor = "" if self.corollary_pass is None else str(self.corollary_pass).lower()
        return [rec.q, rec.a, rec.b, rec.r, rec.k, self.d, self.deg_f,
                self.D_d, self.c, self.d1, self.D_d1,
                self.prop2_lhs, self.prop3_lhs, self.corollary_lhs,
                str(self.prop2_pass).lower(), str(self.prop3_pass).lower(), cor]

    CSV_COLUMNS = ("q", "a", "b", "r", "k", "d", "deg_f", "D_d", "c", "d1",
                   "D_d1", "prop2_lhs", "prop3_lhs", "corollary_lhs",
                   "prop2_pass", "prop3_pass", "corollary_pass")


def _build_report(record: CurveRecord, deg_f: int, d: int, family: str) -> BoundReport:
    q, k, r = record.q, record.k, record.r
    params = DParams(q, k)
    m = params.m
    d = d % m
    dd, _ = d_weight(d, params)
    s = (q ** k - 1) // (q - 1)
    c, d1 = divmod(d, s)
    dd1, _ = d_weight(d1, params)
    table = distance_table(params)
    lemma_ok = table[((q - 1) * d1) % m] <= 2 * dd1
    prop2_lhs = d * deg_f
    prop3_lhs = dd * deg_f
    cor_lhs = dd1 * deg_f
    return BoundReport(
        record=record, family=family, deg_f=deg_f, d=d,
        D_d=dd, c=c, d1=d1, D_d1=dd1,
        prop2_lhs=prop2_lhs, prop3_lhs=prop3_lhs, corollary_lhs=cor_lhs,
        prop2_pass=6 * prop2_lhs >= r,
        prop3_pass=6 * prop3_lhs >= r,
        corollary_pass=(12 * cor_lhs >= r) if k >= 2 else None,
        lemma_ok=lemma_ok,
    )


def check_bounds(record: CurveRecord, f_deg: int, d: int, mode: str) -> BoundReport:
    """Bound report for a (deg f, d) pair on one record, exact integer
    comparisons only.

    The caller vouches that the pair realizes a non-constant homomorphism
    from G1 into the r-th roots of unity; for the shipped reduced-Tate family
    (deg f = r, d = (q^k - 1)/r) non-degeneracy provides this. Custom
    families go through check_bounds_custom, which verifies it exhaustively.
    """
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}")
    if f_deg < 1:
        raise ValueError("deg f must be >= 1")
    if mode == "corollary" and record.k < 2:
        raise DomainError("the halved threshold needs embedding degree k >= 2")
    return _build_report(record, f_deg, d, family="custom")


def verify_homomorphism(ctx: PairingContext, f: TrackedFunction, d: int) -> bool:
    """Exhaustively test that P -> f(P)^d is a non-constant homomorphism on
    G1, over all pairs where every term is defined and nonzero."""
    one = ctx.ext.one()
    values = {}
    for P in ctx.g1:
        try:
            v = evaluate(f, P)
        except (PoleError, IndeterminateError):
            continue
        if not v.is_zero:
            values[P] = v ** d
    if all(v == one for v in values.values()):
        return False
    for P, vp in values.items():
        for Q, vq in values.items():
            s = point_add(ctx.curve, P, Q)
            if s in values and values[s] != vp * vq:
                return False
    return True


def check_bounds_custom(
    ctx: PairingContext, f: TrackedFunction, d: int, mode: str
) -> BoundReport:
    """Bound report for a hand-built function family; the homomorphism
    precondition is checked exhaustively over G1 first."""
    if not verify_homomorphism(ctx, f, d):
        raise DomainError("f^d is not a non-constant homomorphism on G1; bound not applicable")
    report = check_bounds(ctx.record, f.deg, d, mode)
    return report


@dataclass(frozen=True)
class BoundScan:
    """Full-corpus scan summary: per-record reports, the minimal normalized
    margins 6*prop3_lhs/r and 12*corollary_lhs/r, and an overall verdict."""

    reports: tuple
    violations: tuple
    min_prop3_ratio: Optional[Fraction]
    min_corollary_ratio: Optional[Fraction]
    ok: bool

    def summary_line(self) -> str:
        def fmt(x):
            return "n/a" if x is None else f"{x} (~{float(x):.3g})"
        return (
            f"records={len(self.reports)} violations={len(self.violations)} "
            f"min_6*prop3/r={fmt(self.min_prop3_ratio)} "
            f"min_12*corollary/r={fmt(self.min_corollary_ratio)}"
        )


def scan_bounds(corpus: list[CurveRecord]) -> BoundScan:
    """One report per record for the reduced-Tate family (deg f = r,
    d = (q^k - 1)/r). A bound violation anywhere would falsify either the
    claims or this implementation, so the scan is the experiment."""
    reports = []
    violations = []
    min3: Optional[Fraction] = None
    min12: Optional[Fraction] = None
    for rec in corpus:
        rep = _build_report(rec, deg_f=rec.r, d=rec.d, family="reduced_tate")
        reports.append(rep)
        bad = (not rep.prop2_pass or not rep.prop3_pass
               or rep.corollary_pass is False or not rep.lemma_ok)
        if bad:
            violations.append(rep)
        ratio3 = Fraction(6 * rep.prop3_lhs, rec.r)
        if min3 is None or ratio3 < min3:
            min3 = ratio3
        if rep.corollary_pass is not None:
            ratio12 = Fraction(12 * rep.corollary_lhs, rec.r)
            if min12 is None or ratio12 < min12:
                min12 = ratio12
    return BoundScan(
        reports=tuple(reports),
        violations=tuple(violations),
        min_prop3_ratio=min3,
        min_corollary_ratio=min12,
        ok=not violations,
    )
