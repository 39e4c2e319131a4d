"""Miller's algorithm, the reduced Tate pairing on a small curve context,
brute-force pairing inversion in both slots, and the Diffie-Hellman solver
built on the two inversion oracles.

Inversion is brute force on purpose: a correct oracle is all the reduction
needs, and at desk scale trying every multiple of the generator is exact and
instant. Each inverter performs at most r pairing evaluations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .curve import (
    DEFAULT_ENUM_CAP,
    Curve,
    CurvePoint,
    CurveRecord,
    _add,
    _smul,
    enumerate_points,
)
from .errors import (
    ConsistencyError,
    DomainError,
    IndeterminateError,
    PoleError,
)
from .field import ExtFieldElement, FieldParams, base_params, build_extension

_SHIFT_POOL_SIZE = 64


def _line_value(E: Curve, A: CurvePoint, B: CurvePoint, Q: CurvePoint) -> ExtFieldElement:
    # Line through A and B evaluated at Q; degenerates to a vertical exactly
    # as the symbolic constructor does. A zero value means Q sits on an
    # intermediate line, which the product formula cannot absorb.
    if A.is_infinity and B.is_infinity:
        return E.params.one()
    if A.is_infinity or B.is_infinity:
        C = B if A.is_infinity else A
        val = Q.x - C.x
    elif A == B:
        if A.y.is_zero:
            val = Q.x - A.x
        else:
            lam = (3 * A.x * A.x + E.a) / (2 * A.y)
            val = Q.y - A.y - lam * (Q.x - A.x)
    elif A.x == B.x:
        val = Q.x - A.x
    else:
        lam = (B.y - A.y) / (B.x - A.x)
        val = Q.y - A.y - lam * (Q.x - A.x)
    if val.is_zero:
        raise IndeterminateError("evaluation point lies on an intermediate line")
    return val


def miller(E: Curve, n: int, P: CurvePoint, Qe: CurvePoint) -> ExtFieldElement:
    """f_{n,P}(Qe) for the function with divisor n(P) - ([n]P) - (n-1)(O).

    Double-and-add accumulation of line and vertical values. Any intermediate
    zero or pole raises IndeterminateError; the caller reselects Qe or shifts
    the evaluation divisor.
    """
    if n < 1:
        raise ValueError("miller needs n >= 1")
    one = E.params.one()
    if n == 1 or P.is_infinity:
        return one
    if Qe.is_infinity:
        raise PoleError("f_{n,P} has a pole at the point at infinity")
    f = one
    R = P
    for bit in bin(n)[3:]:
        f = f * f * _line_value(E, R, R, Qe)
        R = _add(E, R, R)
        if not R.is_infinity:
            v = Qe.x - R.x
            if v.is_zero:
                raise IndeterminateError("evaluation point on an intermediate vertical")
            f = f / v
        if bit == "1":
            f = f * _line_value(E, R, P, Qe)
            R = _add(E, R, P)
            if not R.is_infinity:
                v = Qe.x - R.x
                if v.is_zero:
                    raise IndeterminateError("evaluation point on an intermediate vertical")
                f = f / v
    return f


def _raw_pairing(E, r, d, P, Q, shift_pool):
    # Reduced Tate value f_{r,P}(Q)^d with the standard divisor-shift retry:
    # when the plain evaluation is indeterminate, use f(Q+S)/f(S), whose d-th
    # power is the same pairing value.
    if P.is_infinity or Q.is_infinity:
        return E.params.one()
    try:
        v = miller(E, r, P, Q)
    except (IndeterminateError, PoleError):
        v = None
    if v is None or v.is_zero:
        for S in shift_pool:
            if S.is_infinity:
                continue
            QS = _add(E, Q, S)
            if QS.is_infinity:
                continue
            try:
                va = miller(E, r, P, QS)
                vb = miller(E, r, P, S)
            except (IndeterminateError, PoleError):
                continue
            if va.is_zero or vb.is_zero:
                continue
            v = va / vb
            break
        else:
            raise ConsistencyError("no admissible evaluation point for the pairing")
    return v ** d


@dataclass(frozen=True, eq=False)
class PairingContext:
    """A fully instantiated pairing setting on one curve record.

    g1 and g2 list the multiples [i]P1 and [i]P2 in index order; g_r is the
    pairing of the two generators, which non-degeneracy makes a generator of
    the group of r-th roots of unity.
    """

    record: CurveRecord
    ext: FieldParams
    curve: Curve
    p1: CurvePoint
    p2: CurvePoint
    d: int
    g_r: ExtFieldElement
    g1: tuple
    g2: tuple
    g1set: frozenset
    g2set: frozenset
    shift_pool: tuple


def build_context(record: CurveRecord, enum_cap: int = DEFAULT_ENUM_CAP) -> PairingContext:
    """Instantiate G1, G2, and the reduced Tate pairing for a corpus record.

    G1 is the base-field r-torsion embedded into F_{q^k}. G2 is generated by
    the first point, in enumeration order, whose cofactor multiple has order
    r, lies outside G1, and pairs non-degenerately with P1. Requires k >= 2;
    at k = 1 the base field holds no order-r subgroup other than G1.
    """
    if record.k < 2:
        raise ValueError("pairing context needs embedding degree k >= 2")
    q, r = record.q, record.r
    ext = build_extension(q, record.k)
    E = Curve(ext.scalar(record.a), ext.scalar(record.b))

    base = base_params(q)
    Eb = Curve(base.scalar(record.a), base.scalar(record.b))
    base_pts = enumerate_points(Eb)
    if len(base_pts) != record.n:
        raise ConsistencyError("record group order does not match enumeration")

    def embed(P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        return CurvePoint(ext.scalar(P.x.coeffs[0]), ext.scalar(P.y.coeffs[0]))

    torsion = [embed(P) for P in base_pts
               if _smul(Eb, P, r).is_infinity]
    if len(torsion) != r:
        raise ConsistencyError("base-field r-torsion is not cyclic of order r")
    p1 = next(P for P in torsion if not P.is_infinity)
    g1 = tuple(_smul(E, p1, i) for i in range(r))
    g1set = frozenset(g1)

    ext_pts = enumerate_points(E, cap=enum_cap)
    shift_pool = tuple(P for P in ext_pts[1:_SHIFT_POOL_SIZE + 1])
    m = len(ext_pts)
    while m % r == 0:
        m //= r

    # The full r-torsion E[r] is rational over F_{q^k} at the embedding
    # degree and is spanned by P1 together with any torsion point outside
    # G1. Find the first such point in enumeration order via cofactor
    # multiplication, then test one generator per remaining order-r
    # subgroup: T2 itself, then P1 + [c]T2.
    t2 = None
    for P in ext_pts:
        if P.is_infinity:
            continue
        T = _smul(E, P, m)
        if T.is_infinity:
            continue
        while True:
            Tr = _smul(E, T, r)
            if Tr.is_infinity:
                break
            T = Tr
        if T not in g1set:
            t2 = T
            break
    if t2 is None:
        raise ConsistencyError("full r-torsion not found over F_{q^k}")
    p2 = None
    g_r = None
    one = ext.one()
    candidates = [t2] + [_add(E, p1, _smul(E, t2, c)) for c in range(1, r)]
    for V in candidates:
        val = _raw_pairing(E, r, record.d, p1, V, shift_pool)
        if val != one:
            p2, g_r = V, val
            break
    if p2 is None:
        # Happens only when r^3 divides #E(F_{q^k}): the torsion image in
        # E/rE can then coincide with the kernel of e(P1, .), leaving no
        # order-r subgroup that pairs non-degenerately with G1.
        if len(ext_pts) % r ** 3 == 0:
            raise DomainError(
                "no order-r torsion subgroup pairs non-degenerately with G1 "
                "on this record"
            )
        raise ConsistencyError("no non-degenerate G2 generator found")
    g2 = tuple(_smul(E, p2, i) for i in range(r))
    return PairingContext(
        record=record, ext=ext, curve=E, p1=p1, p2=p2, d=record.d, g_r=g_r,
        g1=g1, g2=g2, g1set=g1set, g2set=frozenset(g2), shift_pool=shift_pool,
    )


def tate_reduced(ctx: PairingContext, P: CurvePoint, Q: CurvePoint) -> ExtFieldElement:
    """The reduced Tate pairing e(P, Q) = f_{r,P}(Q)^((q^k-1)/r) on G1 x G2."""
    if P not in ctx.g1set:
        raise DomainError("first pairing argument must lie in G1")
    if Q not in ctx.g2set:
        raise DomainError("second pairing argument must lie in G2")
    out = _raw_pairing(ctx.curve, ctx.record.r, ctx.d, P, Q, ctx.shift_pool)
    if out ** ctx.record.r != ctx.ext.one():
        raise ConsistencyError("pairing value escaped the r-th roots of unity")
    return out


def invert_second(ctx: PairingContext, fixed: CurvePoint, z: ExtFieldElement) -> CurvePoint:
    """The unique V in G2 with e(fixed, V) = z, by trying all r multiples."""
    if fixed.is_infinity:
        raise ValueError("fixed first argument must not be the identity")
    if fixed not in ctx.g1set:
        raise DomainError("fixed first argument must lie in G1")
    if z ** ctx.record.r != ctx.ext.one():
        raise DomainError("target value is not an r-th root of unity")
    for V in ctx.g2:
        if tate_reduced(ctx, fixed, V) == z:
            return V
    raise ConsistencyError("non-degenerate pairing admitted no preimage")


def invert_first(ctx: PairingContext, fixed: CurvePoint, w: ExtFieldElement) -> CurvePoint:
    """The unique V in G1 with e(V, fixed) = w, by trying all r multiples."""
    if fixed.is_infinity:
        raise ValueError("fixed second argument must not be the identity")
    if fixed not in ctx.g2set:
        raise DomainError("fixed second argument must lie in G2")
    if w ** ctx.record.r != ctx.ext.one():
        raise DomainError("target value is not an r-th root of unity")
    for V in ctx.g1:
        if tate_reduced(ctx, V, fixed) == w:
            return V
    raise ConsistencyError("non-degenerate pairing admitted no preimage")


@dataclass(frozen=True, eq=False)
class DhInstance:
    """A Diffie-Hellman problem instance: Y, [A]Y, [B]Y in G1 and a fixed
    non-identity helper U in G2."""

    y: CurvePoint
    ay: CurvePoint
    by: CurvePoint
    u: CurvePoint


def make_dh_instance(
    ctx: PairingContext, a_scalar: int, b_scalar: int,
    y_scalar: int = 1, u_scalar: int = 1,
) -> DhInstance:
    r = ctx.record.r
    if y_scalar % r == 0:
        raise ValueError("Y must not be the identity")
    if u_scalar % r == 0:
        raise ValueError("U must not be the identity")
    y = ctx.g1[y_scalar % r]
    return DhInstance(
        y=y,
        ay=ctx.g1[(y_scalar * a_scalar) % r],
        by=ctx.g1[(y_scalar * b_scalar) % r],
        u=ctx.g2[u_scalar % r],
    )


def solve_dh(ctx: PairingContext, inst: DhInstance) -> CurvePoint:
    """Recover [AB]Y from (Y, [A]Y, [B]Y) with two pairings and two
    inversions: z = e([A]Y, U); V = [A]U from e(Y, .) = z; w = e([B]Y, V);
    answer from e(. , U) = w."""
    if inst.y.is_infinity:
        raise ValueError("Y must not be the identity")
    for p in (inst.y, inst.ay, inst.by):
        if p not in ctx.g1set:
            raise DomainError("instance points must lie in G1")
    if inst.u.is_infinity or inst.u not in ctx.g2set:
        raise DomainError("U must be a non-identity element of G2")
    z = tate_reduced(ctx, inst.ay, inst.u)
    v = invert_second(ctx, inst.y, z)
    w = tate_reduced(ctx, inst.by, v)
    return invert_first(ctx, inst.u, w)


def _elem_json(x: ExtFieldElement) -> list[int]:
    return list(x.coeffs)


def _point_json(P: CurvePoint):
    if P.is_infinity:
        return None
    return [list(P.x.coeffs), list(P.y.coeffs)]


def dh_trace(ctx: PairingContext, a_scalar: int, b_scalar: int) -> dict:
    """Run the solver step by step and report a JSON-ready trace with the
    scalar-multiplication ground truth."""
    r = ctx.record.r
    inst = make_dh_instance(ctx, a_scalar % r, b_scalar % r)
    z = tate_reduced(ctx, inst.ay, inst.u)
    v = invert_second(ctx, inst.y, z)
    w = tate_reduced(ctx, inst.by, v)
    answer = invert_first(ctx, inst.u, w)
    truth = ctx.g1[(a_scalar * b_scalar) % r]
    return {
        "record": ctx.record.to_dict(),
        "A": a_scalar % r,
        "B": b_scalar % r,
        "z": _elem_json(z),
        "V": _point_json(v),
        "w": _elem_json(w),
        "answer": _point_json(answer),
        "ground_truth": _point_json(truth),
        "match": answer == truth,
    }


def random_scalars(ctx: PairingContext, seed: int) -> tuple[int, int]:
    """Deterministic (A, B) pair for demo runs with a fixed seed."""
    rng = random.Random(seed)
    r = ctx.record.r
    return rng.randrange(r), rng.randrange(r)
