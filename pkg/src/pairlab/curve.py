"""Short Weierstrass curves over F_q and F_{q^k}.

Chord-and-tangent group law, exhaustive point enumeration (the only point
counting used; desk scale makes it exact), r-torsion subgroups, embedding
degree, and the corpus scanner that emits every pairing-friendly record a
list of small primes supports.

Everything here is a pure function over immutable values; the corpus scan
is embarrassingly parallel over (q, a, b) with output ordered by key, so
runs reproduce byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisibilityError, SizeCapError
from .field import (
    ORDER_CAP,
    ExtFieldElement,
    FieldParams,
    _mul_coeffs,
    base_params,
    elements,
    is_prime,
)

# Point enumeration walks the whole field; keep it to desk scale.
DEFAULT_ENUM_CAP = 1 << 17
# Corpus scans additionally bound q^k - 1 so searches cannot run away.
DEFAULT_SCAN_CAP = 1 << 40


class CurvePoint:
    """A point of E: affine (x, y) or the point at infinity (x is None)."""

    __slots__ = ("x", "y")

    def __init__(self, x: ExtFieldElement | None = None, y: ExtFieldElement | None = None):
        if (x is None) != (y is None):
            raise ValueError("affine points need both coordinates")
        self.x = x
        self.y = y

    @classmethod
    def infinity(cls) -> "CurvePoint":
        return _INF

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __repr__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({list(self.x.coeffs)}, {list(self.y.coeffs)})"


_INF = CurvePoint()


@dataclass(frozen=True)
class Curve:
    """y^2 = x^3 + a x + b over the ambient field of its coefficients."""

    a: ExtFieldElement
    b: ExtFieldElement

    def __post_init__(self) -> None:
        if self.a.params != self.b.params:
            raise ValueError("curve coefficients from different fields")
        if self.a.params.q < 5:
            raise ValueError("characteristic must be >= 5")
        disc = 4 * self.a * self.a * self.a + 27 * self.b * self.b
        if disc.is_zero:
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")

    @property
    def params(self) -> FieldParams:
        return self.a.params

    def rhs(self, x: ExtFieldElement) -> ExtFieldElement:
        return x * x * x + self.a * x + self.b

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        if P.x.params != self.params:
            return False
        return P.y * P.y == self.rhs(P.x)


def _require_on_curve(E: Curve, P: CurvePoint) -> None:
    if not E.contains(P):
        raise ValueError(f"point {P!r} is not on the curve")


def point_neg(E: Curve, P: CurvePoint) -> CurvePoint:
    _require_on_curve(E, P)
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y)


def _add(E: Curve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    # group law without membership checks, for use in validated loops
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y != Q.y or P.y.is_zero:
            return _INF
        lam = (3 * P.x * P.x + E.a) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(x3, y3)


def point_add(E: Curve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """P + Q in the chord-and-tangent group law."""
    _require_on_curve(E, P)
    _require_on_curve(E, Q)
    return _add(E, P, Q)


def _smul(E: Curve, P: CurvePoint, n: int) -> CurvePoint:
    if n < 0:
        P = CurvePoint(P.x, -P.y) if not P.is_infinity else P
        n = -n
    acc = _INF
    base = P
    while n:
        if n & 1:
            acc = _add(E, acc, base)
        base = _add(E, base, base)
        n >>= 1
    return acc


def scalar_mul(E: Curve, P: CurvePoint, n: int) -> CurvePoint:
    """[n]P by double-and-add; n may be any integer."""
    _require_on_curve(E, P)
    return _smul(E, P, n)


@lru_cache(maxsize=4)
def _elements_cached(params: FieldParams) -> tuple:
    return tuple(elements(params))


@lru_cache(maxsize=4)
def _sqrt_table(params: FieldParams) -> dict:
    """Map each square value's coefficient tuple to its square roots."""
    table: dict[tuple, list] = {}
    for y in _elements_cached(params):
        table.setdefault(_mul_coeffs(params, y.coeffs, y.coeffs), []).append(y)
    return {sq: tuple(ys) for sq, ys in table.items()}


@lru_cache(maxsize=2)
def _points_cached(E: Curve, cap: int) -> tuple:
    order = E.params.order
    if order > cap:
        raise SizeCapError(f"field of size {order} exceeds the enumeration cap {cap}")
    params = E.params
    roots = _sqrt_table(params)
    q, k = params.q, params.k
    a_c, b_c = E.a.coeffs, E.b.coeffs
    a_zero = not any(a_c)
    pts = [_INF]
    # rhs on raw coefficient tuples; the curve is evaluated order times
    for x in _elements_cached(params):
        xc = x.coeffs
        t = _mul_coeffs(params, _mul_coeffs(params, xc, xc), xc)
        if a_zero:
            rhs = tuple((t[i] + b_c[i]) % q for i in range(k))
        else:
            u = _mul_coeffs(params, a_c, xc)
            rhs = tuple((t[i] + u[i] + b_c[i]) % q for i in range(k))
        for y in roots.get(rhs, ()):
            pts.append(CurvePoint(x, y))
    n = len(pts)
    if abs(n - order - 1) > 2 * math.isqrt(order) + 1:
        raise ValueError("point count violates the Hasse bound")
    return tuple(pts)


def enumerate_points(E: Curve, cap: int = DEFAULT_ENUM_CAP) -> list[CurvePoint]:
    """Every point of E over its ambient field, the identity first, affine
    points in canonical field order. The count is the group order."""
    return list(_points_cached(E, cap))


def embedding_degree(q: int, r: int, cap: int = ORDER_CAP) -> int:
    """Minimal k >= 1 with r | q^k - 1, i.e. the order of q mod r."""
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    if not is_prime(r):
        raise ValueError(f"r = {r} is not prime")
    if r == q:
        raise ValueError("r must not divide q")
    acc = 1
    for k in range(1, r + 1):
        acc *= q
        if acc - 1 > cap:
            raise SizeCapError(f"q^k - 1 exceeded the cap before reaching order of q mod {r}")
        if (acc - 1) % r == 0:
            return k
    raise ValueError("no embedding degree found below r, q and r cannot both be prime")


def torsion_subgroup(
    E: Curve, r: int, points: list[CurvePoint] | None = None, cap: int = DEFAULT_ENUM_CAP
) -> list[CurvePoint]:
    """All points P with [r]P = O over E's ambient field.

    Over F_q with r^2 not dividing the order this is the group called G1;
    over F_{q^k} at the embedding degree it is the full r-torsion.
    """
    if points is None:
        points = enumerate_points(E, cap)
    if r == 1:
        return [_INF]
    if not is_prime(r):
        raise ValueError(f"r = {r} is not prime")
    if len(points) % r != 0:
        raise DivisibilityError(f"r = {r} does not divide the group order {len(points)}")
    return [P for P in points if scalar_mul(E, P, r).is_infinity]


def frobenius_point(E: Curve, P: CurvePoint, i: int) -> CurvePoint:
    """Coordinate-wise q^i-power Frobenius. E must have base-field
    coefficients so the image stays on E."""
    if P.is_infinity:
        return P
    Q = CurvePoint(P.x.frobenius(i), P.y.frobenius(i))
    if not E.contains(Q):
        raise ValueError("Frobenius image left the curve; coefficients not in F_q")
    return Q


@dataclass(frozen=True)
class CurveRecord:
    """One pairing-friendly instance: curve over F_q, group order n, chosen
    prime r | n with r^2 not dividing n, embedding degree k, and the standard
    reduced-pairing exponent d = (q^k - 1)/r."""

    q: int
    a: int
    b: int
    n: int
    r: int
    k: int
    d: int

    def __post_init__(self) -> None:
        if not is_prime(self.r):
            raise ValueError("r must be prime")
        if self.n % self.r != 0:
            raise ValueError("r must divide the group order n")
        if self.n % (self.r * self.r) == 0:
            raise ValueError("r^2 must not divide n (|G1| = r is enforced)")
        if (self.q ** self.k - 1) % self.r != 0:
            raise ValueError("r must divide q^k - 1")
        if self.d * self.r != self.q ** self.k - 1:
            raise ValueError("d must equal (q^k - 1)/r")

    def base_curve(self) -> Curve:
        params = base_params(self.q)
        return Curve(params.scalar(self.a), params.scalar(self.b))

    def to_dict(self) -> dict:
        return {"q": self.q, "a": self.a, "b": self.b, "n": self.n,
                "r": self.r, "k": self.k, "d": self.d}

    @classmethod
    def from_dict(cls, d: dict) -> "CurveRecord":
        return cls(q=d["q"], a=d["a"], b=d["b"], n=d["n"], r=d["r"], k=d["k"], d=d["d"])


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def group_order(q: int, a: int, b: int) -> int:
    """#E(F_q) for y^2 = x^3 + ax + b by direct counting over F_q."""
    counts = [0] * q
    for y in range(q):
        counts[(y * y) % q] += 1
    n = 1
    for x in range(q):
        n += counts[(x * x * x + a * x + b) % q]
    return n


def scan_corpus(
    q_list: list[int],
    k_max: int,
    r_min: int = 3,
    cap: int = DEFAULT_SCAN_CAP,
) -> list[CurveRecord]:
    """Every CurveRecord the given primes support.

    For each prime q >= 5 and each nonsingular (a, b), one record per prime
    divisor r of #E(F_q) with r >= r_min, r^2 not dividing n, r distinct from
    q, embedding degree k <= k_max, and q^k - 1 under the cap. Output order
    is (q, a, b, r) ascending, so scans reproduce byte for byte.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if r_min < 2:
        raise ValueError("r_min must be >= 2")
    records = []
    for q in sorted(set(q_list)):
        if not is_prime(q) or q < 5:
            raise ValueError(f"q = {q} must be a prime >= 5")
        counts = [0] * q
        for y in range(q):
            counts[(y * y) % q] += 1
        for a in range(q):
            for b in range(q):
                if (4 * a * a * a + 27 * b * b) % q == 0:
                    continue
                n = 1
                for x in range(q):
                    n += counts[(x * x * x + a * x + b) % q]
                if abs(n - q - 1) > 2 * math.isqrt(q) + 1:
                    raise ValueError("point count violates the Hasse bound")
                for r in _prime_factors(n):
                    if r < r_min or r == q or n % (r * r) == 0:
                        continue
                    acc = 1
                    k_found = 0
                    for k in range(1, k_max + 1):
                        acc *= q
                        if acc - 1 > cap:
                            break
                        if (acc - 1) % r == 0:
                            k_found = k
                            break
                    if not k_found:
                        continue
                    records.append(
                        CurveRecord(q=q, a=a, b=b, n=n, r=r, k=k_found,
                                    d=(q ** k_found - 1) // r)
                    )
    return records
