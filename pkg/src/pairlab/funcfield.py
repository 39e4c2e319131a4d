"""Rational functions on a curve as evaluable expression trees with exact
divisors.

Only the compositional family the pairing machinery needs exists here:
constants, the coordinate functions x and y, chord/tangent lines, and
verticals, closed under products, integer powers, reciprocals, and
coefficient-Frobenius twists. Divisors are attached at construction and
combined algebraically, never re-derived from an arbitrary expression, so
degrees are exact and support checks are cheap.

Zeros of the coordinate functions need not be rational over the ambient
field (x vanishes at (0, +-sqrt(b))). Such a zero set is tracked as a single
ConjugateCluster place carrying its total degree; rational support points
are tracked individually. Twists act on clusters through their defining
data, so cancellation in divisor sums stays exact.

The degree of a function is the degree of the pole part of its divisor.
Eager cancellation in products means deg(f*g) can drop below
deg(f) + deg(g) when a zero of one factor meets a pole of the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .curve import DEFAULT_ENUM_CAP, Curve, CurvePoint, _add, _require_on_curve, _sqrt_table
from .errors import ConsistencyError, IndeterminateError, PoleError, SizeCapError
from .field import ExtFieldElement, elements

_INF = CurvePoint.infinity()


# ---------------------------------------------------------------------------
# Expression nodes. Trees stay tiny (descent products of twisted factors), so
# plain frozen dataclasses are fine.

@dataclass(frozen=True)
class _Const:
    value: ExtFieldElement


@dataclass(frozen=True)
class _Coord:
    axis: str  # "x" or "y"


@dataclass(frozen=True)
class _Affine:
    # cx*x + cy*y + c0; verticals have cy = 0
    cx: ExtFieldElement
    cy: ExtFieldElement
    c0: ExtFieldElement


@dataclass(frozen=True)
class _Product:
    factors: tuple


@dataclass(frozen=True)
class _Power:
    base: object
    n: int


def _eval_node(node, x, y):
    """Evaluate to a (numerator, denominator) pair so poles and 0/0 can be
    told apart at the end."""
    if isinstance(node, _Const):
        return node.value, node.value.params.one()
    if isinstance(node, _Coord):
        v = x if node.axis == "x" else y
        return v, v.params.one()
    if isinstance(node, _Affine):
        v = node.cx * x + node.cy * y + node.c0
        return v, v.params.one()
    if isinstance(node, _Product):
        num = den = None
        for f in node.factors:
            n_, d_ = _eval_node(f, x, y)
            num = n_ if num is None else num * n_
            den = d_ if den is None else den * d_
        return num, den
    if isinstance(node, _Power):
        num, den = _eval_node(node.base, x, y)
        n = node.n
        if n >= 0:
            return num ** n, den ** n
        return den ** (-n), num ** (-n)
    raise TypeError(f"unknown node {node!r}")


def _twist_node(node, i):
    if isinstance(node, _Const):
        return _Const(node.value.frobenius(i))
    if isinstance(node, _Coord):
        return node
    if isinstance(node, _Affine):
        return _Affine(node.cx.frobenius(i), node.cy.frobenius(i), node.c0.frobenius(i))
    if isinstance(node, _Product):
        return _Product(tuple(_twist_node(f, i) for f in node.factors))
    if isinstance(node, _Power):
        return _Power(_twist_node(node.base, i), node.n)
    raise TypeError(f"unknown node {node!r}")


def _node_is_constant(node) -> bool:
    if isinstance(node, _Const):
        return True
    if isinstance(node, (_Coord, _Affine)):
        return False
    if isinstance(node, _Product):
        return all(_node_is_constant(f) for f in node.factors)
    if isinstance(node, _Power):
        return _node_is_constant(node.base)
    raise TypeError(f"unknown node {node!r}")


# ---------------------------------------------------------------------------
# Divisors.

@dataclass(frozen=True)
class ConjugateCluster:
    """A Galois orbit of non-rational points, tracked as one place of the
    stated degree. `data` pins the defining equations (curve coefficients
    plus the residual polynomial), which is what Frobenius acts on."""

    kind: str
    data: tuple
    degree: int

    def frobenius_image(self, i: int) -> "ConjugateCluster":
        return ConjugateCluster(
            self.kind, tuple(v.frobenius(i) for v in self.data), self.degree
        )


def _place_degree(place) -> int:
    return place.degree if isinstance(place, ConjugateCluster) else 1


class Divisor:
    """Finite formal sum of places with nonzero integer multiplicities."""

    __slots__ = ("_mult",)

    def __init__(self, mapping=None):
        self._mult = {p: m for p, m in dict(mapping or {}).items() if m}

    @classmethod
    def of(cls, pairs) -> "Divisor":
        acc: dict = {}
        for place, mult in pairs:
            acc[place] = acc.get(place, 0) + mult
        return cls(acc)

    def multiplicity(self, place) -> int:
        return self._mult.get(place, 0)

    def places(self):
        return tuple(self._mult.items())

    def support(self):
        return tuple(self._mult)

    def rational_support(self):
        return tuple(p for p in self._mult if isinstance(p, CurvePoint))

    def degree(self) -> int:
        return sum(m * _place_degree(p) for p, m in self._mult.items())

    def positive_degree(self) -> int:
        return sum(m * _place_degree(p) for p, m in self._mult.items() if m > 0)

    def __add__(self, other: "Divisor") -> "Divisor":
        acc = dict(self._mult)
        for p, m in other._mult.items():
            acc[p] = acc.get(p, 0) + m
        return Divisor(acc)

    def __neg__(self) -> "Divisor":
        return Divisor({p: -m for p, m in self._mult.items()})

    def scaled(self, n: int) -> "Divisor":
        if n == 0:
            return Divisor()
        return Divisor({p: n * m for p, m in self._mult.items()})

    def frobenius_image(self, i: int) -> "Divisor":
        out: dict = {}
        for p, m in self._mult.items():
            if isinstance(p, ConjugateCluster):
                key = p.frobenius_image(i)
            elif p.is_infinity:
                key = p
            else:
                key = CurvePoint(p.x.frobenius(i), p.y.frobenius(i))
            out[key] = out.get(key, 0) + m
        return Divisor(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._mult == other._mult

    def __hash__(self) -> int:
        return hash(frozenset(self._mult.items()))

    def __len__(self) -> int:
        return len(self._mult)

    def __repr__(self) -> str:
        return "Divisor(" + ", ".join(f"{m}*{p!r}" for p, m in self._mult.items()) + ")"


# ---------------------------------------------------------------------------
# Tracked functions.

class TrackedFunction:
    """An evaluable function on E paired with its exact divisor.

    deg is the degree of the pole part. Every constructed function has a
    degree-zero divisor, which is asserted on every operation.
    """

    __slots__ = ("curve", "expr", "div", "deg")

    def __init__(self, curve: Curve, expr, div: Divisor):
        if div.degree() != 0:
            raise ConsistencyError(f"divisor has nonzero degree {div.degree()}")
        self.curve = curve
        self.expr = expr
        self.div = div
        self.deg = div.positive_degree()

    @property
    def is_constant(self) -> bool:
        return self.deg == 0

    def __repr__(self) -> str:
        return f"TrackedFunction(deg={self.deg}, places={len(self.div)})"


def make_const(E: Curve, c) -> TrackedFunction:
    """The constant function c (nonzero); empty divisor."""
    if isinstance(c, int):
        c = E.params.scalar(c)
    if c.params != E.params:
        raise ValueError("constant from a different field")
    if c.is_zero:
        raise ValueError("the zero function has no divisor")
    return TrackedFunction(E, _Const(c), Divisor())


def make_vertical(E: Curve, P: CurvePoint) -> TrackedFunction:
    """x - x_P, vanishing at P and -P, double pole at infinity."""
    _require_on_curve(E, P)
    if P.is_infinity:
        raise ValueError("no vertical line at the point at infinity")
    params = E.params
    expr = _Affine(params.one(), params.zero(), -P.x)
    neg = CurvePoint(P.x, -P.y)
    div = Divisor.of([(P, 1), (neg, 1), (_INF, -2)])
    return TrackedFunction(E, expr, div)


def make_line(E: Curve, P: CurvePoint, Q: CurvePoint) -> TrackedFunction:
    """The line through P and Q (tangent when P = Q), with divisor
    (P) + (Q) + (-(P+Q)) - 3(O).

    Degenerate configurations through the point at infinity normalize to the
    appropriate vertical.
    """
    _require_on_curve(E, P)
    _require_on_curve(E, Q)
    if P.is_infinity and Q.is_infinity:
        raise ValueError("no line through the point at infinity twice")
    if P.is_infinity:
        return make_vertical(E, Q)
    if Q.is_infinity:
        return make_vertical(E, P)
    params = E.params
    if P == Q:
        if P.y.is_zero:
            return make_vertical(E, P)
        lam = (3 * P.x * P.x + E.a) / (2 * P.y)
    elif P.x == Q.x:
        return make_vertical(E, P)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    # y - y_P - lam*(x - x_P)
    expr = _Affine(-lam, params.one(), lam * P.x - P.y)
    S = _add(E, P, Q)
    R = CurvePoint(S.x, -S.y) if not S.is_infinity else _INF
    div = Divisor.of([(P, 1), (Q, 1), (R, 1), (_INF, -3)])
    return TrackedFunction(E, expr, div)


@lru_cache(maxsize=8)
def _coord_divisor(E: Curve, axis: str) -> Divisor:
    # finding the zero set scans the ambient field once
    params = E.params
    if params.order > DEFAULT_ENUM_CAP:
        raise SizeCapError(
            f"coordinate divisors need an enumerable field, got size {params.order}"
        )
    zero = params.zero()
    if axis == "x":
        pairs = [(_INF, -2)]
        if E.b.is_zero:
            pairs.append((CurvePoint(zero, zero), 2))
        else:
            roots = _sqrt_table(params).get(E.b.coeffs, ())
            if roots:
                for y0 in roots:
                    pairs.append((CurvePoint(zero, y0), 1))
            else:
                pairs.append((ConjugateCluster("x_zero", (E.a, E.b), 2), 1))
        return Divisor.of(pairs)
    # axis == "y": zeros are the 2-torsion x-roots of x^3 + ax + b
    pairs = [(_INF, -3)]
    cubic = [E.b, E.a, zero, params.one()]
    for e in elements(params):
        if (e * e * e + E.a * e + E.b).is_zero:
            pairs.append((CurvePoint(e, zero), 1))
            # divide the cubic by (x - e) to keep the residual factor
            out = []
            carry = zero
            for coef in reversed(cubic):
                carry = coef + carry * e
                out.append(carry)
            cubic = list(reversed(out[:-1]))
    if len(cubic) > 1:
        pairs.append(
            (ConjugateCluster("y_zero", (E.a, E.b) + tuple(cubic), len(cubic) - 1), 1)
        )
    return Divisor.of(pairs)


def make_coord(E: Curve, axis: str) -> TrackedFunction:
    """The coordinate function x (degree 2) or y (degree 3)."""
    if axis not in ("x", "y"):
        raise ValueError("axis must be 'x' or 'y'")
    return TrackedFunction(E, _Coord(axis), _coord_divisor(E, axis))


def func_mul(f: TrackedFunction, g: TrackedFunction) -> TrackedFunction:
    """Product; divisors add with eager cancellation."""
    if f.curve != g.curve:
        raise ValueError("functions on different curves")
    ff = f.expr.factors if isinstance(f.expr, _Product) else (f.expr,)
    gg = g.expr.factors if isinstance(g.expr, _Product) else (g.expr,)
    return TrackedFunction(f.curve, _Product(ff + gg), f.div + g.div)


def func_pow(f: TrackedFunction, n: int) -> TrackedFunction:
    """Integer power; n = 0 collapses to the constant 1."""
    if n == 0:
        return make_const(f.curve, 1)
    if n == 1:
        return f
    expr = f.expr
    if isinstance(expr, _Power):
        expr = _Power(expr.base, expr.n * n)
    else:
        expr = _Power(expr, n)
    return TrackedFunction(f.curve, expr, f.div.scaled(n))


def func_inv(f: TrackedFunction) -> TrackedFunction:
    """Reciprocal; negated divisor, same degree."""
    return func_pow(f, -1)


def twist(f: TrackedFunction, i: int) -> TrackedFunction:
    """Apply the q^i-power Frobenius to every coefficient of the expression.

    This realizes the function whose composition with the i-th Frobenius of
    the curve equals f^{q^i}; on base-field points the two agree. The divisor
    maps pointwise and the degree is preserved. The curve itself must be
    fixed by Frobenius (base-field coefficients), otherwise the twisted
    divisor would live on a different curve.
    """
    i %= f.curve.params.k
    if i == 0:
        return f
    if f.curve.a.frobenius(i) != f.curve.a or f.curve.b.frobenius(i) != f.curve.b:
        raise ValueError("twist requires a curve with base-field coefficients")
    out = TrackedFunction(f.curve, _twist_node(f.expr, i), f.div.frobenius_image(i))
    if out.deg != f.deg:
        raise ConsistencyError("twist changed the degree")
    return out


def evaluate(f: TrackedFunction, P: CurvePoint) -> ExtFieldElement:
    """Exact value of f at P.

    At a pole (negative multiplicity in the divisor) raises PoleError; a 0/0
    configuration in the expression tree raises IndeterminateError and the
    caller perturbs. At the point at infinity only the divisor can decide:
    positive multiplicity gives 0, absence from the support of a nonconstant
    function is indeterminate here (no projective limits at desk scale).
    """
    _require_on_curve(f.curve, P)
    params = f.curve.params
    if P.is_infinity:
        m = f.div.multiplicity(_INF)
        if m < 0:
            raise PoleError("pole at the point at infinity")
        if m > 0:
            return params.zero()
        if _node_is_constant(f.expr):
            num, den = _eval_node(f.expr, params.zero(), params.zero())
            return num / den
        raise IndeterminateError("cannot evaluate a nonconstant function at infinity")
    num, den = _eval_node(f.expr, P.x, P.y)
    if den.is_zero:
        if num.is_zero:
            raise IndeterminateError(f"0/0 at {P!r}")
        raise PoleError(f"pole at {P!r}")
    return num / den
