"""Exact arithmetic in small prime fields and their extensions.

F_{q^k} is represented as F_q[t] modulo one monic irreducible polynomial,
never as a nested tower. Everything is desk scale: q^k - 1 must stay inside
a signed 64-bit word, so residues and exponents are plain Python ints and no
big-integer machinery is needed. All values are immutable and safe to share
across concurrently running scans.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import ConsistencyError, DivisibilityError, SizeCapError

# Largest allowed multiplicative group order q^k - 1.
ORDER_CAP = (1 << 63) - 1


def is_prime(n: int) -> bool:
    """Trial-division primality check, exact and fast at desk scale."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldParams:
    """Parameters of F_{q^k} as F_q[t]/(modulus_poly).

    modulus_poly holds k+1 coefficients, constant term first, leading
    coefficient 1. For k = 1 the modulus is t itself and elements degenerate
    to residues mod q.
    """

    q: int
    k: int
    modulus_poly: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise ValueError(f"q = {self.q} is not prime")
        if self.k < 1:
            raise ValueError("extension degree k must be >= 1")
        if self.q ** self.k - 1 > ORDER_CAP:
            raise SizeCapError(f"q^k - 1 exceeds the 2^63 cap for q={self.q}, k={self.k}")
        poly = self.modulus_poly
        if len(poly) != self.k + 1 or poly[-1] != 1:
            raise ValueError("modulus_poly must be monic of degree k")
        if any(not (0 <= c < self.q) for c in poly):
            raise ValueError("modulus_poly coefficients must be reduced mod q")
        # Necessary condition for irreducibility when k >= 2: no root in F_q.
        if self.k >= 2:
            for c in range(self.q):
                acc = 0
                for coef in reversed(poly):
                    acc = (acc * c + coef) % self.q
                if acc == 0:
                    raise ValueError("modulus_poly has a root in F_q, not irreducible")

    @property
    def order(self) -> int:
        return self.q ** self.k

    def element(self, coeffs) -> "ExtFieldElement":
        return ExtFieldElement(self, coeffs)

    def scalar(self, c: int) -> "ExtFieldElement":
        """Embed an integer residue of F_q as a constant polynomial."""
        return ExtFieldElement(self, (c,))

    def zero(self) -> "ExtFieldElement":
        return ExtFieldElement(self, (0,))

    def one(self) -> "ExtFieldElement":
        return ExtFieldElement(self, (1,))

    def __repr__(self) -> str:
        return f"FieldParams(q={self.q}, k={self.k})"


@dataclass(frozen=True)
class FieldElement:
    """Residue in the prime field F_q."""

    q: int
    value: int

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise ValueError(f"q = {self.q} is not prime")
        object.__setattr__(self, "value", self.value % self.q)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.q != self.q:
                raise ValueError("mixed prime fields")
            return other
        if isinstance(other, int):
            return FieldElement(self.q, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.q, self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.q, self.value - o.value)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.q, o.value - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.q, self.value * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.value == 0:
            raise ZeroDivisionError("division by zero in F_q")
        return self * o.inverse()

    def __neg__(self):
        return FieldElement(self.q, -self.value)

    def __pow__(self, e: int):
        if self.value == 0:
            if e > 0:
                return self
            if e == 0:
                return FieldElement(self.q, 1)
            raise ZeroDivisionError("inversion of zero in F_q")
        return FieldElement(self.q, pow(self.value, e % (self.q - 1), self.q))

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("inversion of zero in F_q")
        return FieldElement(self.q, pow(self.value, self.q - 2, self.q))

    def embed(self, params: FieldParams) -> "ExtFieldElement":
        if params.q != self.q:
            raise ValueError("cannot embed into a field of different characteristic")
        return params.scalar(self.value)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"F{self.q}({self.value})"


class ExtFieldElement:
    """Element of F_{q^k}, stored as k reduced coefficients, low degree first.

    Immutable by convention and hashable, so points and divisors can key on
    field values directly.
    """

    __slots__ = ("params", "coeffs")

    def __init__(self, params: FieldParams, coeffs) -> None:
        q, k = params.q, params.k
        cs = tuple(int(c) % q for c in coeffs)
        if len(cs) < k:
            cs = cs + (0,) * (k - len(cs))
        elif len(cs) > k:
            raise ValueError(f"expected at most {k} coefficients, got {len(cs)}")
        self.params = params
        self.coeffs = cs

    @classmethod
    def _raw(cls, params, coeffs) -> "ExtFieldElement":
        # Internal fast path: coeffs already canonical.
        e = cls.__new__(cls)
        e.params = params
        e.coeffs = coeffs
        return e

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, ExtFieldElement):
            if other.params != self.params:
                raise ValueError("mixed extension fields")
            return other
        if isinstance(other, int):
            return self.params.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        q = self.params.q
        return ExtFieldElement._raw(
            self.params, tuple((a + b) % q for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        q = self.params.q
        return ExtFieldElement._raw(
            self.params, tuple((a - b) % q for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else o - self

    def __neg__(self):
        q = self.params.q
        return ExtFieldElement._raw(self.params, tuple((-a) % q for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtFieldElement._raw(self.params, _mul_coeffs(self.params, self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if self.is_zero:
            if e > 0:
                return self
            if e == 0:
                return self.params.one()
            raise ZeroDivisionError("inversion of zero in F_{q^k}")
        params = self.params
        e %= params.order - 1
        if params.k == 1:
            return ExtFieldElement._raw(params, (pow(self.coeffs[0], e, params.q),))
        result = params.one().coeffs
        base = self.coeffs
        while e:
            if e & 1:
                result = _mul_coeffs(params, result, base)
            base = _mul_coeffs(params, base, base)
            e >>= 1
        return ExtFieldElement._raw(params, result)

    def inverse(self) -> "ExtFieldElement":
        if self.is_zero:
            raise ZeroDivisionError("inversion of zero in F_{q^k}")
        return ExtFieldElement._raw(self.params, _inv_coeffs(self.params, self.coeffs))

    def frobenius(self, i: int) -> "ExtFieldElement":
        """Apply the q-power Frobenius i times (x -> x^{q^i})."""
        i %= self.params.k
        if i == 0 or self.is_zero:
            return self
        return self ** (self.params.q ** i)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtFieldElement):
            return self.params == other.params and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.params.scalar(other)
        return NotImplemented

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        return hash((self.coeffs, self.params.q, self.params.k))

    def __repr__(self) -> str:
        return f"Ext{list(self.coeffs)}@q{self.params.q}^{self.params.k}"


def _mul_coeffs(params: FieldParams, a: tuple, b: tuple) -> tuple:
    # Schoolbook product reduced by the monic modulus.
    q, k = params.q, params.k
    if k == 1:
        return ((a[0] * b[0]) % q,)
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    mod = params.modulus_poly
    for idx in range(2 * k - 2, k - 1, -1):
        c = prod[idx] % q
        if c:
            off = idx - k
            for j in range(k):
                prod[off + j] -= c * mod[j]
        prod[idx] = 0
    return tuple(v % q for v in prod[:k])


def _inv_coeffs(params: FieldParams, a: tuple) -> tuple:
    # Extended Euclid against the irreducible modulus; much cheaper than the
    # q^k - 2 power in the hot point-addition path.
    q, k = params.q, params.k
    if k == 1:
        return (pow(a[0], q - 2, q),)
    r0 = list(params.modulus_poly)
    r1 = _ptrim([c % q for c in a])
    s0, s1 = [0], [1]
    while True:
        if len(r1) == 1:
            inv = pow(r1[0], q - 2, q)
            out = [(c * inv) % q for c in s1]
            return tuple(out[:k] + [0] * (k - len(out)))
        inv_lead = pow(r1[-1], q - 2, q)
        r2 = list(r0)
        u = [0] * (len(r0) - len(r1) + 1)
        while len(r2) >= len(r1) and r2 != [0]:
            c = (r2[-1] * inv_lead) % q
            off = len(r2) - len(r1)
            u[off] = c
            for j in range(len(r1)):
                r2[off + j] = (r2[off + j] - c * r1[j]) % q
            _ptrim(r2)
        us1 = [0] * (len(u) + len(s1) - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, sj in enumerate(s1):
                    us1[i + j] = (us1[i + j] + ui * sj) % q
        s2 = [((s0[i] if i < len(s0) else 0) - (us1[i] if i < len(us1) else 0)) % q
              for i in range(max(len(s0), len(us1)))]
        r0, r1 = r1, _ptrim(r2)
        s0, s1 = s1, _ptrim(s2)


def field_arith(x: ExtFieldElement, y, op: str) -> ExtFieldElement:
    """Dispatch one of {add, sub, mul, div, pow} on extension elements.

    For pow, y is an integer exponent (negative allowed when x is nonzero).
    """
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "pow":
        return x ** y
    raise ValueError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# Polynomial helpers over F_q (coefficient lists, low degree first).

def _ptrim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _pmulmod(a: list[int], b: list[int], mod: tuple[int, ...], q: int) -> list[int]:
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % q
    for idx in range(len(prod) - 1, k - 1, -1):
        c = prod[idx]
        if c:
            off = idx - k
            for j in range(k):
                prod[off + j] = (prod[off + j] - c * mod[j]) % q
        prod[idx] = 0
    return _ptrim(prod[:k] if len(prod) >= k else prod)


def _ppowmod(base: list[int], e: int, mod: tuple[int, ...], q: int) -> list[int]:
    result = [1]
    b = list(base)
    while e:
        if e & 1:
            result = _pmulmod(result, b, mod, q)
        b = _pmulmod(b, b, mod, q)
        e >>= 1
    return result


def _pmod_poly(a: list[int], b: list[int], q: int) -> list[int]:
    # remainder of a modulo nonzero b
    a, b = _ptrim(list(a)), _ptrim(list(b))
    inv_lead = pow(b[-1], q - 2, q)
    while len(a) >= len(b) and a != [0]:
        c = (a[-1] * inv_lead) % q
        off = len(a) - len(b)
        for j in range(len(b)):
            a[off + j] = (a[off + j] - c * b[j]) % q
        _ptrim(a)
    return a


def _pgcd(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b != [0]:
        a, b = b, _pmod_poly(a, b, q)
    return a


def _poly_irreducible(poly: tuple[int, ...], q: int) -> bool:
    # Rabin's test: x^(q^k) = x mod f, and gcd(x^(q^(k/p)) - x, f) = 1 for
    # every prime p dividing k.
    k = len(poly) - 1
    if k == 1:
        return True
    x = [0, 1]
    xqk = _ppowmod(x, q ** k, poly, q)
    if _ptrim(list(xqk)) != [0, 1]:
        return False
    kk = k
    primes = []
    f = 2
    while f * f <= kk:
        if kk % f == 0:
            primes.append(f)
            while kk % f == 0:
                kk //= f
        f += 1
    if kk > 1:
        primes.append(kk)
    for p in primes:
        h = _ppowmod(x, q ** (k // p), poly, q)
        h = list(h) + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % q
        g = _pgcd(h, list(poly), q)
        if len(_ptrim(g)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def build_extension(q: int, k: int, cap: int = ORDER_CAP) -> FieldParams:
    """Construct F_{q^k} with a deterministic irreducible modulus.

    The modulus is the first monic irreducible found when the non-leading
    coefficients are read as a base-q integer counting up from zero, so test
    vectors reproduce across runs.
    """
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    if k < 1:
        raise ValueError("extension degree k must be >= 1")
    if q ** k - 1 > cap:
        raise SizeCapError(f"q^k - 1 exceeds the cap for q={q}, k={k}")
    if k == 1:
        return FieldParams(q, 1, (0, 1))
    for m in range(q ** k):
        digits = []
        mm = m
        for _ in range(k):
            digits.append(mm % q)
            mm //= q
        poly = tuple(digits) + (1,)
        # cheap screen: a root in F_q rules the candidate out
        if any(
            sum(coef * pow(c, j, q) for j, coef in enumerate(poly)) % q == 0
            for c in range(q)
        ):
            continue
        if _poly_irreducible(poly, q):
            return FieldParams(q, k, poly)
    raise ConsistencyError(f"no irreducible polynomial of degree {k} over F_{q}")


@lru_cache(maxsize=None)
def base_params(q: int) -> FieldParams:
    """F_q itself, as the degenerate degree-1 extension."""
    return build_extension(q, 1)


def frobenius(x: ExtFieldElement, i: int) -> ExtFieldElement:
    """The i-th power of the q-Frobenius automorphism, x -> x^{q^i}."""
    if i < 0:
        raise ValueError("Frobenius power must be >= 0")
    return x.frobenius(i)


def elements(params: FieldParams) -> Iterator[ExtFieldElement]:
    """All elements of F_{q^k} in canonical index order."""
    for idx in range(params.order):
        yield element_at(params, idx)


def element_at(params: FieldParams, idx: int) -> ExtFieldElement:
    """The element whose coefficient vector is idx written in base q."""
    digits = []
    for _ in range(params.k):
        digits.append(idx % params.q)
        idx //= params.q
    return ExtFieldElement(params, digits)


def mu_r_generator(params: FieldParams, r: int) -> ExtFieldElement:
    """A generator of the group of r-th roots of unity in F_{q^k}.

    Requires prime r dividing q^k - 1 (r = 1 returns 1 and the trivial
    group). The element returned is the first x, in canonical element order,
    whose (q^k - 1)/r power is nontrivial.
    """
    if r == 1:
        return params.one()
    if not is_prime(r):
        raise ValueError(f"r = {r} is not prime")
    m = params.order - 1
    if m % r != 0:
        raise DivisibilityError(f"r = {r} does not divide q^k - 1 = {m}")
    e = m // r
    one = params.one()
    for idx in range(1, params.order):
        g = element_at(params, idx) ** e
        if g != one:
            return g
    raise ConsistencyError("multiplicative group of a finite field is cyclic")
