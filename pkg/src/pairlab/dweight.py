"""Minimal signed q-ary digit weight D(a) modulo q^k - 1.

D(a) is the least total digit mass S = sum(a_i) + sum(b_i) over all
representations a = sum a_i q^i - sum b_i q^i (mod q^k - 1) with nonnegative
digits. Because q^k = 1 (mod M) for M = q^k - 1, each representation is a
walk on the residues mod M whose unit-cost steps add or subtract q^i, so D
is exactly the breadth-first distance from 0 on that graph. No a-priori
bound on individual digits is needed; the graph search sidesteps the
question entirely. A direct digit-vector enumerator serves as an
independent oracle.

The all-residue distance table is computed once per frame and cached as
immutable bytes, so concurrent readers need no coordination.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import ConsistencyError, SizeCapError
from .field import ORDER_CAP

# BFS allocates one byte per residue; the default cap keeps tables small.
DEFAULT_STATE_CAP = 1 << 24


@dataclass(frozen=True)
class DParams:
    """The representation frame: base q >= 2 (primality not required here),
    digit count k, modulus M = q^k - 1."""

    q: int
    k: int
    state_cap: int = field(default=DEFAULT_STATE_CAP, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("base q must be >= 2")
        if self.k < 1:
            raise ValueError("length k must be >= 1")
        m = self.q ** self.k - 1
        if m > ORDER_CAP:
            raise SizeCapError(f"q^k - 1 = {m} exceeds the 2^63 cap")
        if m > self.state_cap:
            raise SizeCapError(f"q^k - 1 = {m} exceeds the BFS state cap {self.state_cap}")

    @property
    def m(self) -> int:
        return self.q ** self.k - 1

    def moves(self) -> list[tuple[int, int, int]]:
        """Unit-cost moves as (digit position, sign, residue of q^i mod M),
        in the canonical tie-break order +q^0, -q^0, +q^1, ..."""
        m = self.m
        out = []
        for i in range(self.k):
            p = pow(self.q, i, m) if m > 1 else 0
            out.append((i, +1, p))
            out.append((i, -1, p))
        return out


@dataclass(frozen=True)
class DigitWitness:
    """A representation realizing D(a): digits a_i (positive) and b_i
    (negative), with weight = sum of all digits."""

    a_digits: tuple[int, ...]
    b_digits: tuple[int, ...]
    weight: int

    def __post_init__(self) -> None:
        if len(self.a_digits) != len(self.b_digits):
            raise ValueError("digit vectors must have equal length")
        if any(d < 0 for d in self.a_digits + self.b_digits):
            raise ValueError("digits must be nonnegative")
        if self.weight != sum(self.a_digits) + sum(self.b_digits):
            raise ValueError("weight does not match digit sums")

    def residue(self, params: DParams) -> int:
        """The residue mod M this witness represents."""
        m = params.m
        acc = 0
        for i, (ai, bi) in enumerate(zip(self.a_digits, self.b_digits)):
            acc += (ai - bi) * pow(params.q, i, m)
        return acc % m

    def satisfies(self, a: int, params: DParams) -> bool:
        return self.residue(params) == a % params.m


@lru_cache(maxsize=None)
def distance_table(params: DParams) -> bytes:
    """D(a) for every residue a mod M, as a byte per residue.

    Level-synchronous BFS from 0 with the +-q^i moves; distances at desk
    scale never approach 255.
    """
    m = params.m
    if m == 1:
        return b"\x00"
    dist = bytearray(b"\xff") * m
    dist[0] = 0
    step_set = set()
    for _i, _sign, p in params.moves():
        step_set.add(p % m)
        step_set.add((m - p) % m)
    step_set.discard(0)
    moves = sorted(step_set)
    frontier = [0]
    w = 0
    while frontier:
        w += 1
        if w > 254:
            raise ConsistencyError("digit weight exceeded byte range")
        nxt = []
        push = nxt.append
        for s in frontier:
            for mv in moves:
                t = s + mv
                if t >= m:
                    t -= m
                if dist[t] == 255:
                    dist[t] = w
                    push(t)
        frontier = nxt
    return bytes(dist)


def d_weight(a: int, params: DParams) -> tuple[int, DigitWitness]:
    """The exact minimal weight D(a) together with a witness representation.

    The witness is reconstructed by walking the BFS distance table back to 0,
    trying moves in the canonical order, so it is deterministic. A minimal
    witness never uses both signs at one position (removing a +q^i, -q^i pair
    would shorten it), which is asserted.
    """
    m = params.m
    a %= m
    k = params.k
    if a == 0:
        return 0, DigitWitness((0,) * k, (0,) * k, 0)
    table = distance_table(params)
    w = table[a]
    moves = params.moves()
    aa = [0] * k
    bb = [0] * k
    cur = a
    while cur:
        cw = table[cur]
        for i, sign, mv in moves:
            prev = (cur - sign * mv) % m
            if table[prev] == cw - 1:
                if sign > 0:
                    aa[i] += 1
                else:
                    bb[i] += 1
                cur = prev
                break
        else:
            raise ConsistencyError("BFS table has no predecessor")
    if any(x and y for x, y in zip(aa, bb)):
        raise ConsistencyError("minimal witness mixed signs at one position")
    witness = DigitWitness(tuple(aa), tuple(bb), w)
    if not witness.satisfies(a, params):
        raise ConsistencyError("reconstructed witness does not represent a")
    return w, witness


def d_weight_bruteforce(a: int, params: DParams, weight_cap: int) -> Optional[int]:
    """Independent oracle: enumerate all digit vectors c in [-cap, cap]^k with
    sum |c_i| <= cap and return the minimal weight representing a, or None
    when every representation needs more than the cap."""
    m = params.m
    a %= m
    powers = [pow(params.q, i, m) if m > 1 else 0 for i in range(params.k)]
    best = None
    for digits in itertools.product(range(-weight_cap, weight_cap + 1), repeat=params.k):
        w = sum(d if d >= 0 else -d for d in digits)
        if w > weight_cap or (best is not None and w >= best):
            continue
        if sum(d * p for d, p in zip(digits, powers)) % m == a:
            best = w
    return best


def bruteforce_table(params: DParams, weight_cap: int) -> list[Optional[int]]:
    """All-residue variant of d_weight_bruteforce via a single enumeration."""
    m = params.m
    powers = [pow(params.q, i, m) if m > 1 else 0 for i in range(params.k)]
    best: list[Optional[int]] = [None] * m
    for digits in itertools.product(range(-weight_cap, weight_cap + 1), repeat=params.k):
        w = sum(d if d >= 0 else -d for d in digits)
        if w > weight_cap:
            continue
        res = sum(d * p for d, p in zip(digits, powers)) % m
        if best[res] is None or w < best[res]:
            best[res] = w
    return best


@dataclass(frozen=True)
class LemmaReport:
    """Outcome of the exhaustive check D((q-1)a) <= 2 D(a) over all residues."""

    q: int
    k: int
    m: int
    passed: bool
    max_ratio_num: int
    max_ratio_den: int
    argmax_a: int
    violations: tuple[int, ...]


def check_qminus1_lemma(params: DParams) -> LemmaReport:
    """Verify D((q-1)a mod M) <= 2 D(a) for every residue a.

    Reports the residue attaining the largest ratio D((q-1)a)/D(a). A
    violation would falsify the multiply-by-(q-1) step used to halve the
    threshold, so it is surfaced as a failed report rather than an exception.
    """
    table = distance_table(params)
    m = params.m
    q = params.q
    best_num, best_den, best_a = 0, 1, 0
    violations = []
    for a in range(m):
        lhs = table[((q - 1) * a) % m]
        rhs = table[a]
        if lhs > 2 * rhs:
            violations.append(a)
        if rhs > 0 and lhs * best_den > best_num * rhs:
            best_num, best_den, best_a = lhs, rhs, a
    return LemmaReport(
        q=q,
        k=params.k,
        m=m,
        passed=not violations,
        max_ratio_num=best_num,
        max_ratio_den=best_den,
        argmax_a=best_a,
        violations=tuple(violations),
    )
