"""Exact arithmetic with roots of unity.

An element of Z[zeta_L] is an integer coefficient vector in the power basis
``1, zeta, ..., zeta^(phi(L)-1)`` modulo the L-th cyclotomic polynomial; since
that polynomial is the minimal polynomial of zeta_L, "all coefficients zero"
*is* the zero test, with no numerics involved.  On top of that this module
enumerates the minimal vanishing tuples used by the annihilator decider: the
ordered tuples ``(0, t_2, ..., t_k)`` of elements of Q/Z whose unit vectors
sum to zero with no vanishing proper subset, all orders dividing the product
of primes up to k.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import CapacityError, InputError
from .qzlinear import ZERO, RationalMod1

__all__ = [
    "cyclotomic_poly",
    "CycElement",
    "sum_roots_is_zero",
    "is_minimal_vanishing",
    "mann_bound",
    "MinimalTuple",
    "enumerate_minimal_tuples",
    "retraction_coeff0",
]


def _poly_mul(p: tuple, q: tuple) -> tuple:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return tuple(out)


def _poly_div_exact(num: Sequence[int], den: Sequence[int]) -> tuple:
    """Quotient of num by monic den; raises if the division leaves a remainder."""
    num = list(num)
    dn = len(den) - 1
    assert den[-1] == 1, "divisor must be monic"
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j, b in enumerate(den):
                num[i - dn + j] -= c * b
    if any(num):
        raise ArithmeticError("division was not exact")
    return tuple(quot)


def _divisors(n: int) -> list:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_poly(L: int) -> tuple:
    """Coefficients (ascending) of the L-th cyclotomic polynomial.

    Computed by exact division of ``x^L - 1`` by the product of the lower
    cyclotomic polynomials over the proper divisors of L; monic of degree
    phi(L).

    >>> cyclotomic_poly(1)
    (-1, 1)
    >>> cyclotomic_poly(6)
    (1, -1, 1)
    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if L < 1:
        raise InputError("level must be a positive integer")
    if L == 1:
        return (-1, 1)
    prod = (1,)
    for d in _divisors(L):
        if d < L:
            prod = _poly_mul(prod, cyclotomic_poly(d))
    x_l_minus_1 = tuple([-1] + [0] * (L - 1) + [1])
    return _poly_div_exact(x_l_minus_1, prod)


# Desk-scale honesty: beyond these levels the dense representations would
# silently eat minutes or gigabytes, so refuse loudly instead.  The caps are
# far above anything the decision procedures produce on in-capacity inputs.
_TABLE_LEVEL_CAP = 5_000
_ZERO_TEST_LEVEL_CAP = 10_000


@lru_cache(maxsize=None)
def _monomial_table(L: int) -> tuple:
    """Power-basis coefficient vectors of ``x^t mod Phi_L`` for 0 <= t < L."""
    if L > _TABLE_LEVEL_CAP:
        raise CapacityError(
            f"cyclotomic level {L} exceeds the power-basis table cap {_TABLE_LEVEL_CAP}"
        )
    phi = cyclotomic_poly(L)
    deg = len(phi) - 1
    rows = []
    row = [0] * deg
    row[0] = 1
    for _ in range(L):
        rows.append(tuple(row))
        lead = row[deg - 1]
        nxt = [0] * deg
        for j in range(deg - 1, 0, -1):
            nxt[j] = row[j - 1]
        if lead:
            # x^deg = -(phi[0] + phi[1] x + ... + phi[deg-1] x^(deg-1))
            for j in range(deg):
                nxt[j] -= lead * phi[j]
        row = nxt
    return tuple(rows)


@dataclass(frozen=True)
class CycElement:
    """An element of Z[zeta_L] in the power basis modulo Phi_L.

    >>> (CycElement.root_power(3, 0) + CycElement.root_power(3, 1)
    ...  + CycElement.root_power(3, 2)).is_zero
    True
    """

    level: int
    coeffs: tuple

    def __post_init__(self):
        deg = len(cyclotomic_poly(self.level)) - 1
        if len(self.coeffs) != deg:
            raise InputError(f"coefficient vector must have length phi({self.level}) = {deg}")

    @classmethod
    def zero(cls, L: int) -> "CycElement":
        deg = len(cyclotomic_poly(L)) - 1
        return cls(L, (0,) * deg)

    @classmethod
    def root_power(cls, L: int, t: int) -> "CycElement":
        """zeta_L ** t, reduced into the power basis."""
        return cls(L, _monomial_table(L)[t % L])

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "CycElement") -> "CycElement":
        if self.level != other.level:
            raise InputError("mixed cyclotomic levels")
        return CycElement(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycElement":
        return CycElement(self.level, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CycElement") -> "CycElement":
        return self + (-other)

    def coeff0(self) -> int:
        """Coefficient of zeta^0; the retraction functional on this ring."""
        return self.coeffs[0]


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


@lru_cache(maxsize=1 << 18)
def _zero_sum_cached(key: tuple) -> bool:
    # key: sorted tuple of (numerator, denominator) pairs
    L = _lcm(d for _, d in key)
    if L > _ZERO_TEST_LEVEL_CAP:
        raise CapacityError(
            f"zero test needs cyclotomic level {L}, beyond the"
            f" {_ZERO_TEST_LEVEL_CAP} cap of this build"
        )
    counts = [0] * L
    for n, d in key:
        counts[n * (L // d)] += 1
    # reduce the exponent-count polynomial modulo Phi_L top-down; Phi_L is
    # monic, so the arithmetic stays in the integers
    phi = cyclotomic_poly(L)
    deg = len(phi) - 1
    for i in range(L - 1, deg - 1, -1):
        lead = counts[i]
        if lead:
            counts[i] = 0
            base = i - deg
            for j in range(deg):
                counts[base + j] -= lead * phi[j]
    return not any(counts[:deg])


def sum_roots_is_zero(thetas: Sequence[RationalMod1]) -> bool:
    """Exact zero test for ``e(theta_1) + ... + e(theta_n)``.

    Reduces the sum of monomials modulo the cyclotomic polynomial at the lcm
    of the denominators and tests for the zero vector.  The empty sum is zero.

    >>> sum_roots_is_zero([RationalMod1(0), RationalMod1(1, 2)])
    True
    >>> sum_roots_is_zero([RationalMod1(0), RationalMod1(1, 3), RationalMod1(2, 3)])
    True
    >>> sum_roots_is_zero([RationalMod1(0), RationalMod1(1, 5)])
    False
    """
    if not thetas:
        return True
    key = tuple(sorted((t.numerator, t.denominator) for t in thetas))
    return _zero_sum_cached(key)


@lru_cache(maxsize=1 << 16)
def _minimal_vanishing_cached(key: tuple) -> bool:
    if not _zero_sum_cached(key):
        return False
    k = len(key)
    # A proper subset vanishes iff its complement does, so it suffices to
    # look at subsets containing position 0, of size 1..k-1.
    rest = range(1, k)
    for r in range(0, k - 1):
        for combo in itertools.combinations(rest, r):
            sub = tuple(sorted((key[0],) + tuple(key[i] for i in combo)))
            if _zero_sum_cached(sub):
                return False
    return True


def is_minimal_vanishing(thetas: Sequence[RationalMod1]) -> bool:
    """True iff the unit vectors at ``thetas`` sum to zero and no proper
    non-empty sub-collection does."""
    if not thetas:
        return False
    key = tuple(sorted((t.numerator, t.denominator) for t in thetas))
    return _minimal_vanishing_cached(key)


def mann_bound(k: int) -> int:
    """Product of the primes at most k (empty product = 1).

    After rotating one entry to zero, a minimal vanishing k-tuple of roots of
    unity only ever needs orders dividing this number.

    >>> [mann_bound(k) for k in range(1, 9)]
    [1, 2, 6, 6, 30, 30, 210, 210]
    """
    if k < 1:
        raise InputError("mann_bound wants k >= 1")
    out = 1
    for p in range(2, k + 1):
        if all(p % q for q in range(2, int(p**0.5) + 1)):
            out *= p
    return out


@dataclass(frozen=True)
class MinimalTuple:
    """Rotation-canonical minimal vanishing tuple: first entry 0, the unit
    vectors sum to zero, no proper subset vanishes, orders divide mann_bound(k)."""

    k: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.k:
            raise InputError("length mismatch")
        if not self.entries or not self.entries[0].is_zero:
            raise InputError("canonical tuples start with 0")

    def sort_key(self):
        return tuple(e.as_fraction() for e in self.entries)


def enumerate_minimal_tuples(k: int, cap: int = 6) -> tuple:
    """All rotation-canonical ordered minimal vanishing k-tuples, sorted.

    Depth-first enumeration of candidate multisets over the (1/M_k)-grid
    (first entry pinned to 0, the rest nondecreasing) with a conservative
    partial-sum magnitude prune, exact zero-sum and minimality validation,
    then expansion of each multiset into all distinct orderings that keep a
    zero in front.

    >>> [t.entries for t in enumerate_minimal_tuples(2)]
    [(RationalMod1(0, 1), RationalMod1(1, 2))]
    >>> len(enumerate_minimal_tuples(3)), len(enumerate_minimal_tuples(4))
    (2, 0)
    """
    if k < 2:
        raise InputError("tuples of length < 2 cannot vanish")
    if k > cap:
        raise CapacityError(
            f"minimal-tuple enumeration for k={k} exceeds the configured cap {cap}"
        )
    M = mann_bound(k)
    unit = [cmath.exp(2j * cmath.pi * t / M) for t in range(M)]
    multisets = []

    def dfs(start: int, chosen: list, acc: complex) -> None:
        remaining = (k - 1) - len(chosen)
        # each remaining unit vector can cancel at most 1 of |acc|
        if abs(acc) > remaining + 1e-9:
            return
        if remaining == 0:
            ts = [ZERO] + [RationalMod1(t, M) for t in chosen]
            if is_minimal_vanishing(ts):
                multisets.append(tuple(chosen))
            return
        for t in range(start, M):
            dfs(t, chosen + [t], acc + unit[t])

    dfs(0, [], 1 + 0j)

    out = set()
    for rest in multisets:
        for perm in set(itertools.permutations(rest)):
            out.add(tuple([ZERO] + [RationalMod1(t, M) for t in perm]))
    tuples = [MinimalTuple(k, entries) for entries in out]
    tuples.sort(key=MinimalTuple.sort_key)
    return tuple(tuples)


def retraction_coeff0(theta: RationalMod1, L: int) -> int:
    """Coefficient of zeta_L^0 in the power-basis reduction of zeta_L^(theta*L).

    A Z-linear functional on Z[zeta_L] that maps 1 to 1 — the computable
    stand-in for a retraction homomorphism onto the rationals.  Reducing a
    monomial keeps integer coefficients, so no denominator-clearing factor is
    ever needed.

    >>> retraction_coeff0(RationalMod1(0), 5)
    1
    >>> retraction_coeff0(RationalMod1(1, 2), 2)
    -1
    >>> retraction_coeff0(RationalMod1(1, 3), 3)
    0
    """
    if L < 1:
        raise InputError("level must be a positive integer")
    if L % theta.denominator != 0:
        raise InputError(f"denominator of {theta} does not divide level {L}")
    t = theta.numerator * (L // theta.denominator)
    return _monomial_table(L)[t][0]
