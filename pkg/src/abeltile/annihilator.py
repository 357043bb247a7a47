"""Decide whether f*a = 0 has a non-zero bounded integer solution, and build
an explicit periodic witness when it does.

Route: expand f into a signed sum of n deltas (signs become phase offsets 0
or 1/2), then look for a finite-order character whose term phases split into
blocks, each a minimal vanishing sum of roots of unity.  Per candidate
partition the block constraints become one integer linear system over Q/Z:

  * a gauge row per block pins the first phase of the block to 0 (rotation
    canonical form; a per-block rotation unknown keeps full generality),
  * a grid row per remaining position confines that phase to the
    (1/mann_bound(k))-grid, which is where rotated minimal vanishing k-sums
    must live,
  * a torsion row per finite coordinate keeps the character well defined.

Smith normal form turns the solution set into one particular solution plus a
finite set of torsion shifts (directions with zero elementary divisor never
move any block phase, so they are pinned); every candidate is then validated
by exact cyclotomic arithmetic — full-block vanishing and minimality — with a
fast floating-point magnitude prefilter in front.  A verdict of NO therefore
means the whole space was exhausted, not that an enumeration was truncated.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclotomic import (
    is_minimal_vanishing,
    mann_bound,
    retraction_coeff0,
    sum_roots_is_zero,
)
from .errors import CapacityError, InputError
from .groups import FinMap, GroupSpec, PeriodicMap, convolve_periodic, l1_norm, unit_expansion
from .qzlinear import ZERO, IntMatrix, RationalMod1, qz_solution_set

__all__ = [
    "CharacterVector",
    "BlockTrace",
    "AnnihilatorVerdict",
    "decide_zero_annihilator",
    "witness_periodic_annihilator",
    "verify_annihilator",
    "decide_level_shift",
]


@dataclass(frozen=True)
class CharacterVector:
    """Finite-order character ``x -> e(sum_m eta_m x_m)`` of a group.

    Torsion coordinates must satisfy ``N_m * eta_m = 0`` in Q/Z, otherwise the
    evaluation would not be well defined on canonical representatives.
    """

    group: GroupSpec
    etas: tuple

    def __post_init__(self):
        if len(self.etas) != self.group.rank:
            raise InputError("character needs one phase per group coordinate")
        for m, n in enumerate(self.group.torsion):
            eta = self.etas[self.group.free_rank + m]
            if not (n * eta).is_zero:
                raise InputError(f"torsion constraint violated: {n} * {eta} != 0")

    @property
    def order(self) -> int:
        out = 1
        for e in self.etas:
            out = out * e.denominator // math.gcd(out, e.denominator)
        return out

    def phase(self, coords: Sequence[int]) -> RationalMod1:
        x = self.group.canonicalize(tuple(coords))
        acc = ZERO
        for xm, eta in zip(x, self.etas):
            if xm and eta.numerator:
                acc = acc + xm * eta
        return acc

    def fourier_phases(self, f: FinMap) -> list:
        """Phases of the terms of f-hat at this character: eps_j - <b_j, eta>."""
        return [eps - self.phase(x) for x, eps in unit_expansion(f)]


@dataclass(frozen=True)
class BlockTrace:
    term_indices: tuple
    omega: tuple
    xi0: RationalMod1


@dataclass(frozen=True)
class AnnihilatorVerdict:
    answer: str  # "YES" | "NO"
    witness_character: Optional[CharacterVector] = None
    witness_map: Optional[PeriodicMap] = None
    partition_trace: Optional[tuple] = None

    @property
    def is_yes(self) -> bool:
        return self.answer == "YES"


# ---------------------------------------------------------------------------
# partition enumeration over identical-term symmetry


def _iter_multiset_partitions(counts: Tuple[int, ...]):
    """Partitions of a multiset (counts per term type) into blocks of size >= 2.

    A block is a count vector; a partition is emitted as a tuple of blocks in
    canonical order (size descending, then lexicographic), each multiset
    partition exactly once.  Treating equal terms as interchangeable is what
    keeps the search polynomial-ish in practice instead of Bell-number sized.
    """
    ntypes = len(counts)
    bottom_key = (-sum(counts) - 1, (0,) * ntypes)

    def blocks_from(limit_key, counts):
        out = []
        for combo in itertools.product(*(range(c + 1) for c in counts)):
            s = sum(combo)
            if s >= 2:
                key = (-s, combo)
                if key >= limit_key:
                    out.append((key, combo))
        out.sort()
        return out

    def rec(counts, limit_key):
        total = sum(counts)
        if total == 0:
            yield ()
            return
        if total == 1:
            return
        for key, block in blocks_from(limit_key, counts):
            rest = tuple(c - b for c, b in zip(counts, block))
            for tail in rec(rest, key):
                yield (block,) + tail

    yield from rec(tuple(counts), bottom_key)


# ---------------------------------------------------------------------------
# per-partition constraint solve

_FLOAT_TABLE_CAP = 20000
_PREFILTER_TOL = 1e-7


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _solve_partition(group: GroupSpec, types, partition):
    """Try one partition; return (etas, xi0s, block omegas) or None.

    ``types`` is the list of distinct expansion terms ``(elem, eps)``;
    ``partition`` a tuple of per-type count vectors.
    """
    r = group.rank
    nblocks = len(partition)
    cols = r + nblocks

    # ordered block positions: type indices repeated by count, sorted
    blocks: List[List[int]] = []
    for block in partition:
        pos: List[int] = []
        for ti, cnt in enumerate(block):
            pos.extend([ti] * cnt)
        blocks.append(pos)

    rows: List[List[int]] = []
    rhs: List[RationalMod1] = []
    for m, n in enumerate(group.torsion):
        row = [0] * cols
        row[group.free_rank + m] = n
        rows.append(row)
        rhs.append(ZERO)
    functionals: List[Tuple[List[int], RationalMod1]] = []  # (row of L_p, eps_p) per position
    for bi, pos in enumerate(blocks):
        mk = mann_bound(len(pos))
        for p, ti in enumerate(pos):
            elem, eps = types[ti]
            lrow = [-elem[j] for j in range(r)] + [0] * nblocks
            lrow[r + bi] = 1
            functionals.append((lrow, eps))
            if p == 0:
                rows.append(lrow)
                rhs.append(-eps)
            else:
                rows.append([mk * v for v in lrow])
                rhs.append(-(mk * eps))

    sol = qz_solution_set(IntMatrix(rows), rhs)
    if sol is None:
        return None

    # phase of position p at candidate x:  omega_p = eps_p + L_p(x)
    base = []
    for lrow, eps in functionals:
        acc = eps
        for coef, xv in zip(lrow, sol.particular):
            if coef and xv.numerator:
                acc = acc + coef * xv
        base.append(acc)
    shifts = [
        [sum(c * v for c, v in zip(lrow, vec)) for lrow, _ in functionals]
        for vec in sol.shift_vectors
    ]

    denom = 1
    for b in base:
        denom = _lcm(denom, b.denominator)
    for d in sol.shift_moduli:
        denom = _lcm(denom, d)
    base_num = [b.numerator * (denom // b.denominator) for b in base]
    shift_num = [
        [(sv * (denom // d)) % denom for sv in svec]
        for svec, d in zip(shifts, sol.shift_moduli)
    ]
    unit = None
    if denom <= _FLOAT_TABLE_CAP:
        unit = [cmath.exp(2j * cmath.pi * t / denom) for t in range(denom)]

    # block boundaries into the flat position list
    spans = []
    start = 0
    for pos in blocks:
        spans.append((start, start + len(pos)))
        start += len(pos)

    for ts in itertools.product(*(range(d) for d in sol.shift_moduli)):
        nums = list(base_num)
        for t, svec in zip(ts, shift_num):
            if t:
                for p in range(len(nums)):
                    if svec[p]:
                        nums[p] += t * svec[p]
        nums = [v % denom for v in nums]
        ok = True
        if unit is not None:
            for lo, hi in spans:
                s = 0j
                for p in range(lo, hi):
                    s += unit[nums[p]]
                if abs(s) > _PREFILTER_TOL:
                    ok = False
                    break
        if not ok:
            continue
        omegas = [
            tuple(RationalMod1(nums[p], denom) for p in range(lo, hi)) for lo, hi in spans
        ]
        if all(is_minimal_vanishing(om) for om in omegas):
            x = list(sol.particular)
            for t, vec, d in zip(ts, sol.shift_vectors, sol.shift_moduli):
                if t:
                    for j, vj in enumerate(vec):
                        if vj:
                            x[j] = x[j] + RationalMod1(t * vj, d)
            etas = tuple(x[:r])
            xi0s = tuple(x[r:])
            return etas, xi0s, omegas
    return None


def decide_zero_annihilator(group: GroupSpec, f: FinMap, cap: int = 8) -> AnnihilatorVerdict:
    """YES iff some finite-order character kills every Fourier term of f.

    Exhausts all partitions of the unit expansion into blocks of size >= 2 (up
    to identical-term symmetry) in canonical order — largest blocks first,
    lexicographic within — and reports the first success; NO means every
    partition's constraint system was ruled out exactly.

    The expansion size ``n = l1_norm(f)`` must not exceed ``cap``; beyond the
    cap a CapacityError is raised so that an undecided instance can never read
    as a NO.
    """
    if f.group != group:
        raise InputError("f lives on a different group")
    if f.is_zero:
        raise InputError("f = 0 is degenerate: every map annihilates it")
    n = l1_norm(f)
    if n > cap:
        raise CapacityError(f"l1 norm {n} exceeds the decision capacity {cap}")

    terms = unit_expansion(f)
    types: List[Tuple[tuple, RationalMod1]] = []
    counts: List[int] = []
    for term in terms:
        if types and types[-1] == term:
            counts[-1] += 1
        else:
            types.append(term)
            counts.append(1)

    for partition in _iter_multiset_partitions(tuple(counts)):
        got = _solve_partition(group, types, partition)
        if got is None:
            continue
        etas, xi0s, omegas = got
        chi = CharacterVector(group, etas)
        witness = witness_periodic_annihilator(group, chi)
        if not verify_annihilator(f, witness):  # pragma: no cover - internal guard
            raise AssertionError("witness failed re-verification; decider is broken")
        trace = _build_trace(counts, partition, omegas, xi0s)
        return AnnihilatorVerdict("YES", chi, witness, trace)
    return AnnihilatorVerdict("NO")


def _build_trace(counts, partition, omegas, xi0s) -> tuple:
    # concrete term indices: each type occupies a contiguous range in the
    # unit expansion; blocks consume the lowest unused index of each type
    offsets = []
    acc = 0
    for c in counts:
        offsets.append(acc)
        acc += c
    next_free = list(offsets)
    out = []
    for block, omega, xi0 in zip(partition, omegas, xi0s):
        idx = []
        for ti, cnt in enumerate(block):
            for _ in range(cnt):
                idx.append(next_free[ti])
                next_free[ti] += 1
        out.append(BlockTrace(tuple(idx), tuple(omega), xi0))
    return tuple(out)


def witness_periodic_annihilator(group: GroupSpec, chi: CharacterVector) -> PeriodicMap:
    """Periodic integer witness built from a character: the coefficient-of-1
    retraction applied pointwise to chi.

    The result has period = order of chi on the free coordinates, takes the
    value 1 at the identity, and satisfies f*witness = 0 whenever chi kills
    f-hat (the retraction is Z-linear, so it commutes with the finite
    convolution sums).
    """
    if chi.group != group:
        raise InputError("character lives on a different group")
    order = chi.order
    values = [
        retraction_coeff0(chi.phase(x), order) for x in group.fundamental_domain(order)
    ]
    return PeriodicMap(group, order, values)


def verify_annihilator(f: FinMap, a_p: PeriodicMap) -> bool:
    """Exact check: f * a_p vanishes on a fundamental domain and a_p != 0."""
    if a_p.is_zero:
        return False
    return convolve_periodic(f, a_p).is_zero


def decide_level_shift(group: GroupSpec, f: FinMap, cap: int = 8) -> AnnihilatorVerdict:
    """Decide solvability of f*a = k (constant level k, non-constant a).

    With s = sum(f) non-zero the two problems coincide: if f*a = k then
    s*a - k is a non-zero annihilator, and conversely a non-zero annihilator
    is automatically non-constant and already solves the k = 0 instance.  The
    verdict therefore carries the same witness data as the annihilator search.
    Inputs with s = 0 are rejected: then f*a = k forces k = 0 outright and
    the reduction above says nothing.
    """
    if f.group != group:
        raise InputError("f lives on a different group")
    if sum(f.entries.values()) == 0:
        raise InputError(
            "total mass of f is zero; the level-shift reduction does not apply"
        )
    return decide_zero_annihilator(group, f, cap)
