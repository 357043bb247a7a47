"""Decide f*1_A = g on Z² by dovetailing two semi-procedures.

One side searches for a solution that repeats on a square torus (periods run
over multiples of g's period); the other side searches for a finite window
around the origin on which no partial 0/1 assignment can satisfy the
convolution constraints (such a window rules out *every* A, periodic or not).
Whichever side lands first decides the instance; if both ladders run out the
verdict is UNKNOWN — an honest budget statement, never a NO.

Both sides share one backtracking engine over pseudo-boolean equality
constraints with interval propagation: each constraint tracks the reachable
min/max of its left side under the current partial assignment and forces a
cell as soon as one of its two values becomes unreachable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceededError, InputError
from .groups import FinMap, GroupSpec, PeriodicMap, convolve_periodic

__all__ = [
    "TorusAssignment",
    "SearchBudget",
    "MultitileVerdict",
    "periodic_search",
    "box_refute",
    "verify_multitile",
    "decide_multitile",
]

Z2 = GroupSpec(2)


@dataclass(frozen=True)
class TorusAssignment:
    """0/1 pattern on [q]², read row-major: bits[x*q + y] covers cell (x, y)."""

    q: int
    bits: Tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.q, int) or isinstance(self.q, bool) or self.q < 1:
            raise InputError("torus side must be a positive integer")
        bits = tuple(self.bits)
        if len(bits) != self.q * self.q:
            raise InputError(f"expected {self.q * self.q} bits, got {len(bits)}")
        for b in bits:
            if b not in (0, 1) or isinstance(b, bool):
                raise InputError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def bit(self, x: int, y: int) -> int:
        return self.bits[(x % self.q) * self.q + (y % self.q)]

    def to_periodic_map(self) -> PeriodicMap:
        return PeriodicMap(Z2, self.q, self.bits)

    def render(self) -> str:
        rows = []
        for x in range(self.q):
            rows.append("".join("#" if self.bits[x * self.q + y] else "." for y in range(self.q)))
        return "\n".join(rows)


@dataclass(frozen=True)
class SearchBudget:
    max_q: int = 12
    max_box_radius: int = 6
    max_nodes: int = 200_000

    def __post_init__(self):
        for name in ("max_q", "max_box_radius", "max_nodes"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise InputError(f"{name} must be a positive integer")


@dataclass(frozen=True)
class MultitileVerdict:
    answer: str  # "YES" | "NO" | "UNKNOWN"
    certificate: Optional[TorusAssignment] = None
    refutation_box_radius: Optional[int] = None
    budget_note: Optional[str] = None
    nodes_used: int = 0

    @property
    def is_yes(self) -> bool:
        return self.answer == "YES"


# ---------------------------------------------------------------------------
# shared pseudo-boolean engine


class _Csp:
    """Equality constraints sum(c_i * x_i) = t over 0/1 cells.

    Interval propagation: acc tracks the assigned part, pos/neg the remaining
    swing, so lo = acc + neg and hi = acc + pos bound what the constraint can
    still reach.  A cell is forced when one of its values would push lo past t
    or pull hi below it.
    """

    def __init__(self, nvars: int, constraints: Sequence[Tuple[Sequence[Tuple[int, int]], int]]):
        self.nvars = nvars
        self.value = [-1] * nvars
        self.trail: List[int] = []
        self.terms: List[List[Tuple[int, int]]] = []
        self.target: List[int] = []
        self.acc: List[int] = []
        self.pos: List[int] = []
        self.neg: List[int] = []
        self.var_cons: List[List[Tuple[int, int]]] = [[] for _ in range(nvars)]
        for terms, t in constraints:
            k = len(self.terms)
            merged: Dict[int, int] = {}
            for v, c in terms:
                merged[v] = merged.get(v, 0) + c
            live = [(v, c) for v, c in sorted(merged.items()) if c]
            self.terms.append(live)
            self.target.append(t)
            self.acc.append(0)
            self.pos.append(sum(c for _, c in live if c > 0))
            self.neg.append(sum(c for _, c in live if c < 0))
            for v, c in live:
                self.var_cons[v].append((k, c))

    def _assign(self, v: int, b: int) -> None:
        self.value[v] = b
        self.trail.append(v)
        for k, c in self.var_cons[v]:
            self.acc[k] += c * b
            if c > 0:
                self.pos[k] -= c
            else:
                self.neg[k] -= c

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            v = self.trail.pop()
            b = self.value[v]
            self.value[v] = -1
            for k, c in self.var_cons[v]:
                self.acc[k] -= c * b
                if c > 0:
                    self.pos[k] += c
                else:
                    self.neg[k] += c

    def propagate(self, queue: List[int]) -> bool:
        """Fixpoint over the queued constraints; False on a dead end."""
        value = self.value
        while queue:
            k = queue.pop()
            t = self.target[k]
            acc, pos, neg = self.acc[k], self.pos[k], self.neg[k]
            if acc + neg > t or acc + pos < t:
                return False
            for v, c in self.terms[k]:
                if value[v] != -1:
                    continue
                if c > 0:
                    force0 = acc + c + neg > t
                    force1 = acc + pos - c < t
                else:
                    force0 = acc + c + pos < t
                    force1 = acc + neg - c > t
                if force0 and force1:
                    return False
                if force0 or force1:
                    b = 1 if force1 else 0
                    self._assign(v, b)
                    for k2, _ in self.var_cons[v]:
                        queue.append(k2)
                    # this constraint's own bounds moved; rescan it
                    queue.append(k)
                    break
        return True

    def assign_and_propagate(self, v: int, b: int) -> bool:
        self._assign(v, b)
        return self.propagate([k for k, _ in self.var_cons[v]])

    def solve(self, max_nodes: int) -> Tuple[Optional[List[int]], int]:
        """First solution in lexicographic cell order (0 before 1), or None.

        Decisions are taken on the lowest unassigned cell, so together with
        sound propagation the first solution found is the lex-least one.
        Raises BudgetExceededError when the decision count passes max_nodes.
        """
        nodes = [0]
        if not self.propagate(list(range(len(self.terms)))):
            return None, 0
        value = self.value

        def rec(lo: int) -> bool:
            v = lo
            while v < self.nvars and value[v] != -1:
                v += 1
            if v == self.nvars:
                return True
            nodes[0] += 1
            if nodes[0] > max_nodes:
                raise BudgetExceededError(
                    f"search exceeded the node budget of {max_nodes}"
                )
            for b in (0, 1):
                mark = len(self.trail)
                if self.assign_and_propagate(v, b) and rec(v + 1):
                    return True
                self.undo(mark)
            return False

        if rec(0):
            return list(value), nodes[0]
        return None, nodes[0]


# ---------------------------------------------------------------------------
# the two semi-procedures


def _require_z2(f: FinMap, g: PeriodicMap) -> None:
    if f.group != Z2 or g.group != Z2:
        raise InputError("multi-tiling decision is implemented for Z² only")


def _periodic_search_ex(f: FinMap, g: PeriodicMap, q: int, max_nodes: int):
    _require_z2(f, g)
    if not isinstance(q, int) or isinstance(q, bool) or q < 1:
        raise InputError("torus side must be a positive integer")
    if q % g.period != 0:
        raise InputError(f"torus side {q} is not a multiple of g's period {g.period}")
    constraints = []
    supp = [(y, f.coeff(y)) for y in f.support()]
    for x0 in range(q):
        for x1 in range(q):
            terms = [
                ((x0 - y[0]) % q * q + (x1 - y[1]) % q, c) for y, c in supp
            ]
            constraints.append((terms, g.value((x0, x1))))
    csp = _Csp(q * q, constraints)
    solution, nodes = csp.solve(max_nodes)
    if solution is None:
        return None, nodes
    return TorusAssignment(q, tuple(solution)), nodes


def periodic_search(
    f: FinMap, g: PeriodicMap, q: int, max_nodes: int = SearchBudget().max_nodes
) -> Optional[TorusAssignment]:
    """Lex-least qZ²-periodic solution of f*1_A = g, or None if the torus
    admits none.  Exact: encodes one equality constraint per torus cell and
    exhausts the assignment tree (budget overruns raise, they never return)."""
    return _periodic_search_ex(f, g, q, max_nodes)[0]


def _box_refute_ex(f: FinMap, g: PeriodicMap, n: int, max_nodes: int):
    _require_z2(f, g)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputError("box radius must be a non-negative integer")
    supp = [(y, f.coeff(y)) for y in f.support()]
    radius = max((max(abs(y[0]), abs(y[1])) for y, _ in supp), default=0)
    side = 2 * (n + radius) + 1

    def vid(p0: int, p1: int) -> int:
        return (p0 + n + radius) * side + (p1 + n + radius)

    constraints = []
    for x0 in range(-n, n + 1):
        for x1 in range(-n, n + 1):
            terms = [(vid(x0 - y[0], x1 - y[1]), c) for y, c in supp]
            constraints.append((terms, g.value((x0, x1))))
    csp = _Csp(side * side, constraints)
    solution, nodes = csp.solve(max_nodes)
    return solution is None, nodes


def box_refute(
    f: FinMap, g: PeriodicMap, n: int, max_nodes: int = SearchBudget().max_nodes
) -> bool:
    """True iff no 0/1 assignment on the window [−n−R, n+R]² meets the
    convolution constraint on every cell of [−n,n]² (R = support radius of f).

    True refutes global existence: any solution restricts to a consistent
    window.  A budget overrun raises BudgetExceededError — inconclusive is
    never reported as False.
    """
    return _box_refute_ex(f, g, n, max_nodes)[0]


def verify_multitile(f: FinMap, g: PeriodicMap, cert: TorusAssignment) -> bool:
    """Exact convolution check of a torus certificate on all q² cells."""
    _require_z2(f, g)
    if cert.q % g.period != 0:
        raise InputError(
            f"certificate period {cert.q} is not a multiple of g's period {g.period}"
        )
    return convolve_periodic(f, cert.to_periodic_map()).equals(g)


def decide_multitile(
    f: FinMap, g: PeriodicMap, budget: SearchBudget = SearchBudget()
) -> MultitileVerdict:
    """Dovetailed decision of "does some A ⊂ Z² satisfy f*1_A = g?".

    Alternates one torus attempt (q = period, 2·period, … ≤ max_q) with one
    refutation attempt (radius 0, 1, … ≤ max_box_radius), each under its own
    node allowance.  YES and NO both come with re-checkable certificates;
    UNKNOWN reports which ladders were exhausted and whether any attempt was
    cut short by the node budget.
    """
    _require_z2(f, g)
    total_nodes = 0

    if f.is_zero:
        # degenerate: f*1_A is identically zero, so only g = 0 is solvable
        if g.is_zero:
            cert = TorusAssignment(g.period, (0,) * (g.period * g.period))
            return MultitileVerdict("YES", certificate=cert)
        for n in range(g.period + 1):
            refuted, nodes = _box_refute_ex(f, g, n, budget.max_nodes)
            total_nodes += nodes
            if refuted:
                return MultitileVerdict(
                    "NO", refutation_box_radius=n, nodes_used=total_nodes
                )

    qs = list(range(g.period, budget.max_q + 1, g.period))
    ns = list(range(0, budget.max_box_radius + 1))
    truncated = 0
    step = 0
    while step < max(len(qs), len(ns)):
        if step < len(qs):
            try:
                cert, nodes = _periodic_search_ex(f, g, qs[step], budget.max_nodes)
                total_nodes += nodes
                if cert is not None:
                    if not verify_multitile(f, g, cert):  # pragma: no cover - guard
                        raise AssertionError("torus certificate failed re-verification")
                    return MultitileVerdict(
                        "YES", certificate=cert, nodes_used=total_nodes
                    )
            except BudgetExceededError:
                truncated += 1
                total_nodes += budget.max_nodes
        if step < len(ns):
            try:
                refuted, nodes = _box_refute_ex(f, g, ns[step], budget.max_nodes)
                total_nodes += nodes
                if refuted:
                    return MultitileVerdict(
                        "NO", refutation_box_radius=ns[step], nodes_used=total_nodes
                    )
            except BudgetExceededError:
                truncated += 1
                total_nodes += budget.max_nodes
        step += 1

    note = (
        f"exhausted torus sides {qs or 'none'} and box radii {ns}"
        f" with {budget.max_nodes} nodes per attempt"
    )
    if truncated:
        note += f"; {truncated} attempt(s) were cut short by the node budget"
    return MultitileVerdict("UNKNOWN", budget_note=note, nodes_used=total_nodes)
