"""Braid-orbit oracle.

Enumerates tuples ``(g_1, ..., g_n)`` over the classes of an equipment with
product one, generating the group and with prescribed class multiplicities
``tau``, and counts their orbits under Hurwitz moves

    (g_i, g_{i+1}) -> (g_i g_{i+1} g_i^-1, g_i).

For large multiplicities the orbit count is expected to settle at the
ambiguity index.  The threshold is not known, so the oracle only reports
whether consecutive steps of a growth schedule agree.

Tuples are handled as tuples of element indices of ``G.table()``.
Orbits are taken under the moves alone (marked tuples); pass
``conjugation=True`` to also identify simultaneous conjugates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import factorial, prod
from typing import Sequence

import numpy as np

DEFAULT_TUPLE_BUDGET = 10**7
DEFAULT_STATE_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class HurwitzTuple:
    """A tuple of element indices together with the table it indexes into."""

    indices: tuple[int, ...]
    table: object = field(repr=False, compare=False, hash=False)

    def elements(self) -> list:
        return [self.table.elements[i] for i in self.indices]

    def product(self) -> int:
        M = _mult(self.table)
        out = 0
        for i in self.indices:
            out = int(M[out, i])
        return out

    def move(self, i: int) -> "HurwitzTuple":
        return HurwitzTuple(braid_move(self.indices, i, _mult(self.table), self.table.inverse), self.table)

    def unmove(self, i: int) -> "HurwitzTuple":
        return HurwitzTuple(inverse_braid_move(self.indices, i, _mult(self.table), self.table.inverse), self.table)


def _mult(T) -> np.ndarray:
    return T.mult_table(cap=max(2000, T.n))


def braid_move(t: tuple, i: int, M, inv) -> tuple:
    """``(g_i, g_{i+1}) -> (g_i g_{i+1} g_i^-1, g_i)`` at 0-based position ``i``."""
    a, b = t[i], t[i + 1]
    c = int(M[M[a, b], inv[a]])
    return t[:i] + (c, a) + t[i + 2:]


def inverse_braid_move(t: tuple, i: int, M, inv) -> tuple:
    a, b = t[i], t[i + 1]
    c = int(M[M[inv[b], a], b])
    return t[:i] + (b, c) + t[i + 2:]


def _equipment(eg):
    G = eg.group
    classes = list(eg.classes)
    return G, classes


def raw_tuple_count(class_sizes: Sequence[int], tau: Sequence[int]) -> int:
    """Number of typed sequences before the product and generation filters."""
    n = sum(tau)
    multinomial = factorial(n) // prod(factorial(t) for t in tau)
    return multinomial * prod(s ** t for s, t in zip(class_sizes, tau))


class _Generation:
    """Memoized "do these indices generate the whole group" test."""

    def __init__(self, T, order: int):
        self.T = T
        self.M = _mult(T)
        self.order = order
        self.cache: dict[frozenset, bool] = {}

    def __call__(self, entries) -> bool:
        key = frozenset(entries)
        hit = self.cache.get(key)
        if hit is None:
            hit = self._closure_size(key) == self.order
            self.cache[key] = hit
        return hit

    def _closure_size(self, gens) -> int:
        M = self.M
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = int(M[x, s])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen)


def enumerate_tuples(eg, tau: Sequence[int], budget: int = DEFAULT_TUPLE_BUDGET) -> list[tuple[int, ...]]:
    """All index tuples of type ``tau`` with product one that generate the group.

    ``tau[i]`` is the number of entries taken from ``eg.classes[i]``.
    """
    G, classes = _equipment(eg)
    tau = tuple(int(t) for t in tau)
    if len(tau) != len(classes):
        raise ValueError(f"tau has {len(tau)} entries but the equipment has {len(classes)} classes")
    if any(t < 0 for t in tau) or sum(tau) < 1:
        raise ValueError("tau needs non-negative entries with a positive sum")
    raw = raw_tuple_count([c.size for c in classes], tau)
    if raw > budget:
        raise BudgetExceeded(f"{raw} raw tuples for tau={tau} exceed the budget {budget}")
    T = G.table()
    M = _mult(T)
    inv = T.inverse
    members = [[T.index[x] for x in c.elements] for c in classes]
    class_id = {}
    for ci, idxs in enumerate(members):
        for x in idxs:
            class_id[x] = ci
    generates = _Generation(T, G.order)
    n = sum(tau)
    remaining = list(tau)
    prefix = [0] * n
    out: list[tuple[int, ...]] = []

    def rec(pos: int, product: int):
        if pos == n - 1:
            last = int(inv[product])
            ci = class_id.get(last)
            if ci is None or remaining[ci] != 1:
                return
            prefix[pos] = last
            t = tuple(prefix)
            if generates(t):
                out.append(t)
            return
        for ci, idxs in enumerate(members):
            if remaining[ci] == 0:
                continue
            remaining[ci] -= 1
            for x in idxs:
                prefix[pos] = x
                rec(pos + 1, int(M[product, x]))
            remaining[ci] += 1

    rec(0, 0)
    out.sort()
    return out


@dataclass
class OrbitReport:
    tau: tuple[int, ...]
    tuples: int
    orbits: int
    orbit_sizes: tuple[int, ...] = ()
    stabilized: bool = False
    partial: bool = False
    note: str = ""

    def as_row(self) -> dict:
        return {
            "tau": list(self.tau),
            "tuples": self.tuples,
            "orbits": self.orbits,
            "stabilized": self.stabilized,
            "partial": self.partial,
        }


def braid_orbits(eg, tuples: Sequence[tuple[int, ...]], tau: Sequence[int] = (), conjugation: bool = False,
                 state_budget: int = DEFAULT_STATE_BUDGET) -> OrbitReport:
    """Partition ``tuples`` into orbits of Hurwitz moves by BFS.

    Each move permutes the finite tuple set, so forward moves alone reach
    the whole orbit.  A move leaving the set means the input was not closed
    under moves and raises ``ValueError``.
    """
    G = eg.group
    T = G.table()
    M = _mult(T)
    inv = T.inverse
    if len(tuples) > state_budget:
        raise BudgetExceeded(f"{len(tuples)} states exceed the BFS budget {state_budget}")
    universe = set(tuples)
    conj_gens = [T.index[s] for s in G.gens if s != G.identity] if conjugation else []
    seen: set = set()
    sizes = []
    for start in tuples:
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        size = 0
        while queue:
            t = queue.popleft()
            size += 1
            nxt = [braid_move(t, i, M, inv) for i in range(len(t) - 1)]
            for s in conj_gens:
                si = int(inv[s])
                nxt.append(tuple(int(M[M[si, x], s]) for x in t))
            for u in nxt:
                if u not in universe:
                    raise ValueError(f"move left the tuple set: {t} -> {u}")
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        sizes.append(size)
    return OrbitReport(tuple(tau), len(tuples), len(sizes), tuple(sorted(sizes, reverse=True)))


def orbit_report(eg, tau: Sequence[int], conjugation: bool = False, budget: int = DEFAULT_TUPLE_BUDGET) -> OrbitReport:
    tuples = enumerate_tuples(eg, tau, budget)
    return braid_orbits(eg, tuples, tau, conjugation=conjugation, state_budget=budget)


def grow_schedule(tau: Sequence[int], steps: int, increment: int = 2) -> list[tuple[int, ...]]:
    """``tau, tau + increment, ...`` on every positive entry, ``steps`` extra rows."""
    base = tuple(int(t) for t in tau)
    return [tuple(t + j * increment if t else 0 for t in base) for j in range(steps + 1)]


@dataclass
class ScanResult:
    rows: list[OrbitReport]
    stabilized: bool
    value: int | None  # orbit count at the stable tail
    partial: bool
    reference: int | None = None

    @property
    def contradicts_reference(self) -> bool:
        """Only a stabilized count can contradict the engine value."""
        return self.stabilized and self.reference is not None and self.value != self.reference

    @property
    def verdict(self) -> str:
        if not self.stabilized:
            return "inconclusive"
        if self.reference is None:
            return "stabilized"
        return "agrees" if self.value == self.reference else "disagrees"


def stabilization_scan(eg, schedule: Sequence[Sequence[int]], k: int = 2, conjugation: bool = False,
                       budget: int = DEFAULT_TUPLE_BUDGET, reference: int | None = None) -> ScanResult:
    """Orbit counts along ``schedule``; stable when the last ``k`` non-empty rows agree.

    A step over budget ends the scan and marks it partial; the rows computed
    so far are kept.
    """
    rows: list[OrbitReport] = []
    partial = False
    counts: list[int] = []
    for tau in schedule:
        try:
            rep = orbit_report(eg, tau, conjugation=conjugation, budget=budget)
        except BudgetExceeded as exc:
            rows.append(OrbitReport(tuple(tau), 0, 0, partial=True, note=str(exc)))
            partial = True
            break
        if rep.tuples:
            counts.append(rep.orbits)
            rep.stabilized = len(counts) >= k and len(set(counts[-k:])) == 1
        rows.append(rep)
    stable = len(counts) >= k and len(set(counts[-k:])) == 1
    return ScanResult(rows, stable, counts[-1] if stable else None, partial, reference)
