"""Second cohomology with Q/Z coefficients, one prime at a time.

For a prime ``p`` and modulus ``m = p^k`` (default: the full p-part of |G|)
we solve for normalized 2-cocycles with values in Z/m, then divide out
coboundaries and the carry cocycles of characters ``G -> Z/m``.  The carry
classes are what separates ``H^2(G, Z/m)`` from the m-torsion of
``H^2(G, Q/Z)``; once they are removed the quotient is the p-part of the
Schur multiplier.

A normalized cocycle is fixed by its values ``w(g, s)`` on generators ``s``:
walking a spanning tree of the Cayley graph, ``w(g, hs) = w(g, h) + w(gh, s)
- w(h, s)`` produces every column, and the non-tree edges give the linear
constraints.  Unknowns therefore number ``(|G| - 1) * |S|`` rather than
``|G|^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .perm import (
    CapExceeded,
    ConjugacyClass,
    ElementTable,
    FiniteGroup,
    Homomorphism,
    conjugacy_classes,
)
from .zmodlin import howell_form, kernel_mod, prime_power, subquotient_structure

DEFAULT_COCYCLE_CAP = 130


class CocycleCapExceeded(CapExceeded):
    pass


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class CocycleTable:
    """Values ``w(g_i, g_j)`` mod ``modulus`` indexed by the group's element table."""
    group: FiniteGroup
    modulus: int
    values: np.ndarray = field(repr=False)

    @property
    def table(self) -> ElementTable:
        return self.group.table()

    def __call__(self, g, h) -> int:
        idx = self.table.index
        return int(self.values[idx[g], idx[h]])

    def __add__(self, other: "CocycleTable") -> "CocycleTable":
        return CocycleTable(self.group, self.modulus, (self.values + other.values) % self.modulus)

    def scale(self, c: int) -> "CocycleTable":
        return CocycleTable(self.group, self.modulus, self.values * c % self.modulus)

    def is_normalized(self) -> bool:
        return not self.values[0].any() and not self.values[:, 0].any()

    def is_cocycle(self, exhaustive: bool = False) -> bool:
        """Check ``w(g,h) + w(gh,k) = w(h,k) + w(g,hk)``.

        By default ``k`` runs over the generators, which already forces the
        identity for every ``k``; ``exhaustive`` checks all triples.
        """
        T = self.table
        M = T.mult_table(cap=max(2000, T.n))
        w, m = self.values, self.modulus
        ks = range(T.n) if exhaustive else T.gen_index
        for k in ks:
            lhs = w + w[M, k]
            rhs = w[:, k][None, :] + w[np.arange(T.n)[:, None], M[:, k][None, :]]
            if ((lhs - rhs) % m).any():
                return False
        return True


def pairing(w: CocycleTable, g, h) -> int:
    """``w(g,h) - w(h,g)`` for a commuting pair."""
    G = w.group
    if G.mul(g, h) != G.mul(h, g):
        raise ValueError("the pair does not commute")
    return (w(g, h) - w(h, g)) % w.modulus


def coboundary(G: FiniteGroup, f: Sequence[int], m: int) -> CocycleTable:
    """``(df)(g,h) = f(g) + f(h) - f(gh)`` for ``f`` indexed like the element table (``f[0] = 0``)."""
    T = G.table()
    M = T.mult_table(cap=max(2000, T.n))
    f = np.asarray(f, dtype=np.int64) % m
    if f[0]:
        raise ValueError("f must vanish at the identity")
    return CocycleTable(G, m, (f[:, None] + f[None, :] - f[M]) % m)


def carry_class(G: FiniteGroup, phi: Sequence[int], m: int) -> CocycleTable:
    """Carry cocycle ``(phi(g) + phi(h) - phi(gh)) / m`` of a homomorphism ``phi: G -> Z/m``,
    evaluated on the canonical lifts in ``[0, m)``."""
    T = G.table()
    M = T.mult_table(cap=max(2000, T.n))
    phi = np.asarray(phi, dtype=np.int64) % m
    raw = phi[:, None] + phi[None, :] - phi[M]
    if (raw % m).any():
        raise ValueError("phi is not a homomorphism to Z/m")
    return CocycleTable(G, m, (raw // m) % m)


def inflate(q: Homomorphism, w: CocycleTable) -> CocycleTable:
    """Pull a cocycle on the quotient back along ``q``."""
    if not q.is_surjective():
        raise ValueError("inflation needs a surjective map")
    G = q.source
    T = G.table()
    QT = w.table
    img = np.array([QT.index[q(x)] for x in T.elements], dtype=np.int64)
    return CocycleTable(G, w.modulus, w.values[np.ix_(img, img)] % w.modulus)


def inflate_bilinear(G, coeffs: dict) -> CocycleTable:
    """Bilinear cocycle ``sum c_ij a_i(g) a_j(h)`` on a group with a linear
    projection ``G.projection`` to ``(Z/p)^r`` (the Saltman group)."""
    p = G.p
    T = G.table()
    A = np.array([G.projection(x) for x in T.elements], dtype=np.int64)
    r = A.shape[1]
    C = np.zeros((r, r), dtype=np.int64)
    for (i, j), c in coeffs.items():
        C[i, j] = c % p
    return CocycleTable(G, p, (A @ C @ A.T) % p)


# ---------------------------------------------------------------------------
# the linear system on generator values
# ---------------------------------------------------------------------------

class _GeneratorSystem:
    """Coordinates ``w(g, s)`` (g != 1, s a generator slot) for normalized cocycles."""

    def __init__(self, G: FiniteGroup, m: int):
        self.G = G
        self.m = m
        T = G.table()
        self.T = T
        self.n = T.n
        self.k = len(T.gens)
        self.P = (self.n - 1) * self.k
        self.M = T.mult_table(cap=max(2000, T.n))

    def var(self, g, s):
        """Variable index of ``w(g, s)``; -1 for ``g`` the identity."""
        return np.where(g == 0, -1, (g - 1) * self.k + s)

    def _unit_rows(self, gs: np.ndarray, s: int) -> np.ndarray:
        out = np.zeros((len(gs), self.P), dtype=np.int64)
        v = self.var(gs, s)
        ok = v >= 0
        out[np.flatnonzero(ok), v[ok]] = 1
        return out

    def propagate(self):
        """Linear forms ``L[h][g] = w(g, h)`` and the constraint rows."""
        n, m = self.n, self.m
        T, M = self.T, self.M
        L = np.zeros((n, n, self.P), dtype=np.int64)
        constraints = []
        for h, parent, s in T.spanning_tree()[1:]:
            L[h] = self._step(L[parent], parent, s)
        for h in range(n):
            for s in range(self.k):
                hs = int(T.right[h, s])
                if T.tree_parent.get(hs) == (h, s):
                    continue
                diff = (self._step(L[h], h, s) - L[hs]) % m
                constraints.append(diff)
        C = np.concatenate(constraints) if constraints else np.zeros((0, self.P), dtype=np.int64)
        return L, C

    def _step(self, Lh, h, s):
        # w(g, hs) = w(g, h) + w(gh, s) - w(h, s)
        out = Lh + self._unit_rows(self.M[:, h], s)
        vh = int(self.var(np.array(h), s))
        if vh >= 0:
            out[:, vh] -= 1
        return out % self.m

    def coboundary_vectors(self) -> np.ndarray:
        """Rows ``d(e_x)`` restricted to (g, s) coordinates, for ``x != 1``."""
        n, k, m = self.n, self.k, self.m
        R = self.T.right
        gens = self.T.gen_index
        D = np.zeros((n - 1, self.P), dtype=np.int64)
        g = np.arange(1, n)
        for s in range(k):
            cols = (g - 1) * k + s
            # +[g = x]
            D[g - 1, cols] += 1
            # +[s = x] for every g
            if gens[s] != 0:
                D[gens[s] - 1, cols] += 1
            # -[gs = x]
            gs = R[g, s]
            nz = gs != 0
            D[gs[nz] - 1, cols[nz]] -= 1
        return D % m

    def characters(self) -> np.ndarray:
        """Generators of ``Hom(G, Z/m)`` as value vectors over the element table."""
        n, k, m = self.n, self.k, self.m
        R = self.T.right
        gens = self.T.gen_index
        # phi(g) + phi(s) - phi(gs) = 0, unknowns phi(x) for x != 1
        rows = []
        for s in range(k):
            for g in range(n):
                r = np.zeros(n, dtype=np.int64)
                r[g] += 1
                r[gens[s]] += 1
                r[R[g, s]] -= 1
                rows.append(r[1:])
        A = np.array(rows, dtype=np.int64) % m
        A = _unique_rows(A)
        K = kernel_mod(A.T, m) if A.shape[0] else np.eye(n - 1, dtype=np.int64)
        K = _unique_rows(K)
        return np.hstack([np.zeros((K.shape[0], 1), dtype=np.int64), K]) % m

    def carry_vectors(self, phis: np.ndarray) -> np.ndarray:
        n, k, m = self.n, self.k, self.m
        R = self.T.right
        gens = self.T.gen_index
        out = np.zeros((len(phis), self.P), dtype=np.int64)
        g = np.arange(1, n)
        for t, phi in enumerate(phis):
            for s in range(k):
                raw = phi[g] + phi[gens[s]] - phi[R[g, s]]
                out[t, (g - 1) * k + s] = raw // m
        return out % m

    def restrict(self, w: CocycleTable) -> np.ndarray:
        """Coordinates of a normalized table in (g, s) space."""
        gens = self.T.gen_index
        return np.stack([w.values[1:, gens[s]] for s in range(self.k)], axis=1).reshape(-1) % self.m


def _unique_rows(A: np.ndarray) -> np.ndarray:
    if A.shape[0] == 0:
        return A
    A = np.unique(A, axis=0)
    return A[A.any(axis=1)]


# ---------------------------------------------------------------------------
# H^2 per prime
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class CohomologyBasis:
    prime: int
    modulus: int
    divisors: tuple[int, ...]
    tables: list  # CocycleTable per divisor
    group: FiniteGroup = field(repr=False)
    _system: _GeneratorSystem = field(repr=False)
    _denominator: np.ndarray = field(repr=False)
    _characters: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def carry_tables(self) -> list[CocycleTable]:
        return [carry_class(self.group, phi, self.modulus) for phi in self._characters]

    def is_trivial(self, w: CocycleTable) -> bool:
        return TrivialityTester(self.group, self.modulus, system=self._system).is_trivial(w)


def h2_primary(G: FiniteGroup, p: int, modulus: int | None = None, cap: int = DEFAULT_COCYCLE_CAP) -> CohomologyBasis:
    """p-part of ``H^2(G, Q/Z)`` with an explicit cocycle basis."""
    n = G.order
    if n > cap:
        raise CocycleCapExceeded(f"group of order {n} is above the cocycle cap {cap}")
    if modulus is None:
        e = _factor(n).get(p, 0)
        if e == 0:
            raise ValueError(f"{p} does not divide the group order {n}")
        modulus = p ** e
    q, _ = prime_power(modulus)
    if q != p:
        raise ValueError(f"modulus {modulus} is not a power of {p}")
    m = modulus
    sysm = _GeneratorSystem(G, m)
    if sysm.k == 0 or sysm.n == 1:
        return CohomologyBasis(p, m, (), [], G, sysm, np.zeros((0, 0)), np.zeros((0, sysm.n)))
    L, C = sysm.propagate()
    C = _unique_rows(C % m)
    Z = kernel_mod(C.T, m) if C.shape[0] else np.eye(sysm.P, dtype=np.int64)
    Z = _unique_rows(Z)
    phis = sysm.characters()
    den = np.vstack([sysm.coboundary_vectors(), sysm.carry_vectors(phis)]) % m
    den = _unique_rows(den)
    struct = subquotient_structure(Z, den, m, width=sysm.P)
    tables = []
    for vec in struct.generators():
        values = np.einsum("hgp,p->gh", L, vec) % m
        tables.append(CocycleTable(G, m, values))
    return CohomologyBasis(p, m, tuple(struct.divisors), tables, G, sysm, den, phis)


def cohomology(G: FiniteGroup, cap: int = DEFAULT_COCYCLE_CAP) -> dict[int, CohomologyBasis]:
    return {p: h2_primary(G, p, cap=cap) for p in sorted(_factor(G.order))}


def combine_divisors(per_prime: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of primary groups."""
    lists = [sorted(ds, reverse=True) for ds in per_prime if ds]
    if not lists:
        return ()
    width = max(len(ds) for ds in lists)
    out = [1] * width
    for ds in lists:
        for i, d in enumerate(ds):
            out[i] *= d
    return tuple(sorted(d for d in out if d > 1))


def h2(G: FiniteGroup, cap: int = DEFAULT_COCYCLE_CAP) -> tuple[int, ...]:
    """Invariant factors of the Schur multiplier."""
    return combine_divisors([b.divisors for b in cohomology(G, cap).values()])


# ---------------------------------------------------------------------------
# pairing on commuting pairs
# ---------------------------------------------------------------------------

def commuting_columns(G: FiniteGroup, O: Sequence[ConjugacyClass], dedupe: bool = True) -> list[tuple[int, int]]:
    """Index pairs ``(g, h)``: ``g`` a class representative from ``O``, ``h`` in its centralizer.

    With ``dedupe`` the ``h`` run over representatives of conjugation orbits of
    the centralizer on itself; simultaneous conjugation does not change the
    pairing, so nothing is lost.
    """
    T = G.table()
    M = T.mult_table(cap=max(2000, T.n))
    cols = []
    for cl in O:
        g = T.index[cl.representative]
        cent = np.flatnonzero(M[g, :] == M[:, g])
        if not dedupe:
            cols.extend((g, int(h)) for h in cent)
            continue
        cset = set(int(h) for h in cent)
        seen = set()
        inv = T.inverse
        for h in cent:
            h = int(h)
            if h in seen:
                continue
            orbit = {int(M[M[inv[x], h], x]) for x in cset}
            seen |= orbit
            cols.append((g, h))
    return cols


def pairing_matrix(basis: CohomologyBasis, columns: Sequence[tuple[int, int]]) -> np.ndarray:
    m = basis.modulus
    if not basis.tables or not columns:
        return np.zeros((len(basis.tables), len(columns)), dtype=np.int64)
    g = np.array([c[0] for c in columns])
    h = np.array([c[1] for c in columns])
    return np.stack([(t.values[g, h] - t.values[h, g]) % m for t in basis.tables])


def b_primary(basis: CohomologyBasis, O: Sequence[ConjugacyClass], dedupe: bool = True) -> int:
    """Order of the classes in this p-part that pair to zero with every column."""
    if not basis.tables:
        return 1
    P = pairing_matrix(basis, commuting_columns(basis.group, O, dedupe))
    image = howell_form(P, basis.modulus).order() if P.shape[1] else 1
    assert basis.order % image == 0
    return basis.order // image


def b_subgroup_order(bases, O: Sequence[ConjugacyClass], dedupe: bool = True) -> int:
    """``b_(G,O)``: the number of multiplier classes pairing trivially with
    every commuting pair ``(g, h)``, ``g`` in ``O``."""
    if isinstance(bases, CohomologyBasis):
        bases = [bases]
    elif isinstance(bases, dict):
        bases = list(bases.values())
    out = 1
    for b in bases:
        out *= b_primary(b, O, dedupe)
    return out


def b0(G: FiniteGroup, cap: int = DEFAULT_COCYCLE_CAP) -> int:
    classes = conjugacy_classes(G)[1:]
    if not classes:
        return 1
    return b_subgroup_order(cohomology(G, cap), classes)


def splitting_number_cocycle(bases, C: ConjugacyClass) -> int:
    """Splitting number of a single class, read off the pairing."""
    return b_subgroup_order(bases, [C])


def commuting_pairs_vanish(G: FiniteGroup, w: CocycleTable, m: int | None = None) -> bool:
    """Whether ``w(g,h) = w(h,g)`` on every commuting pair of ``G``."""
    m = m or w.modulus
    T = G.table()
    M = T.mult_table(cap=max(2000, T.n))
    commute = M == M.T
    anti = (w.values - w.values.T) % m
    return not anti[commute].any()


# ---------------------------------------------------------------------------
# triviality
# ---------------------------------------------------------------------------

class TrivialityTester:
    """Decides whether a normalized cocycle lies in span(coboundaries + carry classes).

    Only the values ``w(g, s)`` on generators enter, so the system has
    ``|G| - 1 + rank Hom(G, Z/m)`` unknowns.  The modulus must be a
    multiple of the exponent of the p-part of ``G/[G,G]`` for the answer to
    mean triviality in ``H^2(G, Q/Z)``.
    """

    def __init__(self, G: FiniteGroup, m: int, system: _GeneratorSystem | None = None):
        prime_power(m)
        self.G = G
        self.m = m
        self.system = system or _GeneratorSystem(G, m)
        phis = self.system.characters()
        self._span_rows = np.vstack([self.system.coboundary_vectors(), self.system.carry_vectors(phis)]) % m
        self._howell = howell_form(_unique_rows(self._span_rows), m, width=self.system.P)

    def is_trivial(self, w: CocycleTable, check: bool = True) -> bool:
        if w.modulus != self.m:
            raise ValueError(f"table modulus {w.modulus} differs from tester modulus {self.m}")
        if check and not (w.is_normalized() and w.is_cocycle()):
            raise ValueError("not a normalized cocycle")
        return self._howell.contains(self.system.restrict(w))

    def is_coboundary(self, w: CocycleTable) -> bool:
        cob = howell_form(_unique_rows(self.system.coboundary_vectors()), self.m, width=self.system.P)
        return cob.contains(self.system.restrict(w))


def is_trivial_class(w: CocycleTable, m: int | None = None) -> bool:
    return TrivialityTester(w.group, m or w.modulus).is_trivial(w)


def is_coboundary(w: CocycleTable) -> bool:
    return TrivialityTester(w.group, w.modulus).is_coboundary(w)
