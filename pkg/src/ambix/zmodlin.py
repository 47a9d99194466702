"""Exact linear algebra over the integers and over residue rings Z/p^k.

Two engines live here:

* a dense integer Smith normal form with unimodular transforms, for the
  small inputs that arise from abelianizations and relation lattices;
* Howell-style row reduction over a local ring Z/p^k (unit pivots with
  p-adic valuation tracking), which gives membership tests, kernels and
  subquotient structure without ever leaving the residue ring.

Moduli other than prime powers are rejected; callers split composite
problems by the Chinese remainder theorem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


__all__ = [
    "SparseIntMatrix",
    "SNFResult",
    "smith_normal_form",
    "invariant_factors",
    "prime_power",
    "HowellForm",
    "howell_form",
    "kernel_mod",
    "span_order",
    "SubquotientStructure",
    "subquotient_structure",
    "NotMember",
    "membership_solve",
]


# ---------------------------------------------------------------------------
# sparse integer matrices and integer SNF
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SparseIntMatrix:
    nrows: int
    ncols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                raise IndexError(f"entry ({i}, {j}) outside {self.nrows}x{self.ncols}")
            if v:
                clean[(i, j)] = int(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseIntMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(nrows, ncols, entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "SparseIntMatrix":
        """Row i of the result is row ``row_perm[i]`` of self (same for columns)."""
        rinv = {r: i for i, r in enumerate(row_perm)}
        cinv = {c: j for j, c in enumerate(col_perm)}
        return SparseIntMatrix(
            self.nrows, self.ncols,
            {(rinv[i], cinv[j]): v for (i, j), v in self.entries.items()},
        )


@dataclass(frozen=True)
class SNFResult:
    divisors: tuple[int, ...]
    U: list[list[int]] | None
    V: list[list[int]] | None


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M, transforms: bool = True) -> SNFResult:
    """Integer Smith normal form.

    Returns the nonzero diagonal ``d_1 | d_2 | ...`` (units included) and,
    when requested, unimodular ``U`` and ``V`` with ``U M V = diag(d)``.
    Pivot choice is the entry of minimal absolute value.
    """
    if isinstance(M, SparseIntMatrix):
        A = M.to_dense()
        nr, nc = M.nrows, M.ncols
    else:
        A = [list(map(int, row)) for row in M]
        nr = len(A)
        nc = len(A[0]) if nr else 0
    U = _identity(nr) if transforms else None
    V = _identity(nc) if transforms else None

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        if U is not None:
            U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        if V is not None:
            for row in V:
                row[a], row[b] = row[b], row[a]

    def add_row(dst, src, q):  # row_dst += q * row_src
        ra, rb = A[dst], A[src]
        for j in range(nc):
            if rb[j]:
                ra[j] += q * rb[j]
        if U is not None:
            ua, ub = U[dst], U[src]
            for j in range(nr):
                if ub[j]:
                    ua[j] += q * ub[j]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            row = A[i]
            for j in range(t, nc):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived; move it to (t, t)
                best = None
                for i in range(t, nr):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, t)
                for j in range(t, nc):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if A[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]
        t += 1
    divisors = tuple(A[i][i] for i in range(t))
    return SNFResult(divisors, U, V)


def invariant_factors(M) -> tuple[int, ...]:
    """Nontrivial invariant factors of the cokernel torsion of ``M``."""
    return tuple(d for d in smith_normal_form(M, transforms=False).divisors if d != 1)


# ---------------------------------------------------------------------------
# residue rings Z/p^k
# ---------------------------------------------------------------------------

def prime_power(m: int) -> tuple[int, int]:
    """Split ``m = p^k``; raise ValueError for anything else."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    p = next(d for d in range(2, m + 1) if m % d == 0)
    k, r = 0, m
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"modulus {m} is not a prime power")
    return p, k


def _dtype(m):
    return np.int64 if m < 2**31 else object


def _as_array(rows, width, m):
    if isinstance(rows, np.ndarray):
        arr = rows.astype(_dtype(m), copy=True)
        return arr.reshape(-1, width) % m if arr.size else np.zeros((0, width), _dtype(m))
    rows = list(rows)
    if not rows:
        return np.zeros((0, width), dtype=_dtype(m))
    return np.array([list(r) for r in rows], dtype=_dtype(m)).reshape(len(rows), width) % m


def _valuations(vals, p, k):
    e = np.zeros(len(vals), dtype=np.int64)
    q = 1
    for _ in range(k - 1):
        q *= p
        e += (vals % q == 0)
    return e


@dataclass
class HowellForm:
    """Reduced row set over Z/p^k with the Howell spanning property.

    ``pivots`` is a list of ``(column, valuation, row)`` in increasing column
    order; every pivot entry equals ``p**valuation`` exactly.  ``residual``
    holds the rows that were reduced to zero on the pivoting block; their
    trailing columns carry whatever was appended to the input.
    """
    p: int
    k: int
    width: int
    pivots: list
    residual: np.ndarray

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def reduce(self, T):
        """Reduce rows of ``T`` against the pivots.

        Returns ``(R, ok)``: the reduced rows and a boolean mask telling which
        rows were divisible at every pivot (the rest are left partially
        reduced).
        """
        m = self.modulus
        R = np.atleast_2d(np.array(T, dtype=_dtype(m))) % m
        ok = np.ones(R.shape[0], dtype=bool)
        for col, e, row in self.pivots:
            pe = self.p ** e
            c = R[:, col]
            bad = (c % pe) != 0
            ok &= ~bad
            q = np.where(bad, 0, c // pe)
            hit = np.flatnonzero(q)
            if hit.size:
                R[hit, col:] = (R[hit, col:] - q[hit, None] * row[col:]) % m
        return R, ok

    def contains(self, vec) -> bool:
        R, ok = self.reduce(np.asarray(vec).reshape(1, -1))
        return bool(ok[0] and not R[0, : self.width].any())

    def order(self) -> int:
        """Size of the row span (restricted to the pivoting block)."""
        return int(np.prod([self.p ** (self.k - e) for _, e, _ in self.pivots], dtype=object)) if self.pivots else 1


def howell_form(rows, m: int, width: int | None = None, tail=None) -> HowellForm:
    """Howell-style echelon form of ``rows`` over ``Z/m`` (``m`` a prime power).

    Only the first ``width`` columns are pivoted.  ``tail`` (same number of
    rows) is appended as extra columns that ride along with every row
    operation; pass an identity matrix to record combinations.
    """
    p, k = prime_power(m)
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        A = rows.astype(_dtype(m), copy=True) % m
        if width is None:
            width = A.shape[1]
    else:
        rows = [list(r) for r in rows]
        if width is None:
            width = len(rows[0]) if rows else 0
        A = _as_array(rows, width, m)
    if tail is not None:
        tail = np.asarray(tail, dtype=_dtype(m)) % m
        A = np.hstack([A, tail.reshape(A.shape[0], -1)]) if A.shape[0] else np.zeros((0, width + tail.shape[-1]), _dtype(m))
    active = A
    pivots = []
    for col in range(width):
        if active.shape[0] == 0:
            break
        column = active[:, col]
        nz = np.flatnonzero(column)
        if nz.size == 0:
            continue
        vals = column[nz]
        e = _valuations(vals, p, k)
        pos = int(np.argmin(e))
        i = int(nz[pos])
        emin = int(e[pos])
        pe = p ** emin
        unit = int(column[i]) // pe
        if i != 0:
            active[[0, i]] = active[[i, 0]]
        row = active[0].copy()
        if unit != 1:
            row = row * pow(unit, -1, m) % m
        active = active[1:]
        q = active[:, col] // pe
        hit = np.flatnonzero(q)
        if hit.size:
            active[hit, col:] = (active[hit, col:] - q[hit, None] * row[col:]) % m
        if emin:
            extra = row * p ** (k - emin) % m
            if extra.any():
                active = np.vstack([active, extra[None, :]])
        pivots.append((col, emin, row))
    if active.shape[0]:
        active = active[active.any(axis=1)]
    return HowellForm(p, k, width, pivots, active)


def kernel_mod(B, m: int) -> np.ndarray:
    """Generators of ``{x : x B = 0 (mod m)}``; rows of ``B`` are images of basis vectors."""
    B = np.asarray(B)
    n = B.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=_dtype(m))
    hf = howell_form(B, m, width=B.shape[1], tail=np.eye(n, dtype=_dtype(m)))
    return hf.residual[:, B.shape[1]:]


def span_order(rows, m: int, width: int | None = None) -> int:
    return howell_form(rows, m, width=width).order()


# ---------------------------------------------------------------------------
# Smith form over Z/p^k with column transforms
# ---------------------------------------------------------------------------

def _local_snf(A, p, k):
    """Diagonalize the row span of ``A`` over Z/p^k by row and column moves.

    Returns ``(exps, V, Vinv)``: ``rowspan(A) V`` is the span of
    ``p^exps[t] e_t``; columns past the rank get exponent ``k``.
    """
    m = p ** k
    A = np.array(A, dtype=_dtype(m)) % m
    r, c = A.shape
    V = np.eye(c, dtype=_dtype(m))
    Vinv = np.eye(c, dtype=_dtype(m))
    exps = [k] * c
    for t in range(min(r, c)):
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if nz.size == 0:
            break
        e = _valuations(sub[nz[:, 0], nz[:, 1]], p, k)
        pos = int(np.argmin(e))
        i, j = int(nz[pos, 0]) + t, int(nz[pos, 1]) + t
        emin = int(e[pos])
        pe = p ** emin
        if i != t:
            A[[t, i]] = A[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            Vinv[[t, j]] = Vinv[[j, t]]
        unit = int(A[t, t]) // pe
        if unit != 1:
            A[t] = A[t] * pow(unit, -1, m) % m
        q = A[t + 1:, t] // pe
        hit = np.flatnonzero(q) + t + 1
        if hit.size:
            A[hit] = (A[hit] - (A[hit, t] // pe)[:, None] * A[t]) % m
        qc = A[t, t + 1:] // pe
        for jj in np.flatnonzero(qc):
            jj = int(jj) + t + 1
            qq = int(A[t, jj]) // pe
            A[:, jj] = (A[:, jj] - qq * A[:, t]) % m
            V[:, jj] = (V[:, jj] - qq * V[:, t]) % m
            Vinv[t] = (Vinv[t] + qq * Vinv[jj]) % m
        exps[t] = emin
    return exps, V, Vinv


# ---------------------------------------------------------------------------
# subquotients and membership
# ---------------------------------------------------------------------------

@dataclass
class SubquotientStructure:
    """The module ``span(num) / span(den)`` inside ``(Z/m)^n``."""
    modulus: int
    divisors: tuple[int, ...]
    _howell: HowellForm = field(repr=False)
    _num: np.ndarray = field(repr=False)
    _V: np.ndarray = field(repr=False)
    _Vinv: np.ndarray = field(repr=False)
    _factors: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def coordinates(self, vec) -> tuple[int, ...]:
        """Coordinates of ``vec`` (an element of span(num)) in the divisor basis."""
        m = self.modulus
        n = self._howell.width
        r = self._num.shape[0]
        row = np.zeros(n + r, dtype=_dtype(m))
        row[:n] = np.asarray(vec) % m
        R, ok = self._howell.reduce(row[None, :])
        if not ok[0] or R[0, :n].any():
            raise ValueError("vector is not in the span of the numerator")
        c = (-R[0, n:]) % m
        y = c @ self._V % m if r else c
        return tuple(int(y[t]) % d for t, d in zip(self._factors, self.divisors))

    def generators(self) -> list[np.ndarray]:
        """One ambient vector per divisor, generating the quotient."""
        m = self.modulus
        return [self._Vinv[t] @ self._num % m for t in self._factors]


def subquotient_structure(num, den, m: int, width: int | None = None) -> SubquotientStructure:
    """Elementary divisors and coordinates of ``span(num)/span(den)`` over Z/m."""
    p, k = prime_power(m)
    num = _to_rows(num, m, width)
    width = num.shape[1] if width is None and num.size else (width or 0)
    den = _to_rows(den, m, width)
    r = num.shape[0]
    if den.shape[0]:
        hnum = howell_form(num, m, width=width)
        R, ok = hnum.reduce(den)
        if not (ok.all() and not R[:, :width].any()):
            raise ValueError("denominator is not contained in the span of the numerator")
    stacked = np.vstack([num, den]) if den.shape[0] else num
    tail = np.zeros((stacked.shape[0], r), dtype=_dtype(m))
    tail[:r] = np.eye(r, dtype=_dtype(m))
    hf = howell_form(stacked, m, width=width, tail=tail)
    relations = hf.residual[:, width:]
    if relations.shape[0] == 0:
        relations = np.zeros((0, r), dtype=_dtype(m))
    exps, V, Vinv = _local_snf(relations, p, k) if r else ([], np.zeros((0, 0)), np.zeros((0, 0)))
    order = sorted((e, t) for t, e in enumerate(exps) if e > 0)
    factors = tuple(t for _, t in order)
    divisors = tuple(p ** e for e, _ in order)
    return SubquotientStructure(m, divisors, hf, num, V, Vinv, factors)


def _to_rows(vectors, m, width):
    if isinstance(vectors, np.ndarray):
        if vectors.size == 0:
            return np.zeros((0, width or 0), dtype=_dtype(m))
        return vectors.astype(_dtype(m)) % m
    vectors = [list(v) for v in vectors]
    if not vectors:
        return np.zeros((0, width or 0), dtype=_dtype(m))
    return np.array(vectors, dtype=_dtype(m)) % m


class _NotMember:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NotMember"

    def __bool__(self):
        return False


NotMember = _NotMember()


def membership_solve(target, span, m: int):
    """Coefficients ``c`` with ``sum c_i span_i == target (mod m)``, or ``NotMember``."""
    target = np.asarray(target) % m
    n = target.shape[0]
    S = _to_rows(span, m, n)
    r = S.shape[0]
    if r == 0:
        return [] if not target.any() else NotMember
    hf = howell_form(S, m, width=n, tail=np.eye(r, dtype=_dtype(m)))
    row = np.zeros(n + r, dtype=_dtype(m))
    row[:n] = target
    R, ok = hf.reduce(row[None, :])
    if not ok[0] or R[0, :n].any():
        return NotMember
    return [int(c) for c in (-R[0, n:]) % m]
