"""Finite permutation groups.

Permutations compose left to right (``(p*q)(i) = q(p(i))``), matching the
usual computer-algebra convention, and commutators are ``[a,b] = a^-1 b^-1 a b``.
Cycle notation in text is 1-based.

Order and membership come from a deterministic Schreier-Sims chain.  Class
and centre computations enumerate the group into an :class:`ElementTable`
(sorted element list plus right-multiplication and conjugation tables), which
is also the object the cohomology and cover engines index into.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .zmodlin import smith_normal_form

DEFAULT_ELEMENT_CAP = 10**6


class CapExceeded(RuntimeError):
    """Raised when an operation would enumerate more elements than allowed."""


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def _compose(a, b):
    return tuple(map(b.__getitem__, a))


def _invert(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse 1-based cycle notation such as ``"(1,2)(3,4,5)"``."""
        stripped = text.strip()
        cycles = []
        pos = 0
        for m in _CYCLE_RE.finditer(stripped):
            if stripped[pos:m.start()].strip():
                raise ValueError(f"unexpected text in cycle notation at {pos}: {text!r}")
            body = m.group(1).strip()
            pts = [int(x) for x in re.split(r"[,\s]+", body) if x] if body else []
            cycles.append(pts)
            pos = m.end()
        if stripped[pos:].strip():
            raise ValueError(f"unexpected text in cycle notation at {pos}: {text!r}")
        top = max((x for c in cycles for x in c), default=0)
        if degree is None:
            degree = top
        if top > degree:
            raise ValueError(f"point {top} exceeds degree {degree}")
        images = list(range(degree))
        seen = set()
        for c in cycles:
            for x in c:
                if x < 1:
                    raise ValueError("cycle points are 1-based")
                if x in seen:
                    raise ValueError(f"point {x} repeated in {text!r}")
                seen.add(x)
            for i, x in enumerate(c):
                images[x - 1] = c[(i + 1) % len(c)] - 1
        return cls._raw(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other.images) != len(self.images):
            raise ValueError("degree mismatch")
        return Permutation._raw(_compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation._raw(_invert(self.images))

    def __pow__(self, n: int) -> "Permutation":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = Permutation.identity(self.degree)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted lengths of the non-trivial cycles."""
        return tuple(sorted(len(c) for c in self.cycles()))

    def order(self) -> int:
        from math import lcm
        out = 1
        for c in self.cycles():
            out = lcm(out, len(c))
        return out

    def to_cycles(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self.to_cycles()!r}, degree={self.degree})"

    __str__ = to_cycles


def commutator(a, b, group=None):
    """``a^-1 b^-1 a b``; pass ``group`` for non-permutation elements."""
    if group is None:
        return a.inverse() * b.inverse() * a * b
    mul, inv = group.mul, group.inv
    return mul(mul(mul(inv(a), inv(b)), a), b)


# ---------------------------------------------------------------------------
# Schreier-Sims
# ---------------------------------------------------------------------------

class _Chain:
    """Stabilizer chain on raw image tuples, grown one generator at a time."""

    def __init__(self, degree: int):
        self.degree = degree
        self.ident = tuple(range(degree))
        self.base: list[int] = []
        self.strong: list[list[tuple]] = []
        self.trans: list[dict] = []  # point -> (u, u^-1) with base^u = point

    def order(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def sift(self, g, start=0):
        base, trans = self.base, self.trans
        for lvl in range(start, len(base)):
            entry = trans[lvl].get(g[base[lvl]])
            if entry is None:
                return g, lvl
            g = _compose(g, entry[1])
        return g, len(base)

    def contains(self, g) -> bool:
        r, j = self.sift(g)
        return j == len(self.base) and r == self.ident

    def _rebuild(self, lvl):
        b = self.base[lvl]
        trans = {b: (self.ident, self.ident)}
        queue = deque([b])
        gens = self.strong[lvl]
        while queue:
            pt = queue.popleft()
            u = trans[pt][0]
            for s in gens:
                q = s[pt]
                if q not in trans:
                    v = _compose(u, s)
                    trans[q] = (v, _invert(v))
                    queue.append(q)
        self.trans[lvl] = trans

    def _new_level(self, g):
        pt = next(i for i, x in enumerate(g) if x != i)
        self.base.append(pt)
        self.strong.append([])
        self.trans.append({pt: (self.ident, self.ident)})

    def _insert(self, r, j, lo):
        if j == len(self.base):
            self._new_level(r)
        for t in range(lo, j + 1):
            self.strong[t].append(r)
            self._rebuild(t)

    def add(self, g) -> bool:
        """Extend the chain by ``g``; returns False if ``g`` was already a member."""
        r, j = self.sift(g)
        if j == len(self.base) and r == self.ident:
            return False
        self._insert(r, j, 0)
        lvl = j
        while lvl >= 0:
            found = None
            trans = self.trans[lvl]
            for pt, (u, _) in list(trans.items()):
                for s in self.strong[lvl]:
                    h = _compose(_compose(u, s), trans[s[pt]][1])
                    if h == self.ident:
                        continue
                    r, jj = self.sift(h, lvl + 1)
                    if jj < len(self.base) or r != self.ident:
                        found = (r, jj)
                        break
                if found:
                    break
            if found is None:
                lvl -= 1
                continue
            r, jj = found
            self._insert(r, jj, lvl + 1)
            lvl = jj
        return True


# ---------------------------------------------------------------------------
# the group interface
# ---------------------------------------------------------------------------

class FiniteGroup:
    """Minimal interface shared by permutation groups and arithmetic groups.

    Subclasses provide ``gens``, ``identity``, ``mul``, ``inv``, ``key``,
    ``order``, ``contains`` and ``subgroup``.
    """

    gens: tuple = ()
    _table: "ElementTable | None" = None

    def power(self, x, n: int):
        base = x if n >= 0 else self.inv(x)
        n = abs(n)
        out = self.identity
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def element_order(self, x) -> int:
        n, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            n += 1
        return n

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> list:
        return self.table(cap).elements

    def table(self, cap: int = DEFAULT_ELEMENT_CAP) -> "ElementTable":
        if self._table is None:
            n = self.order
            if n > cap:
                raise CapExceeded(f"group of order {n} exceeds the element cap {cap}")
            self._table = ElementTable(self, _closure(self, cap))
        return self._table

    def is_abelian(self) -> bool:
        g = self.gens
        return all(self.mul(a, b) == self.mul(b, a) for i, a in enumerate(g) for b in g[i + 1:])


def _closure(group: FiniteGroup, cap: int) -> list:
    ident = group.identity
    seen = {ident}
    queue = deque([ident])
    gens = [s for s in group.gens if s != ident]
    mul = group.mul
    while queue:
        x = queue.popleft()
        for s in gens:
            y = mul(x, s)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"more than {cap} elements")
                queue.append(y)
    return sorted(seen, key=group.key)


class PermGroup(FiniteGroup):
    """A permutation group on ``{0..degree-1}`` with a lazily built BSGS."""

    def __init__(self, generators: Sequence[Permutation], degree: int):
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.gens = gens
        self.identity = Permutation.identity(degree)
        self._chain: _Chain | None = None
        self._table = None

    @property
    def generators(self):
        return self.gens

    def _bsgs(self) -> _Chain:
        if self._chain is None:
            chain = _Chain(self.degree)
            for g in self.gens:
                chain.add(g.images)
            self._chain = chain
        return self._chain

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(self._bsgs().base)

    @property
    def order(self) -> int:
        return self._bsgs().order()

    def contains(self, g: Permutation) -> bool:
        return g.degree == self.degree and self._bsgs().contains(g.images)

    __contains__ = contains

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    @staticmethod
    def key(p: Permutation):
        return p.images

    def subgroup(self, gens: Iterable[Permutation], order_hint: int | None = None) -> "PermGroup":
        """Subgroup generated by ``gens``, dropping redundant generators."""
        chain = _Chain(self.degree)
        kept = []
        for g in gens:
            if chain.add(g.images):
                kept.append(g)
                if order_hint is not None and chain.order() == order_hint:
                    break
        H = PermGroup(kept, self.degree)
        H._chain = chain
        return H

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, gens=[{', '.join(map(str, self.gens))}])"


class ClosureGroup(FiniteGroup):
    """Subgroup of an arithmetic group, held as an explicit element set."""

    def __init__(self, parent: FiniteGroup, gens: Sequence, cap: int = DEFAULT_ELEMENT_CAP):
        self.parent = parent
        self.gens = tuple(gens)
        self.identity = parent.identity
        self.mul = parent.mul
        self.inv = parent.inv
        self.key = parent.key
        self._table = None
        self._members = frozenset(_closure(self, cap))

    @property
    def order(self) -> int:
        return len(self._members)

    def contains(self, x) -> bool:
        return x in self._members

    __contains__ = contains

    def subgroup(self, gens, order_hint=None):
        return self.parent.subgroup(gens, order_hint)


def group_from_generators(gens: Sequence[Permutation], degree: int) -> PermGroup:
    return PermGroup(gens, degree)


def _closure_of(group, gens):
    ident = group.identity
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = group.mul(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# ---------------------------------------------------------------------------
# element tables
# ---------------------------------------------------------------------------

class ElementTable:
    """Enumerated group: sorted elements, right-multiplication by generators,
    inverses and conjugation by generators, all as index arrays."""

    def __init__(self, group: FiniteGroup, elements: list):
        self.group = group
        self.elements = elements
        self.n = len(elements)
        self.index = {x: i for i, x in enumerate(elements)}
        ident = group.identity
        self.gens = [s for s in group.gens if s != ident]
        self.gen_index = [self.index[s] for s in self.gens]
        idx = self.index
        mul, inv = group.mul, group.inv
        k = len(self.gens)
        self.right = np.zeros((self.n, k), dtype=np.int64)
        self.conj = np.zeros((self.n, k), dtype=np.int64)
        self.inverse = np.zeros(self.n, dtype=np.int64)
        sinv = [inv(s) for s in self.gens]
        for i, x in enumerate(elements):
            self.inverse[i] = idx[inv(x)]
            for j, s in enumerate(self.gens):
                xs = mul(x, s)
                self.right[i, j] = idx[xs]
                self.conj[i, j] = idx[mul(sinv[j], xs)]
        self._mult = None
        self._tree = None
        self.tree_parent: dict = {}

    def mul(self, i: int, j: int) -> int:
        return self.index[self.group.mul(self.elements[i], self.elements[j])]

    def mult_table(self, cap: int = 2000) -> np.ndarray:
        """Full table ``M[i, j] = index(e_i * e_j)``, built by walking a
        spanning tree of the Cayley graph column by column."""
        if self._mult is None:
            if self.n > cap:
                raise CapExceeded(f"multiplication table for {self.n} elements exceeds cap {cap}")
            M = np.full((self.n, self.n), -1, dtype=np.int64)
            M[:, 0] = np.arange(self.n)
            for h, parent, s in self.spanning_tree()[1:]:
                M[:, h] = self.right[M[:, parent], s]
            self._mult = M
        return self._mult

    def spanning_tree(self):
        """BFS tree from the identity: list of ``(element, parent, generator slot)``
        with ``element = parent * gens[slot]``; the root has parent -1."""
        if self._tree is not None:
            return self._tree
        tree = [(0, -1, -1)]
        seen = np.zeros(self.n, dtype=bool)
        seen[0] = True
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for j in range(len(self.gens)):
                y = int(self.right[x, j])
                if not seen[y]:
                    seen[y] = True
                    tree.append((y, x, j))
                    queue.append(y)
        self._tree = tree
        self.tree_parent = {y: (x, j) for y, x, j in tree[1:]}
        return tree


# ---------------------------------------------------------------------------
# classes, centralizers, structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConjugacyClass:
    representative: object
    size: int
    elements: tuple = field(repr=False)
    indices: tuple = field(repr=False, default=())

    def __contains__(self, x):
        return x in self._members

    @property
    def _members(self):
        cache = self.__dict__.get("_member_set")
        if cache is None:
            cache = frozenset(self.elements)
            object.__setattr__(self, "_member_set", cache)
        return cache

    def cycle_type(self) -> tuple[int, ...]:
        return self.representative.cycle_type()

    def __eq__(self, other):
        return isinstance(other, ConjugacyClass) and self.representative == other.representative

    def __hash__(self):
        return hash(self.representative)

    def __repr__(self):
        rep = self.representative
        rep = rep.to_cycles() if isinstance(rep, Permutation) else rep
        return f"ConjugacyClass({rep}, size={self.size})"


def conjugacy_classes(G: FiniteGroup, cap: int = DEFAULT_ELEMENT_CAP) -> list[ConjugacyClass]:
    cached = getattr(G, "_classes", None)
    if cached is not None:
        return cached
    T = G.table(cap)
    label = np.full(T.n, -1, dtype=np.int64)
    classes = []
    k = len(T.gens)
    for start in range(T.n):
        if label[start] >= 0:
            continue
        cid = len(classes)
        label[start] = cid
        orbit = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for j in range(k):
                y = int(T.conj[x, j])
                if label[y] < 0:
                    label[y] = cid
                    orbit.append(y)
                    queue.append(y)
        orbit.sort()
        classes.append(orbit)
    out = [
        ConjugacyClass(T.elements[o[0]], len(o), tuple(T.elements[i] for i in o), tuple(o))
        for o in sorted(classes, key=lambda o: (len(o), o[0]))
    ]
    G._classes = out
    return out


def class_of(G: FiniteGroup, x, cap: int = DEFAULT_ELEMENT_CAP) -> ConjugacyClass:
    for c in conjugacy_classes(G, cap):
        if x in c:
            return c
    raise ValueError(f"{x} is not an element of the group")


def centralizer(G: FiniteGroup, g, cap: int = DEFAULT_ELEMENT_CAP):
    """Centralizer of ``g`` as a subgroup, from Schreier generators of its conjugation orbit."""
    if not G.contains(g):
        raise ValueError(f"{g} is not an element of the group")
    T = G.table(cap)
    gi = T.index[g]
    k = len(T.gens)
    trans = {gi: 0}
    queue = deque([gi])
    while queue:
        x = queue.popleft()
        for j in range(k):
            y = int(T.conj[x, j])
            if y not in trans:
                trans[y] = T.right[trans[x], j]
                queue.append(y)
    target = G.order // len(trans)
    E = T.elements
    cands = []
    seen = set()
    for x, tx in trans.items():
        for j in range(k):
            y = int(T.conj[x, j])
            h = T.mul(int(T.right[tx, j]), int(T.inverse[trans[y]]))
            if h and h not in seen:
                seen.add(h)
                cands.append(E[h])
    return G.subgroup(cands, order_hint=target)


def center_elements(G: FiniteGroup, cap: int = DEFAULT_ELEMENT_CAP) -> list:
    T = G.table(cap)
    mul = G.mul
    gens = T.gens
    return [x for x in T.elements if all(mul(x, s) == mul(s, x) for s in gens)]


def center(G: FiniteGroup, cap: int = DEFAULT_ELEMENT_CAP):
    Z = center_elements(G, cap)
    return G.subgroup(Z, order_hint=len(Z))


def normal_closure(G: FiniteGroup, gens: Sequence):
    H = G.subgroup(list(gens))
    queue = deque(H.gens)
    while queue:
        h = queue.popleft()
        for s in G.gens:
            c = G.mul(G.mul(G.inv(s), h), s)
            if not H.contains(c):
                H = G.subgroup(list(H.gens) + [c])
                queue.append(c)
    return H


def derived_subgroup(G: FiniteGroup):
    gens = G.gens
    comms = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = commutator(a, b, G)
            if c != G.identity:
                comms.append(c)
    return normal_closure(G, comms)


def coset_labels(G: FiniteGroup, N, cap: int = DEFAULT_ELEMENT_CAP) -> tuple[np.ndarray, list[int]]:
    """Label each element of ``G`` by its right coset ``xN``; returns labels and coset representatives."""
    T = G.table(cap)
    members = sorted(_closure_of(G, [x for x in N.gens if x != G.identity]), key=G.key)
    label = np.full(T.n, -1, dtype=np.int64)
    reps = []
    for i in range(T.n):
        if label[i] >= 0:
            continue
        c = len(reps)
        reps.append(i)
        x = T.elements[i]
        for d in members:
            label[T.index[G.mul(x, d)]] = c
    return label, reps


def abelian_invariants(G: FiniteGroup, cap: int = DEFAULT_ELEMENT_CAP) -> tuple[int, ...]:
    """Invariant factors of ``G/[G,G]``, via the relation lattice of the generators."""
    T = G.table(cap)
    k = len(T.gens)
    if k == 0:
        return ()
    D = derived_subgroup(G)
    label, reps = coset_labels(G, D, cap)
    q = len(reps)
    vec = {0: [0] * k}
    queue = deque([0])
    rows = []
    while queue:
        c = queue.popleft()
        x = reps[c]
        for j in range(k):
            d = int(label[T.right[x, j]])
            step = list(vec[c])
            step[j] += 1
            if d not in vec:
                vec[d] = step
                queue.append(d)
            else:
                rel = [a - b for a, b in zip(step, vec[d])]
                if any(rel):
                    rows.append(rel)
    assert len(vec) == q
    divs = smith_normal_form(rows, transforms=False).divisors if rows else ()
    return tuple(d for d in divs if d != 1)


@dataclass(frozen=True)
class StructureReport:
    order: int
    center: tuple
    derived_subgroup: tuple
    abelian_invariants: tuple[int, ...]
    center_order: int
    derived_order: int


def structure_report(G: FiniteGroup, cap: int = DEFAULT_ELEMENT_CAP) -> StructureReport:
    Z = center(G, cap)
    D = derived_subgroup(G)
    return StructureReport(
        order=G.order,
        center=tuple(Z.gens),
        derived_subgroup=tuple(D.gens),
        abelian_invariants=abelian_invariants(G, cap),
        center_order=Z.order,
        derived_order=D.order,
    )


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

class NotAHomomorphism(ValueError):
    pass


class Homomorphism:
    """A map fixed by generator images; evaluation strategy depends on the source."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence, evaluate: Callable):
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._evaluate = evaluate

    def __call__(self, x):
        return self._evaluate(x)

    def is_surjective(self) -> bool:
        return self.target.subgroup(list(self.images)).order == self.target.order

    def kernel_elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> list:
        ident = self.target.identity
        return [x for x in self.source.elements(cap) if self(x) == ident]


def _disjoint_pair(g: Permutation, h: Permutation) -> tuple:
    n = g.degree
    return g.images + tuple(n + x for x in h.images)


def hom_by_images(G: FiniteGroup, H: FiniteGroup, images: Sequence) -> Homomorphism:
    """The homomorphism sending ``G.gens[i]`` to ``images[i]``, if it exists.

    For permutation groups the graph subgroup ``<(g_i, h_i)>`` of ``G x H`` is
    built on disjoint points; the map is well defined exactly when that
    subgroup has order ``|G|``.  Other groups are checked edge by edge on the
    Cayley graph.
    """
    images = tuple(images)
    if len(images) != len(G.gens):
        raise ValueError(f"{len(G.gens)} generators but {len(images)} images")
    for h in images:
        if not H.contains(h):
            raise ValueError(f"image {h} is not in the target group")
    if isinstance(G, PermGroup) and isinstance(H, PermGroup):
        return _perm_hom(G, H, images)
    return _table_hom(G, H, images)


def _perm_hom(G: PermGroup, H: PermGroup, images) -> Homomorphism:
    n = G.degree
    chain = _Chain(n + H.degree)
    for g, h in zip(G.gens, images):
        chain.add(_disjoint_pair(g, h))
    if chain.order() != G.order:
        raise NotAHomomorphism(
            f"graph subgroup has order {chain.order()} but the source has order {G.order}"
        )
    # every base point lies in the source block, so sifting on that block alone determines the image
    base, trans = chain.base, chain.trans
    assert all(b < n for b in base)
    ident_h = tuple(range(H.degree))

    def evaluate(x: Permutation):
        g = x.images + tuple(range(n, n + H.degree))
        word = []
        for lvl in range(len(base)):
            u, uinv = trans[lvl][g[base[lvl]]]
            g = _compose(g, uinv)
            word.append(u)
        out = ident_h
        for u in reversed(word):
            out = _compose(out, tuple(y - n for y in u[n:]))
        return Permutation._raw(out)

    return Homomorphism(G, H, images, evaluate)


def _table_hom(G: FiniteGroup, H: FiniteGroup, images) -> Homomorphism:
    T = G.table()
    gmap = {}
    for s, h in zip(G.gens, images):
        if s == G.identity:
            if h != H.identity:
                raise NotAHomomorphism("identity generator sent to a non-identity element")
            continue
        if s in gmap and gmap[s] != h:
            raise NotAHomomorphism("repeated generator with two different images")
        gmap[s] = h
    imgs = [gmap[s] for s in T.gens]
    value = [None] * T.n
    value[0] = H.identity
    for y, parent, j in T.spanning_tree()[1:]:
        value[y] = H.mul(value[parent], imgs[j])
    for x in range(T.n):
        for j in range(len(imgs)):
            if value[int(T.right[x, j])] != H.mul(value[x], imgs[j]):
                raise NotAHomomorphism("generator images violate a relation of the source")
    index = T.index
    return Homomorphism(G, H, images, lambda x: value[index[x]])


def quotient_by_central(G: FiniteGroup, Z, cap: int = DEFAULT_ELEMENT_CAP):
    """``G/Z`` acting on the cosets of a central subgroup ``Z``; returns (quotient, map)."""
    for z in Z.gens:
        for s in G.gens:
            if G.mul(z, s) != G.mul(s, z):
                raise ValueError("subgroup is not central")
    T = G.table(cap)
    label, reps = coset_labels(G, Z, cap)
    q = len(reps)
    perms = []
    for j in range(len(T.gens)):
        perms.append(Permutation._raw(tuple(int(label[T.right[r, j]]) for r in reps)))
    by_gen = dict(zip(T.gens, perms))
    ident = Permutation.identity(q)
    images = [by_gen.get(s, ident) for s in G.gens]
    Q = PermGroup(images, q)
    rep_el = [T.elements[r] for r in reps]
    index, mul = T.index, G.mul

    def evaluate(x):
        return Permutation._raw(tuple(int(label[index[mul(r, x)]]) for r in rep_el))

    return Q, Homomorphism(G, Q, images, evaluate)


# ---------------------------------------------------------------------------
# C-graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CGraph:
    vertices: tuple
    edges: tuple  # (tail, head, label) as vertex indices
    components: tuple  # tuple of tuples of vertex indices

    @property
    def component_count(self) -> int:
        return len(self.components)


def c_graph(G: FiniteGroup, O: Sequence[ConjugacyClass]) -> CGraph:
    """Vertices are the elements of ``O``; an edge ``g1 -> g2`` labelled ``g``
    for every ``g`` in ``O`` with ``g^-1 g1 g = g2``."""
    verts = []
    for c in O:
        if c.representative == G.identity:
            raise ValueError("the identity class cannot be part of an equipment")
        verts.extend(c.elements)
    index = {x: i for i, x in enumerate(verts)}
    if len(index) != len(verts):
        raise ValueError("repeated class in equipment")
    parent = list(range(len(verts)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges = []
    mul, inv = G.mul, G.inv
    for li, g in enumerate(verts):
        gi = inv(g)
        for t, g1 in enumerate(verts):
            h = index[mul(mul(gi, g1), g)]
            edges.append((t, h, li))
            a, b = find(t), find(h)
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = {}
    for i in range(len(verts)):
        comps.setdefault(find(i), []).append(i)
    return CGraph(tuple(verts), tuple(edges), tuple(tuple(v) for v in comps.values()))
