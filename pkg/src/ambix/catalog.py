"""Benchmark groups, shipped covers, cycle-type splitting rules and the
Saltman group pipeline.

Group specs are short strings: ``sym:4``, ``alt:5``, ``cyclic:6``,
``dihedral:4`` (order 8), ``quaternion:8``, ``elem_abelian:2^2``,
``heisenberg:3``, ``saltman:2``, ``perm:[(1,2),(1,2,3)]`` and
``fp:<a,b | a^2, b^3, (a*b)^3>``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .perm import (
    ClosureGroup,
    ConjugacyClass,
    FiniteGroup,
    Permutation,
    PermGroup,
    conjugacy_classes,
)

SALTMAN_MAX_P = 3

# Multiplier orders of the symmetric and alternating groups, as used to decide
# whether a shipped cover is maximal.
def known_multiplier(spec: str) -> int | None:
    kind, _, arg = spec.partition(":")
    if kind in ("sym", "alt") and arg.isdigit():
        d = int(arg)
        if kind == "alt" and d in (6, 7):
            return 6
        if d >= 4:
            return 2
        return 1
    return None


# ---------------------------------------------------------------------------
# group constructors
# ---------------------------------------------------------------------------

def _cyc(text: str, degree: int) -> Permutation:
    return Permutation.from_cycles(text, degree)


def symmetric_group(d: int) -> PermGroup:
    if d < 1:
        raise ValueError("degree must be positive")
    if d == 1:
        return PermGroup([], 1)
    if d == 2:
        return PermGroup([_cyc("(1,2)", 2)], 2)
    return PermGroup([_cyc("(1,2)", d), _cyc("(" + ",".join(map(str, range(1, d + 1))) + ")", d)], d)


def alternating_group(d: int) -> PermGroup:
    if d < 1:
        raise ValueError("degree must be positive")
    if d < 3:
        return PermGroup([], d)
    if d == 3:
        return PermGroup([_cyc("(1,2,3)", 3)], 3)
    long = range(1, d + 1) if d % 2 else range(2, d + 1)
    return PermGroup([_cyc("(1,2,3)", d), _cyc("(" + ",".join(map(str, long)) + ")", d)], d)


def cyclic_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return PermGroup([], 1)
    return PermGroup([Permutation(tuple((i + 1) % n for i in range(n)))], n)


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of an n-gon, order ``2n``; ``n = 2`` gives the Klein group."""
    if n < 2:
        raise ValueError("dihedral:n needs n >= 2")
    if n == 2:
        return elementary_abelian_group(2, 2)
    r = Permutation(tuple((i + 1) % n for i in range(n)))
    s = Permutation(tuple((-i) % n for i in range(n)))
    return PermGroup([r, s], n)


def quaternion_group() -> PermGroup:
    # regular representation on {1, i, -1, -i, j, k, -j, -k} numbered 1..8
    i = _cyc("(1,2,3,4)(5,6,7,8)", 8)
    j = _cyc("(1,5,3,7)(2,8,4,6)", 8)
    return PermGroup([i, j], 8)


def elementary_abelian_group(p: int, k: int) -> PermGroup:
    if k < 0 or p < 2:
        raise ValueError("elem_abelian:p^k needs p >= 2, k >= 0")
    n = p * k
    gens = []
    for t in range(k):
        img = list(range(n))
        for i in range(p):
            img[t * p + i] = t * p + (i + 1) % p
        gens.append(Permutation(img))
    return PermGroup(gens, max(n, 1)) if n else PermGroup([], 1)


def heisenberg_group(p: int) -> PermGroup:
    """Unitriangular 3x3 matrices over Z/p acting on (Z/p)^2; order p^3."""
    pts = [(u, v) for u in range(p) for v in range(p)]
    idx = {x: i for i, x in enumerate(pts)}
    a = Permutation([idx[((u + 1) % p, v)] for u, v in pts])
    b = Permutation([idx[(u, (v + u) % p)] for u, v in pts])
    return PermGroup([a, b], p * p)


class SaltmanGroup(FiniteGroup):
    """Central extension of (Z/p)^4 by (Z/p)^5 with one relation between
    ``[x1,x2]`` and ``[x3,x4]``, by direct arithmetic on pairs of vectors.

    Elements are 9-tuples ``(a1..a4, z12, z13, z14, z23, z24)``.  The product
    is ``(a, z)(b, w) = (a + b, z + w + mu(a, b))`` where ``mu`` puts
    ``a_i b_j`` in coordinate ``(i, j)`` and adds ``-a3 b4`` to ``(1, 2)``.
    """

    PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3))

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.identity = (0,) * 9
        self.gens = tuple(tuple(int(i == j) for j in range(4)) + (0,) * 5 for i in range(4))
        self._table = None

    @property
    def order(self) -> int:
        return self.p ** 9

    def mu(self, a, b):
        z = [a[i] * b[j] for i, j in self.PAIRS]
        z[0] -= a[2] * b[3]
        return z

    def mul(self, x, y):
        p = self.p
        mu = self.mu(x, y)
        return tuple((x[i] + y[i]) % p for i in range(4)) + tuple(
            (x[4 + t] + y[4 + t] + mu[t]) % p for t in range(5)
        )

    def inv(self, x):
        p = self.p
        mu = self.mu(x, x)
        return tuple((-x[i]) % p for i in range(4)) + tuple((mu[t] - x[4 + t]) % p for t in range(5))

    @staticmethod
    def key(x):
        return x

    def contains(self, x) -> bool:
        return isinstance(x, tuple) and len(x) == 9 and all(0 <= v < self.p for v in x)

    __contains__ = contains

    def subgroup(self, gens, order_hint=None):
        return ClosureGroup(self, list(gens))

    def projection(self, x):
        """Image in (Z/p)^4."""
        return x[:4]

    def central_element(self, coords) -> tuple:
        return (0, 0, 0, 0) + tuple(c % self.p for c in coords)

    def __repr__(self):
        return f"SaltmanGroup(p={self.p})"


def _parse_perm_list(body: str) -> PermGroup:
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError("perm spec must look like perm:[(1,2),(1,2,3)]")
    inner = body[1:-1]
    items = re.findall(r"(?:\([^()]*\))+", inner)
    if re.sub(r"(?:\([^()]*\))+", "", inner).replace(",", "").strip():
        raise ValueError(f"cannot parse permutation list {body!r}")
    top = 0
    for it in items:
        for x in re.findall(r"\d+", it):
            top = max(top, int(x))
    degree = max(top, 1)
    return PermGroup([Permutation.from_cycles(it, degree) for it in items], degree)


def make_group(spec: str, max_cosets: int | None = None) -> FiniteGroup:
    """Build the group named by ``spec``; raises ValueError on malformed specs."""
    spec = spec.strip()
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise ValueError(f"malformed group spec {spec!r}")
    kind = kind.strip().lower()
    arg = arg.strip()
    try:
        if kind == "sym":
            return symmetric_group(int(arg))
        if kind == "alt":
            return alternating_group(int(arg))
        if kind == "cyclic":
            return cyclic_group(int(arg))
        if kind == "dihedral":
            return dihedral_group(int(arg))
        if kind == "quaternion":
            if int(arg) != 8:
                raise ValueError("only quaternion:8 is available")
            return quaternion_group()
        if kind == "elem_abelian":
            p, _, k = arg.partition("^")
            return elementary_abelian_group(int(p), int(k) if k else 1)
        if kind == "heisenberg":
            return heisenberg_group(int(arg))
        if kind == "saltman":
            p = int(arg)
            if p > SALTMAN_MAX_P:
                raise ValueError(f"saltman:{p} exceeds the size budget (p <= {SALTMAN_MAX_P})")
            return SaltmanGroup(p)
    except ValueError as exc:
        if "invalid literal" in str(exc):
            raise ValueError(f"malformed group spec {spec!r}") from None
        raise
    if kind == "perm":
        return _parse_perm_list(arg)
    if kind == "fp":
        from .fpgroup import DEFAULT_MAX_COSETS, parse_presentation, perm_rep, todd_coxeter

        table = todd_coxeter(parse_presentation(arg), (), max_cosets or DEFAULT_MAX_COSETS)
        return perm_rep(table)[0]
    raise ValueError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# shipped covers
# ---------------------------------------------------------------------------

COVER_NAMES = (
    "2S4plus", "2S4minus", "2S5plus", "2S5minus", "2A5", "2A6", "3A6", "2A7", "3A7", "Q8V4", "D8V4", "D16D8",
)
PULLBACK_COVERS = {"6A6": ("2A6", "3A6"), "6A7": ("2A7", "3A7")}


@lru_cache(maxsize=None)
def load_cover(name: str):
    """Validated cover by name; every load re-runs the recipe checks."""
    from .cover import pullback
    from .fpgroup import load_recipe, validate_cover_recipe

    if name in PULLBACK_COVERS:
        a, b = PULLBACK_COVERS[name]
        return pullback(load_cover(a), load_cover(b), name=name)
    recipe = load_recipe(name)
    c = validate_cover_recipe(recipe)
    h2 = recipe.get("multiplier")
    if h2 is None:
        h2 = known_multiplier(recipe["quotient"])
    c.h2 = h2
    return c


def covers_for(spec: str) -> list[str]:
    """Names of shipped maximal covers whose quotient is ``spec``."""
    from .fpgroup import load_recipe

    out = []
    for name in COVER_NAMES:
        if load_recipe(name)["quotient"] == spec:
            out.append(name)
    if spec == "alt:6":
        out.insert(0, "6A6")
    if spec == "alt:7":
        out.insert(0, "6A7")
    return out


# ---------------------------------------------------------------------------
# cycle types and theorem predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleType:
    lengths: tuple[int, ...]  # non-trivial cycle lengths, sorted
    degree: int

    def __post_init__(self):
        if any(x < 2 for x in self.lengths):
            raise ValueError("cycle lengths must be >= 2")
        if sum(self.lengths) > self.degree:
            raise ValueError("cycle lengths exceed the degree")
        object.__setattr__(self, "lengths", tuple(sorted(self.lengths)))

    @classmethod
    def of(cls, g: Permutation) -> "CycleType":
        return cls(g.cycle_type(), g.degree)

    @property
    def fixed_points(self) -> int:
        return self.degree - sum(self.lengths)

    @property
    def parity(self) -> int:
        """+1 for even permutations, -1 for odd ones."""
        return -1 if sum(x - 1 for x in self.lengths) % 2 else 1

    def all_lengths(self) -> tuple[int, ...]:
        return self.lengths + (1,) * self.fixed_points

    def distinct_lengths(self) -> bool:
        full = self.all_lengths()
        return len(set(full)) == len(full)

    def has_even_cycle(self) -> bool:
        return any(x % 2 == 0 for x in self.lengths)

    def __str__(self):
        return "(" + ",".join(map(str, self.lengths)) + ")"


def _as_cycle_type(t, degree=None) -> CycleType:
    if isinstance(t, CycleType):
        return t
    if isinstance(t, Permutation):
        return CycleType.of(t)
    if isinstance(t, ConjugacyClass):
        return CycleType.of(t.representative)
    if degree is None:
        raise ValueError("degree is required for a bare cycle-length tuple")
    return CycleType(tuple(t), degree)


def split_predicate(kind: str, t, degree: int | None = None) -> bool:
    """Whether classes of cycle type ``t`` split in a maximal cover of Sym/Alt.

    Symmetric groups: an even class splits when it has no even-length cycle;
    an odd class splits when all its cycle lengths, fixed points included,
    are distinct.  Alternating groups: a class splits when it has no
    even-length cycle, or when it has one and all lengths (fixed points
    included) are distinct.
    """
    ct = _as_cycle_type(t, degree)
    if kind == "sym":
        if ct.parity == 1:
            return not ct.has_even_cycle()
        return ct.distinct_lengths()
    if kind == "alt":
        if ct.parity != 1:
            raise ValueError(f"cycle type {ct} is odd, not in the alternating group")
        if not ct.has_even_cycle():
            return True
        return ct.distinct_lengths()
    raise ValueError(f"unknown kind {kind!r}")


ALT67_TYPE_I = {(5,), (2, 4), (7,)}
ALT67_TYPE_II = {(3,), (3, 3)}
ALT67_TYPE_III = {(2, 2), (2, 2, 3)}


def alt67_type(t) -> str:
    lengths = _as_cycle_type(t, 7).lengths if not isinstance(t, tuple) else tuple(sorted(t))
    if lengths in ALT67_TYPE_I:
        return "I"
    if lengths in ALT67_TYPE_II:
        return "II"
    if lengths in ALT67_TYPE_III:
        return "III"
    raise ValueError(f"cycle type {lengths} does not occur in A6 or A7")


def expected_ambiguity(kind: str, O: Sequence, degree: int | None = None) -> int:
    """Predicted ambiguity index of a Sym/Alt equipment from its cycle types.

    ``sym``/``alt``: 2 when every class splits, otherwise 1.  For
    ``alt67`` (or ``alt`` of degree 6 or 7) the value depends on which of the
    three class families occur: only family I gives 6, I plus II gives 2,
    I plus III gives 3, and II together with III gives 1.
    """
    if not O:
        raise ValueError("empty equipment")
    types = [_as_cycle_type(c, degree) for c in O]
    if any(not t.lengths for t in types):
        raise ValueError("the identity class cannot be part of an equipment")
    deg = types[0].degree
    if kind == "alt" and deg in (6, 7):
        kind = "alt67"
    if kind == "alt67":
        fams = {alt67_type(t.lengths) for t in types}
        has2, has3 = "II" in fams, "III" in fams
        if has2 and has3:
            return 1
        if has2:
            return 2
        if has3:
            return 3
        return 6
    if kind == "sym":
        if all(t.parity == 1 for t in types):
            raise ValueError("an equipment of a symmetric group needs an odd class")
    return 2 if all(split_predicate(kind, t) for t in types) else 1


# ---------------------------------------------------------------------------
# Saltman pipeline
# ---------------------------------------------------------------------------

def saltman_b0_pipeline(p: int = 2) -> dict:
    """Inflate every bicharacter class of (Z/p)^4 to the Saltman group, count
    the trivial ones, and certify a surviving class vanishing on all
    commuting pairs."""
    from .cocycle import TrivialityTester, commuting_pairs_vanish, inflate_bilinear

    if p > SALTMAN_MAX_P:
        raise ValueError(f"p = {p} exceeds the size budget")
    G = SaltmanGroup(p)
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    tester = TrivialityTester(G, p)
    classes = list(itertools.product(range(p), repeat=len(pairs)))
    trivial = []
    survivors = []
    for c in classes:
        w = inflate_bilinear(G, dict(zip(pairs, c)))
        if tester.is_trivial(w):
            trivial.append(c)
        else:
            survivors.append(c)
    certified = None
    x12 = tuple(int(pr == (0, 1)) for pr in pairs)
    order = [x12] + [c for c in survivors if c != x12]
    for c in order:
        if c in trivial:
            continue
        w = inflate_bilinear(G, dict(zip(pairs, c)))
        if commuting_pairs_vanish(G, w, p):
            certified = c
            break
    return {
        "p": p,
        "inflation_class_count": len(classes),
        "inflation_kernel_order": len(trivial),
        "b0_lower_bound": p if certified is not None else 1,
        "certificate": certified,
        "x1x2_trivial": x12 in trivial,
    }
