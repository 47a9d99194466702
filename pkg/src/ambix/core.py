"""Equipped groups, engine selection, scans and the theorem-checking suites.

Two engines compute the ambiguity index ``a(G,O)``:

* ``cocycle``: ``a`` is the number of multiplier classes whose commutator
  pairing vanishes on every commuting pair ``(g, h)`` with ``g`` in ``O``.
  Needs the element table and the cohomology basis, so ``|G|`` must be at
  most the cocycle cap.
* ``cover``: ``a = |Z cap [G~,G~]| / |K_O|`` read off a validated maximal
  central cover, where ``K_O`` is generated by lifted commutators.

When both apply, both run and must agree.  There is no silent fallback:
with neither available an :class:`NoEngine` error is raised.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import catalog
from .cocycle import (
    DEFAULT_COCYCLE_CAP,
    CohomologyBasis,
    _factor,
    coboundary,
    cohomology,
    combine_divisors,
    commuting_columns,
    pairing_matrix,
)
from .cover import CentralCover, k_subgroup, splitting_number
from .perm import ConjugacyClass, FiniteGroup, Permutation, PermGroup, abelian_invariants, conjugacy_classes
from .zmodlin import howell_form

MAX_SCAN_CLASSES = 16


class EquipmentError(ValueError):
    pass


class NoEngine(RuntimeError):
    pass


class EngineDisagreement(AssertionError):
    pass


# ---------------------------------------------------------------------------
# equipped groups and selectors
# ---------------------------------------------------------------------------

def _type_label(ct: tuple[int, ...]) -> str:
    return "+".join(map(str, ct)) if ct else "1"


def class_labels(G: FiniteGroup) -> list[str]:
    """Selector string naming each class in canonical order.

    Permutation groups get ``cycles:<type>``, with ``#i`` appended when
    several classes share the cycle type; other groups get ``class:<i>``.
    """
    classes = conjugacy_classes(G)
    if not isinstance(G, PermGroup):
        return [f"class:{i}" for i in range(len(classes))]
    types = [c.cycle_type() for c in classes]
    out = []
    for i, t in enumerate(types):
        same = [j for j, u in enumerate(types) if u == t]
        lab = "cycles:" + _type_label(t)
        if len(same) > 1:
            lab += f"#{same.index(i) + 1}"
        out.append(lab)
    return out


def _parse_type(text: str) -> tuple[int, ...]:
    try:
        parts = [int(x) for x in text.split("+") if x.strip()]
    except ValueError:
        raise EquipmentError(f"bad cycle type {text!r}") from None
    return tuple(sorted(x for x in parts if x != 1))


def select_classes(G: FiniteGroup, selector) -> list[ConjugacyClass]:
    """Classes named by one selector.

    ``cycles:3`` or ``cycles:2+2`` pick every class of that cycle type,
    ``cycles:5#2`` the second such class; ``rep:(1,2)`` the class of a
    permutation; ``class:i`` the ``i``-th class in canonical order (0 is the
    identity); ``all`` every non-identity class.
    """
    classes = conjugacy_classes(G)
    if isinstance(selector, ConjugacyClass):
        if selector not in classes:
            raise EquipmentError(f"{selector} is not a class of the group")
        return [classes[classes.index(selector)]]
    sel = str(selector).strip()
    kind, _, arg = sel.partition(":")
    kind = kind.strip().lower()
    if kind == "all" and not arg:
        return classes[1:]
    if kind == "class":
        try:
            i = int(arg)
        except ValueError:
            raise EquipmentError(f"bad class index in {sel!r}") from None
        if not 0 <= i < len(classes):
            raise EquipmentError(f"class index {i} out of range (0..{len(classes) - 1})")
        return [classes[i]]
    if not isinstance(G, PermGroup):
        raise EquipmentError(f"selector {sel!r} needs a permutation group; use class:<i>")
    if kind == "cycles":
        body, _, nth = arg.partition("#")
        t = _parse_type(body)
        hits = [c for c in classes if c.cycle_type() == t]
        if not hits:
            raise EquipmentError(f"no class of cycle type {body!r}")
        if nth:
            try:
                k = int(nth)
            except ValueError:
                raise EquipmentError(f"bad class number in {sel!r}") from None
            if not 1 <= k <= len(hits):
                raise EquipmentError(f"{sel!r}: only {len(hits)} classes of that type")
            return [hits[k - 1]]
        return hits
    if kind == "rep":
        try:
            g = Permutation.from_cycles(arg, G.degree)
        except ValueError as exc:
            raise EquipmentError(f"bad permutation in {sel!r}: {exc}") from None
        for c in classes:
            if g in c:
                return [c]
        raise EquipmentError(f"{arg} is not an element of the group")
    raise EquipmentError(f"unknown selector {sel!r}")


@dataclass(frozen=True)
class EquippedGroup:
    group: FiniteGroup
    classes: tuple[ConjugacyClass, ...]
    spec: str | None = None
    generated_order: int = 0  # order of the subgroup generated by the classes

    @property
    def labels(self) -> list[str]:
        labels = class_labels(self.group)
        all_classes = conjugacy_classes(self.group)
        return [labels[all_classes.index(c)] for c in self.classes]


def _generated_order(G: FiniteGroup, classes: Sequence[ConjugacyClass]) -> int:
    elements = [x for c in classes for x in c.elements]
    return G.subgroup(elements).order


def equipped(G: FiniteGroup, selectors: Iterable, spec: str | None = None) -> EquippedGroup:
    """Validate an equipment: non-identity classes that generate ``G``."""
    if isinstance(selectors, (str, ConjugacyClass)):
        selectors = [selectors]
    classes: list[ConjugacyClass] = []
    for sel in selectors:
        for c in select_classes(G, sel):
            if c not in classes:
                classes.append(c)
    if not classes:
        raise EquipmentError("empty equipment")
    ident = G.identity
    if any(c.representative == ident for c in classes):
        raise EquipmentError("the identity class cannot be part of an equipment")
    all_classes = conjugacy_classes(G)
    classes.sort(key=all_classes.index)
    order = _generated_order(G, classes)
    if order != G.order:
        raise EquipmentError(f"the classes generate a subgroup of order {order}, not {G.order}")
    return EquippedGroup(G, tuple(classes), spec, order)


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------

class _Engines:
    """Per-group engine state: cohomology bases, pairing blocks, cover."""

    def __init__(self, G: FiniteGroup, spec: str | None, cocycle_cap: int, cover: CentralCover | None,
                 engine: str):
        self.G = G
        self.spec = spec
        self.cap = cocycle_cap
        self.engine = engine
        self.bases: dict[int, CohomologyBasis] | None = None
        self.cover = None
        self._blocks: dict = {}
        if engine in ("auto", "cocycle") and G.order <= cocycle_cap:
            self.bases = cohomology(G, cocycle_cap)
        if engine in ("auto", "cover"):
            self.cover = cover if cover is not None else _catalog_cover(spec)
            if self.cover is not None and self.cover.is_maximal is not True:
                if cover is not None:
                    raise NoEngine(f"cover {self.cover.name} is not certified maximal")
                self.cover = None
        if self.bases is None and self.cover is None:
            why = []
            if G.order > cocycle_cap:
                why.append(f"order {G.order} exceeds the cocycle cap {cocycle_cap}")
            why.append("no validated maximal cover is available")
            raise NoEngine("; ".join(why))

    @property
    def names(self) -> str:
        return "+".join(n for n, ok in (("cocycle", self.bases is not None), ("cover", self.cover is not None)) if ok)

    # h2 -------------------------------------------------------------
    def h2_divisors(self) -> tuple[int, ...]:
        if self.bases is not None:
            return combine_divisors([b.divisors for b in self.bases.values()])
        kd = self.cover.cover.subgroup(list(self.cover.kernel_in_derived))
        return abelian_invariants(kd)

    def h2(self) -> int:
        out = 1
        for d in self.h2_divisors():
            out *= d
        return out

    # a --------------------------------------------------------------
    def _block(self, basis: CohomologyBasis, cl: ConjugacyClass) -> np.ndarray:
        key = (basis.prime, cl.representative)
        blk = self._blocks.get(key)
        if blk is None:
            blk = pairing_matrix(basis, commuting_columns(self.G, [cl]))
            self._blocks[key] = blk
        return blk

    def a_cocycle(self, classes: Sequence[ConjugacyClass]) -> int:
        out = 1
        for basis in self.bases.values():
            if not basis.tables:
                continue
            P = np.hstack([self._block(basis, c) for c in classes])
            image = howell_form(P, basis.modulus).order() if P.shape[1] else 1
            out *= basis.order // image
        return out

    def a_cover(self, classes: Sequence[ConjugacyClass]) -> int:
        _, k = k_subgroup(self.cover, classes)
        return len(self.cover.kernel_in_derived) // k

    def a_all(self, classes) -> dict[str, int]:
        out = {}
        if self.bases is not None:
            out["cocycle"] = self.a_cocycle(classes)
        if self.cover is not None:
            out["cover"] = self.a_cover(classes)
        return out

    # splitting numbers -----------------------------------------------
    def splitting_all(self, cl: ConjugacyClass) -> dict[str, int]:
        out = {}
        if self.bases is not None:
            out["cocycle"] = self.a_cocycle([cl])
        if self.cover is not None:
            out["cover"] = splitting_number(self.cover, cl)
        return out


def _catalog_cover(spec: str | None) -> CentralCover | None:
    if spec is None:
        return None
    for name in catalog.covers_for(spec):
        c = catalog.load_cover(name)
        if c.is_maximal:
            return c
    return None


def engines_for(G: FiniteGroup, spec: str | None = None, cocycle_cap: int = DEFAULT_COCYCLE_CAP,
                cover: CentralCover | None = None, engine: str = "auto") -> _Engines:
    if engine not in ("auto", "cocycle", "cover"):
        raise ValueError(f"unknown engine {engine!r}")
    cache = G.__dict__.setdefault("_engines", {})
    key = (spec, cocycle_cap, id(cover), engine)
    if key not in cache:
        cache[key] = _Engines(G, spec, cocycle_cap, cover, engine)
    return cache[key]


def _agreed(values: dict[str, int], what: str) -> int:
    distinct = set(values.values())
    if len(distinct) != 1:
        raise EngineDisagreement(f"engines disagree on {what}: {values}")
    return distinct.pop()


@dataclass(frozen=True)
class AmbiguityRow:
    classes: tuple[str, ...]
    a: int
    k: int
    engine: str
    expected: int | None = None

    def as_dict(self) -> dict:
        d = {"classes": list(self.classes), "a": self.a, "k": self.k, "engine": self.engine}
        if self.expected is not None:
            d["expected"] = self.expected
        return d


def ambiguity_index(eg: EquippedGroup, cocycle_cap: int = DEFAULT_COCYCLE_CAP,
                    cover: CentralCover | None = None, engine: str = "auto") -> tuple[int, int, str]:
    """``(a, k, engine)`` with ``a * k = h2``; every applicable engine runs."""
    E = engines_for(eg.group, eg.spec, cocycle_cap, cover, engine)
    a = _agreed(E.a_all(eg.classes), "the ambiguity index")
    h = E.h2()
    return a, h // a, E.names


def schur_multiplier(G: FiniteGroup, spec: str | None = None, cocycle_cap: int = DEFAULT_COCYCLE_CAP,
                     cover: CentralCover | None = None) -> tuple[int, ...]:
    """Invariant factors of ``H_2(G, Z)``."""
    return engines_for(G, spec, cocycle_cap, cover).h2_divisors()


@dataclass(frozen=True)
class B0Value:
    value: int
    lower_bound: bool = False

    def as_dict(self) -> dict:
        return {"value": self.value, "lower_bound": self.lower_bound}


def bogomolov(G: FiniteGroup, spec: str | None = None, cocycle_cap: int = DEFAULT_COCYCLE_CAP,
              cover: CentralCover | None = None) -> B0Value:
    """``b0(G) = a(G, G minus 1)``.  Saltman groups report a certified lower bound."""
    if isinstance(G, catalog.SaltmanGroup):
        res = catalog.saltman_b0_pipeline(G.p)
        return B0Value(res["b0_lower_bound"], True)
    classes = conjugacy_classes(G)[1:]
    if not classes:
        return B0Value(1)
    E = engines_for(G, spec, cocycle_cap, cover)
    return B0Value(_agreed(E.a_all(classes), "b0"))


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------

@dataclass
class AmbiguityReport:
    spec: str | None
    order: int
    h2_divisors: tuple[int, ...]
    b0: B0Value | None
    rows: list[AmbiguityRow] = field(default_factory=list)
    splitting: list[tuple[str, int]] = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def h2(self) -> int:
        out = 1
        for d in self.h2_divisors:
            out *= d
        return out

    def as_dict(self, timings: bool = True) -> dict:
        return {
            "spec": self.spec,
            "order": self.order,
            "h2": {"divisors": list(self.h2_divisors)},
            "b0": self.b0.as_dict() if self.b0 is not None else None,
            "rows": [r.as_dict() for r in self.rows],
            "splitting": [{"class": c, "s": s} for c, s in self.splitting],
            "timings": {k: round(v, 4) for k, v in self.timings.items()} if timings else {},
            "failures": list(self.failures),
        }


def _expected(spec: str | None, classes: Sequence[ConjugacyClass]) -> int | None:
    if not spec:
        return None
    kind, _, arg = spec.partition(":")
    if kind not in ("sym", "alt"):
        return None
    return catalog.expected_ambiguity(kind, list(classes), int(arg))


def generating_subsets(G: FiniteGroup, max_classes: int = MAX_SCAN_CLASSES) -> list[tuple[ConjugacyClass, ...]]:
    """Every generating set of non-identity classes, smallest first."""
    classes = conjugacy_classes(G)[1:]
    if len(classes) > max_classes:
        raise EquipmentError(f"{len(classes)} classes exceed the scan limit {max_classes}")
    out = []
    for r in range(1, len(classes) + 1):
        for sub in itertools.combinations(classes, r):
            if _generated_order(G, sub) == G.order:
                out.append(sub)
    return out


def splitting_table(G: FiniteGroup, spec: str | None = None, cocycle_cap: int = DEFAULT_COCYCLE_CAP,
                    cover: CentralCover | None = None) -> list[tuple[str, int]]:
    E = engines_for(G, spec, cocycle_cap, cover)
    labels = class_labels(G)
    out = []
    for lab, cl in zip(labels[1:], conjugacy_classes(G)[1:]):
        out.append((lab, _agreed(E.splitting_all(cl), f"the splitting number of {lab}")))
    return out


def scan_equipments(G: FiniteGroup, spec: str | None = None, cocycle_cap: int = DEFAULT_COCYCLE_CAP,
                    cover: CentralCover | None = None, engine: str = "auto") -> AmbiguityReport:
    """Ambiguity index of every generating class subset.

    Rows that differ between engines, or from the cycle-type prediction
    for symmetric and alternating groups, are listed in ``failures``.
    """
    t0 = time.perf_counter()
    E = engines_for(G, spec, cocycle_cap, cover, engine)
    h2_div = E.h2_divisors()
    h = E.h2()
    t1 = time.perf_counter()
    labels = dict(zip(conjugacy_classes(G), class_labels(G)))
    subsets = generating_subsets(G)
    t2 = time.perf_counter()
    rep = AmbiguityReport(spec, G.order, h2_div, None)
    for sub in subsets:
        names = tuple(labels[c] for c in sub)
        vals = E.a_all(sub)
        if len(set(vals.values())) != 1:
            rep.failures.append(f"{names}: engines disagree {vals}")
        a = min(vals.values())
        exp = _expected(spec, sub)
        if exp is not None and exp != a:
            rep.failures.append(f"{names}: a = {a} but the cycle-type prediction is {exp}")
        rep.rows.append(AmbiguityRow(names, a, h // a, E.names, exp))
    t3 = time.perf_counter()
    full = conjugacy_classes(G)[1:]
    rep.b0 = B0Value(E.a_cover(full) if E.bases is None else E.a_cocycle(full))
    for cl in full:
        vals = E.splitting_all(cl)
        if len(set(vals.values())) != 1:
            rep.failures.append(f"{labels[cl]}: splitting numbers disagree {vals}")
        rep.splitting.append((labels[cl], min(vals.values())))
    t4 = time.perf_counter()
    rep.timings = {"engines": t1 - t0, "subsets": t2 - t1, "rows": t3 - t2, "splitting": t4 - t3}
    return rep


# ---------------------------------------------------------------------------
# theorem checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    subject: str
    passed: bool
    detail: str = ""


def _divides(a: int, b: int) -> bool:
    return b % a == 0


def check_rows(rows: Sequence[AmbiguityRow], h2: int, b0: int, subject: str = "") -> list[Check]:
    """Row-level identities: ``a * k = h2`` and ``b0 | a | h2`` (so ``b0 <= a <= h2``)."""
    out = []
    bad = [r for r in rows if r.a * r.k != h2]
    out.append(Check("a*k=h2", subject, not bad, "; ".join(f"{r.classes}: {r.a}*{r.k}" for r in bad)))
    bad = [r for r in rows if not (b0 <= r.a <= h2 and _divides(b0, r.a) and _divides(r.a, h2))]
    out.append(Check("b0<=a<=h2", subject, not bad, "; ".join(f"{r.classes}: a={r.a}" for r in bad)))
    return out


def check_monotone(rows: Sequence[AmbiguityRow], subject: str = "") -> Check:
    """``O1 subset O2`` implies ``a(O2) <= a(O1)``, over every nested pair of rows."""
    bad = []
    pairs = 0
    for r1 in rows:
        s1 = set(r1.classes)
        for r2 in rows:
            if r1 is r2 or not s1 < set(r2.classes):
                continue
            pairs += 1
            if r2.a > r1.a:
                bad.append(f"{r1.classes} -> {r2.classes}: {r1.a} < {r2.a}")
    return Check("monotone", subject, not bad, "; ".join(bad) or f"{pairs} nested pairs")


def _element_order(G: FiniteGroup, cl: ConjugacyClass) -> int:
    return G.element_order(cl.representative)


def _is_prime_power(n: int) -> bool:
    return n > 1 and len(_factor(n)) == 1


def check_order_conditions(G: FiniteGroup, report: AmbiguityReport, subject: str = "") -> list[Check]:
    """Class-order consequences: equipments of orders coprime to ``h2`` give
    ``a = h2``; the equipment of all prime-power-order classes, and the one
    restricted to primes dividing ``h2``, give ``a = b0``."""
    h, b0 = report.h2, report.b0.value
    labels = dict(zip(class_labels(G), conjugacy_classes(G)))
    orders = {lab: _element_order(G, cl) for lab, cl in labels.items()}
    out = []
    bad, seen = [], 0
    for r in report.rows:
        if all(gcd(orders[c], h) == 1 for c in r.classes):
            seen += 1
            if r.a != h:
                bad.append(f"{r.classes}: a={r.a}")
    out.append(Check("coprime-order", subject, not bad, "; ".join(bad) or f"{seen} rows"))

    nonid = [lab for lab in labels if orders[lab] > 1]
    targets = {"all primes": frozenset(lab for lab in nonid if _is_prime_power(orders[lab]))}
    h_primes = set(_factor(h)) if h > 1 else set()
    targets["primes dividing h2"] = frozenset(
        lab for lab in nonid if _is_prime_power(orders[lab]) and set(_factor(orders[lab])) <= h_primes
    )
    bad, seen = [], 0
    by_set = {frozenset(r.classes): r for r in report.rows}
    for what, target in targets.items():
        r = by_set.get(target)
        if r is None:
            continue
        seen += 1
        if r.a != b0:
            bad.append(f"{what}: a={r.a}, b0={b0}")
    out.append(Check("prime-power", subject, not bad, "; ".join(bad) or f"{seen} equipments"))
    return out


def check_splitting(report: AmbiguityReport, subject: str = "") -> list[Check]:
    """Consequences of the splitting numbers ``s(C) = h2 / k_C``.

    * ``a`` divides ``s(C)`` for every class ``C`` of the equipment;
    * ``a = h2`` exactly when every class splits completely;
    * some ``s(C) = 1`` forces ``a = 1``, as do two coprime ``s`` values;
    * if ``h2 = p q`` with coprime ``p, q > 1``, some ``s(C1) = q`` and every
      ``s(C)`` is prime to ``p``, then ``a`` divides ``q``, and ``a = q``
      when moreover ``q`` divides every ``s(C)``.
    """
    h = report.h2
    s = dict(report.splitting)
    bad = {"a|s": [], "split-all": [], "split-coprime": [], "split-factor": []}
    factorizations = [(p, h // p) for p in range(2, h) if h % p == 0 and gcd(p, h // p) == 1]
    for r in report.rows:
        svals = [s[c] for c in r.classes]
        if any(v % r.a for v in svals):
            bad["a|s"].append(f"{r.classes}")
        if (r.a == h) != all(v == h for v in svals):
            bad["split-all"].append(f"{r.classes}")
        coprime_pair = any(gcd(x, y) == 1 for x, y in itertools.combinations(svals, 2))
        if (1 in svals or coprime_pair) and r.a != 1:
            bad["split-coprime"].append(f"{r.classes}")
        for p, q in factorizations:
            if q in svals and all(gcd(v, p) == 1 for v in svals):
                if q % r.a or (all(v % q == 0 for v in svals) and r.a != q):
                    bad["split-factor"].append(f"{r.classes} (p={p}, q={q}, a={r.a})")
    return [Check(name, subject, not v, "; ".join(v)) for name, v in bad.items()]


def check_report(G: FiniteGroup, report: AmbiguityReport, subject: str = "") -> list[Check]:
    subject = subject or report.spec or ""
    out = check_rows(report.rows, report.h2, report.b0.value, subject)
    out.append(check_monotone(report.rows, subject))
    out.extend(check_order_conditions(G, report, subject))
    if report.splitting:
        out.extend(check_splitting(report, subject))
    out.append(Check("scan", subject, not report.failures, "; ".join(report.failures)))
    return out


def check_engine_agreement(G: FiniteGroup, spec: str, cocycle_cap: int = DEFAULT_COCYCLE_CAP) -> Check:
    """Both engines on their own: identical ``h2``, rows and splitting numbers."""
    try:
        co = scan_equipments(G, spec, cocycle_cap, engine="cocycle")
        cv = scan_equipments(G, spec, cocycle_cap, engine="cover")
    except NoEngine as exc:
        return Check("engine-agreement", spec, True, f"skipped: {exc}")
    same = (co.h2 == cv.h2 and [(r.classes, r.a) for r in co.rows] == [(r.classes, r.a) for r in cv.rows]
            and co.splitting == cv.splitting)
    detail = f"h2 {co.h2}/{cv.h2}, {len(co.rows)} rows, {len(co.splitting)} classes"
    return Check("engine-agreement", spec, same, detail)


def pairing_invariance(G: FiniteGroup, trials: int = 100, seed: int = 0,
                       cocycle_cap: int = DEFAULT_COCYCLE_CAP, subject: str = "") -> Check:
    """Adding random coboundaries and carry classes to each basis cocycle
    leaves ``w(g,h) - w(h,g)`` unchanged on every commuting pair."""
    rng = np.random.default_rng(seed)
    T = G.table()
    M = T.mult_table(cap=max(2000, T.n))
    commute = M == M.T
    bad = []
    tested = 0
    for p, basis in cohomology(G, cocycle_cap).items():
        m = basis.modulus
        carries = basis.carry_tables()
        for bi, w in enumerate(basis.tables):
            ref = ((w.values - w.values.T) % m)[commute]
            for _ in range(trials):
                f = rng.integers(0, m, size=T.n)
                f[0] = 0
                v = w + coboundary(G, f, m)
                for c in carries:
                    v = v + c.scale(int(rng.integers(0, m)))
                if not v.is_cocycle():
                    bad.append(f"p={p} basis {bi}: perturbation is not a cocycle")
                    break
                if (((v.values - v.values.T) % m)[commute] != ref).any():
                    bad.append(f"p={p} basis {bi}: pairing changed")
                    break
                tested += 1
    return Check("pairing-invariance", subject, not bad, "; ".join(bad) or f"{tested} perturbations")


SUITES = {
    "core": ("sym:4", "sym:5", "alt:5", "elem_abelian:2^2", "quaternion:8", "dihedral:4"),
    "abelian": ("cyclic:6", "elem_abelian:2^2", "elem_abelian:2^3", "elem_abelian:3^2"),
    "alt67": ("alt:6", "alt:7"),
}
SUITES["all"] = tuple(dict.fromkeys(SUITES["core"] + SUITES["abelian"] + SUITES["alt67"]))


@dataclass
class SuiteReport:
    scope: str
    checks: list[Check]
    reports: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def verify_suite(scope: str | Sequence[str] = "core", cocycle_cap: int = DEFAULT_COCYCLE_CAP,
                 seed: int | None = None, max_cosets: int | None = None) -> SuiteReport:
    """Scan every group in ``scope`` and run all checks; failures are listed, not raised.

    ``scope`` is a suite name (``core``, ``abelian``, ``alt67``, ``all``,
    ``fuzz``) or a list of group specs.  ``fuzz`` runs the pairing-invariance
    perturbations on the ``core`` groups with the given seed.
    """
    if isinstance(scope, str):
        if scope == "fuzz":
            checks = [pairing_invariance(catalog.make_group(s), seed=seed or 0, subject=s,
                                         cocycle_cap=cocycle_cap)
                      for s in SUITES["core"]]
            return SuiteReport(scope, checks)
        if scope not in SUITES:
            raise ValueError(f"unknown suite {scope!r}; choose from {sorted(SUITES) + ['fuzz']}")
        name, specs = scope, SUITES[scope]
    else:
        specs = tuple(scope)
        name = ",".join(specs)
    checks: list[Check] = []
    reports = {}
    for spec in specs:
        G = catalog.make_group(spec, max_cosets)
        try:
            rep = scan_equipments(G, spec, cocycle_cap)
        except (NoEngine, EngineDisagreement) as exc:
            checks.append(Check("scan", spec, False, str(exc)))
            continue
        reports[spec] = rep
        checks.extend(check_report(G, rep, spec))
        E = engines_for(G, spec, cocycle_cap)
        if E.bases is not None and E.cover is not None:
            checks.append(check_engine_agreement(G, spec, cocycle_cap))
            checks.append(Check("h2-cover-kernel", spec, E.h2() == len(E.cover.kernel_in_derived),
                                f"{E.h2()} vs {len(E.cover.kernel_in_derived)}"))
    return SuiteReport(name, checks, reports)
