"""Explicit central extensions of permutation groups.

A :class:`CentralCover` bundles a cover group, its central kernel and the
quotient map.  From it we read off lifted commutators of commuting pairs,
the subgroup they generate for a set of classes, splitting numbers of
classes, and the ambiguity index ``|Z cap [G~,G~]| / k``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .perm import (
    ConjugacyClass,
    Homomorphism,
    Permutation,
    PermGroup,
    centralizer,
    class_of,
    commutator,
    conjugacy_classes,
    derived_subgroup,
    hom_by_images,
)


class NotMaximal(ValueError):
    """The cover does not realize the full multiplier, so ambiguity values would be wrong."""


@dataclass(eq=False)
class CentralCover:
    cover: PermGroup
    kernel: PermGroup
    target: PermGroup
    quotient_map: Homomorphism
    kernel_in_derived: tuple  # elements of Z cap [G~, G~]
    is_stem: bool
    name: str = "cover"
    h2: int | None = None
    _lifts: dict | None = field(default=None, repr=False)
    _k_cache: dict = field(default_factory=dict, repr=False)

    is_central_cover = True

    @property
    def is_maximal(self) -> bool | None:
        """Stem with kernel of order ``h2``; ``None`` while ``h2`` is unknown."""
        if self.h2 is None:
            return None
        return self.is_stem and len(self.kernel_in_derived) == self.h2

    @property
    def kernel_order(self) -> int:
        return self.kernel.order

    def with_multiplier(self, h2: int) -> "CentralCover":
        self.h2 = h2
        return self

    def lift(self, g: Permutation) -> Permutation:
        """Some preimage of ``g``; all preimages differ by central elements."""
        if self._lifts is None:
            G = self.target
            pairs = [(img, pre) for img, pre in zip(self.quotient_map.images, self.cover.gens)]
            lifts = {G.identity: self.cover.identity}
            queue = deque([G.identity])
            while queue:
                x = queue.popleft()
                lx = lifts[x]
                for img, pre in pairs:
                    y = x * img
                    if y not in lifts:
                        lifts[y] = lx * pre
                        queue.append(y)
            self._lifts = lifts
        try:
            return self._lifts[g]
        except KeyError:
            raise ValueError(f"{g} is not in the quotient group") from None


def build_cover(cover: PermGroup, kernel_gens: Sequence[Permutation], target: PermGroup,
                images: Sequence[Permutation], name: str = "cover", h2: int | None = None) -> CentralCover:
    """Validate ``cover -> target`` (generator ``i`` to ``images[i]``) with kernel ``<kernel_gens>``."""
    K = cover.subgroup(list(kernel_gens))
    for z in K.gens:
        if not cover.contains(z):
            raise ValueError(f"kernel generator {z} is not in the cover group")
        if any(z * g != g * z for g in cover.gens):
            raise ValueError(f"kernel generator {z} is not central")
    f = hom_by_images(cover, target, images)
    if not f.is_surjective():
        raise ValueError("quotient map is not surjective")
    for z in K.gens:
        if not f(z).is_identity():
            raise ValueError(f"kernel generator {z} does not map to the identity")
    if cover.order != target.order * K.order:
        raise ValueError(
            f"kernel of the quotient map has order {cover.order // target.order}, "
            f"but the declared kernel has order {K.order}"
        )
    D = derived_subgroup(cover)
    kd = tuple(z for z in K.elements() if D.contains(z))
    return CentralCover(cover, K, target, f, kd, len(kd) == K.order, name=name, h2=h2)


def trivial_cover(G: PermGroup) -> CentralCover:
    return build_cover(G, [], G, G.gens, name="trivial")


def lifted_commutator(c: CentralCover, g: Permutation, h: Permutation) -> Permutation:
    """``[h~, g~]`` for commuting ``g, h`` in the quotient."""
    if g * h != h * g:
        raise ValueError("the pair does not commute")
    return commutator(c.lift(h), c.lift(g))


def _classes_of(c: CentralCover, O) -> list[ConjugacyClass]:
    if isinstance(O, ConjugacyClass):
        return [O]
    return list(O)


def k_subgroup(c: CentralCover, O, allow_nonmaximal: bool = False) -> tuple[PermGroup, int]:
    """Subgroup of the kernel generated by lifted commutators ``[h~, g~]`` with
    ``g`` in the given classes and ``h`` centralizing ``g``.

    One representative per class is enough, and ``h`` only needs to run over
    generators of the centralizer, since ``h -> [h~, g~]`` is a homomorphism.
    """
    if not allow_nonmaximal and c.is_maximal is False:
        raise NotMaximal(f"{c.name} is not a maximal cover")
    classes = _classes_of(c, O)
    zs = []
    for cl in classes:
        g = cl.representative
        key = g
        if key not in c._k_cache:
            C = centralizer(c.target, g)
            c._k_cache[key] = [lifted_commutator(c, g, h) for h in C.gens]
        zs.extend(c._k_cache[key])
    K = c.cover.subgroup([z for z in zs if not z.is_identity()])
    return K, K.order


def k_subgroup_all_elements(c: CentralCover, O) -> int:
    """Same subgroup order as :func:`k_subgroup`, from every element of every class
    and every centralizing element (used to check the shortcut)."""
    zs = set()
    G = c.target
    for cl in _classes_of(c, O):
        for g in cl.elements:
            for h in centralizer(G, g).elements():
                zs.add(lifted_commutator(c, g, h))
    return c.cover.subgroup([z for z in zs if not z.is_identity()]).order


def ambiguity_from_cover(c: CentralCover, O, allow_nonmaximal: bool = False) -> tuple[int, int]:
    """``(a, k)`` with ``k = |K_O|`` and ``a = |Z cap [G~,G~]| / k``."""
    if not allow_nonmaximal:
        if c.is_maximal is None:
            raise NotMaximal(f"{c.name}: multiplier order unknown, maximality not certified")
        if not c.is_maximal:
            raise NotMaximal(f"{c.name} is not a maximal cover")
    _, k = k_subgroup(c, O, allow_nonmaximal=True)
    zd = len(c.kernel_in_derived)
    assert zd % k == 0
    return zd // k, k


def _cover_class_images(c: CentralCover):
    cached = getattr(c, "_class_images", None)
    if cached is None:
        f = c.quotient_map
        cached = [(cl, f(cl.representative)) for cl in conjugacy_classes(c.cover)]
        c._class_images = cached
    return cached


def splitting_number(c: CentralCover, C: ConjugacyClass) -> int:
    """Number of classes of the cover lying over ``C``, counted directly.

    For maximal covers the count is checked against ``|Z cap [G~,G~]| / k_C``.
    """
    s = sum(1 for _, img in _cover_class_images(c) if img in C)
    if c.is_maximal:
        _, kc = k_subgroup(c, C)
        predicted = len(c.kernel_in_derived) // kc
        if predicted != s:
            raise AssertionError(
                f"{c.name}: class {C} splits into {s} classes but the commutator subgroup predicts {predicted}"
            )
    return s


@dataclass(frozen=True)
class SplitReport:
    cover: str
    rows: tuple  # (class, s_f(C), k_C)


def split_report(c: CentralCover) -> SplitReport:
    rows = []
    for cl in conjugacy_classes(c.target)[1:]:
        s = splitting_number(c, cl)
        _, kc = k_subgroup(c, cl, allow_nonmaximal=True)
        rows.append((cl, s, kc))
    return SplitReport(c.name, tuple(rows))


def pullback(c1: CentralCover, c2: CentralCover, name: str | None = None) -> CentralCover:
    """Fibre product of two covers of the same group.

    Generated inside ``G~1 x G~2`` (on disjoint points) by paired lifts of the
    target generators together with both kernels.
    """
    G = c1.target
    if c2.target.degree != G.degree or c2.target.order != G.order or not all(
        c2.target.contains(g) for g in G.gens
    ) or not all(G.contains(g) for g in c2.target.gens):
        raise ValueError("covers are over different groups")
    n1, n2 = c1.cover.degree, c2.cover.degree

    def pair(x: Permutation, y: Permutation) -> Permutation:
        return Permutation._raw(x.images + tuple(n1 + v for v in y.images))

    id1, id2 = c1.cover.identity, c2.cover.identity
    gens, images = [], []
    for t in G.gens:
        gens.append(pair(c1.lift(t), c2.lift(t)))
        images.append(t)
    kern = []
    for z in c1.kernel.gens:
        kern.append(pair(z, id2))
    for z in c2.kernel.gens:
        kern.append(pair(id1, z))
    gens.extend(kern)
    images.extend([G.identity] * len(kern))
    P = PermGroup(gens, n1 + n2)
    expected = G.order * c1.kernel.order * c2.kernel.order
    if P.order != expected:
        raise ValueError(f"fibre product has order {P.order}, expected {expected}")
    h2 = c1.h2 if c1.h2 is not None else c2.h2
    return build_cover(P, kern, G, images, name=name or f"{c1.name}x{c2.name}", h2=h2)


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
