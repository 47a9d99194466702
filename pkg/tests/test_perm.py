import itertools
from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from ambix.catalog import make_group, quaternion_group, symmetric_group
from ambix.perm import (
    NotAHomomorphism,
    Permutation,
    PermGroup,
    c_graph,
    centralizer,
    commutator,
    conjugacy_classes,
    group_from_generators,
    hom_by_images,
    quotient_by_central,
    structure_report,
)


def P(text, degree):
    return Permutation.from_cycles(text, degree)


def closure(gens, degree):
    """Brute-force element set generated by ``gens``."""
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def test_cycle_io_roundtrip():
    p = P("(1,2)(3,4,5)", 5)
    assert p.to_cycles() == "(1,2)(3,4,5)"
    assert p.cycle_type() == (2, 3)
    assert p.order() == 6
    assert (p * p.inverse()).is_identity()
    assert Permutation.identity(3).to_cycles() == "()"


def test_composition_convention():
    # (p*q)(i) = q(p(i)): apply p first
    p, q = P("(1,2)", 3), P("(2,3)", 3)
    assert (p * q)(0) == q(p(0)) == 2


def test_commutator_convention():
    a, b = P("(1,2)", 3), P("(2,3)", 3)
    assert commutator(a, b) == a.inverse() * b.inverse() * a * b


@pytest.mark.parametrize(
    "gens, degree, order",
    [(["(1,2)", "(1,2,3)"], 3, 6), (["(1,2,3)", "(3,4,5)"], 5, 60), ([], 4, 1)],
)
def test_group_orders(gens, degree, order):
    G = group_from_generators([P(g, degree) for g in gens], degree)
    assert G.order == order
    assert G.order == len(closure(G.gens, degree))


def test_inconsistent_degrees_rejected():
    with pytest.raises(ValueError):
        group_from_generators([P("(1,2)", 2), P("(1,2,3)", 3)], 3)


def test_membership_matches_enumeration():
    G = group_from_generators([P("(1,2,3)", 4), P("(2,3,4)", 4)], 4)
    elems = closure(G.gens, 4)
    for x in map(Permutation, itertools.permutations(range(4))):
        assert G.contains(x) == (x in elems)


@pytest.mark.parametrize(
    "spec, sizes",
    [("sym:4", [1, 3, 6, 6, 8]), ("cyclic:4", [1, 1, 1, 1]), ("quaternion:8", [1, 1, 2, 2, 2])],
)
def test_class_sizes(spec, sizes):
    G = make_group(spec)
    assert sorted(c.size for c in conjugacy_classes(G)) == sizes


@pytest.mark.parametrize("spec", ["sym:4", "sym:5", "alt:5", "dihedral:5", "quaternion:8", "heisenberg:3"])
def test_class_equation_and_centralizers(spec):
    G = make_group(spec)
    classes = conjugacy_classes(G)
    assert sum(c.size for c in classes) == G.order
    assert classes[0].representative == G.identity
    for c in classes:
        assert G.order % c.size == 0
        C = centralizer(G, c.representative)
        assert c.size * C.order == G.order
        g = c.representative
        assert all(h * g == g * h for h in C.gens)


def test_centralizer_examples():
    S4 = symmetric_group(4)
    assert centralizer(S4, P("(1,2)", 4)).order == 4
    A5 = make_group("alt:5")
    assert centralizer(A5, P("(1,2,3,4,5)", 5)).order == 5
    C = make_group("cyclic:6")
    assert centralizer(C, C.gens[0]).order == 6


def test_structure_reports():
    r = structure_report(symmetric_group(4))
    assert (r.center_order, r.derived_order, r.abelian_invariants) == (1, 12, (2,))
    q = structure_report(quaternion_group())
    assert (q.center_order, q.derived_order, q.abelian_invariants) == (2, 2, (2, 2))
    a = structure_report(make_group("elem_abelian:3^2"))
    assert (a.derived_order, a.abelian_invariants) == (1, (3, 3))
    prod = 1
    for d in r.abelian_invariants:
        prod *= d
    assert prod == r.order // r.derived_order


def test_hom_examples():
    S3 = symmetric_group(3)
    f = hom_by_images(S3, S3, S3.gens)
    assert f.is_surjective()
    C4 = make_group("cyclic:4")
    with pytest.raises(NotAHomomorphism):
        hom_by_images(C4, S3, [P("(1,2,3)", 3)])


def _table_check(G, H, images):
    """Brute force: extend along words and test every product."""
    phi = {G.identity: H.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s, t in zip(G.gens, images):
            y, v = x * s, phi[x] * t
            if y in phi:
                if phi[y] != v:
                    return False
            else:
                phi[y] = v
                queue.append(y)
    return all(phi[x * y] == phi[x] * phi[y] for x in phi for y in phi)


SOURCES = ["sym:3", "cyclic:4", "elem_abelian:2^2", "dihedral:4", "quaternion:8"]
TARGETS = ["sym:3", "cyclic:4", "dihedral:4"]


@given(st.sampled_from(SOURCES), st.sampled_from(TARGETS), st.data())
@settings(max_examples=80, deadline=None)
def test_hom_by_images_matches_table_check(src, dst, data):
    G, H = make_group(src), make_group(dst)
    elems = sorted(H.elements())
    images = [data.draw(st.sampled_from(elems)) for _ in G.gens]
    expected = _table_check(G, H, images)
    try:
        f = hom_by_images(G, H, images)
        accepted = True
    except NotAHomomorphism:
        accepted = False
    assert accepted == expected
    if accepted:
        for x in G.elements():
            for y in G.gens:
                assert f(x * y) == f(x) * f(y)


def test_quotients_by_center():
    Q = quaternion_group()
    Z = Q.subgroup([c.representative for c in conjugacy_classes(Q) if c.size == 1])
    Qbar, f = quotient_by_central(Q, Z)
    assert Qbar.order == 4
    assert structure_report(Qbar).abelian_invariants == (2, 2)
    S3 = symmetric_group(3)
    same, g = quotient_by_central(S3, S3.subgroup([]))
    assert same.order == 6
    with pytest.raises(ValueError):
        quotient_by_central(S3, S3.subgroup([P("(1,2)", 3)]))


def test_saltman_quotient_by_center():
    G = make_group("saltman:2")
    r = structure_report(G)
    assert r.center_order == 32
    Z = G.subgroup(r.center)
    Q, _ = quotient_by_central(G, Z)
    assert Q.order == 16
    assert structure_report(Q).abelian_invariants == (2, 2, 2, 2)


def test_c_graph_examples():
    S3 = symmetric_group(3)
    cl = conjugacy_classes(S3)[1:]
    g = c_graph(S3, cl)
    assert len(g.vertices) == 5 and g.component_count == 2
    S4 = symmetric_group(4)
    assert c_graph(S4, conjugacy_classes(S4)[1:]).component_count == 4
    assert c_graph(S4, conjugacy_classes(S4)[2:3]).component_count == 1
    with pytest.raises(ValueError):
        c_graph(S4, conjugacy_classes(S4)[:1])


@pytest.mark.parametrize("spec", ["sym:4", "alt:5", "dihedral:4", "quaternion:8"])
def test_c_graph_components_are_classes(spec):
    # conjugation by elements of O reaches whole classes once O generates G
    G = make_group(spec)
    classes = conjugacy_classes(G)[1:]
    checked = 0
    for r in range(1, len(classes) + 1):
        for sub in itertools.combinations(classes, r):
            elems = [x for c in sub for x in c.elements]
            if G.subgroup(elems).order != G.order:
                continue
            checked += 1
            g = c_graph(G, list(sub))
            assert g.component_count == len(sub)
            for comp in g.components:
                owners = {i for v in comp for i, c in enumerate(sub) if g.vertices[v] in c}
                assert len(owners) == 1
    assert checked > 0
