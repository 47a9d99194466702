import json

import pytest
from hypothesis import given, settings, strategies as st

from ambix.catalog import COVER_NAMES, make_group
from ambix.fpgroup import (
    CosetLimitExceeded,
    PresentationSyntaxError,
    RecipeRejected,
    available_recipes,
    evaluate_word,
    free_reduce,
    load_recipe,
    parse_presentation,
    parse_word,
    perm_rep,
    todd_coxeter,
    validate_cover_recipe,
)
from ambix.perm import hom_by_images


def test_parse_examples():
    P = parse_presentation("<a | a^5>")
    assert P.generators == ("a",)
    assert len(P.relators) == 1 and len(P.relators[0]) == 5
    S3 = parse_presentation("<t1,t2 | t1^2, t2^2, (t1*t2)^3>")
    assert S3.generators == ("t1", "t2") and len(S3.relators) == 3
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("<a | b^2>")


def test_parse_errors_report_position():
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_presentation("<a | a^2 *>")
    assert exc.value.position >= 0


def test_commutator_and_relation_syntax():
    P = parse_presentation("<a,b | [a,b], a^2 = 1, b^3 = a^2>")
    assert P.relators[0] == (("a", -1), ("b", -1), ("a", 1), ("b", 1))
    assert todd_coxeter(P).index == 6
    Q = parse_presentation("<a,b | a*b = b*a, a^2, b^3>")
    assert todd_coxeter(Q).index == 6


def test_printer_roundtrip():
    P = parse_presentation("<z,a,b | z^2, [z,a], a^2*z^-1, (a*b)^5>")
    Q = parse_presentation(str(P))
    assert Q.generators == P.generators
    assert [free_reduce(r) for r in Q.relators] == [free_reduce(r) for r in P.relators]


letters = st.lists(st.tuples(st.sampled_from("ab"), st.sampled_from([1, -1])), max_size=12)


@given(letters)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(not (x[0] == y[0] and x[1] == -y[1]) for x, y in zip(r, r[1:]))


@pytest.mark.parametrize(
    "text, index",
    [("<a | a^5>", 5), ("<t1,t2 | t1^2, t2^2, (t1*t2)^3>", 6), ("<a,b | a^2, b^3, (a*b)^5>", 60)],
)
def test_todd_coxeter_indices(text, index):
    T = todd_coxeter(parse_presentation(text))
    assert T.index == index
    assert T.is_closed()
    G, _ = perm_rep(T)
    assert G.order == index


def test_perm_rep_images():
    G, gens = perm_rep(todd_coxeter(parse_presentation("<a | a^5>")))
    assert gens["a"].cycle_type() == (5,)
    G, gens = perm_rep(todd_coxeter(parse_presentation("<t1,t2 | t1^2, t2^2, (t1*t2)^3>")))
    assert G.order == 6
    assert all(g.order() == 2 for g in gens.values())


def test_235_maps_onto_a5():
    G, gens = perm_rep(todd_coxeter(parse_presentation("<a,b | a^2, b^3, (a*b)^5>")))
    A5 = make_group("alt:5")
    from ambix.perm import Permutation

    f = hom_by_images(G, A5, [Permutation.from_cycles("(1,2)(3,4)", 5), Permutation.from_cycles("(1,3,5)", 5)])
    assert f.is_surjective()


def test_relators_trace_to_identity():
    P = parse_presentation("<a,b | a^2, b^3, (a*b)^5>")
    T = todd_coxeter(P)
    _, gens = perm_rep(T)
    for r in P.relators:
        assert evaluate_word(r, gens, T.index).is_identity()
        assert all(T.trace(c, r) == c for c in range(T.index))


def test_subgroup_enumeration():
    P = parse_presentation("<a,b | a^2, b^3, (a*b)^5>")
    T = todd_coxeter(P, [parse_word("b", P.generators)])
    assert T.index == 20


def test_coset_limit():
    with pytest.raises(CosetLimitExceeded):
        todd_coxeter(parse_presentation("<a,b | a^2, b^3, (a*b)^5>"), max_cosets=10)


def test_determinism():
    P = parse_presentation("<a,b | a^2, b^3, (a*b)^4>")
    assert todd_coxeter(P).rows == todd_coxeter(P).rows


@pytest.mark.parametrize("spec, text", [
    ("sym:4", "<a,b | a^2, b^3, (a*b)^4>"),
    ("quaternion:8", "<i,j | i^4, i^2*j^-2, j^-1*i*j*i>"),
    ("dihedral:5", "<r,s | r^5, s^2, (s*r)^2>"),
])
def test_presentations_match_catalog_orders(spec, text):
    assert todd_coxeter(parse_presentation(text)).index == make_group(spec).order


def test_shipped_recipes_present():
    assert set(COVER_NAMES) <= set(available_recipes())


@pytest.mark.parametrize("name, order", [("2S4minus", 48), ("2S4plus", 48), ("2A5", 120), ("Q8V4", 8)])
def test_recipe_validation(name, order):
    c = validate_cover_recipe(load_recipe(name))
    assert c.cover.order == order
    assert c.kernel.order == 2
    assert c.is_stem


def test_recipe_wrong_order_rejected():
    recipe = load_recipe("2S4minus")
    recipe["expected_order"] = 24
    with pytest.raises(RecipeRejected) as exc:
        validate_cover_recipe(recipe)
    assert exc.value.check == "order"


def test_recipe_bad_central_rejected():
    recipe = load_recipe("2S4minus")
    recipe["central"] = [{"word": "t1", "order": 2}]
    with pytest.raises(RecipeRejected) as exc:
        validate_cover_recipe(recipe)
    assert exc.value.check == "central"


def test_recipe_bad_quotient_rejected():
    recipe = load_recipe("2S4minus")
    recipe["quotient_images"] = ["()", "(1,2)", "(1,2)", "(3,4)"]
    with pytest.raises(RecipeRejected) as exc:
        validate_cover_recipe(recipe)
    assert exc.value.check == "quotient"


def test_recipe_files_are_json(tmp_path):
    recipe = load_recipe("2A5")
    path = tmp_path / "copy.json"
    path.write_text(json.dumps(recipe))
    assert load_recipe(str(path))["expected_order"] == 120
