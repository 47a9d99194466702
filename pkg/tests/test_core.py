import json

import pytest

from ambix import cli
from ambix.catalog import make_group
from ambix.core import (
    AmbiguityRow,
    EquipmentError,
    NoEngine,
    ambiguity_index,
    bogomolov,
    check_monotone,
    check_rows,
    check_splitting,
    class_labels,
    engines_for,
    equipped,
    generating_subsets,
    pairing_invariance,
    scan_equipments,
    schur_multiplier,
    select_classes,
    verify_suite,
)
from ambix.perm import conjugacy_classes


def test_class_labels_sym4():
    labels = class_labels(make_group("sym:4"))
    assert labels[0] == "cycles:1"
    assert sorted(labels[1:]) == ["cycles:2", "cycles:2+2", "cycles:3", "cycles:4"]


def test_class_labels_duplicate_types():
    labels = class_labels(make_group("alt:5"))
    assert "cycles:5#1" in labels and "cycles:5#2" in labels


def test_select_classes_variants():
    G = make_group("alt:5")
    assert len(select_classes(G, "cycles:5")) == 2
    assert len(select_classes(G, "cycles:5#2")) == 1
    assert select_classes(G, "rep:(1,2,3)")[0].size == 20
    assert len(select_classes(G, "all")) == 4
    with pytest.raises(EquipmentError):
        select_classes(G, "cycles:2")
    with pytest.raises(EquipmentError):
        select_classes(G, "class:99")
    with pytest.raises(EquipmentError):
        select_classes(make_group("quaternion:8"), "cycles:2")


def test_equipped_valid_and_invalid():
    G = make_group("sym:4")
    eg = equipped(G, ["cycles:2"], "sym:4")
    assert eg.labels == ["cycles:2"] and eg.generated_order == 24
    with pytest.raises(EquipmentError, match="order 12"):
        equipped(G, ["cycles:3"])
    with pytest.raises(EquipmentError, match="identity"):
        equipped(G, ["class:0", "cycles:2"])
    with pytest.raises(EquipmentError):
        equipped(G, [])


def test_equipped_sorts_classes():
    G = make_group("sym:4")
    a = equipped(G, ["cycles:4", "cycles:3"]).labels
    assert a == equipped(G, ["cycles:3", "cycles:4"]).labels
    labels = class_labels(G)
    assert a == sorted(a, key=labels.index)


@pytest.mark.parametrize(
    "spec, sel, a, k",
    [("sym:4", ["cycles:3", "cycles:4"], 2, 1), ("sym:4", ["cycles:2"], 1, 2), ("alt:5", ["cycles:3"], 2, 1),
     ("alt:5", ["cycles:2+2", "cycles:3"], 1, 2), ("alt:6", ["cycles:5"], 6, 1), ("alt:6", ["cycles:3"], 2, 3),
     ("alt:6", ["cycles:2+2"], 3, 2), ("elem_abelian:2^2", ["all"], 1, 2), ("dihedral:4", ["all"], 1, 2)],
)
def test_ambiguity_index_examples(spec, sel, a, k):
    G = make_group(spec)
    got = ambiguity_index(equipped(G, sel, spec))
    assert got[:2] == (a, k)


def test_ambiguity_index_engines_named():
    G = make_group("sym:4")
    _, _, names = ambiguity_index(equipped(G, ["cycles:2"], "sym:4"))
    assert names == "cocycle+cover"
    _, _, names = ambiguity_index(equipped(G, ["cycles:2"]))
    assert names == "cocycle"


def test_schur_multiplier_values():
    assert schur_multiplier(make_group("sym:5"), "sym:5") == (2,)
    assert schur_multiplier(make_group("elem_abelian:2^3")) == (2, 2, 2)
    assert schur_multiplier(make_group("alt:6"), "alt:6") == (6,)


@pytest.mark.parametrize("spec", ["alt:5", "cyclic:6", "elem_abelian:2^3", "quaternion:8", "dihedral:4", "sym:4"])
def test_bogomolov_trivial(spec):
    assert bogomolov(make_group(spec), spec).value == 1


def test_bogomolov_saltman_is_lower_bound():
    b = bogomolov(make_group("saltman:2"), "saltman:2")
    assert b.value == 2 and b.lower_bound


def test_no_engine_raised():
    with pytest.raises(NoEngine):
        engines_for(make_group("sym:5"), None, cocycle_cap=50)


def test_generating_subsets_sym4():
    subs = generating_subsets(make_group("sym:4"))
    # every subset except those inside the alternating group
    assert len(subs) == 12


@pytest.mark.parametrize("spec", ["sym:4", "alt:5", "elem_abelian:2^2", "quaternion:8"])
def test_scans_clean(spec):
    rep = scan_equipments(make_group(spec), spec)
    assert not rep.failures
    assert rep.b0.value == 1
    assert all(r.a * r.k == rep.h2 for r in rep.rows)


def test_scan_v4_all_rows_one():
    rep = scan_equipments(make_group("elem_abelian:2^2"))
    assert {r.a for r in rep.rows} == {1}


def test_verify_core_passes():
    suite = verify_suite("core")
    assert suite.passed, [(c.subject, c.name, c.detail) for c in suite.failures()]
    names = {c.name for c in suite.checks}
    assert {"a*k=h2", "b0<=a<=h2", "monotone", "engine-agreement", "split-factor"} <= names


def test_verify_unknown_suite():
    with pytest.raises(ValueError):
        verify_suite("nope")


def test_checks_catch_corrupted_rows():
    rep = scan_equipments(make_group("sym:4"), "sym:4")
    rows = list(rep.rows)
    assert all(c.passed for c in check_rows(rows, rep.h2, 1))
    broken = [AmbiguityRow(rows[0].classes, rows[0].a, rows[0].k + 1, "x")] + rows[1:]
    assert not check_rows(broken, rep.h2, 1)[0].passed


def test_monotone_catches_violation():
    rows = [AmbiguityRow(("x",), 1, 2, "t"), AmbiguityRow(("x", "y"), 2, 1, "t")]
    assert not check_monotone(rows).passed
    assert check_monotone(rows[::-1][:1]).passed


def test_splitting_check_catches_bad_a():
    rep = scan_equipments(make_group("alt:6"), "alt:6")
    assert all(c.passed for c in check_splitting(rep))
    row = next(r for r in rep.rows if r.classes == ("cycles:2+2",))
    rep.rows = [AmbiguityRow(row.classes, 1, 6, "x")]
    assert not all(c.passed for c in check_splitting(rep))


def test_pairing_invariance_fuzz():
    check = pairing_invariance(make_group("dihedral:4"), trials=20, seed=3)
    assert check.passed, check.detail


def test_report_deterministic_without_timings():
    a = scan_equipments(make_group("sym:4"), "sym:4").as_dict(timings=False)
    b = scan_equipments(make_group("sym:4"), "sym:4").as_dict(timings=False)
    assert a == b
    assert set(a) == {"spec", "order", "h2", "b0", "rows", "splitting", "timings", "failures"}


# CLI -----------------------------------------------------------------------

def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_h2_json(capsys):
    code, out, _ = _run(capsys, "h2", "--group", "sym:4", "--format", "json")
    assert code == 0
    assert json.loads(out)["h2"]["divisors"] == [2]


def test_cli_index(capsys):
    code, out, _ = _run(capsys, "index", "--group", "sym:4", "--equipment", "cycles:3,cycles:4",
                        "--format", "json", "--no-timings")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert (row["a"], row["k"], row["expected"]) == (2, 1, 2)


def test_cli_rep_selector(capsys):
    code, out, _ = _run(capsys, "index", "--group", "sym:4", "--equipment", "rep:(1,2)", "--format", "json")
    assert code == 0 and json.loads(out)["rows"][0]["a"] == 1


def test_cli_split(capsys):
    code, out, _ = _run(capsys, "split", "--group", "alt:5", "--cover", "2A5", "--format", "json")
    assert code == 0
    s = {r["class"]: r["s"] for r in json.loads(out)["splitting"]}
    assert s == {"cycles:2+2": 1, "cycles:3": 2, "cycles:5#1": 2, "cycles:5#2": 2}


def test_cli_b0_and_scan(capsys):
    code, out, _ = _run(capsys, "b0", "--group", "quaternion:8", "--format", "json")
    assert code == 0 and json.loads(out)["b0"] == {"value": 1, "lower_bound": False}
    code, out, _ = _run(capsys, "scan", "--group", "sym:4", "--format", "text")
    assert code == 0 and "rows:" in out


def test_cli_hurwitz(capsys):
    code, out, _ = _run(capsys, "hurwitz", "--group", "sym:3", "--equipment", "cycles:2", "--tau", "4",
                        "--grow", "1", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["experimental"] and d["stabilized"] and d["verdict"] == "agrees"


@pytest.mark.parametrize(
    "argv",
    [["index", "--group", "sym:4", "--equipment", "cycles:3"],
     ["index", "--group", "sym:4", "--equipment", "class:0"],
     ["h2", "--group", "bogus:1"],
     ["split", "--group", "sym:4", "--cover", "nope"],
     ["split", "--group", "sym:4", "--cover", "2A5"],
     ["hurwitz", "--group", "sym:3", "--equipment", "cycles:2", "--tau", "4,4"],
     ["h2", "--group", "sym:6", "--cocycle-cap", "10"],
     ["frobnicate"],
     []],
)
def test_cli_usage_errors(capsys, argv):
    code, _, _ = _run(capsys, *argv)
    assert code == 2


def test_cli_hurwitz_budget_is_partial(capsys):
    code, out, _ = _run(capsys, "hurwitz", "--group", "sym:4", "--equipment", "cycles:2", "--tau", "40",
                        "--budget", "100", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["partial"] and d["verdict"] == "inconclusive"


def test_cli_verify(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "abelian", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]
