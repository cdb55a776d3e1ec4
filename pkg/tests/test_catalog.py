"""Catalog generation, file round-trips, and the brute-force oracle."""

from __future__ import annotations

import json

import pytest

from taucat import (
    Arrow,
    FieldSpec,
    MonomialRelation,
    Quiver,
    build_algebra,
    bruteforce_indecomposables,
    direct_sum,
    interval_catalog,
    load_catalog,
    standard_module,
    validate_catalog,
)
from taucat.catalog import (
    Catalog,
    CatalogValidationError,
    UnsupportedQuiverShape,
    catalog_to_dict,
)

from conftest import one_vertex_algebra


def test_a3_catalog_has_the_five_intervals(a3_cat):
    assert sorted(a3_cat.labels()) == ["P1", "P2", "S1", "S2", "S3"]


def test_a3_label_priority_uses_p_over_i(a3, a3_cat):
    # The interval on {1,2} is both P1 and I2; it prints as P1.
    rep = a3_cat.representation(a3_cat.index_of("P1"))
    assert rep.dims == (1, 1, 0)


def test_full_interval_is_killed_by_the_relation(a3_cat):
    assert all(rep.dims != (1, 1, 1) for rep in a3_cat.representations())


def test_a2_catalog(a2_cat):
    assert sorted(a2_cat.labels()) == ["P2", "S1", "S2"]


def test_hereditary_a3_has_six_intervals():
    quiver = Quiver(
        ("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3"))
    )
    alg = build_algebra(quiver, [], FieldSpec(2))
    cat = interval_catalog(alg)
    assert len(cat) == 6
    assert sorted(cat.labels()) == ["I2", "P1", "P2", "S1", "S2", "S3"]


def test_mixed_orientation_line_supported():
    quiver = Quiver(
        ("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "3", "2"))
    )
    alg = build_algebra(quiver, [], FieldSpec(2))
    cat = interval_catalog(alg)
    assert len(cat) == 6  # all intervals survive, no composable relations


def test_cyclic_nakayama_supported():
    quiver = Quiver(
        ("1", "2", "3"),
        (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "3", "1")),
    )
    rels = [
        MonomialRelation(("a", "b")),
        MonomialRelation(("b", "c")),
        MonomialRelation(("c", "a")),
    ]
    alg = build_algebra(quiver, rels, FieldSpec(2))
    cat = interval_catalog(alg)
    # rad^2 = 0: three simples and three length-two uniserials.
    assert len(cat) == 6
    assert validate_catalog(cat).ok


def test_unsupported_shape_rejected():
    quiver = Quiver(
        ("1", "2", "3"),
        (Arrow("a", "1", "2"), Arrow("b", "1", "3"), Arrow("c", "1", "3")),
    )
    alg = build_algebra(quiver, [], FieldSpec(2))
    with pytest.raises(UnsupportedQuiverShape):
        interval_catalog(alg)


def test_catalog_order_is_reproducible(a3):
    first = interval_catalog(a3)
    second = interval_catalog(a3)
    assert first.labels() == second.labels()
    assert [r.dims for r in first.representations()] == [
        r.dims for r in second.representations()
    ]


def test_validate_accepts_interval_catalogs(a3_cat, a2_cat):
    assert validate_catalog(a3_cat).ok
    assert validate_catalog(a2_cat).ok


def test_validate_flags_decomposable_entry(a3, a3_cat):
    bad = direct_sum(
        a3,
        [standard_module(a3, "simple", "1"), standard_module(a3, "simple", "2")],
    )
    cat = Catalog(a3, list(a3_cat.entries) + [("bad", bad)])
    report = validate_catalog(cat)
    assert not report.ok
    assert any("idempotent" in e for e in report.errors)


def test_validate_flags_duplicates(a3, a3_cat):
    dup = standard_module(a3, "simple", "1")
    cat = Catalog(a3, list(a3_cat.entries) + [("dup", dup)])
    report = validate_catalog(cat)
    assert any("isomorphic duplicates" in e for e in report.errors)


def test_completeness_warning_for_missing_simple():
    alg = one_vertex_algebra()
    empty = Catalog(alg, [])
    report = validate_catalog(empty, check_completeness=True)
    assert report.ok  # no structural errors
    assert any("incomplete" in w for w in report.warnings)


def test_file_roundtrip_matches_interval_catalog(a3, a3_cat, tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(catalog_to_dict(a3_cat)))
    loaded = load_catalog(a3, path)
    assert loaded.labels() == a3_cat.labels()
    assert [r.dims for r in loaded.representations()] == [
        r.dims for r in a3_cat.representations()
    ]


def test_load_rejects_wrong_algebra_hash(a3, a3_cat):
    data = catalog_to_dict(a3_cat)
    data["algebra_hash"] = "0" * 16
    with pytest.raises(CatalogValidationError):
        load_catalog(a3, data)


def test_load_rejects_decomposable_entry(a3, a3_cat):
    data = catalog_to_dict(a3_cat)
    data["entries"].append(
        {"label": "bad", "dims": [1, 1, 0], "action": {"a": [[0]], "b": []}}
    )
    with pytest.raises(CatalogValidationError):
        load_catalog(a3, data)


def test_load_rejects_duplicate_entries(a3, a3_cat):
    data = catalog_to_dict(a3_cat)
    clone = dict(data["entries"][0])
    clone["label"] = "clone"
    data["entries"].append(clone)
    with pytest.raises(CatalogValidationError):
        load_catalog(a3, data)


def test_bruteforce_reproduces_a3_catalog(a3, a3_cat):
    oracle = bruteforce_indecomposables(a3, (1, 1, 1))
    assert oracle.labels() == a3_cat.labels()


def test_bruteforce_one_vertex():
    alg = one_vertex_algebra()
    oracle = bruteforce_indecomposables(alg, (1,))
    assert oracle.labels() == ("S1",)


def test_bruteforce_a2(a2, a2_cat):
    oracle = bruteforce_indecomposables(a2, (1, 1))
    assert oracle.labels() == a2_cat.labels()


def test_bruteforce_cap_guard(a3):
    from taucat.repcore import SearchCapExceeded

    with pytest.raises(SearchCapExceeded):
        bruteforce_indecomposables(a3, (3, 3, 3), cap=10)
