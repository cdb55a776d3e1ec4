"""Path bases, standard modules, and the opposite construction."""

from __future__ import annotations

import pytest

from taucat import (
    Arrow,
    FieldSpec,
    MonomialRelation,
    Quiver,
    build_algebra,
    opposite_algebra,
    standard_module,
)
from taucat.algebra import InfiniteDimensionError, QuiverError

from conftest import hereditary_a2_algebra, nakayama_a3_algebra, one_vertex_algebra


def test_quiver_rejects_duplicate_vertices():
    with pytest.raises(QuiverError):
        Quiver(("1", "1"), ())


def test_quiver_rejects_undeclared_endpoints():
    with pytest.raises(QuiverError):
        Quiver(("1",), (Arrow("a", "1", "2"),))


def test_relation_needs_composable_arrows():
    quiver = Quiver(
        ("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3"))
    )
    with pytest.raises(QuiverError):
        build_algebra(quiver, [MonomialRelation(("b", "a"))], FieldSpec(2))


def test_relation_needs_length_two():
    with pytest.raises(QuiverError):
        MonomialRelation(("a",))


def test_nakayama_a3_dimension_and_basis():
    alg = nakayama_a3_algebra()
    # Hand enumeration: e1, e2, e3, a, b survive; ab dies by the relation.
    assert alg.dimension == 5
    assert [p.arrows for p in alg.path_basis[("1", "2")]] == [("a",)]
    assert alg.path_basis[("1", "3")] == []
    assert len(alg.path_basis[("1", "1")]) == 1


def test_hereditary_a2_dimension():
    alg = hereditary_a2_algebra()
    assert alg.dimension == 3  # e1, e2, a


def test_one_vertex_dimension():
    assert one_vertex_algebra().dimension == 1


def test_without_relation_a3_has_dimension_six():
    quiver = Quiver(
        ("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3"))
    )
    assert build_algebra(quiver, [], FieldSpec(2)).dimension == 6


def test_cycle_without_relations_is_infinite_dimensional():
    quiver = Quiver(
        ("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "2", "1"))
    )
    with pytest.raises(InfiniteDimensionError):
        build_algebra(quiver, [], FieldSpec(2), length_cap=16)


def test_projective_dimension_vectors(a3):
    assert standard_module(a3, "projective", "1").dims == (1, 1, 0)
    assert standard_module(a3, "projective", "2").dims == (0, 1, 1)
    # Sink vertex: the projective is the simple.
    assert standard_module(a3, "projective", "3").dims == (0, 0, 1)


def test_injective_dimension_vectors(a3):
    assert standard_module(a3, "injective", "1").dims == (1, 0, 0)
    assert standard_module(a3, "injective", "2").dims == (1, 1, 0)
    assert standard_module(a3, "injective", "3").dims == (0, 1, 1)


def test_simple_modules(a3):
    for k, v in enumerate(("1", "2", "3")):
        s = standard_module(a3, "simple", v)
        assert s.total_dim == 1 and s.dims[k] == 1


def test_unknown_vertex_rejected(a3):
    with pytest.raises(QuiverError):
        standard_module(a3, "simple", "9")


def test_relations_act_by_zero_on_standard_modules(a3):
    for kind in ("projective", "injective", "simple"):
        for v in ("1", "2", "3"):
            m = standard_module(a3, kind, v)
            for rel in a3.relations:
                assert not m.path_matrix(rel.path).any()


def test_algebra_dimension_equals_sum_of_projectives(a3):
    total = sum(
        standard_module(a3, "projective", v).total_dim for v in ("1", "2", "3")
    )
    assert total == a3.dimension
    total_inj = sum(
        standard_module(a3, "injective", v).total_dim for v in ("1", "2", "3")
    )
    assert total_inj == a3.dimension


def test_opposite_reverses_and_preserves_dimension(a3):
    op = opposite_algebra(a3)
    assert op.dimension == a3.dimension == 5
    arr = {a.name: (a.source, a.target) for a in op.quiver.arrows}
    assert arr == {"a": ("2", "1"), "b": ("3", "2")}
    assert [tuple(r.path) for r in op.relations] == [("b", "a")]


def test_opposite_is_an_involution(a3):
    back = opposite_algebra(opposite_algebra(a3))
    assert back.dimension == a3.dimension
    assert {(a.name, a.source, a.target) for a in back.quiver.arrows} == {
        (a.name, a.source, a.target) for a in a3.quiver.arrows
    }
    assert [r.path for r in back.relations] == [r.path for r in a3.relations]


def test_opposite_property_caches_roundtrip(a3):
    assert a3.opposite.opposite is a3


def test_one_vertex_opposite_is_itself():
    alg = one_vertex_algebra()
    op = opposite_algebra(alg)
    assert op.dimension == 1 and op.quiver.vertices == ("1",)


def test_fingerprint_depends_on_presentation(a3):
    other = nakayama_a3_algebra(p=3)
    assert a3.fingerprint() != other.fingerprint()
    assert a3.fingerprint() == nakayama_a3_algebra().fingerprint()
