from __future__ import annotations

import pytest

from taucat import (
    Arrow,
    FieldSpec,
    MonomialRelation,
    Quiver,
    build_algebra,
    interval_catalog,
)


def nakayama_a3_algebra(p: int = 2):
    """1 -> 2 -> 3 with the length-two path through vertex 2 set to zero."""
    quiver = Quiver(
        ("1", "2", "3"),
        (Arrow("a", "1", "2"), Arrow("b", "2", "3")),
    )
    return build_algebra(quiver, [MonomialRelation(("a", "b"))], FieldSpec(p))


def hereditary_a2_algebra(p: int = 2):
    """The hereditary algebra of the quiver 2 -> 1."""
    quiver = Quiver(("1", "2"), (Arrow("a", "2", "1"),))
    return build_algebra(quiver, [], FieldSpec(p))


def one_vertex_algebra(p: int = 2):
    return build_algebra(Quiver(("1",), ()), [], FieldSpec(p))


@pytest.fixture(scope="session")
def a3():
    return nakayama_a3_algebra()


@pytest.fixture(scope="session")
def a3_cat(a3):
    return interval_catalog(a3)


@pytest.fixture(scope="session")
def a2():
    return hereditary_a2_algebra()


@pytest.fixture(scope="session")
def a2_cat(a2):
    return interval_catalog(a2)
