"""The AR translate, Ext groups, and support tau-tilting enumeration."""

from __future__ import annotations

from itertools import combinations

import pytest

from taucat import direct_sum, dualize, is_isomorphic, standard_module
from taucat.repcore import hom_dim, trace_of_family
from taucat.tautheory import (
    STTPair,
    enumerate_stt,
    ext1_dim,
    is_support_tau_tilting,
    is_tau_rigid_sum,
    supp_of,
    tau,
    tau_minus,
    tau_minus_of,
    tau_of,
)

from conftest import hereditary_a2_algebra


def S(alg, v):
    return standard_module(alg, "simple", v)


def P(alg, v):
    return standard_module(alg, "projective", v)


# ----------------------------------------------------------------------
# Ext^1
# ----------------------------------------------------------------------

def test_ext_s1_s2_is_one(a3):
    # From 0 -> S2 -> P1 -> S1 -> 0: Hom(P1,S2)=0 and Hom(S2,S2)=k.
    assert ext1_dim(S(a3, "1"), S(a3, "2")) == 1


def test_ext_s1_s3_vanishes(a3):
    # Hom(S2, S3) = 0 kills the cokernel; the obstruction is one degree up.
    assert ext1_dim(S(a3, "1"), S(a3, "3")) == 0


def test_ext_s2_s3_is_one(a3):
    assert ext1_dim(S(a3, "2"), S(a3, "3")) == 1


def test_ext_from_projectives_vanishes(a3, a3_cat):
    for v in ("1", "2", "3"):
        for rep in a3_cat.representations():
            assert ext1_dim(P(a3, v), rep) == 0


def test_ext_of_zero_source(a3):
    from taucat import zero_module

    assert ext1_dim(zero_module(a3), S(a3, "1")) == 0


# ----------------------------------------------------------------------
# tau and tau^-
# ----------------------------------------------------------------------

def test_tau_s1_is_s2(a3):
    assert is_isomorphic(tau(S(a3, "1")), S(a3, "2"))


def test_tau_s2_is_s3(a3):
    assert is_isomorphic(tau(S(a3, "2")), S(a3, "3"))


def test_tau_of_projectives_vanishes(a3):
    for v in ("1", "2", "3"):
        assert tau(P(a3, v)).is_zero


def test_tau_minus_s3_is_s2(a3):
    assert is_isomorphic(tau_minus(S(a3, "3")), S(a3, "2"))


def test_tau_minus_s2_is_s1(a3):
    assert is_isomorphic(tau_minus(S(a3, "2")), S(a3, "1"))


def test_tau_minus_of_injectives_vanishes(a3):
    for v in ("1", "2", "3"):
        inj = standard_module(a3, "injective", v)
        assert tau_minus(inj).is_zero


def test_tau_roundtrip_on_s2(a3):
    # S2 is neither projective nor injective, so the translate round-trips.
    assert is_isomorphic(tau_minus(tau(S(a3, "2"))), S(a3, "2"))


def test_tau_a2(a2):
    assert is_isomorphic(tau(S(a2, "2")), S(a2, "1"))
    assert tau(P(a2, "2")).is_zero
    assert is_isomorphic(tau_minus(S(a2, "1")), S(a2, "2"))


def stable_hom_dim_mod_injectives(y, z):
    """dim of Hom(y, z) modulo maps factoring through injectives.

    Maps factor through an injective iff they factor through the
    injective envelope, which is the dual of a projective cover over
    the opposite algebra.
    """
    import numpy as np

    from taucat.repcore import dualize_morphism, hom_basis, projective_cover

    f = y.algebra.field
    basis = hom_basis(y, z)
    if not basis:
        return 0
    if y.is_zero:
        return 0
    envelope_incl = dualize_morphism(projective_cover(dualize(y)))
    factoring = [
        np.concatenate([c.ravel() for c in envelope_incl.then(h).components])
        for h in hom_basis(envelope_incl.target, z)
    ]
    rank = f.rank(np.stack(factoring, axis=1)) if factoring else 0
    return len(basis) - rank


def test_tau_satisfies_ar_duality(a3, a3_cat):
    # dim Ext^1(X, Y) equals the injectively stable dim Hom(Y, tau X),
    # an independent route through duals and envelopes.
    for i, x in enumerate(a3_cat.representations()):
        tx = tau_of(a3_cat, i)
        for y in a3_cat.representations():
            if tx.is_zero:
                assert ext1_dim(x, y) == 0
            else:
                assert ext1_dim(x, y) == stable_hom_dim_mod_injectives(y, tx)


# ----------------------------------------------------------------------
# rigidity and support tau-tilting recognition
# ----------------------------------------------------------------------

def idx(cat, *labels):
    return tuple(sorted(cat.index_of(x) for x in labels))


def test_s1_s3_p1_is_tau_rigid(a3_cat):
    assert is_tau_rigid_sum(a3_cat, idx(a3_cat, "S1", "S3", "P1"), "plus")


def test_s1_s2_is_not_tau_rigid(a3_cat):
    assert not is_tau_rigid_sum(a3_cat, idx(a3_cat, "S1", "S2"), "plus")


def test_empty_set_is_rigid(a3_cat):
    assert is_tau_rigid_sum(a3_cat, (), "plus")
    assert is_tau_rigid_sum(a3_cat, (), "minus")


def test_stt_recognition_full_support(a3_cat):
    pair = is_support_tau_tilting(a3_cat, idx(a3_cat, "S1", "S3", "P1"), "plus")
    assert pair is not None
    assert pair.proj_complement == ()
    assert pair.support == ("1", "2", "3")


def test_stt_recognition_zero_module(a3_cat):
    pair = is_support_tau_tilting(a3_cat, (), "plus")
    assert pair is not None
    assert pair.support == ()
    assert pair.proj_complement == ("1", "2", "3")


def test_stt_recognition_partial_support(a3_cat):
    pair = is_support_tau_tilting(a3_cat, idx(a3_cat, "S1", "S3"), "plus")
    assert pair is not None
    assert pair.support == ("1", "3")
    assert pair.proj_complement == ("2",)


def test_tau_rigid_but_not_stt(a3_cat):
    # S1 alone is rigid with support {1}; S1 + P1 has support {1,2} and
    # both are supported inside it, so |M| = 2 = |supp|: it qualifies.
    # A rigid sum failing the count: S3 + P2 has support {2,3} and two
    # summands, qualifies too; use P1 + S1 + S3 minus one vertex demo
    # with S1,P1 subset of support size 2: all fine. The failing case is
    # a single summand with two support vertices: P1 alone.
    pair = is_support_tau_tilting(a3_cat, idx(a3_cat, "P1"), "plus")
    assert pair is None


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------

def expected_a3_plus():
    return {
        (): [()],
        ("1",): [("S1",)],
        ("2",): [("S2",)],
        ("3",): [("S3",)],
        ("1", "3"): [("S1", "S3")],
        ("1", "2"): [("S1", "P1"), ("S2", "P1")],
        ("2", "3"): [("S3", "P2"), ("S2", "P2")],
        ("1", "2", "3"): [
            ("S1", "S3", "P1"),
            ("S2", "P1", "P2"),
            ("S3", "P1", "P2"),
        ],
    }


def expected_a3_minus():
    table = expected_a3_plus()
    table[("1", "2", "3")] = [
        ("S1", "S3", "P2"),
        ("S2", "P1", "P2"),
        ("S1", "P1", "P2"),
    ]
    return table


def as_grouped(cat, pairs):
    grouped: dict = {}
    for pr in pairs:
        labels = tuple(sorted(cat.label(i) for i in pr.module))
        grouped.setdefault(pr.support, set()).add(labels)
    return grouped


def test_enumerate_stt_plus_matches_table(a3_cat):
    pairs = enumerate_stt(a3_cat, "plus")
    assert len(pairs) == 12
    grouped = as_grouped(a3_cat, pairs)
    expected = {
        supp: {tuple(sorted(m)) for m in mods}
        for supp, mods in expected_a3_plus().items()
    }
    assert grouped == expected


def test_enumerate_stt_minus_matches_table(a3_cat):
    pairs = enumerate_stt(a3_cat, "minus")
    assert len(pairs) == 12
    grouped = as_grouped(a3_cat, pairs)
    expected = {
        supp: {tuple(sorted(m)) for m in mods}
        for supp, mods in expected_a3_minus().items()
    }
    assert grouped == expected


def test_enumerate_stt_a2(a2_cat):
    assert len(enumerate_stt(a2_cat, "plus")) == 5
    assert len(enumerate_stt(a2_cat, "minus")) == 5


def test_stt_complement_receives_no_homs(a3, a3_cat):
    for pr in enumerate_stt(a3_cat, "plus"):
        total = len(pr.module) + len(pr.proj_complement)
        assert total == 3
        for v in pr.proj_complement:
            pv = P(a3, v)
            for i in pr.module:
                assert hom_dim(pv, a3_cat.representation(i)) == 0


def test_minus_side_is_dual_of_plus_over_opposite(a3, a3_cat):
    from taucat import interval_catalog

    op_cat = interval_catalog(a3.opposite)
    plus_over_op = enumerate_stt(op_cat, "plus")
    minus_here = enumerate_stt(a3_cat, "minus")
    assert len(plus_over_op) == len(minus_here)
    # Dualizing each minus-side module lands on a plus-side module over
    # the opposite algebra.
    op_sets = set()
    for pr in plus_over_op:
        key = frozenset(
            tuple(op_cat.representation(i).dims) for i in pr.module
        )
        op_sets.add((pr.support, key))
    for pr in minus_here:
        duals = [
            dualize(a3_cat.representation(i)).dims for i in pr.module
        ]
        assert (pr.support, frozenset(tuple(d) for d in duals)) in op_sets


def test_supp_of(a3_cat):
    assert supp_of(a3_cat, idx(a3_cat, "S2", "P1")) == ("1", "2")
    assert supp_of(a3_cat, ()) == ()
    assert supp_of(a3_cat, idx(a3_cat, "S3", "P1", "P2")) == ("1", "2", "3")


def test_rigidity_matches_ext_vanishing_on_fac(a3, a3_cat):
    # Auslander-Smalo cross-check on every subset: rigidity of the sum
    # agrees with Ext^1(sum, X) = 0 for every X generated by the sum.
    reps = a3_cat.representations()
    for size in range(len(reps) + 1):
        for subset in combinations(range(len(reps)), size):
            family = [reps[i] for i in subset]
            rigid = is_tau_rigid_sum(a3_cat, subset, "plus")
            total_sum = direct_sum(a3, family)
            ext_ok = True
            for x in reps:
                tr, _ = trace_of_family(family, x)
                if tr.dims != x.dims:
                    continue  # x not generated by the family
                if ext1_dim(total_sum, x) != 0:
                    ext_ok = False
                    break
            assert rigid == ext_ok, subset
