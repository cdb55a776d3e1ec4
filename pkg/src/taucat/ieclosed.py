"""IE-closed subcategories and their twin and Ext-pair classification.

Every intersection of a torsion class with a torsion-free class is
IE-closed, and every IE-closed subcategory arises this way.  Each one
carries a unique canonical twin pair (the support tau-tilting modules
generating its smallest closures) and a canonical Ext-pair (the
Ext-progenerator and Ext-injective cogenerator, extracted from the
canonical short exact sequences).  This module enumerates the
subcategories, canonicalizes arbitrary twin pairs, classifies the
torsion / torsion-free / cokernel-closed / kernel-closed cases, and
verifies that all three indexings biject.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .repcore import (
    SearchCapExceeded,
    decompose,
    direct_sum,
    hom_basis,
    reject_of_family,
    trace_of_family,
    _quotient_by_columns,
    _subrep_from_columns,
)
from .tautheory import STTPair, enumerate_stt, ext1_of, is_support_tau_tilting, supp_of
from .torsiontheory import (
    CanonicalSES,
    ConsistencyError,
    Subcat,
    canonical_ses,
    closure_subcat,
    enumerate_classes,
    ext_extremes,
    smallest_closure,
)


@dataclass(frozen=True)
class TwinPair:
    """A basic support tau-tilting module paired with a tau^- one."""

    plus: STTPair
    minus: STTPair


@dataclass(frozen=True)
class ExtPair:
    """Basic Ext-progenerator / Ext-injective cogenerator index sets."""

    pro: tuple[int, ...]
    inj: tuple[int, ...]


@dataclass(frozen=True)
class IEFlags:
    is_torsion: bool
    is_torsionfree: bool
    is_ice: bool
    is_ike: bool


@dataclass(frozen=True)
class IERecord:
    subcat: Subcat
    twin: TwinPair
    extpair: ExtPair
    flags: IEFlags | None


def twin_from_indices(cat, m_indices, n_indices) -> TwinPair:
    """Build a twin pair, validating both support tau-tilting sides."""
    plus = is_support_tau_tilting(cat, m_indices, "plus")
    if plus is None:
        raise ValueError(
            f"{sorted(m_indices)} is not a support tau-tilting module"
        )
    minus = is_support_tau_tilting(cat, n_indices, "minus")
    if minus is None:
        raise ValueError(
            f"{sorted(n_indices)} is not a support tau^- -tilting module"
        )
    return TwinPair(plus, minus)


# ----------------------------------------------------------------------
# the two bijections
# ----------------------------------------------------------------------

def twin_intersection(cat, twin: TwinPair) -> Subcat:
    """The IE-closed subcategory Fac(M) meet Sub(N) of a twin pair."""
    fac = closure_subcat(cat, twin.plus.module, "fac")
    sub = closure_subcat(cat, twin.minus.module, "sub")
    return Subcat(cat, tuple(set(fac.indices) & set(sub.indices)))


def canonical_twin(cat, indices) -> TwinPair:
    """The twin pair generating the smallest closures of a subcategory."""
    plus = smallest_closure(cat, indices, "torsion").generator
    minus = smallest_closure(cat, indices, "torsionfree").generator
    return TwinPair(plus, minus)


def _ses_pair(cat, twin: TwinPair) -> tuple[CanonicalSES, CanonicalSES]:
    m, n = twin.plus.module, twin.minus.module
    return (
        canonical_ses(cat, m, n, "M"),
        canonical_ses(cat, m, n, "N"),
    )


def is_canonical(cat, twin: TwinPair) -> bool:
    """Is the twin pair the canonical one for its subcategory?

    Checks the defining closure conditions and, independently, the
    criterion through the canonical sequences (Fac M must be the
    smallest torsion class of the free part, dually for Sub N); the
    two must agree.
    """
    fac = closure_subcat(cat, twin.plus.module, "fac")
    sub = closure_subcat(cat, twin.minus.module, "sub")
    inter = tuple(sorted(set(fac.indices) & set(sub.indices)))
    by_def = (
        smallest_closure(cat, inter, "torsion").subcat.indices == fac.indices
        and smallest_closure(cat, inter, "torsionfree").subcat.indices
        == sub.indices
    )
    ses_m, ses_n = _ses_pair(cat, twin)
    p_m = tuple(sorted(decompose(ses_m.free_part, cat)))
    i_n = tuple(sorted(decompose(ses_n.torsion_part, cat)))
    by_seq = (
        smallest_closure(cat, p_m, "torsion").subcat.indices == fac.indices
        and smallest_closure(cat, i_n, "torsionfree").subcat.indices
        == sub.indices
    )
    if by_def != by_seq:
        raise ConsistencyError(
            "closure-definition and sequence criteria disagree on "
            f"({twin.plus.module}, {twin.minus.module})"
        )
    return by_def


def canonicalize(cat, twin: TwinPair) -> TwinPair:
    """The canonical twin pair with the same IE-closed subcategory.

    The free part of the plus sequence generates the right torsion
    class, the torsion part of the minus sequence cogenerates the
    right torsion-free class; their support tau-tilting generators
    form the canonical pair.
    """
    ses_m, ses_n = _ses_pair(cat, twin)
    p_m = tuple(sorted(decompose(ses_m.free_part, cat)))
    i_n = tuple(sorted(decompose(ses_n.torsion_part, cat)))
    plus = smallest_closure(cat, p_m, "torsion").generator
    minus = smallest_closure(cat, i_n, "torsionfree").generator
    return TwinPair(plus, minus)


def ext_pair_of_twin(cat, twin: TwinPair) -> ExtPair:
    """The canonical Ext-pair attached to a twin pair.

    Non-canonical input is canonicalized first, so the result is
    well-defined.  The sequence route is cross-validated against the
    Ext-vanishing route inside the subcategory, and both members are
    checked to be rigid.
    """
    if not is_canonical(cat, twin):
        twin = canonicalize(cat, twin)
    ses_m, ses_n = _ses_pair(cat, twin)
    pro = tuple(sorted(decompose(ses_m.free_part, cat)))
    inj = tuple(sorted(decompose(ses_n.torsion_part, cat)))
    sub = twin_intersection(cat, twin)
    if pro != ext_extremes(cat, sub.indices, "projective"):
        raise ConsistencyError(
            f"Ext-progenerator mismatch on {sub.labels()}"
        )
    if inj != ext_extremes(cat, sub.indices, "injective"):
        raise ConsistencyError(
            f"Ext-injective cogenerator mismatch on {sub.labels()}"
        )
    for part in (pro, inj):
        for i in part:
            for j in part:
                if ext1_of(cat, i, j) != 0:
                    raise ConsistencyError(
                        f"Ext-pair member {part} is not rigid"
                    )
    return ExtPair(pro, inj)


def ext_pair_of_subcat(cat, indices) -> ExtPair:
    """The Ext-pair of an IE-closed subcategory (through its twin)."""
    return ext_pair_of_twin(cat, canonical_twin(cat, indices))


def ext_pair_intersection(cat, pair: ExtPair) -> Subcat:
    """The subcategory T(P) meet F(I) recovered from an Ext-pair."""
    t = smallest_closure(cat, pair.pro, "torsion").subcat
    f = smallest_closure(cat, pair.inj, "torsionfree").subcat
    return Subcat(cat, tuple(set(t.indices) & set(f.indices)))


# ----------------------------------------------------------------------
# bounded cokernel / kernel searches for the ICE / IKE flags
# ----------------------------------------------------------------------

def _space_key(rows_tuple) -> tuple:
    return tuple((r.shape[0], r.tobytes()) for r in rows_tuple)


def _join(field, a, b):
    out = []
    for ra, rb in zip(a, b):
        R, piv = field.rref(np.vstack([ra, rb]))
        out.append(R[: len(piv)].copy())
    return tuple(out)


def _meet(field, a, b):
    out = []
    for ra, rb in zip(a, b):
        if ra.shape[0] == 0 or rb.shape[0] == 0:
            out.append(field.zeros(0, ra.shape[1]))
            continue
        stacked = np.hstack([ra.T, (-rb.T) % field.p])
        kern = field.kernel_basis(stacked)
        vecs = (ra.T @ kern[: ra.shape[0]]) % field.p
        R, piv = field.rref(vecs.T)
        out.append(R[: len(piv)].copy())
    return tuple(out)


def _projective_coeffs(p: int, d: int):
    """One coefficient tuple per morphism up to scalar (first nonzero 1)."""
    for coeffs in product(range(p), repeat=d):
        for c in coeffs:
            if c == 0:
                continue
            if c == 1:
                yield coeffs
            break


def _image_spaces(cat, member_indices, ambient):
    """Images of every morphism from a member into the ambient module,
    as canonical row-space tuples (deduplicated)."""
    f = cat.algebra.field
    seen = {}
    for i in member_indices:
        basis = hom_basis(cat.representation(i), ambient)
        if not basis:
            continue
        stacks = [
            np.stack([g.components[v] for g in basis])
            for v in range(len(ambient.dims))
        ]
        for coeffs in _projective_coeffs(f.p, len(basis)):
            c = np.array(coeffs, dtype=np.int64)
            rows = tuple(
                f.column_span_rref(np.tensordot(c, st, axes=1) % f.p)
                for st in stacks
            )
            seen.setdefault(_space_key(rows), rows)
    return list(seen.values())


def _kernel_spaces(cat, member_indices, ambient):
    """Kernels of every morphism from the ambient module to a member."""
    f = cat.algebra.field
    seen = {}
    for j in member_indices:
        basis = hom_basis(ambient, cat.representation(j))
        if not basis:
            continue
        stacks = [
            np.stack([g.components[v] for g in basis])
            for v in range(len(ambient.dims))
        ]
        for coeffs in _projective_coeffs(f.p, len(basis)):
            c = np.array(coeffs, dtype=np.int64)
            rows = tuple(
                f.column_span_rref(
                    f.kernel_basis(np.tensordot(c, st, axes=1) % f.p)
                )
                for st in stacks
            )
            seen.setdefault(_space_key(rows), rows)
    return list(seen.values())


def _full_space(field, dims):
    return tuple(field.identity(d) for d in dims)


def _zero_space(field, dims):
    return tuple(field.zeros(0, d) for d in dims)


def _cok_escapes(cat, c_indices, n_indices, bound, lattice_cap) -> bool:
    """Does some bounded cokernel of the subcategory escape Sub N?

    Walks the join lattice of generated submodules of the maximal
    bounded ambient sum; each quotient is tested by rejecting against
    N.  Returns on the first escape.
    """
    alg = cat.algebra
    f = alg.field
    members = cat.reps_for(c_indices)
    ambient = direct_sum(alg, [m for m in members for _ in range(bound)])
    n_reps = cat.reps_for(n_indices)

    def escapes(rows_tuple) -> bool:
        quot, _ = _quotient_by_columns(
            ambient, [rows.T.copy() for rows in rows_tuple]
        )
        rej, _ = reject_of_family(n_reps, quot)
        return not rej.is_zero

    zero = _zero_space(f, ambient.dims)
    if escapes(zero):
        return True
    gens = _image_spaces(cat, c_indices, ambient)
    seen = {_space_key(zero)}
    frontier = [zero]
    while frontier:
        nxt = []
        for current in frontier:
            for g in gens:
                joined = _join(f, current, g)
                key = _space_key(joined)
                if key in seen:
                    continue
                if len(seen) >= lattice_cap:
                    raise SearchCapExceeded(
                        f"cokernel lattice exceeded the cap {lattice_cap}"
                    )
                seen.add(key)
                if escapes(joined):
                    return True
                nxt.append(joined)
        frontier = nxt
    return False


def _ker_escapes(cat, c_indices, m_indices, bound, lattice_cap) -> bool:
    """Does some bounded kernel of the subcategory escape Fac M?"""
    alg = cat.algebra
    f = alg.field
    members = cat.reps_for(c_indices)
    ambient = direct_sum(alg, [m for m in members for _ in range(bound)])
    m_reps = cat.reps_for(m_indices)

    def escapes(rows_tuple) -> bool:
        sub, _ = _subrep_from_columns(
            ambient, [rows.T.copy() for rows in rows_tuple]
        )
        tr, _ = trace_of_family(m_reps, sub)
        return tr.dims != sub.dims

    full = _full_space(f, ambient.dims)
    if escapes(full):
        return True
    gens = _kernel_spaces(cat, c_indices, ambient)
    seen = {_space_key(full)}
    frontier = [full]
    while frontier:
        nxt = []
        for current in frontier:
            for g in gens:
                met = _meet(f, current, g)
                key = _space_key(met)
                if key in seen:
                    continue
                if len(seen) >= lattice_cap:
                    raise SearchCapExceeded(
                        f"kernel lattice exceeded the cap {lattice_cap}"
                    )
                seen.add(key)
                if escapes(met):
                    return True
                nxt.append(met)
        frontier = nxt
    return False


def classify(cat, indices, twin: TwinPair | None = None, *, bound: int = 2,
             lattice_cap: int = 50000) -> IEFlags:
    """Torsion / torsion-free / ICE / IKE flags of an IE-closed subcat.

    The torsion-side flags are containments of closures.  The ICE and
    IKE flags test cokernels and kernels of maps between bounded sums
    of members; the multiplicity bound is exact for the bundled
    fixtures and configurable for larger inputs.  Known implications
    (a torsion class is always cokernel-closed, dually for kernels)
    and an indecomposable-candidate filter keep the searches small.
    """
    if bound < 1:
        raise ValueError("the multiplicity bound must be at least 1")
    indices = tuple(sorted(set(indices)))
    if twin is None:
        twin = canonical_twin(cat, indices)
    fac_m = set(closure_subcat(cat, twin.plus.module, "fac").indices)
    sub_n = set(closure_subcat(cat, twin.minus.module, "sub").indices)
    is_torsion = fac_m <= sub_n
    is_torsionfree = sub_n <= fac_m

    if is_torsion:
        is_ice = True
    else:
        fac_c = set(closure_subcat(cat, indices, "fac").indices)
        if fac_c <= sub_n:
            is_ice = True
        else:
            is_ice = not _cok_escapes(
                cat, indices, twin.minus.module, bound, lattice_cap
            )

    if is_torsionfree:
        is_ike = True
    else:
        sub_c = set(closure_subcat(cat, indices, "sub").indices)
        if sub_c <= fac_m:
            is_ike = True
        else:
            is_ike = not _ker_escapes(
                cat, indices, twin.plus.module, bound, lattice_cap
            )

    return IEFlags(is_torsion, is_torsionfree, is_ice, is_ike)


# ----------------------------------------------------------------------
# enumeration and verification
# ----------------------------------------------------------------------

def enumerate_ie(cat, *, bound: int = 2, with_flags: bool = True) -> list[IERecord]:
    """All IE-closed subcategories with their twin and Ext-pair data.

    Intersects every enumerated torsion class with every torsion-free
    class, deduplicates, and round-trips each record through both
    bijections as it is built.
    """
    memo_key = ("ie", bound, with_flags)
    if memo_key in cat._memo:
        return cat._memo[memo_key]
    tors = enumerate_classes(cat, "torsion")
    torf = enumerate_classes(cat, "torsionfree")
    distinct: dict[tuple[int, ...], Subcat] = {}
    for t in tors:
        t_set = set(t.subcat.indices)
        for f_ in torf:
            inter = tuple(sorted(t_set & set(f_.subcat.indices)))
            if inter not in distinct:
                distinct[inter] = Subcat(cat, inter)
    records = []
    for indices in sorted(distinct, key=lambda ix: (len(ix), ix)):
        sub = distinct[indices]
        twin = canonical_twin(cat, indices)
        back = twin_intersection(cat, twin)
        if back.indices != indices:
            raise ConsistencyError(
                f"twin of {sub.labels()} does not intersect back to it"
            )
        if not is_canonical(cat, twin):
            raise ConsistencyError(
                f"twin attached to {sub.labels()} is not canonical"
            )
        pair = ext_pair_of_twin(cat, twin)
        back2 = ext_pair_intersection(cat, pair)
        if back2.indices != indices:
            raise ConsistencyError(
                f"Ext-pair of {sub.labels()} does not intersect back to it"
            )
        flags = classify(cat, indices, twin, bound=bound) if with_flags else None
        records.append(IERecord(sub, twin, pair, flags))
    cat._memo[memo_key] = records
    return records


def twin_census(cat) -> list[TwinPair]:
    """All twin pairs with matching supports, canonically ordered.

    Matching supports is the necessary condition for canonicity, and
    grouping by support makes the census counts square sums of the
    per-support tallies.
    """
    verts = cat.algebra.quiver.vertices
    plus_side = enumerate_stt(cat, "plus")
    minus_side = enumerate_stt(cat, "minus")
    out = [
        TwinPair(m, n)
        for m in plus_side
        for n in minus_side
        if m.support == n.support
    ]
    out.sort(
        key=lambda t: (
            len(t.plus.support),
            tuple(verts.index(v) for v in t.plus.support),
            t.plus.module,
            t.minus.module,
        )
    )
    return out


@dataclass
class BijectionReport:
    ie_count: int
    canonical_twin_count: int
    ext_pair_count: int
    census_count: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return (
            not self.violations
            and self.ie_count
            == self.canonical_twin_count
            == self.ext_pair_count
        )


def verify_bijections(cat, *, bound: int = 2) -> BijectionReport:
    """Check that subcategories, canonical twins and Ext-pairs biject.

    Also round-trips every mapping: each subcategory returns to itself
    through its twin and through its Ext-pair, every canonical census
    twin is recovered from its intersection, and canonicalizing a
    non-canonical census twin preserves the intersection.
    """
    violations: list[str] = []
    records = enumerate_ie(cat, bound=bound, with_flags=False)
    census = twin_census(cat)
    canonical = [t for t in census if is_canonical(cat, t)]
    ext_pairs = {(r.extpair.pro, r.extpair.inj) for r in records}

    for rec in records:
        again = canonical_twin(cat, rec.subcat.indices)
        if again != rec.twin:
            violations.append(
                f"twin of {rec.subcat.labels()} is not reproducible"
            )
    for t in canonical:
        inter = twin_intersection(cat, t)
        if canonical_twin(cat, inter.indices) != t:
            violations.append(
                f"canonical twin {t.plus.module}/{t.minus.module} "
                "does not round-trip"
            )
    for t in census:
        fixed = canonicalize(cat, t)
        if twin_intersection(cat, fixed) != twin_intersection(cat, t):
            violations.append(
                f"canonicalizing {t.plus.module}/{t.minus.module} "
                "changed the subcategory"
            )
        if not is_canonical(cat, fixed):
            violations.append(
                f"canonicalize({t.plus.module}/{t.minus.module}) "
                "is not canonical"
            )
    for rec in records:
        back = ext_pair_intersection(cat, rec.extpair)
        if back.indices != rec.subcat.indices:
            violations.append(
                f"Ext-pair round-trip failed on {rec.subcat.labels()}"
            )
    for t in canonical:
        supp_m = supp_of(cat, t.plus.module)
        supp_n = supp_of(cat, t.minus.module)
        if supp_m != supp_n:
            violations.append(
                f"canonical twin {t.plus.module}/{t.minus.module} "
                "has mismatched supports"
            )

    return BijectionReport(
        ie_count=len(records),
        canonical_twin_count=len(canonical),
        ext_pair_count=len(ext_pairs),
        census_count=len(census),
        violations=violations,
    )
