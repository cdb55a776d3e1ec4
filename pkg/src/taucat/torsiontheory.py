"""Torsion and torsion-free classes as catalog subsets.

A torsion class is realised as the set of catalog indices generated by
a support tau-tilting module (its Fac-closure); dually a torsion-free
class is a Sub-closure.  Smallest closures are lattice minima over the
enumerated classes, with an independent filtration-style fixpoint
oracle to guard the enumeration.  The canonical short exact sequences
split a module into its part inside a torsion class and the quotient
in the complementary torsion-free class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .repcore import (
    Morphism,
    Representation,
    decompose,
    direct_sum,
    quotient_by,
    reject_of_family,
    submodules_of,
    trace_of_family,
)
from .tautheory import STTPair, enumerate_stt, ext1_of


class ConsistencyError(RuntimeError):
    """Two independent computation routes disagreed."""


@dataclass(frozen=True)
class Subcat:
    """A finite additive subcategory: a sorted set of catalog indices."""

    catalog: object
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))

    def labels(self) -> tuple[str, ...]:
        return tuple(self.catalog.label(i) for i in self.indices)

    def __contains__(self, index: int) -> bool:
        return index in self.indices


@dataclass(frozen=True)
class TorsionClassRecord:
    subcat: Subcat
    side: str  # "torsion" or "torsionfree"
    generator: STTPair


@dataclass(frozen=True)
class CanonicalSES:
    """0 -> torsion_part -> middle -> free_part -> 0 for a torsion pair."""

    side: str  # "M" or "N"
    middle: Representation
    torsion_part: Representation
    free_part: Representation
    inclusion: Morphism
    projection: Morphism


# ----------------------------------------------------------------------
# membership and closures
# ----------------------------------------------------------------------

def in_fac(cat, gen_indices, index: int) -> bool:
    """Is catalog entry ``index`` generated by the given family?"""
    key = ("in_fac", tuple(sorted(set(gen_indices))), index)
    memo = cat._memo
    if key not in memo:
        x = cat.representation(index)
        tr, _ = trace_of_family(cat.reps_for(key[1]), x)
        memo[key] = tr.dims == x.dims
    return memo[key]


def in_sub(cat, cogen_indices, index: int) -> bool:
    """Is catalog entry ``index`` cogenerated by the given family?"""
    key = ("in_sub", tuple(sorted(set(cogen_indices))), index)
    memo = cat._memo
    if key not in memo:
        x = cat.representation(index)
        rej, _ = reject_of_family(cat.reps_for(key[1]), x)
        memo[key] = rej.is_zero
    return memo[key]


def closure_subcat(cat, gen_indices, side: str) -> Subcat:
    """All catalog entries in Fac (side "fac") or Sub (side "sub")."""
    member = in_fac if side == "fac" else in_sub
    key = ("closure", side, tuple(sorted(set(gen_indices))))
    memo = cat._memo
    if key not in memo:
        memo[key] = Subcat(
            cat,
            tuple(i for i in range(len(cat)) if member(cat, key[2], i)),
        )
    return memo[key]


# ----------------------------------------------------------------------
# torsion class enumeration
# ----------------------------------------------------------------------

def enumerate_classes(cat, side: str) -> list[TorsionClassRecord]:
    """One functorially finite class per support tau-tilting pair.

    Torsion classes are the Fac-closures of the plus-side pairs,
    torsion-free classes the Sub-closures of the minus side.  Each
    class is checked to be an immediate fixpoint of the filtration
    oracle; a failure there, or a duplicate class, means the catalog
    is incomplete.
    """
    key = ("classes", side)
    if key in cat._memo:
        return cat._memo[key]
    stt_side = "plus" if side == "torsion" else "minus"
    closure_side = "fac" if side == "torsion" else "sub"
    records = []
    for pair in enumerate_stt(cat, stt_side):
        sub = closure_subcat(cat, pair.module, closure_side)
        records.append(TorsionClassRecord(sub, side, pair))
    seen = {}
    for rec in records:
        if rec.subcat.indices in seen:
            raise ConsistencyError(
                f"{side} classes of {seen[rec.subcat.indices].generator.module} "
                f"and {rec.generator.module} coincide: incomplete catalog?"
            )
        seen[rec.subcat.indices] = rec
    for rec in records:
        fixed = filt_closure_oracle(cat, rec.subcat.indices, side)
        if fixed.indices != rec.subcat.indices:
            raise ConsistencyError(
                f"enumerated {side} class {rec.subcat.labels()} is not "
                "closed under quotients/submodules and extensions"
            )
    cat._memo[key] = records
    return records


def smallest_closure(cat, indices, side: str) -> TorsionClassRecord:
    """The smallest torsion (or torsion-free) class containing a subset.

    Taken as the inclusion-minimal enumerated class; verified to equal
    the intersection of all enumerated classes containing the subset.
    """
    want = set(indices)
    containing = [
        rec
        for rec in enumerate_classes(cat, side)
        if want.issubset(rec.subcat.indices)
    ]
    if not containing:
        raise ConsistencyError(f"no {side} class contains {sorted(want)}")
    best = min(containing, key=lambda rec: len(rec.subcat.indices))
    meet = set(range(len(cat)))
    for rec in containing:
        meet &= set(rec.subcat.indices)
    if tuple(sorted(meet)) != best.subcat.indices:
        raise ConsistencyError(
            "smallest closure is not the intersection of containing classes"
        )
    return best


def _extension_table(cat):
    """Per entry: decompositions of (submodule, quotient) for every
    submodule, feeding the extension-closure step of the oracle."""
    if "ses_table" in cat._memo:
        return cat._memo["ses_table"]
    table = []
    for idx in range(len(cat)):
        x = cat.representation(idx)
        rows = []
        for sub, incl in submodules_of(x):
            quot, _ = quotient_by(x, incl)
            rows.append(
                (decompose(sub, cat), decompose(quot, cat))
            )
        table.append(rows)
    cat._memo["ses_table"] = table
    return table


def filt_closure_oracle(cat, indices, side: str) -> Subcat:
    """Independent fixpoint oracle for the smallest closure.

    Alternates (i) quotient- (resp. sub-) closure via membership tests
    with (ii) extension closure: a catalog entry joins when one of its
    submodules and the matching quotient both already lie in the
    additive closure of the current set.
    """
    member = in_fac if side == "torsion" else in_sub
    table = _extension_table(cat)
    current = set(indices)
    changed = True
    while changed:
        changed = False
        gens = tuple(sorted(current))
        for x in range(len(cat)):
            if x in current:
                continue
            if member(cat, gens, x):
                current.add(x)
                changed = True
                continue
            for sub_cnt, quot_cnt in table[x]:
                if all(i in current for i in sub_cnt) and all(
                    i in current for i in quot_cnt
                ):
                    current.add(x)
                    changed = True
                    break
    return Subcat(cat, tuple(sorted(current)))


# ----------------------------------------------------------------------
# torsion radicals and the canonical sequences
# ----------------------------------------------------------------------

def torsion_radical(record: TorsionClassRecord, X: Representation):
    """The largest submodule of X inside the torsion class.

    Returns ``(submodule, inclusion)``; the quotient lies in the
    complementary torsion-free class.
    """
    if record.side != "torsion":
        raise ValueError("torsion_radical needs a torsion-side record")
    cat = record.subcat.catalog
    return trace_of_family(cat.reps_for(record.subcat.indices), X)


def canonical_ses(cat, m_indices, n_indices, side: str) -> CanonicalSES:
    """The canonical sequence of one member of a twin pair.

    Side "M" splits the plus module along the torsion pair induced by
    Sub N: the kernel rejects every map to N, the quotient is the
    largest quotient cogenerated by N.  Side "N" dually splits the
    minus module along the pair induced by Fac M.
    """
    key = ("ses", tuple(sorted(m_indices)), tuple(sorted(n_indices)), side)
    if key in cat._memo:
        return cat._memo[key]
    m_reps = cat.reps_for(sorted(m_indices))
    n_reps = cat.reps_for(sorted(n_indices))
    if side == "M":
        middle = direct_sum(cat.algebra, m_reps)
        part, incl = reject_of_family(n_reps, middle)
    elif side == "N":
        middle = direct_sum(cat.algebra, n_reps)
        part, incl = trace_of_family(m_reps, middle)
    else:
        raise ValueError("side must be 'M' or 'N'")
    quot, proj = quotient_by(middle, incl)
    if part.total_dim + quot.total_dim != middle.total_dim:
        raise ConsistencyError("canonical sequence is not exact")
    if not incl.then(proj).is_zero:
        raise ConsistencyError("canonical sequence does not compose to zero")
    ses = CanonicalSES(side, middle, part, quot, incl, proj)
    cat._memo[key] = ses
    return ses


# ----------------------------------------------------------------------
# Ext-projectives and Ext-injectives
# ----------------------------------------------------------------------

def ext_extremes(cat, indices, side: str) -> tuple[int, ...]:
    """Members with vanishing Ext^1 against (side projective) or from
    (side injective) the whole subcategory."""
    indices = tuple(sorted(set(indices)))
    if side == "projective":
        return tuple(
            i
            for i in indices
            if all(ext1_of(cat, i, j) == 0 for j in indices)
        )
    if side == "injective":
        return tuple(
            i
            for i in indices
            if all(ext1_of(cat, j, i) == 0 for j in indices)
        )
    raise ValueError("side must be 'projective' or 'injective'")


def progenerator(cat, indices, side: str) -> tuple[int, ...]:
    """Ext-progenerator ("pro") or Ext-injective cogenerator ("inj").

    Computed as the Ext-extremes of the subcategory and cross-checked
    against the independent route through the canonical sequence of
    the attached twin pair; a mismatch flags a bug or an unsupported
    catalog.
    """
    if side not in ("pro", "inj"):
        raise ValueError("side must be 'pro' or 'inj'")
    direct = ext_extremes(
        cat, indices, "projective" if side == "pro" else "injective"
    )
    m = smallest_closure(cat, indices, "torsion").generator.module
    n = smallest_closure(cat, indices, "torsionfree").generator.module
    if side == "pro":
        ses = canonical_ses(cat, m, n, "M")
        counted = decompose(ses.free_part, cat)
    else:
        ses = canonical_ses(cat, m, n, "N")
        counted = decompose(ses.torsion_part, cat)
    via_twin = tuple(sorted(counted))
    if via_twin != direct:
        raise ConsistencyError(
            f"Ext-extremes {direct} disagree with the twin route {via_twin}"
        )
    return direct
