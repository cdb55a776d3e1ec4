"""Golden-table verification of the bundled reference algebras.

The expected support tau-tilting censuses, the full classification
table, and the worked canonicalization example live in data files; the
checks here recompute everything from scratch and diff against them,
naming the offending row on any mismatch.  Everything is parametrized
by the field modulus so the whole battery can be rerun over different
primes (the interval catalogs have field-independent combinatorics).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from importlib import resources

from .algebra import Arrow, MonomialRelation, Quiver, build_algebra
from .catalog import interval_catalog
from .ieclosed import (
    canonical_twin,
    canonicalize,
    enumerate_ie,
    ext_pair_of_subcat,
    is_canonical,
    twin_census,
    twin_from_indices,
    verify_bijections,
)
from .linalg import FieldSpec
from .repcore import decompose
from .tautheory import enumerate_stt
from .torsiontheory import canonical_ses


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def load_golden(name: str) -> dict:
    blob = resources.files("taucat.data").joinpath(name).read_text()
    return json.loads(blob)


def load_fixture_algebra(name: str, p: int | None = None):
    """Build one of the bundled algebras, optionally overriding p."""
    data = load_golden(f"{name}.json")
    quiver = Quiver(
        tuple(data["vertices"]),
        tuple(Arrow(a["name"], a["from"], a["to"]) for a in data["arrows"]),
    )
    rels = [MonomialRelation(tuple(r)) for r in data["relations"]]
    modulus = p if p is not None else data["field"]["p"]
    return build_algebra(quiver, rels, FieldSpec(modulus))


def _grouped_stt(cat, side):
    grouped: dict[str, set] = {}
    for pair in enumerate_stt(cat, side):
        key = ",".join(pair.support)
        labels = tuple(sorted(cat.label(i) for i in pair.module))
        grouped.setdefault(key, set()).add(labels)
    return grouped


def _expected_grouping(raw) -> dict[str, set]:
    return {
        key: {tuple(sorted(mod)) for mod in mods} for key, mods in raw.items()
    }


def _labels(cat, indices) -> tuple[str, ...]:
    return tuple(sorted(cat.label(i) for i in indices))


def _multiset_labels(cat, counter: Counter) -> tuple[str, ...]:
    return tuple(sorted(cat.label(i) for i in counter.elements()))


def _row_key(row: dict) -> tuple:
    return (
        tuple(sorted(row["subcat"])),
        tuple(sorted(row["m"])),
        tuple(sorted(row["n"])),
        tuple(sorted(row["p"])),
        tuple(sorted(row["i"])),
    )


def _check_stt_census(cat, golden, side) -> Check:
    got = _grouped_stt(cat, side)
    expected = _expected_grouping(golden["stt_plus" if side == "plus" else "stt_minus"])
    name = f"nakayama_a3: support tau-tilting census ({side})"
    if got == expected:
        total = sum(len(v) for v in got.values())
        return Check(name, True, f"{total} modules in {len(got)} support groups")
    diffs = []
    for key in sorted(set(got) | set(expected)):
        if got.get(key, set()) != expected.get(key, set()):
            diffs.append(
                f"support {{{key}}}: got {sorted(got.get(key, set()))}, "
                f"want {sorted(expected.get(key, set()))}"
            )
    return Check(name, False, "; ".join(diffs))


def _check_ie_table(cat, golden, fixture: str) -> Check:
    records = enumerate_ie(cat, with_flags=False)
    got = {}
    for rec in records:
        row = (
            _labels(cat, rec.subcat.indices),
            _labels(cat, rec.twin.plus.module),
            _labels(cat, rec.twin.minus.module),
            _labels(cat, rec.extpair.pro),
            _labels(cat, rec.extpair.inj),
        )
        got[row[0]] = row
    expected = {_row_key(r)[0]: _row_key(r) for r in golden["ie_table"]}
    name = f"{fixture}: classification table ({len(expected)} rows)"
    if got == expected:
        return Check(name, True, f"{len(got)} rows matched")
    diffs = []
    for key in sorted(set(got) | set(expected)):
        if got.get(key) != expected.get(key):
            diffs.append(
                f"row add{{{'+'.join(key) or '0'}}}: got {got.get(key)}, "
                f"want {expected.get(key)}"
            )
    return Check(name, False, "; ".join(diffs))


def _check_canonicalize_example(cat, golden) -> Check:
    spec = golden["canonicalize_example"]
    name = "nakayama_a3: canonicalization worked example"
    try:
        t = twin_from_indices(
            cat,
            [cat.index_of(x) for x in spec["m"]],
            [cat.index_of(x) for x in spec["n"]],
        )
    except ValueError as exc:
        return Check(name, False, str(exc))
    problems = []
    if is_canonical(cat, t) != spec["is_canonical"]:
        problems.append("canonicity flag mismatch")
    ses_m = canonical_ses(cat, t.plus.module, t.minus.module, "M")
    ses_n = canonical_ses(cat, t.plus.module, t.minus.module, "N")
    seq_m = (
        _multiset_labels(cat, decompose(ses_m.torsion_part, cat)),
        _multiset_labels(cat, decompose(ses_m.free_part, cat)),
    )
    want_m = (
        tuple(sorted(spec["sequence_m"]["sub"])),
        tuple(sorted(spec["sequence_m"]["quotient"])),
    )
    if seq_m != want_m:
        problems.append(f"plus-side sequence: got {seq_m}, want {want_m}")
    seq_n = (
        _multiset_labels(cat, decompose(ses_n.torsion_part, cat)),
        _multiset_labels(cat, decompose(ses_n.free_part, cat)),
    )
    want_n = (
        tuple(sorted(spec["sequence_n"]["sub"])),
        tuple(sorted(spec["sequence_n"]["quotient"])),
    )
    if seq_n != want_n:
        problems.append(f"minus-side sequence: got {seq_n}, want {want_n}")
    fixed = canonicalize(cat, t)
    got_m = _labels(cat, fixed.plus.module)
    got_n = _labels(cat, fixed.minus.module)
    if got_m != tuple(sorted(spec["canonical_m"])) or got_n != tuple(
        sorted(spec["canonical_n"])
    ):
        problems.append(f"canonical pair: got ({got_m}, {got_n})")
    return Check(name, not problems, "; ".join(problems) or "sequences and output match")


def _check_hereditary_remark(cat, golden) -> Check:
    spec = golden["p2_row"]
    name = "hereditary_a2: add{P2} twin and Ext-pair"
    indices = [cat.index_of(x) for x in spec["subcat"]]
    t = canonical_twin(cat, indices)
    pair = ext_pair_of_subcat(cat, indices)
    problems = []
    if _labels(cat, t.plus.module) != tuple(sorted(spec["m"])):
        problems.append(f"plus side: got {_labels(cat, t.plus.module)}")
    if _labels(cat, t.minus.module) != tuple(sorted(spec["n"])):
        problems.append(f"minus side: got {_labels(cat, t.minus.module)}")
    if _labels(cat, pair.pro) != tuple(sorted(spec["p"])):
        problems.append(f"Ext-progenerator: got {_labels(cat, pair.pro)}")
    if _labels(cat, pair.inj) != tuple(sorted(spec["i"])):
        problems.append(f"Ext-cogenerator: got {_labels(cat, pair.inj)}")
    return Check(name, not problems, "; ".join(problems) or "matches")


def reference_checks(
    p: int | None = None,
    golden_a3: dict | None = None,
    golden_a2: dict | None = None,
) -> list[Check]:
    """Recompute both bundled fixtures and diff against the golden data."""
    golden_a3 = golden_a3 or load_golden("golden_nakayama_a3.json")
    golden_a2 = golden_a2 or load_golden("golden_hereditary_a2.json")
    checks: list[Check] = []

    a3 = load_fixture_algebra("nakayama_a3", p)
    a3_cat = interval_catalog(a3)
    checks.append(_check_stt_census(a3_cat, golden_a3, "plus"))
    checks.append(_check_stt_census(a3_cat, golden_a3, "minus"))

    census = twin_census(a3_cat)
    want = golden_a3["twin_census_count"]
    checks.append(
        Check(
            "nakayama_a3: support-matched twin census",
            len(census) == want,
            f"got {len(census)}, want {want}",
        )
    )

    checks.append(_check_ie_table(a3_cat, golden_a3, "nakayama_a3"))
    checks.append(_check_canonicalize_example(a3_cat, golden_a3))

    rep = verify_bijections(a3_cat)
    checks.append(
        Check(
            "nakayama_a3: bijection round-trips",
            rep.ok
            and rep.ie_count
            == rep.canonical_twin_count
            == rep.ext_pair_count
            == len(golden_a3["ie_table"]),
            f"counts {rep.ie_count}/{rep.canonical_twin_count}/"
            f"{rep.ext_pair_count}; violations: {rep.violations or 'none'}",
        )
    )

    a2 = load_fixture_algebra("hereditary_a2", p)
    a2_cat = interval_catalog(a2)
    plus = enumerate_stt(a2_cat, "plus")
    minus = enumerate_stt(a2_cat, "minus")
    checks.append(
        Check(
            "hereditary_a2: support tau-tilting counts",
            len(plus) == golden_a2["stt_plus_count"]
            and len(minus) == golden_a2["stt_minus_count"],
            f"got {len(plus)}/{len(minus)}",
        )
    )
    checks.append(_check_ie_table(a2_cat, golden_a2, "hereditary_a2"))
    checks.append(_check_hereditary_remark(a2_cat, golden_a2))

    rep2 = verify_bijections(a2_cat)
    checks.append(
        Check(
            "hereditary_a2: bijection round-trips",
            rep2.ok and rep2.census_count == golden_a2["twin_census_count"],
            f"counts {rep2.ie_count}/{rep2.canonical_twin_count}/"
            f"{rep2.ext_pair_count}, census {rep2.census_count}; "
            f"violations: {rep2.violations or 'none'}",
        )
    )
    return checks
