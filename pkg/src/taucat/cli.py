"""Batch command line interface.

Subcommands cover the whole pipeline: catalog listing, support
tau-tilting enumeration, the twin census, IE-closed classification,
canonicalization of a user-supplied twin pair, Ext-pairs, closure
flags, and a golden-table verification run over the bundled reference
algebras.  Output renders as an aligned table, JSON, or CSV; module
expressions use ``+`` between summand labels and ``0`` for the zero
module.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from importlib import resources

from .algebra import (
    Arrow,
    InfiniteDimensionError,
    MonomialRelation,
    Quiver,
    QuiverError,
    build_algebra,
)
from .catalog import (
    CatalogValidationError,
    UnsupportedQuiverShape,
    catalog_to_dict,
    interval_catalog,
    load_catalog,
)
from .ieclosed import (
    canonicalize,
    classify,
    enumerate_ie,
    is_canonical,
    twin_census,
    twin_from_indices,
    twin_intersection,
)
from .linalg import FieldSpec
from .repcore import decompose
from .tautheory import enumerate_stt
from .torsiontheory import ConsistencyError, canonical_ses
from .verify import reference_checks

BUNDLED_ALGEBRAS = ("nakayama_a3", "hereditary_a2")


class CLIError(Exception):
    """Usage-level failure; rendered to stderr with exit code 2."""


# ----------------------------------------------------------------------
# input parsing
# ----------------------------------------------------------------------

def parse_algebra_file(source, p: int | None = None):
    """Build an algebra from a JSON file or a bundled fixture name."""
    if source in BUNDLED_ALGEBRAS:
        data = json.loads(
            resources.files("taucat.data").joinpath(f"{source}.json").read_text()
        )
    else:
        try:
            with open(source) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise CLIError(f"algebra file not found: {source}") from None
        except json.JSONDecodeError as exc:
            raise CLIError(f"algebra file {source}: {exc}") from None
    try:
        vertices = tuple(str(v) for v in data["vertices"])
        arrows = tuple(
            Arrow(str(a["name"]), str(a["from"]), str(a["to"]))
            for a in data.get("arrows", [])
        )
        quiver = Quiver(vertices, arrows)
        relations = [
            MonomialRelation(tuple(str(x) for x in rel))
            for rel in data.get("relations", [])
        ]
        modulus = p if p is not None else int(data.get("field", {}).get("p", 2))
        return build_algebra(quiver, relations, FieldSpec(modulus))
    except KeyError as exc:
        raise CLIError(f"algebra file {source}: missing field {exc}") from None
    except (QuiverError, InfiniteDimensionError, ValueError) as exc:
        raise CLIError(f"algebra file {source}: {exc}") from None


def parse_module_expr(expr: str, cat) -> Counter:
    """Resolve ``L1+L2+...`` into a multiset of catalog indices."""
    counter: Counter = Counter()
    for token in expr.split("+"):
        token = token.strip()
        if not token:
            raise CLIError(f"empty summand in module expression {expr!r}")
        if token == "0":
            continue
        try:
            counter[cat.index_of(token)] += 1
        except KeyError:
            raise CLIError(
                f"unknown module label {token!r}; catalog has "
                f"{', '.join(cat.labels())}"
            ) from None
    return counter


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------

_KIND_ORDER = {"S": 0, "P": 1, "I": 2}


def label_sort_key(label: str):
    return (_KIND_ORDER.get(label[:1], 3), label)


def sorted_labels(cat, indices) -> list[str]:
    return sorted((cat.label(i) for i in indices), key=label_sort_key)


def multiset_labels(cat, counter: Counter) -> list[str]:
    return sorted(
        (cat.label(i) for i in counter.elements()), key=label_sort_key
    )


def fmt_sum(labels, paper_names: bool) -> str:
    if not labels:
        return "0"
    return ("" if paper_names else "+").join(labels)


def render_table(headers, rows) -> str:
    widths = [
        max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
        for i, h in enumerate(headers)
    ]
    out = [
        "  ".join(str(h).ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for r in rows:
        out.append(
            "  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip()
        )
    return "\n".join(out)


def render_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def render_csv(headers, rows) -> str:
    lines = [",".join(str(h) for h in headers)]
    lines.extend(",".join(str(c) for c in r) for r in rows)
    return "\n".join(lines)


def emit(args, headers, rows, payload) -> None:
    if args.format == "json":
        print(render_json(payload))
    elif args.format == "csv":
        print(render_csv(headers, rows))
    else:
        print(render_table(headers, rows))


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def _setup(args):
    alg = parse_algebra_file(args.algebra, args.p)
    if args.catalog:
        try:
            cat = load_catalog(alg, args.catalog)
        except (CatalogValidationError, OSError, json.JSONDecodeError) as exc:
            raise CLIError(f"catalog file {args.catalog}: {exc}") from None
    else:
        try:
            cat = interval_catalog(alg)
        except UnsupportedQuiverShape as exc:
            raise CLIError(f"{exc} (use --catalog FILE)") from None
    return alg, cat


def cmd_catalog(args) -> int:
    alg, cat = _setup(args)
    headers = ("label", "dims", "total")
    rows = [
        (lab, ",".join(str(d) for d in rep.dims), rep.total_dim)
        for lab, rep in cat.entries
    ]
    emit(args, headers, rows, catalog_to_dict(cat))
    return 0


def cmd_stt(args) -> int:
    alg, cat = _setup(args)
    side = "minus" if args.minus else "plus"
    pairs = enumerate_stt(cat, side)
    headers = ("support", "module", "proj_complement")
    rows = [
        (
            "{" + ",".join(pr.support) + "}",
            fmt_sum(sorted_labels(cat, pr.module), args.paper_names),
            "{" + ",".join(pr.proj_complement) + "}",
        )
        for pr in pairs
    ]
    payload = {
        "algebra": alg.fingerprint(),
        "side": side,
        "pairs": [
            {
                "support": list(pr.support),
                "module": sorted_labels(cat, pr.module),
                "proj_complement": list(pr.proj_complement),
            }
            for pr in pairs
        ],
    }
    emit(args, headers, rows, payload)
    return 0


def cmd_twins(args) -> int:
    alg, cat = _setup(args)
    census = twin_census(cat)
    records = []
    for t in census:
        canonical = is_canonical(cat, t)
        if args.canonical_only and not canonical:
            continue
        records.append((t, canonical))
    headers = ("M", "N", "support", "canonical")
    rows = [
        (
            fmt_sum(sorted_labels(cat, t.plus.module), args.paper_names),
            fmt_sum(sorted_labels(cat, t.minus.module), args.paper_names),
            "{" + ",".join(t.plus.support) + "}",
            "yes" if canonical else "no",
        )
        for t, canonical in records
    ]
    payload = {
        "algebra": alg.fingerprint(),
        "twins": [
            {
                "M": sorted_labels(cat, t.plus.module),
                "N": sorted_labels(cat, t.minus.module),
                "support": list(t.plus.support),
                "canonical": canonical,
            }
            for t, canonical in records
        ],
    }
    emit(args, headers, rows, payload)
    return 0


def _record_payload(cat, records):
    out = []
    for rec in records:
        item = {
            "subcat": sorted_labels(cat, rec.subcat.indices),
            "twin": {
                "M": sorted_labels(cat, rec.twin.plus.module),
                "N": sorted_labels(cat, rec.twin.minus.module),
            },
            "ext_pair": {
                "P": sorted_labels(cat, rec.extpair.pro),
                "I": sorted_labels(cat, rec.extpair.inj),
            },
        }
        if rec.flags is not None:
            item["flags"] = {
                "is_torsion": rec.flags.is_torsion,
                "is_torsionfree": rec.flags.is_torsionfree,
                "is_ice": rec.flags.is_ice,
                "is_ike": rec.flags.is_ike,
            }
        out.append(item)
    return out


def cmd_ie(args) -> int:
    alg, cat = _setup(args)
    records = enumerate_ie(cat)
    headers = (
        "subcat",
        "M",
        "N",
        "P",
        "I",
        "torsion",
        "torsionfree",
        "ice",
        "ike",
    )
    rows = []
    for rec in records:
        fl = rec.flags
        rows.append(
            (
                fmt_sum(sorted_labels(cat, rec.subcat.indices), args.paper_names),
                fmt_sum(sorted_labels(cat, rec.twin.plus.module), args.paper_names),
                fmt_sum(sorted_labels(cat, rec.twin.minus.module), args.paper_names),
                fmt_sum(sorted_labels(cat, rec.extpair.pro), args.paper_names),
                fmt_sum(sorted_labels(cat, rec.extpair.inj), args.paper_names),
                "yes" if fl.is_torsion else "no",
                "yes" if fl.is_torsionfree else "no",
                "yes" if fl.is_ice else "no",
                "yes" if fl.is_ike else "no",
            )
        )
    payload = {
        "algebra": alg.fingerprint(),
        "records": _record_payload(cat, records),
    }
    emit(args, headers, rows, payload)
    return 0


def cmd_ext_pairs(args) -> int:
    alg, cat = _setup(args)
    records = enumerate_ie(cat, with_flags=False)
    headers = ("subcat", "P", "I")
    rows = [
        (
            fmt_sum(sorted_labels(cat, rec.subcat.indices), args.paper_names),
            fmt_sum(sorted_labels(cat, rec.extpair.pro), args.paper_names),
            fmt_sum(sorted_labels(cat, rec.extpair.inj), args.paper_names),
        )
        for rec in records
    ]
    payload = {
        "algebra": alg.fingerprint(),
        "records": _record_payload(cat, records),
    }
    emit(args, headers, rows, payload)
    return 0


def cmd_classify(args) -> int:
    alg, cat = _setup(args)
    records = enumerate_ie(cat, bound=args.bound)
    headers = ("subcat", "torsion", "torsionfree", "ice", "ike")
    rows = []
    for rec in records:
        fl = rec.flags
        rows.append(
            (
                fmt_sum(sorted_labels(cat, rec.subcat.indices), args.paper_names),
                "yes" if fl.is_torsion else "no",
                "yes" if fl.is_torsionfree else "no",
                "yes" if fl.is_ice else "no",
                "yes" if fl.is_ike else "no",
            )
        )
    payload = {
        "algebra": alg.fingerprint(),
        "records": _record_payload(cat, records),
    }
    emit(args, headers, rows, payload)
    return 0


def cmd_canonicalize(args) -> int:
    alg, cat = _setup(args)
    m_counter = parse_module_expr(args.m, cat)
    n_counter = parse_module_expr(args.n, cat)
    try:
        twin = twin_from_indices(cat, tuple(m_counter), tuple(n_counter))
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    already = is_canonical(cat, twin)
    ses_m = canonical_ses(cat, twin.plus.module, twin.minus.module, "M")
    ses_n = canonical_ses(cat, twin.plus.module, twin.minus.module, "N")
    fixed = canonicalize(cat, twin)
    pn = args.paper_names

    def show(counter_or_indices, multiset=False):
        if multiset:
            return fmt_sum(multiset_labels(cat, counter_or_indices), pn)
        return fmt_sum(sorted_labels(cat, counter_or_indices), pn)

    seq_m = {
        "sub": multiset_labels(cat, decompose(ses_m.torsion_part, cat)),
        "middle": sorted_labels(cat, twin.plus.module),
        "quotient": multiset_labels(cat, decompose(ses_m.free_part, cat)),
    }
    seq_n = {
        "sub": multiset_labels(cat, decompose(ses_n.torsion_part, cat)),
        "middle": sorted_labels(cat, twin.minus.module),
        "quotient": multiset_labels(cat, decompose(ses_n.free_part, cat)),
    }
    payload = {
        "algebra": alg.fingerprint(),
        "input": {
            "M": sorted_labels(cat, twin.plus.module),
            "N": sorted_labels(cat, twin.minus.module),
        },
        "already_canonical": already,
        "sequence_m": seq_m,
        "sequence_n": seq_n,
        "canonical": {
            "M": sorted_labels(cat, fixed.plus.module),
            "N": sorted_labels(cat, fixed.minus.module),
        },
    }
    if args.format == "json":
        print(render_json(payload))
        return 0
    lines = [
        f"input M = {show(twin.plus.module)}",
        f"input N = {show(twin.minus.module)}",
        f"canonical already: {'yes' if already else 'no'}",
        "0 -> {} -> {} -> {} -> 0".format(
            fmt_sum(seq_m["sub"], pn),
            fmt_sum(seq_m["middle"], pn),
            fmt_sum(seq_m["quotient"], pn),
        ),
        "0 -> {} -> {} -> {} -> 0".format(
            fmt_sum(seq_n["sub"], pn),
            fmt_sum(seq_n["middle"], pn),
            fmt_sum(seq_n["quotient"], pn),
        ),
        "canonical pair: ({}, {})".format(
            show(fixed.plus.module), show(fixed.minus.module)
        ),
    ]
    print("\n".join(lines))
    return 0


def cmd_verify_paper(args) -> int:
    checks = reference_checks(p=args.p)
    if args.format == "json":
        payload = {
            "ok": all(c.ok for c in checks),
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks
            ],
        }
        print(render_json(payload))
    else:
        for c in checks:
            status = "PASS" if c.ok else "FAIL"
            detail = f": {c.detail}" if c.detail else ""
            print(f"{status}  {c.name}{detail}")
        passed = sum(c.ok for c in checks)
        print(f"{passed}/{len(checks)} checks passed")
    return 0 if all(c.ok for c in checks) else 1


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taucat",
        description=(
            "Exact support tau-tilting data and IE-closed subcategory "
            "classification for bound quiver algebras over GF(p)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument(
            "-a",
            "--algebra",
            default="nakayama_a3",
            help="algebra JSON file, or a bundled name: "
            + ", ".join(BUNDLED_ALGEBRAS),
        )
        sp.add_argument(
            "--p", type=int, default=None, help="override the field modulus"
        )
        sp.add_argument(
            "--catalog",
            default=None,
            help="catalog JSON file (instead of the built-in interval catalog)",
        )
        sp.add_argument(
            "--format", choices=("table", "json", "csv"), default="table"
        )
        sp.add_argument(
            "--paper-names",
            action="store_true",
            help="print sums as concatenated names (S1S3P1) instead of S1+S3+P1",
        )

    sp = sub.add_parser("catalog", help="list the indecomposable modules")
    add_common(sp)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("stt", help="support tau-tilting modules by support set")
    add_common(sp)
    sp.add_argument("--minus", action="store_true", help="enumerate the tau^- side")
    sp.set_defaults(func=cmd_stt)

    sp = sub.add_parser("twins", help="support-matched twin pairs")
    add_common(sp)
    sp.add_argument(
        "--canonical-only", action="store_true", help="keep only canonical pairs"
    )
    sp.set_defaults(func=cmd_twins)

    sp = sub.add_parser("ie", help="IE-closed subcategories with twins and Ext-pairs")
    add_common(sp)
    sp.set_defaults(func=cmd_ie)

    sp = sub.add_parser(
        "canonicalize", help="canonicalize a twin pair given by module expressions"
    )
    add_common(sp)
    sp.add_argument("--m", required=True, help="plus-side module, e.g. S1+S3+P1")
    sp.add_argument("--n", required=True, help="minus-side module, e.g. S1+S3+P2")
    sp.set_defaults(func=cmd_canonicalize)

    sp = sub.add_parser("ext-pairs", help="canonical Ext-pairs per subcategory")
    add_common(sp)
    sp.set_defaults(func=cmd_ext_pairs)

    sp = sub.add_parser("classify", help="torsion/torsionfree/ICE/IKE flags")
    add_common(sp)
    sp.add_argument(
        "--bound",
        type=int,
        default=2,
        help="multiplicity bound for the cokernel/kernel searches",
    )
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser(
        "verify-paper",
        help="recompute the bundled reference algebras and diff the golden tables",
    )
    sp.add_argument("--p", type=int, default=None, help="override the field modulus")
    sp.add_argument("--format", choices=("table", "json"), default="table")
    sp.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
