"""Complete catalogs of indecomposable modules.

A catalog is the ordered, labelled list of all indecomposables over an
algebra; every subcategory downstream is a subset of catalog indices.
Built-in generation covers line quivers (any orientation, monomial
relations) and cyclic Nakayama quivers, where the indecomposables are
exactly the interval modules.  Anything else enters through a catalog
file, with an opt-in brute-force completeness audit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .algebra import standard_module
from .repcore import (
    Representation,
    SearchCapExceeded,
    is_indecomposable,
    is_isomorphic,
)


class UnsupportedQuiverShape(ValueError):
    """interval_catalog only handles lines and oriented cycles."""


class CatalogValidationError(ValueError):
    """A catalog failed structural validation."""


@dataclass
class CatalogReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


class Catalog:
    """Ordered, labelled list of pairwise non-isomorphic indecomposables.

    Entries are sorted by (total dimension, dimension vector, label) so
    index assignments are reproducible across runs.  The instance also
    carries a memo dict used by the enumeration layers.
    """

    def __init__(self, algebra, entries):
        labels = [lab for lab, _ in entries]
        if len(set(labels)) != len(labels):
            raise CatalogValidationError("catalog labels must be unique")
        self.algebra = algebra
        self.entries = tuple(
            sorted(entries, key=lambda e: (e[1].total_dim, e[1].dims, e[0]))
        )
        self._memo: dict = {}

    def __len__(self) -> int:
        return len(self.entries)

    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.entries)

    def representations(self) -> tuple[Representation, ...]:
        return tuple(rep for _, rep in self.entries)

    def label(self, index: int) -> str:
        return self.entries[index][0]

    def representation(self, index: int) -> Representation:
        return self.entries[index][1]

    def index_of(self, label: str) -> int:
        for i, (lab, _) in enumerate(self.entries):
            if lab == label:
                return i
        raise KeyError(f"unknown catalog label {label!r}")

    def reps_for(self, indices) -> list[Representation]:
        return [self.representation(i) for i in indices]

    def __repr__(self) -> str:
        return f"Catalog({list(self.labels())})"


# ----------------------------------------------------------------------
# quiver shape detection
# ----------------------------------------------------------------------

def _line_order(quiver) -> list[str] | None:
    """Vertex order along the underlying path, or None if not a line."""
    verts = list(quiver.vertices)
    if len(quiver.arrows) != len(verts) - 1:
        return None
    adj: dict[str, list[str]] = {v: [] for v in verts}
    for a in quiver.arrows:
        if a.source == a.target:
            return None
        adj[a.source].append(a.target)
        adj[a.target].append(a.source)
    if any(len(nb) > 2 for nb in adj.values()):
        return None
    if len(verts) == 1:
        return verts
    ends = [v for v in verts if len(adj[v]) == 1]
    if len(ends) != 2:
        return None
    order = [min(ends, key=verts.index)]
    prev = None
    while len(order) < len(verts):
        nxt = [w for w in adj[order[-1]] if w != prev]
        if len(nxt) != 1:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order if len(set(order)) == len(verts) else None


def _cycle_order(quiver) -> list | None:
    """Arrows in cyclic order for an oriented cycle, or None."""
    verts = list(quiver.vertices)
    if len(quiver.arrows) != len(verts) or not verts:
        return None
    out = {v: [] for v in verts}
    indeg = {v: 0 for v in verts}
    for a in quiver.arrows:
        out[a.source].append(a)
        indeg[a.target] += 1
    if any(len(arr) != 1 for arr in out.values()) or any(
        d != 1 for d in indeg.values()
    ):
        return None
    walk = [out[verts[0]][0]]
    while len(walk) < len(verts):
        walk.append(out[walk[-1].target][0])
    seen = {a.source for a in walk}
    return walk if len(seen) == len(verts) and walk[-1].target == walk[0].source else None


def _interval_candidates(alg):
    """(vertex set, inner arrows, start, end) for every interval shape."""
    quiver = alg.quiver
    line = _line_order(quiver)
    if line is not None:
        by_pair = {}
        for a in quiver.arrows:
            by_pair[frozenset((a.source, a.target))] = a
        for i in range(len(line)):
            for j in range(i, len(line)):
                segment = line[i : j + 1]
                inner = [
                    by_pair[frozenset((segment[k], segment[k + 1]))]
                    for k in range(len(segment) - 1)
                ]
                yield segment, inner, segment[0], segment[-1]
        return
    cycle = _cycle_order(quiver)
    if cycle is not None:
        n = len(cycle)
        longest = max(
            (len(p) for paths in alg.path_basis.values() for p in paths),
            default=0,
        )
        if longest >= n:
            raise UnsupportedQuiverShape(
                "cyclic algebra has a path visiting some vertex twice; "
                "supply a custom catalog instead"
            )
        for s in range(n):
            for length in range(1, n + 1):
                arcs = [cycle[(s + k) % n] for k in range(length - 1)]
                segment = [cycle[s].source] + [a.target for a in arcs]
                yield segment, arcs, segment[0], segment[-1]
        return
    raise UnsupportedQuiverShape(
        "built-in catalogs need a line quiver or an oriented cycle; "
        "supply a custom catalog instead"
    )


def _label_for(alg, rep, start, end, *, cap=2**16) -> str:
    """Canonical label: simple, then projective, then injective, then interval."""
    verts = alg.quiver.vertices
    if rep.total_dim == 1:
        return f"S{rep.support()[0]}"
    for kind, prefix in (("projective", "P"), ("injective", "I")):
        for v in verts:
            std = standard_module(alg, kind, v)
            if std.dims == rep.dims and is_isomorphic(std, rep, cap=cap):
                return f"{prefix}{v}"
    return f"M[{start}..{end}]"


def interval_catalog(alg, *, cap: int = 2**16) -> Catalog:
    """All interval modules of a line or cyclic Nakayama algebra.

    An interval module is one-dimensional on a connected stretch of
    vertices with identity maps on the inner arrows; exactly those
    stretches avoiding every relation survive.  For the supported
    quiver shapes this list is complete and irredundant.
    """
    verts = alg.quiver.vertices
    f = alg.field
    entries = []
    for segment, inner, start, end in _interval_candidates(alg):
        member = set(segment)
        inner_names = {a.name for a in inner}
        dims = tuple(1 if v in member else 0 for v in verts)
        action = {}
        for a in alg.quiver.arrows:
            shape = (
                dims[verts.index(a.target)],
                dims[verts.index(a.source)],
            )
            mat = f.zeros(*shape)
            if a.name in inner_names:
                mat[0, 0] = 1
            action[a.name] = mat
        try:
            rep = Representation(alg, dims, action)
        except Exception:
            continue
        entries.append((_label_for(alg, rep, start, end, cap=cap), rep))
    return Catalog(alg, entries)


# ----------------------------------------------------------------------
# catalog files
# ----------------------------------------------------------------------

def catalog_to_dict(cat: Catalog) -> dict:
    """Serializable form matching the catalog file schema."""
    return {
        "algebra_hash": cat.algebra.fingerprint(),
        "entries": [
            {
                "label": lab,
                "dims": list(rep.dims),
                "action": {
                    name: mat.tolist() for name, mat in sorted(rep.action.items())
                },
            }
            for lab, rep in cat.entries
        ],
    }


def load_catalog(alg, source) -> Catalog:
    """Load and validate a catalog file (path, file object, or dict)."""
    if isinstance(source, dict):
        data = source
    elif hasattr(source, "read"):
        data = json.load(source)
    else:
        with open(source) as fh:
            data = json.load(fh)
    if "entries" not in data:
        raise CatalogValidationError("catalog file has no 'entries' field")
    expected = alg.fingerprint()
    got = data.get("algebra_hash")
    if got is not None and got != expected:
        raise CatalogValidationError(
            f"catalog was built for algebra {got}, not {expected}"
        )
    entries = []
    for k, item in enumerate(data["entries"]):
        try:
            rep = Representation(alg, item["dims"], item.get("action", {}))
        except Exception as exc:
            raise CatalogValidationError(f"entry {k}: {exc}") from exc
        entries.append((item["label"], rep))
    cat = Catalog(alg, entries)
    report = validate_catalog(cat)
    if not report.ok:
        raise CatalogValidationError("; ".join(report.errors))
    return cat


def validate_catalog(
    cat: Catalog,
    *,
    check_completeness: bool = False,
    max_dims=None,
    cap: int = 2**16,
) -> CatalogReport:
    """Structural audit of a catalog.

    Checks that every entry respects the relations, is indecomposable
    (exhaustive idempotent search), and that entries are pairwise
    non-isomorphic.  With ``check_completeness`` the brute-force oracle
    is run and missing indecomposables are reported as warnings.
    """
    report = CatalogReport()
    reps = cat.representations()
    labels = cat.labels()
    for lab, rep in cat.entries:
        for rel in cat.algebra.relations:
            if rep.path_matrix(rel.path).any():
                report.errors.append(f"{lab}: relation {rel.path} not satisfied")
        if rep.total_dim == 0:
            report.errors.append(f"{lab}: the zero module is not indecomposable")
        elif not is_indecomposable(rep, cap=cap):
            report.errors.append(f"{lab}: idempotent found, entry decomposes")
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if reps[i].dims == reps[j].dims and is_isomorphic(
                reps[i], reps[j], cap=cap
            ):
                report.errors.append(
                    f"{labels[i]} and {labels[j]} are isomorphic duplicates"
                )
    if check_completeness:
        if max_dims is None:
            max_dims = (1,) * len(cat.algebra.quiver.vertices)
        oracle = bruteforce_indecomposables(cat.algebra, max_dims)
        for lab, rep in oracle.entries:
            found = any(
                rep.dims == other.dims and is_isomorphic(rep, other, cap=cap)
                for other in reps
            )
            if not found:
                report.warnings.append(
                    f"incomplete: no entry isomorphic to {lab} (dims {rep.dims})"
                )
    return report


def bruteforce_indecomposables(alg, max_dims, *, cap: int = 10**6) -> Catalog:
    """Independent completeness oracle by exhaustive enumeration.

    Enumerates every relation-respecting representation with dimension
    vector bounded entrywise by ``max_dims``, keeps the indecomposable
    ones, and dedupes up to isomorphism.
    """
    verts = alg.quiver.vertices
    f = alg.field
    arrows = alg.quiver.arrows
    max_dims = tuple(int(m) for m in max_dims)
    if len(max_dims) != len(verts):
        raise ValueError("max_dims must list one bound per vertex")

    total = 0
    dim_vectors = [
        dv for dv in product(*(range(m + 1) for m in max_dims)) if any(dv)
    ]
    for dv in dim_vectors:
        count = 1
        for a in arrows:
            count *= f.p ** (
                dv[verts.index(a.target)] * dv[verts.index(a.source)]
            )
        total += count
    if total > cap:
        raise SearchCapExceeded(
            f"brute-force space has {total} candidates, above the cap {cap}"
        )

    found: list[Representation] = []
    for dv in dim_vectors:
        shapes = [
            (dv[verts.index(a.target)], dv[verts.index(a.source)]) for a in arrows
        ]
        pools = [
            [
                np.array(flat, dtype=np.int64).reshape(shape)
                for flat in product(range(f.p), repeat=shape[0] * shape[1])
            ]
            for shape in shapes
        ]
        for mats in product(*pools):
            action = {a.name: m for a, m in zip(arrows, mats)}
            try:
                rep = Representation(alg, dv, action)
            except Exception:
                continue
            if not is_indecomposable(rep):
                continue
            if any(
                rep.dims == r.dims and is_isomorphic(rep, r) for r in found
            ):
                continue
            found.append(rep)

    entries = []
    used = set()
    for k, rep in enumerate(found):
        supp = rep.support()
        start = supp[0] if supp else ""
        end = supp[-1] if supp else ""
        label = _label_for(alg, rep, start, end)
        if label in used:
            label = f"{label}#{k}"
        used.add(label)
        entries.append((label, rep))
    return Catalog(alg, entries)
