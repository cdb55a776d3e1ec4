"""Bound quiver algebras: quivers, monomial relations, path bases.

An algebra is presented by a quiver together with monomial (zero)
relations.  The path basis is computed by breadth-first enumeration,
discarding any path that contains a relation as a contiguous subpath.
Paths compose left to right: the path ``(a, b)`` means "a then b", so
a relation ``ab = 0`` on ``1 -> 2 -> 3`` kills the length-two path
through vertex 2.

Right modules are realised as covariant quiver representations: the
projective at vertex ``v`` has basis the surviving paths starting at
``v``, and arrows act by path extension.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .linalg import FieldSpec


class QuiverError(ValueError):
    """Malformed quiver or relation data."""


class InfiniteDimensionError(RuntimeError):
    """Path enumeration exceeded the length cap."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with labelled vertices and named arrows."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("arrow names must be unique")
        declared = set(self.vertices)
        for a in self.arrows:
            if a.source not in declared or a.target not in declared:
                raise QuiverError(
                    f"arrow {a.name}: endpoints {a.source}->{a.target} not declared"
                )

    def vertex_index(self, label: str) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise QuiverError(f"unknown vertex {label!r}") from None

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise QuiverError(f"unknown arrow {name!r}")


@dataclass(frozen=True)
class MonomialRelation:
    """A zero relation: a composable path of length >= 2."""

    path: tuple[str, ...]

    def __post_init__(self):
        if len(self.path) < 2:
            raise QuiverError("a monomial relation needs at least two arrows")


def _validate_relations(quiver: Quiver, relations) -> tuple[MonomialRelation, ...]:
    rels = []
    for rel in relations:
        if not isinstance(rel, MonomialRelation):
            rel = MonomialRelation(tuple(rel))
        arrows = [quiver.arrow(n) for n in rel.path]
        for first, second in zip(arrows, arrows[1:]):
            if first.target != second.source:
                raise QuiverError(
                    f"relation {rel.path}: {first.name} ends at {first.target} "
                    f"but {second.name} starts at {second.source}"
                )
        rels.append(rel)
    return tuple(rels)


@dataclass(frozen=True)
class Path:
    """A (possibly trivial) composable sequence of arrows."""

    source: str
    target: str
    arrows: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.arrows)


class BoundQuiverAlgebra:
    """Path algebra of a quiver modulo monomial relations, over GF(p).

    Attributes:
        quiver: the underlying quiver.
        relations: the validated monomial relations.
        field: the base prime field.
        path_basis: dict mapping ``(i, j)`` vertex-label pairs to the
            ordered list of surviving paths from i to j.
    """

    def __init__(self, quiver, relations, field_spec, length_cap=64):
        self.quiver = quiver
        self.relations = _validate_relations(quiver, relations)
        self.field = field_spec
        self.length_cap = length_cap
        self.path_basis = self._enumerate_paths()
        self._opposite: BoundQuiverAlgebra | None = None

    # ------------------------------------------------------------------
    def _relation_paths(self) -> set[tuple[str, ...]]:
        return {r.path for r in self.relations}

    def _contains_relation(self, arrows: tuple[str, ...]) -> bool:
        for rel in self._relation_paths():
            k = len(rel)
            if any(arrows[i : i + k] == rel for i in range(len(arrows) - k + 1)):
                return True
        return False

    def _enumerate_paths(self):
        by_source = {}
        for a in self.quiver.arrows:
            by_source.setdefault(a.source, []).append(a)
        basis = {
            (i, j): [] for i in self.quiver.vertices for j in self.quiver.vertices
        }
        frontier = [Path(v, v, ()) for v in self.quiver.vertices]
        for p in frontier:
            basis[(p.source, p.target)].append(p)
        while frontier:
            nxt = []
            for p in frontier:
                for a in by_source.get(p.target, ()):
                    arrows = p.arrows + (a.name,)
                    if self._contains_relation(arrows):
                        continue
                    if len(arrows) > self.length_cap:
                        raise InfiniteDimensionError(
                            "algebra appears infinite-dimensional: a surviving "
                            f"path exceeded the length cap {self.length_cap}"
                        )
                    q = Path(p.source, a.target, arrows)
                    basis[(q.source, q.target)].append(q)
                    nxt.append(q)
            frontier = nxt
        return basis

    # ------------------------------------------------------------------
    @property
    def dimension(self) -> int:
        return sum(len(paths) for paths in self.path_basis.values())

    def paths_from(self, v: str) -> list[Path]:
        return [
            p for w in self.quiver.vertices for p in self.path_basis[(v, w)]
        ]

    def paths_to(self, v: str) -> list[Path]:
        return [
            p for w in self.quiver.vertices for p in self.path_basis[(w, v)]
        ]

    def survives(self, arrows: tuple[str, ...]) -> bool:
        """Does this arrow sequence avoid every relation subpath?"""
        return not self._contains_relation(arrows)

    @property
    def opposite(self) -> "BoundQuiverAlgebra":
        """The opposite algebra; its own opposite is this algebra again."""
        if self._opposite is None:
            op = opposite_algebra(self)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def fingerprint(self) -> str:
        """Stable hash of the presentation, used to key catalog files."""
        payload = {
            "vertices": list(self.quiver.vertices),
            "arrows": [[a.name, a.source, a.target] for a in self.quiver.arrows],
            "relations": [list(r.path) for r in self.relations],
            "p": self.field.p,
        }
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __repr__(self) -> str:
        return (
            f"BoundQuiverAlgebra({len(self.quiver.vertices)} vertices, "
            f"{len(self.quiver.arrows)} arrows, dim {self.dimension}, "
            f"GF({self.field.p}))"
        )


def build_algebra(quiver, relations=(), field_spec=None, length_cap=64):
    """Construct a bound quiver algebra, enumerating its path basis."""
    if field_spec is None:
        field_spec = FieldSpec(2)
    return BoundQuiverAlgebra(quiver, relations, field_spec, length_cap)


def opposite_algebra(alg: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    """Reverse all arrows and relations; the dimension is preserved."""
    q = alg.quiver
    op_quiver = Quiver(
        q.vertices,
        tuple(Arrow(a.name, a.target, a.source) for a in q.arrows),
    )
    op_rels = tuple(
        MonomialRelation(tuple(reversed(r.path))) for r in alg.relations
    )
    return BoundQuiverAlgebra(op_quiver, op_rels, alg.field, alg.length_cap)


def standard_module(alg, kind, vertex):
    """The simple, projective or injective module at ``vertex``.

    The projective has basis the surviving paths starting at the vertex
    (arrows act by path extension); the injective dually has basis the
    paths ending there.
    """
    from .repcore import Representation

    if vertex not in alg.quiver.vertices:
        raise QuiverError(f"unknown vertex {vertex!r}")
    verts = alg.quiver.vertices
    f = alg.field

    if kind == "simple":
        dims = tuple(1 if v == vertex else 0 for v in verts)
        action = {
            a.name: f.zeros(dims[verts.index(a.target)], dims[verts.index(a.source)])
            for a in alg.quiver.arrows
        }
        return Representation(alg, dims, action)

    if kind == "projective":
        basis = {v: alg.path_basis[(vertex, v)] for v in verts}
        dims = tuple(len(basis[v]) for v in verts)
        action = {}
        for a in alg.quiver.arrows:
            src, tgt = basis[a.source], basis[a.target]
            mat = f.zeros(len(tgt), len(src))
            index = {p.arrows: k for k, p in enumerate(tgt)}
            for j, p in enumerate(src):
                extended = p.arrows + (a.name,)
                if extended in index:
                    mat[index[extended], j] = 1
            action[a.name] = mat
        return Representation(alg, dims, action)

    if kind == "injective":
        basis = {v: alg.path_basis[(v, vertex)] for v in verts}
        dims = tuple(len(basis[v]) for v in verts)
        action = {}
        for a in alg.quiver.arrows:
            src, tgt = basis[a.source], basis[a.target]
            mat = f.zeros(len(tgt), len(src))
            index = {p.arrows: k for k, p in enumerate(tgt)}
            for j, p in enumerate(src):
                # A path q from the arrow's source factors as a * q'
                # exactly when it starts with the arrow; it then maps to q'.
                if p.arrows and p.arrows[0] == a.name:
                    rest = p.arrows[1:]
                    if rest in index:
                        mat[index[rest], j] = 1
            action[a.name] = mat
        return Representation(alg, dims, action)

    raise ValueError(f"kind must be simple/projective/injective, got {kind!r}")
