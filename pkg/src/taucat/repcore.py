"""Quiver representations, morphisms, and exact constructions.

A representation assigns a GF(p) vector space to each vertex and a
matrix to each arrow (shape: target dimension x source dimension),
subject to every monomial relation composing to zero.  Morphisms are
vertex-wise matrices intertwining the arrow actions.

Everything here is pure and deterministic: submodules come with
canonical echelon inclusion matrices, so repeated runs produce
identical data.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product

import numpy as np


class RepresentationError(ValueError):
    """Malformed representation or morphism data."""


class SearchCapExceeded(RuntimeError):
    """An exhaustive search space exceeded its configured cap."""


class DecompositionError(RuntimeError):
    """A module could not be matched against the catalog."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.flags.writeable = False
    return arr


class Representation:
    """A module over a bound quiver algebra.

    Attributes:
        algebra: the ambient BoundQuiverAlgebra.
        dims: per-vertex dimensions, ordered like ``algebra.quiver.vertices``.
        action: arrow name -> matrix of shape (dims[target], dims[source]).
    """

    def __init__(self, algebra, dims, action, *, check=True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        verts = algebra.quiver.vertices
        if len(self.dims) != len(verts):
            raise RepresentationError(
                f"dimension vector has length {len(self.dims)}, expected {len(verts)}"
            )
        if any(d < 0 for d in self.dims):
            raise RepresentationError("dimensions must be non-negative")
        f = algebra.field
        acts = {}
        for a in algebra.quiver.arrows:
            shape = (self.dims[verts.index(a.target)], self.dims[verts.index(a.source)])
            mat = action.get(a.name)
            if mat is None:
                mat = f.zeros(*shape)
            else:
                mat = np.asarray(mat, dtype=np.int64) % f.p
                if mat.size == 0 and shape[0] * shape[1] == 0:
                    mat = mat.reshape(shape)
                if mat.shape != shape:
                    raise RepresentationError(
                        f"arrow {a.name}: matrix shape {mat.shape} != {shape}"
                    )
            acts[a.name] = _freeze(mat)
        self.action = acts
        if check:
            self._check_relations()

    def _check_relations(self):
        for rel in self.algebra.relations:
            if self.path_matrix(rel.path).any():
                raise RepresentationError(
                    f"relation {rel.path} does not act by zero"
                )

    # ------------------------------------------------------------------
    def dim_at(self, vertex: str) -> int:
        return self.dims[self.algebra.quiver.vertex_index(vertex)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    def support(self) -> tuple[str, ...]:
        verts = self.algebra.quiver.vertices
        return tuple(v for v, d in zip(verts, self.dims) if d > 0)

    def path_matrix(self, arrows) -> np.ndarray:
        """Composite matrix of an arrow sequence (left-to-right order)."""
        quiver = self.algebra.quiver
        first = quiver.arrow(arrows[0])
        mat = self.action[arrows[0]]
        for name in arrows[1:]:
            mat = (self.action[name] @ mat) % self.algebra.field.p
        return mat

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"


def zero_module(algebra) -> Representation:
    return Representation(algebra, (0,) * len(algebra.quiver.vertices), {})


class Morphism:
    """A vertex-wise linear map intertwining two representations."""

    def __init__(self, source, target, components, *, check=True):
        if source.algebra is not target.algebra:
            raise RepresentationError("morphisms need a common algebra")
        self.source = source
        self.target = target
        f = source.algebra.field
        comps = []
        for v, (sd, td) in enumerate(zip(source.dims, target.dims)):
            mat = np.asarray(components[v], dtype=np.int64) % f.p
            if mat.shape != (td, sd):
                raise RepresentationError(
                    f"vertex {v}: component shape {mat.shape} != {(td, sd)}"
                )
            comps.append(_freeze(mat))
        self.components = tuple(comps)
        if check:
            self._check_intertwining()

    def _check_intertwining(self):
        alg = self.source.algebra
        p = alg.field.p
        verts = alg.quiver.vertices
        for a in alg.quiver.arrows:
            i, j = verts.index(a.source), verts.index(a.target)
            lhs = (self.target.action[a.name] @ self.components[i]) % p
            rhs = (self.components[j] @ self.source.action[a.name]) % p
            if not np.array_equal(lhs, rhs):
                raise RepresentationError(
                    f"components do not intertwine arrow {a.name}"
                )

    @property
    def is_injective(self) -> bool:
        f = self.source.algebra.field
        return all(
            f.rank(c) == c.shape[1] for c in self.components
        )

    @property
    def is_surjective(self) -> bool:
        f = self.source.algebra.field
        return all(
            f.rank(c) == c.shape[0] for c in self.components
        )

    @property
    def is_zero(self) -> bool:
        return not any(c.any() for c in self.components)

    def then(self, other: "Morphism") -> "Morphism":
        """Composite ``self`` followed by ``other``."""
        if other.source is not self.target:
            raise RepresentationError("composition target/source mismatch")
        p = self.source.algebra.field.p
        comps = [
            (g @ f) % p for f, g in zip(self.components, other.components)
        ]
        return Morphism(self.source, other.target, comps, check=False)

    def __repr__(self) -> str:
        return f"Morphism({self.source.dims} -> {self.target.dims})"


def identity_morphism(X: Representation) -> Morphism:
    f = X.algebra.field
    return Morphism(X, X, [f.identity(d) for d in X.dims], check=False)


# ----------------------------------------------------------------------
# Hom spaces
# ----------------------------------------------------------------------

def hom_basis(X: Representation, Y: Representation) -> list[Morphism]:
    """A canonical basis of the space of morphisms X -> Y.

    The intertwining constraints for all arrows form one linear system
    over GF(p); its canonical kernel basis gives the morphism basis.
    """
    if X.algebra is not Y.algebra:
        raise RepresentationError("hom_basis needs a common algebra")
    alg = X.algebra
    f = alg.field
    verts = alg.quiver.vertices
    sizes = [Y.dims[v] * X.dims[v] for v in range(len(verts))]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    if total == 0:
        return []

    rows = []
    for a in alg.quiver.arrows:
        i, j = verts.index(a.source), verts.index(a.target)
        n_eq = Y.dims[j] * X.dims[i]
        if n_eq == 0:
            continue
        block = f.zeros(n_eq, total)
        # vec(Y_a f_i) = kron(Y_a, I) vec(f_i); vec(f_j X_a) = kron(I, X_a^T) vec(f_j)
        if sizes[i]:
            block[:, offsets[i] : offsets[i + 1]] = np.kron(
                Y.action[a.name], f.identity(X.dims[i])
            )
        if sizes[j]:
            block[:, offsets[j] : offsets[j + 1]] = (
                block[:, offsets[j] : offsets[j + 1]]
                - np.kron(f.identity(Y.dims[j]), X.action[a.name].T)
            ) % f.p
        rows.append(block)

    if rows:
        system = np.vstack(rows) % f.p
        kernel = f.kernel_basis(system)
    else:
        kernel = f.identity(total)

    basis = []
    for k in range(kernel.shape[1]):
        vec = kernel[:, k]
        comps = [
            vec[offsets[v] : offsets[v + 1]].reshape(Y.dims[v], X.dims[v])
            for v in range(len(verts))
        ]
        basis.append(Morphism(X, Y, comps, check=False))
    return basis


def hom_dim(X: Representation, Y: Representation) -> int:
    return len(hom_basis(X, Y))


# ----------------------------------------------------------------------
# Kernels, images, cokernels
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MorphismParts:
    kernel: Representation
    kernel_inclusion: Morphism
    image: Representation
    image_inclusion: Morphism
    cokernel: Representation
    cokernel_projection: Morphism


def _subrep_from_columns(X: Representation, bases: list[np.ndarray]):
    """Submodule of X spanned vertex-wise by the given basis columns.

    The spans must be arrow-stable; the induced action is solved for in
    the chosen bases.
    """
    alg = X.algebra
    f = alg.field
    verts = alg.quiver.vertices
    dims = tuple(b.shape[1] for b in bases)
    action = {}
    for a in alg.quiver.arrows:
        i, j = verts.index(a.source), verts.index(a.target)
        mapped = (X.action[a.name] @ bases[i]) % f.p
        coords = f.solve_matrix(bases[j], mapped)
        if coords is None:
            raise RepresentationError("span is not arrow-stable")
        action[a.name] = coords
    sub = Representation(alg, dims, action, check=False)
    incl = Morphism(sub, X, bases, check=False)
    return sub, incl


def _quotient_by_columns(X: Representation, bases: list[np.ndarray]):
    """Quotient of X by the arrow-stable span of the given columns."""
    alg = X.algebra
    f = alg.field
    verts = alg.quiver.vertices
    projs = []
    for v, b in enumerate(bases):
        # Rows spanning the annihilator of the span: canonical projection.
        projs.append(f.kernel_basis(b.T).T)
    dims = tuple(pr.shape[0] for pr in projs)
    action = {}
    for a in alg.quiver.arrows:
        i, j = verts.index(a.source), verts.index(a.target)
        rhs = (projs[j] @ X.action[a.name]) % f.p
        sol = f.solve_matrix(projs[i].T, rhs.T)
        if sol is None:
            raise RepresentationError("span is not arrow-stable")
        action[a.name] = sol.T
    quot = Representation(alg, dims, action, check=False)
    proj = Morphism(X, quot, projs, check=False)
    return quot, proj


def morphism_parts(f: Morphism) -> MorphismParts:
    """Kernel, image and cokernel of a morphism, with structure maps."""
    field = f.source.algebra.field
    ker_bases = [field.kernel_basis(c) for c in f.components]
    kernel, ker_incl = _subrep_from_columns(f.source, ker_bases)
    im_bases = [field.image_basis(c) for c in f.components]
    image, im_incl = _subrep_from_columns(f.target, im_bases)
    cokernel, coker_proj = _quotient_by_columns(f.target, im_bases)
    return MorphismParts(kernel, ker_incl, image, im_incl, cokernel, coker_proj)


def quotient_by(X: Representation, inclusion: Morphism):
    """Quotient of X by a submodule given via its inclusion.

    Returns ``(quotient, projection)``.
    """
    if inclusion.target is not X:
        raise RepresentationError("inclusion does not land in the module")
    if not inclusion.is_injective:
        raise RepresentationError("not a valid inclusion: components not injective")
    return _quotient_by_columns(X, list(inclusion.components))


# ----------------------------------------------------------------------
# Direct sums and isomorphism
# ----------------------------------------------------------------------

def direct_sum(algebra, parts) -> Representation:
    """Block-diagonal sum; the empty list yields the zero module."""
    parts = list(parts)
    if not parts:
        return zero_module(algebra)
    f = algebra.field
    verts = algebra.quiver.vertices
    dims = tuple(sum(p.dims[v] for p in parts) for v in range(len(verts)))
    action = {}
    for a in algebra.quiver.arrows:
        i, j = verts.index(a.source), verts.index(a.target)
        mat = f.zeros(dims[j], dims[i])
        ro = co = 0
        for p in parts:
            block = p.action[a.name]
            mat[ro : ro + block.shape[0], co : co + block.shape[1]] = block
            ro += block.shape[0]
            co += block.shape[1]
        action[a.name] = mat
    return Representation(algebra, dims, action, check=False)


def is_isomorphic(X: Representation, Y: Representation, *, cap: int = 2**16) -> bool:
    """Isomorphism test by exhaustive search of the Hom space.

    All ``p^dim Hom(X, Y)`` morphisms are tried with early exit; the
    guard fails loudly if that count exceeds ``cap``.
    """
    if X.algebra is not Y.algebra:
        raise RepresentationError("is_isomorphic needs a common algebra")
    if X.dims != Y.dims:
        return False
    if X.total_dim == 0:
        return True
    f = X.algebra.field
    basis = hom_basis(X, Y)
    d = len(basis)
    if d == 0:
        return False
    if f.p**d > cap:
        raise SearchCapExceeded(
            f"Hom space has {f.p}^{d} elements, above the cap {cap}"
        )
    stacks = [
        np.stack([g.components[v] for g in basis])
        for v in range(len(X.dims))
    ]
    for coeffs in product(range(f.p), repeat=d):
        if not any(coeffs):
            continue
        c = np.array(coeffs, dtype=np.int64)
        ok = True
        for v, stack in enumerate(stacks):
            if X.dims[v] == 0:
                continue
            comp = np.tensordot(c, stack, axes=1) % f.p
            if f.rank(comp) != X.dims[v]:
                ok = False
                break
        if ok:
            return True
    return False


def has_nontrivial_idempotent(X: Representation, *, cap: int = 2**16) -> bool:
    """Search End(X) exhaustively for an idempotent other than 0 and 1."""
    if X.total_dim == 0:
        return False
    f = X.algebra.field
    basis = hom_basis(X, X)
    d = len(basis)
    if f.p**d > cap:
        raise SearchCapExceeded(
            f"End space has {f.p}^{d} elements, above the cap {cap}"
        )
    idents = [f.identity(dim) for dim in X.dims]
    stacks = [
        np.stack([g.components[v] for g in basis])
        for v in range(len(X.dims))
    ]
    for coeffs in product(range(f.p), repeat=d):
        if not any(coeffs):
            continue
        c = np.array(coeffs, dtype=np.int64)
        comps = [
            np.tensordot(c, stack, axes=1) % f.p if X.dims[v] else stack[0][:0, :0]
            for v, stack in enumerate(stacks)
        ]
        if all(
            np.array_equal((m @ m) % f.p, m) for m in comps
        ) and not all(np.array_equal(m, idents[v]) for v, m in enumerate(comps)):
            return True
    return False


def is_indecomposable(X: Representation, *, cap: int = 2**16) -> bool:
    return X.total_dim > 0 and not has_nontrivial_idempotent(X, cap=cap)


# ----------------------------------------------------------------------
# Trace, reject, radical, covers
# ----------------------------------------------------------------------

def trace_of_family(family, X: Representation):
    """Largest submodule of X generated by the given modules.

    Spanned vertex-wise by the images of all basis morphisms from each
    family member into X.  Returns ``(submodule, inclusion)``.
    """
    f = X.algebra.field
    cols = [f.zeros(d, 0) for d in X.dims]
    for member in family:
        for g in hom_basis(member, X):
            cols = [
                np.hstack([c, comp]) for c, comp in zip(cols, g.components)
            ]
    bases = [f.image_basis(c) for c in cols]
    return _subrep_from_columns(X, bases)


def reject_of_family(family, X: Representation):
    """Common kernel of all morphisms from X into the given modules.

    The quotient of X by the reject is the largest quotient cogenerated
    by the family.  Returns ``(submodule, inclusion)``.
    """
    f = X.algebra.field
    rows = [f.zeros(0, d) for d in X.dims]
    for member in family:
        for g in hom_basis(X, member):
            rows = [
                np.vstack([r, comp]) for r, comp in zip(rows, g.components)
            ]
    bases = [f.kernel_basis(r) for r in rows]
    return _subrep_from_columns(X, bases)


@dataclass(frozen=True)
class RadicalTop:
    radical: Representation
    inclusion: Morphism
    top: Representation
    projection: Morphism


def radical_and_top(X: Representation) -> RadicalTop:
    """Radical (sum of arrow images) and the semisimple top X/rad X."""
    alg = X.algebra
    f = alg.field
    verts = alg.quiver.vertices
    incoming = [f.zeros(d, 0) for d in X.dims]
    for a in alg.quiver.arrows:
        j = verts.index(a.target)
        incoming[j] = np.hstack([incoming[j], X.action[a.name]])
    bases = [f.image_basis(c) for c in incoming]
    radical, incl = _subrep_from_columns(X, bases)
    top, proj = _quotient_by_columns(X, bases)
    return RadicalTop(radical, incl, top, proj)


def projective_cover(X: Representation) -> Morphism:
    """The minimal surjection from a projective module onto X.

    The cover is a sum of vertex projectives matching the top of X;
    the map sends each generator to a chosen lift of a top basis
    vector, extended along paths.
    """
    from .algebra import standard_module

    if X.is_zero:
        raise RepresentationError("the zero module has no projective cover")
    alg = X.algebra
    f = alg.field
    verts = alg.quiver.vertices
    rt = radical_and_top(X)
    lifts = {}
    summands = []
    for v_idx, v in enumerate(verts):
        t = rt.top.dims[v_idx]
        if t == 0:
            continue
        sol = f.solve_matrix(rt.projection.components[v_idx], f.identity(t))
        lifts[v] = sol
        for k in range(t):
            summands.append((v, k))
    projectives = {v: standard_module(alg, "projective", v) for v, _ in summands}
    cover = direct_sum(alg, [projectives[v] for v, _ in summands])

    comps = []
    for w_idx, w in enumerate(verts):
        blocks = []
        for v, k in summands:
            paths = alg.path_basis[(v, w)]
            block = f.zeros(X.dims[w_idx], len(paths))
            gen = lifts[v][:, k]
            for col, path in enumerate(paths):
                if path.arrows:
                    vec = (X.path_matrix(path.arrows) @ gen) % f.p
                else:
                    vec = gen
                block[:, col] = vec
            blocks.append(block)
        comps.append(np.hstack(blocks) if blocks else f.zeros(X.dims[w_idx], 0))
    cover_map = Morphism(cover, X, comps)
    if not cover_map.is_surjective:
        raise RepresentationError("projective cover construction failed")
    return cover_map


# ----------------------------------------------------------------------
# Submodule enumeration
# ----------------------------------------------------------------------

def _all_subspaces(field, dim: int) -> list[np.ndarray]:
    """Every subspace of GF(p)^dim as canonical echelon row matrices."""
    zero = field.zeros(0, dim)
    seen = {zero.tobytes(): zero}
    frontier = [zero]
    vectors = [
        np.array(t, dtype=np.int64)
        for t in product(range(field.p), repeat=dim)
        if any(t)
    ]
    while frontier:
        nxt = []
        for rows in frontier:
            for v in vectors:
                if field.solve(rows.T, v) is not None:
                    continue
                R, piv = field.rref(np.vstack([rows, v]))
                new = R[: len(piv)].copy()
                key = new.tobytes()
                if key not in seen:
                    seen[key] = new
                    nxt.append(new)
        frontier = nxt
    return sorted(seen.values(), key=lambda r: (r.shape[0], r.tobytes()))


def submodules_of(X: Representation, *, cap: int = 8):
    """All submodules of X, as ``(submodule, inclusion)`` pairs.

    Enumerates arrow-stable tuples of vertex subspaces; canonical
    echelon bases make the output deterministic.  Guarded by a total
    dimension cap because the subspace count grows quickly.
    """
    if X.total_dim > cap:
        raise SearchCapExceeded(
            f"total dimension {X.total_dim} exceeds the submodule cap {cap}"
        )
    alg = X.algebra
    f = alg.field
    verts = alg.quiver.vertices
    per_vertex = [_all_subspaces(f, d) for d in X.dims]
    out = []
    for combo in product(*per_vertex):
        bases = [rows.T.copy() for rows in combo]
        stable = True
        for a in alg.quiver.arrows:
            i, j = verts.index(a.source), verts.index(a.target)
            mapped = (X.action[a.name] @ bases[i]) % f.p
            if f.solve_matrix(bases[j], mapped) is None:
                stable = False
                break
        if stable:
            out.append(_subrep_from_columns(X, bases))
    return out


# ----------------------------------------------------------------------
# Duality and decomposition
# ----------------------------------------------------------------------

def dualize(X: Representation) -> Representation:
    """The dual module over the opposite algebra (transposed actions)."""
    op = X.algebra.opposite
    action = {a.name: X.action[a.name].T for a in op.quiver.arrows}
    return Representation(op, X.dims, action, check=False)


def dualize_morphism(g: Morphism) -> Morphism:
    """Duality is contravariant: a map X -> Y dualizes to DY -> DX."""
    return Morphism(
        dualize(g.target),
        dualize(g.source),
        [c.T for c in g.components],
        check=False,
    )


def decompose(Y: Representation, cat, *, cap: int = 2**16) -> Counter:
    """Express Y as a multiset of catalog indices, up to isomorphism.

    Candidate multisets are generated from the dimension-vector
    constraint and confirmed with ``is_isomorphic``.  Raises
    DecompositionError when nothing matches (incomplete catalog).
    """
    target = np.array(Y.dims, dtype=np.int64)
    entries = list(enumerate(cat.representations()))

    def search(idx, remaining, picked):
        if not remaining.any():
            yield Counter(picked)
            return
        if idx == len(entries):
            return
        i, rep = entries[idx]
        d = np.array(rep.dims, dtype=np.int64)
        max_mult = int(min(remaining[d > 0] // d[d > 0])) if (d > 0).any() else 0
        for mult in range(max_mult, -1, -1):
            rest = remaining - mult * d
            if (rest >= 0).all():
                yield from search(idx + 1, rest, picked + [i] * mult)

    for candidate in search(0, target, []):
        parts = []
        for i in sorted(candidate.elements()):
            parts.append(cat.representation(i))
        if is_isomorphic(direct_sum(Y.algebra, parts), Y, cap=cap):
            return candidate
    raise DecompositionError(
        f"module with dims {Y.dims} is not identifiable in the catalog"
    )
