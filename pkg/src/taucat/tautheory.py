"""Ext groups, the AR translate, and support tau-tilting enumeration.

The translate of an indecomposable is computed from a minimal
projective presentation: transposing it (Hom into the algebra, read as
a map of projectives over the opposite algebra) and dualizing the
cokernel.  Support tau-tilting modules are recognised through the
rigid-pair criterion: the sum is tau-rigid and has exactly one summand
per support vertex.

All per-catalog results are memoized on the catalog instance, so
enumeration layers above stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .algebra import standard_module
from .repcore import (
    Morphism,
    direct_sum,
    dualize,
    hom_basis,
    hom_dim,
    morphism_parts,
    projective_cover,
    radical_and_top,
    zero_module,
)


@dataclass(frozen=True)
class STTPair:
    """A support tau-tilting pair: module summands plus the projective
    complement, stored as catalog indices and vertex labels."""

    module: tuple[int, ...]
    proj_complement: tuple[str, ...]
    side: str  # "plus" or "minus"
    support: tuple[str, ...]


def _flatten(g: Morphism) -> np.ndarray:
    return np.concatenate([c.ravel() for c in g.components]) if g.components else np.zeros(0, dtype=np.int64)


def ext1_dim(A, B) -> int:
    """dim Ext^1(A, B) from the projective cover sequence of A.

    With 0 -> K -> P0 -> A -> 0, this is the cokernel dimension of the
    restriction map Hom(P0, B) -> Hom(K, B).  Projective A gives 0.
    """
    if A.is_zero:
        return 0
    f = A.algebra.field
    cover = projective_cover(A)
    parts = morphism_parts(cover)
    K, incl = parts.kernel, parts.kernel_inclusion
    if K.is_zero:
        return 0
    basis_k = hom_basis(K, B)
    if not basis_k:
        return 0
    restricted = [
        _flatten(incl.then(g)) for g in hom_basis(cover.source, B)
    ]
    if not restricted:
        return len(basis_k)
    rank = f.rank(np.stack(restricted, axis=1))
    return len(basis_k) - rank


# ----------------------------------------------------------------------
# the AR translate
# ----------------------------------------------------------------------

def _map_from_projectives(alg, summand_vertices, target, gen_cols) -> Morphism:
    """Morphism out of a sum of vertex projectives, from generator images.

    A map from P_v is determined by where the trivial-path generator
    goes; every other basis path follows by acting along the path.
    """
    f = alg.field
    verts = alg.quiver.vertices
    projs = [standard_module(alg, "projective", v) for v in summand_vertices]
    source = direct_sum(alg, projs)
    comps = []
    for w_idx, w in enumerate(verts):
        blocks = []
        for v, gen in zip(summand_vertices, gen_cols):
            paths = alg.path_basis[(v, w)]
            block = f.zeros(target.dims[w_idx], len(paths))
            for col, path in enumerate(paths):
                if path.arrows:
                    block[:, col] = (target.path_matrix(path.arrows) @ gen) % f.p
                else:
                    block[:, col] = gen
            blocks.append(block)
        comps.append(
            np.hstack(blocks) if blocks else f.zeros(target.dims[w_idx], 0)
        )
    return Morphism(source, target, comps)


def _cover_summands(X) -> list[str]:
    """Vertices of the projective cover summands, in vertex order."""
    verts = X.algebra.quiver.vertices
    top = radical_and_top(X).top
    out = []
    for v_idx, v in enumerate(verts):
        out.extend([v] * top.dims[v_idx])
    return out


def _summand_offsets(alg, summand_vertices, at_vertex):
    offs = [0]
    for v in summand_vertices:
        offs.append(offs[-1] + len(alg.path_basis[(v, at_vertex)]))
    return offs


def tau(X):
    """The AR translate of an indecomposable module; projectives map to 0.

    Computed from the minimal projective presentation P1 -> P0 -> X:
    the presentation is transposed into a map of projectives over the
    opposite algebra and the dual of its cokernel is returned.
    """
    alg = X.algebra
    f = alg.field
    cover0 = projective_cover(X)
    parts0 = morphism_parts(cover0)
    K = parts0.kernel
    if K.is_zero:
        return zero_module(alg)
    cover1 = projective_cover(K)
    d1 = cover1.then(parts0.kernel_inclusion)

    p0_verts = _cover_summands(X)
    p1_verts = _cover_summands(K)
    op = alg.opposite
    op_projs = [standard_module(op, "projective", v) for v in p1_verts]
    op_target = direct_sum(op, op_projs)

    verts = alg.quiver.vertices
    gen_cols = []
    for s0, w in enumerate(p0_verts):
        w_idx = verts.index(w)
        col = f.zeros(op_target.dims[w_idx], 1)[:, 0]
        for s1, v in enumerate(p1_verts):
            v_idx = verts.index(v)
            # Coefficients of the (s0, s1) block over the paths w -> v,
            # read off the image of the s1 generator at vertex v.
            trivial = next(
                k
                for k, pth in enumerate(alg.path_basis[(v, v)])
                if not pth.arrows
            )
            col_idx = _summand_offsets(alg, p1_verts, v)[s1] + trivial
            row_off = _summand_offsets(alg, p0_verts, v)[s0]
            paths_wv = alg.path_basis[(w, v)]
            coeffs = d1.components[v_idx][
                row_off : row_off + len(paths_wv), col_idx
            ]
            # Each path w -> v transposes to the reversed path v -> w.
            op_paths = op.path_basis[(v, w)]
            op_index = {pth.arrows: k for k, pth in enumerate(op_paths)}
            tgt_off = _summand_offsets(op, p1_verts, w)[s1]
            for q, c in zip(paths_wv, coeffs):
                if c:
                    k = op_index[tuple(reversed(q.arrows))]
                    col[tgt_off + k] = (col[tgt_off + k] + c) % f.p
        gen_cols.append(col)

    transpose_map = _map_from_projectives(op, p0_verts, op_target, gen_cols)
    transpose = morphism_parts(transpose_map).cokernel
    return dualize(transpose)


def tau_minus(X):
    """The inverse translate, via duality: injectives map to 0."""
    return dualize(tau(dualize(X)))


# ----------------------------------------------------------------------
# catalog-level memoized accessors
# ----------------------------------------------------------------------

def tau_of(cat, index: int):
    memo = cat._memo.setdefault("tau", {})
    if index not in memo:
        memo[index] = tau(cat.representation(index))
    return memo[index]


def tau_minus_of(cat, index: int):
    memo = cat._memo.setdefault("tau_minus", {})
    if index not in memo:
        memo[index] = tau_minus(cat.representation(index))
    return memo[index]


def ext1_of(cat, i: int, j: int) -> int:
    memo = cat._memo.setdefault("ext1", {})
    if (i, j) not in memo:
        memo[(i, j)] = ext1_dim(cat.representation(i), cat.representation(j))
    return memo[(i, j)]


def _rigid_pair(cat, i: int, j: int, side: str) -> bool:
    """Is Hom(X_i, tau X_j) = 0 (plus) / Hom(tau^- X_i, X_j) = 0 (minus)?"""
    memo = cat._memo.setdefault(("rigid", side), {})
    if (i, j) not in memo:
        if side == "plus":
            memo[(i, j)] = (
                hom_dim(cat.representation(i), tau_of(cat, j)) == 0
            )
        else:
            memo[(i, j)] = (
                hom_dim(tau_minus_of(cat, i), cat.representation(j)) == 0
            )
    return memo[(i, j)]


def supp_of(cat, indices) -> tuple[str, ...]:
    """Vertices on which some member is nonzero, in vertex order."""
    verts = cat.algebra.quiver.vertices
    hit = set()
    for i in indices:
        hit.update(cat.representation(i).support())
    return tuple(v for v in verts if v in hit)


def is_tau_rigid_sum(cat, indices, side: str = "plus") -> bool:
    """Tau-rigidity of a basic sum, tested on all ordered pairs."""
    indices = sorted(indices)
    return all(
        _rigid_pair(cat, i, j, side) for i in indices for j in indices
    )


def is_support_tau_tilting(cat, indices, side: str = "plus"):
    """The STTPair for a subset, or None if it is not one.

    A tau-rigid basic module is support tau-tilting exactly when its
    number of summands equals the size of its support; the projective
    complement sits on the vertices outside the support.
    """
    indices = tuple(sorted(set(indices)))
    if not is_tau_rigid_sum(cat, indices, side):
        return None
    support = supp_of(cat, indices)
    if len(indices) != len(support):
        return None
    verts = cat.algebra.quiver.vertices
    complement = tuple(v for v in verts if v not in support)
    return STTPair(indices, complement, side, support)


def enumerate_stt(cat, side: str = "plus") -> list[STTPair]:
    """All support tau-tilting (or tau^- for side minus) pairs.

    Plain subset search over the catalog with pairwise rigidity used to
    prune; canonically ordered by support, then summands.
    """
    memo = cat._memo.setdefault("stt", {})
    if side in memo:
        return memo[side]
    n = len(cat)
    verts = cat.algebra.quiver.vertices
    found = []
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            if any(
                not _rigid_pair(cat, i, j, side)
                for i in subset
                for j in subset
            ):
                continue
            pair = is_support_tau_tilting(cat, subset, side)
            if pair is not None:
                found.append(pair)
    found.sort(
        key=lambda pr: (
            len(pr.support),
            tuple(verts.index(v) for v in pr.support),
            pr.module,
        )
    )
    memo[side] = found
    return found
