"""Projection lattice: ceiling, floor, support, join/meet, commutant, centre.

Projections produced here are snapped: eigenvalues within ``snap_eps`` of
{0, 1} are rounded and the projection is rebuilt from the kept eigenvectors,
restoring exact idempotency so that chained lattice identities hold at
equality-test precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from .algebra import (DEFAULT_TOL, Element, FdAlgebra, ToleranceConfig, adjoint,
                      is_effect, is_positive, is_self_adjoint, mul,
                      operator_norm, orthosupplement, symmetrize)
from .errors import NotEffect, NotPositive, NotProjection


@dataclass(frozen=True)
class ProjectionCertificate:
    """A verified projection together with whether snapping occurred."""

    element: Element
    snapped: bool


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of an algebra, spanned by an orthonormal basis."""

    ambient: FdAlgebra
    basis: tuple[Element, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        v = a.coords()
        for b in self.basis:
            bc = b.coords()
            v = v - bc * np.vdot(bc, v)
        return float(np.linalg.norm(v)) <= tol.eps_abs + tol.eps_rel * max(
            1.0, float(np.linalg.norm(a.coords())))


def is_projection(p: Element, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    return (is_self_adjoint(p, tol)
            and operator_norm(mul(p, p) - p) <= tol.eps_abs + tol.eps_rel * max(1.0, operator_norm(p)))


def _snap_block(b: np.ndarray, snap: float) -> tuple[np.ndarray, bool]:
    vals, vecs = np.linalg.eigh((b + b.conj().T) / 2)
    keep = vals >= 0.5
    if np.any((vals > snap) & (vals < 1.0 - snap)):
        raise NotProjection("eigenvalues too far from {0,1} to snap")
    snapped = bool(np.any(np.abs(vals - keep.astype(float)) > 1e-15))
    v1 = vecs[:, keep]
    return v1 @ v1.conj().T, snapped


def snap_projection(p: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """Round eigenvalues to {0,1} (within snap_eps) and rebuild."""
    blocks = [_snap_block(b, tol.snap_eps)[0] for b in p.blocks]
    return p.algebra.element(blocks)


def certify_projection(p: Element, tol: ToleranceConfig = DEFAULT_TOL,
                       snap: bool = True) -> ProjectionCertificate:
    if not is_projection(p, tol):
        raise NotProjection("not a projection within tolerance")
    if not snap:
        return ProjectionCertificate(p, False)
    out, did = [], False
    for b in p.blocks:
        nb, s = _snap_block(b, tol.snap_eps)
        out.append(nb)
        did = did or s
    return ProjectionCertificate(p.algebra.element(out), did)


def _spectral_projection(a: Element, predicate, tol: ToleranceConfig) -> Element:
    blocks = []
    for b in symmetrize(a).blocks:
        vals, vecs = np.linalg.eigh(b)
        keep = np.array([bool(predicate(float(v))) for v in vals])
        v1 = vecs[:, keep]
        blocks.append(v1 @ v1.conj().T)
    return a.algebra.element(blocks)


def ceiling(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """Least projection p with pa = a, for positive a.

    Spectral projection onto eigenvalues above ``snap_eps * ||a||``.
    """
    if not is_positive(a, tol):
        raise NotPositive("ceiling needs a positive element")
    norm = operator_norm(a)
    if norm <= tol.eps_abs:
        return a.algebra.zero()
    return _spectral_projection(a, lambda v: v > tol.snap_eps * norm, tol)


def floor(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """Greatest projection below an effect a."""
    if not is_effect(a, tol):
        raise NotEffect("floor needs an effect")
    return _spectral_projection(a, lambda v: v >= 1.0 - tol.snap_eps, tol)


def _rank(block: np.ndarray, snap: float, zero_floor: float) -> int:
    if block.size == 0:
        return 0
    s = np.linalg.svd(block, compute_uv=False)
    if s.size == 0 or s[0] <= zero_floor:
        return 0
    return int(np.sum(s > snap * s[0]))


def rank_profile(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[int, ...]:
    """Per-block rank: singular values thresholded at snap_eps relative to
    the largest, with blocks below eps_abs treated as zero."""
    return tuple(_rank(b, tol.snap_eps, tol.eps_abs) for b in a.blocks)


def support(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """Least projection p with a p = a; the ceiling of a*a.

    Computed from the right singular vectors with relative threshold
    snap_eps, consistent with :func:`rank_profile`.
    """
    blocks = []
    for b in a.blocks:
        _, s, vh = np.linalg.svd(b)
        r = _rank(b, tol.snap_eps, tol.eps_abs)
        v = vh[:r].conj().T
        blocks.append(v @ v.conj().T)
    return a.algebra.element(blocks)


def range_projection(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """Least projection p with p a = a; the ceiling of a a*."""
    return support(adjoint(a), tol)


def _require_projections(ps: Sequence[Element], tol: ToleranceConfig):
    for p in ps:
        if not is_projection(p, tol):
            raise NotProjection("lattice operation needs projections")


def join(ps: Sequence[Element], tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """Supremum in the projection poset, folding p | q = ceil((p+q)/2)."""
    ps = list(ps)
    if not ps:
        raise ValueError("join needs at least one projection")
    _require_projections(ps, tol)
    out = ps[0]
    for q in ps[1:]:
        out = snap_projection(ceiling(0.5 * (out + q), tol), tol)
    return snap_projection(out, tol)


def meet(ps: Sequence[Element], tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """Infimum in the projection poset, by De Morgan from :func:`join`."""
    ps = list(ps)
    if not ps:
        raise ValueError("meet needs at least one projection")
    _require_projections(ps, tol)
    comp = join([orthosupplement(p) for p in ps], tol)
    return snap_projection(orthosupplement(comp), tol)


def left_mult_matrix(s: Element) -> np.ndarray:
    """Matrix of x -> s x on canonical (row-major) coordinates."""
    if not s.blocks:
        return np.zeros((0, 0), dtype=complex)
    return scipy.linalg.block_diag(*[np.kron(b, np.eye(b.shape[0])) for b in s.blocks])


def right_mult_matrix(s: Element) -> np.ndarray:
    """Matrix of x -> x s on canonical (row-major) coordinates."""
    if not s.blocks:
        return np.zeros((0, 0), dtype=complex)
    return scipy.linalg.block_diag(*[np.kron(np.eye(b.shape[0]), b.T) for b in s.blocks])


def commutant(elements: Sequence[Element], within: FdAlgebra,
              tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of {a : as = sa for all s}, via stacked commutators."""
    d = within.dim
    if d == 0:
        return Subspace(within, ())
    if not elements:
        return Subspace(within, tuple(within.from_coords(v)
                                      for v in np.eye(d, dtype=complex)))
    rows = [left_mult_matrix(s) - right_mult_matrix(s) for s in elements]
    stacked = np.vstack(rows)
    _, svals, vh = np.linalg.svd(stacked)
    top = svals[0] if svals.size else 0.0
    thr = tol.snap_eps * max(1.0, top)
    null_dim = d - int(np.sum(svals > thr))
    basis_vecs = vh[d - null_dim:].conj()
    return Subspace(within, tuple(within.from_coords(v) for v in basis_vecs))


def centre(algebra: FdAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    return commutant(list(algebra.basis()), algebra, tol)


def central_support(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> Element:
    """Smallest central projection z with z a = a: the nonzero-block indicator."""
    thr = tol.eps_abs + tol.eps_rel * max(1.0, operator_norm(a))
    blocks = []
    for b in a.blocks:
        on = float(np.linalg.norm(b, 2)) > thr if b.size else False
        blocks.append(np.eye(b.shape[0]) if on else np.zeros(b.shape))
    return a.algebra.element(blocks)


def is_central(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Each block a scalar multiple of the block identity."""
    thr = tol.eps_abs + tol.eps_rel * max(1.0, operator_norm(a))
    for b in a.blocks:
        n = b.shape[0]
        lam = np.trace(b) / n
        if float(np.linalg.norm(b - lam * np.eye(n), 2)) > thr:
            return False
    return True


def mvn_below(e1: Element, e2: Element,
              tol: ToleranceConfig = DEFAULT_TOL) -> Optional[Element]:
    """Murray-von Neumann subequivalence witness.

    Returns u with u*u = e1 and uu* <= e2 when each block rank of e1 is at
    most that of e2, and None otherwise.
    """
    _require_projections([e1, e2], tol)
    blocks = []
    for b1, b2 in zip(e1.blocks, e2.blocks):
        vals1, vecs1 = np.linalg.eigh((b1 + b1.conj().T) / 2)
        vals2, vecs2 = np.linalg.eigh((b2 + b2.conj().T) / 2)
        r1 = int(np.sum(vals1 > 0.5))
        r2 = int(np.sum(vals2 > 0.5))
        if r1 > r2:
            return None
        w = vecs1[:, vals1 > 0.5]
        v = vecs2[:, vals2 > 0.5][:, :r1]
        blocks.append(v @ w.conj().T)
    return e1.algebra.element(blocks)


def central_support_partition(e: Element,
                              tol: ToleranceConfig = DEFAULT_TOL) -> list[Element]:
    """Pairwise orthogonal projections summing to the central support of e,
    each Murray-von Neumann below e.

    Blockwise: each supported block identity is cut along an eigenbasis of
    e's block into pieces of rank at most rank(e_block).
    """
    _require_projections([e], tol)
    if operator_norm(e) <= tol.eps_abs:
        raise NotProjection("central_support_partition needs a nonzero projection")
    alg = e.algebra
    pieces: list[Element] = []
    for i, b in enumerate(e.blocks):
        n = b.shape[0]
        vals, vecs = np.linalg.eigh((b + b.conj().T) / 2)
        r = int(np.sum(vals > 0.5))
        if r == 0:
            continue
        for start in range(0, n, r):
            cols = vecs[:, start:start + r]
            blocks = [np.zeros((m, m), dtype=complex) for m in alg.dims]
            blocks[i] = cols @ cols.conj().T
            pieces.append(alg.element(blocks))
    return pieces


def projection_family(algebra: FdAlgebra, seed: int = 0, extra: int = 4,
                      tol: ToleranceConfig = DEFAULT_TOL) -> list[Element]:
    """A deterministic spanning family of projections used by diamond checks.

    Contains 0, 1, every diagonal matrix-unit projection, per-block uniform
    rank-1 projections, and a few seeded random projections.
    """
    from .sampling import random_projection
    rng = np.random.default_rng(seed)
    out = [algebra.zero(), algebra.unit()]
    for i, n in enumerate(algebra.dims):
        for j in range(n):
            blocks = [np.zeros((m, m), dtype=complex) for m in algebra.dims]
            blocks[i][j, j] = 1.0
            out.append(algebra.element(blocks))
        vec = np.ones(n) / np.sqrt(n)
        blocks = [np.zeros((m, m), dtype=complex) for m in algebra.dims]
        blocks[i] = np.outer(vec, vec.conj())
        out.append(algebra.element(blocks))
    for _ in range(extra):
        out.append(random_projection(algebra, rng))
    return out
