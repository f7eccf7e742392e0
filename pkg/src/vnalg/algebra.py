"""Core value types and arithmetic for finite direct sums of matrix algebras.

An :class:`FdAlgebra` is determined by its ordered block dimensions
``(n_1, ..., n_K)`` and models ``M_{n_1} + ... + M_{n_K}`` with blockwise
operations.  An :class:`Element` holds one dense complex matrix per block.
Everything is an immutable value; all operations are pure functions.

The empty dimension list is allowed and denotes the trivial algebra ``{0}``,
on which every predicate holds vacuously.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import AlgebraMismatch


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds for positivity, snapping, and equality tests."""

    eps_rel: float = 1e-9
    eps_abs: float = 1e-12
    snap_eps: float = 1e-7

    def __post_init__(self):
        if not (self.eps_rel > 0 and self.eps_abs > 0 and self.snap_eps > 0):
            raise ValueError("tolerances must be strictly positive")
        if self.snap_eps < self.eps_rel:
            raise ValueError("snap_eps must be >= eps_rel")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class FdAlgebra:
    """A finite direct sum of full complex matrix algebras."""

    dims: tuple[int, ...]

    def __post_init__(self):
        if any(int(n) != n or n < 1 for n in self.dims):
            raise ValueError("block dimensions must be positive integers")
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))

    @property
    def num_blocks(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        """Linear dimension, the sum of the squared block sizes."""
        return sum(n * n for n in self.dims)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for n in self.dims:
            out.append(acc)
            acc += n * n
        return tuple(out)

    def is_commutative(self) -> bool:
        return all(n == 1 for n in self.dims)

    def element(self, blocks: Iterable[np.ndarray | Sequence]) -> "Element":
        return Element(self, tuple(np.asarray(b, dtype=complex) for b in blocks))

    def zero(self) -> "Element":
        return self.element(np.zeros((n, n)) for n in self.dims)

    def unit(self) -> "Element":
        return self.element(np.eye(n) for n in self.dims)

    def scalar(self, lam: complex) -> "Element":
        return self.element(lam * np.eye(n) for n in self.dims)

    def basis(self) -> tuple["Element", ...]:
        """Canonical matrix-unit basis, block-major then row-major in block."""
        return _basis(self)

    def from_coords(self, vec: np.ndarray) -> "Element":
        """Inverse of :meth:`Element.coords`."""
        vec = np.asarray(vec, dtype=complex).reshape(-1)
        if vec.shape[0] != self.dim:
            raise AlgebraMismatch("coordinate vector has wrong length")
        blocks = []
        for off, n in zip(self.offsets, self.dims):
            blocks.append(vec[off:off + n * n].reshape(n, n))
        return self.element(blocks)


@lru_cache(maxsize=None)
def _basis(algebra: FdAlgebra) -> tuple["Element", ...]:
    out = []
    for i, n in enumerate(algebra.dims):
        for j in range(n):
            for k in range(n):
                blocks = [np.zeros((m, m), dtype=complex) for m in algebra.dims]
                blocks[i][j, k] = 1.0
                out.append(Element(algebra, tuple(blocks)))
    return tuple(out)


class Element:
    """A member of an :class:`FdAlgebra`: one dense complex matrix per block."""

    __slots__ = ("algebra", "blocks")

    def __init__(self, algebra: FdAlgebra, blocks: Sequence[np.ndarray]):
        blocks = tuple(np.array(b, dtype=complex) for b in blocks)
        if len(blocks) != algebra.num_blocks:
            raise AlgebraMismatch("wrong number of blocks")
        for b, n in zip(blocks, algebra.dims):
            if b.shape != (n, n):
                raise AlgebraMismatch(f"block shape {b.shape} does not match dim {n}")
            b.setflags(write=False)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, *_):
        raise AttributeError("Element is immutable")

    def block(self, i: int) -> np.ndarray:
        return self.blocks[i]

    def coords(self) -> np.ndarray:
        """Row-major coordinates in the canonical matrix-unit basis."""
        if not self.blocks:
            return np.zeros(0, dtype=complex)
        return np.concatenate([b.reshape(-1) for b in self.blocks])

    def __add__(self, other: "Element") -> "Element":
        return add(self, other)

    def __sub__(self, other: "Element") -> "Element":
        return add(self, scalar_mul(-1.0, other))

    def __neg__(self) -> "Element":
        return scalar_mul(-1.0, self)

    def __mul__(self, lam) -> "Element":
        return scalar_mul(lam, self)

    __rmul__ = __mul__

    def __matmul__(self, other: "Element") -> "Element":
        return mul(self, other)

    def adjoint(self) -> "Element":
        return adjoint(self)

    def __repr__(self):
        return f"Element(dims={self.algebra.dims})"


def _same_algebra(a: Element, b: Element) -> FdAlgebra:
    if a.algebra != b.algebra:
        raise AlgebraMismatch(f"{a.algebra.dims} vs {b.algebra.dims}")
    return a.algebra


def add(a: Element, b: Element) -> Element:
    alg = _same_algebra(a, b)
    return alg.element(x + y for x, y in zip(a.blocks, b.blocks))


def scalar_mul(lam: complex, a: Element) -> Element:
    return a.algebra.element(lam * x for x in a.blocks)


def mul(a: Element, b: Element) -> Element:
    alg = _same_algebra(a, b)
    return alg.element(x @ y for x, y in zip(a.blocks, b.blocks))


def adjoint(a: Element) -> Element:
    return a.algebra.element(x.conj().T for x in a.blocks)


def real_part(a: Element) -> Element:
    return scalar_mul(0.5, add(a, adjoint(a)))


def imag_part(a: Element) -> Element:
    return scalar_mul(-0.5j, a - adjoint(a))


def orthosupplement(a: Element) -> Element:
    """1 - a."""
    return a.algebra.unit() - a


def trace(a: Element) -> complex:
    return complex(sum(np.trace(b) for b in a.blocks))


def hs_inner(a: Element, b: Element) -> complex:
    """Hilbert-Schmidt inner product sum_i tr(a_i* b_i)."""
    _same_algebra(a, b)
    return complex(sum(np.trace(x.conj().T @ y) for x, y in zip(a.blocks, b.blocks)))


def operator_norm(a: Element) -> float:
    """Max over blocks of the largest singular value."""
    if not a.blocks:
        return 0.0
    return max(float(np.linalg.norm(b, 2)) for b in a.blocks)


def _eq_threshold(na: float, nb: float, tol: ToleranceConfig) -> float:
    return tol.eps_abs + tol.eps_rel * max(na, nb)


def equal(a: Element, b: Element, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """||a - b|| <= eps_abs + eps_rel * max(||a||, ||b||)."""
    _same_algebra(a, b)
    return operator_norm(a - b) <= _eq_threshold(operator_norm(a), operator_norm(b), tol)


def is_self_adjoint(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    return operator_norm(a - adjoint(a)) <= tol.eps_abs + tol.eps_rel * max(1.0, operator_norm(a))


def symmetrize(a: Element) -> Element:
    """Replace a by (a + a*)/2; Hermitian eigensolvers need exact symmetry."""
    return real_part(a)


def is_positive(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Self-adjoint within tolerance with spectrum >= -eps_rel*max(1, ||a||).

    The threshold is relative so that the test is invariant under scaling.
    """
    if not a.blocks:
        return True
    if not is_self_adjoint(a, tol):
        return False
    bound = -tol.eps_rel * max(1.0, operator_norm(a))
    sym = symmetrize(a)
    return all(float(np.linalg.eigvalsh(b).min(initial=np.inf)) >= bound
               for b in sym.blocks if b.size)


def leq(a: Element, b: Element, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """a <= b, i.e. b - a is positive."""
    return is_positive(b - a, tol)


def is_effect(a: Element, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """0 <= a <= 1."""
    return is_positive(a, tol) and is_positive(orthosupplement(a), tol)


def make_algebra(dims: Sequence[int]) -> FdAlgebra:
    """Build the direct sum of full matrix algebras with the given block sizes."""
    return FdAlgebra(tuple(dims))


def direct_sum(algebras: Sequence[FdAlgebra]) -> FdAlgebra:
    dims: list[int] = []
    for alg in algebras:
        dims.extend(alg.dims)
    return FdAlgebra(tuple(dims))
