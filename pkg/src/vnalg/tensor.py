"""Tensor products of algebras, elements, and maps; monoidal isomorphisms;
duplicability; the classical-points functor.

The tensor of two direct sums of matrix algebras is realized concretely:
block (i, j) of the product is the Kronecker product of blocks i and j, and
the product's block list is ordered lexicographically, left index major.
The Kronecker convention is (a (x) b)[r*m + s, r'*m + s'] = a[r, r'] b[s, s'],
fixed so that serialized fixtures are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import (DEFAULT_TOL, Element, FdAlgebra, ToleranceConfig,
                      direct_sum, is_positive, mul)
from .errors import AlgebraMismatch, ShapeMismatch
from .maps import LinMap, apply, block_projection, compose, make_map
from . import sampling


@dataclass(frozen=True)
class TensorStructure:
    """The realized tensor of two algebras with its block bookkeeping."""

    left: FdAlgebra
    right: FdAlgebra
    product: FdAlgebra

    def block_index(self, i: int, j: int) -> int:
        return i * self.right.num_blocks + j


def tensor_algebra(left: FdAlgebra, right: FdAlgebra) -> TensorStructure:
    dims = tuple(n * m for n in left.dims for m in right.dims)
    return TensorStructure(left, right, FdAlgebra(dims))


def tensor_elements(ts: TensorStructure, a: Element, b: Element) -> Element:
    if a.algebra != ts.left or b.algebra != ts.right:
        raise AlgebraMismatch("factors do not match the tensor structure")
    blocks = [np.kron(x, y) for x in a.blocks for y in b.blocks]
    return ts.product.element(blocks)


def map_on_simple_tensors(ts_dom: TensorStructure, cod: FdAlgebra,
                          image_fn) -> LinMap:
    """Linear map determined by its values on simple tensors of basis units.

    Simple tensors of matrix units hit each canonical basis element of the
    product exactly once, but not in enumeration order; columns are placed
    by the actual coordinate index of each simple tensor.
    """
    matrix = np.zeros((cod.dim, ts_dom.product.dim), dtype=complex)
    for ea in ts_dom.left.basis():
        for eb in ts_dom.right.basis():
            dom_el = tensor_elements(ts_dom, ea, eb)
            idx = int(np.argmax(np.abs(dom_el.coords())))
            matrix[:, idx] = image_fn(ea, eb).coords()
    return LinMap(ts_dom.product, cod, matrix)


def tensor_maps(ts_dom: TensorStructure, ts_cod: TensorStructure,
                f: LinMap, g: LinMap) -> LinMap:
    """The unique linear map acting as f on left factors and g on right ones."""
    if f.dom != ts_dom.left or g.dom != ts_dom.right:
        raise ShapeMismatch("map domains do not match the tensor structure")
    if f.cod != ts_cod.left or g.cod != ts_cod.right:
        raise ShapeMismatch("map codomains do not match the tensor structure")
    return map_on_simple_tensors(
        ts_dom, ts_cod.product,
        lambda ea, eb: tensor_elements(ts_cod, apply(f, ea), apply(g, eb)))


def associator(a: FdAlgebra, b: FdAlgebra, c: FdAlgebra) -> LinMap:
    """a (x) (b (x) c) -> (a (x) b) (x) c.

    With the lexicographic block order and strict Kronecker products the two
    sides coincide coordinatewise, so the associator is the identity matrix
    between the two (equal) realized algebras.
    """
    inner = tensor_algebra(b, c)
    lhs = tensor_algebra(a, inner.product)
    outer = tensor_algebra(a, b)
    rhs = tensor_algebra(outer.product, c)
    if lhs.product != rhs.product:
        raise AlgebraMismatch("tensor realization is not associative")
    return LinMap(lhs.product, rhs.product, np.eye(lhs.product.dim, dtype=complex))


def braiding(a: FdAlgebra, b: FdAlgebra) -> LinMap:
    """a (x) b -> b (x) a, swapping Kronecker factors blockwise."""
    ab = tensor_algebra(a, b)
    ba = tensor_algebra(b, a)
    return map_on_simple_tensors(ab, ba.product,
                                 lambda ea, eb: tensor_elements(ba, eb, ea))


def left_unitor(a: FdAlgebra) -> LinMap:
    """scalars (x) a -> a."""
    ts = tensor_algebra(FdAlgebra((1,)), a)
    return map_on_simple_tensors(
        ts, a, lambda ez, ea: complex(ez.blocks[0][0, 0]) * ea)


def right_unitor(a: FdAlgebra) -> LinMap:
    """a (x) scalars -> a."""
    ts = tensor_algebra(a, FdAlgebra((1,)))
    return map_on_simple_tensors(
        ts, a, lambda ea, ez: complex(ez.blocks[0][0, 0]) * ea)


def distributor(a: FdAlgebra, parts: Sequence[FdAlgebra]) -> LinMap:
    """a (x) (direct sum of parts) -> direct sum of the tensors.

    A pure block permutation: block (i, (l, j)) of the domain is block
    (l, (i, j)) of the codomain.
    """
    summed = direct_sum(list(parts))
    dom_ts = tensor_algebra(a, summed)
    cod = direct_sum([tensor_algebra(a, p).product for p in parts])
    part_offsets = []
    acc = 0
    for p in parts:
        part_offsets.append(acc)
        acc += p.num_blocks
    cod_block_offsets = []
    acc = 0
    for p in parts:
        cod_block_offsets.append(acc)
        acc += a.num_blocks * p.num_blocks

    def locate_part(j: int) -> tuple[int, int]:
        for li in reversed(range(len(parts))):
            if j >= part_offsets[li]:
                return li, j - part_offsets[li]
        raise IndexError(j)

    nb_right = summed.num_blocks
    images = []
    for blk, n in enumerate(dom_ts.product.dims):
        i, j = divmod(blk, nb_right)
        l, local_j = locate_part(j)
        dest_block = cod_block_offsets[l] + i * parts[l].num_blocks + local_j
        for r in range(n):
            for c in range(n):
                blocks = [np.zeros((m, m), dtype=complex) for m in cod.dims]
                blocks[dest_block][r, c] = 1.0
                images.append(cod.element(blocks))
    return make_map(dom_ts.product, cod, images)


def is_duplicable(algebra: FdAlgebra) -> bool:
    """Duplicators exist exactly for the classical algebras."""
    return algebra.is_commutative()


def multiplication_map(algebra: FdAlgebra) -> LinMap:
    """The linear extension of a (x) b -> a b on the realized tensor square."""
    ts = tensor_algebra(algebra, algebra)
    return map_on_simple_tensors(ts, algebra, mul)


def duplicator(algebra: FdAlgebra,
               tol: ToleranceConfig = DEFAULT_TOL) -> Optional[LinMap]:
    """The unique duplicator (coordinatewise multiplication) when one exists."""
    if not is_duplicable(algebra):
        return None
    return multiplication_map(algebra)


def duplicability_witness(algebra: FdAlgebra, samples: int = 1000, seed: int = 0,
                          tol: ToleranceConfig = DEFAULT_TOL) -> Optional[Element]:
    """A positive element of the tensor square that multiplication maps to a
    non-positive element; None only for duplicable algebras.

    Sampling failure on a non-commutative algebra raises, rather than
    letting a flaky search masquerade as duplicability.
    """
    if is_duplicable(algebra):
        return None
    m = multiplication_map(algebra)
    ts = tensor_algebra(algebra, algebra)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        w = sampling.random_rank_one_positive(ts.product, rng)
        if not is_positive(apply(m, w), tol):
            return w
    raise RuntimeError("no positivity violation found; sample budget too small")


def classical_points(algebra: FdAlgebra) -> list[int]:
    """Indices of the one-dimensional blocks: the characters of the algebra.

    A multiplicative unital functional kills every block of dimension at
    least two, so these indices enumerate all of them.
    """
    return [i for i, n in enumerate(algebra.dims) if n == 1]


def classical_reflection(algebra: FdAlgebra) -> FdAlgebra:
    """The all-ones algebra over the classical points."""
    return FdAlgebra(tuple(1 for _ in classical_points(algebra)))


def classical_unit(algebra: FdAlgebra) -> LinMap:
    """The miu map onto the classical reflection: evaluation at each character."""
    points = classical_points(algebra)
    target = classical_reflection(algebra)
    images = []
    for e in algebra.basis():
        blocks = [np.array([[e.blocks[i][0, 0]]]) for i in points]
        images.append(target.element(blocks))
    return make_map(algebra, target, images)


def factor_through_classical(f: LinMap,
                             tol: ToleranceConfig = DEFAULT_TOL) -> Optional[LinMap]:
    """Factor a miu map into a classical algebra through the classical unit.

    Each coordinate of f is a character of the domain, hence evaluation at
    some classical point; the factoring map permutes and reads off those
    coordinates.  Returns None when some coordinate of f is not a character
    (then f was not miu to begin with).
    """
    if not f.cod.is_commutative():
        raise ShapeMismatch("factorization needs a classical codomain")
    points = classical_points(f.dom)
    cols = []
    for y in range(f.cod.num_blocks):
        omega = compose(block_projection(f.cod, y), f)
        matched = None
        for idx, i in enumerate(points):
            probe = block_projection(f.dom, i)
            if np.allclose(omega.matrix, probe.matrix,
                           atol=tol.eps_abs + tol.eps_rel):
                matched = idx
                break
        if matched is None:
            return None
        cols.append(matched)
    src = classical_reflection(f.dom)
    images = []
    for e in src.basis():
        blocks = [np.array([[e.blocks[cols[y]][0, 0]]]) for y in range(f.cod.num_blocks)]
        images.append(f.cod.element(blocks))
    return make_map(src, f.cod, images)


# Aliases matching the external interface names.
nsp = classical_points
bang = classical_reflection
bang_unit = classical_unit
