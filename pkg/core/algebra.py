"""
Finite-dimensional C*-algebras, modelled as direct sums of full complex matrix blocks.

An algebra is described by its block dimensions (d_1, ..., d_m). An element carries one d_a x d_a complex matrix per
block. Elements are immutable: their blocks are read-only arrays and every operation returns a new element.
"""
import logging

import numpy as np
import scipy.linalg

from wigner_stone.core import errors

logger = logging.getLogger(__name__)

# -- absolute tolerance used for comparisons unless an operation documents otherwise.
DEFAULT_TOL = 1e-9


# ----------------------------------------------------------------------------------------------------------------------
class AlgebraSpec(object):
    """
    The algebra (+)_a M_{d_a}(C). Block indices are 0-based and never change for the lifetime of the object.
    """

    __slots__ = ('_block_dims',)

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, block_dims):
        # type: (tuple) -> None
        self._block_dims = tuple(int(d) for d in block_dims)

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def block_dims(self):
        return self._block_dims

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def m(self):
        return len(self._block_dims)

    # ------------------------------------------------------------------------------------------------------------------
    def dim(self, block):
        # type: (int) -> int
        check_block(self, block)
        return self._block_dims[block]

    # ------------------------------------------------------------------------------------------------------------------
    def qubit_blocks(self):
        """
        Blocks isomorphic to M_2(C). On these, bi-orthogonal ray maps need not preserve transition probabilities.

        :return: list of block indices with dimension 2.
        :rtype: list
        """
        return [a for a, d in enumerate(self._block_dims) if d == 2]

    # ------------------------------------------------------------------------------------------------------------------
    def is_commutative(self):
        return all(d == 1 for d in self._block_dims)

    # ------------------------------------------------------------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, AlgebraSpec) and self._block_dims == other._block_dims

    # ------------------------------------------------------------------------------------------------------------------
    def __ne__(self, other):
        return not self.__eq__(other)

    # ------------------------------------------------------------------------------------------------------------------
    def __hash__(self):
        return hash(self._block_dims)

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'AlgebraSpec(%s)' % list(self._block_dims)


# ----------------------------------------------------------------------------------------------------------------------
class Element(object):

    __slots__ = ('_algebra', '_blocks')

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, algebra, blocks):
        # type: (AlgebraSpec, list) -> None
        if len(blocks) != algebra.m:
            raise errors.DimensionMismatchError(
                'Expected %s blocks for %r, got %s!' % (algebra.m, algebra, len(blocks))
            )

        frozen = list()
        for a, block in enumerate(blocks):
            d = algebra.block_dims[a]
            matrix = np.array(block, dtype=np.complex128)
            if matrix.shape != (d, d):
                raise errors.DimensionMismatchError(
                    'Block %s of %r must be %sx%s, got shape %s!' % (a, algebra, d, d, matrix.shape)
                )
            if not np.all(np.isfinite(matrix)):
                raise errors.MalformedInputError('Block %s contains non-finite entries!' % a)
            matrix.flags.writeable = False
            frozen.append(matrix)

        self._algebra = algebra
        self._blocks = tuple(frozen)

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def algebra(self):
        return self._algebra

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def blocks(self):
        return self._blocks

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'Element(%r, %s)' % (self._algebra, [b.tolist() for b in self._blocks])


# ----------------------------------------------------------------------------------------------------------------------
def make_algebra(dims):
    # type: (list) -> AlgebraSpec
    """
    Build an algebra from its block dimensions.

    :param dims: one positive integer per full matrix block.
    :type dims: list

    :return: the algebra.
    :rtype: AlgebraSpec
    """
    dims = list(dims)
    if not dims:
        raise errors.EmptyDimsError('An algebra needs at least one block!')

    for d in dims:
        if int(d) != d or d < 1:
            raise errors.NonPositiveDimError('Block dimensions must be positive integers, got %s!' % d)

    return AlgebraSpec(dims)


# ----------------------------------------------------------------------------------------------------------------------
def check_block(alg, block):
    # type: (AlgebraSpec, int) -> None
    if not 0 <= block < alg.m:
        raise errors.BlockOutOfRangeError('Block %s does not exist in %r!' % (block, alg))


# ----------------------------------------------------------------------------------------------------------------------
def check_same_algebra(*elements):
    algebra = elements[0].algebra
    for other in elements[1:]:
        if other.algebra != algebra:
            raise errors.AlgebraMismatchError('%r and %r are different algebras!' % (algebra, other.algebra))
    return algebra


# ----------------------------------------------------------------------------------------------------------------------
def identity(alg):
    # type: (AlgebraSpec) -> Element
    return Element(alg, [np.eye(d) for d in alg.block_dims])


# ----------------------------------------------------------------------------------------------------------------------
def zero(alg):
    # type: (AlgebraSpec) -> Element
    return Element(alg, [np.zeros((d, d)) for d in alg.block_dims])


# ----------------------------------------------------------------------------------------------------------------------
def block_identity(alg, blocks):
    # type: (AlgebraSpec, list) -> Element
    """
    Central projection: the identity on the given blocks, zero elsewhere.
    """
    blocks = set(blocks)
    for a in blocks:
        check_block(alg, a)
    return Element(alg, [np.eye(d) if a in blocks else np.zeros((d, d)) for a, d in enumerate(alg.block_dims)])


# ----------------------------------------------------------------------------------------------------------------------
def matrix_unit(alg, block, i, j):
    # type: (AlgebraSpec, int, int, int) -> Element
    """
    The matrix unit E_ij placed in the given block, zero in every other block.
    """
    d = alg.dim(block)
    if not (0 <= i < d and 0 <= j < d):
        raise errors.DimensionMismatchError('Matrix unit (%s, %s) does not fit block %s of dim %s!' % (i, j, block, d))

    blocks = [np.zeros((dim, dim)) for dim in alg.block_dims]
    blocks[block][i, j] = 1.0
    return Element(alg, blocks)


# ----------------------------------------------------------------------------------------------------------------------
def matrix_unit_indices(alg):
    # type: (AlgebraSpec) -> list
    """
    Every (block, i, j) in a fixed order: blocks ascending, then row-major inside a block. This order is the coordinate
    order used by linear map tables and by flatten().
    """
    return [(a, i, j) for a, d in enumerate(alg.block_dims) for i in range(d) for j in range(d)]


# ----------------------------------------------------------------------------------------------------------------------
def matrix_units(alg):
    # type: (AlgebraSpec) -> list
    return [matrix_unit(alg, a, i, j) for a, i, j in matrix_unit_indices(alg)]


# ----------------------------------------------------------------------------------------------------------------------
def flatten(A):
    # type: (Element) -> np.ndarray
    """
    Coordinates of A with respect to the matrix units, in matrix_unit_indices order.
    """
    return np.concatenate([block.reshape(-1) for block in A.blocks])


# ----------------------------------------------------------------------------------------------------------------------
def unflatten(alg, coords):
    # type: (AlgebraSpec, np.ndarray) -> Element
    blocks = list()
    offset = 0
    for d in alg.block_dims:
        blocks.append(np.asarray(coords[offset:offset + d * d]).reshape(d, d))
        offset += d * d
    return Element(alg, blocks)


# ----------------------------------------------------------------------------------------------------------------------
def mul(A, B):
    # type: (Element, Element) -> Element
    alg = check_same_algebra(A, B)
    return Element(alg, [a @ b for a, b in zip(A.blocks, B.blocks)])


# ----------------------------------------------------------------------------------------------------------------------
def add(A, B):
    # type: (Element, Element) -> Element
    alg = check_same_algebra(A, B)
    return Element(alg, [a + b for a, b in zip(A.blocks, B.blocks)])


# ----------------------------------------------------------------------------------------------------------------------
def subtract(A, B):
    # type: (Element, Element) -> Element
    alg = check_same_algebra(A, B)
    return Element(alg, [a - b for a, b in zip(A.blocks, B.blocks)])


# ----------------------------------------------------------------------------------------------------------------------
def scalar_mul(c, A):
    # type: (complex, Element) -> Element
    return Element(A.algebra, [c * a for a in A.blocks])


# ----------------------------------------------------------------------------------------------------------------------
def adjoint(A):
    # type: (Element) -> Element
    return Element(A.algebra, [a.conj().T for a in A.blocks])


# ----------------------------------------------------------------------------------------------------------------------
def transpose(A):
    # type: (Element) -> Element
    """
    Blockwise transpose in the standard basis, ie. c A* c with c the complex conjugation of each block's coordinates.
    """
    return Element(A.algebra, [a.T for a in A.blocks])


# ----------------------------------------------------------------------------------------------------------------------
def jordan_product(A, B):
    # type: (Element, Element) -> Element
    """
    The (unnormalized) Jordan product AB + BA.
    """
    alg = check_same_algebra(A, B)
    return Element(alg, [a @ b + b @ a for a, b in zip(A.blocks, B.blocks)])


# ----------------------------------------------------------------------------------------------------------------------
def operator_norm(A):
    # type: (Element) -> float
    """
    Largest singular value over all blocks. Computed from an SVD so that it is deterministic.
    """
    return max(float(scipy.linalg.svdvals(a)[0]) for a in A.blocks)


# ----------------------------------------------------------------------------------------------------------------------
def trace(A, block):
    # type: (Element, int) -> complex
    check_block(A.algebra, block)
    return complex(np.trace(A.blocks[block]))


# ----------------------------------------------------------------------------------------------------------------------
def is_close(A, B, tol=DEFAULT_TOL):
    # type: (Element, Element, float) -> bool
    return operator_norm(subtract(A, B)) <= tol


# ----------------------------------------------------------------------------------------------------------------------
def random_element(alg, rng):
    # type: (AlgebraSpec, np.random.Generator) -> Element
    """
    Element with independent standard complex Gaussian entries.
    """
    return Element(
        alg,
        [(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2) for d in alg.block_dims],
    )


# ----------------------------------------------------------------------------------------------------------------------
def random_hermitian(alg, rng):
    # type: (AlgebraSpec, np.random.Generator) -> Element
    G = random_element(alg, rng)
    return scalar_mul(0.5, add(G, adjoint(G)))


# ----------------------------------------------------------------------------------------------------------------------
def random_positive(alg, rng):
    # type: (AlgebraSpec, np.random.Generator) -> Element
    """
    Positive semidefinite element G*G for a Gaussian G.
    """
    G = random_element(alg, rng)
    return mul(adjoint(G), G)
