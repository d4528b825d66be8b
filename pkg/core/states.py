"""
Pure states of a block algebra as rays, transition probabilities and the orthogonality criteria.

A pure state is a vector state omega_x of one block, A -> <A_a x, x>. Rays are stored through a canonical
representative: unit norm, and the first component with modulus above PHASE_CUTOFF is real and positive. Two pure
states are therefore the same ray exactly when block and vector agree.

Orthogonality comes with three independent tests which must always agree:

* is_orthogonal - distinct blocks, or orthogonal representing vectors.
* state_distance_oracle - the dual norm of omega_0 - omega_1 equals 2.
* projection_witness - a projection E supporting omega_0 and killing omega_1.
"""
import logging

import numpy as np
import scipy.linalg

from wigner_stone.core import errors
from wigner_stone.core import algebra

logger = logging.getLogger(__name__)

PHASE_CUTOFF = 1e-12
DEFAULT_ORTHOGONALITY_TOL = 1e-9


# ----------------------------------------------------------------------------------------------------------------------
class PureState(object):

    __slots__ = ('_algebra', '_block', '_vector')

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, alg, block, vector):
        # type: (algebra.AlgebraSpec, int, np.ndarray) -> None
        """
        Stores an already canonical representative. Use make_pure_state() to build states from arbitrary vectors.
        """
        vector = np.array(vector, dtype=np.complex128)
        vector.flags.writeable = False
        self._algebra = alg
        self._block = int(block)
        self._vector = vector

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def algebra(self):
        return self._algebra

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def block(self):
        return self._block

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def vector(self):
        return self._vector

    # ------------------------------------------------------------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, PureState):
            return False
        return (
            self._algebra == other._algebra
            and self._block == other._block
            and np.array_equal(self._vector, other._vector)
        )

    # ------------------------------------------------------------------------------------------------------------------
    def __ne__(self, other):
        return not self.__eq__(other)

    # ------------------------------------------------------------------------------------------------------------------
    def __hash__(self):
        return hash((self._algebra, self._block, self._vector.tobytes()))

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'PureState(%r, block=%s, vector=%s)' % (self._algebra, self._block, self._vector.tolist())


# ----------------------------------------------------------------------------------------------------------------------
def canonical_phase(vector):
    # type: (np.ndarray) -> np.ndarray
    """
    Rotate a unit vector so that its first component with modulus above PHASE_CUTOFF is real and positive.
    """
    vector = np.asarray(vector, dtype=np.complex128)
    for k, component in enumerate(vector):
        modulus = abs(component)
        if modulus > PHASE_CUTOFF:
            result = vector * (np.conj(component) / modulus)
            # -- pin the anchor component so that it is exactly real
            result[k] = modulus
            return result
    return vector.copy()


# ----------------------------------------------------------------------------------------------------------------------
def make_pure_state(alg, block, v):
    # type: (algebra.AlgebraSpec, int, np.ndarray) -> PureState
    """
    Build the pure state omega_v of the given block.

    :param alg: the algebra the state lives on.
    :type alg: AlgebraSpec

    :param block: index of the block the vector belongs to.
    :type block: int

    :param v: any nonzero vector of length d_block. It does not need to be normalized.
    :type v: np.ndarray

    :return: the pure state, holding the canonical unit representative of the ray through v.
    :rtype: PureState
    """
    algebra.check_block(alg, block)

    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if v.shape[0] != alg.block_dims[block]:
        raise errors.DimensionMismatchError(
            'Block %s has dimension %s, got a vector of length %s!' % (block, alg.block_dims[block], v.shape[0])
        )

    if not np.all(np.isfinite(v)):
        raise errors.MalformedInputError('Vector contains non-finite entries!')

    norm = np.linalg.norm(v)
    if norm <= PHASE_CUTOFF:
        raise errors.ZeroVectorError('Cannot build a pure state from a vector of norm %s!' % norm)

    return PureState(alg, block, canonical_phase(v / norm))


# ----------------------------------------------------------------------------------------------------------------------
def basis_state(alg, block, i):
    # type: (algebra.AlgebraSpec, int, int) -> PureState
    v = np.zeros(alg.dim(block), dtype=np.complex128)
    v[i] = 1.0
    return make_pure_state(alg, block, v)


# ----------------------------------------------------------------------------------------------------------------------
def random_unit_vector(d, rng):
    # type: (int, np.random.Generator) -> np.ndarray
    """
    Unit vector drawn from the rotation invariant distribution (normalized complex Gaussian).
    """
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


# ----------------------------------------------------------------------------------------------------------------------
def random_pure_state(alg, rng, block=None):
    # type: (algebra.AlgebraSpec, np.random.Generator, int) -> PureState
    """
    Random pure state. If no block is given, the block is drawn uniformly first.
    """
    if block is None:
        block = int(rng.integers(alg.m))
    return make_pure_state(alg, block, random_unit_vector(alg.dim(block), rng))


# ----------------------------------------------------------------------------------------------------------------------
def check_same_algebra(*states):
    alg = states[0].algebra
    for other in states[1:]:
        if other.algebra != alg:
            raise errors.AlgebraMismatchError('%r and %r are different algebras!' % (alg, other.algebra))
    return alg


# ----------------------------------------------------------------------------------------------------------------------
def evaluate(omega, A):
    # type: (PureState, algebra.Element) -> complex
    """
    omega_x(A) = <A_a x, x> where a is the block of the state.
    """
    if omega.algebra != A.algebra:
        raise errors.AlgebraMismatchError('%r and %r are different algebras!' % (omega.algebra, A.algebra))
    x = omega.vector
    return complex(np.vdot(x, A.blocks[omega.block] @ x))


# ----------------------------------------------------------------------------------------------------------------------
def overlap(omega0, omega1):
    # type: (PureState, PureState) -> float
    """
    |<x0, x1>| for states of the same block, 0 for states of distinct blocks.
    """
    check_same_algebra(omega0, omega1)
    if omega0.block != omega1.block:
        return 0.0
    return float(np.sqrt(transition_probability(omega0, omega1)))


# ----------------------------------------------------------------------------------------------------------------------
def transition_probability(omega0, omega1):
    # type: (PureState, PureState) -> float
    """
    Transition probability between two pure states. Inequivalent states (distinct blocks) have probability 0.

    Both overlap orders are averaged so that swapping the arguments gives a bit-identical result.
    """
    check_same_algebra(omega0, omega1)
    if omega0.block != omega1.block:
        return 0.0

    forward = abs(np.vdot(omega0.vector, omega1.vector)) ** 2
    backward = abs(np.vdot(omega1.vector, omega0.vector)) ** 2
    return float(min(1.0, max(0.0, 0.5 * (forward + backward))))


# ----------------------------------------------------------------------------------------------------------------------
def is_orthogonal(omega0, omega1, tol=DEFAULT_ORTHOGONALITY_TOL):
    # type: (PureState, PureState, float) -> bool
    """
    Orthogonality by the inner product test: disjoint blocks, or representing vectors with |<x0, x1>| <= tol.
    """
    check_same_algebra(omega0, omega1)
    if omega0.block != omega1.block:
        return True
    return abs(np.vdot(omega0.vector, omega1.vector)) <= tol


# ----------------------------------------------------------------------------------------------------------------------
def density_matrix(omega):
    # type: (PureState) -> np.ndarray
    x = omega.vector
    return np.outer(x, x.conj())


# ----------------------------------------------------------------------------------------------------------------------
def state_distance_oracle(omega0, omega1):
    # type: (PureState, PureState) -> float
    """
    The dual norm ||omega_0 - omega_1||, computed as the trace norm of the block diagonal density difference
    P_x0 - P_x1. Each projection sits in its own block, so disjoint states always come out at 2.
    """
    alg = check_same_algebra(omega0, omega1)

    differences = dict()
    differences[omega0.block] = density_matrix(omega0)
    differences[omega1.block] = differences.get(omega1.block, np.zeros((alg.block_dims[omega1.block],) * 2))
    differences[omega1.block] = differences[omega1.block] - density_matrix(omega1)

    total = 0.0
    for block in sorted(differences):
        eigenvalues = scipy.linalg.eigvalsh(differences[block])
        total += float(np.sum(np.abs(eigenvalues)))
    return total


# ----------------------------------------------------------------------------------------------------------------------
def projection_witness(omega0, omega1, tol=DEFAULT_ORTHOGONALITY_TOL):
    # type: (PureState, PureState, float) -> algebra.Element
    """
    Find an orthogonal projection E with omega_0(EAE) = omega_0(A) and omega_1(EAE) = 0 for every A.

    Same block: the rank one projection onto x0. Distinct blocks: the identity of omega_0's block.

    :return: the projection, or None if the states are not orthogonal.
    :rtype: Element
    """
    alg = check_same_algebra(omega0, omega1)
    if not is_orthogonal(omega0, omega1, tol):
        return None

    if omega0.block != omega1.block:
        return algebra.block_identity(alg, [omega0.block])

    blocks = [np.zeros((d, d)) for d in alg.block_dims]
    blocks[omega0.block] = density_matrix(omega0)
    return algebra.Element(alg, blocks)


# ----------------------------------------------------------------------------------------------------------------------
def witness_residual(E, omega0, omega1):
    # type: (algebra.Element, PureState, PureState) -> float
    """
    Largest violation of the two projection witness identities over all matrix units, and of E being a projection.
    """
    residual = algebra.operator_norm(algebra.subtract(algebra.mul(E, E), E))
    residual = max(residual, algebra.operator_norm(algebra.subtract(algebra.adjoint(E), E)))

    for unit in algebra.matrix_units(E.algebra):
        compressed = algebra.mul(algebra.mul(E, unit), E)
        residual = max(residual, abs(evaluate(omega0, compressed) - evaluate(omega0, unit)))
        residual = max(residual, abs(evaluate(omega1, compressed)))
    return residual
