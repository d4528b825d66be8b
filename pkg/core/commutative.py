"""
The commutative case: algebras whose blocks all have dimension one are the functions on a finite set of points, and
their unital *-homomorphisms are exactly the composition operators f -> f o nu.
"""
import logging

import numpy as np

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import raymaps
from wigner_stone.core.jordan import LinearMapTable
from wigner_stone.core.verdicts import Witness

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10


# ----------------------------------------------------------------------------------------------------------------------
class PointMap(object):
    """
    A map nu from s target points into n source points, nu[t] being the source point of target point t.
    """

    __slots__ = ('n', 's', 'nu')

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, n, s, nu):
        # type: (int, int, list) -> None
        nu = tuple(int(k) for k in nu)
        if n < 1 or s < 1:
            raise errors.NonPositiveDimError('Point sets must be nonempty, got n=%s, s=%s!' % (n, s))
        if len(nu) != s:
            raise errors.DimensionMismatchError('nu needs %s entries, got %s!' % (s, len(nu)))
        if any(k < 0 or k >= n for k in nu):
            raise errors.BlockOutOfRangeError('nu=%s points outside of 0..%s!' % (list(nu), n - 1))

        self.n = int(n)
        self.s = int(s)
        self.nu = nu

    # ------------------------------------------------------------------------------------------------------------------
    def is_injective(self):
        return len(set(self.nu)) == self.s

    # ------------------------------------------------------------------------------------------------------------------
    def is_bijective(self):
        return self.is_injective() and self.n == self.s

    # ------------------------------------------------------------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, PointMap) and (self.n, self.s, self.nu) == (other.n, other.s, other.nu)

    # ------------------------------------------------------------------------------------------------------------------
    def __ne__(self, other):
        return not self.__eq__(other)

    # ------------------------------------------------------------------------------------------------------------------
    def __hash__(self):
        return hash((self.n, self.s, self.nu))

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'PointMap(n=%s, s=%s, nu=%s)' % (self.n, self.s, list(self.nu))


# ----------------------------------------------------------------------------------------------------------------------
def composition_operator(nu):
    # type: (PointMap) -> LinearMapTable
    """
    f -> f o nu as a table from [1]^n to [1]^s: e_k is pulled back to the indicator of {t : nu(t) = k}.
    """
    source = algebra.make_algebra([1] * nu.n)
    target = algebra.make_algebra([1] * nu.s)

    images = list()
    for k in range(nu.n):
        images.append(algebra.block_identity(target, [t for t, point in enumerate(nu.nu) if point == k]))
    return LinearMapTable(source, target, images)


# ----------------------------------------------------------------------------------------------------------------------
def _check_commutative(t):
    if not t.source.is_commutative() or not t.target.is_commutative():
        raise errors.PreconditionFailedError(
            'Point maps live between commutative algebras, got %r -> %r!' % (t.source, t.target)
        )


# ----------------------------------------------------------------------------------------------------------------------
def extract_point_map(t, tol=DEFAULT_TOL):
    # type: (LinearMapTable, float) -> PointMap
    """
    Recover nu from a unital *-homomorphism between commutative algebras.

    The images phi(e_k) must be self adjoint, idempotent, mutually orthogonal and sum to the identity, so every target
    point t lies in the support of exactly one of them: that one is nu(t).

    :param t: table between algebras with all blocks of dimension one.
    :type t: LinearMapTable

    :raises NotStarHomomorphismError: with the offending matrix units as witness.
    """
    _check_commutative(t)

    # -- columns: source points, rows: target points
    values = t.matrix()

    for k in range(t.source.m):
        column = values[:, k]
        residual = float(np.max(np.abs(column * column - column)))
        adjoint = float(np.max(np.abs(column.conj() - column)))
        if residual > tol or adjoint > tol:
            raise errors.NotStarHomomorphismError(
                'phi(e_%s) is not a projection!' % k,
                witness=Witness(elements=(algebra.matrix_unit(t.source, k, 0, 0),),
                                measured={'idempotent_residual': residual, 'adjoint_residual': adjoint}),
            )

    for k in range(t.source.m):
        for l in range(k + 1, t.source.m):
            residual = float(np.max(np.abs(values[:, k] * values[:, l])))
            if residual > tol:
                raise errors.NotStarHomomorphismError(
                    'phi(e_%s) phi(e_%s) != 0!' % (k, l),
                    witness=Witness(
                        elements=(algebra.matrix_unit(t.source, k, 0, 0), algebra.matrix_unit(t.source, l, 0, 0)),
                        measured={'product_residual': residual},
                    ),
                )

    unit_residual = np.abs(values.sum(axis=1) - 1.0)
    if np.max(unit_residual) > tol:
        raise errors.NotStarHomomorphismError(
            'phi is not unital!',
            witness=Witness(elements=(algebra.identity(t.source),),
                            measured={'unit_residual': float(np.max(unit_residual))}),
        )

    nu = list()
    for point in range(t.target.m):
        support = [k for k in range(t.source.m) if abs(values[point, k] - 1.0) <= tol]
        if len(support) != 1:
            raise errors.NotStarHomomorphismError(
                'Target point %s is supported by %s!' % (point, support),
                witness=Witness(measured={'target_point': point, 'support': support}),
            )
        nu.append(support[0])

    return PointMap(t.source.m, t.target.m, nu)


# ----------------------------------------------------------------------------------------------------------------------
def point_map_canonical(nu):
    # type: (PointMap) -> raymaps.RayMapCanonical
    """
    The ray map dual to composition_operator(nu): the point state at t goes to the point state at nu(t).
    """
    source = algebra.make_algebra([1] * nu.s)
    target = algebra.make_algebra([1] * nu.n)
    fibers = [raymaps.FiberMap(t, k, raymaps.LINEAR, np.ones((1, 1))) for t, k in enumerate(nu.nu)]
    return raymaps.RayMapCanonical(source, target, fibers)
