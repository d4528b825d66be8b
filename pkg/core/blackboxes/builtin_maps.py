"""
Hand-built black box ray maps, selectable by name. Used as fixtures and as counterexamples.
"""
import numpy as np

from wigner_stone.core import algebra
from wigner_stone.core import states
from wigner_stone.core import raymaps
from wigner_stone.core.blackboxes.registry import register_blackbox_type


# ----------------------------------------------------------------------------------------------------------------------
def identity_map(dims=(2,)):
    alg = algebra.make_algebra(dims)
    return raymaps.RayMapBlackBox(alg, alg, lambda omega: omega, name='identity', structurally_solid=True)


# ----------------------------------------------------------------------------------------------------------------------
def conjugation_map(dims=(2,)):
    """
    Entrywise complex conjugation of the representing vector in every block: the antilinear Wigner symmetry with U = I.
    """
    alg = algebra.make_algebra(dims)

    def evaluator(omega):
        return states.make_pure_state(alg, omega.block, np.conj(omega.vector))

    return raymaps.RayMapBlackBox(alg, alg, evaluator, name='conjugation', structurally_solid=True)


# ----------------------------------------------------------------------------------------------------------------------
def collapse_map(dims=(1, 1)):
    """
    Sends every pure state to the first basis state of block 0. On C(K) with |K| >= 2 this merges distinct, hence
    orthogonal, points.
    """
    alg = algebra.make_algebra(dims)
    target = states.basis_state(alg, 0, 0)
    return raymaps.RayMapBlackBox(alg, alg, lambda omega: target, name='collapse')


# ----------------------------------------------------------------------------------------------------------------------
def split_fibre_map(dim=2):
    """
    M_d -> M_d + M_d: rays with |x_1|^2 >= 1/2 stay in target block 0, all others go to target block 1. Splits the
    single source fiber across two target fibers.
    """
    source = algebra.make_algebra([dim])
    target = algebra.make_algebra([dim, dim])

    def evaluator(omega):
        block = 0 if abs(omega.vector[0]) ** 2 >= 0.5 else 1
        return states.make_pure_state(target, block, omega.vector)

    return raymaps.RayMapBlackBox(source, target, evaluator, name='split-fibre')


register_blackbox_type('identity', identity_map)
register_blackbox_type('conjugation', conjugation_map)
register_blackbox_type('collapse', collapse_map)
register_blackbox_type('split-fibre', split_fibre_map)
