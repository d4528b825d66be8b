"""
Bloch sphere geometry of rays in C^2, and the latitude distortion that is bi-orthogonal without preserving
transition probabilities.

A unit vector (cos(theta/2), e^{i phi} sin(theta/2)) sits at polar angle theta and azimuth phi. Orthogonal rays are
antipodal points, and the transition probability between two rays is cos^2 of half their angular distance.
"""
import numpy as np

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import states
from wigner_stone.core import raymaps
from wigner_stone.core.blackboxes.registry import register_blackbox_type


# ----------------------------------------------------------------------------------------------------------------------
def bloch_angles(vector):
    # type: (np.ndarray) -> tuple
    """
    :return: (theta, phi) of a unit vector in C^2, theta in [0, pi].
    :rtype: tuple
    """
    x0, x1 = vector
    theta = 2.0 * np.arctan2(abs(x1), abs(x0))
    phi = float(np.angle(x1) - np.angle(x0)) if abs(x1) > states.PHASE_CUTOFF else 0.0
    return float(theta), phi


# ----------------------------------------------------------------------------------------------------------------------
def from_bloch_angles(theta, phi):
    # type: (float, float) -> np.ndarray
    return np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)], dtype=np.complex128)


# ----------------------------------------------------------------------------------------------------------------------
def latitude_distortion(theta, alpha):
    # type: (float, float) -> float
    """
    f(theta) = theta + alpha sin(2 theta). Satisfies f(pi - theta) = pi - f(theta), and is increasing for
    |alpha| < 1/2, so antipodes go to antipodes in both directions.
    """
    return theta + alpha * np.sin(2.0 * theta)


# ----------------------------------------------------------------------------------------------------------------------
def dim2_biorthogonal_not_tp(alpha):
    # type: (float) -> raymaps.RayMapBlackBox
    """
    Ray map of M_2(C) moving every point of the Bloch sphere along its meridian, (theta, phi) -> (f(theta), phi).

    It is a bi-orthogonal bijection of the pure states, but distorts the transition probabilities of generic pairs,
    so in dimension 2 bi-orthogonality alone does not make a map a Wigner symmetry.

    :param alpha: strength of the distortion, 0 < |alpha| < 0.5.
    :type alpha: float
    """
    alpha = float(alpha)
    if not 0.0 < abs(alpha) < 0.5:
        raise errors.AlphaOutOfRangeError('alpha must satisfy 0 < |alpha| < 0.5, got %s!' % alpha)

    alg = algebra.make_algebra([2])

    def evaluator(omega):
        theta, phi = bloch_angles(omega.vector)
        return states.make_pure_state(alg, 0, from_bloch_angles(latitude_distortion(theta, alpha), phi))

    return raymaps.RayMapBlackBox(alg, alg, evaluator, name='dim2-bloch:alpha=%r' % alpha)


register_blackbox_type('dim2-bloch', dim2_biorthogonal_not_tp)
