import unittest

import numpy as np
import numpy.testing as npt

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import states
from wigner_stone.core import blackboxes
from wigner_stone.core.blackboxes import bloch


# ----------------------------------------------------------------------------------------------------------------------
class TestSelectors(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def test_parse(self):
        assert blackboxes.parse_selector('dim2-bloch:alpha=0.25') == ('dim2-bloch', {'alpha': 0.25})
        assert blackboxes.parse_selector('collapse:dims=1x1x2') == ('collapse', {'dims': [1, 1, 2]})
        assert blackboxes.parse_selector(' split-fibre:dim=3 ') == ('split-fibre', {'dim': 3})
        assert blackboxes.parse_selector('identity') == ('identity', {})

    # ------------------------------------------------------------------------------------------------------------------
    def test_malformed(self):
        for selector in ('dim2-bloch:alpha', 'dim2-bloch:=1', 'collapse:dims=1xa'):
            with self.assertRaises(errors.MalformedInputError):
                blackboxes.parse_selector(selector)

    # ------------------------------------------------------------------------------------------------------------------
    def test_registered(self):
        for key in ('dim2-bloch', 'identity', 'conjugation', 'collapse', 'split-fibre'):
            assert key in blackboxes.list_blackbox_types()

    # ------------------------------------------------------------------------------------------------------------------
    def test_unknown(self):
        with self.assertRaises(errors.UnknownBlackBoxError):
            blackboxes.blackbox_from_selector('swap-everything')

    # ------------------------------------------------------------------------------------------------------------------
    def test_bad_arguments(self):
        with self.assertRaises(errors.MalformedInputError):
            blackboxes.blackbox_from_selector('identity:alpha=2')

    # ------------------------------------------------------------------------------------------------------------------
    def test_alpha_range(self):
        with self.assertRaises(errors.AlphaOutOfRangeError):
            blackboxes.blackbox_from_selector('dim2-bloch:alpha=0.5')

    # ------------------------------------------------------------------------------------------------------------------
    def test_build(self):
        ray_map = blackboxes.blackbox_from_selector('split-fibre:dim=3')
        assert ray_map.source_algebra.block_dims == (3,)
        assert ray_map.target_algebra.block_dims == (3, 3)

        ray_map = blackboxes.blackbox_from_selector('collapse:dims=2x1')
        assert ray_map.source_algebra.block_dims == (2, 1)


# ----------------------------------------------------------------------------------------------------------------------
class TestBlochGeometry(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def test_angles_round_trip(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            theta, phi = rng.uniform(0.01, np.pi - 0.01), rng.uniform(-np.pi, np.pi)
            measured = bloch.bloch_angles(bloch.from_bloch_angles(theta, phi))
            assert abs(measured[0] - theta) <= 1e-12
            assert abs(np.exp(1j * measured[1]) - np.exp(1j * phi)) <= 1e-12

    # ------------------------------------------------------------------------------------------------------------------
    def test_transition_probability_is_half_angle(self):
        alg = algebra.make_algebra([2])
        north = states.basis_state(alg, 0, 0)
        for theta in (0.3, 1.0, 2.5):
            omega = states.make_pure_state(alg, 0, bloch.from_bloch_angles(theta, 0.7))
            assert abs(states.transition_probability(north, omega) - np.cos(theta / 2) ** 2) <= 1e-12

    # ------------------------------------------------------------------------------------------------------------------
    def test_distortion_is_antipodal(self):
        for alpha in (0.1, -0.3, 0.45):
            thetas = np.linspace(0.0, np.pi, 101)
            f = bloch.latitude_distortion(thetas, alpha)
            npt.assert_allclose(bloch.latitude_distortion(np.pi - thetas, alpha), np.pi - f, atol=1e-12)
            assert np.all(np.diff(f) > 0)

    # ------------------------------------------------------------------------------------------------------------------
    def test_antipodes_stay_antipodes(self):
        ray_map = bloch.dim2_biorthogonal_not_tp(0.3)
        alg = ray_map.source_algebra
        rng = np.random.default_rng(1)
        for _ in range(50):
            x = states.random_pure_state(alg, rng)
            y = states.make_pure_state(alg, 0, [-np.conj(x.vector[1]), np.conj(x.vector[0])])
            assert states.is_orthogonal(ray_map(x), ray_map(y))

    # ------------------------------------------------------------------------------------------------------------------
    def test_equator_fixed(self):
        ray_map = bloch.dim2_biorthogonal_not_tp(0.2)
        alg = ray_map.source_algebra
        omega = states.make_pure_state(alg, 0, bloch.from_bloch_angles(np.pi / 2, 1.1))
        npt.assert_allclose(ray_map(omega).vector, omega.vector, atol=1e-12)


if __name__ == '__main__':
    unittest.main()
