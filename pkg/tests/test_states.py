import unittest

import numpy as np
import numpy.testing as npt

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import states


# ----------------------------------------------------------------------------------------------------------------------
class TestPureStates(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def setUp(self):
        self.alg = algebra.make_algebra([2])

    # ------------------------------------------------------------------------------------------------------------------
    def test_normalization(self):
        omega = states.make_pure_state(self.alg, 0, [2, 0])
        npt.assert_array_equal(omega.vector, [1, 0])

    # ------------------------------------------------------------------------------------------------------------------
    def test_phase_gauge(self):
        omega = states.make_pure_state(self.alg, 0, [0, 1j])
        npt.assert_array_equal(omega.vector, [0, 1])

        rng = np.random.default_rng(5)
        alg = algebra.make_algebra([4])
        for _ in range(20):
            v = states.random_unit_vector(4, rng)
            rotated = v * np.exp(1j * rng.uniform(0, 2 * np.pi))
            a = states.make_pure_state(alg, 0, v)
            b = states.make_pure_state(alg, 0, rotated)
            npt.assert_allclose(a.vector, b.vector, atol=1e-12)
            assert a.vector[0].imag == 0.0 and a.vector[0].real > 0

    # ------------------------------------------------------------------------------------------------------------------
    def test_zero_vector(self):
        with self.assertRaises(errors.ZeroVectorError):
            states.make_pure_state(self.alg, 0, [0, 0])

    # ------------------------------------------------------------------------------------------------------------------
    def test_bad_shapes(self):
        with self.assertRaises(errors.DimensionMismatchError):
            states.make_pure_state(self.alg, 0, [1, 0, 0])
        with self.assertRaises(errors.BlockOutOfRangeError):
            states.make_pure_state(self.alg, 1, [1, 0])

    # ------------------------------------------------------------------------------------------------------------------
    def test_evaluate(self):
        e1 = states.basis_state(self.alg, 0, 0)
        assert abs(states.evaluate(e1, algebra.identity(self.alg)) - 1) <= 1e-12
        assert states.evaluate(e1, algebra.matrix_unit(self.alg, 0, 0, 0)) == 1
        assert states.evaluate(e1, algebra.matrix_unit(self.alg, 0, 1, 1)) == 0

        plus = states.make_pure_state(self.alg, 0, [1, 1])
        assert abs(states.evaluate(plus, algebra.matrix_unit(self.alg, 0, 0, 1)) - 0.5) <= 1e-12


# ----------------------------------------------------------------------------------------------------------------------
class TestTransitionProbability(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def test_examples(self):
        alg = algebra.make_algebra([2, 2])
        a = states.basis_state(alg, 0, 0)
        b = states.basis_state(alg, 1, 0)
        plus = states.make_pure_state(alg, 0, [1, 1])

        assert states.transition_probability(a, b) == 0.0
        assert abs(states.transition_probability(a, a) - 1.0) <= 1e-15
        assert abs(states.transition_probability(a, plus) - 0.5) <= 1e-12

    # ------------------------------------------------------------------------------------------------------------------
    def test_symmetry(self):
        rng = np.random.default_rng(1)
        alg = algebra.make_algebra([5])
        for _ in range(100):
            x = states.random_pure_state(alg, rng)
            y = states.random_pure_state(alg, rng)
            assert states.transition_probability(x, y) == states.transition_probability(y, x)

    # ------------------------------------------------------------------------------------------------------------------
    def test_unit_probability_means_same_ray(self):
        rng = np.random.default_rng(2)
        alg = algebra.make_algebra([3])
        x = states.random_pure_state(alg, rng)
        y = states.make_pure_state(alg, 0, 1j * x.vector)
        assert states.transition_probability(x, y) >= 1.0 - 1e-12
        npt.assert_allclose(x.vector, y.vector, atol=1e-9)

    # ------------------------------------------------------------------------------------------------------------------
    def test_mismatch(self):
        x = states.basis_state(algebra.make_algebra([2]), 0, 0)
        y = states.basis_state(algebra.make_algebra([3]), 0, 0)
        with self.assertRaises(errors.AlgebraMismatchError):
            states.transition_probability(x, y)


# ----------------------------------------------------------------------------------------------------------------------
class TestOrthogonalityCriteria(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def test_examples(self):
        alg = algebra.make_algebra([2])
        e1, e2 = states.basis_state(alg, 0, 0), states.basis_state(alg, 0, 1)
        plus = states.make_pure_state(alg, 0, [1, 1])

        assert states.is_orthogonal(e1, e2)
        assert not states.is_orthogonal(e1, plus)

        assert states.state_distance_oracle(e1, e1) == 0.0
        assert abs(states.state_distance_oracle(e1, e2) - 2.0) <= 1e-12
        assert abs(states.state_distance_oracle(e1, plus) - np.sqrt(2)) <= 1e-8

    # ------------------------------------------------------------------------------------------------------------------
    def test_projection_witness_examples(self):
        alg = algebra.make_algebra([2])
        e1, e2 = states.basis_state(alg, 0, 0), states.basis_state(alg, 0, 1)
        E = states.projection_witness(e1, e2)
        assert algebra.is_close(E, algebra.matrix_unit(alg, 0, 0, 0), tol=1e-15)
        assert states.witness_residual(E, e1, e2) <= 1e-12

        alg = algebra.make_algebra([1, 1])
        E = states.projection_witness(states.basis_state(alg, 0, 0), states.basis_state(alg, 1, 0))
        npt.assert_array_equal(E.blocks[0], [[1]])
        npt.assert_array_equal(E.blocks[1], [[0]])

        plus = states.make_pure_state(algebra.make_algebra([2]), 0, [1, 1])
        assert states.projection_witness(states.basis_state(plus.algebra, 0, 0), plus) is None

    # ------------------------------------------------------------------------------------------------------------------
    def test_three_criteria_agree(self):
        rng = np.random.default_rng(2024)
        mismatches = list()

        for n in range(500):
            alg = algebra.make_algebra(rng.integers(1, 6, size=int(rng.integers(1, 4))).tolist())
            x = states.random_pure_state(alg, rng)

            # -- a third of the pairs is orthogonal by construction
            kind = n % 3
            if kind == 0 and alg.block_dims[x.block] > 1:
                y_vector = states.random_unit_vector(alg.block_dims[x.block], rng)
                y_vector = y_vector - np.vdot(x.vector, y_vector) * x.vector
                y = states.make_pure_state(alg, x.block, y_vector)
            else:
                y = states.random_pure_state(alg, rng)

            inner = states.is_orthogonal(x, y, 1e-9)
            distance = abs(states.state_distance_oracle(x, y) - 2.0) <= 1e-8
            E = states.projection_witness(x, y, 1e-9)
            witness = E is not None and states.witness_residual(E, x, y) <= 1e-8

            if not (inner == distance == witness):
                mismatches.append((x, y, inner, distance, witness))

            if x.block == y.block:
                closed_form = 2.0 * np.sqrt(1.0 - states.transition_probability(x, y))
                assert abs(states.state_distance_oracle(x, y) - closed_form) <= 1e-8

        if mismatches:
            self.fail('Orthogonality criteria disagree on %s pairs, first: %r' % (len(mismatches), mismatches[0]))

    # ------------------------------------------------------------------------------------------------------------------
    def test_witness_separates_states(self):
        """
        (omega_0 - omega_1)(2E - I) = 2 for orthogonal states, the norm bound attained on a self adjoint contraction.
        """
        rng = np.random.default_rng(8)
        alg = algebra.make_algebra([3, 2])
        x = states.random_pure_state(alg, rng, block=0)
        y = states.make_pure_state(alg, 0, np.cross(x.vector.conj(), states.random_unit_vector(3, rng)))
        assert states.is_orthogonal(x, y)

        E = states.projection_witness(x, y)
        contraction = algebra.subtract(algebra.scalar_mul(2, E), algebra.identity(alg))
        assert abs(algebra.operator_norm(contraction) - 1.0) <= 1e-12

        value = states.evaluate(x, contraction) - states.evaluate(y, contraction)
        assert abs(value - 2.0) <= 1e-9


if __name__ == '__main__':
    unittest.main()
