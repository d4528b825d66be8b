import unittest

import numpy as np
import numpy.testing as npt
import scipy.linalg

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import states
from wigner_stone.core import raymaps
from wigner_stone.core import wigner
from wigner_stone.core.blackboxes import bloch
from wigner_stone.core.blackboxes import builtin_maps
from wigner_stone.core.verdicts import Verdict


# ----------------------------------------------------------------------------------------------------------------------
def mixed_corpus(count, seed=500):
    """
    Random canonical maps with mixed kinds, d_b up to 5, several fibers sharing a target block and unused target blocks.
    """
    rng = np.random.default_rng(seed)
    result = list()
    for n in range(count):
        source_dims = rng.integers(1, 6, size=int(rng.integers(1, 4))).tolist()
        target_dims = rng.integers(1, 6, size=int(rng.integers(1, 3))).tolist() + [max(source_dims), 5]
        assignment = [int(rng.choice([a for a, d in enumerate(target_dims) if d >= db])) for db in source_dims]
        kinds = [raymaps.KINDS[int(k)] for k in rng.integers(2, size=len(source_dims))]
        result.append(wigner.random_canonical(source_dims, target_dims, assignment, kinds, seed + n))
    return result


# ----------------------------------------------------------------------------------------------------------------------
def phase_aligned_error(recovered, original):
    """
    max-entry distance between recovered and gamma * original, for the unit-modulus gamma fixed by the first column.
    """
    overlap = np.vdot(original[:, 0], recovered[:, 0])
    gamma = overlap / abs(overlap)
    return float(np.max(np.abs(recovered - gamma * original)))


# ----------------------------------------------------------------------------------------------------------------------
class TestReconstructFiber(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def test_identity(self):
        kind, U = wigner.reconstruct_fiber(builtin_maps.identity_map([3]), 0, 0)
        assert kind == raymaps.LINEAR
        npt.assert_allclose(U, np.eye(3), atol=1e-12)

    # ------------------------------------------------------------------------------------------------------------------
    def test_conjugation(self):
        kind, U = wigner.reconstruct_fiber(builtin_maps.conjugation_map([2]), 0, 0)
        assert kind == raymaps.ANTILINEAR
        npt.assert_allclose(U, np.eye(2), atol=1e-12)

    # ------------------------------------------------------------------------------------------------------------------
    def test_bloch_fails(self):
        with self.assertRaises(errors.ReconstructionFailure) as context:
            wigner.reconstruct_fiber(bloch.dim2_biorthogonal_not_tp(0.25), 0, 0)

        assert context.exception.reason in (
            errors.ReconstructionFailure.PHASE_PROBE_MISMATCH,
            errors.ReconstructionFailure.VALIDATION_FAILED,
        )
        assert context.exception.witness is not None

    # ------------------------------------------------------------------------------------------------------------------
    def test_collapse_fails_orthonormality(self):
        with self.assertRaises(errors.ReconstructionFailure) as context:
            wigner.reconstruct_fiber(builtin_maps.collapse_map([3]), 0, 0)
        assert context.exception.reason == errors.ReconstructionFailure.NON_ORTHONORMAL_IMAGES


# ----------------------------------------------------------------------------------------------------------------------
class TestAssemble(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def test_round_trip(self):
        for n, m in enumerate(mixed_corpus(50)):
            phi = wigner.assemble(raymaps.as_blackbox(m), seed=n)

            assert phi.canonical.assignment() == m.assignment()
            for original, recovered in zip(m.fibers, phi.canonical.fibers):
                assert recovered.kind == original.kind, (n, original.source_block)
                error = phase_aligned_error(recovered.isometry, original.isometry)
                if error > 1e-7:
                    self.fail('map %s fiber %s: isometry error %.3g' % (n, original.source_block, error))

            verdict = wigner.verify_induction(raymaps.as_blackbox(m), phi, samples=20, seed=n, tol=1e-8)
            assert verdict.status == Verdict.VERIFIED, (n, verdict)

    # ------------------------------------------------------------------------------------------------------------------
    def test_shared_target_block(self):
        m = wigner.random_canonical([2, 2], [4], [0, 0], [raymaps.LINEAR, raymaps.ANTILINEAR], seed=3)
        assert raymaps.fibre_assignment(raymaps.as_blackbox(m)) == [(0, 0), (1, 0)]

        phi = wigner.assemble(raymaps.as_blackbox(m))
        assert [f.target_block for f in phi.canonical.fibers] == [0, 0]

    # ------------------------------------------------------------------------------------------------------------------
    def test_workers_do_not_change_result(self):
        m = mixed_corpus(1, seed=77)[0]
        single = wigner.assemble(raymaps.as_blackbox(m), seed=4)
        threaded = wigner.assemble(raymaps.as_blackbox(m), seed=4, workers=3)
        for a, b in zip(single.canonical.fibers, threaded.canonical.fibers):
            npt.assert_array_equal(a.isometry, b.isometry)

    # ------------------------------------------------------------------------------------------------------------------
    def test_not_fibre_preserving(self):
        with self.assertRaises(errors.AssemblyFailure) as context:
            wigner.assemble(builtin_maps.split_fibre_map(2))
        assert isinstance(context.exception.cause, errors.NotFibrePreservingError)
        assert context.exception.fiber == 0

    # ------------------------------------------------------------------------------------------------------------------
    def test_bloch(self):
        with self.assertRaises(errors.AssemblyFailure) as context:
            wigner.assemble(bloch.dim2_biorthogonal_not_tp(0.25))
        assert context.exception.cause.reason == errors.ReconstructionFailure.VALIDATION_FAILED


# ----------------------------------------------------------------------------------------------------------------------
class TestApplyInduced(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def canonical(self, source, target, kind, U):
        return wigner.InducedMap(raymaps.RayMapCanonical(
            algebra.make_algebra(source), algebra.make_algebra(target), [raymaps.FiberMap(0, 0, kind, U)]
        ))

    # ------------------------------------------------------------------------------------------------------------------
    def test_identity(self):
        phi = self.canonical([2], [2], raymaps.LINEAR, np.eye(2))
        A = algebra.random_element(phi.domain, np.random.default_rng(0))
        assert algebra.is_close(wigner.apply_induced(phi, A), A, tol=0.0)

    # ------------------------------------------------------------------------------------------------------------------
    def test_antilinear_transposes(self):
        phi = self.canonical([2], [2], raymaps.ANTILINEAR, np.eye(2))
        image = phi(algebra.matrix_unit(phi.domain, 0, 0, 1))
        assert algebra.is_close(image, algebra.matrix_unit(phi.codomain, 0, 1, 0), tol=0.0)

    # ------------------------------------------------------------------------------------------------------------------
    def test_corner(self):
        phi = self.canonical([2], [3], raymaps.LINEAR, np.eye(3, 2))
        A = algebra.random_element(phi.domain, np.random.default_rng(1))
        npt.assert_allclose(wigner.apply_induced(phi, A).blocks[0], A.blocks[0][:2, :2], atol=1e-15)

    # ------------------------------------------------------------------------------------------------------------------
    def test_mismatch(self):
        phi = self.canonical([2], [3], raymaps.LINEAR, np.eye(3, 2))
        with self.assertRaises(errors.AlgebraMismatchError):
            wigner.apply_induced(phi, algebra.identity(algebra.make_algebra([2])))

    # ------------------------------------------------------------------------------------------------------------------
    def test_unital_positive_contractive(self):
        rng = np.random.default_rng(21)
        for m in mixed_corpus(5, seed=900):
            phi = wigner.InducedMap(m)
            for fiber in m.fibers:
                U = fiber.isometry
                assert np.max(np.abs(U.conj().T @ U - np.eye(U.shape[1]))) <= 1e-10

            for _ in range(20):
                P = algebra.random_positive(phi.domain, rng)
                for block in wigner.apply_induced(phi, P).blocks:
                    assert scipy.linalg.eigvalsh(0.5 * (block + block.conj().T))[0] >= -1e-9

                A = algebra.random_element(phi.domain, rng)
                assert algebra.operator_norm(wigner.apply_induced(phi, A)) <= algebra.operator_norm(A) + 1e-9


# ----------------------------------------------------------------------------------------------------------------------
class TestVerifyInduction(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def test_perturbed_isometry(self):
        m = wigner.random_canonical([3], [3], [0], [raymaps.LINEAR], seed=8)
        U = np.array(m.fibers[0].isometry)
        U[1, 2] += 1e-3
        U, _ = scipy.linalg.qr(U)
        perturbed = wigner.InducedMap(raymaps.RayMapCanonical(
            m.source_algebra, m.target_algebra, [raymaps.FiberMap(0, 0, raymaps.LINEAR, U)]
        ))

        verdict = wigner.verify_induction(raymaps.as_blackbox(m), perturbed, samples=50, seed=0)
        assert verdict.failed
        assert len(verdict.witness.states) == 1 and len(verdict.witness.elements) == 1

    # ------------------------------------------------------------------------------------------------------------------
    def test_bloch_has_no_inducing_map(self):
        alg = algebra.make_algebra([2])
        fibers = [raymaps.FiberMap(0, 0, raymaps.LINEAR, np.eye(2))]
        identity = wigner.InducedMap(raymaps.RayMapCanonical(alg, alg, fibers))
        verdict = wigner.verify_induction(bloch.dim2_biorthogonal_not_tp(0.25), identity, samples=50, seed=0)
        assert verdict.failed


# ----------------------------------------------------------------------------------------------------------------------
class TestBlochCounterexample(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def test_alpha_range(self):
        for alpha in (0.0, 0.5, -0.7):
            with self.assertRaises(errors.AlphaOutOfRangeError):
                bloch.dim2_biorthogonal_not_tp(alpha)

    # ------------------------------------------------------------------------------------------------------------------
    def test_poles_fixed(self):
        ray_map = bloch.dim2_biorthogonal_not_tp(0.25)
        alg = ray_map.source_algebra
        for i in range(2):
            e = states.basis_state(alg, 0, i)
            npt.assert_allclose(ray_map(e).vector, e.vector, atol=1e-15)

    # ------------------------------------------------------------------------------------------------------------------
    def test_transition_probability_distorted(self):
        alpha = 0.25
        ray_map = bloch.dim2_biorthogonal_not_tp(alpha)
        alg = ray_map.source_algebra

        north = states.basis_state(alg, 0, 0)
        tilted = states.make_pure_state(alg, 0, bloch.from_bloch_angles(np.pi / 3, 0.0))

        assert abs(states.transition_probability(north, tilted) - 0.75) <= 1e-12

        f = np.pi / 3 + alpha * np.sin(2 * np.pi / 3)
        expected = np.cos(f / 2) ** 2
        measured = states.transition_probability(ray_map(north), ray_map(tilted))
        assert abs(measured - expected) <= 1e-12
        assert abs(measured - 0.75) > 0.05

    # ------------------------------------------------------------------------------------------------------------------
    def test_small_alpha_converges(self):
        alpha = 0.01
        report = raymaps.classify(bloch.dim2_biorthogonal_not_tp(alpha), samples=50, seed=0)
        witness = report[raymaps.LOCALLY_TP_PRESERVING].witness
        assert witness.measured['tp_gap'] <= 4 * alpha


# ----------------------------------------------------------------------------------------------------------------------
class TestRandomCanonical(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def test_deterministic(self):
        a = wigner.random_canonical([2, 3], [3, 3], [0, 1], [raymaps.LINEAR, raymaps.ANTILINEAR], seed=42)
        b = wigner.random_canonical([2, 3], [3, 3], [0, 1], [raymaps.LINEAR, raymaps.ANTILINEAR], seed=42)
        for x, y in zip(a.fibers, b.fibers):
            npt.assert_array_equal(x.isometry, y.isometry)

    # ------------------------------------------------------------------------------------------------------------------
    def test_isometry(self):
        m = wigner.random_canonical([4], [5], [0], [raymaps.LINEAR], seed=1)
        U = m.fibers[0].isometry
        assert np.max(np.abs(U.conj().T @ U - np.eye(4))) <= 1e-10

    # ------------------------------------------------------------------------------------------------------------------
    def test_too_large_fiber(self):
        with self.assertRaises(errors.DimensionMismatchError):
            wigner.random_canonical([3], [2], [0], [raymaps.LINEAR], seed=0)

    # ------------------------------------------------------------------------------------------------------------------
    def test_haar_marginal(self):
        rng = np.random.default_rng(99)
        d = 4
        moduli = [abs(wigner.haar_isometry(d, d, rng)[0, 0]) ** 2 for _ in range(1000)]
        assert abs(np.mean(moduli) - 1.0 / d) <= 0.1 / d


if __name__ == '__main__':
    unittest.main()
