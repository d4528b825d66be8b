"""
Constructive generalized Wigner reconstruction.

Given a black box ray map from the pure states of B to those of A, reconstruct_fiber() recovers, fiber by fiber, the
kind (linear or antilinear) and the isometry U_b of a Wigner symmetry inducing it. assemble() runs this over every
source block and packages the result as an InducedMap, the linear map phi: A -> B whose dual reproduces the ray map:

    omega(apply_induced(phi, A)) == ray_map(omega)(A)

Target blocks that receive no fiber are simply never read by phi.
"""
import logging
from concurrent import futures

import numpy as np
import scipy.linalg

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import states
from wigner_stone.core import raymaps
from wigner_stone.core.blackboxes.bloch import dim2_biorthogonal_not_tp
from wigner_stone.core.verdicts import Verdict, Witness

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
VALIDATION_RAYS = 50


# ----------------------------------------------------------------------------------------------------------------------
class InducedMap(object):
    """
    The linear map phi: A -> B reconstructed from a ray map P_B -> P_A. Note the direction: the ray map reads source
    blocks of B, phi reads target blocks of A.
    """

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, canonical):
        # type: (raymaps.RayMapCanonical) -> None
        self.canonical = canonical

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def domain(self):
        return self.canonical.target_algebra

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def codomain(self):
        return self.canonical.source_algebra

    # ------------------------------------------------------------------------------------------------------------------
    def __call__(self, A):
        return apply_induced(self, A)

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'InducedMap(%r -> %r, %s)' % (self.domain, self.codomain, self.canonical.assignment())


# ----------------------------------------------------------------------------------------------------------------------
def _fiber_seeds(seed, count):
    # type: (int, int) -> list
    """
    One independent generator per fiber, split from a single seed, so concurrency never changes results.
    """
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


# ----------------------------------------------------------------------------------------------------------------------
def reconstruct_fiber(ray_map, source_block, target_block, tol=DEFAULT_TOL, seed=0, rng=None):
    # type: (raymaps.RayMapBlackBox, int, int, float, int, np.random.Generator) -> tuple
    """
    Recover the kind and isometry of one fiber of a ray map.

    The images f_j of the basis rays fix U's columns up to phases. The images of (e_1 + e_j)/sqrt(2) fix those phases
    relative to f_1, and the images of (e_1 + i e_j)/sqrt(2) tell linear from antilinear. The result is then validated
    on random rays, since in dimension 2 a map can pass every probe without preserving transition probabilities.

    :param ray_map: the black box to reconstruct.
    :type ray_map: RayMapBlackBox

    :param source_block: block b of the source algebra.
    :type source_block: int

    :param target_block: block a(b) of the target algebra that b is mapped into.
    :type target_block: int

    :param tol: tolerance on overlaps and transition probabilities.
    :type tol: float

    :return: (kind, U) with U a d_a x d_b isometry whose columns are anchored to the image of e_1.
    :rtype: tuple
    """
    source, target = ray_map.source_algebra, ray_map.target_algebra
    d_b = source.dim(source_block)
    algebra.check_block(target, target_block)

    # -- no dimension check: if d_b > d_a the basis images cannot be orthonormal and step (i) reports it with a witness
    if rng is None:
        rng = np.random.default_rng(seed)

    def image(vector):
        omega = states.make_pure_state(source, source_block, vector)
        result = ray_map(omega)
        if result.block != target_block:
            raise errors.ReconstructionFailure(
                errors.ReconstructionFailure.FIBRE_MISMATCH,
                'probe of source block %s landed in target block %s, expected %s' %
                (source_block, result.block, target_block),
                witness=Witness(states=(omega, result), measured={'output_block': result.block}),
            )
        return omega, result

    # -- (i) images of the basis rays must be pairwise orthogonal
    basis = np.eye(d_b, dtype=np.complex128)
    probes = [image(basis[j]) for j in range(d_b)]
    columns = [result.vector.copy() for _, result in probes]

    for i in range(d_b):
        for j in range(i + 1, d_b):
            ov = abs(np.vdot(columns[i], columns[j]))
            if ov > tol:
                raise errors.ReconstructionFailure(
                    errors.ReconstructionFailure.NON_ORTHONORMAL_IMAGES,
                    'images of e_%s and e_%s overlap by %.6g' % (i + 1, j + 1, ov),
                    witness=Witness(states=(probes[i][0], probes[j][0]), measured={'output_overlap': ov}),
                )

    # -- (ii) fix the phases of f_j relative to f_1 through the midpoint probes
    for j in range(1, d_b):
        omega, g = image(basis[0] + basis[j])
        tp_first = abs(np.vdot(columns[0], g.vector)) ** 2
        tp_j = abs(np.vdot(columns[j], g.vector)) ** 2

        if abs(tp_first - 0.5) > tol or abs(tp_j - 0.5) > tol:
            raise errors.ReconstructionFailure(
                errors.ReconstructionFailure.PHASE_PROBE_MISMATCH,
                'midpoint probe of e_1, e_%s has transition probabilities %.6g, %.6g, expected 1/2' %
                (j + 1, tp_first, tp_j),
                witness=Witness(states=(probes[0][0], omega), measured={'tp_first': tp_first, 'tp_j': tp_j}),
            )

        ratio = np.vdot(columns[j], g.vector) / np.vdot(columns[0], g.vector)
        columns[j] = columns[j] * (ratio / abs(ratio))

    # -- (iii) + (iv) linear or antilinear, the same for all j
    kind = raymaps.LINEAR
    kinds = list()
    for j in range(1, d_b):
        omega, h = image(basis[0] + 1j * basis[j])
        linear = (columns[0] + 1j * columns[j]) / np.sqrt(2)
        antilinear = (columns[0] - 1j * columns[j]) / np.sqrt(2)
        tp_linear = abs(np.vdot(linear, h.vector)) ** 2
        tp_antilinear = abs(np.vdot(antilinear, h.vector)) ** 2
        measured = {'tp_linear': tp_linear, 'tp_antilinear': tp_antilinear}

        is_linear = tp_linear >= 1.0 - tol
        is_antilinear = tp_antilinear >= 1.0 - tol

        if is_linear and is_antilinear:
            raise errors.ReconstructionFailure(
                errors.ReconstructionFailure.KIND_INCONSISTENT,
                'probe e_1 + i e_%s matches both the linear and the antilinear image' % (j + 1),
                witness=Witness(states=(probes[0][0], omega), measured=measured),
            )

        if not (is_linear or is_antilinear):
            raise errors.ReconstructionFailure(
                errors.ReconstructionFailure.PHASE_PROBE_MISMATCH,
                'probe e_1 + i e_%s matches neither the linear nor the antilinear image' % (j + 1),
                witness=Witness(states=(probes[0][0], omega), measured=measured),
            )

        kinds.append((raymaps.LINEAR if is_linear else raymaps.ANTILINEAR, omega))

    if kinds:
        kind = kinds[0][0]
        for other_kind, omega in kinds[1:]:
            if other_kind != kind:
                raise errors.ReconstructionFailure(
                    errors.ReconstructionFailure.KIND_INCONSISTENT,
                    'fiber %s mixes linear and antilinear probes' % source_block,
                    witness=Witness(states=(kinds[0][1], omega), measured={'kinds': [kind, other_kind]}),
                )

    # -- (v)
    U = np.column_stack(columns)
    fiber = raymaps.FiberMap(source_block, target_block, kind, U)

    # -- (vi) validation on random rays
    for _ in range(VALIDATION_RAYS):
        z = states.random_unit_vector(d_b, rng)
        omega, result = image(z)
        expected = states.make_pure_state(target, target_block, fiber.image_vector(omega.vector))
        tp = states.transition_probability(result, expected)

        if tp <= 1.0 - tol:
            raise errors.ReconstructionFailure(
                errors.ReconstructionFailure.VALIDATION_FAILED,
                'reconstructed fiber %s misses a random ray: transition probability %.6g' % (source_block, tp),
                witness=Witness(states=(omega, result), measured={'tp_to_reconstruction': tp}),
            )

    logger.debug('Reconstructed fiber %s -> %s as %s' % (source_block, target_block, kind))
    return kind, U


# ----------------------------------------------------------------------------------------------------------------------
def assemble(ray_map, tol=DEFAULT_TOL, seed=0, workers=1):
    # type: (raymaps.RayMapBlackBox, float, int, int) -> InducedMap
    """
    Reconstruct every fiber of a ray map and package the result as the inducing linear map.

    :param ray_map: the black box to reconstruct.
    :type ray_map: RayMapBlackBox

    :param tol: tolerance passed to reconstruct_fiber.
    :type tol: float

    :param seed: seed for the validation rays, split per fiber.
    :type seed: int

    :param workers: number of fibers reconstructed concurrently. Results are merged in source block order.
    :type workers: int

    :return: the induced map.
    :rtype: InducedMap
    """
    try:
        assignment = raymaps.fibre_assignment(ray_map)
    except errors.NotFibrePreservingError as e:
        raise errors.AssemblyFailure(e.witness.measured.get('source_block'), e)

    rngs = _fiber_seeds(seed, len(assignment))

    def run(index):
        b, a = assignment[index]
        try:
            kind, U = reconstruct_fiber(ray_map, b, a, tol=tol, rng=rngs[index])
        except errors.ReconstructionFailure as e:
            raise errors.AssemblyFailure(b, e)
        return raymaps.FiberMap(b, a, kind, U)

    if workers > 1:
        with futures.ThreadPoolExecutor(max_workers=workers) as pool:
            fibers = list(pool.map(run, range(len(assignment))))
    else:
        fibers = [run(index) for index in range(len(assignment))]

    canonical = raymaps.RayMapCanonical(ray_map.source_algebra, ray_map.target_algebra, fibers)
    return InducedMap(canonical)


# ----------------------------------------------------------------------------------------------------------------------
def apply_induced(phi, A):
    # type: (InducedMap, algebra.Element) -> algebra.Element
    """
    Block b of the result is U_b* A_a(b) U_b for linear fibers. For antilinear fibers it is (U_b* A_a(b) U_b)^T,
    which is conj(U_b)* A_a(b)^T conj(U_b); this coincides with U_b* A_a(b)^T U_b for real U_b.
    """
    if A.algebra != phi.domain:
        raise errors.AlgebraMismatchError('Induced map reads %r, got an element of %r!' % (phi.domain, A.algebra))

    blocks = list()
    for fiber in phi.canonical.fibers:
        U = fiber.isometry
        compressed = U.conj().T @ A.blocks[fiber.target_block] @ U
        if fiber.kind == raymaps.ANTILINEAR:
            compressed = compressed.T
        blocks.append(compressed)
    return algebra.Element(phi.codomain, blocks)


# ----------------------------------------------------------------------------------------------------------------------
def verify_induction(ray_map, phi, samples=raymaps.DEFAULT_SAMPLES, seed=0, tol=DEFAULT_TOL):
    # type: (raymaps.RayMapBlackBox, InducedMap, int, int, float) -> Verdict
    """
    Check that phi induces the ray map: |ray_map(omega)(A) - omega(phi(A))| <= tol (1 + ||A||) on random pure states
    omega and random elements A.
    """
    if ray_map.source_algebra != phi.codomain or ray_map.target_algebra != phi.domain:
        raise errors.AlgebraMismatchError('%r and %r act between different algebras!' % (ray_map, phi))

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        omega = states.random_pure_state(ray_map.source_algebra, rng)
        A = algebra.random_element(ray_map.target_algebra, rng)

        direct = states.evaluate(ray_map(omega), A)
        induced = states.evaluate(omega, apply_induced(phi, A))
        error = abs(direct - induced)
        bound = tol * (1.0 + algebra.operator_norm(A))

        if error > bound:
            witness = Witness(
                states=(omega,),
                elements=(A,),
                measured={'ray_map_value': [direct.real, direct.imag], 'induced_value': [induced.real, induced.imag],
                          'error': error, 'bound': bound},
            )
            logger.info('Induction check failed: %s' % witness.measured)
            return Verdict.fails(witness, message='phi does not induce the ray map')

    return Verdict.verified()


# ----------------------------------------------------------------------------------------------------------------------
def haar_isometry(rows, columns, rng):
    # type: (int, int, np.random.Generator) -> np.ndarray
    """
    Haar distributed rows x columns isometry: QR of a complex Gaussian matrix, with the phases of R's diagonal moved
    into Q so the distribution is invariant.
    """
    Z = (rng.standard_normal((rows, columns)) + 1j * rng.standard_normal((rows, columns))) / np.sqrt(2)
    Q, R = scipy.linalg.qr(Z, mode='economic')
    d = np.diag(R)
    phases = d / np.abs(d)
    return Q * phases


# ----------------------------------------------------------------------------------------------------------------------
def random_canonical(source_dims, target_dims, assignment, kinds, seed):
    # type: (list, list, list, list, int) -> raymaps.RayMapCanonical
    """
    Seeded random canonical ray map with Haar isometries.

    :param source_dims: block dimensions of the source algebra B.
    :type source_dims: list

    :param target_dims: block dimensions of the target algebra A.
    :type target_dims: list

    :param assignment: target block for every source block.
    :type assignment: list

    :param kinds: 'linear' or 'antilinear' for every source block.
    :type kinds: list

    :param seed: equal seeds give bit-identical maps.
    :type seed: int
    """
    source = algebra.make_algebra(source_dims)
    target = algebra.make_algebra(target_dims)

    if len(assignment) != source.m or len(kinds) != source.m:
        raise errors.DimensionMismatchError(
            'Need one target block and one kind per source block, got %s and %s for %s blocks!' %
            (len(assignment), len(kinds), source.m)
        )

    rngs = _fiber_seeds(seed, source.m)
    fibers = list()
    for b, (a, kind) in enumerate(zip(assignment, kinds)):
        algebra.check_block(target, a)
        d_b, d_a = source.block_dims[b], target.block_dims[a]
        if d_b > d_a:
            raise errors.DimensionMismatchError(
                'Source block %s (dim %s) does not fit into target block %s (dim %s)!' % (b, d_b, a, d_a)
            )
        fibers.append(raymaps.FiberMap(b, a, kind, haar_isometry(d_a, d_b, rngs[b])))

    return raymaps.RayMapCanonical(source, target, fibers)
