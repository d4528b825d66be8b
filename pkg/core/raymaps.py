"""
Transformations between pure-state spaces, and their classification by sampling.

A ray map runs from the pure states of a source algebra B to the pure states of a target algebra A. It is given either
canonically (per source block: a target block, a linear/antilinear kind and an isometry) or as a black box evaluator.

classify() checks a black box against every orthogonality and fibre property. A Holds verdict means no violation was
found in the sampled pairs; a FailsWithWitness verdict carries the worst violating pair, which replay_witness() can
re-evaluate at any time.
"""
import logging
from concurrent import futures

import numpy as np

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import states
from wigner_stone.core.verdicts import Verdict, Witness

logger = logging.getLogger(__name__)

LINEAR = 'linear'
ANTILINEAR = 'antilinear'
KINDS = (LINEAR, ANTILINEAR)

ISOMETRY_TOL = 1e-9
DEFAULT_SAMPLES = 200
DEFAULT_TOL = 1e-8

# -- at most this many failing pairs per property get follow-up probes
_MAX_FOLLOW_UPS = 16

ORTHOGONAL = 'orthogonal'
CO_ORTHOGONAL = 'co_orthogonal'
BI_ORTHOGONAL = 'bi_orthogonal'
LOCALLY_BI_ORTHOGONAL = 'locally_bi_orthogonal'
FIBRE_PRESERVING = 'fibre_preserving'
LOCALLY_INJECTIVE = 'locally_injective'
LOCALLY_TP_PRESERVING = 'locally_tp_preserving'

PROPERTIES = (
    ORTHOGONAL,
    CO_ORTHOGONAL,
    BI_ORTHOGONAL,
    LOCALLY_BI_ORTHOGONAL,
    FIBRE_PRESERVING,
    LOCALLY_INJECTIVE,
    LOCALLY_TP_PRESERVING,
)


# ----------------------------------------------------------------------------------------------------------------------
class FiberMap(object):
    """
    The action of a canonical ray map on one source block b: rays z of block b go to U z (linear) or U conj(z)
    (antilinear), in the target block a(b).
    """

    __slots__ = ('source_block', 'target_block', 'kind', 'isometry')

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, source_block, target_block, kind, isometry):
        # type: (int, int, str, np.ndarray) -> None
        if kind not in KINDS:
            raise errors.MalformedInputError('Unknown fiber kind %r, expected one of %s!' % (kind, KINDS))

        isometry = np.array(isometry, dtype=np.complex128)
        if isometry.ndim != 2:
            raise errors.DimensionMismatchError('Isometry must be a matrix, got shape %s!' % (isometry.shape,))
        if not np.all(np.isfinite(isometry)):
            raise errors.NonIsometryError('Isometry of fiber %s contains non-finite entries!' % source_block)

        # -- one dimensional fibers carry no linear/antilinear distinction
        if isometry.shape[1] == 1:
            kind = LINEAR

        isometry.flags.writeable = False
        self.source_block = int(source_block)
        self.target_block = int(target_block)
        self.kind = kind
        self.isometry = isometry

    # ------------------------------------------------------------------------------------------------------------------
    def image_vector(self, z):
        # type: (np.ndarray) -> np.ndarray
        if self.kind == ANTILINEAR:
            z = np.conj(z)
        return self.isometry @ z

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'FiberMap(%s -> %s, %s, %s)' % (
            self.source_block, self.target_block, self.kind, self.isometry.tolist()
        )


# ----------------------------------------------------------------------------------------------------------------------
class RayMapCanonical(object):

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, source_algebra, target_algebra, fibers):
        # type: (algebra.AlgebraSpec, algebra.AlgebraSpec, list) -> None
        self.source_algebra = source_algebra
        self.target_algebra = target_algebra
        self.fibers = tuple(sorted(fibers, key=lambda f: f.source_block))
        self.validate()

    # ------------------------------------------------------------------------------------------------------------------
    def validate(self):
        source_blocks = [f.source_block for f in self.fibers]
        if source_blocks != list(range(self.source_algebra.m)):
            raise errors.MalformedInputError(
                'Every source block needs exactly one fiber, got source blocks %s for %r!' %
                (source_blocks, self.source_algebra)
            )

        for fiber in self.fibers:
            algebra.check_block(self.target_algebra, fiber.target_block)
            d_b = self.source_algebra.block_dims[fiber.source_block]
            d_a = self.target_algebra.block_dims[fiber.target_block]

            if d_b > d_a:
                raise errors.DimensionMismatchError(
                    'Source block %s (dim %s) does not fit into target block %s (dim %s)!' %
                    (fiber.source_block, d_b, fiber.target_block, d_a)
                )

            if fiber.isometry.shape != (d_a, d_b):
                raise errors.DimensionMismatchError(
                    'Fiber %s needs a %sx%s isometry, got shape %s!' %
                    (fiber.source_block, d_a, d_b, fiber.isometry.shape)
                )

            U = fiber.isometry
            residual = float(np.max(np.abs(U.conj().T @ U - np.eye(d_b))))
            if not residual <= ISOMETRY_TOL:
                raise errors.NonIsometryError(
                    'Fiber %s is not an isometry: |U*U - I| = %.3e!' % (fiber.source_block, residual)
                )

    # ------------------------------------------------------------------------------------------------------------------
    def fiber(self, source_block):
        # type: (int) -> FiberMap
        algebra.check_block(self.source_algebra, source_block)
        return self.fibers[source_block]

    # ------------------------------------------------------------------------------------------------------------------
    def assignment(self):
        # type: () -> list
        return [(f.source_block, f.target_block) for f in self.fibers]

    # ------------------------------------------------------------------------------------------------------------------
    def __call__(self, omega):
        # type: (states.PureState) -> states.PureState
        if omega.algebra != self.source_algebra:
            raise errors.AlgebraMismatchError(
                'State lives on %r, map expects %r!' % (omega.algebra, self.source_algebra)
            )
        fiber = self.fibers[omega.block]
        return states.make_pure_state(self.target_algebra, fiber.target_block, fiber.image_vector(omega.vector))


# ----------------------------------------------------------------------------------------------------------------------
class RayMapBlackBox(object):
    """
    An opaque, deterministic transformation from the pure states of source_algebra to those of target_algebra.

    structurally_solid is only set for maps built from a canonical description: their range inside each fiber is the
    full ray space of a subspace, so the locally solid property holds by construction.
    """

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, source_algebra, target_algebra, evaluator, name='', structurally_solid=False):
        # type: (algebra.AlgebraSpec, algebra.AlgebraSpec, callable, str, bool) -> None
        self.source_algebra = source_algebra
        self.target_algebra = target_algebra
        self.evaluator = evaluator
        self.name = name
        self.structurally_solid = structurally_solid

    # ------------------------------------------------------------------------------------------------------------------
    def __call__(self, omega):
        # type: (states.PureState) -> states.PureState
        if omega.algebra != self.source_algebra:
            raise errors.AlgebraMismatchError(
                'State lives on %r, map expects %r!' % (omega.algebra, self.source_algebra)
            )

        image = self.evaluator(omega)

        if not isinstance(image, states.PureState) or image.algebra != self.target_algebra:
            raise errors.AlgebraMismatchError('Evaluator %s returned %r, not a pure state of %r!' % (
                self.name, image, self.target_algebra
            ))
        return image

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'RayMapBlackBox(%s: %r -> %r)' % (self.name or 'anonymous', self.source_algebra, self.target_algebra)


# ----------------------------------------------------------------------------------------------------------------------
def as_blackbox(m):
    # type: (RayMapCanonical) -> RayMapBlackBox
    """
    The induced action of a canonical map: omega_z in block b goes to omega_{U_b z} (or omega_{U_b conj(z)}) in block
    a(b).
    """
    m.validate()
    return RayMapBlackBox(m.source_algebra, m.target_algebra, m, name='canonical', structurally_solid=True)


# ----------------------------------------------------------------------------------------------------------------------
class ClassificationReport(object):

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, verdicts, locally_solid, sample_count, seed, tolerance, pair_count=0,
                 dimension_two_blocks=(), errors_=()):
        self.verdicts = verdicts
        self.locally_solid = locally_solid
        self.sample_count = sample_count
        self.seed = seed
        self.tolerance = tolerance
        self.pair_count = pair_count
        self.dimension_two_blocks = list(dimension_two_blocks)
        self.errors = list(errors_)

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def wigner_applicable(self):
        """
        Bi-orthogonality forces transition probability preservation only if no source block has dimension 2.
        """
        return not self.dimension_two_blocks

    # ------------------------------------------------------------------------------------------------------------------
    def __getitem__(self, name):
        return self.verdicts[name]

    # ------------------------------------------------------------------------------------------------------------------
    def all_hold(self):
        return all(v.status == Verdict.HOLDS for v in self.verdicts.values())

    # ------------------------------------------------------------------------------------------------------------------
    def any_failed(self):
        return any(v.failed for v in self.verdicts.values())

    # ------------------------------------------------------------------------------------------------------------------
    def any_undetermined(self):
        return any(v.status == Verdict.UNDETERMINED for v in self.verdicts.values())


# ----------------------------------------------------------------------------------------------------------------------
class _Pair(object):

    __slots__ = ('x', 'y', 'fx', 'fy', 'overlap_in', 'overlap_out', 'tp_in', 'tp_out')

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, x, y, fx, fy):
        self.x, self.y, self.fx, self.fy = x, y, fx, fy
        self.overlap_in = _overlap(x, y)
        self.overlap_out = _overlap(fx, fy)
        self.tp_in = states.transition_probability(x, y)
        self.tp_out = states.transition_probability(fx, fy)

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def same_fibre(self):
        return self.x.block == self.y.block

    # ------------------------------------------------------------------------------------------------------------------
    def measured(self):
        return {
            'input_blocks': [self.x.block, self.y.block],
            'output_blocks': [self.fx.block, self.fy.block],
            'input_overlap': self.overlap_in,
            'output_overlap': self.overlap_out,
            'input_tp': self.tp_in,
            'output_tp': self.tp_out,
            'tp_gap': abs(self.tp_in - self.tp_out),
        }


# ----------------------------------------------------------------------------------------------------------------------
def _overlap(omega0, omega1):
    if omega0.block != omega1.block:
        return 0.0
    return float(abs(np.vdot(omega0.vector, omega1.vector)))


# ----------------------------------------------------------------------------------------------------------------------
def _same_ray(omega0, omega1, tol):
    if omega0.block != omega1.block:
        return False
    return float(np.max(np.abs(omega0.vector - omega1.vector))) <= tol


# -- every check returns (violated, severity). severity ranks witnesses, the worst one is reported.
# ----------------------------------------------------------------------------------------------------------------------
def _check_orthogonal(pair, tol):
    if pair.overlap_in <= tol and pair.overlap_out > tol:
        return True, pair.overlap_out
    return False, 0.0


# ----------------------------------------------------------------------------------------------------------------------
def _check_co_orthogonal(pair, tol):
    if pair.overlap_out <= tol and pair.overlap_in > tol:
        return True, pair.overlap_in
    return False, 0.0


# ----------------------------------------------------------------------------------------------------------------------
def _check_bi_orthogonal(pair, tol):
    violated, severity = _check_orthogonal(pair, tol)
    if violated:
        return violated, severity
    return _check_co_orthogonal(pair, tol)


# ----------------------------------------------------------------------------------------------------------------------
def _check_locally_bi_orthogonal(pair, tol):
    if not pair.same_fibre:
        return False, 0.0
    return _check_bi_orthogonal(pair, tol)


# ----------------------------------------------------------------------------------------------------------------------
def _check_fibre_preserving(pair, tol):
    if pair.same_fibre and pair.fx.block != pair.fy.block:
        return True, 1.0
    return False, 0.0


# ----------------------------------------------------------------------------------------------------------------------
def _check_locally_injective(pair, tol):
    if not pair.same_fibre:
        return False, 0.0
    distance = float(np.sqrt(max(0.0, 1.0 - pair.tp_in)))
    if distance > tol and _same_ray(pair.fx, pair.fy, tol):
        return True, distance
    return False, 0.0


# ----------------------------------------------------------------------------------------------------------------------
def _check_locally_tp_preserving(pair, tol):
    if not pair.same_fibre:
        return False, 0.0
    gap = abs(pair.tp_in - pair.tp_out)
    if gap > tol:
        return True, gap
    return False, 0.0


_CHECKS = {
    ORTHOGONAL: _check_orthogonal,
    CO_ORTHOGONAL: _check_co_orthogonal,
    BI_ORTHOGONAL: _check_bi_orthogonal,
    LOCALLY_BI_ORTHOGONAL: _check_locally_bi_orthogonal,
    FIBRE_PRESERVING: _check_fibre_preserving,
    LOCALLY_INJECTIVE: _check_locally_injective,
    LOCALLY_TP_PRESERVING: _check_locally_tp_preserving,
}


# ----------------------------------------------------------------------------------------------------------------------
def _bridge(x, y):
    # type: (np.ndarray, np.ndarray) -> np.ndarray
    """
    x + w y with the phase w chosen so that the result overlaps both x and y by at least half after normalization.
    """
    s = np.vdot(x, y)
    phase = np.conj(s) / abs(s) if abs(s) > states.PHASE_CUTOFF else 1.0
    z = x + phase * y
    return z / np.linalg.norm(z)


# ----------------------------------------------------------------------------------------------------------------------
def _orthogonalize(x, y):
    # type: (np.ndarray, np.ndarray) -> np.ndarray
    """
    Gram-Schmidt: the normalized component of y orthogonal to x, or None if y is (numerically) parallel to x.
    """
    w = y - np.vdot(x, y) * x
    norm = np.linalg.norm(w)
    if norm <= 1e-6:
        return None
    return w / norm


# ----------------------------------------------------------------------------------------------------------------------
def _sample_pairs(alg, samples, rng):
    # type: (algebra.AlgebraSpec, int, np.random.Generator) -> list
    """
    Input pairs in a fixed, seed determined order.

    Per block: all basis pairs (e_i, e_j) with their bridge states, then for each sample a random pair x, y together
    with w (y orthogonalized against x) and the bridge z of x and y. Then random pairs across every two blocks.
    """
    make = states.make_pure_state
    pairs = list()

    for b, d in enumerate(alg.block_dims):
        basis = [states.basis_state(alg, b, i) for i in range(d)]
        if d == 1:
            pairs.append((basis[0], basis[0]))
            continue

        for i in range(d):
            for j in range(i + 1, d):
                bridge = make(alg, b, basis[i].vector + basis[j].vector)
                pairs.extend([(basis[i], basis[j]), (bridge, basis[i]), (bridge, basis[j])])

        for _ in range(samples):
            x = states.random_unit_vector(d, rng)
            y = states.random_unit_vector(d, rng)
            z = _bridge(x, y)
            omega_x, omega_y, omega_z = make(alg, b, x), make(alg, b, y), make(alg, b, z)

            pairs.extend([(omega_x, omega_y), (omega_z, omega_x), (omega_z, omega_y)])

            w = _orthogonalize(x, y)
            if w is not None:
                omega_w = make(alg, b, w)
                pairs.extend([(omega_x, omega_w), (omega_w, omega_y)])

    for b0 in range(alg.m):
        for b1 in range(b0 + 1, alg.m):
            count = 1 if alg.block_dims[b0] == alg.block_dims[b1] == 1 else samples
            for _ in range(count):
                pairs.append((
                    states.random_pure_state(alg, rng, block=b0),
                    states.random_pure_state(alg, rng, block=b1),
                ))

    return pairs


# ----------------------------------------------------------------------------------------------------------------------
def _follow_up_pairs(pair):
    """
    Probes that turn a fibre or injectivity violation into an orthogonality violation: the bridge of the pair and the
    component of y orthogonal to x, each paired with both ends.
    """
    alg, b = pair.x.algebra, pair.x.block
    x, y = pair.x.vector, pair.y.vector

    omega_z = states.make_pure_state(alg, b, _bridge(x, y))
    result = [(omega_z, pair.x), (omega_z, pair.y)]

    w = _orthogonalize(x, y)
    if w is not None:
        omega_w = states.make_pure_state(alg, b, w)
        result.extend([(pair.x, omega_w), (omega_w, pair.y)])
    return result


# ----------------------------------------------------------------------------------------------------------------------
def evaluate_states(ray_map, inputs, workers=1):
    # type: (RayMapBlackBox, list, int) -> dict
    """
    Evaluate the map once per distinct input state. The result only depends on the inputs, never on completion order.

    :return: dictionary from input state to image state.
    :rtype: dict
    """
    unique = list(dict.fromkeys(inputs))

    if workers > 1:
        with futures.ThreadPoolExecutor(max_workers=workers) as pool:
            images = list(pool.map(ray_map, unique))
    else:
        images = [ray_map(omega) for omega in unique]

    return dict(zip(unique, images))


# ----------------------------------------------------------------------------------------------------------------------
def _run_checks(pairs, tol, worst):
    for pair in pairs:
        for name, check in _CHECKS.items():
            violated, severity = check(pair, tol)
            if not violated:
                continue
            if name not in worst or severity > worst[name][0]:
                worst[name] = (severity, pair)


# ----------------------------------------------------------------------------------------------------------------------
def classify(ray_map, samples=DEFAULT_SAMPLES, seed=0, tol=DEFAULT_TOL, workers=1):
    # type: (RayMapBlackBox, int, int, float, int) -> ClassificationReport
    """
    Classify a ray map against the orthogonality, fibre and transition probability properties.

    :param ray_map: the map to classify.
    :type ray_map: RayMapBlackBox

    :param samples: number of random pairs per fiber and per pair of fibers.
    :type samples: int

    :param seed: seed for the sampling; equal seeds give identical reports.
    :type seed: int

    :param tol: threshold for overlaps and transition probability gaps.
    :type tol: float

    :param workers: number of threads used to evaluate the map.
    :type workers: int

    :return: the report. Fails verdicts hold the worst violating pair as witness.
    :rtype: ClassificationReport
    """
    if samples < 1:
        raise errors.ConfigError('classify needs at least one sample, got %s!' % samples)

    alg = ray_map.source_algebra
    rng = np.random.default_rng(seed)
    inputs = _sample_pairs(alg, samples, rng)

    locally_solid = Verdict(Verdict.STRUCTURALLY_TRUE if ray_map.structurally_solid else Verdict.UNVERIFIED)
    report_args = dict(
        locally_solid=locally_solid,
        sample_count=samples,
        seed=seed,
        tolerance=tol,
        dimension_two_blocks=alg.qubit_blocks(),
    )

    try:
        images = evaluate_states(ray_map, [omega for pair in inputs for omega in pair], workers=workers)
        pairs = [_Pair(x, y, images[x], images[y]) for x, y in inputs]

        worst = dict()
        _run_checks(pairs, tol, worst)

        # -- follow up on the worst fibre and injectivity violations
        follow_ups = list()
        for name in (FIBRE_PRESERVING, LOCALLY_INJECTIVE):
            candidates = [p for p in pairs if _CHECKS[name](p, tol)[0]]
            candidates.sort(key=lambda p: -_CHECKS[name](p, tol)[1])
            for pair in candidates[:_MAX_FOLLOW_UPS]:
                follow_ups.extend(_follow_up_pairs(pair))

        if follow_ups:
            extra_images = evaluate_states(ray_map, [omega for pair in follow_ups for omega in pair], workers=workers)
            extra = [_Pair(x, y, extra_images[x], extra_images[y]) for x, y in follow_ups]
            _run_checks(extra, tol, worst)
            pairs.extend(extra)

    except errors.OperationalError as e:
        logger.exception('Evaluator of %r failed during classification' % ray_map)
        return _undetermined_report(str(e), **report_args)

    except Exception as e:
        logger.exception('Evaluator of %r crashed during classification' % ray_map)
        return _undetermined_report('%s: %s' % (type(e).__name__, e), **report_args)

    verdicts = dict()
    for name in PROPERTIES:
        if name not in worst:
            verdicts[name] = Verdict.holds()
            continue
        severity, pair = worst[name]
        witness = Witness(states=(pair.x, pair.y), measured=pair.measured())
        verdicts[name] = Verdict.fails(witness, message='%s violated (severity %.6g)' % (name, severity))
        logger.info('%r is not %s: %s' % (ray_map, name, witness.measured))

    return ClassificationReport(verdicts, pair_count=len(pairs), **report_args)


# ----------------------------------------------------------------------------------------------------------------------
def _undetermined_report(message, **kwargs):
    verdicts = dict((name, Verdict.undetermined(message)) for name in PROPERTIES)
    return ClassificationReport(verdicts, errors_=[message], **kwargs)


# ----------------------------------------------------------------------------------------------------------------------
def replay_witness(ray_map, name, witness, tol=DEFAULT_TOL):
    # type: (RayMapBlackBox, str, Witness, float) -> tuple
    """
    Re-evaluate the map on a witness pair and run the named check again.

    :return: (violated, measured values)
    :rtype: tuple
    """
    if name not in _CHECKS:
        raise errors.MalformedInputError('Unknown property %r, expected one of %s!' % (name, PROPERTIES))

    x, y = witness.states
    pair = _Pair(x, y, ray_map(x), ray_map(y))
    violated, _ = _CHECKS[name](pair, tol)
    return violated, pair.measured()


# ----------------------------------------------------------------------------------------------------------------------
def fibre_assignment(ray_map):
    # type: (RayMapBlackBox) -> list
    """
    Probe every source block with its basis rays and the midpoints (e_1 + e_j)/sqrt(2), and record the target block
    they land in.

    :return: list of (source block, target block) tuples, in source block order.
    :rtype: list
    """
    alg = ray_map.source_algebra
    result = list()

    for b, d in enumerate(alg.block_dims):
        probes = [states.basis_state(alg, b, i) for i in range(d)]
        for j in range(1, d):
            probes.append(states.make_pure_state(alg, b, probes[0].vector + probes[j].vector))

        first = probes[0]
        first_image = ray_map(first)
        for probe in probes[1:]:
            image = ray_map(probe)
            if image.block != first_image.block:
                witness = Witness(
                    states=(first, probe),
                    measured={'output_blocks': [first_image.block, image.block], 'source_block': b},
                )
                raise errors.NotFibrePreservingError(
                    'Source block %s is split across target blocks %s and %s!' % (b, first_image.block, image.block),
                    witness=witness,
                )

        result.append((b, first_image.block))

    return result
