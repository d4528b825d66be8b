"""
Verification of Jordan *-homomorphisms and of the structure attached to them: Kadison's splitting into a
*-isomorphic and a *-antiisomorphic part, isometry, order preservation, orthoisomorphism on projections and trace
preservation.

Linear maps are handled as tables of the images of every matrix unit. Identities that are bilinear in their arguments
are checked on all pairs of matrix units, which proves them for every element.
"""
import logging

import numpy as np
import scipy.linalg

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import raymaps
from wigner_stone.core import wigner
from wigner_stone.core.verdicts import Verdict, Witness

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_SAMPLES = 100

MULTIPLICATIVE = 'multiplicative'
ANTI_MULTIPLICATIVE = 'anti-multiplicative'

DEFAULT_PROBE = (0, 0, 1)
SECOND_PROBE = (0, 1, 2)


# ----------------------------------------------------------------------------------------------------------------------
class LinearMapTable(object):
    """
    A linear map between block algebras, stored as the images of the source matrix units (in
    algebra.matrix_unit_indices order).
    """

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, source, target, images):
        # type: (algebra.AlgebraSpec, algebra.AlgebraSpec, list) -> None
        indices = algebra.matrix_unit_indices(source)
        images = list(images)
        if len(images) != len(indices):
            raise errors.DimensionMismatchError(
                '%r has %s matrix units, got %s images!' % (source, len(indices), len(images))
            )
        for image in images:
            if image.algebra != target:
                raise errors.AlgebraMismatchError('Image %r does not live in %r!' % (image, target))

        self.source = source
        self.target = target
        self.images = tuple(images)
        self._index = dict((key, n) for n, key in enumerate(indices))

        # -- per target block, the stack of image blocks: shape (units, d_t, d_t)
        self._stacks = tuple(
            np.stack([image.blocks[t] for image in self.images]) for t in range(target.m)
        )

    # ------------------------------------------------------------------------------------------------------------------
    def image(self, block, i, j):
        # type: (int, int, int) -> algebra.Element
        return self.images[self._index[(block, i, j)]]

    # ------------------------------------------------------------------------------------------------------------------
    def apply(self, A):
        # type: (algebra.Element) -> algebra.Element
        if A.algebra != self.source:
            raise errors.AlgebraMismatchError('Table reads %r, got an element of %r!' % (self.source, A.algebra))
        coords = algebra.flatten(A)
        return algebra.Element(self.target, [np.tensordot(coords, stack, axes=1) for stack in self._stacks])

    # ------------------------------------------------------------------------------------------------------------------
    def __call__(self, A):
        return self.apply(A)

    # ------------------------------------------------------------------------------------------------------------------
    def matrix(self):
        # type: () -> np.ndarray
        """
        The map as a matrix acting on matrix unit coordinates.
        """
        return np.column_stack([algebra.flatten(image) for image in self.images])

    # ------------------------------------------------------------------------------------------------------------------
    def max_difference(self, other):
        # type: (LinearMapTable) -> float
        if other.source != self.source or other.target != self.target:
            raise errors.AlgebraMismatchError('Tables act between different algebras!')
        return float(np.max(np.abs(self.matrix() - other.matrix())))

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'LinearMapTable(%r -> %r)' % (self.source, self.target)


# ----------------------------------------------------------------------------------------------------------------------
class KadisonSplit(object):

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, central_projection, source_projection, tags):
        self.central_projection = central_projection
        self.source_projection = source_projection
        self.tags = tags

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def f_blocks(self):
        return sorted(tag['target_block'] for tag in self.tags if tag['tag'] == MULTIPLICATIVE)

    # ------------------------------------------------------------------------------------------------------------------
    @property
    def e_blocks(self):
        return sorted(tag['source_block'] for tag in self.tags if tag['tag'] == MULTIPLICATIVE)

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'KadisonSplit(F=%s, tags=%s)' % (self.f_blocks, [tag['tag'] for tag in self.tags])


# ----------------------------------------------------------------------------------------------------------------------
def from_callable(source, target, fn):
    # type: (algebra.AlgebraSpec, algebra.AlgebraSpec, callable) -> LinearMapTable
    """
    Tabulate a linear python callable on the matrix units of the source algebra.
    """
    return LinearMapTable(source, target, [fn(unit) for unit in algebra.matrix_units(source)])


# ----------------------------------------------------------------------------------------------------------------------
def from_induced(phi):
    # type: (wigner.InducedMap) -> LinearMapTable
    return from_callable(phi.domain, phi.codomain, lambda unit: wigner.apply_induced(phi, unit))


# ----------------------------------------------------------------------------------------------------------------------
def _product_index(alg):
    """
    For matrix units p, q: the index of the unit E_p E_q, or -1 where the product vanishes. Also the index of E_p*.
    """
    indices = algebra.matrix_unit_indices(alg)
    lookup = dict((key, n) for n, key in enumerate(indices))

    product = np.full((len(indices), len(indices)), -1, dtype=int)
    for p, (a, i, j) in enumerate(indices):
        for k in range(alg.block_dims[a]):
            for l in range(alg.block_dims[a]):
                if k == j:
                    product[p, lookup[(a, k, l)]] = lookup[(a, i, l)]

    adjoint = np.array([lookup[(a, j, i)] for a, i, j in indices], dtype=int)
    return product, adjoint


# ----------------------------------------------------------------------------------------------------------------------
def _residual_norm(blocks):
    return max(float(scipy.linalg.svdvals(block)[0]) for block in blocks)


# ----------------------------------------------------------------------------------------------------------------------
def is_jordan_star_homomorphism(t, tol=1e-10):
    # type: (LinearMapTable, float) -> Verdict
    """
    Check phi(AB + BA) = phi(A)phi(B) + phi(B)phi(A) and phi(A*) = phi(A)* on every pair of matrix units.

    Residuals are screened by Frobenius norm (an upper bound of the operator norm); only candidates above tol get
    their exact operator norm computed.

    :return: Verified, or FailsWithWitness holding the worst pair of matrix units.
    :rtype: Verdict
    """
    n = len(t.images)
    product, adjoint = _product_index(t.source)
    units = algebra.matrix_units(t.source)

    jordan_frobenius = np.zeros((n, n))
    adjoint_frobenius = np.zeros(n)
    jordan_residuals = list()
    adjoint_residuals = list()

    for stack in t._stacks:
        d = stack.shape[1]
        extended = np.concatenate([stack, np.zeros((1, d, d), dtype=stack.dtype)])

        # -- image of EF + FE, read off the table
        source_side = extended[product] + extended[product.T]
        products = np.einsum('pij,qjk->pqik', stack, stack)
        residual = source_side - (products + products.transpose(1, 0, 2, 3))
        jordan_frobenius += np.sum(np.abs(residual) ** 2, axis=(2, 3))
        jordan_residuals.append(residual)

        adj_residual = stack[adjoint] - stack.conj().transpose(0, 2, 1)
        adjoint_frobenius += np.sum(np.abs(adj_residual) ** 2, axis=(1, 2))
        adjoint_residuals.append(adj_residual)

    for p in np.argsort(-adjoint_frobenius, kind='stable'):
        if np.sqrt(adjoint_frobenius[p]) <= tol:
            break
        norm = _residual_norm([residual[p] for residual in adjoint_residuals])
        if norm > tol:
            witness = Witness(elements=(units[p],), measured={'identity': 'adjoint', 'residual': norm})
            return Verdict.fails(witness, message='phi(A*) != phi(A)*')

    order = np.argsort(-jordan_frobenius, axis=None, kind='stable')
    for flat in order:
        p, q = divmod(int(flat), n)
        if np.sqrt(jordan_frobenius[p, q]) <= tol:
            break
        norm = _residual_norm([residual[p, q] for residual in jordan_residuals])
        if norm > tol:
            witness = Witness(elements=(units[p], units[q]), measured={'identity': 'jordan', 'residual': norm})
            return Verdict.fails(witness, message='phi does not preserve the Jordan product')

    return Verdict.verified()


# ----------------------------------------------------------------------------------------------------------------------
def _block_assignment(t, tol):
    """
    For a block permuting bijection, the target block receiving each source block.
    """
    if len(t.images) != t.matrix().shape[0] or np.linalg.matrix_rank(t.matrix(), tol=tol) != len(t.images):
        raise errors.NotBijectiveError('%r is not a linear bijection!' % t)

    assignment = list()
    for b in range(t.source.m):
        image = t.apply(algebra.block_identity(t.source, [b]))
        hit = [a for a in range(t.target.m) if _residual_norm([image.blocks[a]]) > tol]
        if len(hit) != 1 or t.target.block_dims[hit[0]] != t.source.block_dims[b]:
            raise errors.NotBijectiveError(
                'Source block %s is not mapped onto a single target block of equal dimension (hits %s)!' % (b, hit)
            )
        assignment.append(hit[0])

    if len(set(assignment)) != len(assignment):
        raise errors.NotBijectiveError('Two source blocks share target block in %s!' % assignment)

    return assignment


# ----------------------------------------------------------------------------------------------------------------------
def kadison_split(t, tol=DEFAULT_TOL, probe=DEFAULT_PROBE):
    # type: (LinearMapTable, float, tuple) -> KadisonSplit
    """
    Split a bijective Jordan *-isomorphism into its multiplicative and anti-multiplicative parts.

    Each block is probed with X = E_ij, Y = E_jk: phi(XY) = phi(X)phi(Y) tags it multiplicative, phi(XY) = phi(Y)phi(X)
    anti-multiplicative. Dimension one blocks are both, and are tagged multiplicative. Blocks too small for the given
    probe fall back to the default probe.

    :return: the split. Its central_projection F is the sum of the identities of the multiplicative target blocks, and
        source_projection E the matching source blocks, so that phi(E) = F.
    :rtype: KadisonSplit
    """
    verdict = is_jordan_star_homomorphism(t, tol=tol)
    if not verdict.ok:
        raise errors.PreconditionFailedError('%r is not a Jordan *-homomorphism: %s' % (t, verdict.witness))

    assignment = _block_assignment(t, tol)

    tags = list()
    for b, a in enumerate(assignment):
        d = t.source.block_dims[b]
        if d == 1:
            tags.append({'source_block': b, 'target_block': a, 'tag': MULTIPLICATIVE})
            continue

        i, j, k = probe if max(probe) < d else DEFAULT_PROBE
        X = algebra.matrix_unit(t.source, b, i, j)
        Y = algebra.matrix_unit(t.source, b, j, k)
        image_xy = t.apply(algebra.mul(X, Y))
        image_x, image_y = t.apply(X), t.apply(Y)

        mult = algebra.operator_norm(algebra.subtract(image_xy, algebra.mul(image_x, image_y)))
        anti = algebra.operator_norm(algebra.subtract(image_xy, algebra.mul(image_y, image_x)))

        if mult <= tol:
            tag = MULTIPLICATIVE
        elif anti <= tol:
            tag = ANTI_MULTIPLICATIVE
        else:
            raise errors.NeitherMultNorAntiError(
                'Block %s is neither multiplicative nor anti-multiplicative!' % b,
                witness=Witness(elements=(X, Y), measured={'multiplicative_residual': mult, 'anti_residual': anti}),
            )
        tags.append({'source_block': b, 'target_block': a, 'tag': tag})

    split = KadisonSplit(
        central_projection=algebra.block_identity(
            t.target, [tag['target_block'] for tag in tags if tag['tag'] == MULTIPLICATIVE]
        ),
        source_projection=algebra.block_identity(
            t.source, [tag['source_block'] for tag in tags if tag['tag'] == MULTIPLICATIVE]
        ),
        tags=tags,
    )
    logger.debug('Kadison split of %r: %r' % (t, split))
    return split


# ----------------------------------------------------------------------------------------------------------------------
def verify_isometry(t, samples=DEFAULT_SAMPLES, seed=0, tol=DEFAULT_TOL):
    # type: (LinearMapTable, int, int, float) -> Verdict
    """
    | ||phi(A)|| - ||A|| | <= tol (1 + ||A||) on every matrix unit and on seeded random elements.
    """
    rng = np.random.default_rng(seed)
    candidates = algebra.matrix_units(t.source) + [algebra.random_element(t.source, rng) for _ in range(samples)]

    for A in candidates:
        norm = algebra.operator_norm(A)
        image_norm = algebra.operator_norm(t.apply(A))
        if abs(image_norm - norm) > tol * (1.0 + norm):
            witness = Witness(elements=(A,), measured={'norm': norm, 'image_norm': image_norm})
            return Verdict.fails(witness, message='phi is not isometric')

    return Verdict.verified()


# ----------------------------------------------------------------------------------------------------------------------
def verify_order_iso(t, samples=DEFAULT_SAMPLES, seed=0, tol=DEFAULT_TOL):
    # type: (LinearMapTable, int, int, float) -> Verdict
    """
    phi(I) = I, and phi maps seeded random positive elements G*G to positive elements.
    """
    one = algebra.identity(t.source)
    unit_residual = algebra.operator_norm(algebra.subtract(t.apply(one), algebra.identity(t.target)))
    if unit_residual > tol:
        witness = Witness(elements=(one,), measured={'unit_residual': unit_residual})
        return Verdict.fails(witness, message='phi is not unital')

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        A = algebra.random_positive(t.source, rng)
        image = t.apply(A)
        hermitian_residual = algebra.operator_norm(algebra.subtract(image, algebra.adjoint(image)))
        min_eigenvalue = min(
            float(scipy.linalg.eigvalsh(0.5 * (block + block.conj().T))[0]) for block in image.blocks
        )
        if hermitian_residual > tol or min_eigenvalue < -tol:
            witness = Witness(
                elements=(A,),
                measured={'min_eigenvalue': min_eigenvalue, 'hermitian_residual': hermitian_residual},
            )
            return Verdict.fails(witness, message='phi does not preserve positivity')

    return Verdict.verified()


# ----------------------------------------------------------------------------------------------------------------------
def _spectral_projections(alg, rng):
    """
    Per block, the spectral projection of a random hermitian onto its lower half of eigenvalues (at least one), and
    its complement. The two returned projections are orthogonal.
    """
    H = algebra.random_hermitian(alg, rng)
    lower, upper = list(), list()
    for block in H.blocks:
        _, vectors = scipy.linalg.eigh(block)
        rank = (block.shape[0] + 1) // 2
        lower.append(vectors[:, :rank] @ vectors[:, :rank].conj().T)
        upper.append(vectors[:, rank:] @ vectors[:, rank:].conj().T)
    return algebra.Element(alg, lower), algebra.Element(alg, upper)


# ----------------------------------------------------------------------------------------------------------------------
def verify_orthoisomorphism(t, samples=DEFAULT_SAMPLES, seed=0, tol=DEFAULT_TOL):
    # type: (LinearMapTable, int, int, float) -> Verdict
    """
    EF = 0 if and only if phi(E)phi(F) = 0, on all pairs of diagonal matrix units and on seeded random pairs of
    spectral projections.

    Raises NotProjectionPreservingError if some projection is not mapped to a projection.
    """
    rng = np.random.default_rng(seed)

    pairs = list()
    diagonal = [
        algebra.matrix_unit(t.source, a, i, i) for a, d in enumerate(t.source.block_dims) for i in range(d)
    ]
    for E in diagonal:
        for F in diagonal:
            pairs.append((E, F))

    for _ in range(samples):
        E0, F0 = _spectral_projections(t.source, rng)
        E1, _ = _spectral_projections(t.source, rng)
        pairs.extend([(E0, F0), (E0, E1)])

    images = dict()

    def projection_image(P):
        key = id(P)
        if key not in images:
            image = t.apply(P)
            idempotent = algebra.operator_norm(algebra.subtract(algebra.mul(image, image), image))
            selfadjoint = algebra.operator_norm(algebra.subtract(algebra.adjoint(image), image))
            if idempotent > tol or selfadjoint > tol:
                raise errors.NotProjectionPreservingError(
                    'phi does not map projections to projections!',
                    witness=Witness(elements=(P,), measured={'idempotent_residual': idempotent,
                                                            'selfadjoint_residual': selfadjoint}),
                )
            images[key] = image
        return images[key]

    for E, F in pairs:
        source_product = algebra.operator_norm(algebra.mul(E, F))
        image_product = algebra.operator_norm(algebra.mul(projection_image(E), projection_image(F)))
        if (source_product <= tol) != (image_product <= tol):
            witness = Witness(
                elements=(E, F),
                measured={'source_product_norm': source_product, 'image_product_norm': image_product},
            )
            return Verdict.fails(witness, message='phi does not preserve orthogonality of projections')

    return Verdict.verified()


# ----------------------------------------------------------------------------------------------------------------------
def check_trace_preservation(t, tol=1e-9, samples=20, seed=0):
    # type: (LinearMapTable, float, int, int) -> Verdict
    """
    Tr(A) = Tr(phi(A)) for a *-isomorphism or *-antiisomorphism between single full blocks of equal dimension.
    """
    if t.source.m != 1 or t.target.m != 1 or t.source.block_dims != t.target.block_dims:
        raise errors.PreconditionFailedError(
            'Trace preservation needs single blocks of equal dimension, got %r -> %r!' % (t.source, t.target)
        )

    verdict = is_jordan_star_homomorphism(t, tol=max(tol, 1e-10))
    if not verdict.ok:
        raise errors.PreconditionFailedError('%r is not a Jordan *-isomorphism: %s' % (t, verdict.witness))
    try:
        _block_assignment(t, DEFAULT_TOL)
    except errors.NotBijectiveError as e:
        raise errors.PreconditionFailedError('%r is not a Jordan *-isomorphism: %s' % (t, e))

    rng = np.random.default_rng(seed)
    candidates = algebra.matrix_units(t.source) + [algebra.random_element(t.source, rng) for _ in range(samples)]
    for A in candidates:
        source_trace = algebra.trace(A, 0)
        image_trace = algebra.trace(t.apply(A), 0)
        if abs(source_trace - image_trace) > tol:
            witness = Witness(
                elements=(A,),
                measured={'trace': [source_trace.real, source_trace.imag],
                          'image_trace': [image_trace.real, image_trace.imag]},
            )
            return Verdict.fails(witness, message='phi does not preserve the trace')

    return Verdict.verified()


# ----------------------------------------------------------------------------------------------------------------------
def random_jordan_isomorphism(dims, kinds, seed, permutation=None):
    # type: (list, list, int, list) -> tuple
    """
    Seeded Jordan *-isomorphism of (+)_a M_{d_a}: per block a Haar unitary conjugation, transposed for antilinear kinds,
    optionally permuting blocks of equal dimension.

    :param dims: block dimensions.
    :type dims: list

    :param kinds: 'linear' (multiplicative) or 'antilinear' (anti-multiplicative) per block of the table's target.
    :type kinds: list

    :param permutation: target block of the ray map for every source block; identity if omitted.
    :type permutation: list

    :return: (table, planted tags) where the tags are listed per source block of the table.
    :rtype: tuple
    """
    if permutation is None:
        permutation = list(range(len(dims)))

    canonical = wigner.random_canonical(dims, dims, permutation, kinds, seed)
    table = from_induced(wigner.InducedMap(canonical))

    planted = dict()
    for fiber in canonical.fibers:
        planted[fiber.target_block] = {
            'source_block': fiber.target_block,
            'target_block': fiber.source_block,
            'tag': MULTIPLICATIVE if fiber.kind == raymaps.LINEAR else ANTI_MULTIPLICATIVE,
        }
    return table, [planted[a] for a in sorted(planted)]


# ----------------------------------------------------------------------------------------------------------------------
def reconstruct_jordan_isomorphism(ray_map, tol=DEFAULT_TOL, seed=0):
    # type: (raymaps.RayMapBlackBox, float, int) -> tuple
    """
    For a bijection of pure states that preserves transition probabilities, recover the Jordan *-isomorphism whose dual
    it is: assemble the inducing map, check it permutes blocks with unitaries, and confirm the Jordan identities.

    :return: (induced map, its table)
    :rtype: tuple
    """
    phi = wigner.assemble(ray_map, tol=tol, seed=seed)

    targets = [f.target_block for f in phi.canonical.fibers]
    square = all(f.isometry.shape[0] == f.isometry.shape[1] for f in phi.canonical.fibers)
    if len(set(targets)) != len(targets) or len(targets) != ray_map.target_algebra.m or not square:
        raise errors.NotBijectiveError(
            'Ray map is not a bijection of pure states: fibers %s, unitary fibers: %s' %
            (phi.canonical.assignment(), square)
        )

    table = from_induced(phi)
    verdict = is_jordan_star_homomorphism(table, tol=max(tol, 1e-10))
    if not verdict.ok:
        raise errors.NotBijectiveError('Reconstructed map is not a Jordan *-isomorphism: %s' % verdict.witness)
    return phi, table
