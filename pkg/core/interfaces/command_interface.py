import sys
import inspect
import logging

import clacks
import numpy as np

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import raymaps
from wigner_stone.core import wigner
from wigner_stone.core import jordan
from wigner_stone.core import commutative
from wigner_stone.core import blackboxes
from wigner_stone.core.decorators import command, hidden
from wigner_stone.core.json_marshaller import JSONMarshaller
from wigner_stone.core.utils import run_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_OPERATIONAL = 2

INTERFACE_KEY = 'wigner_stone'


# ----------------------------------------------------------------------------------------------------------------------
class WignerStoneCommandInterface(clacks.ServerInterface):
    """
    Command interface - registers every method decorated with @command on a clacks server, under its subcommand name,
    and dispatches runs to the registered server commands. The server never opens a socket; it is only used as the
    command registry.

    Every command returns an exit code: 0 when all checked properties hold, 1 when a property is violated (a witness is
    written to the output), 2 for operational errors such as unreadable input.
    """

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, marshaller=None):
        super(WignerStoneCommandInterface, self).__init__()
        self.marshaller = marshaller or JSONMarshaller()
        self.command_server = None
        self.command_helps = dict()

    # ------------------------------------------------------------------------------------------------------------------
    @hidden
    def register_commands(self, server):
        """
        Register all methods decorated with @command on the given server, keyed by their subcommand name.

        :param server: the server to register commands on.
        :type server: clacks.ServerBase
        """
        self.command_server = server

        # -- look the decorated functions up on the class, properties of the interface are never touched
        for k, fn in inspect.getmembers(type(self), inspect.isfunction):
            if not hasattr(fn, 'command_name'):
                continue

            resource = clacks.command_from_callable(self, getattr(self, k))
            if not resource:
                continue

            logger.debug('Registering command %s: %s' % (fn.command_name, resource))
            server.register_command(fn.command_name, resource)
            self.command_helps[fn.command_name] = fn.command_help

    # ------------------------------------------------------------------------------------------------------------------
    @hidden
    def get_command(self, name):
        # type: (str) -> clacks.ServerCommand
        if self.command_server is None or name not in self.command_helps:
            msg = 'Command %s could not be found! Available: %s' % (name, sorted(self.command_helps))
            logger.error(msg)
            raise errors.CommandNotFoundError(msg)
        return self.command_server.commands[name]

    # ------------------------------------------------------------------------------------------------------------------
    @hidden
    def command_help(self):
        return [(name, self.command_helps[name]) for name in sorted(self.command_helps)]

    # ------------------------------------------------------------------------------------------------------------------
    @hidden
    def run(self, config):
        # type: (run_config.RunConfig) -> int
        try:
            return self.get_command(config.command)(config)

        except errors.PropertyViolationError as e:
            logger.info('Property violated: %s' % e)
            return self._write_violation(e, config.output)

        except errors.OperationalError as e:
            logger.error('%s: %s' % (type(e).__name__, e))
            return EXIT_OPERATIONAL

    # ------------------------------------------------------------------------------------------------------------------
    def _write_violation(self, error, path):
        try:
            self.marshaller.write(self._violation_document(error), path)
        except errors.OperationalError as e:
            logger.error('Could not report violation %s: %s: %s' % (type(error).__name__, type(e).__name__, e))
            return EXIT_OPERATIONAL
        return EXIT_VIOLATION

    # ------------------------------------------------------------------------------------------------------------------
    def _violation_document(self, error):
        document = {'type': 'violation', 'error': type(error).__name__, 'message': str(error)}

        cause = error
        if isinstance(error, errors.AssemblyFailure):
            document['fiber'] = error.fiber
            document['cause'] = type(error.cause).__name__
            cause = error.cause
        if isinstance(cause, errors.ReconstructionFailure):
            document['reason'] = cause.reason

        if error.witness is not None:
            document['witness'] = self.marshaller.encode(error.witness)
        return document

    # ------------------------------------------------------------------------------------------------------------------
    def _ray_maps(self, config):
        """
        The black boxes a run works on: the --map selector, then every --input ray map.
        """
        result = list()
        if config.map_selector:
            result.append(blackboxes.blackbox_from_selector(config.map_selector))
        for path in config.inputs:
            result.append(raymaps.as_blackbox(self.marshaller.read(path, expected='ray_map')))

        if not result:
            raise errors.ConfigError('%s needs --map or --input!' % config.command)
        return result

    # ------------------------------------------------------------------------------------------------------------------
    def _single_input(self, config, expected):
        if len(config.inputs) != 1:
            raise errors.ConfigError('%s needs exactly one --input, got %s!' % (config.command, len(config.inputs)))
        return self.marshaller.read(config.inputs[0], expected=expected)

    # ------------------------------------------------------------------------------------------------------------------
    @command('classify', help='classify a ray map against the orthogonality and transition probability properties')
    def cmd_classify(self, config):
        reports = list()
        for ray_map in self._ray_maps(config):
            report = raymaps.classify(
                ray_map, samples=config.samples, seed=config.seed, tol=config.tol, workers=config.workers
            )
            reports.append(report)

        if len(reports) == 1:
            self.marshaller.write(reports[0], config.output)
        else:
            document = {'type': 'classification_batch', 'reports': [self.marshaller.encode(r) for r in reports]}
            self.marshaller.write(document, config.output)

        if any(r.any_undetermined() for r in reports):
            return EXIT_OPERATIONAL
        if any(r.any_failed() for r in reports):
            return EXIT_VIOLATION
        return EXIT_OK

    # ------------------------------------------------------------------------------------------------------------------
    @command('reconstruct', help='reconstruct the linear map inducing a ray map and verify it')
    def cmd_reconstruct(self, config):
        ray_map = self._ray_maps(config)[0]
        phi = wigner.assemble(ray_map, tol=config.tol, seed=config.seed, workers=config.workers)
        verdict = wigner.verify_induction(ray_map, phi, samples=config.samples, seed=config.seed, tol=config.tol)

        document = {
            'type': 'reconstruction',
            # -- weak* continuity is automatic in finite dimension
            'finite_dim': True,
            'induced_map': self.marshaller.encode(phi),
            'verification': self.marshaller.encode(verdict),
        }
        self.marshaller.write(document, config.output)
        return EXIT_OK if verdict.ok else EXIT_VIOLATION

    # ------------------------------------------------------------------------------------------------------------------
    @command('jordan-split', help='verify a Jordan *-isomorphism and split it into its multiplicative parts')
    def cmd_jordan_split(self, config):
        table = self._single_input(config, expected='linear_map')

        verified = {'jordan': jordan.is_jordan_star_homomorphism(table)}
        if not verified['jordan'].ok:
            document = {'type': 'kadison_split', 'verified': self._encode_verdicts(verified)}
            self.marshaller.write(document, config.output)
            return EXIT_VIOLATION

        split = jordan.kadison_split(table, tol=config.tol)
        checks = dict(samples=config.samples, seed=config.seed, tol=config.tol)
        verified['isometry'] = jordan.verify_isometry(table, **checks)
        verified['order_isomorphism'] = jordan.verify_order_iso(table, **checks)
        verified['orthoisomorphism'] = jordan.verify_orthoisomorphism(table, **checks)
        if table.source.m == 1 and table.source == table.target:
            verified['trace'] = jordan.check_trace_preservation(table, seed=config.seed)

        document = self.marshaller.encode(split)
        document['verified'] = self._encode_verdicts(verified)
        self.marshaller.write(document, config.output)
        return EXIT_OK if all(v.ok for v in verified.values()) else EXIT_VIOLATION

    # ------------------------------------------------------------------------------------------------------------------
    def _encode_verdicts(self, verdicts):
        return dict((name, self.marshaller.encode(v)) for name, v in verdicts.items())

    # ------------------------------------------------------------------------------------------------------------------
    @command('banach-stone', help='extract the point map of a *-homomorphism, or build the composition operator of one')
    def cmd_banach_stone(self, config):
        document = self._single_input(config, expected=('point_map', 'linear_map'))

        if isinstance(document, commutative.PointMap):
            self.marshaller.write(commutative.composition_operator(document), config.output)
        else:
            self.marshaller.write(commutative.extract_point_map(document), config.output)
        return EXIT_OK

    # ------------------------------------------------------------------------------------------------------------------
    @command('gen', help='generate seeded fixtures: ray maps, Jordan isomorphisms, elements or point maps')
    def cmd_gen(self, config):
        generators = {
            'ray_map': self._gen_ray_map,
            'jordan': self._gen_jordan,
            'element': self._gen_element,
            'point_map': self._gen_point_map,
        }
        self.marshaller.write(generators[config.gen_kind](config), config.output)
        return EXIT_OK

    # ------------------------------------------------------------------------------------------------------------------
    def _default_kinds(self, config, count):
        if config.kinds is not None:
            return config.kinds
        rng = np.random.default_rng(config.seed)
        return [raymaps.KINDS[int(k)] for k in rng.integers(len(raymaps.KINDS), size=count)]

    # ------------------------------------------------------------------------------------------------------------------
    def _gen_ray_map(self, config):
        source_dims = config.source_dims or [2]
        target_dims = config.target_dims or source_dims
        algebra.make_algebra(source_dims)
        assignment = config.assignment if config.assignment is not None else list(range(len(source_dims)))
        kinds = self._default_kinds(config, len(source_dims))
        return wigner.random_canonical(source_dims, target_dims, assignment, kinds, config.seed)

    # ------------------------------------------------------------------------------------------------------------------
    def _gen_jordan(self, config):
        dims = config.source_dims or [2]
        algebra.make_algebra(dims)
        permutation = config.assignment if config.assignment is not None else list(range(len(dims)))
        if sorted(permutation) != list(range(len(dims))) or any(
                dims[b] != dims[a] for b, a in enumerate(permutation)):
            raise errors.ConfigError(
                '--assignment %s is not a permutation of equal blocks of %s!' % (permutation, dims)
            )
        table, _ = jordan.random_jordan_isomorphism(
            dims, self._default_kinds(config, len(dims)), config.seed, permutation=permutation
        )
        return table

    # ------------------------------------------------------------------------------------------------------------------
    def _gen_element(self, config):
        alg = algebra.make_algebra(config.source_dims or [2])
        return algebra.random_element(alg, np.random.default_rng(config.seed))

    # ------------------------------------------------------------------------------------------------------------------
    def _gen_point_map(self, config):
        points = config.points or [3, 3]
        if len(points) != 2:
            raise errors.ConfigError('--points needs n,s, got %s!' % points)
        n, s = points
        if n < 1 or s < 1:
            raise errors.NonPositiveDimError('Point sets must be nonempty, got n=%s, s=%s!' % (n, s))
        rng = np.random.default_rng(config.seed)
        return commutative.PointMap(n, s, rng.integers(n, size=s).tolist())


# ----------------------------------------------------------------------------------------------------------------------
def command_server(marshaller=None):
    # type: (JSONMarshaller) -> WignerStoneCommandInterface
    """
    Build an offline clacks server carrying the command interface, and return the interface.
    """
    server = clacks.ServerBase(identifier='wigner_stone', start_queue=False)
    server.register_interface_by_key(INTERFACE_KEY)
    interface = server.interfaces.get(INTERFACE_KEY)
    if marshaller is not None:
        interface.marshaller = marshaller
    interface.register_commands(server)
    return interface


# ----------------------------------------------------------------------------------------------------------------------
def main(argv=None):
    # type: (list) -> int
    interface = command_server()
    parser = run_config.build_parser(interface.command_help())

    try:
        namespace = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OPERATIONAL

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if namespace.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )

    try:
        config = run_config.config_from_args(namespace)
    except errors.OperationalError as e:
        logger.error('%s: %s' % (type(e).__name__, e))
        return EXIT_OPERATIONAL

    logger.debug('Running %r' % config)
    return interface.run(config)


clacks.register_server_interface_type(INTERFACE_KEY, WignerStoneCommandInterface)
