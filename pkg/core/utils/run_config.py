import argparse

from wigner_stone.core import errors

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 200
DEFAULT_TOL = 1e-8
DEFAULT_WORKERS = 1

GEN_KINDS = ('ray_map', 'jordan', 'element', 'point_map')


# ----------------------------------------------------------------------------------------------------------------------
class RunConfig(object):
    """
    Everything one command line run needs. Built from parsed arguments by config_from_args(), which validates it.
    """

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self, command, inputs=(), output=None, seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES, tol=DEFAULT_TOL,
                 map_selector=None, workers=DEFAULT_WORKERS, verbose=False, gen_kind='ray_map', source_dims=None,
                 target_dims=None, assignment=None, kinds=None, points=None):
        self.command = command
        self.inputs = list(inputs)
        self.output = output
        self.seed = seed
        self.samples = samples
        self.tol = tol
        self.map_selector = map_selector
        self.workers = workers
        self.verbose = verbose
        self.gen_kind = gen_kind
        self.source_dims = source_dims
        self.target_dims = target_dims
        self.assignment = assignment
        self.kinds = kinds
        self.points = points

    # ------------------------------------------------------------------------------------------------------------------
    def validate(self):
        if self.samples < 1:
            raise errors.ConfigError('--samples must be at least 1, got %s!' % self.samples)
        if not self.tol > 0:
            raise errors.ConfigError('--tol must be positive, got %s!' % self.tol)
        if self.workers < 1:
            raise errors.ConfigError('--workers must be at least 1, got %s!' % self.workers)
        if self.seed < 0:
            raise errors.ConfigError('--seed must be non-negative, got %s!' % self.seed)
        if self.gen_kind not in GEN_KINDS:
            raise errors.ConfigError('Unknown --kind %r, expected one of %s!' % (self.gen_kind, GEN_KINDS))
        return self

    # ------------------------------------------------------------------------------------------------------------------
    def __repr__(self):
        return 'RunConfig(%s)' % ', '.join('%s=%r' % (k, v) for k, v in sorted(vars(self).items()))


# ----------------------------------------------------------------------------------------------------------------------
def int_list(value):
    # type: (str) -> list
    """
    Read "2,3,1" (or "2x3x1") into a list of integers.
    """
    parts = [p for p in value.replace('x', ',').split(',') if p.strip()]
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise errors.ConfigError('Could not read integer list %r!' % value)


# ----------------------------------------------------------------------------------------------------------------------
def str_list(value):
    # type: (str) -> list
    return [p.strip() for p in value.split(',') if p.strip()]


# ----------------------------------------------------------------------------------------------------------------------
def _common_arguments():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--input', dest='inputs', action='append', default=[], help='input JSON document')
    parser.add_argument('--output', default=None, help='output path, standard output if omitted')
    parser.add_argument('--seed', type=int, default=DEFAULT_SEED)
    parser.add_argument('--samples', type=int, default=DEFAULT_SAMPLES)
    parser.add_argument('--tol', type=float, default=DEFAULT_TOL)
    parser.add_argument(
        '--map', dest='map_selector', default=None, help='built-in black box, e.g. dim2-bloch:alpha=0.25'
    )
    parser.add_argument('--workers', type=int, default=DEFAULT_WORKERS)
    parser.add_argument('--verbose', action='store_true')
    return parser


# ----------------------------------------------------------------------------------------------------------------------
def build_parser(commands):
    # type: (list) -> argparse.ArgumentParser
    """
    :param commands: (name, help) pairs, one subcommand each.
    :type commands: list
    """
    common = _common_arguments()
    parser = argparse.ArgumentParser(prog='wigner_stone', description='Classify and reconstruct pure state maps.')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    for name, help_text in commands:
        sub = subparsers.add_parser(name, help=help_text, parents=[common])
        if name == 'gen':
            sub.add_argument('--kind', dest='gen_kind', default='ray_map', choices=GEN_KINDS)
            sub.add_argument('--source-dims', type=str, default=None)
            sub.add_argument('--target-dims', type=str, default=None)
            sub.add_argument('--assignment', type=str, default=None)
            sub.add_argument('--kinds', type=str, default=None)
            sub.add_argument('--points', type=str, default=None, help='n,s for point maps')

    return parser


# ----------------------------------------------------------------------------------------------------------------------
def config_from_args(namespace):
    # type: (argparse.Namespace) -> RunConfig
    args = vars(namespace)

    def optional(key, reader):
        value = args.get(key)
        return reader(value) if value is not None else None

    config = RunConfig(
        command=args['command'],
        inputs=args.get('inputs') or [],
        output=args.get('output'),
        seed=args.get('seed', DEFAULT_SEED),
        samples=args.get('samples', DEFAULT_SAMPLES),
        tol=args.get('tol', DEFAULT_TOL),
        map_selector=args.get('map_selector'),
        workers=args.get('workers', DEFAULT_WORKERS),
        verbose=args.get('verbose', False),
        gen_kind=args.get('gen_kind') or 'ray_map',
        source_dims=optional('source_dims', int_list),
        target_dims=optional('target_dims', int_list),
        assignment=optional('assignment', int_list),
        kinds=optional('kinds', str_list),
        points=optional('points', int_list),
    )
    return config.validate()
