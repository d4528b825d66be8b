from .run_config import RunConfig, build_parser, config_from_args
