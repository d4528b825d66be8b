import logging

from wigner_stone.core import errors

logger = logging.getLogger(__name__)

_BLACKBOX_TYPES = dict()


# ----------------------------------------------------------------------------------------------------------------------
def register_blackbox_type(key, factory):
    # type: (str, callable) -> None
    """
    Register a named black box constructor, so that it can be selected from the command line with "key:arg=value".

    :param key: the selector name, for example 'dim2-bloch'.
    :type key: str

    :param factory: callable taking keyword arguments and returning a RayMapBlackBox.
    :type factory: callable
    """
    logger.debug('Registering black box type %s: %s' % (key, factory))
    _BLACKBOX_TYPES[key] = factory


# ----------------------------------------------------------------------------------------------------------------------
def list_blackbox_types():
    return sorted(_BLACKBOX_TYPES.keys())


# ----------------------------------------------------------------------------------------------------------------------
def _convert(key, value):
    # -- dimension lists are written 2x3x1
    if key == 'dims' or 'x' in value:
        try:
            return [int(part) for part in value.split('x')]
        except ValueError:
            raise errors.MalformedInputError('Could not read dimension list %r for %s!' % (value, key))

    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            continue
    return value


# ----------------------------------------------------------------------------------------------------------------------
def parse_selector(selector):
    # type: (str) -> tuple
    """
    Split a selector such as "dim2-bloch:alpha=0.25" into its name and keyword arguments.

    :return: (name, kwargs)
    :rtype: tuple
    """
    name, _, arg_string = selector.strip().partition(':')

    kwargs = dict()
    if arg_string:
        for pair in arg_string.split(','):
            key, _, value = pair.partition('=')
            key, value = key.strip(), value.strip()
            if not key or not value:
                raise errors.MalformedInputError('Malformed argument %r in selector %r!' % (pair, selector))
            kwargs[key] = _convert(key, value)

    return name.strip(), kwargs


# ----------------------------------------------------------------------------------------------------------------------
def blackbox_from_selector(selector):
    # type: (str) -> object
    name, kwargs = parse_selector(selector)

    if name not in _BLACKBOX_TYPES:
        msg = 'Black box type %r is not registered! Available: %s' % (name, list_blackbox_types())
        logger.error(msg)
        raise errors.UnknownBlackBoxError(msg)

    try:
        return _BLACKBOX_TYPES[name](**kwargs)
    except TypeError as e:
        raise errors.MalformedInputError('Bad arguments for black box %r: %s' % (name, e))
