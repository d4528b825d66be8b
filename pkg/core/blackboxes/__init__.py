from .registry import register_blackbox_type, blackbox_from_selector, list_blackbox_types, parse_selector
from . import bloch
from . import builtin_maps
