from .core import errors
from .core.algebra import AlgebraSpec, Element, make_algebra
from .core.states import PureState, make_pure_state, transition_probability, is_orthogonal
from .core.states import state_distance_oracle, projection_witness
from .core.verdicts import Verdict, Witness
from .core.raymaps import RayMapCanonical, RayMapBlackBox, ClassificationReport, as_blackbox, classify
from .core.wigner import InducedMap, reconstruct_fiber, assemble, apply_induced, verify_induction
from .core.wigner import random_canonical, dim2_biorthogonal_not_tp
from .core.jordan import LinearMapTable, from_induced, is_jordan_star_homomorphism, kadison_split
from .core.commutative import PointMap, composition_operator, extract_point_map
from .core.blackboxes import register_blackbox_type, blackbox_from_selector
from .core.json_marshaller import JSONMarshaller
from .core.interfaces import WignerStoneCommandInterface, command_server, main
