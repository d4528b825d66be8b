"""
JSON encoding of every object the command line reads or writes.

Complex numbers are written as [re, im] pairs and matrices row-major. Floats go through repr, which round-trips
bit-exactly, and keys are sorted, so equal objects always produce byte-identical documents.
"""
import sys
import json
import logging

import numpy as np

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import states
from wigner_stone.core import raymaps
from wigner_stone.core import wigner
from wigner_stone.core import jordan
from wigner_stone.core import commutative
from wigner_stone.core.verdicts import Verdict, Witness

logger = logging.getLogger(__name__)

_DOCUMENT_TYPES = dict()


# ----------------------------------------------------------------------------------------------------------------------
def register_document_type(key, cls, encoder, decoder):
    # type: (str, type, callable, callable) -> None
    """
    Register the encoder and decoder of one document type. Encoded documents carry the key in their "type" field.
    """
    logger.debug('Registering document type %s for %s' % (key, cls.__name__))
    _DOCUMENT_TYPES[key] = (cls, encoder, decoder)


# ----------------------------------------------------------------------------------------------------------------------
def _key_for(obj):
    for key, (cls, _, _) in _DOCUMENT_TYPES.items():
        if type(obj) is cls:
            return key
    raise errors.MalformedInputError('No document type registered for %s!' % type(obj).__name__)


# ----------------------------------------------------------------------------------------------------------------------
def plain(value):
    """
    Convert numpy scalars and arrays, tuples and complex numbers into plain JSON values.
    """
    if isinstance(value, dict):
        return dict((str(k), plain(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


# ----------------------------------------------------------------------------------------------------------------------
def _encode_matrix(matrix):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix)]


# ----------------------------------------------------------------------------------------------------------------------
def _decode_matrix(data):
    array = np.array(data, dtype=np.float64)
    if array.ndim != 3 or array.shape[2] != 2:
        raise errors.MalformedInputError('Matrix entries must be [re, im] pairs, got shape %s!' % (array.shape,))
    return array[:, :, 0] + 1j * array[:, :, 1]


# ----------------------------------------------------------------------------------------------------------------------
def _encode_vector(vector):
    return [[float(z.real), float(z.imag)] for z in vector]


# ----------------------------------------------------------------------------------------------------------------------
def _decode_vector(data):
    array = np.array(data, dtype=np.float64)
    if array.ndim != 2 or array.shape[1] != 2:
        raise errors.MalformedInputError('Vector entries must be [re, im] pairs, got shape %s!' % (array.shape,))
    return array[:, 0] + 1j * array[:, 1]


# -- elements and states
# ----------------------------------------------------------------------------------------------------------------------
def _encode_element(A):
    return {'algebra': list(A.algebra.block_dims), 'blocks': [_encode_matrix(block) for block in A.blocks]}


# ----------------------------------------------------------------------------------------------------------------------
def _decode_element(data):
    alg = algebra.make_algebra(data['algebra'])
    return algebra.Element(alg, [_decode_matrix(block) for block in data['blocks']])


# ----------------------------------------------------------------------------------------------------------------------
def _encode_state(omega):
    return {'algebra': list(omega.algebra.block_dims), 'block': omega.block, 'vector': _encode_vector(omega.vector)}


# ----------------------------------------------------------------------------------------------------------------------
def _decode_state(data):
    alg = algebra.make_algebra(data['algebra'])
    stored = _decode_vector(data['vector'])
    omega = states.make_pure_state(alg, int(data['block']), stored)

    # -- keep canonical vectors bit for bit, renormalizing would move the last digits
    if np.max(np.abs(omega.vector - stored)) <= 1e-14:
        return states.PureState(alg, omega.block, stored)
    return omega


# -- ray maps
# ----------------------------------------------------------------------------------------------------------------------
def _encode_canonical(m):
    return {
        'source': list(m.source_algebra.block_dims),
        'target': list(m.target_algebra.block_dims),
        'fibers': [
            {
                'source_block': f.source_block,
                'target_block': f.target_block,
                'kind': f.kind,
                'isometry': _encode_matrix(f.isometry),
            }
            for f in m.fibers
        ],
    }


# ----------------------------------------------------------------------------------------------------------------------
def _decode_canonical(data):
    fibers = [
        raymaps.FiberMap(int(f['source_block']), int(f['target_block']), f['kind'], _decode_matrix(f['isometry']))
        for f in data['fibers']
    ]
    return raymaps.RayMapCanonical(algebra.make_algebra(data['source']), algebra.make_algebra(data['target']), fibers)


# ----------------------------------------------------------------------------------------------------------------------
def _encode_induced(phi):
    return _encode_canonical(phi.canonical)


# ----------------------------------------------------------------------------------------------------------------------
def _decode_induced(data):
    return wigner.InducedMap(_decode_canonical(data))


# -- verdicts and reports
# ----------------------------------------------------------------------------------------------------------------------
def _encode_witness(witness):
    return {
        'states': [_encode_state(omega) for omega in witness.states],
        'elements': [_encode_element(A) for A in witness.elements],
        'measured': plain(witness.measured),
    }


# ----------------------------------------------------------------------------------------------------------------------
def _decode_witness(data):
    return Witness(
        states=[_decode_state(s) for s in data.get('states', [])],
        elements=[_decode_element(e) for e in data.get('elements', [])],
        measured=data.get('measured'),
    )


# ----------------------------------------------------------------------------------------------------------------------
def _encode_verdict(verdict):
    result = {'status': verdict.status}
    if verdict.message:
        result['message'] = verdict.message
    if verdict.witness is not None:
        result['witness'] = _encode_witness(verdict.witness)
    return result


# ----------------------------------------------------------------------------------------------------------------------
def _decode_verdict(data):
    witness = data.get('witness')
    return Verdict(
        data['status'],
        witness=_decode_witness(witness) if witness is not None else None,
        message=data.get('message', ''),
    )


# ----------------------------------------------------------------------------------------------------------------------
def _encode_report(report):
    return {
        'verdicts': dict((name, _encode_verdict(v)) for name, v in report.verdicts.items()),
        'locally_solid': _encode_verdict(report.locally_solid),
        'samples': report.sample_count,
        'seed': report.seed,
        'tol': report.tolerance,
        'pair_count': report.pair_count,
        'dimension_two_blocks': list(report.dimension_two_blocks),
        'wigner_applicable': report.wigner_applicable,
        'errors': list(report.errors),
    }


# ----------------------------------------------------------------------------------------------------------------------
def _decode_report(data):
    return raymaps.ClassificationReport(
        dict((name, _decode_verdict(v)) for name, v in data['verdicts'].items()),
        locally_solid=_decode_verdict(data['locally_solid']),
        sample_count=data['samples'],
        seed=data['seed'],
        tolerance=data['tol'],
        pair_count=data.get('pair_count', 0),
        dimension_two_blocks=data.get('dimension_two_blocks', []),
        errors_=data.get('errors', []),
    )


# -- linear maps
# ----------------------------------------------------------------------------------------------------------------------
def _encode_table(t):
    return {
        'source': list(t.source.block_dims),
        'target': list(t.target.block_dims),
        'images': [[_encode_matrix(block) for block in image.blocks] for image in t.images],
    }


# ----------------------------------------------------------------------------------------------------------------------
def _decode_table(data):
    source = algebra.make_algebra(data['source'])
    target = algebra.make_algebra(data['target'])
    images = [algebra.Element(target, [_decode_matrix(block) for block in image]) for image in data['images']]
    return jordan.LinearMapTable(source, target, images)


# ----------------------------------------------------------------------------------------------------------------------
def _encode_split(split):
    return {
        'F_blocks': split.f_blocks,
        'E_blocks': split.e_blocks,
        'tags': plain(split.tags),
    }


# ----------------------------------------------------------------------------------------------------------------------
def _decode_split(data):
    raise errors.MalformedInputError('Kadison splits are output only!')


# ----------------------------------------------------------------------------------------------------------------------
def _encode_point_map(nu):
    return {'n': nu.n, 's': nu.s, 'nu': list(nu.nu)}


# ----------------------------------------------------------------------------------------------------------------------
def _decode_point_map(data):
    return commutative.PointMap(int(data['n']), int(data['s']), data['nu'])


# ----------------------------------------------------------------------------------------------------------------------
class JSONMarshaller(object):
    """
    Encodes registered objects into typed JSON documents and back.
    """

    INDENT = 2

    # ------------------------------------------------------------------------------------------------------------------
    def __init__(self):
        self.logger = logging.getLogger(__name__)

    # ------------------------------------------------------------------------------------------------------------------
    def encode(self, obj):
        # type: (object) -> dict
        key = _key_for(obj)
        document = _DOCUMENT_TYPES[key][1](obj)
        document['type'] = key
        return document

    # ------------------------------------------------------------------------------------------------------------------
    def decode(self, document, expected=None):
        # type: (dict, str) -> object
        """
        Decode a document. Documents without a "type" field are read as the expected type.

        :param expected: type key (or tuple of keys) the document has to be. Anything else raises.
        :type expected: str
        """
        if not isinstance(document, dict):
            raise errors.MalformedInputError('Expected a JSON object, got %s!' % type(document).__name__)

        allowed = (expected,) if isinstance(expected, str) else expected
        key = document.get('type', allowed[0] if allowed else None)

        if key not in _DOCUMENT_TYPES:
            msg = 'Unknown document type %r!' % key
            self.logger.error(msg)
            raise errors.MalformedInputError(msg)

        if allowed and key not in allowed:
            raise errors.MalformedInputError('Expected a %s document, got %r!' % (' or '.join(allowed), key))

        try:
            return _DOCUMENT_TYPES[key][2](document)
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise errors.MalformedInputError('Malformed %s document: %s: %s' % (key, type(e).__name__, e))

    # ------------------------------------------------------------------------------------------------------------------
    def dumps(self, obj):
        # type: (object) -> str
        document = obj if isinstance(obj, dict) else self.encode(obj)
        return json.dumps(plain(document), sort_keys=True, indent=self.INDENT, allow_nan=False) + '\n'

    # ------------------------------------------------------------------------------------------------------------------
    def loads(self, text, expected=None):
        # type: (str, str) -> object
        try:
            document = json.loads(text)
        except ValueError as e:
            raise errors.MalformedInputError('Could not parse JSON: %s' % e)
        return self.decode(document, expected=expected)

    # ------------------------------------------------------------------------------------------------------------------
    def read(self, path, expected=None):
        # type: (str, str) -> object
        try:
            with open(path, 'r', encoding='utf-8') as fp:
                text = fp.read()
        except (IOError, OSError) as e:
            raise errors.MalformedInputError('Could not read %s: %s' % (path, e))
        return self.loads(text, expected=expected)

    # ------------------------------------------------------------------------------------------------------------------
    def write(self, obj, path=None):
        # type: (object, str) -> None
        """
        Write a document to path, or to standard output if no path is given.
        """
        text = self.dumps(obj)
        if path is None:
            sys.stdout.write(text)
            return

        try:
            with open(path, 'w', encoding='utf-8') as fp:
                fp.write(text)
        except (IOError, OSError) as e:
            raise errors.MalformedInputError('Could not write %s: %s' % (path, e))


register_document_type('element', algebra.Element, _encode_element, _decode_element)
register_document_type('pure_state', states.PureState, _encode_state, _decode_state)
register_document_type('ray_map', raymaps.RayMapCanonical, _encode_canonical, _decode_canonical)
register_document_type('induced_map', wigner.InducedMap, _encode_induced, _decode_induced)
register_document_type('witness', Witness, _encode_witness, _decode_witness)
register_document_type('verdict', Verdict, _encode_verdict, _decode_verdict)
register_document_type('classification_report', raymaps.ClassificationReport, _encode_report, _decode_report)
register_document_type('linear_map', jordan.LinearMapTable, _encode_table, _decode_table)
register_document_type('kadison_split', jordan.KadisonSplit, _encode_split, _decode_split)
register_document_type('point_map', commutative.PointMap, _encode_point_map, _decode_point_map)
