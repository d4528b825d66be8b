import json
import unittest

import numpy as np
import numpy.testing as npt

from wigner_stone.core import errors
from wigner_stone.core import algebra
from wigner_stone.core import states
from wigner_stone.core import raymaps
from wigner_stone.core import wigner
from wigner_stone.core import jordan
from wigner_stone.core import commutative
from wigner_stone.core.blackboxes import bloch
from wigner_stone.core.json_marshaller import JSONMarshaller, plain
from wigner_stone.core.verdicts import Verdict


# ----------------------------------------------------------------------------------------------------------------------
class TestJSONMarshaller(unittest.TestCase):

    # ------------------------------------------------------------------------------------------------------------------
    def setUp(self):
        self.marshaller = JSONMarshaller()
        self.rng = np.random.default_rng(13)

    # ------------------------------------------------------------------------------------------------------------------
    def reload(self, obj, expected):
        return self.marshaller.loads(self.marshaller.dumps(obj), expected=expected)

    # ------------------------------------------------------------------------------------------------------------------
    def test_element_is_bit_exact(self):
        A = algebra.random_element(algebra.make_algebra([1, 3]), self.rng)
        B = self.reload(A, 'element')
        assert B.algebra == A.algebra
        for a, b in zip(A.blocks, B.blocks):
            npt.assert_array_equal(a, b)

    # ------------------------------------------------------------------------------------------------------------------
    def test_element_layout(self):
        alg = algebra.make_algebra([2])
        document = self.marshaller.encode(algebra.Element(alg, [[[1, 2j], [0, -1]]]))
        assert document == {
            'type': 'element',
            'algebra': [2],
            'blocks': [[[[1.0, 0.0], [0.0, 2.0]], [[0.0, 0.0], [-1.0, 0.0]]]],
        }

    # ------------------------------------------------------------------------------------------------------------------
    def test_pure_state(self):
        omega = states.random_pure_state(algebra.make_algebra([2, 4]), self.rng)
        reloaded = self.reload(omega, 'pure_state')
        assert reloaded.block == omega.block
        npt.assert_array_equal(reloaded.vector, omega.vector)

    # ------------------------------------------------------------------------------------------------------------------
    def test_ray_map(self):
        m = wigner.random_canonical([2, 1], [3], [0, 0], [raymaps.ANTILINEAR, raymaps.LINEAR], seed=2)
        reloaded = self.reload(m, 'ray_map')

        assert reloaded.assignment() == m.assignment()
        for a, b in zip(m.fibers, reloaded.fibers):
            assert a.kind == b.kind
            npt.assert_array_equal(a.isometry, b.isometry)

    # ------------------------------------------------------------------------------------------------------------------
    def test_report(self):
        report = raymaps.classify(bloch.dim2_biorthogonal_not_tp(0.25), samples=20, seed=1)
        text = self.marshaller.dumps(report)
        reloaded = self.marshaller.loads(text, expected='classification_report')

        assert reloaded[raymaps.LOCALLY_TP_PRESERVING].failed
        assert reloaded[raymaps.BI_ORTHOGONAL].status == Verdict.HOLDS
        assert self.marshaller.dumps(reloaded) == text

        document = json.loads(text)
        assert document['dimension_two_blocks'] == [0]
        assert document['wigner_applicable'] is False

    # ------------------------------------------------------------------------------------------------------------------
    def test_linear_map(self):
        t, _ = jordan.random_jordan_isomorphism([2, 1], [raymaps.ANTILINEAR, raymaps.LINEAR], seed=3)
        reloaded = self.reload(t, 'linear_map')
        assert reloaded.max_difference(t) == 0.0

    # ------------------------------------------------------------------------------------------------------------------
    def test_point_map(self):
        nu = commutative.PointMap(4, 3, [3, 0, 3])
        assert self.reload(nu, 'point_map') == nu

    # ------------------------------------------------------------------------------------------------------------------
    def test_kadison_split_is_output_only(self):
        alg = algebra.make_algebra([2])
        split = jordan.kadison_split(jordan.from_callable(alg, alg, algebra.transpose))
        document = json.loads(self.marshaller.dumps(split))
        assert document['F_blocks'] == [] and document['E_blocks'] == []

        with self.assertRaises(errors.MalformedInputError):
            self.marshaller.decode(document)

    # ------------------------------------------------------------------------------------------------------------------
    def test_untyped_document_uses_expected(self):
        nu = self.marshaller.decode({'n': 2, 's': 1, 'nu': [1]}, expected='point_map')
        assert nu == commutative.PointMap(2, 1, [1])

    # ------------------------------------------------------------------------------------------------------------------
    def test_wrong_type(self):
        text = self.marshaller.dumps(commutative.PointMap(2, 1, [1]))
        with self.assertRaises(errors.MalformedInputError):
            self.marshaller.loads(text, expected='ray_map')

    # ------------------------------------------------------------------------------------------------------------------
    def test_malformed(self):
        text = self.marshaller.dumps(wigner.random_canonical([2], [2], [0], [raymaps.LINEAR], seed=0))

        for broken in (text[:len(text) // 2], '[]', '{"type": "nonsense"}', '{"type": "element", "algebra": [2]}',
                       '{"type": "element", "algebra": [1], "blocks": [[[1.0]]]}',
                       '{"type": "element", "algebra": [1], "blocks": [[[[NaN, 0.0]]]]}'):
            with self.assertRaises(errors.MalformedInputError):
                self.marshaller.loads(broken)

    # ------------------------------------------------------------------------------------------------------------------
    def test_non_finite_isometry(self):
        document = json.loads(self.marshaller.dumps(wigner.random_canonical([2], [2], [0], [raymaps.LINEAR], seed=0)))
        document['fibers'][0]['isometry'][0][0] = [float('nan'), 0.0]

        with self.assertRaises(errors.NonIsometryError):
            self.marshaller.loads(json.dumps(document))

    # ------------------------------------------------------------------------------------------------------------------
    def test_deterministic(self):
        m = wigner.random_canonical([3], [3], [0], [raymaps.LINEAR], seed=5)
        assert self.marshaller.dumps(m) == self.marshaller.dumps(self.reload(m, 'ray_map'))

    # ------------------------------------------------------------------------------------------------------------------
    def test_plain(self):
        assert plain({1: (np.int64(2), np.float64(0.5), 1 + 2j, np.bool_(True))}) == {'1': [2, 0.5, [1.0, 2.0], True]}


if __name__ == '__main__':
    unittest.main()
