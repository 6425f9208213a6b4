import io
import json
import unittest

from affinecheck.lib import instancefile
from affinecheck.lib.affine import AffineSet
from affinecheck.lib.comma import AffineOracle, CommaObject, PointedSetOracle
from affinecheck.lib.errors import (
    InvalidParameter,
    MalformedInput,
    UnresolvedReference,
)
from affinecheck.lib.quantale import Quantale
from affinecheck.lib.vcat import VCategory
from affinecheck.tests.helpers import (
    assert_equal,
    assert_in,
    assert_raises,
    assert_regexp_matches,
    assert_true,
    get_acceptance,
    get_test_file,
)


def load(document):
    return instancefile.load(io.StringIO(json.dumps(document)))


class TestLoad(unittest.TestCase):

    def test_acceptance_file_loads(self):
        with open(get_acceptance(), encoding='utf-8') as the_file:
            instance = instancefile.load(the_file)
        assert_true(isinstance(instance.quantale('L2'), Quantale))
        assert_true(isinstance(instance.get('vcategories', 'chain2'),
                               VCategory))
        assert_true(isinstance(instance.get('affine_sets', 'sierpinski'),
                               AffineSet))
        assert_true(isinstance(instance.get('comma_objects', 'collapse'),
                               CommaObject))
        assert_true(isinstance(instance.comma_oracles['pointed'],
                               PointedSetOracle))
        assert_true(len(instance.checks) > 40)

    def test_invalid_json(self):
        with assert_raises(MalformedInput) as cm:
            instancefile.load(io.StringIO('{"quantales": '))
        assert_regexp_matches(str(cm.exception), 'Error parsing JSON')

    def test_document_must_be_an_object(self):
        assert_raises(MalformedInput, load, [])

    def test_unknown_block(self):
        with assert_raises(MalformedInput) as cm:
            load({'monoids': {}})
        assert_in('monoids', str(cm.exception))

    def test_block_must_be_an_object(self):
        assert_raises(MalformedInput, load, {'quantales': {'two': 'boolean'}})

    def test_dangling_reference(self):
        with get_test_file('dangling_reference.json') as the_file:
            with assert_raises(UnresolvedReference) as cm:
                instancefile.load(the_file)
        assert_equal(cm.exception.kind, 'quantale')
        assert_equal(cm.exception.name, 'L3')
        assert_equal(str(cm.exception), "Unable to find quantale 'L3'")

    def test_reference_must_be_a_name(self):
        instance = load({})
        assert_raises(MalformedInput, instance.get, 'quantales', ['two'])

    def test_checks(self):
        instance = load({'quantales': {'two': {'kind': 'boolean'}},
                         'checks': [{'op': 'check_quantale_laws',
                                     'args': {'quantale': 'two'}}]})
        assert_equal(instance.checks, [{
            'op': 'check_quantale_laws',
            'args': {'quantale': 'two'},
            'label': 'check_quantale_laws',
        }])

    def test_check_without_op(self):
        with assert_raises(MalformedInput) as cm:
            load({'checks': [{'args': {}}]})
        assert_equal(str(cm.exception),
                     "Unable to find mandatory field 'op' in check 0")


class TestBlocks(unittest.TestCase):

    def test_quantale_kind(self):
        instance = load({'quantales': {'L3': {'kind': 'lukasiewicz', 'n': 3}}})
        assert_equal(instance.quantale('L3').size, 4)

    def test_quantale_kind_parameter(self):
        assert_raises(InvalidParameter, load,
                      {'quantales': {'L0': {'kind': 'lukasiewicz', 'n': 0}}})
        assert_raises(MalformedInput, load,
                      {'quantales': {'L': {'kind': 'lukasiewicz', 'n': '2'}}})

    def test_explicit_quantale(self):
        instance = load({'quantales': {'two': {
            'leq': [[1, 1], [0, 1]], 'tensor': [[0, 0], [0, 1]], 'unit': 1}}})
        assert_equal(instance.quantale('two').unit, 1)

    def test_explicit_algebra(self):
        instance = load({'algebras': {'Z2': {'size': 2, 'operations': {
            'plus': {'arity': 2, 'table': [[0, 1], [1, 0]]},
            'zero': {'arity': 0, 'table': 0}}}}})
        Z2 = instance.algebra('Z2')
        assert_equal(Z2.apply('plus', 1, 1), 0)
        assert_equal(Z2.constants(), {'zero': 0})

    def test_declared_arity_must_match(self):
        assert_raises(MalformedInput, load, {'algebras': {'Z2': {
            'size': 2, 'operations': {
                'plus': {'arity': 1, 'table': [[0, 1], [1, 0]]}}}}})

    def test_built_in_algebras(self):
        instance = load({
            'quantales': {'two': {'kind': 'boolean'}},
            'algebras': {
                'B8': {'builtin': 'boolean_algebra', 'atoms': 3},
                'V': {'builtin': 'vccd', 'quantale': 'two'},
            }})
        assert_equal(instance.algebra('B8').size, 8)
        assert_in('tensor_1', instance.algebra('V').arities)
        assert_equal(instance.algebra('frame2').size, 2)
        assert_equal(instance.algebra('inf2').signature,
                     (('meet', 2), ('top', 0)))

    def test_built_in_algebra_parameters(self):
        assert_raises(MalformedInput, load, {'algebras': {
            'C': {'builtin': 'chain'}}})
        assert_raises(MalformedInput, load, {'algebras': {
            'C': {'builtin': 'lattice', 'size': 2}}})

    def test_affine_set_from_generators(self):
        instance = load({'affine_sets': {'S': {
            'ambient': 'frame2', 'size': 2, 'generators': [[0, 1]]}}})
        assert_equal(instance.get('affine_sets', 'S').rows(),
                     [(0, 0), (0, 1), (1, 1)])

    def test_affine_set_must_be_closed(self):
        assert_raises(MalformedInput, load, {'affine_sets': {'S': {
            'ambient': 'frame2', 'size': 2, 'maps': [[0, 1]]}}})

    def test_unknown_closure(self):
        assert_raises(MalformedInput, load, {'affine_sets': {'S': {
            'ambient': 'frame2', 'size': 2, 'generators': [],
            'closure': 'topological'}}})

    def test_spaces_and_closure_systems(self):
        instance = load({
            'spaces': {'S': {'size': 2, 'opens': [[], [1], [0, 1]]}},
            'closure_systems': {'C': {'size': 2, 'closed': [[0, 1]]}}})
        assert_equal(instance.get('spaces', 'S').size, 2)
        assert_equal(instance.get('closure_systems', 'C').closed,
                     frozenset([frozenset([0, 1])]))

    def test_map_table(self):
        assert_raises(MalformedInput, load, {'maps': {
            'f': {'source': 2, 'target': 2, 'table': [0, True]}}})
        assert_raises(MalformedInput, load, {'maps': {
            'f': {'source': 2, 'target': 2, 'table': [0, 2]}}})

    def test_affine_oracle(self):
        instance = load({'oracles': {'I': {'builtin': 'affine',
                                            'ambient': 'frame2'}}})
        assert_true(isinstance(instance.oracle('I'), AffineOracle))

    def test_undeclared_oracle(self):
        instance = load({})
        assert_true(isinstance(instance.oracle('pointed_sets'),
                               PointedSetOracle))
        assert_raises(UnresolvedReference, instance.oracle, 'affine')

    def test_comma_object_structure_map(self):
        assert_raises(MalformedInput, load, {
            'algebras': {'P2': {'builtin': 'pointed_set', 'size': 2}},
            'comma_objects': {'g': {'oracle': 'pointed_sets', 'a': 'P2',
                                    'b': 'P2', 'map': [1, 0]}}})
