import io
import json
import unittest

from affinecheck import config
from affinecheck.logic import NotFound, ValidationError, get_action
from affinecheck.tests.helpers import (
    assert_equal,
    assert_in,
    assert_raises,
    assert_true,
    get_acceptance,
    get_broken_tensor,
    get_dangling_reference,
    get_lukasiewicz_laws,
)


def call_action(name, **data_dict):
    return get_action(name)({'settings': config.load_settings()}, data_dict)


def without_wall_time(report):
    return [{k: v for k, v in check.items() if k != 'wall_time'}
            for check in report['checks']]


class TestRunInstanceFile(unittest.TestCase):

    def test_lukasiewicz_laws_pass(self):
        report = call_action('instance_file_check', path=get_lukasiewicz_laws())
        assert_equal(report['status'], 'pass')
        assert_equal([c['label'] for c in report['checks']],
                     ['lukasiewicz 2 laws', 'hom(1/2, 0)'])
        assert_equal(report['checks'][1]['result'], 1)
        assert_equal(report['checks'][0]['id'], '000-lukasiewicz-2-laws')

    def test_it_allows_uploading_an_instance_file(self):
        with open(get_lukasiewicz_laws(), encoding='utf-8') as the_file:
            upload = io.StringIO(the_file.read())
        report = call_action('instance_file_check', upload=upload)
        assert_equal(report['status'], 'pass')

    def test_broken_tensor_fails(self):
        report = call_action('instance_file_check', path=get_broken_tensor())
        assert_equal(report['status'], 'fail')
        check = report['checks'][0]
        assert_equal(check['status'], 'fail')
        assert_in('tensor.unit', [w['law'] for w in check['witnesses']])
        assert_equal(check['counters']['violations'], len(check['witnesses']))

    def test_acceptance_file_passes(self):
        report = call_action('instance_file_check', path=get_acceptance())
        failed = [c for c in report['checks'] if c['status'] != 'pass']
        assert_equal(failed, [])
        assert_equal(report['status'], 'pass')

    def test_threads_keep_file_order(self):
        serial = call_action('instance_file_check', path=get_acceptance(),
                             jobs=1)
        threaded = call_action('instance_file_check', path=get_acceptance(),
                               jobs=3)
        assert_equal(without_wall_time(serial), without_wall_time(threaded))

    def test_report_is_json(self):
        report = call_action('instance_file_check', path=get_acceptance())
        assert_equal(json.loads(json.dumps(report)), report)

    def test_dangling_reference(self):
        assert_raises(NotFound, call_action, 'instance_file_check',
                      path=get_dangling_reference())

    def test_missing_path(self):
        with assert_raises(ValidationError) as cm:
            call_action('instance_file_check', path='/no/such/instance.json')
        assert_in('path', cm.exception.error_dict)

    def test_no_file_given(self):
        with assert_raises(ValidationError) as cm:
            call_action('instance_file_check')
        assert_equal(cm.exception.error_dict,
                     {'path': ['You must give an instance file']})

    def test_unknown_operation(self):
        upload = io.StringIO(json.dumps({'checks': [{'op': 'frobnicate'}]}))
        with assert_raises(ValidationError) as cm:
            call_action('instance_file_check', upload=upload)
        assert_equal(cm.exception.error_dict,
                     {'checks': ["Unknown operation 'frobnicate' in check 0"]})

    def test_check_referencing_an_undeclared_block(self):
        upload = io.StringIO(json.dumps({'checks': [
            {'op': 'check_quantale_laws', 'args': {'quantale': 'L9'}}]}))
        assert_raises(NotFound, call_action, 'instance_file_check',
                      upload=upload)

    def test_missing_argument(self):
        upload = io.StringIO(json.dumps({'checks': [{'op': 'hom'}]}))
        assert_raises(ValidationError, call_action, 'instance_file_check',
                      upload=upload)

    def test_negative_census_size(self):
        upload = io.StringIO(json.dumps({'checks': [
            {'op': 'enumerate_closure_systems', 'args': {'size': -1}}]}))
        with assert_raises(ValidationError) as cm:
            call_action('instance_file_check', upload=upload)
        assert_equal(cm.exception.error_dict, {'checks': [
            "Argument 'size' must be non-negative, got -1"]})

    def test_degenerate_builtin_algebras(self):
        for entry in ({'builtin': 'chain', 'size': 0},
                      {'builtin': 'boolean_algebra', 'atoms': -1},
                      {'builtin': 'set', 'size': -2}):
            upload = io.StringIO(json.dumps({'algebras': {'A': entry}}))
            with assert_raises(ValidationError) as cm:
                call_action('instance_file_check', upload=upload)
            assert_in('upload', cm.exception.error_dict)

    def test_power_base_must_be_positive(self):
        upload = io.StringIO(json.dumps({
            'maps': {'unique': {'source': 2, 'target': 1, 'table': [0, 0]}},
            'checks': [{'op': 'split_coequalizer_check',
                        'args': {'f': 'unique', 'g': 'unique', 'v': 0}}]}))
        assert_raises(ValidationError, call_action, 'instance_file_check',
                      upload=upload)

    def test_rho_against_comma_objects(self):
        upload = io.StringIO(json.dumps({
            'algebras': {'P1': {'builtin': 'pointed_set', 'size': 1},
                         'P2': {'builtin': 'pointed_set', 'size': 2}},
            'comma_objects': {
                'id': {'oracle': 'pointed_sets', 'a': 'P2', 'b': 'P2',
                       'map': [0, 1]},
                'point': {'oracle': 'pointed_sets', 'a': 'P2', 'b': 'P1',
                          'map': [0, 0]}},
            'checks': [{'op': 'left_adjoint_L',
                        'args': {'oracle': 'pointed_sets', 'a': 'P2',
                                 'b': 'P1', 'targets': ['id', 'point']}}]}))
        report = call_action('instance_file_check', upload=upload)
        assert_equal(report['checks'][0]['status'], 'pass')
        assert_equal(report['checks'][0]['result']['size'], 2)

    def test_precondition_only_is_skipped(self):
        upload = io.StringIO(json.dumps({
            'quantales': {'two': {'kind': 'boolean'}},
            'vcategories': {'chain': {'quantale': 'two',
                                      'matrix': [[1, 1], [0, 1]]}},
            'checks': [{'op': 'expansion_identity_check',
                        'args': {'vcategory': 'chain', 'psi': [1, 0]}}]}))
        report = call_action('instance_file_check', upload=upload)
        assert_equal(report['checks'][0]['status'], 'skip')
        assert_equal(report['status'], 'pass')

    def test_unmet_expectation_fails(self):
        upload = io.StringIO(json.dumps({
            'quantales': {'L2': {'kind': 'lukasiewicz', 'n': 2}},
            'checks': [{'op': 'hom', 'args': {'quantale': 'L2', 'u': 1,
                                              'v': 0, 'expect': 2}}]}))
        report = call_action('instance_file_check', upload=upload)
        assert_equal(report['checks'][0]['witnesses'], [
            {'law': 'expect', 'witness': {'expected': 2, 'found': 1}}])


class TestReflectCommaObject(unittest.TestCase):

    def test_reflect_against_a_target(self):
        report = call_action('comma_object_reflect', path=get_acceptance(),
                             comma='collapse', target='id_chain')
        assert_equal(report['status'], 'pass')
        assert_equal(report['checks'][0]['result'],
                     {'size': 2, 'e': [0, 0, 1, 1], 'm': [0, 1]})

    def test_reflect_against_the_reflection(self):
        report = call_action('comma_object_reflect', path=get_acceptance(),
                             comma='collapse')
        assert_equal([c['status'] for c in report['checks']], ['pass', 'pass'])

    def test_unknown_comma_object(self):
        assert_raises(NotFound, call_action, 'comma_object_reflect',
                      path=get_acceptance(), comma='nothing')


class TestFindSplitPair(unittest.TestCase):

    def test_identity_pair(self):
        report = call_action('split_pair_find', f=[0, 1], g=[0, 1],
                             target_size=2)
        assert_equal(report['status'], 'pass')
        assert_equal(report['checks'][0]['result'], {'witness': {
            'z': 2, 'h': [0, 1], 'k': [0, 1], 's': [0, 1]}})

    def test_no_split_structure(self):
        report = call_action('split_pair_find', f=[0, 1], g=[1, 0],
                             target_size=2)
        assert_equal(report['status'], 'pass')
        assert_equal(report['checks'][0]['result'], {'witness': None})

    def test_value_outside_target(self):
        assert_raises(ValidationError, call_action, 'split_pair_find',
                      f=[0, 2], g=[0, 1], target_size=2)

    def test_missing_target_size(self):
        assert_raises(ValidationError, call_action, 'split_pair_find',
                      f=[0, 1], g=[0, 1])


class TestZariskiClose(unittest.TestCase):

    def test_closed_point(self):
        report = call_action('zariski_closure_show', path=get_acceptance(),
                             affine_set='sierpinski', subset=[0])
        assert_equal(report['checks'][0]['result'], [0])
        assert_true(report['status'] == 'pass')

    def test_subset_outside_carrier(self):
        with assert_raises(ValidationError) as cm:
            call_action('zariski_closure_show', path=get_acceptance(),
                        affine_set='sierpinski', subset=[5])
        assert_in('subset', cm.exception.error_dict)

    def test_unknown_affine_set(self):
        assert_raises(NotFound, call_action, 'zariski_closure_show',
                      path=get_acceptance(), affine_set='nothing', subset=[])


class TestGetAction(unittest.TestCase):

    def test_unknown_action(self):
        assert_raises(NotFound, get_action, 'package_create')
