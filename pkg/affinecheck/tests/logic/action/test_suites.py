import unittest

from affinecheck.logic import ValidationError, get_action
from affinecheck.logic.action import suites
from affinecheck.tests.helpers import (
    assert_equal,
    assert_in,
    assert_raises,
    assert_true,
    small_settings,
)


def run_suites(names, **settings):
    return get_action('suite_run')(
        {'settings': small_settings(**settings)}, {'suites': names})


def without_wall_time(report):
    return [{k: v for k, v in check.items() if k != 'wall_time'}
            for check in report['checks']]


class TestRunSuites(unittest.TestCase):

    def test_unknown_suite(self):
        with assert_raises(ValidationError) as cm:
            run_suites(['quantale-laws', 'monoid-laws'])
        assert_equal(len(cm.exception.error_dict['suites']), 1)
        assert_in('monoid-laws', cm.exception.error_dict['suites'][0])

    def test_suites_in_requested_order(self):
        report = run_suites(['split-pairs', 'cauchy'], max_size=2)
        assert_equal([c['label'] for c in report['checks']],
                     ['split-pairs', 'cauchy'])
        assert_equal([c['id'] for c in report['checks']],
                     ['000-split-pairs', '001-cauchy'])

    def test_every_suite_is_registered(self):
        assert_equal(list(suites.SUITES), [
            'quantale-laws', 'roundtrip-iso', 'fg-closure', 'proof-identities',
            'zariski-laws', 'topology-census', 'epireflection', 'adjoints',
            'split-pairs', 'cauchy'])


class TestSuites(unittest.TestCase):

    def test_quantale_laws(self):
        report = suites.quantale_laws(small_settings(
            distributivity_subsets_max=2))
        assert_true(report.ok, repr(report))
        assert_equal(report.counters['quantales'], 9)

    def test_roundtrip_iso(self):
        report = suites.roundtrip_iso(small_settings(max_size=3))
        assert_true(report.ok, repr(report))
        assert_true(report.counters['structures'] > 0)

    def test_roundtrip_iso_is_reproducible(self):
        first = run_suites(['roundtrip-iso'], max_size=3, seed=11)
        second = run_suites(['roundtrip-iso'], max_size=3, seed=11)
        assert_equal(without_wall_time(first), without_wall_time(second))

    def test_fg_closure(self):
        report = suites.fg_closure(small_settings(max_size=2))
        assert_true(report.ok, repr(report))

    def test_proof_identities(self):
        assert_true(suites.proof_identities(small_settings(max_size=2)).ok)

    def test_zariski_laws(self):
        report = suites.zariski_laws(small_settings(max_size=2))
        assert_true(report.ok, repr(report))
        # 1 + 4 topologies and 2 + 7 closure systems
        assert_equal(report.counters['affine_sets'], 14)

    def test_topology_census(self):
        report = suites.topology_census(small_settings(max_size=2))
        assert_true(report.ok, repr(report))
        assert_equal(report.counters['topologies'], 1 + 4)
        # pairs of continuous maps among the five spaces on at most two points
        assert_equal(report.counters['compositions'], 811)

    def test_split_pairs(self):
        report = suites.split_pairs(small_settings(max_size=2))
        assert_true(report.ok, repr(report))
        # maps 1->1, 1->2, 2->1 and 2->2, squared
        assert_equal(report.counters['pairs'], 1 + 4 + 1 + 16)

    def test_cauchy(self):
        assert_true(suites.cauchy(small_settings(max_size=2)).ok)

    def test_epireflection(self):
        report = suites.epireflection(small_settings())
        assert_true(report.ok, repr(report))

    def test_adjoints(self):
        report = suites.adjoints(small_settings())
        assert_true(report.ok, repr(report))
        # every (f, h) from each pointed (A, B) into each pointed comma object
        assert_equal(report.counters['factorizations'], 253)
