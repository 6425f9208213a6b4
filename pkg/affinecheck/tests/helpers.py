import os
import unittest

from affinecheck import config
from affinecheck.lib import comma
from affinecheck.lib.algebra import boolean_algebra, chain_lattice
from affinecheck.lib.finmap import FiniteMap

_case = unittest.TestCase()

assert_equal = _case.assertEqual
assert_false = _case.assertFalse
assert_in = _case.assertIn
assert_raises = _case.assertRaises
assert_regexp_matches = _case.assertRegex
assert_true = _case.assertTrue


def get_lukasiewicz_laws():
    return get_test_path('lukasiewicz_laws.json')


def get_broken_tensor():
    return get_test_path('broken_tensor.json')


def get_dangling_reference():
    return get_test_path('dangling_reference.json')


def get_acceptance():
    return get_test_path('acceptance.json')


def get_negative_census():
    return get_test_path('negative_census.json')


def get_empty_chain():
    return get_test_path('empty_chain.json')


def get_test_path(filename):
    return os.path.join(os.path.split(__file__)[0], 'test-data', filename)


def get_test_file(filename):
    return open(get_test_path(filename), encoding='utf-8')


def small_settings(**overrides):
    """ Default settings with a small sample count, for the suites. """
    settings = config.load_settings(overrides={'samples': 5})
    settings.update(overrides)
    return settings


def collapse_comma_object():
    """ The four element Boolean algebra onto the 2-chain by one atom. """
    oracle = comma.DistributiveLatticeOracle()
    A, B = boolean_algebra(2), chain_lattice(2)
    g = FiniteMap(A.size, B.size, (0, 0, 1, 1))
    return oracle, comma.comma_object(oracle, A, B, g)
