import configparser
import os
import unittest

from affinecheck import config
from affinecheck.lib.errors import InvalidParameter
from affinecheck.tests.helpers import (
    assert_equal,
    assert_raises,
    get_test_path,
)


class TestLoadSettings(unittest.TestCase):

    def test_defaults(self):
        assert_equal(config.load_settings(), config.DEFAULTS)

    def test_config_file(self):
        settings = config.load_settings(get_test_path('small.ini'))
        assert_equal(settings['max_size'], 2)
        assert_equal(settings['samples'], 7)
        assert_equal(settings['jobs'], config.DEFAULTS['jobs'])

    def test_unknown_settings_are_ignored(self):
        with self.assertLogs('affinecheck.config', level='WARNING') as logs:
            settings = config.load_settings(get_test_path('small.ini'))
        assert_equal(sorted(settings), sorted(config.DEFAULTS))
        assert_equal(len(logs.output), 1)

    def test_overrides(self):
        settings = config.load_settings(
            get_test_path('small.ini'), overrides={'seed': 3, 'jobs': None})
        assert_equal(settings['seed'], 3)
        assert_equal(settings['jobs'], 1)

    def test_not_an_integer(self):
        with assert_raises(InvalidParameter) as cm:
            config.load_settings(get_test_path('bad_value.ini'))
        assert_equal(str(cm.exception),
                     "Setting 'affinecheck.samples' must be an integer, got 'many'")

    def test_out_of_range(self):
        assert_raises(InvalidParameter, config.load_settings,
                      overrides={'max_size': 0})
        assert_equal(config.load_settings(overrides={'seed': 0})['seed'], 0)

    def test_missing_file(self):
        assert_raises(InvalidParameter, config.load_settings,
                      '/no/such/config.ini')


class TestLoggingConfig(unittest.TestCase):

    def console_args(self, path):
        parser = configparser.ConfigParser(interpolation=None)
        assert_equal(parser.read(path), [path])
        return parser.get('handler_console', 'args')

    def test_packaged_config_logs_to_stderr(self):
        assert_equal(self.console_args(config.DEFAULT_CONFIG), '(sys.stderr,)')

    def test_test_run_config_logs_to_stderr(self):
        # the suite run in bin/run-tests.sh sends the report to stdout
        path = os.path.join(os.path.dirname(__file__), '..', '..', 'test.ini')
        assert_equal(self.console_args(path), '(sys.stderr,)')
