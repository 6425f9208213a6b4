import configparser
import logging
import logging.config
import os

from affinecheck.lib.errors import InvalidParameter

log = logging.getLogger(__name__)

DEFAULT_CONFIG = os.path.join(os.path.dirname(__file__), 'default.ini')

SECTION = 'app:main'
PREFIX = 'affinecheck.'

DEFAULTS = {
    'max_size': 3,
    'max_carrier': 4096,
    'max_morphisms': 200000,
    'samples': 100,
    'seed': 0,
    'jobs': 1,
    'distributivity_subsets_max': 6,
}


def load_settings(path=None, overrides=None):
    """ Settings from the [app:main] section, with command-line overrides. """
    parser = configparser.ConfigParser(interpolation=None)
    path = path or DEFAULT_CONFIG
    if not parser.read(path):
        raise InvalidParameter("Unable to read config file '{0}'".format(path))

    settings = dict(DEFAULTS)
    if parser.has_section(SECTION):
        for key, value in parser.items(SECTION):
            if not key.startswith(PREFIX):
                continue
            name = key[len(PREFIX):]
            if name not in DEFAULTS:
                log.warning("Ignoring unknown setting '%s'", key)
                continue
            settings[name] = _to_int(key, value)

    for name, value in (overrides or {}).items():
        if value is not None:
            settings[name] = value

    for name, value in settings.items():
        if value < (0 if name == 'seed' else 1):
            raise InvalidParameter(
                "Setting '{0}{1}' is out of range: {2}".format(
                    PREFIX, name, value))
    return settings


def _to_int(key, value):
    try:
        return int(value)
    except ValueError:
        raise InvalidParameter(
            "Setting '{0}' must be an integer, got '{1}'".format(key, value))


def configure_logging(path=None):
    path = path or DEFAULT_CONFIG
    parser = configparser.ConfigParser(interpolation=None)
    parser.read(path)
    if not parser.has_section('loggers'):
        path = DEFAULT_CONFIG
    logging.config.fileConfig(path, disable_existing_loggers=False)
