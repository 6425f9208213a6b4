import argparse
import json
import logging
import sys

from affinecheck import config
from affinecheck.lib.errors import AffineCheckException
from affinecheck.logic import NotFound, ValidationError, get_action

log = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2


class AffinecheckCommand(object):
    """
    affinecheck finite-model verification commands

    Usage::
        affinecheck check FILE [--jobs N]
        affinecheck enumerate [SUITE ...]
        affinecheck reflect FILE COMMA [--target COMMA]
        affinecheck split-pair --f 0,1,1 --g 1,0,1 --target-size 2
        affinecheck zariski FILE AFFINE --subset 0,2

    Common options: --config INI, --max-size N, --seed N
    """
    summary = __doc__.strip().split('\n')[0]
    usage = __doc__

    def __init__(self, stdout=None):
        self.stdout = stdout or sys.stdout
        self.parser = self._build_parser()

    def _build_parser(self):
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument('-c', '--config', dest='config', default=None,
                            help='Config file to use.')
        common.add_argument('--max-size', dest='max_size', type=int,
                            help='Largest carrier for enumeration suites.')
        common.add_argument('--seed', dest='seed', type=int,
                            help='Seed for the sampled suites.')
        common.add_argument('--jobs', dest='jobs', type=int,
                            help='Worker threads for running checks.')

        parser = argparse.ArgumentParser(
            prog='affinecheck', description=self.summary,
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog=self.usage)
        commands = parser.add_subparsers(dest='cmd', metavar='COMMAND')
        commands.required = True

        check = commands.add_parser('check', parents=[common],
                                    help='Run the checks listed in a file.')
        check.add_argument('path', metavar='FILE')

        enumerate_ = commands.add_parser(
            'enumerate', parents=[common], help='Run built-in suites.')
        enumerate_.add_argument('suites', metavar='SUITE', nargs='*')

        reflect = commands.add_parser(
            'reflect', parents=[common],
            help='Epireflect a comma object and check the reflection.')
        reflect.add_argument('path', metavar='FILE')
        reflect.add_argument('comma', metavar='COMMA')
        reflect.add_argument('--target', dest='target', default=None)

        split = commands.add_parser(
            'split-pair', parents=[common],
            help='Search a split structure for a parallel pair of maps.')
        split.add_argument('--f', dest='f', type=int_list, required=True)
        split.add_argument('--g', dest='g', type=int_list, required=True)
        split.add_argument('--target-size', dest='target_size', type=int,
                           required=True)

        zariski = commands.add_parser(
            'zariski', parents=[common],
            help='Zariski closure of a subset of an affine set.')
        zariski.add_argument('path', metavar='FILE')
        zariski.add_argument('affine_set', metavar='AFFINE')
        zariski.add_argument('--subset', dest='subset', type=int_list,
                             required=True)
        return parser

    def run(self, argv=None):
        options = self.parser.parse_args(argv)
        config.configure_logging(options.config)
        try:
            settings = config.load_settings(options.config, overrides={
                'max_size': options.max_size,
                'seed': options.seed,
                'jobs': options.jobs,
            })
        except AffineCheckException as e:
            log.error(e.args[0])
            return EXIT_INVALID

        action, data_dict = self._action(options)
        try:
            report = get_action(action)({'settings': settings}, data_dict)
        except ValidationError as e:
            for field, summary in e.error_summary.items():
                log.error('%s: %s', field, summary)
            return EXIT_INVALID
        except NotFound as e:
            log.error(e.args[0])
            return EXIT_INVALID

        self.stdout.write(json.dumps(report, sort_keys=True, indent=2))
        self.stdout.write('\n')
        failed = [c['label'] for c in report['checks'] if c['status'] == 'fail']
        log.info('%d checks, %d failed', len(report['checks']), len(failed))
        return EXIT_FAIL if failed else EXIT_PASS

    def _action(self, options):
        if options.cmd == 'check':
            return 'instance_file_check', {'path': options.path,
                                           'jobs': options.jobs}
        if options.cmd == 'enumerate':
            return 'suite_run', {'suites': options.suites}
        if options.cmd == 'reflect':
            return 'comma_object_reflect', {'path': options.path,
                                            'comma': options.comma,
                                            'target': options.target}
        if options.cmd == 'split-pair':
            return 'split_pair_find', {'f': options.f, 'g': options.g,
                                       'target_size': options.target_size}
        return 'zariski_closure_show', {'path': options.path,
                                        'affine_set': options.affine_set,
                                        'subset': options.subset}


def int_list(text):
    try:
        return [int(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "'{0}' is not a comma separated list of integers".format(text))


def main(argv=None):
    return AffinecheckCommand().run(argv)


if __name__ == '__main__':
    sys.exit(main())
