import logging

from slugify import slugify

from affinecheck.lib.report import plain

log = logging.getLogger(__name__)

# Reports list at most this many witnesses per check; the total is
# always in the 'violations' counter.
MAX_WITNESSES = 50


class ActionError(Exception):
    pass


class NotFound(ActionError):
    pass


class ValidationError(ActionError):

    def __init__(self, error_dict):
        super(ValidationError, self).__init__(error_dict)
        self.error_dict = error_dict

    @property
    def error_summary(self):
        return {field: '; '.join(messages)
                for field, messages in sorted(self.error_dict.items())}

    def __str__(self):
        return ', '.join('{0}: {1}'.format(field, summary)
                         for field, summary in self.error_summary.items())


def get_action(name):
    from affinecheck.plugin import get_actions
    actions = get_actions()
    if name not in actions:
        raise NotFound("Action '{0}' does not exist".format(name))
    return actions[name]


def check_status(report):
    if report.ok:
        return 'pass'
    if report.laws() == ['precondition']:
        return 'skip'
    return 'fail'


def check_entry(index, op, label, report, wall_time, result=None):
    witnesses = [v.as_dict() for v in report.violations[:MAX_WITNESSES]]
    counters = dict(report.counters)
    counters['violations'] = len(report)
    entry = {
        'id': slugify('{0:03d} {1}'.format(index, label or op)),
        'op': op,
        'label': label or op,
        'status': check_status(report),
        'witnesses': witnesses,
        'counters': counters,
        'wall_time': round(wall_time, 6),
    }
    if result is not None:
        entry['result'] = plain(result)
    return entry


def summarize(entries):
    status = 'fail' if any(e['status'] == 'fail' for e in entries) else 'pass'
    return {'checks': entries, 'status': status}
