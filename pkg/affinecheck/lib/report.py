from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass(frozen=True)
class Violation:
    law: str
    witness: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self):
        return {'law': self.law, 'witness': plain(self.witness)}


class LawReport(object):
    """ Violated laws with witnesses; empty when every law holds. """

    def __init__(self, violations=None):
        self.violations = list(violations or [])
        self.counters = {}

    def add(self, law, **witness):
        self.violations.append(Violation(law, witness))

    def extend(self, other, prefix=None):
        for v in other.violations:
            law = '{0}.{1}'.format(prefix, v.law) if prefix else v.law
            self.violations.append(Violation(law, v.witness))
        for name, value in other.counters.items():
            self.count(name, value)
        return self

    def count(self, name, amount=1):
        self.counters[name] = self.counters.get(name, 0) + amount

    @property
    def ok(self):
        return not self.violations

    def laws(self):
        return sorted({v.law for v in self.violations})

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def __repr__(self):
        return 'LawReport({0!r})'.format(self.violations)

    def as_dict(self):
        return {
            'violations': [v.as_dict() for v in self.violations],
            'counters': dict(sorted(self.counters.items())),
        }


def plain(value):
    """ Convert witnesses to JSON-ready values (numpy ints, tuples, sets). """
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in sorted(value.items())}
    if isinstance(value, (frozenset, set)):
        return sorted(plain(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if hasattr(value, 'tolist'):
        return value.tolist()
    return value
