import itertools

from dataclasses import dataclass
from typing import Tuple

from affinecheck.lib.errors import MalformedInput, IncompatibleStructures


@dataclass(frozen=True)
class FiniteMap:
    """ A total function between indexed carriers {0..source-1} -> {0..target-1}. """

    source: int
    target: int
    table: Tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, 'table', table)
        if self.target < 0:
            raise MalformedInput(
                "Map target cannot have {0} elements".format(self.target))
        if len(table) != self.source:
            raise MalformedInput(
                "Map table has {0} entries but source has {1} elements".format(
                    len(table), self.source))
        for i, v in enumerate(table):
            if not 0 <= v < self.target:
                raise MalformedInput(
                    "Map sends {0} to {1}, outside target of size {2}".format(
                        i, v, self.target))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(range(n)))

    @classmethod
    def constant(cls, source, target, value):
        return cls(source, target, (value,) * source)

    def __call__(self, x):
        return self.table[x]

    def compose(self, other):
        """ self . other (apply ``other`` first). """
        if other.target != self.source:
            raise IncompatibleStructures(
                "Cannot compose: {0} elements into {1}".format(
                    other.target, self.source))
        return FiniteMap(other.source, self.target,
                         tuple(self.table[v] for v in other.table))

    def image(self):
        return sorted(set(self.table))

    def is_injective(self):
        return len(set(self.table)) == self.source

    def is_surjective(self):
        return len(set(self.table)) == self.target

    def kernel(self):
        """ Partition of the source into fibres, as a frozenset of frozensets. """
        fibres = {}
        for x, y in enumerate(self.table):
            fibres.setdefault(y, set()).add(x)
        return frozenset(frozenset(f) for f in fibres.values())

    def contravariant_power(self, v):
        """ v^f : v^target -> v^source, phi |-> phi . f, on mixed-radix codes. """
        if v < 1:
            raise MalformedInput(
                "Power base must be at least 1, got {0}".format(v))
        source = v ** self.target
        table = []
        for code in range(source):
            phi = decode(code, v, self.target)
            table.append(encode([phi[y] for y in self.table], v))
        return FiniteMap(source, v ** self.source, tuple(table))


def iter_maps(source, target):
    for table in itertools.product(range(target), repeat=source):
        yield FiniteMap(source, target, table)


def iter_surjections(source, target):
    """ Surjections onto {0..target-1} in canonical (restricted growth) form. """
    def grow(prefix, used):
        if len(prefix) == source:
            if used == target:
                yield FiniteMap(source, target, tuple(prefix))
            return
        if target - used > source - len(prefix):
            return
        for v in range(min(used + 1, target)):
            yield from grow(prefix + [v], max(used, v + 1))
    yield from grow([], 0)


def encode(values, base):
    code = 0
    for v in reversed(list(values)):
        code = code * base + int(v)
    return code


def decode(code, base, length):
    values = []
    for _ in range(length):
        code, digit = divmod(code, base)
        values.append(digit)
    return tuple(values)
