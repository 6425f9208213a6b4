"""
Finite commutative quantales.

A quantale is stored the way a finite poset is: a read-only boolean
``leq`` matrix, plus a read-only ``tensor`` table and the rank of the
unit ``k``. Lattice operations and the residuation ``hom`` are derived
from those tables on first use and cached.

Elements are ranks ``0..size-1``. For the built-in chains the ranks are
ascending in the lattice order, so a Lukasiewicz value ``i/n`` is the
rank ``i`` and is never a float.
"""
import itertools
import logging

from functools import cached_property, reduce

import numpy as np

from affinecheck.lib.errors import (
    InvalidElement,
    InvalidParameter,
    MalformedInput,
)
from affinecheck.lib.report import LawReport

log = logging.getLogger(__name__)

KINDS = ('boolean', 'lukasiewicz', 'truncated_addition')

# All-subsets join distributivity is only enumerated up to this size;
# beyond it binary joins plus the empty join are checked, which is
# equivalent on a finite lattice.
DISTRIBUTIVITY_SUBSETS_MAX = 6


class Quantale(object):

    def __init__(self, leq, tensor, unit, kind='explicit', n=None):
        try:
            leq = _read_only(np.array(leq, dtype=bool))
            tensor = _read_only(np.array(tensor, dtype=int))
        except ValueError:
            raise MalformedInput("Quantale tables must be square integer tables")
        size = leq.shape[0]
        if leq.shape != (size, size) or tensor.shape != (size, size):
            raise MalformedInput(
                "Quantale tables must be {0}x{0}".format(size))
        if size == 0:
            raise MalformedInput("Quantale carrier must not be empty")
        if not 0 <= unit < size:
            raise MalformedInput(
                "Unit {0} is outside the carrier of size {1}".format(unit, size))
        if ((tensor < 0) | (tensor >= size)).any():
            raise MalformedInput("Tensor table has entries outside the carrier")
        self.size = size
        self.leq = leq
        self.tensor = tensor
        self.unit = int(unit)
        self.kind = kind
        self.n = n

    @classmethod
    def from_tables(cls, leq, tensor, unit):
        """ Build from nested lists, rejecting ragged tables. """
        size = len(leq)
        for name, table in (('leq', leq), ('tensor', tensor)):
            if len(table) != size or any(len(row) != size for row in table):
                raise MalformedInput(
                    "Table '{0}' is not {1}x{1}".format(name, size))
        return cls(leq, tensor, unit)

    def __repr__(self):
        if self.kind == 'explicit':
            return 'Quantale(size={0})'.format(self.size)
        return 'Quantale({0}, n={1})'.format(self.kind, self.n)

    def __eq__(self, other):
        return (isinstance(other, Quantale)
                and self.size == other.size
                and self.unit == other.unit
                and np.array_equal(self.leq, other.leq)
                and np.array_equal(self.tensor, other.tensor))

    def __hash__(self):
        return hash((self.size, self.unit, self.tensor.tobytes()))

    @property
    def k(self):
        return self.unit

    @property
    def elements(self):
        return range(self.size)

    def le(self, u, v):
        return bool(self.leq[u, v])

    def check_element(self, u):
        if not (isinstance(u, (int, np.integer)) and 0 <= u < self.size):
            raise InvalidElement(
                "Element {0!r} is not a rank of a quantale of size {1}".format(
                    u, self.size))
        return int(u)

    # Lattice structure

    @cached_property
    def lub(self):
        return self._bound_table(self.leq, 'join')

    @cached_property
    def glb(self):
        return self._bound_table(self.leq.T, 'meet')

    def _bound_table(self, rel, name):
        n = self.size
        by_upset = {tuple(rel[i, :]): i for i in range(n)}
        table = np.zeros((n, n), dtype=int)
        for i in range(n):
            for j in range(n):
                bounds = tuple(rel[i, :] & rel[j, :])
                if bounds not in by_upset:
                    raise MalformedInput(
                        "Elements {0} and {1} have no {2}".format(i, j, name))
                table[i, j] = by_upset[bounds]
        return _read_only(table)

    @cached_property
    def bottom(self):
        below_all = [i for i in range(self.size) if self.leq[i, :].all()]
        if len(below_all) != 1:
            raise MalformedInput("Quantale order has no least element")
        return below_all[0]

    @cached_property
    def top(self):
        above_all = [i for i in range(self.size) if self.leq[:, i].all()]
        if len(above_all) != 1:
            raise MalformedInput("Quantale order has no greatest element")
        return above_all[0]

    def join(self, elements):
        return reduce(lambda u, v: int(self.lub[u, v]), elements, self.bottom)

    def meet(self, elements):
        return reduce(lambda u, v: int(self.glb[u, v]), elements, self.top)

    # Residuation

    @cached_property
    def residual(self):
        n = self.size
        table = np.zeros((n, n), dtype=int)
        for u in range(n):
            for v in range(n):
                table[u, v] = self.join(
                    w for w in range(n) if self.leq[self.tensor[u, w], v])
        return _read_only(table)

    def hom(self, u, v):
        return int(self.residual[u, v])

    def otimes(self, u, v):
        return int(self.tensor[u, v])

    def label(self, u):
        if self.kind == 'lukasiewicz':
            if u == 0:
                return '0'
            if u == self.n:
                return '1'
            return '{0}/{1}'.format(u, self.n)
        if self.kind == 'truncated_addition':
            return 'inf' if u == 0 else str(self.n + 1 - u)
        return str(u)


def make_quantale(kind, n=1):
    if kind not in KINDS:
        raise InvalidParameter(
            "Unknown quantale kind '{0}', expected one of {1}".format(
                kind, ', '.join(KINDS)))

    if kind == 'boolean':
        leq = [[i <= j for j in range(2)] for i in range(2)]
        tensor = [[min(i, j) for j in range(2)] for i in range(2)]
        return Quantale(leq, tensor, 1, kind='boolean', n=1)

    if n is None or n < 1:
        raise InvalidParameter(
            "Chain length parameter must be at least 1, got {0}".format(n))

    if kind == 'lukasiewicz':
        size = n + 1
        leq = [[i <= j for j in range(size)] for i in range(size)]
        tensor = [[max(i + j - n, 0) for j in range(size)]
                  for i in range(size)]
        return Quantale(leq, tensor, n, kind=kind, n=n)

    # truncated_addition: rank 0 is "inf", rank r >= 1 is the number n + 1 - r,
    # so the numeric 0 (the unit) is the top rank n + 1.
    size = n + 2

    def value(rank):
        return None if rank == 0 else n + 1 - rank

    def rank(number):
        return 0 if number is None or number > n else n + 1 - number

    def plus(i, j):
        a, b = value(i), value(j)
        return rank(None if a is None or b is None else a + b)

    leq = [[i <= j for j in range(size)] for i in range(size)]
    tensor = [[plus(i, j) for j in range(size)] for i in range(size)]
    return Quantale(leq, tensor, n + 1, kind=kind, n=n)


def hom(Q, u, v):
    """ The residual: the join of all w with u (x) w <= v. """
    return Q.hom(Q.check_element(u), Q.check_element(v))


def check_quantale_laws(Q, subsets_max=DISTRIBUTIVITY_SUBSETS_MAX):
    report = LawReport()
    elements = list(Q.elements)
    leq, t, k = Q.leq, Q.tensor, Q.unit

    for u in elements:
        if not leq[u, u]:
            report.add('order.reflexivity', u=u)
    for u, v in itertools.product(elements, repeat=2):
        if u != v and leq[u, v] and leq[v, u]:
            report.add('order.antisymmetry', u=u, v=v)
    for u, v, w in itertools.product(elements, repeat=3):
        if leq[u, v] and leq[v, w] and not leq[u, w]:
            report.add('order.transitivity', u=u, v=v, w=w)

    try:
        for derived in ('lub', 'glb', 'bottom', 'top'):
            getattr(Q, derived)
    except MalformedInput as e:
        report.add('lattice.completeness', reason=e.args[0])

    for u, v in itertools.product(elements, repeat=2):
        if t[u, v] != t[v, u]:
            report.add('tensor.commutativity', u=u, v=v)
    for u, v, w in itertools.product(elements, repeat=3):
        report.count('triples')
        if t[t[u, v], w] != t[u, t[v, w]]:
            report.add('tensor.associativity', u=u, v=v, w=w)
    for u in elements:
        if t[u, k] != u or t[k, u] != u:
            report.add('tensor.unit', u=u)

    if any(law.startswith(('order.', 'lattice.')) for law in report.laws()):
        log.debug('Skipping distributivity and residuation: not a lattice')
        return report

    if Q.size <= subsets_max:
        families = itertools.chain.from_iterable(
            itertools.combinations(elements, r)
            for r in range(len(elements) + 1))
    else:
        families = itertools.chain(
            [()], itertools.combinations_with_replacement(elements, 2))
    for family in families:
        top = Q.join(family)
        for u in elements:
            if t[u, top] != Q.join(t[u, w] for w in family):
                report.add('tensor.join_distributivity', u=u, family=family)
            if t[top, u] != Q.join(t[w, u] for w in family):
                report.add('tensor.join_distributivity_right', u=u,
                           family=family)

    hom_table = Q.residual
    for u, v, w in itertools.product(elements, repeat=3):
        if bool(leq[t[u, w], v]) != bool(leq[w, hom_table[u, v]]):
            report.add('residuation.adjunction', u=u, v=v, w=w)

    return report


def _read_only(array):
    array.flags.writeable = False
    return array
