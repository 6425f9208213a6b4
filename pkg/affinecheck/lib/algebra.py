"""
Finite algebras: a carrier {0..size-1} with named operations.

Small algebras keep every operation as a read-only numpy table, indexed
by argument ranks (arity 0 tables are scalars and are the constants).
Powers A^X and products are derived algebras: they evaluate operations
componentwise on encoded elements and only build a table when one is
explicitly asked for, so I(X) = A^X can be used as a codomain without
materialising |A|^|X| sized tables.
"""
import itertools
import logging

import numpy as np

from affinecheck.lib.errors import (
    IncompatibleStructures,
    MalformedInput,
    PreconditionViolation,
    ResourceLimit,
)
from affinecheck.lib.finmap import FiniteMap, decode, encode
from affinecheck.lib.report import LawReport

log = logging.getLogger(__name__)

MAX_TABLE_ENTRIES = 1 << 20


class FinAlgebra(object):

    def __init__(self, size, operations, name=None, quantale=None):
        self.size = int(size)
        self.name = name
        self.quantale = quantale
        self.arities = {}
        self._tables = {}
        for op_name, table in sorted(operations.items()):
            try:
                array = np.array(table, dtype=int)
            except ValueError:
                raise MalformedInput(
                    "Operation '{0}' has a ragged table".format(op_name))
            arity = array.ndim
            if array.shape != (self.size,) * arity:
                raise MalformedInput(
                    "Operation '{0}' table is not total on {1} elements".format(
                        op_name, self.size))
            if ((array < 0) | (array >= self.size)).any():
                raise MalformedInput(
                    "Operation '{0}' has values outside the carrier".format(
                        op_name))
            array.flags.writeable = False
            self.arities[op_name] = arity
            self._tables[op_name] = array

    def __repr__(self):
        return '{0}({1}, size={2})'.format(
            self.__class__.__name__, self.name or '', self.size)

    def _key(self):
        return ('tables', self.size, tuple(
            (op, self.arities[op], self._tables[op].tobytes())
            for op in sorted(self.arities)))

    def __eq__(self, other):
        return isinstance(other, FinAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def signature(self):
        return tuple(sorted(self.arities.items()))

    def table(self, op):
        return self._tables[op]

    def apply(self, op, *args):
        return int(self._tables[op][tuple(args)])

    def constants(self):
        return {op: self.apply(op) for op, arity in self.arities.items()
                if arity == 0}

    def apply_pointwise(self, op, *rows, length=None):
        """ Apply ``op`` to maps X -> A given as value rows. """
        if self.arities[op] == 0:
            return (self.apply(op),) * length
        table = self.table(op)
        return tuple(int(v) for v in table[tuple(np.asarray(r, dtype=int) for r in rows)])


class DerivedAlgebra(FinAlgebra):
    """ An algebra whose operations are evaluated rather than tabulated. """

    def __init__(self, size, arities, name=None, quantale=None):
        self.size = int(size)
        self.name = name
        self.quantale = quantale
        self.arities = dict(arities)
        self._tables = {}

    def evaluate(self, op, args):
        raise NotImplementedError

    def apply(self, op, *args):
        return self.evaluate(op, args)

    def table(self, op):
        if op not in self._tables:
            arity = self.arities[op]
            if self.size ** arity > MAX_TABLE_ENTRIES:
                raise ResourceLimit(
                    "Table for '{0}' on {1} elements is too large".format(
                        op, self.size))
            array = np.zeros((self.size,) * arity, dtype=int)
            for args in itertools.product(range(self.size), repeat=arity):
                array[args] = self.evaluate(op, args)
            array.flags.writeable = False
            self._tables[op] = array
        return self._tables[op]


class PowerAlgebra(DerivedAlgebra):
    """ A^X with elements encoded as mixed-radix codes of value rows. """

    def __init__(self, base, exponent, max_carrier=None):
        size = base.size ** exponent
        if max_carrier is not None and size > max_carrier:
            raise ResourceLimit(
                "Power algebra has {0} elements, above the cap of {1}".format(
                    size, max_carrier))
        super(PowerAlgebra, self).__init__(
            size, base.arities, name='{0}^{1}'.format(base.name, exponent),
            quantale=base.quantale)
        self.base = base
        self.exponent = exponent

    def _key(self):
        return ('power', self.base._key(), self.exponent)

    def encode(self, row):
        return encode(row, self.base.size)

    def decode(self, code):
        return decode(code, self.base.size, self.exponent)

    def evaluate(self, op, args):
        rows = [self.decode(a) for a in args]
        if not rows:
            return self.encode((self.base.apply(op),) * self.exponent)
        return self.encode(self.base.apply(op, *column)
                           for column in zip(*rows))


class ProductAlgebra(DerivedAlgebra):
    """ A x C with (a, c) encoded as a * |C| + c. """

    def __init__(self, left, right):
        if left.signature != right.signature:
            raise IncompatibleStructures(
                "Product factors have different signatures")
        super(ProductAlgebra, self).__init__(
            left.size * right.size, left.arities,
            name='{0}x{1}'.format(left.name, right.name))
        self.left = left
        self.right = right

    def _key(self):
        return ('product', self.left._key(), self.right._key())

    def pair(self, a, c):
        return a * self.right.size + c

    def split(self, code):
        return divmod(code, self.right.size)

    def evaluate(self, op, args):
        parts = [self.split(a) for a in args]
        return self.pair(self.left.apply(op, *(p[0] for p in parts)),
                         self.right.apply(op, *(p[1] for p in parts)))

    @property
    def pi1(self):
        return FiniteMap(self.size, self.left.size,
                         tuple(self.split(c)[0] for c in range(self.size)))

    @property
    def pi2(self):
        return FiniteMap(self.size, self.right.size,
                         tuple(self.split(c)[1] for c in range(self.size)))

    def pairing(self, f, g):
        """ <f, g> into this product, for f: D -> left and g: D -> right. """
        if f.source != g.source:
            raise IncompatibleStructures("Pairing needs maps with one source")
        return FiniteMap(f.source, self.size,
                         tuple(self.pair(f(x), g(x)) for x in range(f.source)))


class Subalgebra(FinAlgebra):
    """ The subalgebra of ``parent`` on a sorted list of member ranks. """

    def __init__(self, parent, members, name=None):
        members = sorted(set(int(m) for m in members))
        index = {m: i for i, m in enumerate(members)}
        tables = {}
        for op, arity in parent.arities.items():
            table = np.zeros((len(members),) * arity, dtype=int)
            for args in itertools.product(range(len(members)), repeat=arity):
                value = parent.apply(op, *(members[a] for a in args))
                if value not in index:
                    raise PreconditionViolation(
                        "Members are not closed under '{0}'".format(op))
                table[args] = index[value]
            tables[op] = table
        super(Subalgebra, self).__init__(
            len(members), tables, name=name or parent.name,
            quantale=parent.quantale)
        self.parent = parent
        self.members = tuple(members)

    @property
    def inclusion(self):
        return FiniteMap(self.size, self.parent.size, self.members)


def check_homomorphism(f, source, target):
    report = LawReport()
    if source.signature != target.signature:
        raise IncompatibleStructures(
            "Algebras have different signatures: {0} and {1}".format(
                source.signature, target.signature))
    if f.source != source.size or f.target != target.size:
        raise IncompatibleStructures(
            "Map of shape {0}->{1} does not fit algebras of sizes {2}, {3}".format(
                f.source, f.target, source.size, target.size))
    for op, arity in sorted(source.arities.items()):
        for args in itertools.product(range(source.size), repeat=arity):
            lhs = f(source.apply(op, *args))
            rhs = target.apply(op, *(f(a) for a in args))
            if lhs != rhs:
                report.add('homomorphism.' + op, args=args)
    return report


def is_homomorphism(f, source, target):
    return check_homomorphism(f, source, target).ok


def iter_homomorphisms(source, target, limit=None):
    """ All homomorphisms source -> target, by backtracking.

    A constraint f(op(args)) = op(f(args)) is tested as soon as the
    largest element it mentions has been assigned.
    """
    if source.signature != target.signature:
        raise IncompatibleStructures("Algebras have different signatures")
    n = source.size
    constraints = [[] for _ in range(n)]
    for op, arity in source.arities.items():
        for args in itertools.product(range(n), repeat=arity):
            value = source.apply(op, *args)
            last = max(args + (value,))
            constraints[last].append((op, args, value))

    table = [None] * n
    explored = [0]

    def consistent(i):
        for op, args, value in constraints[i]:
            if table[value] != target.apply(op, *(table[a] for a in args)):
                return False
        return True

    def backtrack(i):
        if i == n:
            yield FiniteMap(n, target.size, tuple(table))
            return
        for v in range(target.size):
            explored[0] += 1
            if limit is not None and explored[0] > limit:
                raise ResourceLimit(
                    "Homomorphism search exceeded {0} steps".format(limit))
            table[i] = v
            if consistent(i):
                yield from backtrack(i + 1)
        table[i] = None

    yield from backtrack(0)


def image_factorization(g, source, target):
    """ g = m . e with e surjective onto the image X and m the inclusion. """
    image = Subalgebra(target, g.image())
    index = {m: i for i, m in enumerate(image.members)}
    e = FiniteMap(g.source, image.size, tuple(index[v] for v in g.table))
    return image, e, image.inclusion


# Built-in algebras

def finite_set(n):
    if n < 0:
        raise MalformedInput("A set cannot have {0} elements".format(n))
    return FinAlgebra(n, {}, name='set{0}'.format(n))


def pointed_set(n):
    """ {0..n-1} with basepoint 0. """
    if n < 1:
        raise MalformedInput("A pointed set needs at least its basepoint")
    return FinAlgebra(n, {'base': 0}, name='pointed{0}'.format(n))


def chain_lattice(n):
    """ The bounded (distributive) lattice 0 < 1 < ... < n-1. """
    if n < 1:
        raise MalformedInput(
            "A chain needs at least one element, got {0}".format(n))
    return _bounded_lattice(
        n, lambda i, j: i <= j, name='chain{0}'.format(n))


def boolean_algebra(atoms):
    """ Subsets of ``atoms`` points as bitmasks, as a bounded lattice. """
    if atoms < 0:
        raise MalformedInput(
            "A Boolean algebra cannot have {0} atoms".format(atoms))
    n = 1 << atoms
    return _bounded_lattice(
        n, lambda i, j: i & j == i, name='boolean{0}'.format(atoms))


def _bounded_lattice(n, leq, name):
    rel = np.array([[leq(i, j) for j in range(n)] for i in range(n)],
                   dtype=bool)

    def bound(r):
        by_set = {tuple(r[i, :]): i for i in range(n)}
        return [[by_set[tuple(r[i, :] & r[j, :])] for j in range(n)]
                for i in range(n)]

    bottom = next(i for i in range(n) if rel[i, :].all())
    top = next(i for i in range(n) if rel[:, i].all())
    return FinAlgebra(n, {
        'meet': bound(rel.T),
        'join': bound(rel),
        'bottom': bottom,
        'top': top,
    }, name=name)


def two_element_frame():
    """ 2 with finite meets and (finite rendering of arbitrary) joins. """
    algebra = chain_lattice(2)
    algebra.name = 'frame2'
    return algebra


def two_element_inf_lattice():
    """ 2 as a complete lattice with infima: binary meet and top. """
    return FinAlgebra(2, {
        'meet': [[0, 0], [0, 1]],
        'top': 1,
    }, name='inf2')


def vccd_algebra(Q):
    """ The quantale V as an algebra for the finite V-ccd operations.

    Joins and meets (binary plus empty), tensors u (x) - and cotensors
    hom(u, -) for every u.
    """
    operations = {
        'join': Q.lub,
        'meet': Q.glb,
        'bottom': Q.bottom,
        'top': Q.top,
    }
    for u in Q.elements:
        operations['tensor_{0}'.format(u)] = Q.tensor[u, :]
        operations['hom_{0}'.format(u)] = Q.residual[u, :]
    return FinAlgebra(Q.size, operations, name='vccd', quantale=Q)


BUILTIN_ALGEBRAS = {
    'frame2': lambda **kw: two_element_frame(),
    'inf2': lambda **kw: two_element_inf_lattice(),
    'set': lambda size, **kw: finite_set(size),
    'pointed_set': lambda size, **kw: pointed_set(size),
    'chain': lambda size, **kw: chain_lattice(size),
    'boolean_algebra': lambda atoms, **kw: boolean_algebra(atoms),
}
