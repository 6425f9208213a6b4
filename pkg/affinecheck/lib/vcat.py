"""
Finite V-categories over a finite quantale V.

A V-category is a carrier {0..size-1} with a structure matrix ``a`` of
element ranks; a V-functor into (V, hom) is a value row ``psi`` with
a(x, y) <= hom(psi(x), psi(y)). The two functors of the isomorphism
between V-categories and affine sets over V are ``vcat_to_affine`` (all
V-functors into V) and ``affine_to_vcat`` (the initial structure).
"""
import itertools
import logging

import numpy as np

from affinecheck.lib.affine import AffineSet, generate_vccd_closure
from affinecheck.lib.algebra import vccd_algebra
from affinecheck.lib.errors import IncompatibleStructures, MalformedInput
from affinecheck.lib.report import LawReport

log = logging.getLogger(__name__)


class VCategory(object):

    def __init__(self, quantale, matrix):
        try:
            a = np.array(matrix, dtype=int)
        except ValueError:
            raise MalformedInput("Structure matrix is ragged")
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise MalformedInput(
                "Structure matrix must be square, got shape {0}".format(
                    a.shape))
        if ((a < 0) | (a >= quantale.size)).any():
            raise MalformedInput(
                "Structure matrix has entries outside the quantale carrier")
        a.flags.writeable = False
        self.quantale = quantale
        self.size = a.shape[0]
        self.a = a

    def __repr__(self):
        return 'VCategory({0!r}, {1})'.format(self.quantale, self.a.tolist())

    def __eq__(self, other):
        return (isinstance(other, VCategory)
                and self.quantale == other.quantale
                and np.array_equal(self.a, other.a))

    def __hash__(self):
        return hash((self.quantale, self.a.tobytes()))

    def row(self, x):
        """ a(x, -) """
        return tuple(int(v) for v in self.a[x, :])

    def column(self, x):
        """ a(-, x) """
        return tuple(int(v) for v in self.a[:, x])


def hom_category(Q):
    """ (V, hom): V itself with its internal hom as structure. """
    return VCategory(Q, Q.residual)


def discrete(Q, n):
    return VCategory(Q, [[Q.unit if x == y else Q.bottom for y in range(n)]
                         for x in range(n)])


def indiscrete(Q, n):
    return VCategory(Q, [[Q.top] * n for _ in range(n)])


def check_vcategory(X):
    report = LawReport()
    Q, a = X.quantale, X.a
    leq, t, k = Q.leq, Q.tensor, Q.unit
    for x in range(X.size):
        if not leq[k, a[x, x]]:
            report.add('reflexivity', x=x)
    for x, y, z in itertools.product(range(X.size), repeat=3):
        if not leq[t[a[y, z], a[x, y]], a[x, z]]:
            report.add('transitivity', x=x, y=y, z=z)
    return report


def check_vfunctor(f, X, Y):
    if X.quantale != Y.quantale:
        raise IncompatibleStructures("V-categories over different quantales")
    if f.source != X.size or f.target != Y.size:
        raise MalformedInput(
            "Map of shape {0}->{1} does not fit carriers {2}, {3}".format(
                f.source, f.target, X.size, Y.size))
    report = LawReport()
    leq = X.quantale.leq
    for x, y in itertools.product(range(X.size), repeat=2):
        if not leq[X.a[x, y], Y.a[f(x), f(y)]]:
            report.add('vfunctor', x=x, y=y)
    return report


def is_vfunctor_to_V(X, psi):
    Q = X.quantale
    return all(Q.leq[X.a[x, y], Q.residual[psi[x], psi[y]]]
               for x, y in itertools.product(range(X.size), repeat=2))


def initial_structure(Q, n, maps):
    """ a(x, y) = meet over phi in S of hom(phi(x), phi(y)). """
    maps = [tuple(phi) for phi in maps]
    for phi in maps:
        if len(phi) != n or any(not 0 <= v < Q.size for v in phi):
            raise MalformedInput(
                "Map {0} is not a total map into V on {1} points".format(
                    list(phi), n))
    matrix = [[Q.meet(Q.residual[phi[x], phi[y]] for phi in maps)
               for y in range(n)] for x in range(n)]
    return VCategory(Q, matrix)


def enumerate_vfunctors_to_V(X):
    """ Every V-functor X -> (V, hom), by exhaustive search. """
    Q = X.quantale
    found = set()
    for psi in itertools.product(range(Q.size), repeat=X.size):
        if is_vfunctor_to_V(X, psi):
            found.add(psi)
    return found


def expansion_identity_check(X, psi):
    """ psi(x) = join over y of psi(y) (x) a(y, x), at every x. """
    report = LawReport()
    psi = tuple(psi)
    if not is_vfunctor_to_V(X, psi):
        report.add('precondition', reason='not a V-functor', psi=psi)
        return report
    Q = X.quantale
    for x in range(X.size):
        expanded = Q.join(Q.tensor[psi[y], X.a[y, x]] for y in range(X.size))
        if expanded != psi[x]:
            report.add('expansion', x=x, expected=psi[x], found=expanded)
    return report


def is_separated(X):
    """ (True, None) or (False, (x, y)) for isomorphic distinct points. """
    Q = X.quantale
    k = Q.unit
    for x, y in itertools.combinations(range(X.size), 2):
        if Q.leq[k, X.a[x, y]] and Q.leq[k, X.a[y, x]]:
            return False, (x, y)
    return True, None


def representable_pair(X, x0):
    return X.row(x0), X.column(x0)


def check_adjoint_pair(X, phi, psi):
    """ phi is the covariant leg, psi the contravariant one. """
    Q, a = X.quantale, X.a
    leq, t, k = Q.leq, Q.tensor, Q.unit
    points = range(X.size)
    report = LawReport()
    for x, y in itertools.product(points, repeat=2):
        if not leq[t[a[x, y], phi[x]], phi[y]]:
            report.add('covariant', x=x, y=y)
        if not leq[t[psi[y], a[x, y]], psi[x]]:
            report.add('contravariant', x=x, y=y)
        if not leq[t[psi[x], phi[y]], a[x, y]]:
            report.add('counit', x=x, y=y)
    if not leq[k, Q.join(t[phi[x], psi[x]] for x in points)]:
        report.add('unit')
    return report


def _covariant_modules(X):
    Q, a = X.quantale, X.a
    return [phi for phi in itertools.product(range(Q.size), repeat=X.size)
            if all(Q.leq[Q.tensor[a[x, y], phi[x]], phi[y]]
                   for x, y in itertools.product(range(X.size), repeat=2))]


def _contravariant_modules(X):
    Q, a = X.quantale, X.a
    return [psi for psi in itertools.product(range(Q.size), repeat=X.size)
            if all(Q.leq[Q.tensor[psi[y], a[x, y]], psi[x]]
                   for x, y in itertools.product(range(X.size), repeat=2))]


def adjoint_pairs(X):
    """ Every pair (phi, psi) of modules satisfying unit and counit. """
    pairs = []
    contravariant = _contravariant_modules(X)
    for phi in _covariant_modules(X):
        for psi in contravariant:
            if check_adjoint_pair(X, phi, psi).ok:
                pairs.append((phi, psi))
    return pairs


def is_cauchy_complete(X):
    """ (complete, non_representable_pairs) """
    representable = {representable_pair(X, x0) for x0 in range(X.size)}
    pairs = adjoint_pairs(X)
    missing = [pair for pair in pairs if pair not in representable]
    log.debug('%d adjoint pairs, %d not representable', len(pairs),
              len(missing))
    return not missing, missing


def vcat_to_affine(X):
    """ X |-> (X, V-Cat(X, V)) over the V-ccd algebra of V. """
    return AffineSet(vccd_algebra(X.quantale), X.size,
                     enumerate_vfunctors_to_V(X))


def affine_to_vcat(XS):
    """ (X, S) |-> X with the initial structure with respect to S. """
    if XS.ambient.quantale is None:
        raise IncompatibleStructures(
            "Affine set is not over the algebra of a quantale")
    return initial_structure(XS.ambient.quantale, XS.size, XS.maps)


def roundtrip_iso_check(Q, obj):
    report = LawReport()
    if isinstance(obj, VCategory):
        if obj.quantale != Q:
            raise IncompatibleStructures("V-category is over another quantale")
        functors = enumerate_vfunctors_to_V(obj)
        report.count('functors', len(functors))
        back = initial_structure(Q, obj.size, functors)
        for x, y in zip(*np.nonzero(back.a != obj.a)):
            report.add('GF', x=int(x), y=int(y), expected=int(obj.a[x, y]),
                       found=int(back.a[x, y]))
        return report

    if not isinstance(obj, AffineSet):
        raise MalformedInput(
            "Round trip needs a V-category or an affine set, got {0!r}".format(
                obj))
    if obj.ambient.quantale != Q:
        raise IncompatibleStructures("Affine set is not over this quantale")
    S = set(obj.maps)
    if generate_vccd_closure(Q, obj.size, S).maps != frozenset(S):
        report.add('precondition', reason='S is not closed under the V-ccd operations')
        return report
    back = enumerate_vfunctors_to_V(initial_structure(Q, obj.size, S))
    report.count('maps', len(S))
    for phi in sorted(S - back):
        report.add('FG.missing', map=phi)
    for phi in sorted(back - S):
        report.add('FG.extra', map=phi)
    return report


def compose_matrices(Q, a, b):
    """ (b . a)(x, z) = join over y of b(y, z) (x) a(x, y). """
    n = len(a)
    return [[Q.join(Q.tensor[b[y][z], a[x][y]] for y in range(n))
             for z in range(n)] for x in range(n)]


def closure_of(Q, matrix):
    """ The least V-category structure above ``matrix``. """
    n = len(matrix)
    current = [[int(Q.lub[matrix[x][y], Q.unit]) if x == y else int(matrix[x][y])
                for y in range(n)] for x in range(n)]
    while True:
        composed = compose_matrices(Q, current, current)
        grown = [[int(Q.lub[current[x][y], composed[x][y]]) for y in range(n)]
                 for x in range(n)]
        if grown == current:
            return VCategory(Q, current)
        current = grown


def enumerate_vcategories(Q, n):
    """ Every valid structure on n points (|V|^(n*n) candidates). """
    found = []
    for entries in itertools.product(range(Q.size), repeat=n * n):
        X = VCategory(Q, np.array(entries, dtype=int).reshape(n, n))
        if check_vcategory(X).ok:
            found.append(X)
    return found


def sample_vcategories(Q, n, count, rng):
    """ ``count`` valid structures, closures of uniformly drawn matrices. """
    return [closure_of(Q, [[rng.randrange(Q.size) for _ in range(n)]
                           for _ in range(n)])
            for _ in range(count)]
