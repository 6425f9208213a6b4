"""
Affine sets: a finite set X with a subalgebra S of the power algebra A^X.

Maps X -> A are value rows (tuples indexed by point). S is kept as a
frozenset of rows, so equality of affine structures ignores order and
duplicates.
"""
import itertools
import logging

from affinecheck.lib.algebra import PowerAlgebra, Subalgebra, finite_set, vccd_algebra
from affinecheck.lib.errors import (
    IncompatibleStructures,
    MalformedInput,
    PreconditionViolation,
    ResourceLimit,
    UnsupportedInstance,
)
from affinecheck.lib.report import LawReport

log = logging.getLogger(__name__)

MAX_MEMBERS = 4096


class AffineSet(object):

    def __init__(self, ambient, size, maps, validate=True):
        self.ambient = ambient
        self.size = int(size)
        self.maps = frozenset(tuple(int(v) for v in phi) for phi in maps)
        for phi in self.maps:
            if len(phi) != self.size or any(
                    not 0 <= v < ambient.size for v in phi):
                raise MalformedInput(
                    "Map {0} is not a total map from {1} points into {2}".format(
                        list(phi), self.size, ambient.name))
        if validate:
            failure = closure_failure(ambient, self.size, self.maps)
            if failure is not None:
                raise MalformedInput(
                    "S is not closed under '{0}' applied to {1}".format(
                        failure[0], [list(r) for r in failure[1]]))

    def __repr__(self):
        return 'AffineSet({0}, size={1}, maps={2})'.format(
            self.ambient.name, self.size, self.rows())

    def __eq__(self, other):
        return (isinstance(other, AffineSet)
                and self.size == other.size
                and self.ambient == other.ambient
                and self.maps == other.maps)

    def __hash__(self):
        return hash((self.size, self.maps))

    def rows(self):
        return sorted(self.maps)

    def power(self, max_carrier=None):
        return PowerAlgebra(self.ambient, self.size, max_carrier=max_carrier)

    def as_algebra(self, max_carrier=None):
        """ S as a subalgebra of A^X, its elements ordered by code. """
        power = self.power(max_carrier)
        return Subalgebra(power, [power.encode(phi) for phi in self.maps],
                          name='S')


def closure_failure(ambient, n, maps):
    """ None when ``maps`` is closed, else (operation, argument rows). """
    members = set(maps)
    for op, arity in sorted(ambient.arities.items()):
        for args in itertools.product(sorted(members), repeat=arity):
            if ambient.apply_pointwise(op, *args, length=n) not in members:
                return op, args
    return None


def generate_subalgebra(A, n, generators, max_members=MAX_MEMBERS):
    """ Least subalgebra of A^X containing ``generators`` (and the constants). """
    generators = [tuple(int(v) for v in phi) for phi in generators]
    for phi in generators:
        if len(phi) != n or any(not 0 <= v < A.size for v in phi):
            raise MalformedInput(
                "Generator {0} is not a total map from {1} points".format(
                    list(phi), n))

    members = set(generators)
    for op in A.constants():
        members.add(A.apply_pointwise(op, length=n))
    operations = [(op, arity) for op, arity in sorted(A.arities.items())
                  if arity > 0]

    frontier = set(members)
    while frontier:
        ordered = sorted(members)
        found = set()
        for op, arity in operations:
            for args in itertools.product(ordered, repeat=arity):
                if not any(a in frontier for a in args):
                    continue
                value = A.apply_pointwise(op, *args)
                if value not in members and value not in found:
                    found.add(value)
        members |= found
        if len(members) > max_members:
            raise ResourceLimit(
                "Generated subalgebra exceeds {0} members".format(max_members))
        frontier = found

    log.debug('Generated %d maps from %d generators', len(members),
              len(generators))
    return AffineSet(A, n, members, validate=False)


def generate_vccd_closure(Q, n, generators, max_members=MAX_MEMBERS):
    """ Closure under joins, meets, u (x) - and hom(u, -), pointwise. """
    return generate_subalgebra(vccd_algebra(Q), n, generators,
                               max_members=max_members)


def _compatible(source, target):
    if source.ambient != target.ambient:
        raise IncompatibleStructures(
            "Affine sets over different algebras: {0} and {1}".format(
                source.ambient.name, target.ambient.name))


def check_affine_morphism(f, source, target):
    """ Every tau in T pulls back along f into S. """
    _compatible(source, target)
    if f.source != source.size or f.target != target.size:
        raise MalformedInput(
            "Map of shape {0}->{1} does not fit {2} and {3} points".format(
                f.source, f.target, source.size, target.size))
    report = LawReport()
    for tau in sorted(target.maps):
        pulled = tuple(tau[f(x)] for x in range(source.size))
        if pulled not in source.maps:
            report.add('pullback', tau=tau, pulled=pulled)
    return report


def compose_affine_morphisms(f, g, first, second, third):
    """ (g . f, its report), after checking both factors. """
    report = LawReport()
    report.extend(check_affine_morphism(f, first, second), 'first')
    report.extend(check_affine_morphism(g, second, third), 'second')
    composite = g.compose(f)
    report.extend(check_affine_morphism(composite, first, third), 'composite')
    return composite, report


def equalizer(phi, psi):
    return frozenset(x for x, (u, v) in enumerate(zip(phi, psi)) if u == v)


def zariski_closure(XS, M):
    """ Intersection of every Eq(phi, psi), phi, psi in S, containing M. """
    M = frozenset(M)
    if not M <= frozenset(range(XS.size)):
        raise MalformedInput(
            "Subset {0} is not a subset of {1} points".format(
                sorted(M), XS.size))
    closure = frozenset(range(XS.size))
    for phi, psi in itertools.combinations(sorted(XS.maps), 2):
        eq = equalizer(phi, psi)
        if M <= eq:
            closure &= eq
    return closure


def is_separated_affine(XS):
    for x, y in itertools.combinations(range(XS.size), 2):
        if all(phi[x] == phi[y] for phi in XS.maps):
            return False, (x, y)
    return True, None


def affine_to_comma(XS, max_carrier=None):
    """ (X, S) as the monomorphism S -> A^X over the dual-set sort X. """
    S = XS.as_algebra(max_carrier)
    from affinecheck.lib.comma import CommaObject
    return CommaObject(S, finite_set(XS.size), S.inclusion)


def comma_to_affine(oracle, obj):
    """ The image of a monic structure map as an affine structure. """
    if not obj.g.is_injective():
        raise PreconditionViolation(
            "Structure map is not monic; epireflect the comma object first")
    power = oracle.apply_object(obj.b)
    return AffineSet(oracle.ambient, obj.b.size,
                     [power.decode(code) for code in obj.g.table])


def affine_comma_roundtrip(XS, oracle=None, max_carrier=None):
    """ (comma object, affine set recovered from it, report). """
    from affinecheck.lib.comma import AffineOracle
    oracle = oracle or AffineOracle(XS.ambient, max_carrier=max_carrier)
    obj = affine_to_comma(XS, max_carrier)
    back = comma_to_affine(oracle, obj)
    report = LawReport()
    for phi in sorted(XS.maps - back.maps):
        report.add('roundtrip.missing', map=phi)
    for phi in sorted(back.maps - XS.maps):
        report.add('roundtrip.extra', map=phi)
    return obj, back, report


def comma_affine_roundtrip(oracle, obj, max_carrier=None):
    """
    (reflected object, affine set, report) for a comma object over the
    affine oracle. A non-monic structure map is epireflected first; the
    affine set taken back to the comma category must give the same image.
    """
    from affinecheck.lib.comma import AffineOracle, epireflect
    if not isinstance(oracle, AffineOracle):
        raise UnsupportedInstance(
            "Oracle '{0}' does not describe affine sets".format(oracle.name))
    reflected = obj if obj.g.is_injective() else epireflect(oracle, obj)[0]
    XS = comma_to_affine(oracle, reflected)
    back = affine_to_comma(XS, max_carrier)
    report = LawReport()
    if back.a.size != reflected.a.size:
        report.add('roundtrip.size', reflected=reflected.a.size,
                   affine=back.a.size)
    if set(back.g.table) != set(reflected.g.table):
        report.add('roundtrip.image', reflected=sorted(set(reflected.g.table)),
                   affine=sorted(set(back.g.table)))
    return reflected, XS, report
