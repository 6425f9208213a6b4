"""
Finite topological spaces and closure systems as affine sets.

Spaces are affine over the two-element frame (S = characteristic maps of
the opens), closure systems over the two-element infimum lattice
(S = characteristic maps of the closed sets).
"""
import itertools
import logging

import networkx as nx

from affinecheck.lib.affine import AffineSet
from affinecheck.lib.algebra import two_element_frame, two_element_inf_lattice
from affinecheck.lib.errors import (
    IncompatibleStructures,
    MalformedInput,
    PreconditionViolation,
    ResourceLimit,
)

log = logging.getLogger(__name__)

MAX_CENSUS_POINTS = 4


def _subsets(family, n):
    subsets = set()
    for subset in family:
        subset = frozenset(int(x) for x in subset)
        if not subset <= frozenset(range(n)):
            raise MalformedInput(
                "Subset {0} is not a subset of {1} points".format(
                    sorted(subset), n))
        subsets.add(subset)
    return frozenset(subsets)


def _sorted(family):
    return sorted(sorted(s) for s in family)


class FiniteSpace(object):

    def __init__(self, size, opens):
        self.size = int(size)
        self.opens = _subsets(opens, self.size)
        points = frozenset(range(self.size))
        if frozenset() not in self.opens or points not in self.opens:
            raise MalformedInput("Open sets must contain the empty set and X")
        for u, v in itertools.combinations(self.opens, 2):
            if u | v not in self.opens or u & v not in self.opens:
                raise MalformedInput(
                    "Open sets {0} and {1} break union or intersection".format(
                        sorted(u), sorted(v)))

    def __repr__(self):
        return 'FiniteSpace({0}, {1})'.format(self.size, _sorted(self.opens))

    def __eq__(self, other):
        return (isinstance(other, FiniteSpace) and self.size == other.size
                and self.opens == other.opens)

    def __hash__(self):
        return hash((self.size, self.opens))


class ClosureSystem(object):

    def __init__(self, size, closed):
        self.size = int(size)
        self.closed = _subsets(closed, self.size)
        if frozenset(range(self.size)) not in self.closed:
            raise MalformedInput("Closed sets must contain X")
        for c, d in itertools.combinations(self.closed, 2):
            if c & d not in self.closed:
                raise MalformedInput(
                    "Closed sets {0} and {1} meet outside the family".format(
                        sorted(c), sorted(d)))

    def __repr__(self):
        return 'ClosureSystem({0}, {1})'.format(self.size, _sorted(self.closed))

    def __eq__(self, other):
        return (isinstance(other, ClosureSystem) and self.size == other.size
                and self.closed == other.closed)

    def __hash__(self):
        return hash((self.size, self.closed))


def characteristic(subset, n):
    return tuple(1 if x in subset else 0 for x in range(n))


def space_to_affine(T):
    return AffineSet(two_element_frame(), T.size,
                     [characteristic(U, T.size) for U in T.opens])


def affine_to_space(XS):
    if XS.ambient != two_element_frame():
        raise IncompatibleStructures(
            "Affine set is over {0}, not the two-element frame".format(
                XS.ambient.name))
    return FiniteSpace(XS.size, [
        [x for x, v in enumerate(phi) if v == 1] for phi in XS.maps])


def closure_system_to_affine(C):
    return AffineSet(two_element_inf_lattice(), C.size,
                     [characteristic(c, C.size) for c in C.closed])


def affine_to_closure_system(XS):
    if XS.ambient != two_element_inf_lattice():
        raise IncompatibleStructures(
            "Affine set is over {0}, not the two-element infimum lattice".format(
                XS.ambient.name))
    return ClosureSystem(XS.size, [
        [x for x, v in enumerate(phi) if v == 1] for phi in XS.maps])


def closed_sets(T):
    points = frozenset(range(T.size))
    return frozenset(points - U for U in T.opens)


def point_closure(T, x):
    return frozenset.intersection(*(F for F in closed_sets(T) if x in F))


def specialization_preorder(T):
    """ Pairs (x, y) with x <= y, i.e. x in the closure of y. """
    return frozenset((x, y) for x, y in itertools.product(range(T.size), repeat=2)
                     if x in point_closure(T, y))


def is_t0(T):
    graph = nx.DiGraph()
    graph.add_nodes_from(range(T.size))
    graph.add_edges_from(specialization_preorder(T))
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1:
            return False, tuple(sorted(component)[:2])
    return True, None


def _irreducible(F, closed):
    if not F:
        return False
    proper = [G for G in closed if G < F]
    return not any(G | H == F for G, H in
                   itertools.combinations_with_replacement(proper, 2))


def generic_point_check(T):
    """ Every irreducible closed set has exactly one generic point. """
    closed = closed_sets(T)
    closures = [point_closure(T, x) for x in range(T.size)]
    for F in sorted(closed, key=sorted):
        if not _irreducible(F, closed):
            continue
        generic = [x for x in range(T.size) if closures[x] == F]
        if len(generic) != 1:
            return False, {'closed': sorted(F), 'generic': generic}
    return True, None


def is_sober_finite(T):
    """ (sober, witness) by the T0 test, cross-checked by generic points. """
    t0, pair = is_t0(T)
    direct, witness = generic_point_check(T)
    if t0 != direct:
        log.error('T0 test and generic point test disagree on %r', T)
        raise PreconditionViolation(
            "T0 test ({0}) and generic point test ({1}) disagree".format(
                t0, direct))
    return t0, pair


def continuous(f, T, U):
    """ Preimages of opens of U are open in T. """
    if f.source != T.size or f.target != U.size:
        raise MalformedInput(
            "Map of shape {0}->{1} does not fit {2} and {3} points".format(
                f.source, f.target, T.size, U.size))
    return all(frozenset(x for x in range(T.size) if f(x) in V) in T.opens
               for V in U.opens)


def _check_census_size(n):
    if n < 0:
        raise MalformedInput(
            "Census size must be non-negative, got {0}".format(n))
    if n > MAX_CENSUS_POINTS:
        raise ResourceLimit(
            "Census is limited to {0} points, got {1}".format(
                MAX_CENSUS_POINTS, n))


def _families(n, required):
    masks = [m for m in range(1 << n) if m not in required]
    for r in range(len(masks) + 1):
        for chosen in itertools.combinations(masks, r):
            yield set(required) | set(chosen)


def _as_sets(family, n):
    return [[x for x in range(n) if m >> x & 1] for m in sorted(family)]


def enumerate_topologies(n):
    """ Every topology on n labeled points. """
    _check_census_size(n)
    full = (1 << n) - 1
    found = []
    for family in _families(n, {0, full}):
        if all(a | b in family and a & b in family
               for a, b in itertools.combinations(family, 2)):
            found.append(FiniteSpace(n, _as_sets(family, n)))
    log.debug('%d topologies on %d points', len(found), n)
    return found


def enumerate_closure_systems(n):
    """ Every intersection-closed family containing X on n labeled points. """
    _check_census_size(n)
    full = (1 << n) - 1
    found = []
    for family in _families(n, {full}):
        if all(a & b in family for a, b in itertools.combinations(family, 2)):
            found.append(ClosureSystem(n, _as_sets(family, n)))
    log.debug('%d closure systems on %d points', len(found), n)
    return found
