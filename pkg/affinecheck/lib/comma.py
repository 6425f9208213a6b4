"""
Comma categories A|I over a functor oracle I: B -> A.

An oracle supplies what the constructions need from a concrete pair of
categories: I on objects and morphisms, morphisms in both categories by
enumeration, products and image factorizations in A and, when it has
them, the left adjoint J with its unit and coproducts in B. Morphisms
of B are FiniteMaps in whatever direction the oracle documents.
"""
import abc
import itertools
import logging

from dataclasses import dataclass

import networkx as nx

from affinecheck.lib.algebra import (
    PowerAlgebra,
    ProductAlgebra,
    check_homomorphism,
    finite_set,
    image_factorization,
    is_homomorphism,
    iter_homomorphisms,
    pointed_set,
)
from affinecheck.lib.errors import (
    IncompatibleStructures,
    MalformedInput,
    PreconditionViolation,
    UnsupportedInstance,
)
from affinecheck.lib.finmap import FiniteMap, iter_maps, iter_surjections
from affinecheck.lib.report import LawReport

log = logging.getLogger(__name__)

LATTICE_SIGNATURE = (('bottom', 0), ('join', 2), ('meet', 2), ('top', 0))


@dataclass(frozen=True)
class CommaObject:
    a: object
    b: object
    g: FiniteMap


@dataclass(frozen=True)
class CommaMorphism:
    f: FiniteMap
    h: FiniteMap


@dataclass(frozen=True)
class SplitStructure:
    z: int
    h: FiniteMap
    k: FiniteMap
    s: FiniteMap

    def as_dict(self):
        return {'z': self.z, 'h': list(self.h.table),
                'k': list(self.k.table), 's': list(self.s.table)}


@dataclass(frozen=True)
class LeftAdjoint:
    obj: CommaObject
    rho: CommaMorphism
    report: LawReport


class FunctorOracle(abc.ABC):

    name = None

    def __init__(self, limit=None):
        self.limit = limit

    def validate_a_object(self, A):
        pass

    def validate_b_object(self, B):
        pass

    @abc.abstractmethod
    def apply_object(self, B):
        pass

    @abc.abstractmethod
    def apply_morphism(self, h, B, B2):
        """ I(h): I(B) -> I(B2) """

    @abc.abstractmethod
    def b_identity(self, B):
        pass

    @abc.abstractmethod
    def b_compose(self, h2, h1):
        """ h2 . h1 in B """

    @abc.abstractmethod
    def b_morphisms(self, B, B2):
        pass

    @abc.abstractmethod
    def is_b_morphism(self, h, B, B2):
        pass

    def a_morphisms(self, A, A2):
        return iter_homomorphisms(A, A2, limit=self.limit)

    def is_a_morphism(self, f, A, A2):
        return (f.source == A.size and f.target == A2.size
                and is_homomorphism(f, A, A2))

    def product(self, A, C):
        return ProductAlgebra(A, C)

    def image(self, g, A, C):
        return image_factorization(g, A, C)

    def left_adjoint(self, A):
        """ (JA, eta_A: A -> I(JA)) """
        raise UnsupportedInstance(
            "Oracle '{0}' has no left adjoint".format(self.name))

    def j_morphism(self, f, A, A2):
        raise UnsupportedInstance(
            "Oracle '{0}' has no left adjoint".format(self.name))

    def transpose(self, g, A, B):
        """ g#: JA -> B for g: A -> I(B) """
        raise UnsupportedInstance(
            "Oracle '{0}' has no left adjoint".format(self.name))

    def coproduct(self, B1, B2):
        """ (B1 + B2, iota_1, iota_2) """
        raise UnsupportedInstance(
            "Oracle '{0}' has no coproducts".format(self.name))

    def copair(self, p, q, B1, B2, T):
        """ [p, q]: B1 + B2 -> T """
        raise UnsupportedInstance(
            "Oracle '{0}' has no coproducts".format(self.name))


class IdentityOracle(FunctorOracle):
    """ A = B, I = J = identity, eta = 1. """

    signature = None

    def validate_a_object(self, A):
        if self.signature is not None and A.signature != self.signature:
            raise MalformedInput(
                "Object {0!r} is not in the category of oracle '{1}'".format(
                    A, self.name))

    validate_b_object = validate_a_object

    def apply_object(self, B):
        return B

    def apply_morphism(self, h, B, B2):
        return h

    def b_identity(self, B):
        return FiniteMap.identity(B.size)

    def b_compose(self, h2, h1):
        return h2.compose(h1)

    def b_morphisms(self, B, B2):
        return self.a_morphisms(B, B2)

    def is_b_morphism(self, h, B, B2):
        return self.is_a_morphism(h, B, B2)

    def left_adjoint(self, A):
        return A, FiniteMap.identity(A.size)

    def j_morphism(self, f, A, A2):
        return f

    def transpose(self, g, A, B):
        return g


class PointedSetOracle(IdentityOracle):
    """ Finite pointed sets; coproducts are wedge sums. """

    name = 'pointed_sets'
    signature = (('base', 0),)

    def coproduct(self, B1, B2):
        # B1 first, then the non-base points of B2; the two bases are glued.
        wedge = pointed_set(B1.size + B2.size - 1)
        iota1 = FiniteMap(B1.size, wedge.size, tuple(range(B1.size)))
        iota2 = FiniteMap(B2.size, wedge.size, tuple(
            0 if y == 0 else B1.size + y - 1 for y in range(B2.size)))
        return wedge, iota1, iota2

    def copair(self, p, q, B1, B2, T):
        table = [p(c) for c in range(B1.size)]
        table.extend(q(y) for y in range(1, B2.size))
        return FiniteMap(B1.size + B2.size - 1, T.size, tuple(table))


class DistributiveLatticeOracle(IdentityOracle):
    """ Finite bounded distributive lattices with I = identity. """

    name = 'distributive_lattices'
    signature = LATTICE_SIGNATURE

    def validate_a_object(self, A):
        super(DistributiveLatticeOracle, self).validate_a_object(A)
        for x, y, z in itertools.product(range(A.size), repeat=3):
            lhs = A.apply('meet', x, A.apply('join', y, z))
            rhs = A.apply('join', A.apply('meet', x, y), A.apply('meet', x, z))
            if lhs != rhs:
                raise MalformedInput(
                    "Lattice {0!r} is not distributive at {1}".format(
                        A, (x, y, z)))

    validate_b_object = validate_a_object


class AffineOracle(FunctorOracle):
    """ I(X) = A^X from the dual of finite sets, with J = hom(-, A).

    B-objects are finite sets. A B-morphism X -> Y is stored as the
    function Y -> X it is dual to, so I(h) is precomposition with it.
    """

    name = 'affine'

    def __init__(self, ambient, limit=None, max_carrier=None):
        super(AffineOracle, self).__init__(limit)
        self.ambient = ambient
        self.max_carrier = max_carrier
        self._homs = {}

    def validate_a_object(self, A):
        if A.signature != self.ambient.signature:
            raise MalformedInput(
                "Object {0!r} does not have the signature of {1}".format(
                    A, self.ambient.name))

    def validate_b_object(self, B):
        if B.signature:
            raise MalformedInput(
                "Object {0!r} of the dual-set sort must be a bare set".format(B))

    def apply_object(self, B):
        return PowerAlgebra(self.ambient, B.size, max_carrier=self.max_carrier)

    def apply_morphism(self, h, B, B2):
        self.apply_object(B)
        self.apply_object(B2)
        return h.contravariant_power(self.ambient.size)

    def b_identity(self, B):
        return FiniteMap.identity(B.size)

    def b_compose(self, h2, h1):
        return h1.compose(h2)

    def b_morphisms(self, B, B2):
        return iter_maps(B2.size, B.size)

    def is_b_morphism(self, h, B, B2):
        return h.source == B2.size and h.target == B.size

    def homs(self, A):
        if A not in self._homs:
            self._homs[A] = list(iter_homomorphisms(A, self.ambient,
                                                    limit=self.limit))
        return self._homs[A]

    def left_adjoint(self, A):
        homs = self.homs(A)
        JA = finite_set(len(homs))
        power = self.apply_object(JA)
        eta = FiniteMap(A.size, power.size, tuple(
            power.encode([chi(a) for chi in homs]) for a in range(A.size)))
        return JA, eta

    def j_morphism(self, f, A, A2):
        index = {chi: i for i, chi in enumerate(self.homs(A))}
        homs2 = self.homs(A2)
        return FiniteMap(len(homs2), len(index), tuple(
            index[chi.compose(f)] for chi in homs2))

    def transpose(self, g, A, B):
        homs = self.homs(A)
        index = {chi.table: i for i, chi in enumerate(homs)}
        power = self.apply_object(B)
        rows = [power.decode(g(a)) for a in range(A.size)]
        table = []
        for b in range(B.size):
            column = tuple(row[b] for row in rows)
            if column not in index:
                raise PreconditionViolation(
                    "Structure map evaluated at {0} is not a homomorphism".format(b))
            table.append(index[column])
        return FiniteMap(B.size, len(homs), tuple(table))

    def coproduct(self, B1, B2):
        # dual of the cartesian product; (b1, b2) is coded b1 * |B2| + b2
        C = finite_set(B1.size * B2.size)
        iota1 = FiniteMap(C.size, B1.size, tuple(
            c // B2.size for c in range(C.size)))
        iota2 = FiniteMap(C.size, B2.size, tuple(
            c % B2.size for c in range(C.size)))
        return C, iota1, iota2

    def copair(self, p, q, B1, B2, T):
        return FiniteMap(T.size, B1.size * B2.size, tuple(
            p(t) * B2.size + q(t) for t in range(T.size)))


BUILTIN_ORACLES = {
    'pointed_sets': PointedSetOracle,
    'distributive_lattices': DistributiveLatticeOracle,
    'affine': AffineOracle,
}


def make_oracle(name, ambient=None, limit=None, max_carrier=None):
    if name not in BUILTIN_ORACLES:
        raise UnsupportedInstance(
            "Unknown oracle '{0}', expected one of {1}".format(
                name, ', '.join(sorted(BUILTIN_ORACLES))))
    if name == 'affine':
        if ambient is None:
            raise MalformedInput("The affine oracle needs an ambient algebra")
        return AffineOracle(ambient, limit=limit, max_carrier=max_carrier)
    return BUILTIN_ORACLES[name](limit=limit)


def comma_object(oracle, A, B, g):
    """ Validated (A, B, g: A -> I(B)). """
    oracle.validate_a_object(A)
    oracle.validate_b_object(B)
    IB = oracle.apply_object(B)
    if g.source != A.size or g.target != IB.size:
        raise MalformedInput(
            "Structure map of shape {0}->{1} does not fit {2} -> I(B) of size {3}".format(
                g.source, g.target, A.size, IB.size))
    report = check_homomorphism(g, A, IB)
    if not report.ok:
        raise MalformedInput(
            "Structure map is not a homomorphism: {0}".format(
                ', '.join(report.laws())))
    return CommaObject(A, B, g)


def check_comma_morphism(oracle, m, source, target):
    report = LawReport()
    if not oracle.is_a_morphism(m.f, source.a, target.a):
        report.add('a_morphism', f=m.f.table)
    if not oracle.is_b_morphism(m.h, source.b, target.b):
        report.add('b_morphism', h=m.h.table)
    if not report.ok:
        return report
    Ih = oracle.apply_morphism(m.h, source.b, target.b)
    lhs = Ih.compose(source.g)
    rhs = target.g.compose(m.f)
    for a in range(source.a.size):
        if lhs(a) != rhs(a):
            report.add('square', a=a, via_h=lhs(a), via_f=rhs(a))
            break
    return report


def check_functor_oracle(oracle, b_objects, a_objects=()):
    """ I preserves identities and composites; eta natural where J exists. """
    report = LawReport()
    for B in b_objects:
        IB = oracle.apply_object(B)
        if oracle.apply_morphism(oracle.b_identity(B), B, B) != \
                FiniteMap.identity(IB.size):
            report.add('identity', object=repr(B))
    for B1, B2, B3 in itertools.product(b_objects, repeat=3):
        for h1 in oracle.b_morphisms(B1, B2):
            I1 = oracle.apply_morphism(h1, B1, B2)
            for h2 in oracle.b_morphisms(B2, B3):
                report.count('pairs')
                composite = oracle.apply_morphism(
                    oracle.b_compose(h2, h1), B1, B3)
                if composite != oracle.apply_morphism(h2, B2, B3).compose(I1):
                    report.add('composition', h1=h1.table, h2=h2.table)

    for A1, A2 in itertools.product(a_objects, repeat=2):
        try:
            JA1, eta1 = oracle.left_adjoint(A1)
            JA2, eta2 = oracle.left_adjoint(A2)
        except UnsupportedInstance:
            break
        for f in oracle.a_morphisms(A1, A2):
            report.count('naturality')
            Jf = oracle.j_morphism(f, A1, A2)
            lhs = oracle.apply_morphism(Jf, JA1, JA2).compose(eta1)
            if lhs != eta2.compose(f):
                report.add('eta.naturality', f=f.table)
    return report


# F -| R

def right_adjoint_R(oracle, A, B):
    """ R(A, B) = (pi_2: A x I(B) -> I(B)) """
    P = oracle.product(A, oracle.apply_object(B))
    return CommaObject(P, B, P.pi2)


def counit_R(oracle, A, B):
    """ (pi_1, 1_B): F R(A, B) -> (A, B) """
    return CommaMorphism(right_adjoint_R(oracle, A, B).a.pi1,
                         oracle.b_identity(B))


def unit_gamma_check(oracle, g, exhaustive=True):
    """ gamma_g = (<1_A, g>, 1_B) and the triangle identities of F -| R. """
    report = LawReport()
    A, B = g.a, g.b
    R = right_adjoint_R(oracle, A, B)
    P = R.a
    gamma = CommaMorphism(P.pairing(FiniteMap.identity(A.size), g.g),
                          oracle.b_identity(B))
    report.extend(check_comma_morphism(oracle, gamma, g, R), 'gamma')

    # F(eps) . gamma = 1 on the A side
    if P.pi1.compose(gamma.f) != FiniteMap.identity(A.size):
        report.add('triangle.F', side='a')

    # R(eps) . gamma_R = 1_R: (pi_1 x I(1_B)) . <1_P, pi_2> on P
    IB = oracle.apply_object(B)
    P2 = oracle.product(P, IB)
    gamma_R = P2.pairing(FiniteMap.identity(P.size), P.pi2)
    I1 = oracle.apply_morphism(oracle.b_identity(B), B, B)
    R_eps = P.pairing(P.pi1.compose(P2.pi1), I1.compose(P2.pi2))
    if R_eps.compose(gamma_R) != FiniteMap.identity(P.size):
        report.add('triangle.R')

    if not exhaustive:
        return report

    # universal property against endomorphisms of (A, B)
    candidates = list(oracle.a_morphisms(A, P))
    for f in oracle.a_morphisms(A, A):
        for h in oracle.b_morphisms(B, B):
            report.count('morphisms')
            Ih = oracle.apply_morphism(h, B, B)
            mediator = CommaMorphism(P.pairing(f, Ih.compose(g.g)), h)
            found = check_comma_morphism(oracle, mediator, g, R)
            if not found.ok:
                report.extend(found, 'mediator')
                continue
            matches = [u for u in candidates
                       if P.pi1.compose(u) == f
                       and check_comma_morphism(
                           oracle, CommaMorphism(u, h), g, R).ok]
            if len(matches) != 1:
                report.add('universal', f=f.table, h=h.table,
                           mediators=len(matches))
    return report


# L -| F

def left_adjoint_L(oracle, A, B):
    """ L(A, B) = (I(iota_JA) . eta_A: A -> I(JA + B)) with rho = (1_A, iota_B). """
    report = LawReport()
    JA, eta = oracle.left_adjoint(A)
    C, iota_JA, iota_B = oracle.coproduct(JA, B)
    L = CommaObject(A, C, oracle.apply_morphism(iota_JA, JA, C).compose(eta))
    rho = CommaMorphism(FiniteMap.identity(A.size), iota_B)
    if not oracle.is_b_morphism(iota_B, B, C):
        report.add('rho')

    # L F L(A, B): structure map into I(JA + C)
    C2, j1, j2 = oracle.coproduct(JA, C)
    LFL = CommaObject(A, C2, oracle.apply_morphism(j1, JA, C2).compose(eta))
    eps_L = counit_L(oracle, L)
    report.extend(check_comma_morphism(oracle, eps_L, LFL, L), 'counit')

    # F(eps_L) . rho_FL = 1
    if oracle.b_compose(eps_L.h, j2) != oracle.b_identity(C):
        report.add('triangle.F')

    # eps_L . L(rho) = 1_L
    J1 = oracle.j_morphism(FiniteMap.identity(A.size), A, A)
    L_rho = CommaMorphism(
        FiniteMap.identity(A.size),
        oracle.copair(oracle.b_compose(j1, J1), oracle.b_compose(j2, iota_B),
                      JA, B, C2))
    report.extend(check_comma_morphism(oracle, L_rho, L, LFL), 'L_rho')
    if oracle.b_compose(eps_L.h, L_rho.h) != oracle.b_identity(C):
        report.add('triangle.L')

    return LeftAdjoint(L, rho, report)


def rho_universal_check(oracle, A, B, targets):
    """
    Every (f, h): (A, B) -> F(g') factors through rho as F(u) . rho for
    exactly one comma morphism u: L(A, B) -> g', for each g' in targets.
    """
    left = left_adjoint_L(oracle, A, B)
    report = LawReport()
    report.extend(left.report, 'L')
    L, rho = left.obj, left.rho
    for target in targets:
        candidates = list(oracle.b_morphisms(L.b, target.b))
        for f in oracle.a_morphisms(A, target.a):
            for h in oracle.b_morphisms(B, target.b):
                report.count('factorizations')
                # the A-component of rho is 1_A, so u.f = f is forced
                matches = [u for u in candidates
                           if oracle.b_compose(u, rho.h) == h
                           and check_comma_morphism(
                               oracle, CommaMorphism(f, u), L, target).ok]
                if len(matches) != 1:
                    report.add('universal', f=f.table, h=h.table,
                               mediators=len(matches))
    return report


def counit_L(oracle, g):
    """ (1_A, [g#, 1_B]): L F g -> g """
    JA, _ = oracle.left_adjoint(g.a)
    sharp = oracle.transpose(g.g, g.a, g.b)
    return CommaMorphism(
        FiniteMap.identity(g.a.size),
        oracle.copair(sharp, oracle.b_identity(g.b), JA, g.b, g.b))


# Epireflection onto monic structure maps

def epireflect(oracle, g):
    """ (m: X -> I(B), (e, 1_B)) from g = m . e """
    IB = oracle.apply_object(g.b)
    image, e, m = oracle.image(g.g, g.a, IB)
    log.debug('Reflected %d elements onto an image of %d', g.a.size,
              image.size)
    return CommaObject(image, g.b, m), CommaMorphism(e, oracle.b_identity(g.b))


def verify_reflection_universal(oracle, g, target):
    """ Each (f, h): g -> target has exactly one d with m'd = I(h)m, de = f. """
    report = LawReport()
    if not target.g.is_injective():
        report.add('precondition', reason='target structure map is not monic')
        return report
    reflected, unit = epireflect(oracle, g)
    X, m, e = reflected.a, reflected.g, unit.f
    diagonals = list(oracle.a_morphisms(X, target.a))
    for f in oracle.a_morphisms(g.a, target.a):
        for h in oracle.b_morphisms(g.b, target.b):
            if not check_comma_morphism(
                    oracle, CommaMorphism(f, h), g, target).ok:
                continue
            report.count('morphisms')
            Ihm = oracle.apply_morphism(h, g.b, target.b).compose(m)
            found = [d for d in diagonals
                     if target.g.compose(d) == Ihm and d.compose(e) == f]
            if len(found) != 1:
                report.add('diagonal', f=f.table, h=h.table,
                           diagonals=len(found))
    return report


# Split pairs in finite sets

def _parallel(f, g):
    if f.source != g.source or f.target != g.target:
        raise IncompatibleStructures(
            "Maps {0}->{1} and {2}->{3} are not parallel".format(
                f.source, f.target, g.source, g.target))
    return f.source, f.target


def _sections(g, X, Y):
    fibres = [[x for x in range(X) if g(x) == y] for y in range(Y)]
    return itertools.product(*fibres)


def find_split_structure(f, g):
    """ A split structure (Z, h, k, s), searching surjective h only.

    If (Z, h, k, s) is one, so is (h(Y), h, k restricted, s), so Z can
    be taken as a canonical quotient of Y.
    """
    X, Y = _parallel(f, g)
    for z in range(0 if Y == 0 else 1, Y + 1):
        for h in iter_surjections(Y, z):
            if any(h(f(x)) != h(g(x)) for x in range(X)):
                continue
            for s in _sections(g, X, Y):
                k = {}
                for y in range(Y):
                    if k.setdefault(h(y), f(s[y])) != f(s[y]):
                        break
                else:
                    return SplitStructure(
                        z, h, FiniteMap(z, Y, tuple(k[c] for c in range(z))),
                        FiniteMap(Y, X, s))
    return None


def brute_force_split_structure(f, g):
    """ Unrestricted search over every Z with |Z| <= |Y| and all h, k, s. """
    X, Y = _parallel(f, g)
    sections = [s for s in itertools.product(range(X), repeat=Y)
                if all(g(s[y]) == y for y in range(Y))]
    if not sections:
        return None
    for z in range(Y + 1):
        for h in itertools.product(range(z), repeat=Y):
            if any(h[f(x)] != h[g(x)] for x in range(X)):
                continue
            for s in sections:
                for k in itertools.product(range(Y), repeat=z):
                    if all(f(s[y]) == k[h[y]] for y in range(Y)):
                        return SplitStructure(z, FiniteMap(Y, z, h),
                                              FiniteMap(z, Y, k),
                                              FiniteMap(Y, X, s))
    return None


def coequalizer_partition(f, g):
    """ Y modulo the equivalence generated by f(x) ~ g(x). """
    _parallel(f, g)
    graph = nx.Graph()
    graph.add_nodes_from(range(f.target))
    graph.add_edges_from((f(x), g(x)) for x in range(f.source))
    return frozenset(frozenset(c) for c in nx.connected_components(graph))


def _split_equations(report, prefix, hf, hg, gs, identity, fs, kh):
    if hf != hg:
        report.add(prefix + 'coequalizes')
    if gs != identity:
        report.add(prefix + 'section')
    if fs != kh:
        report.add(prefix + 'contraction')


def split_coequalizer_check(witness, f, g, v=2):
    """ Equations, the coequalizer comparison, and the image under v^(-). """
    _parallel(f, g)
    h, k, s = witness.h, witness.k, witness.s
    report = LawReport()
    _split_equations(report, '', h.compose(f), h.compose(g), g.compose(s),
                     FiniteMap.identity(f.target), f.compose(s), k.compose(h))
    if h.kernel() != coequalizer_partition(f, g):
        report.add('coequalizer', kernel=h.kernel(),
                   quotient=coequalizer_partition(f, g))

    # v^(-) reverses arrows: f*h* = g*h*, s*g* = 1, h*k* = s*f*
    F, G, H, K, S = (m.contravariant_power(v) for m in (f, g, h, k, s))
    _split_equations(report, 'absolute.', F.compose(H), G.compose(H),
                     S.compose(G), FiniteMap.identity(v ** f.target),
                     H.compose(K), S.compose(F))
    return report
