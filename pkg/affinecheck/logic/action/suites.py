"""
Built-in exhaustive suites.

Each suite is a function of the settings returning one LawReport;
violations are prefixed with the instance they were found on. Sampled
structures are drawn from a generator seeded by the configured seed and
the quantale, so every suite sees the same samples.
"""
import collections
import functools
import itertools
import logging
import random
import time

from affinecheck.lib import affine, comma, instances, quantale, vcat
from affinecheck.lib.algebra import (
    boolean_algebra,
    chain_lattice,
    finite_set,
    iter_homomorphisms,
    pointed_set,
    two_element_frame,
)
from affinecheck.lib.errors import AffineCheckException
from affinecheck.lib.finmap import iter_maps
from affinecheck.lib.report import LawReport
from affinecheck.logic import ValidationError, check_entry, summarize

log = logging.getLogger(__name__)

SUITES = collections.OrderedDict()

LAW_SUITE_QUANTALES = (
    [('boolean', 1)]
    + [('lukasiewicz', n) for n in range(1, 6)]
    + [('truncated_addition', n) for n in range(3, 6)]
)

# (topologies, T0 topologies) on n labeled points
TOPOLOGY_COUNTS = {1: (1, 1), 2: (4, 3), 3: (29, 19), 4: (355, 219)}

PREORDERS_ON_TWO_POINTS = 4


def suite(name):
    def register(func):
        SUITES[name] = func
        return func
    return register


def run_suites(context, data_dict):
    settings = context['settings']
    names = data_dict.get('suites') or list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValidationError({'suites': [
            "Unknown suite '{0}', expected one of {1}".format(
                name, ', '.join(SUITES)) for name in unknown]})

    entries = []
    try:
        for index, name in enumerate(names):
            start = time.perf_counter()
            report = SUITES[name](settings)
            entry = check_entry(index, 'suite', name, report,
                                time.perf_counter() - start)
            log.info('%s %s (%d violations)', entry['status'].upper(), name,
                     len(report))
            entries.append(entry)
    except AffineCheckException as e:
        raise ValidationError({'suites': [e.args[0]]})
    return summarize(entries)


def quantale_label(Q):
    return Q.kind if Q.kind == 'boolean' else '{0}{1}'.format(Q.kind, Q.n)


def iso_quantales():
    return [quantale.make_quantale('boolean'),
            quantale.make_quantale('lukasiewicz', 2)]


@functools.lru_cache(maxsize=None)
def structures(Q, n):
    return tuple(vcat.enumerate_vcategories(Q, n))


def samples(Q, settings, n=3):
    rng = random.Random('{0}:{1}:{2}'.format(
        settings['seed'], quantale_label(Q), n))
    return vcat.sample_vcategories(Q, n, settings['samples'], rng)


def tested_structures(Q, settings):
    """ Exhaustive on up to two points, sampled on three. """
    found = []
    for n in range(1, min(2, settings['max_size']) + 1):
        found.extend(structures(Q, n))
    if settings['max_size'] >= 3:
        found.extend(samples(Q, settings))
    return found


@suite('quantale-laws')
def quantale_laws(settings):
    report = LawReport()
    for kind, n in LAW_SUITE_QUANTALES:
        Q = quantale.make_quantale(kind, n)
        report.count('quantales')
        report.extend(quantale.check_quantale_laws(
            Q, settings['distributivity_subsets_max']), quantale_label(Q))
    return report


@suite('roundtrip-iso')
def roundtrip_iso(settings):
    report = LawReport()
    for Q in iso_quantales():
        label = quantale_label(Q)
        if Q.kind == 'boolean' and settings['max_size'] >= 2:
            found = len(structures(Q, 2))
            if found != PREORDERS_ON_TWO_POINTS:
                report.add('preorder_count', expected=PREORDERS_ON_TWO_POINTS,
                           found=found)
        for X in tested_structures(Q, settings):
            report.count('structures')
            report.extend(vcat.check_vcategory(X), label + '.structure')
            report.extend(vcat.roundtrip_iso_check(Q, X), label)
    return report


@suite('fg-closure')
def fg_closure(settings):
    report = LawReport()
    max_members = settings['max_carrier']
    for Q in iso_quantales():
        label = quantale_label(Q)
        generator_sets = []
        for n in range(1, min(2, settings['max_size']) + 1):
            maps = list(itertools.product(range(Q.size), repeat=n))
            for r in range(len(maps) + 1):
                generator_sets.extend(
                    (n, gens) for gens in itertools.combinations(maps, r))
        if settings['max_size'] >= 3:
            rng = random.Random('{0}:fg:{1}'.format(settings['seed'], label))
            maps = list(itertools.product(range(Q.size), repeat=3))
            for _ in range(settings['samples']):
                generator_sets.append((3, tuple(
                    rng.sample(maps, rng.randint(0, 3)))))

        for n, gens in generator_sets:
            report.count('generator_sets')
            XS = affine.generate_vccd_closure(Q, n, gens, max_members=max_members)
            if not set(gens) <= XS.maps:
                report.add(label + '.generators', generators=gens)
            if affine.closure_failure(XS.ambient, n, XS.maps) is not None:
                report.add(label + '.closed', generators=gens)
            report.extend(vcat.roundtrip_iso_check(Q, XS), label)
    return report


@suite('proof-identities')
def proof_identities(settings):
    report = LawReport()
    for Q in iso_quantales():
        label = quantale_label(Q)
        for X in tested_structures(Q, settings):
            functors = vcat.enumerate_vfunctors_to_V(X)
            report.count('functors', len(functors))
            for x in range(X.size):
                if X.row(x) not in functors:
                    report.add(label + '.row', matrix=X.a, x=x)
            for psi in sorted(functors):
                report.extend(vcat.expansion_identity_check(X, psi), label)
    return report


def _census_affine_sets(settings):
    top = min(3, settings['max_size'])
    for n in range(1, top + 1):
        for T in instances.enumerate_topologies(n):
            yield instances.space_to_affine(T)
        for C in instances.enumerate_closure_systems(n):
            yield instances.closure_system_to_affine(C)


@suite('zariski-laws')
def zariski_laws(settings):
    report = LawReport()
    for XS in _census_affine_sets(settings):
        report.count('affine_sets')
        points = range(XS.size)
        subsets = [frozenset(c) for r in range(XS.size + 1)
                   for c in itertools.combinations(points, r)]
        equalizers = [affine.equalizer(phi, psi) for phi, psi in
                      itertools.combinations(sorted(XS.maps), 2)]
        closure = {M: affine.zariski_closure(XS, M) for M in subsets}
        for M in subsets:
            report.count('subsets')
            cl = closure[M]
            if not M <= cl:
                report.add('extensive', maps=XS.rows(), subset=M)
            if closure[cl] != cl:
                report.add('idempotent', maps=XS.rows(), subset=M)
            if any(M <= eq and not cl <= eq for eq in equalizers):
                report.add('equalizers', maps=XS.rows(), subset=M)
        for M, N in itertools.product(subsets, repeat=2):
            if M <= N and not closure[M] <= closure[N]:
                report.add('monotone', maps=XS.rows(), subset=M, superset=N)
    return report


@suite('topology-census')
def topology_census(settings):
    report = LawReport()
    census = {}
    for n in range(1, min(4, settings['max_size']) + 1):
        spaces = instances.enumerate_topologies(n)
        census[n] = spaces
        t0 = 0
        for T in spaces:
            is_t0 = instances.is_t0(T)[0]
            if is_t0 != instances.generic_point_check(T)[0]:
                report.add('sober.agreement', opens=T.opens)
            t0 += is_t0
            XS = instances.space_to_affine(T)
            if instances.affine_to_space(XS) != T:
                report.add('transcription', opens=T.opens)
        report.count('topologies', len(spaces))
        if (len(spaces), t0) != TOPOLOGY_COUNTS[n]:
            report.add('count', n=n, expected=TOPOLOGY_COUNTS[n],
                       found=(len(spaces), t0))

    spaces = [T for n in sorted(census) if n <= 3 for T in census[n]]
    transcribed = {T: instances.space_to_affine(T) for T in spaces}
    continuous_maps = {}
    for T, U in itertools.product(spaces, repeat=2):
        for f in iter_maps(T.size, U.size):
            report.count('maps')
            continuous = instances.continuous(f, T, U)
            if continuous and T.size <= 2 and U.size <= 2:
                continuous_maps.setdefault((T, U), []).append(f)
            morphism = affine.check_affine_morphism(
                f, transcribed[T], transcribed[U]).ok
            if continuous != morphism:
                report.add('continuity', source=T.opens, target=U.opens,
                           map=f.table)

    small = [T for T in spaces if T.size <= 2]
    for T, U, W in itertools.product(small, repeat=3):
        for f in continuous_maps.get((T, U), []):
            for g in continuous_maps.get((U, W), []):
                report.count('compositions')
                composite, found = affine.compose_affine_morphisms(
                    f, g, transcribed[T], transcribed[U], transcribed[W])
                report.extend(found, 'composition')
                if not instances.continuous(composite, T, W):
                    report.add('composition.continuity', first=f.table,
                               second=g.table)
    return report


def pointed_corpus():
    for a, b in itertools.product((1, 2, 3), (1, 2)):
        A, B = pointed_set(a), pointed_set(b)
        for g in iter_homomorphisms(A, B):
            yield comma.CommaObject(A, B, g)


def lattice_corpus():
    lattices = [chain_lattice(2), chain_lattice(3), boolean_algebra(2),
                boolean_algebra(3)]
    for A, B in itertools.product(lattices, (chain_lattice(2), chain_lattice(3))):
        for g in iter_homomorphisms(A, B):
            yield comma.CommaObject(A, B, g)


def affine_corpus(oracle):
    for n in (1, 2):
        for T in instances.enumerate_topologies(n):
            yield affine.affine_to_comma(instances.space_to_affine(T))
    A, B = boolean_algebra(2), finite_set(1)
    for g in iter_homomorphisms(A, oracle.apply_object(B)):
        yield comma.CommaObject(A, B, g)


def oracle_corpora(settings):
    limit = settings['max_morphisms']
    affine_oracle = comma.AffineOracle(two_element_frame(), limit=limit,
                                       max_carrier=settings['max_carrier'])
    return [
        (comma.PointedSetOracle(limit=limit), list(pointed_corpus())),
        (comma.DistributiveLatticeOracle(limit=limit), list(lattice_corpus())),
        (affine_oracle, list(affine_corpus(affine_oracle))),
    ]


@suite('epireflection')
def epireflection(settings):
    report = LawReport()
    for oracle, corpus in oracle_corpora(settings):
        monic = [g for g in corpus if g.g.is_injective()]
        for g in corpus:
            report.count('objects')
            reflected, unit = comma.epireflect(oracle, g)
            if not unit.f.is_surjective():
                report.add(oracle.name + '.unit', object=repr(g))
            if not reflected.g.is_injective():
                report.add(oracle.name + '.monic', object=repr(g))
            if comma.epireflect(oracle, reflected)[0] != reflected:
                report.add(oracle.name + '.idempotent', object=repr(g))
            for target in [reflected] + monic:
                report.extend(comma.verify_reflection_universal(
                    oracle, g, target), oracle.name)
    return report


@suite('adjoints')
def adjoints(settings):
    report = LawReport()
    limit = settings['max_morphisms']
    pointed = comma.PointedSetOracle(limit=limit)
    objects = [pointed_set(n) for n in (1, 2, 3)]
    report.extend(comma.check_functor_oracle(pointed, objects, objects),
                  pointed.name)
    for g in pointed_corpus():
        report.count('objects')
        report.extend(comma.unit_gamma_check(pointed, g), pointed.name)
        L = comma.left_adjoint_L(pointed, g.a, g.b)
        report.extend(L.report, pointed.name)
        report.extend(comma.check_comma_morphism(
            pointed, comma.counit_L(pointed, g), L.obj, g),
            pointed.name + '.counit')
    corpus = list(pointed_corpus())
    for a, b in itertools.product((1, 2, 3), (1, 2)):
        report.extend(comma.rho_universal_check(
            pointed, pointed_set(a), pointed_set(b), corpus),
            pointed.name + '.rho')

    oracle = comma.AffineOracle(two_element_frame(), limit=limit,
                                max_carrier=settings['max_carrier'])
    report.extend(comma.check_functor_oracle(
        oracle, [finite_set(n) for n in (0, 1, 2)],
        [two_element_frame(), chain_lattice(3), boolean_algebra(2)]),
        oracle.name)
    for g in affine_corpus(oracle):
        report.count('objects')
        report.extend(comma.unit_gamma_check(oracle, g), oracle.name)
        report.extend(comma.left_adjoint_L(oracle, g.a, g.b).report,
                      oracle.name)
    return report


@suite('split-pairs')
def split_pairs(settings):
    report = LawReport()
    sizes = range(1, min(3, settings['max_size']) + 1)
    for x, y in itertools.product(sizes, repeat=2):
        for f, g in itertools.product(list(iter_maps(x, y)), repeat=2):
            report.count('pairs')
            found = comma.find_split_structure(f, g)
            unrestricted = comma.brute_force_split_structure(f, g)
            if (found is None) != (unrestricted is None):
                report.add('completeness', f=f.table, g=g.table)
            if found is not None:
                report.count('split')
                report.extend(comma.split_coequalizer_check(found, f, g),
                              'restricted')
            if unrestricted is not None:
                report.extend(comma.split_coequalizer_check(unrestricted, f, g),
                              'unrestricted')
    return report


@suite('cauchy')
def cauchy(settings):
    report = LawReport()
    boolean = quantale.make_quantale('boolean')
    for n in range(1, min(3, settings['max_size']) + 1):
        for X in structures(boolean, n):
            report.count('structures')
            complete, missing = vcat.is_cauchy_complete(X)
            if not complete:
                report.add('boolean.complete', matrix=X.a, missing=missing)

    lukasiewicz = quantale.make_quantale('lukasiewicz', 2)
    for n in range(1, min(2, settings['max_size']) + 1):
        for X in structures(lukasiewicz, n):
            for x0 in range(X.size):
                report.count('representable')
                report.extend(vcat.check_adjoint_pair(
                    X, *vcat.representable_pair(X, x0)), 'lukasiewicz2')
    return report
