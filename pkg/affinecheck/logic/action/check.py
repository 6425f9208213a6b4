import logging
import time

from concurrent.futures import ThreadPoolExecutor

from affinecheck.lib import affine, comma, instancefile, instances, quantale, vcat
from affinecheck.lib.errors import (
    AffineCheckException,
    MalformedInput,
    UnresolvedReference,
)
from affinecheck.lib.finmap import FiniteMap
from affinecheck.lib.report import LawReport, plain
from affinecheck.logic import NotFound, ValidationError, check_entry, summarize

log = logging.getLogger(__name__)

OPERATIONS = {}


def operation(name):
    def register(func):
        OPERATIONS[name] = func
        return func
    return register


def run_instance_file(context, data_dict):
    """ Load an instance file and run its checks, in file order. """
    settings = context['settings']
    instance = _load(data_dict, settings)
    checks = list(enumerate(instance.checks))

    def run(item):
        index, check = item
        return _run_check(instance, index, check)

    jobs = data_dict.get('jobs') or settings['jobs']
    try:
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as executor:
                entries = list(executor.map(run, checks))
        else:
            entries = [run(item) for item in checks]
    except UnresolvedReference as e:
        raise NotFound(e.args[0])
    except AffineCheckException as e:
        raise ValidationError({'checks': [e.args[0]]})
    return summarize(entries)


def reflect_comma_object(context, data_dict):
    """ Epireflect a comma object and verify the reflection against a target. """
    instance = _load(data_dict, context['settings'])
    args = {'comma': data_dict.get('comma'),
            'target': data_dict.get('target')}
    entries = []
    try:
        for index, (op, label) in enumerate((
                ('epireflect', 'epireflect'),
                ('verify_reflection_universal', 'universal property'))):
            entries.append(_run_check(
                instance, index, {'op': op, 'args': args, 'label': label}))
    except UnresolvedReference as e:
        raise NotFound(e.args[0])
    except AffineCheckException as e:
        raise ValidationError({'comma': [e.args[0]]})
    return summarize(entries)


def find_split_pair(context, data_dict):
    """ Split structure search for f, g: X -> Y, cross-checked by brute force. """
    try:
        f, g = (_map_from_list(data_dict.get(key), data_dict.get('target_size'),
                               key) for key in ('f', 'g'))
        start = time.perf_counter()
        report = LawReport()
        witness = comma.find_split_structure(f, g)
        unrestricted = comma.brute_force_split_structure(f, g)
        if (witness is None) != (unrestricted is None):
            report.add('completeness', restricted=witness is not None,
                       unrestricted=unrestricted is not None)
        if witness is not None:
            report.extend(comma.split_coequalizer_check(witness, f, g))
    except AffineCheckException as e:
        raise ValidationError({'split-pair': [e.args[0]]})
    result = witness.as_dict() if witness is not None else None
    return summarize([check_entry(0, 'find_split_structure', 'split pair',
                                  report, time.perf_counter() - start,
                                  {'witness': result})])


def zariski_close(context, data_dict):
    """ Zariski closure of a subset, with the closure laws at that subset. """
    instance = _load(data_dict, context['settings'])
    args = {'affine_set': data_dict.get('affine_set'),
            'subset': data_dict.get('subset')}
    try:
        entry = _run_check(instance, 0, {
            'op': 'zariski_closure', 'args': args, 'label': 'zariski closure'})
    except UnresolvedReference as e:
        raise NotFound(e.args[0])
    except AffineCheckException as e:
        raise ValidationError({'subset': [e.args[0]]})
    return summarize([entry])


def _load(data_dict, settings):
    upload = data_dict.get('upload')
    path = data_dict.get('path')
    try:
        if upload is not None:
            return instancefile.load(upload, settings)
        if path is None:
            raise ValidationError({'path': ['You must give an instance file']})
        with open(path, encoding='utf-8') as the_file:
            return instancefile.load(the_file, settings)
    except OSError as e:
        raise ValidationError({'path': [
            "Unable to read '{0}': {1}".format(path, e.strerror)]})
    except UnresolvedReference as e:
        raise NotFound(e.args[0])
    except AffineCheckException as e:
        raise ValidationError({'upload': [e.args[0]]})


def _run_check(instance, index, check):
    op = check['op']
    if op not in OPERATIONS:
        raise MalformedInput("Unknown operation '{0}' in check {1}".format(
            op, index))
    start = time.perf_counter()
    report, result = OPERATIONS[op](instance, check['args'])
    entry = check_entry(index, op, check['label'], report,
                        time.perf_counter() - start, result)
    log.info('%s %s (%d violations)', entry['status'].upper(), entry['label'],
             len(report))
    return entry


def _map_from_list(values, target, key):
    if not isinstance(values, (list, tuple)) or not isinstance(target, int):
        raise MalformedInput(
            "Map '{0}' needs a list of values and a target size".format(key))
    return FiniteMap(len(values), target, tuple(values))


# Argument helpers

def _arg(args, key):
    if key not in args:
        raise MalformedInput("Unable to find mandatory argument '{0}'".format(key))
    return args[key]


def _int(args, key):
    value = _arg(args, key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInput(
            "Argument '{0}' must be an integer, got {1!r}".format(key, value))
    return value


def _size(args, key='size'):
    value = _int(args, key)
    if value < 0:
        raise MalformedInput(
            "Argument '{0}' must be non-negative, got {1}".format(key, value))
    return value


def _expect(report, args, value, key='expect'):
    if key in args and plain(value) != args[key]:
        report.add(key, expected=args[key], found=value)
    return report


def _int_rows(value, key):
    if not isinstance(value, list) or not all(
            isinstance(r, list) and all(isinstance(v, int) for v in r)
            for r in value):
        raise MalformedInput(
            "Argument '{0}' must be a list of integer rows".format(key))
    return [tuple(r) for r in value]


def _int_row(value, key):
    if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
        raise MalformedInput(
            "Argument '{0}' must be a list of integers".format(key))
    return tuple(value)


# Quantales

@operation('check_quantale_laws')
def _check_quantale_laws(instance, args):
    Q = instance.quantale(_arg(args, 'quantale'))
    subsets_max = instance.settings.get(
        'distributivity_subsets_max', quantale.DISTRIBUTIVITY_SUBSETS_MAX)
    return quantale.check_quantale_laws(Q, subsets_max), None


@operation('hom')
def _hom(instance, args):
    Q = instance.quantale(_arg(args, 'quantale'))
    value = quantale.hom(Q, _arg(args, 'u'), _arg(args, 'v'))
    return _expect(LawReport(), args, value), value


# V-categories

@operation('check_vcategory')
def _check_vcategory(instance, args):
    return vcat.check_vcategory(
        instance.get('vcategories', _arg(args, 'vcategory'))), None


@operation('check_vfunctor')
def _check_vfunctor(instance, args):
    return vcat.check_vfunctor(
        instance.get('maps', _arg(args, 'map')),
        instance.get('vcategories', _arg(args, 'source')),
        instance.get('vcategories', _arg(args, 'target'))), None


@operation('initial_structure')
def _initial_structure(instance, args):
    X = vcat.initial_structure(
        instance.quantale(_arg(args, 'quantale')), _size(args),
        _int_rows(_arg(args, 'maps'), 'maps'))
    return _expect(LawReport(), args, X.a), X.a


@operation('enumerate_vfunctors_to_V')
def _enumerate_vfunctors(instance, args):
    functors = sorted(vcat.enumerate_vfunctors_to_V(
        instance.get('vcategories', _arg(args, 'vcategory'))))
    report = _expect(LawReport(), args, len(functors), 'expect_count')
    report.count('functors', len(functors))
    return report, functors


@operation('expansion_identity_check')
def _expansion_identity(instance, args):
    return vcat.expansion_identity_check(
        instance.get('vcategories', _arg(args, 'vcategory')),
        _int_row(_arg(args, 'psi'), 'psi')), None


@operation('is_separated')
def _is_separated(instance, args):
    separated, pair = vcat.is_separated(
        instance.get('vcategories', _arg(args, 'vcategory')))
    return (_expect(LawReport(), args, separated),
            {'separated': separated, 'witness': pair})


@operation('check_adjoint_pair')
def _check_adjoint_pair(instance, args):
    return vcat.check_adjoint_pair(
        instance.get('vcategories', _arg(args, 'vcategory')),
        _int_row(_arg(args, 'phi'), 'phi'),
        _int_row(_arg(args, 'psi'), 'psi')), None


@operation('is_cauchy_complete')
def _is_cauchy_complete(instance, args):
    complete, missing = vcat.is_cauchy_complete(
        instance.get('vcategories', _arg(args, 'vcategory')))
    return (_expect(LawReport(), args, complete),
            {'complete': complete, 'missing': missing})


@operation('roundtrip_iso_check')
def _roundtrip_iso(instance, args):
    Q = instance.quantale(_arg(args, 'quantale'))
    if 'vcategory' in args:
        obj = instance.get('vcategories', args['vcategory'])
    else:
        obj = instance.get('affine_sets', _arg(args, 'affine_set'))
    return vcat.roundtrip_iso_check(Q, obj), None


@operation('vcat_to_affine')
def _vcat_to_affine(instance, args):
    XS = vcat.vcat_to_affine(instance.get('vcategories', _arg(args, 'vcategory')))
    return _expect(LawReport(), args, XS.rows()), XS.rows()


@operation('affine_to_vcat')
def _affine_to_vcat(instance, args):
    X = vcat.affine_to_vcat(instance.get('affine_sets', _arg(args, 'affine_set')))
    return _expect(LawReport(), args, X.a), X.a


# Affine sets

@operation('generate_subalgebra')
def _generate_subalgebra(instance, args):
    XS = affine.generate_subalgebra(
        instance.algebra(_arg(args, 'algebra')), _size(args),
        _int_rows(_arg(args, 'generators'), 'generators'),
        max_members=instance.settings.get('max_carrier', affine.MAX_MEMBERS))
    return _expect(LawReport(), args, XS.rows()), XS.rows()


@operation('generate_vccd_closure')
def _generate_vccd_closure(instance, args):
    XS = affine.generate_vccd_closure(
        instance.quantale(_arg(args, 'quantale')), _size(args),
        _int_rows(_arg(args, 'generators'), 'generators'),
        max_members=instance.settings.get('max_carrier', affine.MAX_MEMBERS))
    return _expect(LawReport(), args, XS.rows()), XS.rows()


@operation('check_affine_morphism')
def _check_affine_morphism(instance, args):
    return affine.check_affine_morphism(
        instance.get('maps', _arg(args, 'map')),
        instance.get('affine_sets', _arg(args, 'source')),
        instance.get('affine_sets', _arg(args, 'target'))), None


@operation('zariski_closure')
def _zariski_closure(instance, args):
    XS = instance.get('affine_sets', _arg(args, 'affine_set'))
    M = frozenset(_int_row(_arg(args, 'subset'), 'subset'))
    closure = affine.zariski_closure(XS, M)
    report = _expect(LawReport(), args, closure)
    if not M <= closure:
        report.add('extensive', subset=M, closure=closure)
    if affine.zariski_closure(XS, closure) != closure:
        report.add('idempotent', subset=M, closure=closure)
    return report, closure


@operation('is_separated_affine')
def _is_separated_affine(instance, args):
    separated, pair = affine.is_separated_affine(
        instance.get('affine_sets', _arg(args, 'affine_set')))
    return (_expect(LawReport(), args, separated),
            {'separated': separated, 'witness': pair})


@operation('affine_comma_roundtrip')
def _affine_comma_roundtrip(instance, args):
    XS = instance.get('affine_sets', _arg(args, 'affine_set'))
    obj, back, report = affine.affine_comma_roundtrip(
        XS, max_carrier=instance.settings.get('max_carrier'))
    return report, {'carrier': obj.a.size, 'maps': back.rows()}


@operation('comma_affine_roundtrip')
def _comma_affine_roundtrip(instance, args):
    oracle, g = _comma(instance, args)
    reflected, XS, report = affine.comma_affine_roundtrip(
        oracle, g, max_carrier=instance.settings.get('max_carrier'))
    _expect(report, args, XS.rows())
    return report, {'size': reflected.a.size, 'maps': XS.rows()}


# Comma categories

def _comma(instance, args, key='comma'):
    """ (oracle, comma object); the oracle defaults to the object's own. """
    name = _arg(args, key)
    g = instance.get('comma_objects', name)
    if args.get('oracle') is not None:
        return instance.oracle(args['oracle']), g
    return instance.comma_oracles[name], g


def _names(args, key):
    names = args.get(key, [])
    if not isinstance(names, list):
        raise MalformedInput("Argument '{0}' must be a list of names".format(key))
    return names


def _objects(instance, args, key):
    return [instance.algebra(name) for name in _names(args, key)]


@operation('check_functor_oracle')
def _check_functor_oracle(instance, args):
    return comma.check_functor_oracle(
        instance.oracle(_arg(args, 'oracle')),
        _objects(instance, args, 'b_objects'),
        _objects(instance, args, 'a_objects')), None


@operation('right_adjoint_R')
def _right_adjoint_R(instance, args):
    R = comma.right_adjoint_R(
        instance.oracle(_arg(args, 'oracle')),
        instance.algebra(_arg(args, 'a')), instance.algebra(_arg(args, 'b')))
    return (_expect(LawReport(), args, R.a.size),
            {'size': R.a.size, 'structure': R.g.table})


@operation('unit_gamma_check')
def _unit_gamma_check(instance, args):
    oracle, g = _comma(instance, args)
    return comma.unit_gamma_check(oracle, g,
                                  exhaustive=args.get('exhaustive', True)), None


@operation('left_adjoint_L')
def _left_adjoint_L(instance, args):
    oracle = instance.oracle(_arg(args, 'oracle'))
    A, B = instance.algebra(_arg(args, 'a')), instance.algebra(_arg(args, 'b'))
    L = comma.left_adjoint_L(oracle, A, B)
    report = L.report
    if 'targets' in args:
        targets = [instance.get('comma_objects', name)
                   for name in _names(args, 'targets')]
        report = comma.rho_universal_check(oracle, A, B, targets)
    return report, {'size': L.obj.b.size, 'structure': L.obj.g.table,
                      'rho': L.rho.h.table}


@operation('epireflect')
def _epireflect(instance, args):
    oracle, g = _comma(instance, args)
    report = LawReport()
    reflected, unit = comma.epireflect(oracle, g)
    if not unit.f.is_surjective():
        report.add('unit.surjective', e=unit.f.table)
    if not reflected.g.is_injective():
        report.add('reflected.monic', m=reflected.g.table)
    if comma.epireflect(oracle, reflected)[0] != reflected:
        report.add('idempotent')
    _expect(report, args, reflected.a.size)
    return report, {'size': reflected.a.size, 'e': unit.f.table,
                    'm': reflected.g.table}


@operation('verify_reflection_universal')
def _verify_reflection_universal(instance, args):
    oracle, g = _comma(instance, args)
    if args.get('target') is None:
        target = comma.epireflect(oracle, g)[0]
    else:
        target = instance.get('comma_objects', args['target'])
    return comma.verify_reflection_universal(oracle, g, target), None


@operation('find_split_structure')
def _find_split_structure(instance, args):
    f = instance.get('maps', _arg(args, 'f'))
    g = instance.get('maps', _arg(args, 'g'))
    witness = comma.find_split_structure(f, g)
    report = _expect(LawReport(), args, witness is not None)
    return report, witness.as_dict() if witness is not None else None


@operation('split_coequalizer_check')
def _split_coequalizer_check(instance, args):
    f = instance.get('maps', _arg(args, 'f'))
    g = instance.get('maps', _arg(args, 'g'))
    witness = comma.find_split_structure(f, g)
    if witness is None:
        report = LawReport()
        report.add('precondition', reason='no split structure')
        return report, None
    v = _int(args, 'v') if 'v' in args else 2
    return (comma.split_coequalizer_check(witness, f, g, v=v),
            witness.as_dict())


# Finite spaces and closure systems

@operation('space_to_affine')
def _space_to_affine(instance, args):
    T = instance.get('spaces', _arg(args, 'space'))
    XS = instances.space_to_affine(T)
    report = _expect(LawReport(), args, XS.rows())
    if instances.affine_to_space(XS) != T:
        report.add('roundtrip')
    return report, XS.rows()


@operation('affine_to_space')
def _affine_to_space(instance, args):
    T = instances.affine_to_space(
        instance.get('affine_sets', _arg(args, 'affine_set')))
    return LawReport(), T.opens


@operation('closure_system_to_affine')
def _closure_system_to_affine(instance, args):
    C = instance.get('closure_systems', _arg(args, 'closure_system'))
    XS = instances.closure_system_to_affine(C)
    report = _expect(LawReport(), args, XS.rows())
    if instances.affine_to_closure_system(XS) != C:
        report.add('roundtrip')
    return report, XS.rows()


@operation('affine_to_closure_system')
def _affine_to_closure_system(instance, args):
    C = instances.affine_to_closure_system(
        instance.get('affine_sets', _arg(args, 'affine_set')))
    return LawReport(), C.closed


@operation('is_sober_finite')
def _is_sober_finite(instance, args):
    sober, pair = instances.is_sober_finite(
        instance.get('spaces', _arg(args, 'space')))
    return (_expect(LawReport(), args, sober),
            {'sober': sober, 'witness': pair})


@operation('enumerate_topologies')
def _enumerate_topologies(instance, args):
    spaces = instances.enumerate_topologies(_size(args))
    t0 = sum(1 for T in spaces if instances.is_sober_finite(T)[0])
    report = _expect(LawReport(), args, len(spaces), 'expect_count')
    _expect(report, args, t0, 'expect_t0')
    return report, {'count': len(spaces), 't0': t0}


@operation('enumerate_closure_systems')
def _enumerate_closure_systems(instance, args):
    systems = instances.enumerate_closure_systems(_size(args))
    return (_expect(LawReport(), args, len(systems), 'expect_count'),
            {'count': len(systems)})


@operation('continuous')
def _continuous(instance, args):
    f = instance.get('maps', _arg(args, 'map'))
    T = instance.get('spaces', _arg(args, 'source'))
    U = instance.get('spaces', _arg(args, 'target'))
    result = instances.continuous(f, T, U)
    report = _expect(LawReport(), args, result)
    morphism = affine.check_affine_morphism(
        f, instances.space_to_affine(T), instances.space_to_affine(U)).ok
    if morphism != result:
        report.add('transcription', continuous=result, affine_morphism=morphism)
    return report, result
