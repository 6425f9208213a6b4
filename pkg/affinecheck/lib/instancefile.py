"""
Instance files: JSON documents of named blocks plus a list of checks.

Blocks are resolved in dependency order (quantales, algebras, then
everything built over them), so a block may only reference blocks of an
earlier kind. Every block is validated as it is built.
"""
import collections
import json
import logging

from affinecheck.lib import affine, algebra, comma, instances, quantale, vcat
from affinecheck.lib.errors import MalformedInput, UnresolvedReference
from affinecheck.lib.finmap import FiniteMap

log = logging.getLogger(__name__)

BLOCK_KINDS = collections.OrderedDict([
    ('quantales', 'quantale'),
    ('algebras', 'algebra'),
    ('vcategories', 'V-category'),
    ('affine_sets', 'affine set'),
    ('spaces', 'space'),
    ('closure_systems', 'closure system'),
    ('maps', 'map'),
    ('oracles', 'oracle'),
    ('comma_objects', 'comma object'),
])

CLOSURE_KINDS = ('signature', 'vccd')


class InstanceFile(object):

    def __init__(self, settings=None):
        self.settings = settings or {}
        self.blocks = {kind: {} for kind in BLOCK_KINDS}
        self.checks = []
        self.comma_oracles = {}

    def get(self, kind, name):
        if not isinstance(name, str):
            raise MalformedInput(
                "Reference to a {0} must be a name, got {1!r}".format(
                    BLOCK_KINDS[kind], name))
        try:
            return self.blocks[kind][name]
        except KeyError:
            raise UnresolvedReference(BLOCK_KINDS[kind], name)

    def quantale(self, name):
        return self.get('quantales', name)

    def algebra(self, name):
        """ A declared algebra, falling back to the parameterless built-ins. """
        if name in ('frame2', 'inf2') and name not in self.blocks['algebras']:
            return algebra.BUILTIN_ALGEBRAS[name]()
        return self.get('algebras', name)

    def oracle(self, name):
        """ A declared oracle, falling back to the built-ins without ambient. """
        if name in ('pointed_sets', 'distributive_lattices') and \
                name not in self.blocks['oracles']:
            return comma.make_oracle(name, limit=self.settings.get('max_morphisms'))
        return self.get('oracles', name)


def load(fileobj, settings=None):
    try:
        document = json.load(fileobj)
    except ValueError as e:
        raise MalformedInput("Error parsing JSON: '{0}'".format(e))
    return from_document(document, settings)


def from_document(document, settings=None):
    if not isinstance(document, dict):
        raise MalformedInput("Instance file must be a JSON object")
    unknown = set(document) - set(BLOCK_KINDS) - {'checks'}
    if unknown:
        raise MalformedInput(
            "Unknown blocks in instance file: {0}".format(
                ', '.join(sorted(unknown))))

    instance = InstanceFile(settings)
    for kind in BLOCK_KINDS:
        builder = BUILDERS[kind]
        for name, block in sorted(get_block_group(document, kind).items()):
            if not isinstance(block, dict):
                raise MalformedInput(
                    "Block '{0}' in {1} must be an object".format(name, kind))
            log.debug('Building %s %s', kind, name)
            instance.blocks[kind][name] = builder(instance, block, name)

    checks = document.get('checks', [])
    if not isinstance(checks, list):
        raise MalformedInput("'checks' must be a list")
    for index, check in enumerate(checks):
        if not isinstance(check, dict):
            raise MalformedInput("Check {0} must be an object".format(index))
        op = get_mandatory_field(check, 'op', 'check {0}'.format(index))
        args = check.get('args', {})
        if not isinstance(args, dict):
            raise MalformedInput(
                "Arguments of check {0} must be an object".format(index))
        instance.checks.append({
            'op': op,
            'args': args,
            'label': check.get('label', op),
        })
    return instance


def get_block_group(document, kind):
    group = document.get(kind, {})
    if not isinstance(group, dict):
        raise MalformedInput("'{0}' must map names to blocks".format(kind))
    return group


def get_mandatory_field(block, key, where):
    if key not in block:
        raise MalformedInput(
            "Unable to find mandatory field '{0}' in {1}".format(key, where))
    return block[key]


def get_int(block, key, where, default=None):
    value = block.get(key, default) if default is not None else \
        get_mandatory_field(block, key, where)
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInput(
            "Field '{0}' in {1} must be an integer, got {2!r}".format(
                key, where, value))
    return value


def get_size(block, key, where):
    value = get_int(block, key, where)
    if value < 0:
        raise MalformedInput(
            "Field '{0}' in {1} must be non-negative, got {2}".format(
                key, where, value))
    return value


def get_rows(block, key, where):
    rows = get_mandatory_field(block, key, where)
    if not isinstance(rows, list) or not all(
            isinstance(r, list) and all(isinstance(v, int) for v in r)
            for r in rows):
        raise MalformedInput(
            "Field '{0}' in {1} must be a list of integer rows".format(
                key, where))
    return [tuple(r) for r in rows]


def build_quantale(instance, block, name):
    where = "quantale '{0}'".format(name)
    if 'kind' in block:
        return quantale.make_quantale(block['kind'],
                                      get_int(block, 'n', where, default=1))
    return quantale.Quantale.from_tables(
        get_rows(block, 'leq', where),
        get_rows(block, 'tensor', where),
        get_int(block, 'unit', where))


def build_algebra(instance, block, name):
    where = "algebra '{0}'".format(name)
    if 'builtin' in block:
        builtin = block['builtin']
        if builtin == 'vccd':
            return algebra.vccd_algebra(
                instance.quantale(get_mandatory_field(block, 'quantale', where)))
        if builtin not in algebra.BUILTIN_ALGEBRAS:
            raise MalformedInput(
                "Unknown built-in algebra '{0}' in {1}".format(builtin, where))
        params = {k: get_size(block, k, where)
                  for k in ('size', 'atoms') if k in block}
        try:
            return algebra.BUILTIN_ALGEBRAS[builtin](**params)
        except TypeError:
            raise MalformedInput(
                "Built-in algebra '{0}' needs {1}".format(
                    builtin, 'atoms' if builtin == 'boolean_algebra' else 'size'))

    size = get_size(block, 'size', where)
    operations = {}
    operations_block = get_mandatory_field(block, 'operations', where)
    if not isinstance(operations_block, dict):
        raise MalformedInput(
            "Operations in {0} must map names to tables".format(where))
    for op, entry in sorted(operations_block.items()):
        if not isinstance(entry, dict):
            raise MalformedInput(
                "Operation '{0}' in {1} must be an object".format(op, where))
        arity = get_int(entry, 'arity', "operation '{0}' of {1}".format(op, where))
        table = get_mandatory_field(entry, 'table', "operation '{0}'".format(op))
        operations[op] = table
        built = algebra.FinAlgebra(size, {op: table})
        if built.arities[op] != arity:
            raise MalformedInput(
                "Operation '{0}' in {1} declares arity {2} but its table has {3}".format(
                    op, where, arity, built.arities[op]))
    return algebra.FinAlgebra(size, operations, name=name)


def build_vcategory(instance, block, name):
    where = "V-category '{0}'".format(name)
    return vcat.VCategory(
        instance.quantale(get_mandatory_field(block, 'quantale', where)),
        get_rows(block, 'matrix', where))


def build_affine_set(instance, block, name):
    where = "affine set '{0}'".format(name)
    size = get_size(block, 'size', where)
    max_members = instance.settings.get('max_carrier', affine.MAX_MEMBERS)
    if 'quantale' in block:
        Q = instance.quantale(block['quantale'])
        ambient = algebra.vccd_algebra(Q)
        closure = block.get('closure', 'vccd')
    else:
        ambient = instance.algebra(get_mandatory_field(block, 'ambient', where))
        closure = block.get('closure', 'signature')
    if closure not in CLOSURE_KINDS:
        raise MalformedInput(
            "Closure '{0}' in {1} is not one of {2}".format(
                closure, where, ', '.join(CLOSURE_KINDS)))

    if 'maps' in block:
        return affine.AffineSet(ambient, size, get_rows(block, 'maps', where))
    generators = get_rows(block, 'generators', where)
    if closure == 'vccd':
        if ambient.quantale is None:
            raise MalformedInput(
                "V-ccd closure in {0} needs a quantale".format(where))
        return affine.generate_vccd_closure(ambient.quantale, size, generators,
                                            max_members=max_members)
    return affine.generate_subalgebra(ambient, size, generators,
                                      max_members=max_members)


def build_space(instance, block, name):
    where = "space '{0}'".format(name)
    return instances.FiniteSpace(get_size(block, 'size', where),
                                 get_rows(block, 'opens', where))


def build_closure_system(instance, block, name):
    where = "closure system '{0}'".format(name)
    return instances.ClosureSystem(get_size(block, 'size', where),
                                   get_rows(block, 'closed', where))


def build_map(instance, block, name):
    where = "map '{0}'".format(name)
    return FiniteMap(get_size(block, 'source', where),
                     get_size(block, 'target', where),
                     _int_list(get_mandatory_field(block, 'table', where), where))


def _int_list(values, where):
    if not isinstance(values, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise MalformedInput(
            "Table in {0} must be a list of integers".format(where))
    return tuple(values)


def build_oracle(instance, block, name):
    where = "oracle '{0}'".format(name)
    builtin = get_mandatory_field(block, 'builtin', where)
    ambient = instance.algebra(block['ambient']) if 'ambient' in block else None
    return comma.make_oracle(
        builtin, ambient=ambient,
        limit=instance.settings.get('max_morphisms'),
        max_carrier=instance.settings.get('max_carrier'))


def build_comma_object(instance, block, name):
    where = "comma object '{0}'".format(name)
    oracle = instance.oracle(get_mandatory_field(block, 'oracle', where))
    instance.comma_oracles[name] = oracle
    A = instance.algebra(get_mandatory_field(block, 'a', where))
    B = instance.algebra(get_mandatory_field(block, 'b', where))
    structure = get_mandatory_field(block, 'map', where)
    if isinstance(structure, str):
        g = instance.get('maps', structure)
    else:
        IB = oracle.apply_object(B)
        g = FiniteMap(A.size, IB.size, _int_list(structure, where))
    return comma.comma_object(oracle, A, B, g)


BUILDERS = {
    'quantales': build_quantale,
    'algebras': build_algebra,
    'vcategories': build_vcategory,
    'affine_sets': build_affine_set,
    'spaces': build_space,
    'closure_systems': build_closure_system,
    'maps': build_map,
    'oracles': build_oracle,
    'comma_objects': build_comma_object,
}
