import unittest

from affinecheck.lib import algebra
from affinecheck.lib.errors import (
    IncompatibleStructures,
    MalformedInput,
    ResourceLimit,
)
from affinecheck.lib.finmap import (
    FiniteMap,
    decode,
    encode,
    iter_maps,
    iter_surjections,
)
from affinecheck.lib.quantale import make_quantale
from affinecheck.tests.helpers import (
    assert_equal,
    assert_false,
    assert_raises,
    assert_true,
)


class TestFiniteMap(unittest.TestCase):

    def test_values_must_land_in_target(self):
        assert_raises(MalformedInput, FiniteMap, 2, 2, (0, 2))
        assert_raises(MalformedInput, FiniteMap, 2, 2, (0,))

    def test_compose_applies_argument_first(self):
        f = FiniteMap(3, 2, (0, 1, 1))
        g = FiniteMap(2, 2, (1, 0))
        assert_equal(g.compose(f).table, (1, 0, 0))
        assert_raises(IncompatibleStructures, f.compose, g)

    def test_kernel(self):
        f = FiniteMap(4, 3, (0, 2, 0, 2))
        assert_equal(f.kernel(), frozenset([frozenset([0, 2]),
                                            frozenset([1, 3])]))
        assert_false(f.is_injective())
        assert_false(f.is_surjective())

    def test_surjections_are_canonical(self):
        tables = [h.table for h in iter_surjections(3, 2)]
        assert_equal(tables, [(0, 0, 1), (0, 1, 0), (0, 1, 1)])
        assert_equal(len(list(iter_surjections(4, 4))), 1)
        assert_equal(len(list(iter_surjections(2, 3))), 0)

    def test_map_count(self):
        assert_equal(len(list(iter_maps(2, 3))), 9)
        assert_equal(len(list(iter_maps(0, 0))), 1)

    def test_codes_are_little_endian(self):
        assert_equal(encode((1, 0, 1), 2), 5)
        assert_equal(decode(5, 2, 3), (1, 0, 1))
        assert_equal(decode(encode((2, 1), 3), 3, 2), (2, 1))

    def test_contravariant_power_precomposes(self):
        f = FiniteMap(2, 3, (2, 0))
        power = f.contravariant_power(2)
        assert_equal(power.source, 8)
        assert_equal(power.target, 4)
        # phi = (1, 0, 0) on three points, phi . f = (0, 1)
        assert_equal(power(encode((1, 0, 0), 2)), encode((0, 1), 2))

    def test_contravariant_power_needs_a_base(self):
        f = FiniteMap(1, 1, (0,))
        assert_raises(MalformedInput, f.contravariant_power, 0)

    def test_negative_target(self):
        assert_raises(MalformedInput, FiniteMap, 0, -1, ())


class TestFinAlgebra(unittest.TestCase):

    def test_tables_must_be_total(self):
        assert_raises(MalformedInput, algebra.FinAlgebra, 2,
                      {'meet': [[0, 0]]})
        assert_raises(MalformedInput, algebra.FinAlgebra, 2,
                      {'top': 2})

    def test_chain_lattice(self):
        C = algebra.chain_lattice(3)
        assert_equal(C.apply('join', 0, 2), 2)
        assert_equal(C.apply('meet', 1, 2), 1)
        assert_equal(C.constants(), {'bottom': 0, 'top': 2})

    def test_boolean_algebra_is_bitmasks(self):
        B = algebra.boolean_algebra(2)
        assert_equal(B.size, 4)
        assert_equal(B.apply('join', 1, 2), 3)
        assert_equal(B.apply('meet', 1, 2), 0)

    def test_degenerate_sizes(self):
        assert_raises(MalformedInput, algebra.chain_lattice, 0)
        assert_raises(MalformedInput, algebra.boolean_algebra, -1)
        assert_raises(MalformedInput, algebra.finite_set, -1)
        assert_equal(algebra.boolean_algebra(0).size, 1)
        assert_equal(algebra.chain_lattice(1).constants(),
                     {'bottom': 0, 'top': 0})

    def test_frame_is_the_two_chain(self):
        assert_equal(algebra.two_element_frame(), algebra.chain_lattice(2))

    def test_vccd_algebra_operations(self):
        Q = make_quantale('lukasiewicz', 2)
        V = algebra.vccd_algebra(Q)
        assert_equal(V.arities['tensor_1'], 1)
        assert_equal(V.apply('tensor_1', 1), 0)
        assert_equal(V.apply('hom_1', 0), 1)
        assert_equal(V.quantale, Q)

    def test_power_algebra_is_pointwise(self):
        P = algebra.PowerAlgebra(algebra.two_element_frame(), 2)
        assert_equal(P.size, 4)
        join = P.apply('join', P.encode((1, 0)), P.encode((0, 1)))
        assert_equal(P.decode(join), (1, 1))
        assert_equal(P.decode(P.apply('bottom')), (0, 0))

    def test_power_algebra_cap(self):
        assert_raises(ResourceLimit, algebra.PowerAlgebra,
                      algebra.two_element_frame(), 5, 16)

    def test_product_projections(self):
        P = algebra.ProductAlgebra(algebra.pointed_set(2),
                                   algebra.pointed_set(3))
        assert_equal(P.size, 6)
        assert_equal(P.pi1.table, (0, 0, 0, 1, 1, 1))
        assert_equal(P.pi2.table, (0, 1, 2, 0, 1, 2))
        assert_equal(P.apply('base'), 0)

    def test_product_needs_one_signature(self):
        assert_raises(IncompatibleStructures, algebra.ProductAlgebra,
                      algebra.pointed_set(2), algebra.chain_lattice(2))

    def test_subalgebra_inclusion(self):
        B = algebra.boolean_algebra(2)
        S = algebra.Subalgebra(B, [0, 1, 3])
        assert_equal(S.inclusion.table, (0, 1, 3))
        assert_equal(S.apply('join', 1, 2), 2)


class TestHomomorphisms(unittest.TestCase):

    def test_lattice_homomorphisms_into_two(self):
        B = algebra.boolean_algebra(2)
        homs = list(algebra.iter_homomorphisms(B, algebra.chain_lattice(2)))
        assert_equal(sorted(h.table for h in homs),
                     [(0, 0, 1, 1), (0, 1, 0, 1)])
        for h in homs:
            assert_true(algebra.is_homomorphism(h, B, algebra.chain_lattice(2)))

    def test_non_homomorphism_is_reported(self):
        h = FiniteMap(3, 2, (0, 0, 0))
        report = algebra.check_homomorphism(
            h, algebra.chain_lattice(3), algebra.chain_lattice(2))
        assert_equal(report.laws(), ['homomorphism.top'])

    def test_search_limit(self):
        search = algebra.iter_homomorphisms(
            algebra.finite_set(6), algebra.finite_set(6), limit=10)
        assert_raises(ResourceLimit, list, search)

    def test_image_factorization(self):
        B = algebra.boolean_algebra(2)
        C = algebra.chain_lattice(3)
        g = FiniteMap(4, 3, (0, 0, 2, 2))
        image, e, m = algebra.image_factorization(g, B, C)
        assert_equal(image.size, 2)
        assert_equal(m.compose(e), g)
        assert_true(e.is_surjective())
        assert_true(m.is_injective())
