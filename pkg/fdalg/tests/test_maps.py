# -*- coding: utf-8 -*-
import numpy as np
from hypothesis import given, settings

from fdalg.algebra import is_positive, leq, real_part, trace
from fdalg.exceptions import (AlgebraMismatch, NotPositive,
    PreconditionError, ShapeMismatch)
from fdalg.generators import (random_density, random_element,
    random_projection, random_unitary)
from fdalg.maps import (COMPLEX, LIKELY_POSITIVE, NOT_POSITIVE, PROVEN_CP,
    LinMap, are_contraposed, are_equivalent, block_injection,
    block_projection, carrier, central_carrier, choi, compose, conjugation,
    density, diamond_box, diamond_bwd, diamond_fwd, functional_from_density,
    identity_map, is_completely_positive, is_faithful, is_miu,
    is_multiplicative, is_positive_functional, is_positive_map, is_subunital,
    is_unital, kraus_map, make_map, map_equal, random_cp_map,
    random_cpsu_map, random_cpu_map, trace_functional, transpose_map,
    vector_functional, zero_map)
from fdalg.projections import (floor, is_projection, join, orthocomplement,
    sample_projections)
from fdalg.tests.utils import (C2, M2, M2C, M3, FdAlgTestCase, diagonal,
    element, m2, seeds, small_algebras)

E11 = diagonal(M2, 1.0, 0.0)


class LinMapTest(FdAlgTestCase):

    def test_shape_checks(self):
        with self.assertRaises(ShapeMismatch):
            LinMap(M2, M2, np.eye(3))
        with self.assertRaises(ShapeMismatch):
            make_map(M2, M2, [M2.unit()])
        with self.assertRaises(ShapeMismatch):
            kraus_map(M2, C2, [(0, 0, np.eye(2))])

    def test_immutable(self):
        f = identity_map(M2)
        with self.assertRaises(AttributeError):
            f.dom = C2
        with self.assertRaises(ValueError):
            f.matrix[0, 0] = 2.0

    def test_linear_structure(self):
        f = random_cp_map(M2, M2C, 1)
        g = random_cp_map(M2, M2C, 2)
        a = random_element(M2, 3)
        self.assertClose((f + g)(a), f(a) + g(a))
        self.assertClose((f - 2 * g)(a), f(a) - 2 * g(a))
        self.assertClose((-f)(a), -f(a))
        with self.assertRaises(AlgebraMismatch):
            f + identity_map(M2)

    def test_compose(self):
        f = random_cp_map(M2, M3, 4)
        g = random_cp_map(M3, C2, 5)
        a = random_element(M2, 6)
        self.assertClose(compose(g, f)(a), g(f(a)))
        self.assertMapClose(g @ f, compose(g, f))
        with self.assertRaises(AlgebraMismatch):
            compose(f, f)

    def test_inverse(self):
        u = random_unitary(M2C, 7)
        f = conjugation(u)
        self.assertMapClose(f.inverse() @ f, identity_map(M2C))
        self.assertMapClose(f.inverse(), conjugation(u.adjoint()))
        with self.assertRaises(PreconditionError):
            zero_map(M2, M2).inverse()
        with self.assertRaises(PreconditionError):
            zero_map(M2, C2).inverse()

    def test_block_maps(self):
        a = random_element(M2C, 8)
        self.assertClose(block_projection(M2C, 0)(a),
                         element(M2, a.blocks[0]))
        self.assertMapClose(block_projection(M2C, 0) @ block_injection(M2C, 0),
                            identity_map(M2))
        self.assertTrue(is_miu(block_projection(M2C, 1)))
        self.assertFalse(is_unital(block_injection(M2C, 0)))

    def test_map_equal(self):
        f = random_cp_map(M2, M2, 9)
        self.assertTrue(map_equal(f, f * (1 + 1e-12)))
        self.assertFalse(map_equal(f, 2 * f))


class ChoiTest(FdAlgTestCase):

    def test_transpose_is_not_completely_positive(self):
        blocks = choi(transpose_map(M2))
        self.assertEqual(len(blocks), 1)
        self.assertAlmostEqual(blocks[0].min_eigenvalue, -1.0)
        self.assertFalse(is_completely_positive(transpose_map(M2)))

    def test_identity_choi_is_rank_one(self):
        block = choi(identity_map(M2))[0].matrix
        self.assertEqual(block.algebra.dims, (4,))
        self.assertAlmostEqual(trace(block).real, 2.0)
        self.assertAlmostEqual(choi(identity_map(M2))[0].min_eigenvalue, 0.0)

    def test_choi_blocks_per_domain_block(self):
        blocks = choi(random_cp_map(M2C, C2, 10))
        self.assertEqual([b.domain_block_index for b in blocks], [0, 1])
        self.assertEqual(blocks[0].matrix.algebra.dims, (2, 2))
        self.assertEqual(blocks[1].matrix.algebra.dims, (1, 1))

    @settings(max_examples=25, deadline=None)
    @given(dom=small_algebras, cod=small_algebras, seed=seeds)
    def test_random_kraus_maps_are_cp(self, dom, cod, seed):
        f = random_cp_map(dom, cod, seed)
        self.assertTrue(is_completely_positive(f))
        self.assertEqual(is_positive_map(f).kind, PROVEN_CP)
        self.assertTrue(is_unital(random_cpu_map(dom, cod, seed)))
        self.assertTrue(is_subunital(random_cpsu_map(dom, cod, seed)))


class PositivityVerdictTest(FdAlgTestCase):

    def test_transpose_is_likely_positive(self):
        verdict = is_positive_map(transpose_map(M2), samples=50, seed=1)
        self.assertEqual(verdict.kind, LIKELY_POSITIVE)
        self.assertFalse(verdict.exact)
        self.assertTrue(verdict.positive)

    def test_unit_witness(self):
        verdict = is_positive_map(-identity_map(M2))
        self.assertEqual(verdict.kind, NOT_POSITIVE)
        self.assertClose(verdict.witness, M2.unit())

    def test_commutative_domain(self):
        f = make_map(C2, M2, [diagonal(M2, 2.0, -1.0), diagonal(M2, 0.0, 2.0)])
        verdict = is_positive_map(f)
        self.assertEqual(verdict.kind, NOT_POSITIVE)
        self.assertClose(verdict.witness, C2.block_unit(0))

    def test_commutative_codomain(self):
        omega = functional_from_density(diagonal(M2, 2.0, -1.0))
        verdict = is_positive_map(omega)
        self.assertEqual(verdict.kind, NOT_POSITIVE)
        self.assertTrue(is_positive(verdict.witness))
        self.assertLess(omega(verdict.witness).blocks[0][0, 0].real, 0.0)

    def test_non_hermitian_density_is_caught(self):
        omega = functional_from_density(m2([[1, 1], [-1, 1]]))
        verdict = is_positive_map(omega)
        self.assertEqual(verdict.kind, NOT_POSITIVE)
        self.assertTrue(verdict.exact)
        self.assertTrue(is_positive(verdict.witness))
        value = omega(verdict.witness).blocks[0][0, 0]
        self.assertGreater(abs(value.imag), 0.5)
        with self.assertRaises(NotPositive):
            carrier(omega)

    def test_commutative_sides_are_exact(self):
        f = make_map(C2, M2, [m2([[1, 1], [0, 1]]), m2([[1, -1], [0, 1]])])
        verdict = is_positive_map(f)
        self.assertEqual((verdict.kind, verdict.exact), (NOT_POSITIVE, True))
        self.assertClose(verdict.witness, C2.block_unit(0))
        verdict = is_positive_map(trace_functional(M2C))
        self.assertEqual((verdict.kind, verdict.exact), (PROVEN_CP, True))

    def test_carrier_needs_positive(self):
        with self.assertRaises(NotPositive):
            carrier(-identity_map(M2))


class FunctionalTest(FdAlgTestCase):

    def test_density_round_trip(self):
        rho = random_density(M2C, 11)
        omega = functional_from_density(rho)
        self.assertClose(density(omega), rho)
        self.assertTrue(is_positive_functional(omega))
        self.assertEqual(omega.cod, COMPLEX)

    def test_trace_and_vector_functionals(self):
        self.assertAlmostEqual(
            trace_functional(M2C)(M2C.unit()).blocks[0][0, 0].real, 3.0)
        omega = vector_functional(M2, 0, np.array([1.0, 0.0]))
        a = random_element(M2, 12)
        self.assertAlmostEqual(omega(a).blocks[0][0, 0], a.blocks[0][0, 0])

    def test_density_needs_functional(self):
        with self.assertRaises(PreconditionError):
            density(identity_map(M2))


class CarrierTest(FdAlgTestCase):

    def test_carrier_of_compression(self):
        f = conjugation(E11)
        self.assertClose(carrier(f), E11)
        self.assertFalse(is_faithful(f))
        self.assertTrue(is_faithful(identity_map(M2)))

    def test_central_carrier(self):
        e = element(M2C, np.diag([1.0, 0.0]), [[0.0]])
        self.assertClose(central_carrier(conjugation(e)), M2C.block_unit(0))

    def test_diamonds_of_unitary_conjugation(self):
        u = random_unitary(M2, 13)
        f, g = conjugation(u), conjugation(u.adjoint())
        for e in sample_projections(M2, samples=2, seed=0):
            self.assertClose(diamond_fwd(f, e), u.adjoint() * e * u)
            self.assertClose(diamond_bwd(g, e), u.adjoint() * e * u)
        self.assertTrue(are_contraposed(f, g))
        self.assertTrue(are_equivalent(f, 2 * f))
        self.assertFalse(are_equivalent(f, identity_map(M2)))

    def test_box_of_identity(self):
        self.assertClose(diamond_box(identity_map(M2), E11), E11)

    def test_contraposition_needs_opposite_maps(self):
        with self.assertRaises(AlgebraMismatch):
            are_contraposed(random_cp_map(M2, C2, 1), random_cp_map(M2, C2, 2))

    @settings(max_examples=20, deadline=None)
    @given(seed=seeds)
    def test_carrier_annihilates_complement(self, seed):
        rng = np.random.default_rng(seed)
        k = rng.standard_normal((3, 2))
        f = kraus_map(M3, M2, [(0, 0, k)])
        p = carrier(f)
        self.assertZero(f(M3.unit() - p))
        self.assertTrue(leq(p, M3.unit()))


class DiamondCalculusTest(FdAlgTestCase):

    @settings(max_examples=15, deadline=None)
    @given(seed=seeds)
    def test_composition(self, seed):
        f = random_cp_map(M2, M3, seed, terms=1)
        g = random_cp_map(M3, M2C, seed + 1, terms=1)
        for e in sample_projections(M2, samples=3, seed=seed):
            self.assertClose(diamond_fwd(compose(g, f), e),
                             diamond_fwd(g, diamond_fwd(f, e)))

    @settings(max_examples=15, deadline=None)
    @given(seed=seeds)
    def test_galois_adjunction(self, seed):
        f = random_cp_map(M2, M3, seed, terms=1)
        s = random_projection(M2, seed, ranks=(1,))
        image = diamond_fwd(f, s)
        for t in (orthocomplement(image), random_projection(M3, seed + 1)):
            forward = leq(image, orthocomplement(t))
            backward = leq(diamond_bwd(f, t), orthocomplement(s))
            self.assertEqual(forward, backward)

    @settings(max_examples=15, deadline=None)
    @given(seed=seeds)
    def test_sum_is_join(self, seed):
        f = random_cp_map(M2, M3, seed, terms=1)
        g = random_cp_map(M2, M3, seed + 1, terms=1)
        for e in sample_projections(M2, samples=3, seed=seed):
            self.assertClose(diamond_fwd(f + g, e),
                             join([diamond_fwd(f, e), diamond_fwd(g, e)]))

    @settings(max_examples=15, deadline=None)
    @given(seed=seeds)
    def test_floor_of_image(self, seed):
        p = random_projection(M3, seed, ranks=(2,))
        a = p + 0.4 * orthocomplement(p)
        u = random_unitary(M3, seed)
        for f in (conjugation(u),
                  0.5 * identity_map(M3) + 0.5 * conjugation(u),
                  random_cpsu_map(M3, M3, seed)):
            self.assertTrue(is_subunital(f))
            self.assertClose(floor(real_part(f(a))),
                             floor(real_part(f(floor(a)))))


class MultiplicativityTest(FdAlgTestCase):

    @settings(max_examples=10, deadline=None)
    @given(seed=seeds)
    def test_projections_to_projections_iff_multiplicative(self, seed):
        u = random_unitary(M3, seed)
        for f in (conjugation(u), make_map(C2, M3, [diagonal(M3, 1, 1, 0),
                                                    diagonal(M3, 0, 0, 1)])):
            self.assertTrue(is_multiplicative(f))
            for e in sample_projections(f.dom, samples=3, seed=seed):
                self.assertTrue(is_projection(f(e)))
        mixed = random_cpu_map(M3, M3, seed)
        self.assertFalse(is_multiplicative(mixed))
        self.assertFalse(all(is_projection(mixed(e)) for e
                             in sample_projections(M3, samples=3, seed=seed)))

    @settings(max_examples=10, deadline=None)
    @given(seed=seeds)
    def test_cpsu_isomorphisms_are_miu(self, seed):
        u = random_unitary(M2C, seed)
        iso = conjugation(u)
        self.assertTrue(self._is_cpsu_isomorphism(iso))
        self.assertTrue(is_miu(iso))
        spread = compose(make_map(COMPLEX, M2C, [M2C.unit()]),
                         trace_functional(M2C)) * (1.0 / 3)
        depolarised = 0.9 * iso + 0.1 * spread
        for f in (0.9 * iso, depolarised):
            self.assertFalse(self._is_cpsu_isomorphism(f))
            self.assertFalse(is_miu(f))

    @staticmethod
    def _is_cpsu_isomorphism(f):
        inverse = f.inverse()
        return all(is_completely_positive(g) and is_subunital(g)
                   for g in (f, inverse))
