# -*- coding: utf-8 -*-
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from fdalg.algebra import FdAlgebra, is_positive, operator_norm
from fdalg.exceptions import AlgebraMismatch, NotCommutative, PropertyFailure
from fdalg.generators import random_element, random_positive
from fdalg.maps import (COMPLEX, block_projection, compose, identity_map,
    is_completely_positive, is_miu, is_positive_map, make_map, random_cp_map,
    random_state, trace_functional)
from fdalg.tensor import (associator, bang, bang_unit, braiding,
    check_hexagon, check_pentagon, check_triangle, distributor, duplicator,
    duplicator_witness, factor_through_bang, is_duplicable,
    multiplication_map, nsp, tensor_algebra, tensor_elements,
    tensor_functionals, tensor_maps, unitors)
from fdalg.tests.utils import (C1, C2, C3, M2, M2C, M3, FdAlgTestCase, element,
    seeds, small_algebras)


class TensorAlgebraTest(FdAlgTestCase):

    def test_block_layout(self):
        ts = tensor_algebra(M2C, C2)
        self.assertEqual(ts.product.dims, (2, 2, 1, 1))
        self.assertEqual(ts.block_index[(1, 0)], 2)
        self.assertEqual(tensor_algebra(M2, M3).product.dims, (6,))

    def test_split(self):
        ts = tensor_algebra(M2, M2)
        self.assertEqual(ts.split(0, 1, 2), ((0, 0, 1), (0, 1, 0)))

    def test_kron_layout(self):
        ts = tensor_algebra(M2, M2)
        a, b = random_element(M2, 1), random_element(M2, 2)
        t = tensor_elements(ts, a, b)
        self.assertEqual(t.blocks[0][1, 2], a.blocks[0][0, 1] * b.blocks[0][1, 0])
        self.assertClose(tensor_elements(ts, M2.unit(), M2.unit()),
                         ts.product.unit())
        with self.assertRaises(AlgebraMismatch):
            tensor_elements(ts, a, C2.unit())

    @settings(max_examples=25, deadline=None)
    @given(A=small_algebras, B=small_algebras, seed=seeds)
    def test_products_of_simple_tensors(self, A, B, seed):
        ts = tensor_algebra(A, B)
        a, c = random_element(A, seed), random_element(A, seed + 1)
        b, d = random_element(B, seed + 2), random_element(B, seed + 3)
        self.assertClose(tensor_elements(ts, a, b) * tensor_elements(ts, c, d),
                         tensor_elements(ts, a * c, b * d))
        self.assertClose(tensor_elements(ts, a, b).adjoint(),
                         tensor_elements(ts, a.adjoint(), b.adjoint()))

    @settings(max_examples=25, deadline=None)
    @given(A=small_algebras, B=small_algebras, seed=seeds)
    def test_norm_is_multiplicative(self, A, B, seed):
        a, b = random_element(A, seed), random_element(B, seed + 1)
        t = tensor_elements(tensor_algebra(A, B), a, b)
        self.assertAlmostEqual(operator_norm(t),
                               operator_norm(a) * operator_norm(b), places=8)

    @settings(max_examples=25, deadline=None)
    @given(seed=seeds)
    def test_schur_product(self, seed):
        a, b = random_positive(M3, seed), random_positive(M3, seed + 1)
        t = tensor_elements(tensor_algebra(M3, M3), a, b)
        diagonal = np.zeros((9, 3))
        for i in range(3):
            diagonal[4 * i, i] = 1.0
        entrywise = element(M3, a.blocks[0] * b.blocks[0])
        self.assertClose(element(M3, diagonal.T @ t.blocks[0] @ diagonal),
                         entrywise)
        self.assertTrue(is_positive(entrywise))


class TensorMapTest(FdAlgTestCase):

    def test_tensor_of_maps(self):
        f = random_cp_map(M2, C2, 3)
        g = random_cp_map(M2C, M2, 4)
        fg = tensor_maps(None, None, f, g)
        a, b = random_element(M2, 5), random_element(M2C, 6)
        dom = tensor_algebra(M2, M2C)
        cod = tensor_algebra(C2, M2)
        self.assertClose(fg(tensor_elements(dom, a, b)),
                         tensor_elements(cod, f(a), g(b)))
        self.assertTrue(is_completely_positive(fg))
        with self.assertRaises(AlgebraMismatch):
            tensor_maps(cod, dom, f, g)

    def test_product_state(self):
        sigma, tau = random_state(M2, 7), random_state(C2, 8)
        omega = tensor_functionals(sigma, tau)
        self.assertEqual(omega.cod, COMPLEX)
        a, b = random_element(M2, 9), random_element(C2, 10)
        value = omega(tensor_elements(tensor_algebra(M2, C2), a, b))
        self.assertAlmostEqual(value.blocks[0][0, 0],
                               sigma(a).blocks[0][0, 0] * tau(b).blocks[0][0, 0])


class MonoidalTest(FdAlgTestCase):

    def test_structural_maps_are_miu(self):
        self.assertTrue(is_miu(associator(M2, C2, M2)))
        self.assertTrue(is_miu(braiding(M2C, C2)))
        for unitor in unitors(M2C):
            self.assertTrue(is_miu(unitor))
        self.assertTrue(is_miu(distributor(M2, [C1, M2])))

    def test_associator_on_simple_tensors(self):
        a, b, c = (random_element(X, 11) for X in (M2, C2, M2C))
        bc = tensor_algebra(C2, M2C)
        ab = tensor_algebra(M2, C2)
        source = tensor_algebra(M2, bc.product)
        target = tensor_algebra(ab.product, M2C)
        x = tensor_elements(source, a, tensor_elements(bc, b, c))
        self.assertClose(associator(M2, C2, M2C)(x),
                         tensor_elements(target, tensor_elements(ab, a, b), c))

    def test_braiding_is_involutive(self):
        twice = compose(braiding(C2, M2C), braiding(M2C, C2))
        self.assertMapClose(twice, identity_map(tensor_algebra(M2C, C2).product))

    def test_unitors(self):
        left, right = unitors(M2)
        a = random_element(M2, 12)
        z = COMPLEX.scalar(2.0 - 1j)
        self.assertClose(left(tensor_elements(tensor_algebra(COMPLEX, M2), z, a)),
                         a * (2.0 - 1j))
        self.assertClose(right(tensor_elements(tensor_algebra(M2, COMPLEX), a, z)),
                         a * (2.0 - 1j))

    def test_distributor(self):
        d = distributor(C2, [M2, C1])
        self.assertEqual(d.dom.dims, (2, 1, 2, 1))
        self.assertEqual(d.cod.dims, (2, 2, 1, 1))
        self.assertIsNotNone(d.inverse())

    def test_coherence(self):
        self.assertLess(check_pentagon(M2, C2, M2C, C2, samples=4, seed=1), 1e-9)
        self.assertLess(check_triangle(M2, M2C, samples=4, seed=2), 1e-9)
        self.assertLess(check_hexagon(M2, C2, M2C, samples=4, seed=3), 1e-9)


class DuplicatorTest(FdAlgTestCase):

    def test_classical_algebra_has_duplicator(self):
        delta = duplicator(C2)
        self.assertIsNotNone(delta)
        ts = tensor_algebra(C2, C2)
        a, b = random_element(C2, 13), random_element(C2, 14)
        self.assertClose(delta(tensor_elements(ts, a, b)), a * b)
        self.assertIsNone(duplicator_witness(C2, samples=50, seed=0))

    def test_quantum_algebra_has_none(self):
        self.assertIsNone(duplicator(M2))
        self.assertIsNone(duplicator(M2C))
        witness = duplicator_witness(M2, samples=200, seed=0)
        self.assertIsNotNone(witness)
        self.assertEqual(witness.algebra, tensor_algebra(M2, M2).product)

    def test_multiplication_is_not_positive_on_m2(self):
        self.assertFalse(is_completely_positive(multiplication_map(M2)))

    @settings(max_examples=15, deadline=None)
    @given(alg=st.sampled_from([C1, C2, C3, M2, M2C]), seed=seeds)
    def test_monoid_iff_duplicable(self, alg, seed):
        delta = duplicator(alg)
        self.assertEqual(delta is not None, is_duplicable(alg))
        if delta is None:
            self.assertIsNotNone(duplicator_witness(alg, samples=500, seed=seed))
            return
        ts = tensor_algebra(alg, alg)
        a, b, c = (random_element(alg, seed + k) for k in range(3))
        self.assertClose(
            delta(tensor_elements(ts, delta(tensor_elements(ts, a, b)), c)),
            delta(tensor_elements(ts, a, delta(tensor_elements(ts, b, c)))))
        self.assertClose(delta(tensor_elements(ts, alg.unit(), a)), a)
        self.assertTrue(is_positive_map(delta).positive)


class BangTest(FdAlgTestCase):

    def test_points(self):
        self.assertEqual(nsp(M2C), [1])
        self.assertEqual(bang(M2C), C1)
        self.assertEqual(bang(M2), FdAlgebra(()))
        self.assertEqual(bang(C2), C2)
        self.assertTrue(is_miu(bang_unit(M2C)))
        a = element(M2C, np.eye(2), [[5.0]])
        self.assertClose(bang_unit(M2C)(a), C1.scalar(5.0))

    @settings(max_examples=20, deadline=None)
    @given(seed=seeds)
    def test_no_points_on_full_matrices(self, seed):
        self.assertEqual(nsp(M2), [])
        self.assertEqual(bang(M2).dim, 0)
        rng = np.random.default_rng(seed)
        weights = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        phi = make_map(M2, C1, [C1.scalar(w) for w in weights])
        self.assertFalse(is_miu(phi))
        self.assertFalse(is_miu(random_state(M2, seed)))
        self.assertTrue(is_miu(block_projection(M2C, 1)))

    def test_factor_through_bang(self):
        f = block_projection(M2C, 1)
        g = factor_through_bang(f)
        self.assertEqual((g.dom, g.cod), (C1, C1))
        self.assertMapClose(compose(g, bang_unit(M2C)), f)

    def test_factor_failures(self):
        with self.assertRaises(NotCommutative):
            factor_through_bang(identity_map(M2))
        with self.assertRaises(PropertyFailure):
            factor_through_bang(0.5 * trace_functional(M2))
