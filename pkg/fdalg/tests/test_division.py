# -*- coding: utf-8 -*-
import numpy as np
from hypothesis import given, settings

from fdalg.algebra import adjoint, is_positive, leq
from fdalg.division import (approximate_pseudoinverse, divide, douglas_bound,
    left_divide, polar, pseudoinverse, sandwich, seq_quotient)
from fdalg.exceptions import (AlgebraMismatch, DivisionUndefined, NotPositive,
    QuotientUndefined)
from fdalg.generators import (random_element, random_positive,
    random_projection)
from fdalg.projections import is_projection, range_projection, support
from fdalg.spectral import sqrt
from fdalg.tests.utils import (C2, M2, M2C, M3, FdAlgTestCase, diagonal,
    element, element_oracle, m2, seeds, small_algebras)

E11 = diagonal(M2, 1.0, 0.0)
E22 = diagonal(M2, 0.0, 1.0)


def rank_deficient(alg, seed):
    ranks = [max(1, n - 1) for n in alg.dims]
    return random_element(alg, seed) * random_projection(alg, seed, ranks)


class PseudoinverseTest(FdAlgTestCase):

    def test_against_numpy(self):
        a = rank_deficient(M3, 4)
        self.assertClose(pseudoinverse(a),
                         element_oracle(np.linalg.pinv, a), atol=1e-7)

    def test_zero(self):
        self.assertClose(pseudoinverse(M2C.zero()), M2C.zero())

    @settings(max_examples=30, deadline=None)
    @given(alg=small_algebras, seed=seeds)
    def test_moore_penrose_identities(self, alg, seed):
        a = rank_deficient(alg, seed)
        b = pseudoinverse(a)
        self.assertClose(a * b * a, a, atol=1e-7)
        self.assertClose(b * a * b, b, atol=1e-7)
        self.assertClose(adjoint(a * b), a * b, atol=1e-7)
        self.assertClose(adjoint(b * a), b * a, atol=1e-7)

    @settings(max_examples=30, deadline=None)
    @given(alg=small_algebras, seed=seeds)
    def test_antitone_on_invertibles(self, alg, seed):
        low = random_positive(alg, seed) + 0.1 * alg.unit()
        high = low + random_positive(alg, seed + 1, rank=1)
        self.assertTrue(leq(pseudoinverse(high), pseudoinverse(low)))

    def test_approximate_pseudoinverse(self):
        a = diagonal(M3, 1.0, 0.3, 0.0)
        approx = approximate_pseudoinverse(a)
        self.assertEqual(len(approx), 2)
        self.assertEqual(approx.thresholds, (1.0, 0.25))
        self.assertClose(approx.total(M3), diagonal(M3, 1.0, 1.0 / 0.3, 0.0))
        self.assertEqual(len(approximate_pseudoinverse(M3.zero())), 0)

    def test_approximate_pseudoinverse_of_general_element(self):
        a = random_element(M3, 8)
        approx = approximate_pseudoinverse(a)
        self.assertClose(approx.total(M3), pseudoinverse(a), atol=1e-7)
        for term in approx.terms:
            self.assertTrue(is_projection(term * a))


class DivisionTest(FdAlgTestCase):

    def test_divide_recovers_quotient(self):
        c = random_element(M3, 1)
        b = rank_deficient(M3, 2)
        q = divide(c * b, b)
        self.assertClose(q * b, c * b, atol=1e-7)
        self.assertClose(q, c * range_projection(b), atol=1e-7)

    def test_division_undefined(self):
        with self.assertRaises(DivisionUndefined):
            divide(E11, E22)
        with self.assertRaises(DivisionUndefined):
            left_divide(E22, E11)
        with self.assertRaises(AlgebraMismatch):
            divide(E11, C2.unit())

    def test_left_divide(self):
        c = random_element(M3, 3)
        b = rank_deficient(M3, 5)
        q = left_divide(b, b * c)
        self.assertClose(b * q, b * c, atol=1e-7)
        self.assertClose(q, support(b) * c, atol=1e-7)

    def test_sandwich(self):
        x = random_element(M2C, 6)
        c = random_element(M2C, 7)
        b = random_element(M2C, 9)
        self.assertClose(sandwich(c, c * x * b, b), x, atol=1e-6)
        with self.assertRaises(DivisionUndefined):
            sandwich(E22, E11, M2.unit())

    def test_douglas_bound(self):
        b = random_element(M2, 12)
        self.assertAlmostEqual(douglas_bound(2 * b, b), 2.0)
        self.assertIsNone(douglas_bound(E11, E22))
        self.assertEqual(douglas_bound(M2.zero(), E22), 0.0)
        self.assertAlmostEqual(douglas_bound(0.5 * E11, E11 + 3 * E22), 0.5)

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_douglas_bound_is_tight(self, seed):
        a = random_element(M3, seed)
        b = random_element(M3, seed + 1)
        bound = douglas_bound(a, b)
        self.assertIsNotNone(bound)
        gap = bound ** 2 * adjoint(b) * b - adjoint(a) * a
        self.assertTrue(is_positive(gap, None))


class PolarTest(FdAlgTestCase):

    def test_nilpotent(self):
        parts = polar(m2([[0, 2], [0, 0]]))
        self.assertClose(parts.modulus, diagonal(M2, 0.0, 2.0))
        self.assertClose(parts.isometry, m2([[0, 1], [0, 0]]))

    @settings(max_examples=30, deadline=None)
    @given(alg=small_algebras, seed=seeds)
    def test_polar_decomposition(self, alg, seed):
        a = rank_deficient(alg, seed)
        parts = polar(a)
        u = parts.isometry
        self.assertClose(u * parts.modulus, a, atol=1e-7)
        self.assertTrue(is_positive(parts.modulus))
        self.assertClose(adjoint(u) * u, support(a), atol=1e-7)


class SequentialQuotientTest(FdAlgTestCase):

    def test_recovers_factor(self):
        b = random_positive(M3, 3)
        c = random_positive(M3, 4)
        root = sqrt(b)
        self.assertClose(seq_quotient(root * c * root, b), c, atol=1e-6)

    def test_undefined(self):
        with self.assertRaises(QuotientUndefined):
            seq_quotient(E11, E22)
        with self.assertRaises(NotPositive):
            seq_quotient(m2([[0, 1], [0, 0]]), E22)

    def test_support_is_bounded(self):
        b = element(M2C, np.diag([1.0, 0.0]), [[4.0]])
        a = element(M2C, np.diag([0.5, 0.0]), [[2.0]])
        c = seq_quotient(a, b)
        self.assertClose(c, element(M2C, np.diag([0.5, 0.0]), [[0.5]]))
