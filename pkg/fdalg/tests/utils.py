# -*- coding: utf-8 -*-
"""
Shared fixtures, assertions and independent oracles for the test suite.
"""
import unittest

import numpy as np
import scipy.linalg
from hypothesis import strategies as st

from fdalg.algebra import Element, FdAlgebra, operator_norm

C1 = FdAlgebra((1,))
C2 = FdAlgebra((1, 1))
C3 = FdAlgebra((1, 1, 1))
M2 = FdAlgebra((2,))
M3 = FdAlgebra((3,))
M4 = FdAlgebra((4,))
M2C = FdAlgebra((2, 1))
M2M2 = FdAlgebra((2, 2))

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
small_algebras = st.sampled_from([C2, M2, M3, M2C])


def element(alg, *blocks):
    return Element(alg, [np.array(b, dtype=complex) for b in blocks])


def m2(rows):
    return element(M2, rows)


def diagonal(alg, *values):
    """Element of a one-block algebra with the given diagonal."""
    return element(alg, np.diag(values))


# oracles computed with different numerical routes than the library

def oracle_sqrt(x):
    return scipy.linalg.sqrtm(x)


def oracle_range(x, rcond=1e-9):
    """Projection onto the column space of x."""
    basis = scipy.linalg.orth(x, rcond=rcond)
    return basis @ basis.conj().T


def oracle_sqrt_iterative(x, iterations=200):
    """√x from b ↦ ½(1 - x/|x| + b²), which converges to 1 - √(x/|x|)."""
    scale = np.linalg.norm(x, 2)
    if not scale:
        return np.zeros_like(x)
    unit = np.eye(len(x))
    shifted = unit - x / scale
    b = np.zeros_like(shifted)
    for _ in range(iterations):
        b = 0.5 * (shifted + b @ b)
    return np.sqrt(scale) * (unit - b)


def oracle_floor(x, squarings=12):
    """lim x^(2^k) for an effect x whose eigenvalues are 1 or well below."""
    for _ in range(squarings):
        x = x @ x
        x = 0.5 * (x + x.conj().T)
    return x


def element_oracle(fn, a):
    return Element(a.algebra, [fn(x) for x in a.blocks])


class FdAlgTestCase(unittest.TestCase):

    def assertClose(self, a, b, atol=1e-8, msg=None):
        self.assertEqual(a.algebra, b.algebra, msg)
        scale = max(1.0, operator_norm(a), operator_norm(b))
        distance = operator_norm(a - b)
        if distance > atol * scale:
            self.fail(msg or "elements differ by %g:\n%r\n%r" % (distance, a, b))

    def assertMapClose(self, f, g, atol=1e-8, msg=None):
        self.assertEqual((f.dom, f.cod), (g.dom, g.cod), msg)
        if not f.matrix.size:
            return
        distance = np.linalg.norm(f.matrix - g.matrix, 2)
        scale = max(1.0, np.linalg.norm(f.matrix, 2))
        if distance > atol * scale:
            self.fail(msg or "maps differ by %g" % distance)

    def assertZero(self, a, atol=1e-8):
        self.assertLessEqual(operator_norm(a), atol)
