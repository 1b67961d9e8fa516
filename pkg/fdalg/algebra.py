#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Finite direct sums of full matrix algebras and their elements.

An :class:`FdAlgebra` is determined by its block dimensions
``(n_1, ..., n_K)``; it stands for M_{n_1} + ... + M_{n_K}.  The empty list
is the trivial algebra {0}, and ``(1, 1)`` is the classical bit algebra.

An :class:`Element` holds one dense complex matrix per block.  Elements are
immutable: their block arrays are flagged read-only and every operation
returns a new element.

The canonical basis of an algebra is its list of matrix units, ordered
block-major and row-major within a block; :meth:`FdAlgebra.coordinates`
and :meth:`FdAlgebra.element` convert between elements and coordinate
vectors in that basis.
"""
import logging
import numbers
from dataclasses import dataclass, replace

import numpy as np

from fdalg import settings
from fdalg.exceptions import (AlgebraMismatch, ConfigurationError,
    InvalidDimensions, ShapeMismatch)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds for positivity, equality and snapping."""
    eps_rel: float = 1e-9
    eps_abs: float = 1e-12
    snap_eps: float = 1e-7

    def __post_init__(self):
        if min(self.eps_rel, self.eps_abs, self.snap_eps) <= 0:
            raise ConfigurationError("tolerances must be strictly positive")
        if self.snap_eps < self.eps_rel:
            raise ConfigurationError(
                "snap_eps (%g) must not be below eps_rel (%g)"
                % (self.snap_eps, self.eps_rel))

    @classmethod
    def default(cls):
        return cls(eps_rel=settings.EPS_REL, eps_abs=settings.EPS_ABS,
                   snap_eps=settings.SNAP_EPS)

    def with_eps_rel(self, eps_rel):
        return replace(self, eps_rel=eps_rel,
                       snap_eps=max(self.snap_eps, eps_rel))

    def close(self, distance, scale):
        return distance <= self.eps_abs + self.eps_rel * scale

    def positivity_floor(self, norm):
        return -self.eps_rel * max(1.0, norm)


def get_tolerance(tol=None):
    return tol if tol is not None else ToleranceConfig.default()


@dataclass(frozen=True)
class FdAlgebra:
    dims: tuple

    def __post_init__(self):
        dims = []
        for n in self.dims:
            if isinstance(n, bool) or int(n) != n or n < 1:
                raise InvalidDimensions(
                    "block dimensions must be positive integers, got %r"
                    % (list(self.dims),))
            dims.append(int(n))
        object.__setattr__(self, 'dims', tuple(dims))

    def __repr__(self):
        return "FdAlgebra(%r)" % (list(self.dims),)

    def __str__(self):
        if not self.dims:
            return "{0}"
        return " + ".join("M%d" % n for n in self.dims)

    @property
    def num_blocks(self):
        return len(self.dims)

    @property
    def dim(self):
        """Linear dimension."""
        return sum(n * n for n in self.dims)

    @property
    def offsets(self):
        out, total = [], 0
        for n in self.dims:
            out.append(total)
            total += n * n
        return tuple(out)

    @property
    def is_commutative(self):
        return all(n == 1 for n in self.dims)

    @property
    def is_trivial(self):
        return not self.dims

    def zero(self):
        return Element(self, [np.zeros((n, n)) for n in self.dims])

    def unit(self):
        return Element(self, [np.eye(n) for n in self.dims])

    def scalar(self, value):
        return Element(self, [value * np.eye(n) for n in self.dims])

    def block_unit(self, index):
        """The central projection onto one block."""
        return Element(self, [np.eye(n) if i == index else np.zeros((n, n))
                              for i, n in enumerate(self.dims)])

    def basis_index(self, block, row, col):
        n = self.dims[block]
        return self.offsets[block] + row * n + col

    def unit_indices(self):
        """Yield ``(block, row, col)`` for the canonical basis in order."""
        for i, n in enumerate(self.dims):
            for r in range(n):
                for c in range(n):
                    yield i, r, c

    def matrix_unit(self, block, row, col):
        blocks = [np.zeros((n, n)) for n in self.dims]
        blocks[block][row, col] = 1.0
        return Element(self, blocks)

    def basis(self):
        return [self.matrix_unit(*idx) for idx in self.unit_indices()]

    def coordinates(self, a):
        if a.algebra != self:
            raise AlgebraMismatch("element of %r used in %r" % (a.algebra, self))
        if not self.dims:
            return np.zeros(0, dtype=complex)
        return np.concatenate([b.reshape(-1) for b in a.blocks])

    def element(self, vector):
        vector = np.asarray(vector, dtype=complex).reshape(-1)
        if vector.shape[0] != self.dim:
            raise ShapeMismatch("expected %d coordinates for %r, got %d"
                                % (self.dim, self, vector.shape[0]))
        blocks = []
        for offset, n in zip(self.offsets, self.dims):
            blocks.append(vector[offset:offset + n * n].reshape(n, n))
        return Element(self, blocks)


def make_algebra(dims):
    return FdAlgebra(tuple(dims))


def direct_sum(*algebras):
    dims = []
    for alg in algebras:
        dims.extend(alg.dims)
    return FdAlgebra(tuple(dims))


class Element(object):
    __slots__ = ('algebra', 'blocks')

    def __init__(self, algebra, blocks):
        blocks = tuple(np.array(b, dtype=complex) for b in blocks)
        if len(blocks) != algebra.num_blocks:
            raise ShapeMismatch("%r has %d blocks, got %d"
                                % (algebra, algebra.num_blocks, len(blocks)))
        for b, n in zip(blocks, algebra.dims):
            if b.shape != (n, n):
                raise ShapeMismatch("block of shape %r where %r expected"
                                    % (b.shape, (n, n)))
            b.setflags(write=False)
        object.__setattr__(self, 'algebra', algebra)
        object.__setattr__(self, 'blocks', blocks)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def __repr__(self):
        return "Element(%r, %r)" % (self.algebra,
                                    [b.tolist() for b in self.blocks])

    def block(self, index):
        return self.blocks[index]

    def coordinates(self):
        return self.algebra.coordinates(self)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scalar_mul(-1, other))

    def __neg__(self):
        return scalar_mul(-1, self)

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return scalar_mul(other, self)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return scalar_mul(other, self)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Number):
            return scalar_mul(1.0 / other, self)
        return NotImplemented

    def adjoint(self):
        return adjoint(self)

    def real_part(self):
        return real_part(self)

    def imag_part(self):
        return imag_part(self)

    def norm(self):
        return operator_norm(self)


def _check_same(a, b):
    if a.algebra != b.algebra:
        raise AlgebraMismatch("operands live in %r and %r"
                              % (a.algebra, b.algebra))


def add(a, b):
    _check_same(a, b)
    return Element(a.algebra, [x + y for x, y in zip(a.blocks, b.blocks)])


def scalar_mul(scalar, a):
    return Element(a.algebra, [scalar * x for x in a.blocks])


def mul(a, b):
    _check_same(a, b)
    return Element(a.algebra, [x @ y for x, y in zip(a.blocks, b.blocks)])


def adjoint(a):
    return Element(a.algebra, [x.conj().T for x in a.blocks])


def real_part(a):
    return Element(a.algebra, [0.5 * (x + x.conj().T) for x in a.blocks])


def imag_part(a):
    return Element(a.algebra, [(x - x.conj().T) / 2j for x in a.blocks])


def commutator(a, b):
    return mul(a, b) - mul(b, a)


def orthosupplement(a):
    """a⊥ = 1 - a."""
    return a.algebra.unit() - a


def trace(a):
    return complex(sum(np.trace(x) for x in a.blocks))


def direct_sum_elements(*elements):
    alg = direct_sum(*[a.algebra for a in elements])
    blocks = []
    for a in elements:
        blocks.extend(a.blocks)
    return Element(alg, blocks)


def operator_norm(a):
    """Largest singular value over all blocks (0 on the trivial algebra)."""
    norms = [np.linalg.norm(x, 2) for x in a.blocks if x.size]
    return float(max(norms)) if norms else 0.0


def approx_equal(a, b, tol=None):
    tol = get_tolerance(tol)
    _check_same(a, b)
    return tol.close(operator_norm(a - b),
                     max(operator_norm(a), operator_norm(b)))


def is_self_adjoint(a, tol=None):
    tol = get_tolerance(tol)
    return tol.close(operator_norm(a - adjoint(a)),
                     max(1.0, operator_norm(a)))


def hermitian_blocks(a):
    """Blocks of ½(a + a*), symmetrized for the Hermitian eigensolvers."""
    return [0.5 * (x + x.conj().T) for x in a.blocks]


def is_positive(a, tol=None):
    tol = get_tolerance(tol)
    if not is_self_adjoint(a, tol):
        return False
    floor = tol.positivity_floor(operator_norm(a))
    for x in hermitian_blocks(a):
        if np.linalg.eigvalsh(x)[0] < floor:
            return False
    return True


def leq(a, b, tol=None):
    """a <= b in the Loewner order."""
    return is_positive(b - a, tol)


def is_effect(a, tol=None):
    return is_positive(a, tol) and leq(a, a.algebra.unit(), tol)


def is_normal(a, tol=None):
    tol = get_tolerance(tol)
    ad = adjoint(a)
    return tol.close(operator_norm(ad * a - a * ad),
                     max(1.0, operator_norm(a) ** 2))


def is_unitary(a, tol=None):
    tol = get_tolerance(tol)
    one = a.algebra.unit()
    ad = adjoint(a)
    return (tol.close(operator_norm(ad * a - one), 1.0)
            and tol.close(operator_norm(a * ad - one), 1.0))
