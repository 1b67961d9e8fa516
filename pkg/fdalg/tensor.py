#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Tensor products of algebras, elements and maps.

The tensor product of M_{n_1}+...+M_{n_K} and M_{m_1}+...+M_{m_L} has the
blocks M_{n_i m_j} in lexicographic (i, j) order, and a⊗b has block
``np.kron(a_i, b_j)`` at (i, j), i.e.
``(a⊗b)[r*m + s, r'*m + s'] = a[r, r'] * b[s, s']``.

Matrix units of a product are tensors of matrix units, so every map on a
product is assembled from its values on simple tensors of basis elements.
"""
import logging
from dataclasses import dataclass

import numpy as np

from fdalg import settings
from fdalg.algebra import (Element, FdAlgebra, approx_equal, direct_sum,
    direct_sum_elements, get_tolerance, is_positive, operator_norm)
from fdalg.exceptions import AlgebraMismatch, NotCommutative, PropertyFailure
from fdalg.generators import (random_element, random_vector,
    rank_one_positive, rng_from)
from fdalg.maps import (COMPLEX, compose, identity_map, is_positive_map,
    is_subunital, make_map, map_equal, map_from_function)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TensorStructure:
    left: FdAlgebra
    right: FdAlgebra
    product: FdAlgebra
    block_index: dict

    def split(self, block, row, col):
        """Matrix unit ``(block, row, col)`` of the product as a pair of
        matrix units of the factors."""
        i, j = divmod(block, self.right.num_blocks)
        m = self.right.dims[j]
        (r, s), (rr, ss) = divmod(row, m), divmod(col, m)
        return (i, r, rr), (j, s, ss)


def tensor_algebra(A, B):
    index = {}
    dims = []
    for i, n in enumerate(A.dims):
        for j, m in enumerate(B.dims):
            index[(i, j)] = len(dims)
            dims.append(n * m)
    return TensorStructure(left=A, right=B, product=FdAlgebra(tuple(dims)),
                           block_index=index)


def tensor_elements(ts, a, b):
    if a.algebra != ts.left or b.algebra != ts.right:
        raise AlgebraMismatch("%r ⊗ %r does not fit %r ⊗ %r"
                              % (a.algebra, b.algebra, ts.left, ts.right))
    return Element(ts.product, [np.kron(x, y) for x in a.blocks
                                for y in b.blocks])


def _on_units(ts, cod, fn):
    """The map on ts.product sending E_x⊗E_y to fn(x, y), where x and y
    are the (block, row, col) indices of the factor units."""
    return make_map(ts.product, cod, [fn(*ts.split(*unit))
                                      for unit in ts.product.unit_indices()])


def _on_simple_tensors(ts, cod, fn):
    """The map on ts.product sending E_x⊗E_y to fn(E_x, E_y)."""
    return _on_units(ts, cod, lambda x, y: fn(ts.left.matrix_unit(*x),
                                              ts.right.matrix_unit(*y)))


def tensor_maps(ts_dom, ts_cod, f, g):
    """f⊗g with (f⊗g)(a⊗b) = f(a)⊗g(b)."""
    ts_dom = ts_dom or tensor_algebra(f.dom, g.dom)
    ts_cod = ts_cod or tensor_algebra(f.cod, g.cod)
    if (ts_dom.left, ts_dom.right) != (f.dom, g.dom) or \
            (ts_cod.left, ts_cod.right) != (f.cod, g.cod):
        raise AlgebraMismatch("tensor structures don't match %r and %r"
                              % (f, g))
    return _on_simple_tensors(
        ts_dom, ts_cod.product,
        lambda x, y: tensor_elements(ts_cod, f(x), g(y)))


def tensor_functionals(sigma, tau):
    """σ⊗τ, the product functional with (σ⊗τ)(a⊗b) = σ(a)τ(b)."""
    return tensor_maps(None, None, sigma, tau)


def _tensor(f, g):
    return tensor_maps(None, None, f, g)


# monoidal structure

def associator(A, B, C):
    """α: A⊗(B⊗C) → (A⊗B)⊗C."""
    bc = tensor_algebra(B, C)
    ab = tensor_algebra(A, B)
    target = tensor_algebra(ab.product, C)

    def image(x, y):
        b, c = bc.split(*y)
        left = tensor_elements(ab, A.matrix_unit(*x), B.matrix_unit(*b))
        return tensor_elements(target, left, C.matrix_unit(*c))

    return _on_units(tensor_algebra(A, bc.product), target.product, image)


def braiding(A, B):
    """γ: A⊗B → B⊗A, a⊗b ↦ b⊗a."""
    ts, swapped = tensor_algebra(A, B), tensor_algebra(B, A)
    return _on_simple_tensors(ts, swapped.product,
                              lambda a, b: tensor_elements(swapped, b, a))


def unitors(A):
    """(λ_A: C⊗A → A, ϱ_A: A⊗C → A)."""
    left = _on_simple_tensors(tensor_algebra(COMPLEX, A), A,
                              lambda z, a: a * z.blocks[0][0, 0])
    right = _on_simple_tensors(tensor_algebra(A, COMPLEX), A,
                               lambda a, z: a * z.blocks[0][0, 0])
    return left, right


def distributor(A, Bs):
    """A⊗(B_1+...+B_K) → A⊗B_1 + ... + A⊗B_K, a⊗(b_k)_k ↦ (a⊗b_k)_k."""
    Bs = list(Bs)
    parts = [tensor_algebra(A, B) for B in Bs]
    owner = []
    for k, B in enumerate(Bs):
        owner.extend((k, local) for local in range(B.num_blocks))

    def image(x, y):
        j, s, ss = y
        k, local = owner[j]
        pieces = [part.product.zero() for part in parts]
        pieces[k] = tensor_elements(parts[k], A.matrix_unit(*x),
                                    Bs[k].matrix_unit(local, s, ss))
        return direct_sum_elements(*pieces)

    return _on_units(tensor_algebra(A, direct_sum(*Bs)),
                     direct_sum(*[p.product for p in parts]), image)


def _simple_tensors(algebras, samples, seed):
    rng = rng_from(seed)
    for _ in range(samples):
        factors = [random_element(alg, rng) for alg in algebras]
        out = factors[-1]
        for factor in reversed(factors[:-1]):
            out = tensor_elements(tensor_algebra(factor.algebra, out.algebra),
                                  factor, out)
        yield out


def _residual(f, g, points):
    worst = 0.0
    for x in points:
        worst = max(worst, operator_norm(f(x) - g(x)))
    return worst


def check_pentagon(A, B, C, D, samples=50, seed=None):
    """Largest disagreement of the two ways from A⊗(B⊗(C⊗D)) to
    ((A⊗B)⊗C)⊗D on random simple tensors."""
    seed = settings.DEFAULT_SEED if seed is None else seed
    AB = tensor_algebra(A, B).product
    CD = tensor_algebra(C, D).product
    BC = tensor_algebra(B, C).product
    top = compose(associator(AB, C, D), associator(A, B, CD))
    bottom = compose(_tensor(associator(A, B, C), identity_map(D)),
                     compose(associator(A, BC, D),
                             _tensor(identity_map(A), associator(B, C, D))))
    return _residual(top, bottom, _simple_tensors([A, B, C, D], samples, seed))


def check_triangle(A, B, samples=50, seed=None):
    """(ϱ_A⊗id)∘α = id⊗λ_B on A⊗(C⊗B), and λ_C = ϱ_C."""
    seed = settings.DEFAULT_SEED if seed is None else seed
    right_a = unitors(A)[1]
    left_b = unitors(B)[0]
    top = compose(_tensor(right_a, identity_map(B)),
                  associator(A, COMPLEX, B))
    bottom = _tensor(identity_map(A), left_b)
    worst = _residual(top, bottom,
                      _simple_tensors([A, COMPLEX, B], samples, seed))
    left_c, right_c = unitors(COMPLEX)
    return max(worst, float(np.abs(left_c.matrix - right_c.matrix).max()))


def check_hexagon(A, B, C, samples=50, seed=None):
    """Largest disagreement over both hexagons on random simple tensors."""
    seed = settings.DEFAULT_SEED if seed is None else seed
    AB = tensor_algebra(A, B).product
    BC = tensor_algebra(B, C).product
    first_top = compose(associator(C, A, B),
                        compose(braiding(AB, C), associator(A, B, C)))
    first_bottom = compose(_tensor(braiding(A, C), identity_map(B)),
                           compose(associator(A, C, B),
                                   _tensor(identity_map(A), braiding(B, C))))
    worst = _residual(first_top, first_bottom,
                      _simple_tensors([A, B, C], samples, seed))
    inv = lambda X, Y, Z: associator(X, Y, Z).inverse()
    second_top = compose(inv(B, C, A),
                         compose(braiding(A, BC), inv(A, B, C)))
    second_bottom = compose(_tensor(identity_map(B), braiding(A, C)),
                            compose(inv(B, A, C),
                                    _tensor(braiding(A, B), identity_map(C))))
    rng = rng_from(seed)
    points = []
    for _ in range(samples):
        a, b, c = (random_element(X, rng) for X in (A, B, C))
        ab = tensor_elements(tensor_algebra(A, B), a, b)
        points.append(tensor_elements(tensor_algebra(AB, C), ab, c))
    return max(worst, _residual(second_top, second_bottom, points))


# duplicators and classical points

def multiplication_map(A):
    """a⊗b ↦ ab on A⊗A."""
    return _on_simple_tensors(tensor_algebra(A, A), A, lambda a, b: a * b)


def is_duplicable(A):
    return A.is_commutative


def duplicator(A, tol=None):
    """The duplicator on A when A is classical, else None."""
    tol = get_tolerance(tol)
    if not is_duplicable(A):
        return None
    delta = multiplication_map(A)
    ts = tensor_algebra(A, A)
    one = A.unit()
    for a in A.basis():
        if not (approx_equal(delta(tensor_elements(ts, a, one)), a, tol)
                and approx_equal(delta(tensor_elements(ts, one, a)), a, tol)):
            raise PropertyFailure("multiplication violates a unit law",
                                  witness=a)
    if not (is_positive_map(delta, tol=tol).positive and is_subunital(delta, tol)):
        raise PropertyFailure("multiplication on a classical algebra is not psu")
    return delta


def duplicator_witness(A, samples=None, seed=None, tol=None):
    """A rank-one positive t of A⊗A whose product image is not positive,
    or None when none turns up among ``samples`` draws."""
    tol = get_tolerance(tol)
    samples = settings.DUPLICATOR_WITNESS_SAMPLES if samples is None else samples
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = rng_from(seed)
    product = tensor_algebra(A, A).product
    if product.is_trivial:
        return None
    delta = multiplication_map(A)
    for _ in range(samples):
        block = int(rng.integers(0, product.num_blocks))
        t = rank_one_positive(product, block,
                              random_vector(rng, product.dims[block]))
        if not is_positive(delta(t), tol):
            return t
    logger.debug("no duplicator witness among %d samples", samples)
    return None


def nsp(A):
    """Indices of the one-dimensional blocks, i.e. the miu functionals."""
    return [i for i, n in enumerate(A.dims) if n == 1]


def bang(A):
    return FdAlgebra((1,) * len(nsp(A)))


def bang_unit(A):
    """η: A → ℓ∞(nsp A), reading off the one-dimensional blocks."""
    points = nsp(A)
    target = bang(A)
    return map_from_function(
        A, target, lambda a: Element(target, [a.blocks[i] for i in points]))


def bang_section(A):
    """The linear section ℓ∞(nsp A) → A placing values in the
    one-dimensional blocks."""
    points = nsp(A)

    def place(x):
        blocks = [np.zeros((n, n)) for n in A.dims]
        for k, i in enumerate(points):
            blocks[i] = x.blocks[k]
        return Element(A, blocks)

    return map_from_function(bang(A), A, place)


def factor_through_bang(f, tol=None):
    """The unique g with f = g∘η for an miu map f into a classical algebra."""
    if not f.cod.is_commutative:
        raise NotCommutative("%r is not classical" % f.cod)
    g = compose(f, bang_section(f.dom))
    if not map_equal(compose(g, bang_unit(f.dom)), f, tol):
        raise PropertyFailure("%r does not factor through the unit" % f)
    return g


