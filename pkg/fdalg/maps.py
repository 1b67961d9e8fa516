#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Linear maps between finite-dimensional algebras.

A :class:`LinMap` stores the matrix of its action on canonical
coordinates, so composition is a matrix product and every structural
property (unital, multiplicative, positive, completely positive, ...) is
computed from the stored images rather than recorded on construction.

Complete positivity is decided blockwise by Choi elements: f is CP iff
each restriction f∘κ_i: M_{n_i} → cod is, iff the element (f(E_jk))_jk of
M_{n_i}(cod) is positive.  Positivity of non-CP maps between noncommutative
algebras is only sampled; see :func:`is_positive_map`.

Normality is vacuous in finite dimension; all positive maps are normal.
"""
import logging
from dataclasses import dataclass

import numpy as np

from fdalg import settings
from fdalg.algebra import (Element, FdAlgebra, adjoint, approx_equal,
    get_tolerance, hermitian_blocks, is_positive, leq, operator_norm,
    real_part)
from fdalg.exceptions import (AlgebraMismatch, NotPositive, PreconditionError,
    ShapeMismatch)
from fdalg.generators import (random_density, random_matrix, random_vector,
    rank_one_positive, rng_from)
from fdalg.projections import (ceiling, central_support, orthocomplement,
    require_projection, sample_projections)
from fdalg.spectral import power

logger = logging.getLogger(__name__)

COMPLEX = FdAlgebra((1,))


class LinMap(object):
    __slots__ = ('dom', 'cod', 'matrix')

    def __init__(self, dom, cod, matrix):
        matrix = np.array(matrix, dtype=complex)
        if matrix.shape != (cod.dim, dom.dim):
            raise ShapeMismatch("map %r -> %r needs a %dx%d matrix, got %r"
                                % (dom, cod, cod.dim, dom.dim, matrix.shape))
        matrix.setflags(write=False)
        object.__setattr__(self, 'dom', dom)
        object.__setattr__(self, 'cod', cod)
        object.__setattr__(self, 'matrix', matrix)

    def __setattr__(self, name, value):
        raise AttributeError("LinMap is immutable")

    def __repr__(self):
        return "LinMap(%r -> %r)" % (self.dom, self.cod)

    def __call__(self, a):
        return self.cod.element(self.matrix @ self.dom.coordinates(a))

    def images(self):
        return [self.cod.element(c) for c in self.matrix.T]

    def _check_parallel(self, other):
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise AlgebraMismatch("maps %r and %r are not parallel"
                                  % (self, other))

    def __add__(self, other):
        self._check_parallel(other)
        return LinMap(self.dom, self.cod, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check_parallel(other)
        return LinMap(self.dom, self.cod, self.matrix - other.matrix)

    def __neg__(self):
        return LinMap(self.dom, self.cod, -self.matrix)

    def __mul__(self, scalar):
        return LinMap(self.dom, self.cod, scalar * self.matrix)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return compose(self, other)

    def inverse(self, tol=None):
        tol = get_tolerance(tol)
        if self.dom.dim != self.cod.dim:
            raise PreconditionError("%r is not bijective" % self)
        if self.dom.dim and (np.linalg.svd(self.matrix, compute_uv=False)[-1]
                             < tol.snap_eps * max(1.0, np.linalg.norm(self.matrix, 2))):
            raise PreconditionError("%r is singular" % self)
        return LinMap(self.cod, self.dom, np.linalg.inv(self.matrix)
                      if self.dom.dim else self.matrix.T)


def make_map(dom, cod, images):
    images = list(images)
    if len(images) != dom.dim:
        raise ShapeMismatch("%r needs %d basis images, got %d"
                            % (dom, dom.dim, len(images)))
    if not images:
        return LinMap(dom, cod, np.zeros((cod.dim, 0)))
    return LinMap(dom, cod, np.column_stack([cod.coordinates(x) for x in images]))


def map_from_function(dom, cod, fn):
    return make_map(dom, cod, [fn(e) for e in dom.basis()])


def compose(g, f):
    """g∘f."""
    if f.cod != g.dom:
        raise AlgebraMismatch("can't compose %r after %r" % (g, f))
    return LinMap(f.dom, g.cod, g.matrix @ f.matrix)


def map_equal(f, g, tol=None):
    tol = get_tolerance(tol)
    f._check_parallel(g)
    if not f.matrix.size:
        return True
    return tol.close(np.linalg.norm(f.matrix - g.matrix, 2),
                     max(np.linalg.norm(f.matrix, 2), np.linalg.norm(g.matrix, 2)))


# constructors

def identity_map(alg):
    return LinMap(alg, alg, np.eye(alg.dim))


def zero_map(dom, cod):
    return LinMap(dom, cod, np.zeros((cod.dim, dom.dim)))


def conjugation(v):
    """a ↦ v* a v."""
    vd = adjoint(v)
    return map_from_function(v.algebra, v.algebra, lambda a: vd * a * v)


def kraus_map(dom, cod, ops):
    """f(a)_j = Σ K* a_i K over triples (i, j, K) with K of shape n_i × m_j."""
    ops = [(i, j, np.asarray(k, dtype=complex)) for i, j, k in ops]
    for i, j, k in ops:
        if k.shape != (dom.dims[i], cod.dims[j]):
            raise ShapeMismatch("Kraus operator %r for blocks (%d, %d)"
                                % (k.shape, i, j))

    def apply(a):
        blocks = [np.zeros((m, m), dtype=complex) for m in cod.dims]
        for i, j, k in ops:
            blocks[j] += k.conj().T @ a.blocks[i] @ k
        return Element(cod, blocks)

    return map_from_function(dom, cod, apply)


def transpose_map(alg):
    return map_from_function(alg, alg,
                             lambda a: Element(alg, [x.T for x in a.blocks]))


def block_projection(alg, index):
    """π_j: A → M_{n_j}."""
    target = FdAlgebra((alg.dims[index],))
    return map_from_function(alg, target,
                             lambda a: Element(target, [a.blocks[index]]))


def block_injection(alg, index):
    """κ_i: M_{n_i} → A, zero in the other blocks."""
    source = FdAlgebra((alg.dims[index],))

    def apply(a):
        blocks = [np.zeros((n, n)) for n in alg.dims]
        blocks[index] = a.blocks[0]
        return Element(alg, blocks)

    return map_from_function(source, alg, apply)


def functional_from_density(rho):
    """ω(a) = Σ tr(ρ_i a_i)."""
    row = np.concatenate([x.T.reshape(-1) for x in rho.blocks]) \
        if rho.blocks else np.zeros(0)
    return LinMap(rho.algebra, COMPLEX, row.reshape(1, -1))


def trace_functional(alg):
    return functional_from_density(alg.unit())


def vector_functional(alg, block, vector):
    """⟨x, (·)x⟩ on one block."""
    return functional_from_density(rank_one_positive(alg, block,
                                                     np.asarray(vector)))


def random_cp_map(dom, cod, seed, terms=2):
    """A random Kraus map with ``terms`` operators per pair of blocks."""
    rng = rng_from(seed)
    ops = [(i, j, random_matrix(rng, n, m))
           for i, n in enumerate(dom.dims)
           for j, m in enumerate(cod.dims)
           for _ in range(terms)]
    return kraus_map(dom, cod, ops)


def random_cpsu_map(dom, cod, seed, terms=2):
    f = random_cp_map(dom, cod, seed, terms)
    norm = operator_norm(f(dom.unit()))
    return f * (1.0 / norm) if norm else f


def random_cpu_map(dom, cod, seed, terms=2):
    """S^{-1/2} f(·) S^{-1/2} with S = f(1) for a random CP f."""
    f = random_cp_map(dom, cod, seed, terms)
    root = power(f(dom.unit()), -0.5)
    return compose(conjugation(root), f)


def random_state(alg, seed):
    return functional_from_density(random_density(alg, seed))


# structural predicates

def is_unital(f, tol=None):
    return approx_equal(f(f.dom.unit()), f.cod.unit(), tol)


def is_subunital(f, tol=None):
    return leq(f(f.dom.unit()), f.cod.unit(), tol)


def is_involutive(f, tol=None):
    return all(approx_equal(f(adjoint(e)), adjoint(f(e)), tol)
               for e in f.dom.basis())


def is_multiplicative(f, tol=None):
    basis = f.dom.basis()
    images = [f(e) for e in basis]
    for x, fx in zip(basis, images):
        for y, fy in zip(basis, images):
            if not approx_equal(f(x * y), fx * fy, tol):
                return False
    return True


def is_miu(f, tol=None):
    return (is_unital(f, tol) and is_involutive(f, tol)
            and is_multiplicative(f, tol))


@dataclass(frozen=True)
class ChoiBlock:
    """The Choi element (f(E_jk))_jk of f restricted to one domain block,
    as an element of M_{n_i}(cod) laid out with ``j`` as the outer index."""
    domain_block_index: int
    matrix: Element

    @property
    def min_eigenvalue(self):
        values = [np.linalg.eigvalsh(x)[0] for x in hermitian_blocks(self.matrix)
                  if x.size]
        return float(min(values)) if values else 0.0


def choi(f):
    out = []
    for i, n in enumerate(f.dom.dims):
        target = FdAlgebra(tuple(n * m for m in f.cod.dims))
        blocks = [np.zeros((n * m, n * m), dtype=complex) for m in f.cod.dims]
        for j in range(n):
            for k in range(n):
                image = f(f.dom.matrix_unit(i, j, k))
                for l, m in enumerate(f.cod.dims):
                    blocks[l][j * m:(j + 1) * m, k * m:(k + 1) * m] = image.blocks[l]
        out.append(ChoiBlock(domain_block_index=i,
                             matrix=Element(target, blocks)))
    return out


def is_completely_positive(f, tol=None):
    return all(is_positive(block.matrix, tol) for block in choi(f))


def _require_functional(omega):
    if omega.cod != COMPLEX:
        raise PreconditionError("a functional maps into C, not %r" % omega.cod)


def density(omega):
    """ρ with ω(a) = Σ tr(ρ_i a_i), i.e. ρ[k, j] = ω(E_jk)."""
    _require_functional(omega)
    values = omega.dom.element(omega.matrix[0])
    return Element(omega.dom, [x.T for x in values.blocks])


def is_positive_functional(omega, tol=None):
    return is_positive(density(omega), tol)


PROVEN_CP = 'ProvenCP'
LIKELY_POSITIVE = 'LikelyPositive'
NOT_POSITIVE = 'NotPositive'


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: object = None
    exact: bool = True

    @property
    def positive(self):
        return self.kind != NOT_POSITIVE


def _functional_witness(rho, tol):
    """A rank-one positive a with tr(ρa) not a non-negative real, or None."""
    scale = max(1.0, operator_norm(rho))
    for i, x in enumerate(rho.blocks):
        skew = (x - x.conj().T) / 2j
        w, v = np.linalg.eigh(skew)
        k = int(np.argmax(np.abs(w))) if w.size else 0
        if w.size and not tol.close(abs(w[k]), scale):
            return rank_one_positive(rho.algebra, i, v[:, k])
        w, v = np.linalg.eigh(0.5 * (x + x.conj().T))
        if w.size and w[0] < tol.positivity_floor(scale):
            return rank_one_positive(rho.algebra, i, v[:, 0])
    return None


def is_positive_map(f, samples=None, seed=None, tol=None):
    """Three-way positivity verdict.

    Exact when the domain or codomain is commutative (positive maps are
    then CP, so the Choi test decides) or when the Choi test passes;
    otherwise rank-one positives are sampled, so a :data:`LIKELY_POSITIVE`
    answer can be wrong.
    """
    tol = get_tolerance(tol)
    samples = settings.POSITIVITY_SAMPLES if samples is None else samples
    seed = settings.DEFAULT_SEED if seed is None else seed
    one = f.dom.unit()
    if not is_positive(f(one), tol):
        return Verdict(NOT_POSITIVE, witness=one)
    if is_completely_positive(f, tol):
        return Verdict(PROVEN_CP)
    if f.dom.is_commutative:
        for i in range(f.dom.num_blocks):
            point = f.dom.block_unit(i)
            if not is_positive(f(point), tol):
                return Verdict(NOT_POSITIVE, witness=point)
        return Verdict(NOT_POSITIVE)
    if f.cod.is_commutative:
        for row in f.matrix:
            rho = density(LinMap(f.dom, COMPLEX, row.reshape(1, -1)))
            witness = _functional_witness(rho, tol)
            if witness is not None:
                return Verdict(NOT_POSITIVE, witness=witness)
        return Verdict(NOT_POSITIVE)
    rng = rng_from(seed)
    for _ in range(samples):
        block = int(rng.integers(0, f.dom.num_blocks))
        candidate = rank_one_positive(f.dom, block,
                                      random_vector(rng, f.dom.dims[block]))
        if not is_positive(f(candidate), tol):
            return Verdict(NOT_POSITIVE, witness=candidate)
    logger.debug("no positivity violation among %d samples", samples)
    return Verdict(LIKELY_POSITIVE, exact=False)


def _carrier(f, tol):
    trace = map_from_function(f.cod, COMPLEX,
                              lambda a: COMPLEX.scalar(sum(np.trace(x) for x in a.blocks)))
    return ceiling(real_part(density(compose(trace, f))), tol)


def carrier(f, tol=None):
    """Least projection p with f(p⊥) = 0."""
    tol = get_tolerance(tol)
    verdict = is_positive_map(f, tol=tol)
    if not verdict.positive:
        raise NotPositive("carrier needs a positive map", witness=verdict.witness)
    return _carrier(f, tol)


def central_carrier(f, tol=None):
    return central_support(carrier(f, tol), tol)


def is_faithful(f, tol=None):
    return approx_equal(carrier(f, tol), f.dom.unit(), tol)


def diamond_fwd(f, e, tol=None):
    """f^◇(e) = ⌈f(e)⌉."""
    require_projection(e, tol)
    return ceiling(real_part(f(e)), tol)


def diamond_bwd(f, e, tol=None):
    """f_◇(e) = ⌈e f(·) e⌉, the carrier of a ↦ e f(a) e."""
    tol = get_tolerance(tol)
    require_projection(e, tol)
    return _carrier(compose(conjugation(e), f), tol)


def diamond_box(f, e, tol=None):
    """f^□(e) = f^◇(e⊥)⊥."""
    return orthocomplement(diamond_fwd(f, orthocomplement(e, tol), tol), tol)


def are_contraposed(f, g, samples=8, seed=None, tol=None):
    """f^◇ = g_◇ on a spanning family of projections plus random ones."""
    if (f.dom, f.cod) != (g.cod, g.dom):
        raise AlgebraMismatch("%r and %r can't be contraposed" % (f, g))
    seed = settings.DEFAULT_SEED if seed is None else seed
    return all(approx_equal(diamond_fwd(f, e, tol), diamond_bwd(g, e, tol), tol)
               for e in sample_projections(f.dom, samples, seed))


def are_equivalent(f, g, samples=8, seed=None, tol=None):
    """f^◇ = g^◇ on a spanning family of projections plus random ones."""
    f._check_parallel(g)
    seed = settings.DEFAULT_SEED if seed is None else seed
    return all(approx_equal(diamond_fwd(f, e, tol), diamond_fwd(g, e, tol), tol)
               for e in sample_projections(f.dom, samples, seed))
