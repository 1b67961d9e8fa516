#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Structure theory made algorithmic.

* :func:`generate_subalgebra` closes a set of generators under products and
  adjoints.
* :func:`wedderburn` writes a *-subalgebra S of an algebra A as a direct sum
  of full matrix algebras: a random self-adjoint central element splits S
  into factors, a random self-adjoint element of each factor yields its
  minimal projections, and partial isometries between those give matrix
  units.
* :func:`gns` realizes a positive functional as a vector functional of a
  representation.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from fdalg import settings
from fdalg.algebra import (Element, FdAlgebra, adjoint, get_tolerance,
    operator_norm, real_part)
from fdalg.exceptions import (AlgebraMismatch, ClosureViolated, NotCommutative,
    NotPositive, PropertyFailure)
from fdalg.generators import rng_from
from fdalg.maps import (LinMap, is_miu, is_positive_functional, make_map)
from fdalg.projections import Subspace, null_space
from fdalg.spectral import spectral_decomposition

logger = logging.getLogger(__name__)


def _orth(alg, elements, tol):
    if not elements:
        return np.zeros((alg.dim, 0), dtype=complex)
    stacked = np.column_stack([alg.coordinates(x) for x in elements])
    u, s, _ = np.linalg.svd(stacked, full_matrices=False)
    scale = max(1.0, float(np.linalg.norm(stacked, axis=0).max()))
    return u[:, s > tol.snap_eps * scale]


class StarSubalgebra(Subspace):
    """A unital *-subalgebra, verified on construction."""

    def __init__(self, ambient, columns, tol=None):
        super(StarSubalgebra, self).__init__(ambient, columns)
        if ambient.is_trivial:
            return
        if not self.contains(ambient.unit(), tol):
            raise ClosureViolated("a subalgebra must contain 1")
        if not self.is_star_closed(tol):
            raise ClosureViolated("not closed under adjoints")
        if not self.is_product_closed(tol):
            raise ClosureViolated("not closed under products")

    def __repr__(self):
        return "StarSubalgebra(%r, dim=%d)" % (self.ambient, self.dim)

    def is_commutative(self, tol=None):
        tol = get_tolerance(tol)
        basis = self.basis
        return all(tol.close(operator_norm(x * y - y * x), 1.0)
                   for x in basis for y in basis)


def make_subalgebra(ambient, elements, tol=None):
    """The span of ``elements``, which must already be a *-subalgebra."""
    tol = get_tolerance(tol)
    return StarSubalgebra(ambient, _orth(ambient, list(elements), tol), tol)


def generate_subalgebra(ambient, generators, tol=None):
    """Least unital *-subalgebra containing ``generators``."""
    tol = get_tolerance(tol)
    generators = list(generators)
    for g in generators:
        if g.algebra != ambient:
            raise AlgebraMismatch("%r is not an element of %r"
                                  % (g.algebra, ambient))
    elements = [ambient.unit()] + generators + [adjoint(g) for g in generators]
    columns = _orth(ambient, elements, tol)
    while True:
        basis = [ambient.element(c) for c in columns.T]
        products = basis + [x * y for x in basis for y in basis]
        grown = _orth(ambient, products, tol)
        if grown.shape[1] == columns.shape[1]:
            break
        columns = grown
    logger.debug("generated a subalgebra of dimension %d", columns.shape[1])
    return StarSubalgebra(ambient, columns, tol)


def centre_of(S, tol=None):
    """Z(S) = {z in S : zs = sz for all s in S} as a :class:`Subspace`."""
    tol = get_tolerance(tol)
    basis = S.basis
    alg = S.ambient
    if not basis:
        return Subspace(alg, np.zeros((alg.dim, 0)))
    rows = []
    for s in basis:
        rows.append(np.column_stack([alg.coordinates(b * s - s * b)
                                     for b in basis]))
    scale = max([1.0] + [operator_norm(b) for b in basis]) ** 2
    coefficients = null_space(np.vstack(rows), tol.snap_eps * scale)
    return Subspace(alg, S.columns @ coefficients)


def _combine(alg, columns, weights):
    return real_part(alg.element(columns @ weights))


def _eigenprojections(h, tol):
    """Spectral projections of a self-adjoint h, grouped across blocks."""
    radius = tol.snap_eps * max(1.0, operator_norm(h)) * 1e3
    groups = []
    for i, pieces in enumerate(spectral_decomposition(h, tol)):
        for value, proj in pieces:
            for group in groups:
                if abs(group[0] - value) <= radius:
                    group[1][i] = group[1][i] + proj
                    break
            else:
                blocks = [np.zeros((n, n), dtype=complex) for n in h.algebra.dims]
                blocks[i] = proj
                groups.append([value, blocks])
    groups.sort(key=lambda g: g[0])
    return [Element(h.algebra, blocks) for _, blocks in groups]


def _split(alg, columns, expected, within, rng, tol, what):
    """Projections from a random self-adjoint element of span(columns),
    cut down by ``within``; retried until there are ``expected`` of them."""
    k = columns.shape[1]
    attempts = settings.WEDDERBURN_RETRIES
    for attempt in range(attempts + 1):
        if attempt < attempts:
            weights = rng.standard_normal(k)
        else:
            weights = np.sqrt(np.arange(2, k + 2, dtype=float))
            logger.debug("falling back to a fixed %s splitter", what)
        h = within * _combine(alg, columns, weights) * within
        pieces = [within * p * within for p in _eigenprojections(h, tol)]
        pieces = [p for p in pieces
                  if operator_norm(p) > 0.5]
        if len(pieces) == expected:
            return pieces
        logger.debug("degenerate %s split (%d pieces, wanted %d), retrying",
                     what, len(pieces), expected)
    raise PropertyFailure("could not split %s into %d pieces" % (what, expected))


@dataclass(frozen=True)
class WedderburnDecomposition:
    """S ≅ M_{N_1} + ... + M_{N_k} inside its ambient algebra.

    ``embedding`` is the miu map from ``algebra`` onto S, and
    ``matrix_units[m][j][k]`` is the image of E_jk of the m-th factor.
    """
    dims: tuple
    algebra: FdAlgebra
    embedding: LinMap
    matrix_units: tuple
    central_projections: tuple

    def coordinates(self, s):
        """The preimage of s in S under the embedding."""
        blocks = []
        for units in self.matrix_units:
            n = len(units)
            x = np.zeros((n, n), dtype=complex)
            for j in range(n):
                for k in range(n):
                    e = units[j][k]
                    weight = sum(np.trace(b).real for b in units[k][k].blocks)
                    x[j, k] = sum(np.trace(u.conj().T @ v) for u, v
                                  in zip(e.blocks, s.blocks)) / weight
            blocks.append(x)
        return Element(self.algebra, blocks)


def wedderburn(S, seed=None, tol=None):
    tol = get_tolerance(tol)
    if not isinstance(S, StarSubalgebra):
        S = StarSubalgebra(S.ambient, S.columns, tol)
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = rng_from(seed)
    alg = S.ambient
    if alg.is_trivial:
        return WedderburnDecomposition((), FdAlgebra(()),
                                       make_map(FdAlgebra(()), alg, []), (), ())
    centre = centre_of(S, tol)
    one = alg.unit()
    centrals = _split(alg, centre.columns, centre.dim, one, rng, tol, 'centre')
    factors = []
    for z in centrals:
        factor = _orth(alg, [z * b for b in S.basis], tol)
        n = int(round(math.sqrt(factor.shape[1])))
        if n * n != factor.shape[1]:
            raise PropertyFailure("factor of dimension %d is not a full "
                                  "matrix algebra" % factor.shape[1], witness=z)
        minimal = _split(alg, factor, n, z, rng, tol, 'factor')
        first = minimal[0]
        isometries = [first]
        for e in minimal[1:]:
            candidates = [first * alg.element(c) * e for c in factor.T]
            x = max(candidates, key=operator_norm)
            isometries.append(x / operator_norm(x))
        units = tuple(tuple(adjoint(isometries[j]) * isometries[k]
                            for k in range(n)) for j in range(n))
        factors.append((_first_index(z), n, units, z))
    factors.sort(key=lambda f: f[0])
    dims = tuple(n for _, n, _, _ in factors)
    target = FdAlgebra(dims)
    images = []
    for _, n, units, _ in factors:
        images.extend(units[j][k] for j in range(n) for k in range(n))
    decomposition = WedderburnDecomposition(
        dims=dims, algebra=target, embedding=make_map(target, alg, images),
        matrix_units=tuple(units for _, _, units, _ in factors),
        central_projections=tuple(z for _, _, _, z in factors))
    _verify(S, decomposition, tol)
    return decomposition


def _verify(S, decomposition, tol):
    if sum(n * n for n in decomposition.dims) != S.dim:
        raise PropertyFailure("factors of dimensions %r do not fill a "
                              "subalgebra of dimension %d"
                              % (decomposition.dims, S.dim))
    if not is_miu(decomposition.embedding, tol):
        raise PropertyFailure("the recovered embedding is not miu")
    for image in decomposition.embedding.images():
        if not S.contains(image, tol):
            raise PropertyFailure("a matrix unit lies outside the subalgebra",
                                  witness=image)


def _first_index(z):
    diagonal = np.concatenate([np.diag(x).real for x in z.blocks])
    return int(np.argmax(diagonal > 0.5))


@dataclass(frozen=True)
class GelfandResult:
    points: int
    decomposition: WedderburnDecomposition

    @property
    def embedding(self):
        return self.decomposition.embedding

    def characters(self, s):
        """The values of the characters of S at s."""
        x = self.decomposition.coordinates(s)
        return tuple(complex(b[0, 0]) for b in x.blocks)


def gelfand_finite(S, seed=None, tol=None):
    """S ≅ ℓ∞(points) for a commutative S."""
    if not isinstance(S, StarSubalgebra):
        S = StarSubalgebra(S.ambient, S.columns, tol)
    if not S.is_commutative(tol):
        raise NotCommutative("Gelfand representation needs a commutative algebra")
    decomposition = wedderburn(S, seed, tol)
    if any(n != 1 for n in decomposition.dims):
        raise PropertyFailure("commutative algebra with a non-trivial factor")
    return GelfandResult(points=len(decomposition.dims),
                         decomposition=decomposition)


@dataclass(frozen=True)
class GnsResult:
    """η(a) = ``eta @ coordinates(a)`` in C^d, and ρ = ``rep``."""
    state: LinMap
    hilbert_dim: int
    eta: np.ndarray
    rep: LinMap

    def vector(self, a):
        return self.eta @ self.state.dom.coordinates(a)

    def residuals(self):
        """Largest errors of ⟨η(a), η(b)⟩ = ω(a*b) and ρ(a)η(b) = η(ab)
        over the canonical basis."""
        alg = self.state.dom
        basis = alg.basis()
        vectors = [self.vector(b) for b in basis]
        inner = action = 0.0
        for a, va in zip(basis, vectors):
            image = self.rep(a)
            matrix = image.blocks[0] if image.blocks else np.zeros((0, 0))
            for b, vb in zip(basis, vectors):
                value = self.state(adjoint(a) * b).blocks[0][0, 0]
                inner = max(inner, abs(np.vdot(va, vb) - value))
                action = max(action, np.linalg.norm(matrix @ vb
                                                    - self.vector(a * b)))
        return {'inner_product': float(inner), 'intertwining': float(action)}


def gns(omega, tol=None):
    tol = get_tolerance(tol)
    if not is_positive_functional(omega, tol):
        raise NotPositive("GNS needs a positive functional")
    alg = omega.dom
    basis = alg.basis()
    gram = np.array([[omega(adjoint(x) * y).blocks[0][0, 0] for y in basis]
                     for x in basis])
    gram = 0.5 * (gram + gram.conj().T)
    w, v = np.linalg.eigh(gram) if alg.dim else (np.zeros(0), np.zeros((0, 0)))
    keep = w > tol.snap_eps * max(1.0, np.abs(w).max() if w.size else 0.0)
    w, v = w[keep], v[:, keep]
    d = int(w.size)
    eta = np.sqrt(w)[:, None] * v.conj().T
    lift = v / np.sqrt(w)[None, :]
    space = FdAlgebra((d,)) if d else FdAlgebra(())

    def represent(a):
        if not d:
            return Element(space, [])
        left = np.column_stack([alg.coordinates(a * b) for b in basis])
        return Element(space, [eta @ left @ lift])

    rep = make_map(alg, space, [represent(b) for b in basis])
    logger.debug("GNS space of dimension %d", d)
    return GnsResult(state=omega, hilbert_dim=d, eta=eta, rep=rep)


def check_gns(result, tol=None):
    """Raise :class:`PropertyFailure` unless the GNS invariants hold."""
    tol = get_tolerance(tol)
    worst = result.residuals()
    scale = max(1.0, float(np.abs(result.state.matrix).max(initial=0.0)))
    for name, value in worst.items():
        if not tol.close(value, scale):
            raise PropertyFailure("GNS %s residual %.3g" % (name, value))
    if result.hilbert_dim and not is_miu(result.rep, tol):
        raise PropertyFailure("GNS representation is not miu")
    return worst
