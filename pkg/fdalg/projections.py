#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
The projection lattice.

All lattice operations return *snapped* projections: each is rebuilt as
``V V*`` from an orthonormal eigenbasis, so idempotency holds to machine
precision and chained lattice identities can be compared exactly.
"""
import logging
from dataclasses import dataclass

import numpy as np

from fdalg.algebra import (Element, adjoint, get_tolerance, hermitian_blocks,
    is_effect, is_positive, is_self_adjoint, operator_norm, orthosupplement)
from fdalg.exceptions import (AlgebraMismatch, NotEffect, NotPositive,
    NotProjection, PreconditionError)
from fdalg.generators import random_projection, rng_from

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjectionCertificate:
    element: Element
    snapped: bool


class Subspace(object):
    """A linear subspace of an algebra given by an orthonormal basis.

    Orthonormality is with respect to the Hilbert-Schmidt inner product on
    canonical coordinates.
    """

    def __init__(self, ambient, columns):
        self.ambient = ambient
        columns = np.asarray(columns, dtype=complex)
        self.columns = columns.reshape(ambient.dim, -1)

    def __repr__(self):
        return "Subspace(%r, dim=%d)" % (self.ambient, self.dim)

    @property
    def dim(self):
        return self.columns.shape[1]

    @property
    def basis(self):
        return [self.ambient.element(c) for c in self.columns.T]

    def residual(self, a):
        """Distance from ``a`` to the subspace in coordinate norm."""
        v = self.ambient.coordinates(a)
        return float(np.linalg.norm(v - self.columns @ (self.columns.conj().T @ v)))

    def contains(self, a, tol=None):
        tol = get_tolerance(tol)
        return tol.close(self.residual(a), max(1.0, operator_norm(a)))

    def is_star_closed(self, tol=None):
        return all(self.contains(adjoint(b), tol) for b in self.basis)

    def is_product_closed(self, tol=None):
        basis = self.basis
        return all(self.contains(x * y, tol) for x in basis for y in basis)


def _eigen_range(x, keep):
    w, v = np.linalg.eigh(x)
    return v[:, keep(w)]


def _from_isometries(alg, isometries):
    return Element(alg, [v @ v.conj().T for v in isometries])


def is_projection(a, tol=None):
    tol = get_tolerance(tol)
    if not is_self_adjoint(a, tol):
        return False
    return tol.close(operator_norm(a * a - a), 1.0)


def require_projection(p, tol=None):
    if not is_projection(p, tol):
        raise NotProjection("expected a projection")


def snap_projection(a, tol=None):
    """Round the eigenvalues of a near-projection to {0, 1}."""
    tol = get_tolerance(tol)
    if not is_self_adjoint(a, tol):
        raise NotProjection("a projection is self-adjoint")
    isometries = []
    snapped = False
    for x in hermitian_blocks(a):
        w, v = np.linalg.eigh(x)
        off = np.minimum(np.abs(w), np.abs(w - 1.0))
        if off.size and off.max() > tol.snap_eps:
            raise NotProjection(
                "eigenvalue %r is not within %g of 0 or 1"
                % (float(w[off.argmax()]), tol.snap_eps))
        if off.size and off.max() > 0:
            snapped = True
        isometries.append(v[:, w > 0.5])
    if snapped:
        logger.debug("snapped projection eigenvalues to {0, 1}")
    return ProjectionCertificate(_from_isometries(a.algebra, isometries),
                                 snapped)


def range_isometries(p, tol=None):
    """Per block, an orthonormal basis (as columns) of the range of ``p``."""
    require_projection(p, tol)
    return [_eigen_range(x, lambda w: w > 0.5) for x in hermitian_blocks(p)]


def block_ranks(p, tol=None):
    return tuple(v.shape[1] for v in range_isometries(p, tol))


def orthocomplement(p, tol=None):
    require_projection(p, tol)
    return snap_projection(orthosupplement(p), tol).element


def _spectral_range(a, keep_low, tol):
    """Eigenvectors of a positive ``a`` above (or, with ``keep_low``, at
    most) snap_eps·‖a‖.  Norms at or below eps_abs count as zero."""
    scale = operator_norm(a)
    if scale <= tol.eps_abs:
        return [np.eye(n)[:, :n if keep_low else 0] for n in a.algebra.dims]
    threshold = tol.snap_eps * scale
    if keep_low:
        return [_eigen_range(x, lambda w: w <= threshold)
                for x in hermitian_blocks(a)]
    return [_eigen_range(x, lambda w: w > threshold)
            for x in hermitian_blocks(a)]


def ceiling(a, tol=None):
    """Least projection p with pa = a, for positive a."""
    tol = get_tolerance(tol)
    if not is_positive(a, tol):
        raise NotPositive("ceiling is defined for positive elements")
    return _from_isometries(a.algebra, _spectral_range(a, False, tol))


def floor(a, tol=None):
    """Greatest projection below the effect a, i.e. ⌈1 - a⌉⊥."""
    tol = get_tolerance(tol)
    if not is_effect(a, tol):
        raise NotEffect("floor is defined for effects")
    return _from_isometries(a.algebra,
                            _spectral_range(orthosupplement(a), True, tol))


def _singular_spaces(a, tol):
    threshold = tol.snap_eps * operator_norm(a)
    left, right = [], []
    for x in a.blocks:
        u, s, vh = np.linalg.svd(x)
        keep = s > threshold if threshold > 0 else np.zeros(s.shape, bool)
        left.append(u[:, keep])
        right.append(vh.conj().T[:, keep])
    return left, right


def support(a, tol=None):
    """⌈a*a⌉, the least projection p with ap = a."""
    tol = get_tolerance(tol)
    return _from_isometries(a.algebra, _singular_spaces(a, tol)[1])


def range_projection(a, tol=None):
    """⌈aa*⌉, the least projection p with pa = a."""
    tol = get_tolerance(tol)
    return _from_isometries(a.algebra, _singular_spaces(a, tol)[0])


def rank(a, tol=None):
    """Per-block ranks at the snapping threshold."""
    tol = get_tolerance(tol)
    return tuple(v.shape[1] for v in _singular_spaces(a, tol)[0])


def join(ps, algebra=None, tol=None):
    """Least projection above all of ``ps``: the span of their ranges."""
    tol = get_tolerance(tol)
    ps = list(ps)
    if not ps:
        if algebra is None:
            raise PreconditionError("the empty join needs an algebra")
        return algebra.zero()
    alg = ps[0].algebra
    for p in ps:
        if p.algebra != alg:
            raise AlgebraMismatch("projections from %r and %r"
                                  % (alg, p.algebra))
    ranges = [range_isometries(p, tol) for p in ps]
    isometries = []
    for i, n in enumerate(alg.dims):
        stacked = np.hstack([r[i] for r in ranges])
        if not stacked.shape[1]:
            isometries.append(stacked)
            continue
        u, s, _ = np.linalg.svd(stacked, full_matrices=False)
        isometries.append(u[:, s > tol.snap_eps])
    return _from_isometries(alg, isometries)


def meet(ps, algebra=None, tol=None):
    tol = get_tolerance(tol)
    ps = list(ps)
    if not ps:
        if algebra is None:
            raise PreconditionError("the empty meet needs an algebra")
        return algebra.unit()
    return orthocomplement(
        join([orthocomplement(p, tol) for p in ps], tol=tol), tol)


def null_space(matrix, cutoff):
    """Orthonormal columns spanning the kernel of ``matrix``; singular
    values at or below ``cutoff`` count as zero."""
    n = matrix.shape[1]
    if not matrix.shape[0]:
        return np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(matrix)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


def commutant(S, within, tol=None):
    """Basis of {a : as = sa for all s in S} as a :class:`Subspace`."""
    tol = get_tolerance(tol)
    S = list(S)
    if not S or within.dim == 0:
        return Subspace(within, np.eye(within.dim, dtype=complex))
    rows = []
    for s in S:
        if s.algebra != within:
            raise AlgebraMismatch("%r is not an element of %r"
                                  % (s.algebra, within))
        columns = [within.coordinates(e * s - s * e) for e in within.basis()]
        rows.append(np.column_stack(columns))
    scale = max([1.0] + [operator_norm(s) for s in S])
    return Subspace(within, null_space(np.vstack(rows), tol.snap_eps * scale))


def centre(alg, tol=None):
    return commutant(alg.basis(), alg, tol)


def is_central(a, tol=None):
    tol = get_tolerance(tol)
    scale = max(1.0, operator_norm(a))
    for x, n in zip(a.blocks, a.algebra.dims):
        scalar = np.trace(x) / n
        if not tol.close(np.linalg.norm(x - scalar * np.eye(n), 2), scale):
            return False
    return True


def central_support(a, tol=None):
    """Least central projection z with za = a: the indicator of a's blocks."""
    tol = get_tolerance(tol)
    threshold = tol.snap_eps * operator_norm(a)
    blocks = []
    for x, n in zip(a.blocks, a.algebra.dims):
        on = threshold > 0 and np.linalg.norm(x, 2) > threshold
        blocks.append(np.eye(n) if on else np.zeros((n, n)))
    return Element(a.algebra, blocks)


def mvn_below(e1, e2, tol=None):
    """A partial isometry u with u*u = e1 and uu* <= e2, or None."""
    if e1.algebra != e2.algebra:
        raise AlgebraMismatch("projections from %r and %r"
                              % (e1.algebra, e2.algebra))
    v1s, v2s = range_isometries(e1, tol), range_isometries(e2, tol)
    blocks = []
    for v1, v2 in zip(v1s, v2s):
        r = v1.shape[1]
        if r > v2.shape[1]:
            return None
        blocks.append(v2[:, :r] @ v1.conj().T)
    return Element(e1.algebra, blocks)


def cceil_sum(e, tol=None):
    """Orthogonal nonzero pieces, each Murray-von Neumann below ``e``,
    summing to the central support of ``e``.

    The first piece is ``e`` itself; the complement of ``e`` in each
    supported block is cut into chunks of rank at most the rank of ``e``
    there.
    """
    tol = get_tolerance(tol)
    isometries = range_isometries(e, tol)
    if all(v.shape[1] == 0 for v in isometries):
        raise PreconditionError("cceil_sum needs a nonzero projection")
    complements = []
    count = 1
    for x, v in zip(hermitian_blocks(e), isometries):
        r = v.shape[1]
        w = _eigen_range(x, lambda w: w <= 0.5) if r else v
        complements.append(w)
        if r:
            count = max(count, 1 + -(-w.shape[1] // r))
    pieces = [e]
    for k in range(1, count):
        parts = []
        for v, w in zip(isometries, complements):
            r = v.shape[1]
            parts.append(w[:, (k - 1) * r:k * r] if r else w)
        pieces.append(_from_isometries(e.algebra, parts))
    return pieces


def sample_projections(alg, samples=0, seed=None):
    """Yield a family of projections spanning ``alg``, then random ones.

    The spanning part consists of the rank-one projections onto e_j,
    (e_j + e_k)/√2 and (e_j + i e_k)/√2 in every block, followed by the
    block units.
    """
    for i, n in enumerate(alg.dims):
        vectors = [np.eye(n)[j] for j in range(n)]
        for j in range(n):
            for k in range(j + 1, n):
                for phase in (1.0, 1j):
                    v = np.zeros(n, dtype=complex)
                    v[j], v[k] = 1.0, phase
                    vectors.append(v / np.sqrt(2))
        for v in vectors:
            blocks = [np.zeros((m, m)) for m in alg.dims]
            blocks[i] = np.outer(v, v.conj())
            yield Element(alg, blocks)
    for i in range(alg.num_blocks):
        yield alg.block_unit(i)
    if samples:
        rng = rng_from(seed)
        for _ in range(samples):
            yield random_projection(alg, rng)
