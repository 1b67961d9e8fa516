#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Pseudoinverses, division and polar decomposition.

Every element of a finite direct sum of matrix algebras has a pseudoinverse
(the blockwise Moore-Penrose inverse).  Division is computed from it in
closed form and then verified by reconstruction; when the reconstruction
fails the quotient does not exist and :class:`DivisionUndefined` is raised.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from fdalg.algebra import (Element, adjoint, get_tolerance, hermitian_blocks,
    is_positive, operator_norm, real_part)
from fdalg.exceptions import (AlgebraMismatch, DivisionUndefined, NotPositive,
    QuotientUndefined)
from fdalg.projections import support
from fdalg.spectral import sqrt

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolarParts:
    isometry: Element
    modulus: Element


@dataclass(frozen=True)
class ApproxPseudoinverse:
    """Terms t_n of an approximate pseudoinverse together with the lower
    edge 1/n of the spectral band each term inverts."""
    terms: tuple = field(default_factory=tuple)
    thresholds: tuple = field(default_factory=tuple)

    def __len__(self):
        return len(self.terms)

    def total(self, algebra):
        out = algebra.zero()
        for t in self.terms:
            out = out + t
        return out


def pseudoinverse(a, tol=None):
    """Blockwise Moore-Penrose inverse, cutting singular values at
    ``snap_eps * |a|``."""
    tol = get_tolerance(tol)
    threshold = tol.snap_eps * operator_norm(a)
    blocks = []
    for x in a.blocks:
        u, s, vh = np.linalg.svd(x)
        keep = s > threshold if threshold > 0 else np.zeros(s.shape, bool)
        inv = np.zeros_like(s)
        inv[keep] = 1.0 / s[keep]
        blocks.append((vh.conj().T * inv) @ u.conj().T)
    return Element(a.algebra, blocks)


def _band(value, tol):
    """n with value in [1/n, 1/(n-1)); n = 1 for value >= 1."""
    if value >= 1.0:
        return 1
    return max(1, int(math.ceil(1.0 / value - tol.snap_eps)))


def _positive_terms(a, tol):
    threshold = tol.snap_eps * operator_norm(a)
    if threshold == 0:
        return [], []
    bands = {}
    for i, x in enumerate(hermitian_blocks(a)):
        w, v = np.linalg.eigh(x)
        for k in np.nonzero(w > threshold)[0]:
            bands.setdefault(_band(w[k], tol), []).append((i, w[k], v[:, k]))
    terms, thresholds = [], []
    for n in sorted(bands):
        blocks = [np.zeros((m, m), dtype=complex) for m in a.algebra.dims]
        for i, value, vector in bands[n]:
            blocks[i] += np.outer(vector, vector.conj()) / value
        terms.append(Element(a.algebra, blocks))
        thresholds.append(1.0 / n)
    return terms, thresholds


def approximate_pseudoinverse(a, tol=None):
    """Terms t_n = (a e_n)^~1 for the spectral bands e_n of a positive a.

    A general ``a`` goes through a*a: if s_n are the terms for a*a then
    t_n = s_n a* satisfy the same identities for ``a``.
    """
    tol = get_tolerance(tol)
    if is_positive(a, tol):
        terms, thresholds = _positive_terms(a, tol)
    else:
        ad = adjoint(a)
        terms, thresholds = _positive_terms(ad * a, tol)
        terms = [t * ad for t in terms]
    logger.debug("approximate pseudoinverse with %d terms", len(terms))
    return ApproxPseudoinverse(terms=tuple(terms), thresholds=tuple(thresholds))


def _check_same(*elements):
    alg = elements[0].algebra
    for x in elements[1:]:
        if x.algebra != alg:
            raise AlgebraMismatch("operands live in %r and %r"
                                  % (alg, x.algebra))


def _verify(result, rebuilt, target, tol, error):
    distance = operator_norm(rebuilt - target)
    if not tol.close(distance, max(1.0, operator_norm(target))):
        raise error("reconstruction residual %.3g exceeds tolerance" % distance)
    return result


def divide(a, b, tol=None):
    """a/b: the element c in A⌈b⟩ with a = cb."""
    tol = get_tolerance(tol)
    _check_same(a, b)
    c = a * pseudoinverse(b, tol)
    return _verify(c, c * b, a, tol, DivisionUndefined)


def left_divide(b, a, tol=None):
    """b\\a: the element c in ⌈b⌋A with a = bc."""
    tol = get_tolerance(tol)
    _check_same(a, b)
    c = pseudoinverse(b, tol) * a
    return _verify(c, b * c, a, tol, DivisionUndefined)


def sandwich(c, a, b, tol=None):
    """c\\a/b: the element x with a = cxb and ⌈x⟩ <= ⌈c⌋, ⌈x⌋ <= ⌈b⟩."""
    tol = get_tolerance(tol)
    _check_same(c, a, b)
    x = pseudoinverse(c, tol) * a * pseudoinverse(b, tol)
    return _verify(x, c * x * b, a, tol, DivisionUndefined)


def douglas_bound(a, b, tol=None):
    """Least λ >= 0 with a*a <= λ² b*b, or None when there is none."""
    tol = get_tolerance(tol)
    _check_same(a, b)
    if operator_norm(a) == 0:
        return 0.0
    leak = a - a * support(b, tol)
    if not tol.close(operator_norm(leak), max(1.0, operator_norm(a))):
        return None
    root = pseudoinverse(sqrt(adjoint(b) * b, tol), tol)
    ratio = root * adjoint(a) * a * root
    top = max(np.linalg.eigvalsh(x)[-1] for x in hermitian_blocks(ratio))
    return math.sqrt(max(float(top), 0.0))


def polar(a, tol=None):
    """a = [a]·√(a*a)."""
    tol = get_tolerance(tol)
    modulus = sqrt(adjoint(a) * a, tol)
    return PolarParts(isometry=a * pseudoinverse(modulus, tol), modulus=modulus)


def seq_quotient(a, b, tol=None):
    """The positive c with √b c √b = a and ⌈c⌉ <= ⌈b⌉."""
    tol = get_tolerance(tol)
    _check_same(a, b)
    if not (is_positive(a, tol) and is_positive(b, tol)):
        raise NotPositive("sequential quotient needs positive operands")
    root = sqrt(b, tol)
    inv = pseudoinverse(root, tol)
    c = real_part(inv * a * inv)
    return _verify(c, root * c * root, a, tol, QuotientUndefined)
