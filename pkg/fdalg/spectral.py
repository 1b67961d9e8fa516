#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Spectra and the functional calculus of normal elements.

Invertibility in a direct sum is blockwise, so the spectrum of an element is
the union of its block eigenvalues.  The functional calculus unitarily
diagonalizes each block of a normal element (Hermitian eigensolver for
self-adjoint input, complex Schur form otherwise), merges eigenvalues closer
than ``snap_eps * max(1, |a|)`` and applies the scalar function once per
cluster.
"""
import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from fdalg.algebra import (Element, get_tolerance, is_normal, is_positive,
    is_self_adjoint, operator_norm)
from fdalg.exceptions import (FunctionUndefined, NotNormal, NotPositive,
    NotSelfAdjoint)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Spectrum:
    values: tuple
    per_block: tuple

    def real_values(self):
        return sorted(v.real for v in self.values)


def spectrum(a, tol=None):
    tol = get_tolerance(tol)
    hermitian = is_self_adjoint(a, tol)
    per_block = []
    for x in a.blocks:
        if hermitian:
            vals = np.linalg.eigvalsh(0.5 * (x + x.conj().T))
        else:
            vals = np.linalg.eigvals(x)
        per_block.append(tuple(complex(v) for v in vals))
    values = tuple(v for block in per_block for v in block)
    return Spectrum(values=values, per_block=tuple(per_block))


def spectral_radius(a, tol=None):
    values = spectrum(a, tol).values
    return max(abs(v) for v in values) if values else 0.0


def _block_eigen(x, hermitian):
    if hermitian:
        w, v = np.linalg.eigh(0.5 * (x + x.conj().T))
        return w.astype(complex), v
    t, z = scipy.linalg.schur(x, output='complex')
    return np.diag(t).copy(), z


def _cluster(values, radius):
    order = sorted(range(len(values)),
                   key=lambda k: (values[k].real, values[k].imag))
    clusters = []
    for k in order:
        for members in clusters:
            if abs(values[k] - values[members[0]]) <= radius:
                members.append(k)
                break
        else:
            clusters.append([k])
    return clusters


def spectral_decomposition(a, tol=None):
    """Per block, the list of ``(eigenvalue, spectral projection)`` pairs.

    Requires ``a`` normal.  Eigenvalues within the snapping radius are merged
    and reported by their mean.
    """
    tol = get_tolerance(tol)
    if not is_normal(a, tol):
        raise NotNormal("functional calculus needs a normal element")
    hermitian = is_self_adjoint(a, tol)
    radius = tol.snap_eps * max(1.0, operator_norm(a))
    out = []
    for x in a.blocks:
        values, vectors = _block_eigen(x, hermitian)
        pieces = []
        for members in _cluster(values, radius):
            if len(members) > 1 and np.ptp(values[members]) > 0:
                logger.debug("merged eigenvalues %s", values[members])
            value = complex(np.mean(values[members]))
            if hermitian:
                value = value.real
            v = vectors[:, members]
            pieces.append((value, v @ v.conj().T))
        out.append(pieces)
    return out


def functional_calculus(a, f, tol=None):
    """f(a) for a normal element ``a`` and a scalar function ``f``.

    Self-adjoint elements hand ``f`` real arguments, other normal elements
    complex ones.  Raises :class:`FunctionUndefined` when ``f`` fails or
    returns a non-finite value at an eigenvalue.
    """
    tol = get_tolerance(tol)
    blocks = []
    for n, pieces in zip(a.algebra.dims, spectral_decomposition(a, tol)):
        out = np.zeros((n, n), dtype=complex)
        for value, proj in pieces:
            try:
                image = complex(f(value))
            except (ArithmeticError, ValueError, TypeError) as exc:
                raise FunctionUndefined(
                    "function undefined at eigenvalue %r: %s" % (value, exc))
            if not cmath.isfinite(image):
                raise FunctionUndefined(
                    "function not finite at eigenvalue %r" % (value,))
            out += image * proj
        blocks.append(out)
    return Element(a.algebra, blocks)


def _require_positive(a, tol):
    if not is_positive(a, tol):
        raise NotPositive("expected a positive element")


def _require_self_adjoint(a, tol):
    if not is_self_adjoint(a, tol):
        raise NotSelfAdjoint("expected a self-adjoint element")


def _clamped_sqrt(x):
    return math.sqrt(max(x, 0.0))


def sqrt(a, tol=None):
    """The unique positive square root."""
    tol = get_tolerance(tol)
    _require_positive(a, tol)
    return functional_calculus(a, _clamped_sqrt, tol)


def power(a, alpha, tol=None):
    """a**alpha for positive a; alpha <= 0 needs ``a`` invertible."""
    tol = get_tolerance(tol)
    _require_positive(a, tol)
    return functional_calculus(a, lambda x: max(x, 0.0) ** alpha, tol)


def absolute(a, tol=None):
    """|a| = sqrt(a²) for self-adjoint a."""
    tol = get_tolerance(tol)
    _require_self_adjoint(a, tol)
    return functional_calculus(a, abs, tol)


def pos_part(a, tol=None):
    tol = get_tolerance(tol)
    _require_self_adjoint(a, tol)
    return functional_calculus(a, lambda x: max(x, 0.0), tol)


def neg_part(a, tol=None):
    tol = get_tolerance(tol)
    _require_self_adjoint(a, tol)
    return functional_calculus(a, lambda x: max(-x, 0.0), tol)


def exp_phase(x):
    """λ ↦ λ^i = exp(i ln λ) on [0, ∞), with 0 ↦ 1.

    Arguments within 1e-12 of zero count as zero.
    """
    x = complex(x)
    if abs(x.imag) > 1e-12 or x.real < -1e-12:
        raise ValueError("exp-phase is defined on the non-negative reals")
    x = x.real
    if x <= 1e-12:
        return 1.0
    return cmath.exp(1j * math.log(x))


_NAMED_FUNCTIONS = {
    'sqrt': _clamped_sqrt,
    'abs': abs,
    'pospart': lambda x: max(x, 0.0),
    'negpart': lambda x: max(-x, 0.0),
    'exp-phase': exp_phase,
}


def named_function(name):
    """Scalar function by name: sqrt, abs, pospart, negpart, pow:α, exp-phase."""
    if name.startswith('pow:'):
        try:
            alpha = float(name[4:])
        except ValueError:
            raise FunctionUndefined("bad exponent in %r" % name)
        return lambda x: max(x, 0.0) ** alpha
    try:
        return _NAMED_FUNCTIONS[name]
    except KeyError:
        raise FunctionUndefined(
            "unknown function %r (choose from %s, pow:α)"
            % (name, ", ".join(sorted(_NAMED_FUNCTIONS))))
