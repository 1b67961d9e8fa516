#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Seeded random elements for tests, the acceptance suite and ``fdalg gen``.

Every function takes ``seed``, which is either an integer or an existing
:class:`numpy.random.Generator`; passing a generator lets callers draw a
reproducible stream of fixtures from a single seed.
"""
import numpy as np
from scipy.stats import unitary_group

from fdalg.algebra import Element


def rng_from(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_matrix(seed, rows, cols=None):
    rng = rng_from(seed)
    cols = rows if cols is None else cols
    return (rng.standard_normal((rows, cols))
            + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_vector(seed, n):
    rng = rng_from(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_unitary_matrix(seed, n):
    rng = rng_from(seed)
    if n == 1:
        return np.array([[np.exp(2j * np.pi * rng.uniform())]])
    return unitary_group.rvs(n, random_state=rng)


def random_element(alg, seed):
    rng = rng_from(seed)
    return Element(alg, [random_matrix(rng, n) for n in alg.dims])


def random_self_adjoint(alg, seed):
    rng = rng_from(seed)
    blocks = []
    for n in alg.dims:
        x = random_matrix(rng, n)
        blocks.append(0.5 * (x + x.conj().T))
    return Element(alg, blocks)


def random_positive(alg, seed, rank=None):
    """c*c for a random c; ``rank`` caps the rank in every block."""
    rng = rng_from(seed)
    blocks = []
    for n in alg.dims:
        r = n if rank is None else min(rank, n)
        c = random_matrix(rng, r, n)
        blocks.append(c.conj().T @ c)
    return Element(alg, blocks)


def random_effect(alg, seed, spectrum=None):
    """u diag(λ) u* with λ uniform in [0, 1] (or drawn from ``spectrum``)."""
    rng = rng_from(seed)
    blocks = []
    for n in alg.dims:
        u = random_unitary_matrix(rng, n)
        if spectrum is None:
            values = rng.uniform(0.0, 1.0, n)
        else:
            values = rng.choice(np.asarray(spectrum, dtype=float), n)
        blocks.append(u @ np.diag(values) @ u.conj().T)
    return Element(alg, blocks)


def random_projection(alg, seed, ranks=None):
    rng = rng_from(seed)
    blocks = []
    for i, n in enumerate(alg.dims):
        r = int(rng.integers(0, n + 1)) if ranks is None else ranks[i]
        v = random_unitary_matrix(rng, n)[:, :r]
        blocks.append(v @ v.conj().T)
    return Element(alg, blocks)


def random_unitary(alg, seed):
    rng = rng_from(seed)
    return Element(alg, [random_unitary_matrix(rng, n) for n in alg.dims])


def random_density(alg, seed):
    """A positive element of trace one."""
    a = random_positive(alg, seed)
    total = sum(np.trace(x).real for x in a.blocks)
    return a / total


def rank_one_positive(alg, block, vector):
    """|v><v| placed in one block."""
    blocks = [np.zeros((n, n)) for n in alg.dims]
    blocks[block] = np.outer(vector, vector.conj())
    return Element(alg, blocks)


def random_rank_one_positive(alg, seed):
    rng = rng_from(seed)
    block = int(rng.integers(0, alg.num_blocks))
    return rank_one_positive(alg, block, random_vector(rng, alg.dims[block]))
