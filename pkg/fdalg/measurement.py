#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Corners, filters, pure maps and the sequential product.

A corner eAe of an algebra is realized as an algebra of its own through
per-block isometries onto the range of e.  The standard filter of a
positive p is c_p(a) = √p a √p on ⌈p⌉A⌈p⌉; the standard corner of an
effect p is π_p(a) = ⌊p⌋a⌊p⌋ onto ⌊p⌋A⌊p⌋.

Candidate binary operations on effects are described by :class:`BinOpSpec`
and checked against the five axioms that characterize the sequential
product p∗q = √p q √p:

A. p∗1 = p
B. q ↦ p∗q is a pure map
C. p∗(p∗q) = (p∗p)∗q
D. p = q∗q for some effect q
E. p∗e₁ <= e₂⊥ iff p∗e₂ <= e₁⊥ for projections e₁, e₂
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from fdalg import settings
from fdalg.algebra import (Element, FdAlgebra, adjoint, approx_equal,
    direct_sum, direct_sum_elements, get_tolerance, is_effect, is_positive,
    leq, operator_norm, orthosupplement, real_part)
from fdalg.division import sandwich
from fdalg.exceptions import (AlgebraMismatch, CarrierViolated,
    FilterBoundViolated, NotEffect, NotPositive, PreconditionError,
    PropertyFailure)
from fdalg.generators import (random_effect, random_projection, random_vector,
    rank_one_positive, rng_from)
from fdalg.maps import (LinMap, are_contraposed, carrier, compose,
    conjugation, is_completely_positive, is_faithful, is_unital, make_map,
    map_from_function, map_equal)
from fdalg.projections import (ceiling, floor, is_central, orthocomplement,
    range_isometries, range_projection)
from fdalg.spectral import exp_phase, functional_calculus, sqrt

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CornerContext:
    parent: FdAlgebra
    proj: Element
    corner: FdAlgebra
    embed: LinMap
    compress: LinMap
    isometries: tuple = field(repr=False)


def corner_algebra(e, tol=None):
    """eAe as an algebra, with its embedding into and compression from A.

    Blocks where ``e`` vanishes are dropped from the corner.
    """
    parent = e.algebra
    isometries = []
    for v, n in zip(range_isometries(e, tol), parent.dims):
        isometries.append(np.eye(n) if v.shape[1] == n else v)
    used = [i for i, v in enumerate(isometries) if v.shape[1]]
    corner = FdAlgebra(tuple(isometries[i].shape[1] for i in used))

    def embed(b):
        blocks = [np.zeros((n, n), dtype=complex) for n in parent.dims]
        for k, i in enumerate(used):
            v = isometries[i]
            blocks[i] = v @ b.blocks[k] @ v.conj().T
        return Element(parent, blocks)

    def compress(a):
        return Element(corner, [isometries[i].conj().T @ a.blocks[i]
                                @ isometries[i] for i in used])

    return CornerContext(parent=parent, proj=e, corner=corner,
                         embed=map_from_function(corner, parent, embed),
                         compress=map_from_function(parent, corner, compress),
                         isometries=tuple(isometries))


def filter_map(d, tol=None):
    """The filter c(x) = d* x d from ⌈d⟩A⌈d⟩ to A, with c(1) = d*d."""
    ctx = corner_algebra(range_projection(d, tol), tol)
    return compose(conjugation(d), ctx.embed)


def standard_filter(p, tol=None):
    """c_p: ⌈p⌉A⌈p⌉ → A, a ↦ √p a √p."""
    tol = get_tolerance(tol)
    if not is_positive(p, tol):
        raise NotPositive("the standard filter needs a positive element")
    return filter_map(sqrt(p, tol), tol)


def standard_corner(p, tol=None):
    """π_p: A → ⌊p⌋A⌊p⌋, a ↦ ⌊p⌋a⌊p⌋."""
    return corner_algebra(floor(p, tol), tol).compress


def factor_through_filter(f, d, tol=None):
    """The unique g with f = c∘g for the filter c(x) = d* x d.

    f must be completely positive with f(1) <= d*d; g is then completely
    positive and subunital.
    """
    tol = get_tolerance(tol)
    if not is_completely_positive(f, tol):
        raise NotPositive("f is not completely positive")
    if not leq(f(f.dom.unit()), adjoint(d) * d, tol):
        raise FilterBoundViolated("f(1) is not below d*d")
    ctx = corner_algebra(range_projection(d, tol), tol)
    dd = adjoint(d)
    g = make_map(f.dom, ctx.corner,
                 [ctx.compress(sandwich(dd, fb, d, tol)) for fb in f.images()])
    if not is_completely_positive(g, tol):
        raise PropertyFailure("the factor through the filter is not "
                              "completely positive")
    return g


def factor_through_corner(f, e, tol=None):
    """g = f∘embed, so that f = g∘(compression to eAe), given f(e⊥) = 0."""
    tol = get_tolerance(tol)
    leak = operator_norm(f(orthosupplement(e)))
    if not tol.close(leak, max(1.0, operator_norm(f(f.dom.unit())))):
        raise CarrierViolated("f(e⊥) has norm %.3g" % leak)
    return compose(f, corner_algebra(e, tol).embed)


@dataclass(frozen=True)
class BracketFactors:
    """f = filter ∘ bracket ∘ corner."""
    corner: LinMap
    bracket: LinMap
    filter: LinMap


def bracket_factors(f, tol=None):
    tol = get_tolerance(tol)
    source = corner_algebra(carrier(f, tol), tol)
    root = sqrt(real_part(f(f.dom.unit())), tol)
    target = corner_algebra(range_projection(root, tol), tol)

    def middle(a):
        return target.compress(sandwich(root, f(source.embed(a)), root, tol))

    return BracketFactors(corner=source.compress,
                          bracket=map_from_function(source.corner,
                                                    target.corner, middle),
                          filter=filter_map(root, tol))


def bracket(f, tol=None):
    """[f]: ⌈f⌉A⌈f⌉ → ⌈f(1)⌉B⌈f(1)⌉ with f = c_{f(1)}∘[f]∘π_{⌈f⌉}."""
    return bracket_factors(f, tol).bracket


def is_pure(f, tol=None):
    """[f] is a unital bijection with completely positive inverse."""
    tol = get_tolerance(tol)
    b = bracket(f, tol)
    if b.dom.dim != b.cod.dim:
        return False
    if b.dom.dim == 0:
        return True
    smallest = np.linalg.svd(b.matrix, compute_uv=False)[-1]
    if smallest < tol.snap_eps:
        return False
    return is_unital(b, tol) and is_completely_positive(b.inverse(tol), tol)


def _require_endomorphism(f):
    if f.dom != f.cod:
        raise AlgebraMismatch("%r is not an endomorphism" % f)


def chevron(f, tol=None):
    """⟨f⟩ = π_{⌈f(1)⌉} ∘ f ∘ embed_{⌈f⌉}, faithful with ⟨f⟩(1) = f(1)."""
    tol = get_tolerance(tol)
    _require_endomorphism(f)
    source = corner_algebra(carrier(f, tol), tol)
    target = corner_algebra(ceiling(real_part(f(f.dom.unit())), tol), tol)
    h = compose(target.compress, compose(f, source.embed))
    if not approx_equal(h(h.dom.unit()), target.compress(f(f.dom.unit())),
                        tol):
        raise PropertyFailure("⟨f⟩(1) differs from f(1)")
    if h.dom.dim and not is_faithful(h, tol):
        raise PropertyFailure("⟨f⟩ is not faithful")
    return h


def is_diamond_self_adjoint(f, samples=8, seed=None, tol=None):
    _require_endomorphism(f)
    return is_pure(f, tol) and are_contraposed(f, f, samples, seed, tol)


def is_diamond_positive(f, tol=None):
    """f(1) >= 0 and f = √f(1)(·)√f(1)."""
    tol = get_tolerance(tol)
    _require_endomorphism(f)
    one = real_part(f(f.dom.unit()))
    if not is_positive(one, tol):
        return False
    return map_equal(f, conjugation(sqrt(one, tol)), tol)


# the sequential product and its competitors

def _require_effects(*elements, tol=None):
    alg = elements[0].algebra
    for x in elements:
        if x.algebra != alg:
            raise AlgebraMismatch("effects from %r and %r" % (alg, x.algebra))
        if not is_effect(x, tol):
            raise NotEffect("expected an effect")


def seq_product(p, q, tol=None):
    """p∗q = √p q √p."""
    _require_effects(p, q, tol=tol)
    return _standard(p, q, tol)


def _conjugated_product(g):
    def evaluate(p, q, tol=None):
        root = sqrt(p, tol)
        w = functional_calculus(p, g, tol) * root
        return adjoint(w) * q * w
    return evaluate


def _standard(p, q, tol=None):
    root = sqrt(p, tol)
    return root * q * root


def _ceiling_product(p, q, tol=None):
    c = ceiling(p, tol)
    return c * q * c


def _floor_split_product(p, q, tol=None):
    cut = 1.0 - get_tolerance(tol).snap_eps
    sharp = functional_calculus(p, lambda x: 1.0 if x >= cut else 0.0, tol)
    rest = functional_calculus(
        p, lambda x: 0.0 if x >= cut else math.sqrt(max(x, 0.0)), tol)
    return sharp * q * sharp + rest * q * rest


def _identity_root(p, tol=None):
    return p


def sign_function(x):
    """-1 on (1/3, 1/2] and +1 elsewhere, so g(2/3) = 1 and g(4/9) = -1."""
    return -1.0 if 1.0 / 3 < x <= 0.5 else 1.0


@dataclass(frozen=True)
class BinOpSpec:
    """A candidate binary operation on effects.

    ``fails`` names the axiom the operation is known to violate (None for
    the sequential product) and ``root`` maps p to a q with q∗q = p.
    """
    name: str
    eval: object
    description: str
    fails: str = None
    root: object = None
    params: dict = field(default_factory=dict)

    def __call__(self, p, q, tol=None):
        return self.eval(p, q, tol)


def standard_op():
    return BinOpSpec(name='std', eval=_standard, description='√p q √p',
                     root=sqrt)


def counterexample_ops(algebra=None):
    """The four operations each violating exactly one of the axioms A, B,
    C and E.

    Given an algebra, each operation also carries the effect on which it
    is known to fail as ``params["effect"]``.
    """
    ops = [
        BinOpSpec(name='ceil', eval=_ceiling_product,
                  description='⌈p⌉ q ⌈p⌉', fails='A', root=_identity_root),
        BinOpSpec(name='floorsplit', eval=_floor_split_product,
                  description='⌊p⌋q⌊p⌋ + √(p-⌊p⌋) q √(p-⌊p⌋)', fails='B',
                  root=sqrt),
        BinOpSpec(name='sign', eval=_conjugated_product(sign_function),
                  description='√p g(p)* q g(p) √p, g a ±1 step', fails='C',
                  root=sqrt, params={'g': 'sign'}),
        BinOpSpec(name='phase', eval=_conjugated_product(exp_phase),
                  description='√p g(p)* q g(p) √p, g(λ) = λ^i', fails='E',
                  root=sqrt, params={'g': 'exp-phase'}),
    ]
    if algebra is not None:
        for op, effect in zip(ops, designated_effects(algebra)):
            op.params['effect'] = effect
    return ops


def op_by_name(name):
    for op in [standard_op()] + counterexample_ops():
        if op.name == name:
            return op
    raise PreconditionError("unknown operation %r" % name)


AXIOMS = ('A', 'B', 'C', 'D', 'E')
PASS, FAIL, NOT_APPLICABLE = 'pass', 'fail', 'n/a'


@dataclass(frozen=True)
class AxiomResult:
    status: str
    witness: dict = None
    note: str = ''


def designated_effects(alg):
    """Fixed effects on which the counterexample operations misbehave,
    placed in the first block of size at least two (the first block
    otherwise)."""
    if alg.is_trivial:
        return []
    sizes = [i for i, n in enumerate(alg.dims) if n >= 2]
    block = sizes[0] if sizes else 0
    n = alg.dims[block]
    out = []
    for spectrum in ([0.5], [1.0, 0.5], [2.0 / 3, 4.0 / 9], [0.5, 1.0]):
        values = (spectrum + [0.0] * n)[:n]
        blocks = [np.zeros((m, m)) for m in alg.dims]
        blocks[block] = np.diag(values)
        out.append(Element(alg, blocks))
    return out


def _orthogonal_rank_one(x, rng, tol):
    """A random rank-one projection below ⌈x⌉⊥, or None."""
    complement = orthocomplement(ceiling(real_part(x), tol), tol)
    isometries = range_isometries(complement, tol)
    free = [i for i, v in enumerate(isometries) if v.shape[1]]
    if not free:
        return None
    block = free[int(rng.integers(0, len(free)))]
    v = isometries[block]
    return rank_one_positive(x.algebra, block,
                             v @ random_vector(rng, v.shape[1]))


def _random_rank_one_projection(alg, rng):
    block = int(rng.integers(0, alg.num_blocks))
    return rank_one_positive(alg, block, random_vector(rng, alg.dims[block]))


def check_axioms(op, algebra, trials=None, seed=None, tol=None,
                 purity_trials=50):
    """Check the axioms A-E for ``op`` on ``algebra``.

    Returns a dict mapping each axiom to an :class:`AxiomResult`; failures
    carry a witness dict of the effects and projections involved.
    """
    tol = get_tolerance(tol)
    trials = settings.POSITIVITY_SAMPLES if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = rng_from(seed)
    if algebra.is_trivial:
        return dict((axiom, AxiomResult(PASS)) for axiom in AXIOMS)
    designated = designated_effects(algebra)
    effects = designated + [random_effect(algebra, rng) for _ in range(trials)]
    one = algebra.unit()
    report = {}

    report['A'] = AxiomResult(PASS)
    for p in effects:
        if not approx_equal(op(p, one, tol), p, tol):
            report['A'] = AxiomResult(FAIL, {'p': p})
            break

    report['B'] = AxiomResult(PASS)
    for p in effects[:len(designated) + purity_trials]:
        linear = map_from_function(algebra, algebra, lambda q: op(p, q, tol))
        q = random_effect(algebra, rng)
        if not approx_equal(linear(q), op(p, q, tol), tol):
            report['B'] = AxiomResult(NOT_APPLICABLE, {'p': p, 'q': q},
                                      'not linear in q')
            break
        if not is_pure(linear, tol):
            report['B'] = AxiomResult(FAIL, {'p': p})
            break

    report['C'] = AxiomResult(PASS)
    for p in effects:
        q = random_effect(algebra, rng)
        if not approx_equal(op(p, op(p, q, tol), tol),
                            op(op(p, p, tol), q, tol), tol):
            report['C'] = AxiomResult(FAIL, {'p': p, 'q': q})
            break

    if op.root is None:
        report['D'] = AxiomResult(NOT_APPLICABLE, note='no square root given')
    else:
        report['D'] = AxiomResult(PASS)
        for p in effects:
            q = op.root(p, tol)
            if not (is_effect(q, tol) and approx_equal(op(q, q, tol), p, tol)):
                report['D'] = AxiomResult(FAIL, {'p': p, 'q': q})
                break

    report['E'] = AxiomResult(PASS)
    for p in effects:
        e1 = _random_rank_one_projection(algebra, rng)
        pairs = [(e1, random_projection(algebra, rng))]
        e2 = _orthogonal_rank_one(op(p, e1, tol), rng, tol)
        if e2 is not None:
            pairs.append((e1, e2))
        for e1, e2 in pairs:
            left = leq(op(p, e1, tol), orthosupplement(e2), tol)
            right = leq(op(p, e2, tol), orthosupplement(e1), tol)
            if left != right:
                report['E'] = AxiomResult(FAIL, {'p': p, 'e1': e1, 'e2': e2})
                break
        if report['E'].status == FAIL:
            break

    for axiom in AXIOMS:
        logger.debug("%s axiom %s: %s", op.name, axiom, report[axiom].status)
    return report


def tomiyama_split(F, tol=None):
    """For a map F: A⊕A → A with F(a, a) = a, return the central
    p = F(1, 0) with F(a, b) = ap + bp⊥.

    Raises :class:`PropertyFailure` if the decomposition does not hold.
    """
    tol = get_tolerance(tol)
    alg = F.cod
    if F.dom != direct_sum(alg, alg):
        raise AlgebraMismatch("%r does not map A⊕A to A" % F)
    p = F(direct_sum_elements(alg.unit(), alg.zero()))
    if not is_central(p, tol):
        raise PropertyFailure("F(1, 0) is not central", witness=p)
    for a in alg.basis():
        for left in (True, False):
            pair = (direct_sum_elements(a, alg.zero()) if left
                    else direct_sum_elements(alg.zero(), a))
            expected = a * p if left else a * orthosupplement(p)
            if not approx_equal(F(pair), expected, tol):
                raise PropertyFailure("F(a, b) differs from ap + bp⊥",
                                      witness=pair)
    return p
