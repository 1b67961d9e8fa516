# -*- coding: utf-8 -*-
"""
The acceptance battery behind ``fdalg verify-suite``.

Each check is a function ``check(counts, rng)`` returning a list of failure
records (empty when the check passes).  ``counts`` scales the number of
random instances: the ``smoke`` level runs a few of each, ``full`` runs the
complete corpus.
"""
import logging
import time
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from fdalg import settings
from fdalg.algebra import (Element, FdAlgebra, approx_equal, is_positive,
    operator_norm, orthosupplement, real_part)
from fdalg.division import (approximate_pseudoinverse, divide, douglas_bound,
    polar, pseudoinverse)
from fdalg.exceptions import FdAlgError, PreconditionError
from fdalg.generators import (random_effect, random_element, random_positive,
    random_projection, random_self_adjoint, random_unitary,
    random_unitary_matrix, random_vector, rng_from)
from fdalg.maps import (choi, conjugation, central_carrier, carrier,
    functional_from_density, is_completely_positive, is_miu, is_subunital,
    kraus_map, map_equal, random_cp_map, random_cpu_map, random_state,
    trace_functional, transpose_map)
from fdalg.measurement import (FAIL, PASS, check_axioms, counterexample_ops,
    is_diamond_positive, standard_op)
from fdalg.projections import (ceiling, floor, join, meet, orthocomplement,
    range_projection, support)
from fdalg.spectral import power, spectrum, sqrt
from fdalg.structure import check_gns, gns, make_subalgebra, wedderburn
from fdalg.tensor import (associator, braiding, check_hexagon, check_pentagon,
    check_triangle, distributor, duplicator, duplicator_witness,
    is_duplicable, multiplication_map, tensor_algebra, tensor_elements,
    unitors)

logger = logging.getLogger(__name__)

LEVELS = {
    'smoke': {
        'trials': 10, 'purity': 3, 'roots': 5, 'choi_maps': 10,
        'choi_tuples': 100, 'polar': 20, 'douglas': 10, 'lattice': 10,
        'wedderburn': 5, 'gns': 3, 'coherence': 5, 'inequalities': 20,
    },
    'full': {
        'trials': 200, 'purity': 50, 'roots': 50, 'choi_maps': 100,
        'choi_tuples': 500, 'polar': 200, 'douglas': 100, 'lattice': 200,
        'wedderburn': 50, 'gns': 30, 'coherence': 50, 'inequalities': 200,
    },
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    failures: list = field(default_factory=list)
    seconds: float = field(default=0.0, repr=False, compare=False)


def _close(x, y, bound):
    return operator_norm(x - y) <= bound


def n_positivity_witness(f, samples, seed, max_k=4, tol=None):
    """Search for a positive k×k matrix X over f.dom (2 <= k <= max_k) with
    (f(X_ij))_ij not positive.

    X is xx* for random x; returns ``(block, k, x)`` or None.
    """
    rng = rng_from(seed)
    for _ in range(samples):
        block = int(rng.integers(0, f.dom.num_blocks))
        m = f.dom.dims[block]
        k = int(rng.integers(2, max_k + 1))
        x = random_vector(rng, k * m).reshape(k, m)
        for l, n in enumerate(f.cod.dims):
            out = np.zeros((k * n, k * n), dtype=complex)
            for i in range(k):
                for j in range(k):
                    blocks = [np.zeros((d, d), dtype=complex) for d in f.dom.dims]
                    blocks[block] = np.outer(x[i], x[j].conj())
                    image = f(Element(f.dom, blocks)).blocks[l]
                    out[i * n:(i + 1) * n, j * n:(j + 1) * n] = image
            big = Element(FdAlgebra((k * n,)), [out])
            if not is_positive(big, tol):
                return block, k, x
    return None


def check_sequential_product(counts, rng):
    failures = []
    for dims in ((2,), (3,), (2, 1)):
        alg = FdAlgebra(dims)
        for op in [standard_op()] + counterexample_ops(alg):
            report = check_axioms(op, alg, trials=counts['trials'], seed=rng,
                                  purity_trials=counts['purity'])
            for axiom, result in sorted(report.items()):
                expected = FAIL if axiom == op.fails else None
                failed = result.status == FAIL
                if failed != (expected == FAIL) or (
                        failed and result.witness is None):
                    failures.append({'algebra': alg, 'op': op.name,
                                     'axiom': axiom, 'status': result.status,
                                     'witness': result.witness})
            if op.fails is None and report['D'].status != PASS:
                failures.append({'algebra': alg, 'op': op.name, 'axiom': 'D',
                                 'status': report['D'].status})
    return failures


def check_square_root_axiom(counts, rng):
    alg = FdAlgebra((3,))
    one = alg.unit()
    failures = []
    for _ in range(counts['roots']):
        p = random_positive(alg, rng)
        g = conjugation(power(p, 0.25))
        if not (is_diamond_positive(g)
                and _close(g(g(one)), p, 1e-8 * max(1.0, operator_norm(p)))):
            failures.append({'p': p, 'case': 'fourth root'})
        perturbed = conjugation(random_unitary(alg, rng) * sqrt(p))
        if is_diamond_positive(perturbed):
            failures.append({'p': p, 'case': 'perturbed'})
    return failures


def check_choi_criterion(counts, rng):
    alg = FdAlgebra((2,))
    flip = transpose_map(alg)
    failures = []
    smallest = min(b.min_eigenvalue for b in choi(flip))
    if is_completely_positive(flip) or abs(smallest + 1.0) > 1e-9:
        failures.append({'map': 'transpose', 'min_eigenvalue': smallest})
    drawn = 0
    while drawn < counts['choi_maps']:
        weight = rng.uniform()
        f = (weight * conjugation(random_unitary(alg, rng))
             + (1.0 - weight) * flip)
        margin = min(b.min_eigenvalue for b in choi(f))
        # draws too close to the CP boundary are not informative
        if abs(margin) < 1e-3:
            continue
        drawn += 1
        cp = is_completely_positive(f)
        witness = n_positivity_witness(f, counts['choi_tuples'], rng)
        if cp == (witness is not None):
            failures.append({'weight': weight, 'choi_cp': cp,
                             'min_eigenvalue': margin})
    return failures


def check_division(counts, rng):
    failures = []
    algebras = (FdAlgebra((3,)), FdAlgebra((2, 1)))
    for k in range(counts['polar']):
        alg = algebras[k % 2]
        a = random_element(alg, rng)
        if k % 3 == 0:
            a = a * random_projection(alg, rng)
        parts = polar(a)
        residual = operator_norm(parts.isometry * parts.modulus - a)
        if residual > 1e-9 * (1.0 + operator_norm(a)):
            failures.append({'case': 'polar', 'a': a, 'residual': residual})
        approx = approximate_pseudoinverse(a)
        if not _close(approx.total(alg) * a, support(a), 1e-8):
            failures.append({'case': 'approximate pseudoinverse', 'a': a})
    for k in range(counts['douglas']):
        alg = algebras[k % 2]
        b = random_element(alg, rng)
        if k % 2:
            b = random_projection(alg, rng) * b
        c = random_element(alg, rng)
        a = c * b
        x = divide(a, b)
        bound = douglas_bound(a, b)
        scale = 1.0 + operator_norm(c)
        if not _close(x, c * range_projection(b), 1e-8 * scale):
            failures.append({'case': 'divide', 'a': a, 'b': b})
        if bound is None or operator_norm(x) > bound + 1e-8 * scale:
            failures.append({'case': 'douglas', 'a': a, 'b': b,
                             'bound': bound})
    return failures


def _shared_floor_effects(alg, rng):
    e = random_projection(alg, rng)
    rest = orthosupplement(e)
    a = e + rest * random_effect(alg, rng) * rest
    b = e + rest * random_effect(alg, rng) * rest
    return real_part(a), real_part(b)


def check_projection_lattice(counts, rng):
    failures = []
    for alg in (FdAlgebra((4,)), FdAlgebra((2, 2))):
        for k in range(counts['lattice']):
            p = random_projection(alg, rng)
            q = random_projection(alg, rng)
            if not approx_equal(ceiling(real_part(p * q * p)),
                                meet([p, join([orthocomplement(p), q])])):
                failures.append({'identity': 'ceil(pqp)', 'p': p, 'q': q})

            if k % 2:
                a, b = _shared_floor_effects(alg, rng)
            else:
                spread = [0.0, 0.3, 0.7, 1.0, 1.0]
                a = random_effect(alg, rng, spectrum=spread)
                b = random_effect(alg, rng, spectrum=spread)
            root = sqrt(a)
            if not approx_equal(floor(real_part(root * b * root)),
                                meet([floor(a), floor(b)])):
                failures.append({'identity': 'floor(√a b √a)', 'a': a, 'b': b})
            if not approx_equal(orthocomplement(ceiling(a)),
                                floor(orthosupplement(a))):
                failures.append({'identity': 'ceil(a)⊥', 'a': a})

            f = random_cp_map(alg, alg, rng, terms=1)
            x = random_positive(alg, rng, rank=1)
            if not approx_equal(ceiling(real_part(f(x))),
                                ceiling(real_part(f(ceiling(x))))):
                failures.append({'identity': 'ceil(f(a))', 'a': x})
    return failures


def _embedded_subalgebra(dims, rng):
    """u(M_{n1} + ... + M_{nk})u* inside M_N, N = Σ n_i."""
    small = FdAlgebra(tuple(dims))
    size = sum(dims)
    ambient = FdAlgebra((size,))
    u = random_unitary_matrix(rng, size)
    elements = []
    for block, row, col in small.unit_indices():
        x = np.zeros((size, size), dtype=complex)
        offset = sum(dims[:block])
        x[offset + row, offset + col] = 1.0
        elements.append(Element(ambient, [u @ x @ u.conj().T]))
    return make_subalgebra(ambient, elements)


def check_wedderburn(counts, rng):
    failures = []
    for _ in range(counts['wedderburn']):
        dims = []
        for _ in range(int(rng.integers(1, 4))):
            n = int(rng.integers(1, 4))
            if sum(dims) + n <= 6:
                dims.append(n)
        S = _embedded_subalgebra(dims, rng)
        found = wedderburn(S, seed=rng)
        if sorted(found.dims) != sorted(dims) or not is_miu(found.embedding):
            failures.append({'dims': dims, 'recovered': list(found.dims)})
    return failures


def _random_state(alg, rng):
    if not alg.is_commutative:
        return random_state(alg, rng)
    rho = random_positive(alg, rng) * (random_projection(alg, rng)
                                       + alg.block_unit(0))
    total = sum(np.trace(x).real for x in rho.blocks)
    return functional_from_density(rho / total)


def check_gns_construction(counts, rng):
    failures = []
    for dims in ((2,), (3,), (1, 1, 1)):
        alg = FdAlgebra(dims)
        for _ in range(counts['gns']):
            omega = _random_state(alg, rng)
            result = gns(omega)
            try:
                residuals = check_gns(result)
            except FdAlgError as exc:
                failures.append({'algebra': alg, 'error': str(exc)})
                continue
            if max(residuals.values()) > 1e-8:
                failures.append({'algebra': alg, 'residuals': residuals})
            if not approx_equal(carrier(result.rep), central_carrier(omega)):
                failures.append({'algebra': alg, 'case': 'carrier'})
    for n in (2, 3):
        alg = FdAlgebra((n,))
        result = gns(trace_functional(alg) * (1.0 / n))
        if result.hilbert_dim != n * n:
            failures.append({'algebra': alg, 'hilbert_dim': result.hilbert_dim})
    return failures


def check_duplicability(counts, rng):
    failures = []
    expected = [((1,), True), ((1, 1, 1), True), ((2,), False),
                ((2, 1), False), ((3,), False)]
    for dims, answer in expected:
        if is_duplicable(FdAlgebra(dims)) != answer:
            failures.append({'dims': list(dims), 'expected': answer})
    if duplicator_witness(FdAlgebra((2,)), seed=rng) is None:
        failures.append({'case': 'no witness on M2'})
    classical = FdAlgebra((1, 1, 1))
    delta = duplicator(classical)
    if delta is None or not (is_subunital(delta)
                             and map_equal(delta, multiplication_map(classical))):
        failures.append({'case': 'duplicator on C3'})
    return failures


def check_monoidal(counts, rng):
    A, B, C = FdAlgebra((2,)), FdAlgebra((1, 1)), FdAlgebra((2, 1))
    failures = []
    structural = [('associator', associator(A, B, C)),
                  ('braiding', braiding(A, C)),
                  ('left unitor', unitors(C)[0]),
                  ('right unitor', unitors(C)[1]),
                  ('distributor', distributor(A, [B, C]))]
    for name, f in structural:
        if f.dom.dim != f.cod.dim or not is_miu(f):
            failures.append({'map': name})
            continue
        try:
            f.inverse()
        except PreconditionError:
            failures.append({'map': name, 'case': 'not invertible'})
    points = counts['coherence']
    residuals = {
        'pentagon': check_pentagon(A, B, C, B, samples=points, seed=rng),
        'triangle': check_triangle(A, C, samples=points, seed=rng),
        'hexagon': check_hexagon(A, B, C, samples=points, seed=rng),
    }
    for name, value in sorted(residuals.items()):
        if value > 1e-9:
            failures.append({'diagram': name, 'residual': value})
    ts = tensor_algebra(A, C)
    for _ in range(counts['coherence']):
        a = random_positive(A, rng, rank=1)
        c = random_positive(C, rng, rank=1)
        if not approx_equal(ceiling(real_part(tensor_elements(ts, a, c))),
                            tensor_elements(ts, ceiling(a), ceiling(c))):
            failures.append({'case': 'ceiling of tensor', 'a': a, 'b': c})
    return failures


def _numerical_radius(x, steps=720):
    best = 0.0
    for theta in np.linspace(0.0, 2 * np.pi, steps, endpoint=False):
        y = np.exp(1j * theta) * x
        best = max(best, np.linalg.eigvalsh(0.5 * (y + y.conj().T))[-1])
    return float(best)


def check_inequalities(counts, rng):
    failures = []
    alg = FdAlgebra((3,))
    for _ in range(counts['inequalities']):
        omega = random_state(alg, rng)
        a, b = random_element(alg, rng), random_element(alg, rng)
        value = lambda x: omega(x).blocks[0][0, 0]
        lhs = abs(value(a.adjoint() * b)) ** 2
        rhs = (value(a.adjoint() * a) * value(b.adjoint() * b)).real
        if lhs > rhs * (1 + 1e-9) + 1e-12:
            failures.append({'inequality': 'Kadison', 'a': a, 'b': b})

        f = random_cp_map(alg, FdAlgebra((2,)), rng)
        left = f(a.adjoint() * b) * f(b.adjoint() * a)
        right = operator_norm(f(b.adjoint() * b)) * f(a.adjoint() * a)
        if not is_positive(real_part(right - left)):
            failures.append({'inequality': 'cp Cauchy-Schwarz', 'a': a, 'b': b})

        g = random_cpu_map(alg, FdAlgebra((2, 1)), rng)
        x = random_self_adjoint(alg, rng)
        x = x / operator_norm(x)
        if operator_norm(g(x)) > operator_norm(g(alg.unit())) + 1e-9:
            failures.append({'inequality': 'Russo-Dye', 'a': x})

        # V*(·)V with V an isometry C^2 -> C^3 is unital; elements a with
        # aV = Vb lie in its multiplicative domain
        v = random_unitary_matrix(rng, 3)[:, :2]
        small = random_element(FdAlgebra((2,)), rng).blocks[0]
        rest = np.eye(3) - v @ v.conj().T
        m = Element(alg, [v @ small @ v.conj().T
                          + rest @ random_element(alg, rng).blocks[0] @ rest])
        h = kraus_map(alg, FdAlgebra((2,)), [(0, 0, v)])
        y = random_element(alg, rng)
        if not (approx_equal(h(m.adjoint() * m), h(m).adjoint() * h(m))
                and approx_equal(h(y * m), h(y) * h(m))):
            failures.append({'inequality': 'multiplicative domain', 'a': m})

        low = random_positive(alg, rng) + 0.1 * alg.unit()
        high = low + random_positive(alg, rng, rank=1)
        gap = real_part(pseudoinverse(low) - pseudoinverse(high))
        if not is_positive(gap):
            failures.append({'inequality': 'pseudoinverse antitone',
                             'a': low, 'b': high})

    nilpotent = Element(FdAlgebra((2,)), [np.array([[0.0, 2.0], [0.0, 0.0]])])
    values = spectrum(nilpotent).values
    if abs(operator_norm(nilpotent) - 2.0) > 1e-12 or max(abs(v) for v in values) > 1e-12:
        failures.append({'case': 'norm and spectrum of (0 2; 0 0)'})
    radius = _numerical_radius(np.array([[0.0, 1.0], [0.0, 0.0]]))
    if abs(radius - 0.5) > 1e-6:
        failures.append({'case': 'vector states of (0 1; 0 0)', 'value': radius})
    a = Element(FdAlgebra((2,)), [np.array([[1.0, 0.0], [0.0, 0.0]])])
    b = a + Element(a.algebra, [0.5 * np.ones((2, 2))])
    if not is_positive(b - a) or is_positive(b * b - a * a):
        failures.append({'case': 'a <= b without a² <= b²'})
    return failures


CHECKS = OrderedDict([
    ('sequential product axioms', check_sequential_product),
    ('square root axiom', check_square_root_axiom),
    ('choi criterion agrees with n-positivity', check_choi_criterion),
    ('division and polar decomposition', check_division),
    ('projection lattice identities', check_projection_lattice),
    ('wedderburn recovery', check_wedderburn),
    ('gns construction', check_gns_construction),
    ('duplicability', check_duplicability),
    ('monoidal coherence', check_monoidal),
    ('inequalities', check_inequalities),
])


def run_suite(level='smoke', seed=None, names=None):
    """Run the checks (all, or those in ``names``) and return
    :class:`CheckResult` records in order."""
    if level not in LEVELS:
        raise PreconditionError("unknown level %r (choose from %s)"
                                % (level, ", ".join(sorted(LEVELS))))
    seed = settings.DEFAULT_SEED if seed is None else seed
    counts = LEVELS[level]
    results = []
    for index, (name, check) in enumerate(CHECKS.items()):
        if names is not None and name not in names:
            continue
        start = time.time()
        try:
            failures = check(counts, rng_from([seed, index]))
        except (FdAlgError, np.linalg.LinAlgError) as exc:
            logger.exception("%s raised", name)
            failures = [{'error': type(exc).__name__, 'message': str(exc)}]
        elapsed = time.time() - start
        logger.info("%s: %s (%.1fs)", name,
                    "ok" if not failures else "%d failures" % len(failures),
                    elapsed)
        results.append(CheckResult(name=name, passed=not failures,
                                   failures=failures[:5], seconds=elapsed))
    return results
