# -*- coding: utf-8 -*-
"""
``fdalg`` command line.

Every command reads JSON (``--in FILE``, stdin otherwise) and prints one JSON
document.  Exit status is 0 on success, 1 for unparseable input, 2 when an
operation's precondition fails and 3 when a checked property fails; in the
last three cases the document is an error object
``{"error": ..., "message": ..., "witness": ...}``.
"""
import argparse
import logging
import logging.config
import sys

from fdalg import get_version, settings
from fdalg.algebra import get_tolerance, is_effect
from fdalg.division import (approximate_pseudoinverse, divide, left_divide,
    polar, pseudoinverse, seq_quotient)
from fdalg.exceptions import (FdAlgError, NotEffect, ParseError,
    PropertyFailure)
from fdalg.generators import (random_effect, random_element, random_positive,
    random_projection, random_self_adjoint, random_unitary)
from fdalg.maps import (carrier, choi, is_completely_positive, is_miu,
    is_positive_map, is_subunital, is_unital, random_cp_map, random_cpu_map,
    random_state)
from fdalg.measurement import (bracket_factors, check_axioms, corner_algebra,
    is_diamond_positive, is_diamond_self_adjoint, is_pure, op_by_name,
    seq_product, standard_filter)
from fdalg.projections import (ceiling, central_support, floor, join, meet,
    support)
from fdalg.serializers import (algebra_from_json, dumps, element_from_json,
    map_from_json, parse_dims, read_document)
from fdalg.spectral import (absolute, functional_calculus, named_function,
    spectrum, sqrt)
from fdalg.structure import (check_gns, gelfand_finite, generate_subalgebra,
    gns, make_subalgebra, wedderburn)
from fdalg.suite import CHECKS, LEVELS, run_suite
from fdalg.tensor import (bang, bang_unit, duplicator, duplicator_witness,
    is_duplicable, nsp, tensor_algebra, tensor_elements)

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as :class:`ParseError` instead of exiting."""

    def error(self, message):
        raise ParseError("%s: %s" % (self.prog, message))


# input helpers

def _element(args):
    return element_from_json(read_document(args.input))


def _map(args):
    return map_from_json(read_document(args.input))


def _operands(args, *names):
    doc = read_document(args.input)
    if not isinstance(doc, dict) or not set(names) <= set(doc):
        raise ParseError("expected an object with keys %s" % ", ".join(names))
    return [element_from_json(doc[name]) for name in names]


def _projection_list(args):
    doc = read_document(args.input)
    algebra = None
    if isinstance(doc, dict):
        algebra = algebra_from_json(doc['algebra']) if 'algebra' in doc else None
        doc = doc.get('elements')
    if not isinstance(doc, list):
        raise ParseError("expected a list of elements or "
                         "{\"algebra\": ..., \"elements\": [...]}")
    return [element_from_json(x, algebra) for x in doc], algebra


def _subalgebra(args, tol):
    doc = read_document(args.input)
    if not isinstance(doc, dict) or 'ambient' not in doc:
        raise ParseError("a subalgebra is {\"ambient\": ..., \"basis\": [...]} "
                         "or {\"ambient\": ..., \"generators\": [...]}")
    ambient = algebra_from_json(doc['ambient'])
    if 'generators' in doc:
        return generate_subalgebra(
            ambient, [element_from_json(x, ambient) for x in doc['generators']],
            tol)
    return make_subalgebra(
        ambient, [element_from_json(x, ambient) for x in doc.get('basis', [])],
        tol)


def _seed(args):
    return settings.DEFAULT_SEED if args.seed is None else args.seed


# commands

def cmd_spectrum(args, tol):
    a = _element(args)
    if args.f:
        a = functional_calculus(a, named_function(args.f), tol)
        return {'values': spectrum(a, tol).values, 'element': a}
    return {'values': spectrum(a, tol).values}


def cmd_sqrt(args, tol):
    return sqrt(_element(args), tol)


def cmd_abs(args, tol):
    return absolute(_element(args), tol)


def cmd_ceil(args, tol):
    return ceiling(_element(args), tol)


def cmd_floor(args, tol):
    return floor(_element(args), tol)


def cmd_support(args, tol):
    return support(_element(args), tol)


def cmd_csupport(args, tol):
    return central_support(_element(args), tol)


def cmd_join(args, tol):
    ps, algebra = _projection_list(args)
    return join(ps, algebra, tol)


def cmd_meet(args, tol):
    ps, algebra = _projection_list(args)
    return meet(ps, algebra, tol)


def cmd_polar(args, tol):
    return polar(_element(args), tol)


def cmd_pinv(args, tol):
    a = _element(args)
    if args.approximate:
        return approximate_pseudoinverse(a, tol)
    return pseudoinverse(a, tol)


def cmd_divide(args, tol):
    a, b = _operands(args, 'a', 'b')
    if args.left:
        return left_divide(b, a, tol)
    return divide(a, b, tol)


def cmd_seqquot(args, tol):
    a, b = _operands(args, 'a', 'b')
    return seq_quotient(a, b, tol)


def cmd_checkmap(args, tol):
    f = _map(args)
    everything = not (args.cp or args.miu or args.carrier)
    report = {}
    if args.cp or everything:
        report['cp'] = is_completely_positive(f, tol)
    if args.miu or everything:
        report['miu'] = is_miu(f, tol)
    if everything:
        verdict = is_positive_map(f, seed=_seed(args), tol=tol)
        report['positivity'] = verdict
        report['unital'] = is_unital(f, tol)
        report['subunital'] = is_subunital(f, tol)
        report['carrier'] = carrier(f, tol) if verdict.positive else None
    elif args.carrier:
        report['carrier'] = carrier(f, tol)
    return report


def cmd_choi(args, tol):
    return [{'block': b.domain_block_index, 'matrix': b.matrix,
             'min_eigenvalue': b.min_eigenvalue} for b in choi(_map(args))]


def cmd_corner(args, tol):
    return corner_algebra(_element(args), tol)


def cmd_filter(args, tol):
    return standard_filter(_element(args), tol)


def cmd_bracket(args, tol):
    return bracket_factors(_map(args), tol)


def cmd_purity(args, tol):
    f = _map(args)
    report = {'pure': is_pure(f, tol)}
    if f.dom == f.cod:
        report['diamond_self_adjoint'] = is_diamond_self_adjoint(
            f, seed=_seed(args), tol=tol)
        report['diamond_positive'] = is_diamond_positive(f, tol)
    return report


def cmd_seqprod(args, tol):
    p, q = _operands(args, 'p', 'q')
    if args.op == 'std':
        return seq_product(p, q, tol)
    for x in (p, q):
        if not is_effect(x, tol):
            raise NotEffect("operands must be effects", witness=x)
    return op_by_name(args.op)(p, q, tol)


def cmd_check_axioms(args, tol):
    return check_axioms(op_by_name(args.op), parse_dims(args.algebra),
                        trials=args.trials, seed=_seed(args), tol=tol)


def cmd_tensor(args, tol):
    algebras = [parse_dims(text) for text in args.algebras]
    product = algebras[0]
    for alg in algebras[1:]:
        product = tensor_algebra(product, alg).product
    return product


def cmd_tensor_el(args, tol):
    a, b = _operands(args, 'a', 'b')
    return tensor_elements(tensor_algebra(a.algebra, b.algebra), a, b)


def cmd_dup_check(args, tol):
    alg = parse_dims(args.algebra)
    if is_duplicable(alg):
        return {'duplicable': True, 'duplicator': duplicator(alg, tol)}
    return {'duplicable': False,
            'witness': duplicator_witness(alg, seed=_seed(args), tol=tol)}


def cmd_bang(args, tol):
    alg = parse_dims(args.algebra)
    return {'points': nsp(alg), 'algebra': bang(alg), 'unit': bang_unit(alg)}


def cmd_wedderburn(args, tol):
    found = wedderburn(_subalgebra(args, tol), seed=_seed(args), tol=tol)
    return {'dims': found.dims, 'central_projections': found.central_projections,
            'embedding': found.embedding}


def cmd_gelfand(args, tol):
    found = gelfand_finite(_subalgebra(args, tol), seed=_seed(args), tol=tol)
    return {'points': found.points,
            'central_projections': found.decomposition.central_projections}


def cmd_gns(args, tol):
    result = gns(map_from_json(read_document(args.state or args.input)), tol)
    return {'hilbert_dim': result.hilbert_dim, 'residuals': check_gns(result, tol),
            'eta': result.eta, 'rep': result.rep}


def cmd_verify_suite(args, tol):
    results = run_suite(args.level, seed=_seed(args), names=args.check or None)
    table = dict((r.name, {'status': 'pass' if r.passed else 'fail',
                           'failures': r.failures}) for r in results)
    if not all(r.passed for r in results):
        raise PropertyFailure("%d of %d checks failed"
                              % (sum(not r.passed for r in results), len(results)),
                              witness=table)
    return {'level': args.level, 'results': table}


GENERATORS = {
    'element': random_element,
    'selfadjoint': random_self_adjoint,
    'positive': random_positive,
    'effect': random_effect,
    'projection': random_projection,
    'unitary': random_unitary,
    'state': random_state,
}


def cmd_gen(args, tol):
    alg = parse_dims(args.algebra)
    seed = _seed(args)
    if args.kind in ('cpmap', 'cpumap'):
        cod = parse_dims(args.cod) if args.cod else alg
        make = random_cp_map if args.kind == 'cpmap' else random_cpu_map
        return make(alg, cod, seed)
    return GENERATORS[args.kind](alg, seed)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--in', dest='input', metavar='FILE',
                        help="read input JSON from FILE instead of stdin")
    common.add_argument('--out', dest='output', metavar='FILE',
                        help="write the result to FILE instead of stdout")
    common.add_argument('--seed', type=int, default=None,
                        help="seed for randomized checks and generators")
    common.add_argument('--tol', type=float, default=None,
                        help="relative tolerance (overrides EPS_REL)")
    common.add_argument('-v', '--verbose', action='store_true',
                        help="log debug output to stderr")

    parser = ArgumentParser(prog='fdalg',
                            description="Finite-dimensional von Neumann "
                                        "algebra toolkit.")
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + get_version())
    commands = parser.add_subparsers(dest='command', metavar='COMMAND',
                                     parser_class=ArgumentParser)
    commands.required = True

    def add(name, handler, help):
        sub = commands.add_parser(name, parents=[common], help=help)
        sub.set_defaults(handler=handler)
        return sub

    sub = add('spectrum', cmd_spectrum, "spectrum of an element")
    sub.add_argument('--f', metavar='NAME',
                     help="apply sqrt, abs, pospart, negpart, pow:α or "
                          "exp-phase first")
    add('sqrt', cmd_sqrt, "positive square root")
    add('abs', cmd_abs, "absolute value of a self-adjoint element")
    add('ceil', cmd_ceil, "least projection above")
    add('floor', cmd_floor, "greatest projection below an effect")
    add('support', cmd_support, "support projection")
    add('join', cmd_join, "join of projections")
    add('meet', cmd_meet, "meet of projections")
    add('csupport', cmd_csupport, "central support")
    add('polar', cmd_polar, "polar decomposition")
    sub = add('pinv', cmd_pinv, "pseudoinverse")
    sub.add_argument('--approximate', action='store_true',
                     help="print the terms of an approximate pseudoinverse")
    sub = add('divide', cmd_divide, "division {a, b}: a/b or b\\a")
    side = sub.add_mutually_exclusive_group()
    side.add_argument('--right', dest='left', action='store_false',
                      help="a/b (default)")
    side.add_argument('--left', dest='left', action='store_true',
                      help="b\\a")
    add('seqquot', cmd_seqquot, "sequential quotient {a, b}")
    sub = add('checkmap', cmd_checkmap, "properties of a linear map")
    sub.add_argument('--cp', action='store_true')
    sub.add_argument('--miu', action='store_true')
    sub.add_argument('--carrier', action='store_true')
    add('choi', cmd_choi, "Choi matrices of a map")
    add('corner', cmd_corner, "the corner eAe of a projection e")
    add('filter', cmd_filter, "the standard filter of a positive element")
    add('bracket', cmd_bracket, "factor a map as filter, bracket and corner")
    add('purity', cmd_purity, "purity and diamond predicates of a map")
    sub = add('seqprod', cmd_seqprod, "sequential product {p, q}")
    sub.add_argument('--op', default='std',
                     choices=['std', 'ceil', 'floorsplit', 'sign', 'phase'])
    sub = add('check-axioms', cmd_check_axioms,
              "check the sequential product axioms for an operation")
    sub.add_argument('--op', default='std',
                     choices=['std', 'ceil', 'floorsplit', 'sign', 'phase'])
    sub.add_argument('--algebra', default='2', metavar='DIMS')
    sub.add_argument('--trials', type=int, default=None)
    sub = add('tensor', cmd_tensor, "tensor product of algebras")
    sub.add_argument('--algebras', nargs='+', required=True, metavar='DIMS')
    add('tensor-el', cmd_tensor_el, "tensor product {a, b} of elements")
    sub = add('dup-check', cmd_dup_check, "duplicator or a witness against one")
    sub.add_argument('--algebra', required=True, metavar='DIMS')
    sub = add('bang', cmd_bang, "classical points and the unit η")
    sub.add_argument('--algebra', required=True, metavar='DIMS')
    add('wedderburn', cmd_wedderburn, "decompose a *-subalgebra")
    add('gelfand', cmd_gelfand, "points of a commutative *-subalgebra")
    sub = add('gns', cmd_gns, "GNS construction of a state")
    sub.add_argument('--state', metavar='FILE', help="the state's JSON map")
    sub = add('verify-suite', cmd_verify_suite, "run the acceptance battery")
    sub.add_argument('--level', default='smoke', choices=sorted(LEVELS))
    sub.add_argument('--check', action='append', choices=list(CHECKS),
                     help="run only this check (repeatable)")
    sub = add('gen', cmd_gen, "seeded random fixtures")
    sub.add_argument('--kind', required=True,
                     choices=sorted(GENERATORS) + ['cpmap', 'cpumap'])
    sub.add_argument('--algebra', required=True, metavar='DIMS')
    sub.add_argument('--cod', metavar='DIMS',
                     help="codomain for cpmap/cpumap (default: --algebra)")
    return parser


def _emit(text, path=None):
    if path:
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text + '\n')
    else:
        sys.stdout.write(text + '\n')


def main(argv=None):
    logging.config.dictConfig(settings.LOGGING)
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            logging.getLogger('fdalg').setLevel(logging.DEBUG)
        tol = get_tolerance()
        if args.tol is not None:
            tol = tol.with_eps_rel(args.tol)
        result = args.handler(args, tol)
        _emit(dumps(result), args.output)
    except FdAlgError as exc:
        logger.debug("%s: %s", exc.name, exc)
        _emit(dumps(exc.as_dict()))
        return exc.exit_status
    return 0


if __name__ == '__main__':
    sys.exit(main())
