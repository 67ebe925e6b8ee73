from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import argparse
import csv
import json
import sys

from toricech.bounds.families import FAMILY_KINDS, TargetFamily
from toricech.bounds.threshold import DEFAULT_TOLERANCE, SCAN_COLUMNS, scan, threshold_search, write_csv, \
    write_json_lines
from toricech.capacities.capacity import DEFAULT_NODE_BUDGET, capacity, find_minimal_generator, is_minimal
from toricech.core.errors import BudgetExceeded, CertificateError, ToricECHError
from toricech.core.parallel import available_jobs
from toricech.core.rational import decimal_string, format_rational, parse_rational
from toricech.domains.toric import action, format_domain, parse_domain
from toricech.lattice.enumeration import enumerate_generators
from toricech.lattice.generator import format_product, j_zero, parse_product
from toricech.obstruct.certificate import CRITERIA, Certificate
from toricech.obstruct.witness import DEFAULT_SEARCH_BUDGET, SearchOptions, check_embedding
from toricech.version import __version__


__all__ = ['ArgumentParser', 'init_parser', 'main', 'run']


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_CERTIFICATE = 3


class ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors with exit code 1; 2 is kept for exhausted budgets."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f'usage error | {message}', file=sys.stderr)
        sys.exit(EXIT_USAGE)


def init_parser():
    common = argparse.ArgumentParser(add_help=False)

    # arguments shared by every command
    common.add_argument('--format', default='json', choices=('json', 'csv'), help='output format (default: json)')
    common.add_argument('--budget', default=None, type=int,
                        help=f'node budget per search (default: {DEFAULT_NODE_BUDGET} for capacity queries, '
                             f'{DEFAULT_SEARCH_BUDGET} for witness searches)')
    common.add_argument('--jobs', default=None, type=int, help='worker processes (default: available cores)')
    common.add_argument('--verbose', action='store_true', help='report search progress on stderr')

    # arguments for witness searches
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument('--conjectural', action='store_true',
                        help='accept any all-e target generator; results are conditional')
    search.add_argument('--criterion', default='full', choices=CRITERIA, help='witness criterion (default: full)')
    search.add_argument('--max-n', default=None, type=int, help='largest number of factors to try')

    parser = ArgumentParser('toricech', description='ECH capacities and embedding obstructions of convex toric '
                                                    'domains, in exact arithmetic')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    capacity_parser = commands.add_parser('capacity', parents=[common], help='the k-th ECH capacity')
    capacity_parser.add_argument('--domain', required=True, type=parse_domain,
                                 help='P(a,b), E(a,b), B(c) or poly[...]')
    capacity_parser.add_argument('--k', required=True, type=int, help='capacity index k >= 0')

    minimal_parser = commands.add_parser('minimal', parents=[common], help='minimal generator or minimality test')
    minimal_parser.add_argument('--domain', required=True, type=parse_domain, help='the domain')
    group = minimal_parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--k', type=int, help='find the minimal generator with I = 2k')
    group.add_argument('--gen', type=str, help='test whether this generator is minimal')

    index_parser = commands.add_parser('index', parents=[common], help='ECH index and gradings of a generator')
    index_parser.add_argument('--gen', required=True, type=str, help='formal product, e.g. "e(1,0)^2 h(1,1)"')
    index_parser.add_argument('--extended', action='store_true', help='allow repeated h factors')

    action_parser = commands.add_parser('action', parents=[common], help='action of a generator')
    action_parser.add_argument('--domain', required=True, type=parse_domain, help='the domain')
    action_parser.add_argument('--gen', required=True, type=str, help='formal product')

    check_parser = commands.add_parser('check', parents=[common, search], help='try to exclude an embedding')
    check_parser.add_argument('--domain', required=True, type=parse_domain, help='the domain to embed')
    check_parser.add_argument('--target', required=True, type=parse_domain, help='the target domain')
    check_parser.add_argument('--gens', required=True, nargs='+', type=str, help='target generators, in order')
    check_parser.add_argument('--certificate-out', default=None, type=str,
                              help='write the witness certificates here as a JSON array')

    verify_parser = commands.add_parser('verify-certificate', parents=[common], help='re-check certificates')
    verify_parser.add_argument('path', type=str, help='certificate document or array of documents')

    bound_parser = commands.add_parser('bound', parents=[common, search], help='sharp scale threshold')
    bound_parser.add_argument('--domain', required=True, type=parse_domain, help='the domain to embed')
    bound_parser.add_argument('--family', required=True, choices=FAMILY_KINDS, help='target family')
    bound_parser.add_argument('--ratio', default=Fraction(1), type=parse_rational, help='family ratio b (default: 1)')
    bound_parser.add_argument('--d-max', default=5, type=int, help='target recipe size (default: 5)')
    bound_parser.add_argument('--gens', default=None, nargs='+', type=str, help='explicit target generators')
    bound_parser.add_argument('--tol', default=DEFAULT_TOLERANCE, type=parse_rational,
                             help='tolerance (default: 1/1000)')

    scan_parser = commands.add_parser('scan', parents=[common, search], help='thresholds for P(a,1) over a grid',
                                      description=f'columns: {", ".join(SCAN_COLUMNS)}')
    scan_parser.add_argument('--family', required=True, choices=FAMILY_KINDS, help='target family')
    scan_parser.add_argument('--ratio', default=Fraction(1), type=parse_rational, help='family ratio b (default: 1)')
    scan_parser.add_argument('--grid', default=None, nargs='+', type=parse_rational, help='explicit values of a')
    scan_parser.add_argument('--a-min', default=None, type=parse_rational, help='first value of a')
    scan_parser.add_argument('--a-max', default=None, type=parse_rational, help='last value of a')
    scan_parser.add_argument('--a-step', default=Fraction(1, 4), type=parse_rational, help='grid step (default: 1/4)')
    scan_parser.add_argument('--d-max', default=5, type=int, help='target recipe size (default: 5)')
    scan_parser.add_argument('--tol', default=DEFAULT_TOLERANCE, type=parse_rational,
                             help='tolerance (default: 1/1000)')

    enumerate_parser = commands.add_parser('enumerate', parents=[common], help='list convex generators by index')
    group = enumerate_parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--max-index', type=int, help='all generators with I <= this')
    group.add_argument('--index', type=int, help='all generators with exactly this I')
    enumerate_parser.add_argument('--all-e', action='store_true', help='only generators without h labels')
    return parser


def _emit(record: Dict[str, Any], args) -> None:
    if args.format == 'csv':
        flat = {k: v for k, v in record.items() if not isinstance(v, (dict, list))}
        writer = csv.DictWriter(sys.stdout, fieldnames=list(flat), lineterminator='\n')
        writer.writeheader()
        writer.writerow({k: _csv_value(v) for k, v in flat.items()})
    else:
        print(json.dumps(record, indent=2))


def _csv_value(value: Any) -> Any:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return '' if value is None else value


def _search_options(args, jobs: int) -> SearchOptions:
    return SearchOptions(
        conjectural_mode=args.conjectural,
        max_n=args.max_n,
        node_budget=args.budget if args.budget is not None else DEFAULT_SEARCH_BUDGET,
        criterion=args.criterion,
        jobs=jobs,
        verbose=args.verbose,
    )


def _capacity_budget(args) -> int:
    return args.budget if args.budget is not None else DEFAULT_NODE_BUDGET


def run_capacity(args) -> int:
    c = capacity(args.domain, args.k, _capacity_budget(args))
    _emit({'schema': 'toricech.capacity/1', 'domain': format_domain(args.domain), 'k': args.k,
           'c': format_rational(c)}, args)
    return EXIT_OK


def run_minimal(args) -> int:
    record: Dict[str, Any] = {'schema': 'toricech.minimal/1', 'domain': format_domain(args.domain)}
    if args.gen is not None:
        generator = parse_product(args.gen)
        record['generator'] = format_product(generator)
        record['minimal'] = is_minimal(args.domain, generator, _capacity_budget(args))
    else:
        generator = find_minimal_generator(args.domain, args.k, _capacity_budget(args))
        record['k'] = args.k
        record['generator'] = format_product(generator) if generator is not None else None
        record['action'] = format_rational(action(args.domain, generator)) if generator is not None else None
    _emit(record, args)
    return EXIT_OK


def run_index(args) -> int:
    generator = parse_product(args.gen, extended=args.extended)
    _emit({
        'schema': 'toricech.index/1',
        'generator': format_product(generator),
        'I': generator.index,
        'J0': j_zero(generator),
        'L': generator.lattice_count,
        'x': generator.x,
        'y': generator.y,
        'm': generator.mult,
        'h': generator.h,
        'e': generator.e,
    }, args)
    return EXIT_OK


def run_action(args) -> int:
    generator = parse_product(args.gen)
    _emit({'schema': 'toricech.action/1', 'domain': format_domain(args.domain),
           'generator': format_product(generator), 'action': format_rational(action(args.domain, generator))}, args)
    return EXIT_OK


def run_check(args) -> int:
    targets = [parse_product(text) for text in args.gens]
    opts = _search_options(args, args.jobs)
    verdict = check_embedding(args.domain, args.target, targets, opts)
    record: Dict[str, Any] = {
        'schema': 'toricech.verdict/1',
        'domain': format_domain(args.domain),
        'target': format_domain(args.target),
        'verdict': 'excluded' if verdict.excluded else 'not-excluded',
        'conditional': verdict.conditional,
    }
    if verdict.excluded:
        record['excluding_generator'] = format_product(verdict.target)
        record['trace'] = dict(verdict.trace)
    else:
        record['certificates'] = [certificate.to_dict() for certificate in verdict.certificates]
        if args.certificate_out:
            with open(args.certificate_out, 'w') as f:
                json.dump([certificate.to_dict() for certificate in verdict.certificates], f, indent=2)
                f.write('\n')
    _emit(record, args)
    return EXIT_OK


def run_verify(args) -> int:
    with open(args.path) as f:
        text = f.read()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise CertificateError(f'certificate is not valid JSON: {e}') from e
    documents = document if isinstance(document, list) else [document]
    for entry in documents:
        if not isinstance(entry, dict):
            raise CertificateError('every certificate must be a JSON object')
        Certificate.from_dict(entry)
    _emit({'schema': 'toricech.verification/1', 'valid': True, 'certificates': len(documents)}, args)
    return EXIT_OK


def run_bound(args) -> int:
    family = TargetFamily(args.family, args.ratio)
    targets = [parse_product(text) for text in args.gens] if args.gens else None
    threshold = threshold_search(args.domain, family, targets=targets, d_max=args.d_max, tol=args.tol,
                                 opts=_search_options(args, args.jobs))
    _emit({
        'schema': 'toricech.bound/1',
        'domain': format_domain(args.domain),
        'family': str(family),
        'bound': format_rational(threshold.value),
        'bound_decimal': decimal_string(threshold.value),
        'lo': format_rational(threshold.lo),
        'hi': format_rational(threshold.hi),
        'target': format_product(threshold.target) if threshold.target is not None else None,
        'steps': threshold.steps,
        'tol': format_rational(args.tol),
    }, args)
    return EXIT_OK


def _grid(args) -> List[Fraction]:
    if args.grid:
        return list(args.grid)
    if args.a_min is None or args.a_max is None:
        raise ValueError('scan needs --grid or both --a-min and --a-max')
    if args.a_step <= 0:
        raise ValueError('--a-step must be positive')
    grid, a = [], args.a_min
    while a <= args.a_max:
        grid.append(a)
        a += args.a_step
    return grid


def run_scan(args) -> int:
    family = TargetFamily(args.family, args.ratio)
    rows = scan(_grid(args), family, args.d_max, args.tol, _search_options(args, 1), args.jobs)
    if args.format == 'csv':
        write_csv(rows, sys.stdout)
    else:
        write_json_lines(rows, sys.stdout)
    return EXIT_OK


def run_enumerate(args) -> int:
    generators = enumerate_generators(max_index=args.max_index, index=args.index, all_e=args.all_e)
    if args.format == 'csv':
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(['generator', 'I'])
        for generator in generators:
            writer.writerow([format_product(generator), generator.index])
    else:
        print(json.dumps({
            'schema': 'toricech.generators/1',
            'generators': [{'generator': format_product(g), 'I': g.index} for g in generators],
        }, indent=2))
    return EXIT_OK


COMMANDS = {
    'capacity': run_capacity,
    'minimal': run_minimal,
    'index': run_index,
    'action': run_action,
    'check': run_check,
    'verify-certificate': run_verify,
    'bound': run_bound,
    'scan': run_scan,
    'enumerate': run_enumerate,
}


def main(args) -> int:
    if args.jobs is None or args.jobs <= 0:
        args.jobs = available_jobs()
    if args.budget is not None and args.budget <= 0:
        print('usage error | --budget must be positive', file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as e:
        print(f'budget exceeded | {e}', file=sys.stderr)
        return EXIT_BUDGET
    except CertificateError as e:
        print(f'certificate rejected | {e}', file=sys.stderr)
        return EXIT_CERTIFICATE
    except (ToricECHError, ValueError, OSError) as e:
        print(f'error | {e}', file=sys.stderr)
        return EXIT_USAGE


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = init_parser()
    return main(parser.parse_args(argv))


def console_entry() -> None:
    sys.exit(run())
