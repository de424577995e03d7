"""Command-line front end of conewright.

This module contains the `main` entry point, the `UsageError` exception, the payload builders `table_payload`,
`cone_payload`, `space_payload` and `run_checks`, and the text renderers `render_table`, `render_cone` and
`render_space`. Every command builds a JSON-compatible payload first; the text output is rendered from that payload,
so `--json` output re-renders to exactly the same text.

Exit codes: 0 when everything passes, 1 when `check` finds a value mismatch, 2 when a computation fails, 64 on a
usage error.

Examples:
    From a shell:

        conewright table1
        conewright cone --case v5 --json
        conewright check --all
"""
import argparse
import json
import logging
import sys

from conewright import expected
from conewright.birat import (assemble_chambers, chi_matrix, fiber_invariant_checks, flop_matrix, H,
                              involution_matrix_v4, L, solve_chi, triple_intersection)
from conewright.detcy import (anticanonical_euler, blowup_flop_pair, cy_hodge, determinantal_pair, invariant_row,
                              plane_count_bundles, porteous_class, quintic_flop_pair, sigma_class, triple_products)
from conewright.gradedring import integrate, mul
from conewright.report import CheckItem, RunReport
from conewright.spaces import catalog_get, catalog_names

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_FAILURE = 2
EXIT_USAGE = 64

INVARIANT_COLUMNS = ('L^3', 'L^2H', 'LH^2', 'H^3', 'c2.L', 'c2.H', 'ODP')
TOPOLOGY_COLUMNS = ('chi_top', 'h21')


class UsageError(Exception):
    """Raised for invalid command-line arguments."""

    def __init__(self, message):
        super().__init__(message)


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        """Raises `UsageError` instead of exiting."""
        raise UsageError(message)


def _integer(value):
    if value.denominator != 1:
        raise ValueError(f'{value} is not an integer')
    return int(value)


def table_payload(name):
    """Builds the structured form of `table1`, `table2` or `table3`.

    Raises:
        ValueError: If `name` is not a table.
    """
    if name == 'table1':
        rows = [{'case': case, 'values': list(invariant_row(determinantal_pair(case)).values())}
                for case in expected.CASES]
        columns = INVARIANT_COLUMNS
    elif name == 'table2':
        rows = [{'case': case, 'values': list(cy_hodge(determinantal_pair(case)))} for case in expected.CASES]
        columns = TOPOLOGY_COLUMNS
    elif name == 'table3':
        rows = [{'case': 'v5+', 'values': list(invariant_row(quintic_flop_pair()).values())}]
        columns = INVARIANT_COLUMNS
    else:
        raise ValueError(f'unknown table {name!r}')
    return {'table': name, 'columns': list(columns), 'rows': rows}


def _aligned(lines):
    widths = [max(len(line[i]) for line in lines) for i in range(len(lines[0]))]
    return ''.join('  '.join(cell.rjust(w) for cell, w in zip(line, widths)) + '\n' for line in lines)


def render_table(payload):
    """Renders a table payload as right-aligned text columns."""
    lines = [['case'] + payload['columns']]
    lines += [[row['case']] + [str(v) for v in row['values']] for row in payload['rows']]
    return _aligned(lines)


def cone_payload(case):
    """Builds the structured form of the chamber decomposition of `case`."""
    return assemble_chambers(case).to_dict()


def render_cone(payload):
    """Renders a cone payload as its wall line followed by a table of chambers."""
    out = f"{payload['case']}: " + ' | '.join(payload['walls']) + '\n'
    lines = [[c['model'], c['lower'], c['upper'], c['lower_contraction'], c['upper_contraction'], c['via'] or '-']
             for c in payload['chambers']]
    return out + _aligned([['model', 'lower', 'upper', 'at lower', 'at upper', 'via']] + lines)


def space_payload(name):
    """Builds the structured summary of the catalog space `name`."""
    space = catalog_get(name)
    numbers = space.chern_numbers()
    return {
        'space': space.name(),
        'dimension': space.dimension(),
        'degree': _integer(space.degree()),
        'fano_index': space.fano_index(),
        'c1': str(space.tangent().c(1)),
        'chern_numbers': [_integer(v) for v in numbers],
    }


def render_space(payload):
    """Renders a space payload as aligned `key value` lines."""
    lines = [[key, str(value)] for key, value in payload.items()]
    return _aligned(lines)


def _case_checks(case):
    cfg = determinantal_pair(case)
    chi = expected.CHI_SOLUTION[case]
    checks = [
        ('intersection numbers', expected.TABLE1[case], lambda: invariant_row(cfg).values()),
        ('chi_top, h21', expected.TABLE2[case], lambda: cy_hodge(cfg)),
        ('anticanonical Euler number', expected.ANTICANONICAL_EULER[case],
         lambda: anticanonical_euler(cfg.space())),
        ('L_E.H_E^2, L_E^2.H_E', expected.DUAL_SIDE[case],
         lambda: tuple(triple_products(cfg.swapped())[i] for i in (2, 1))),
        ('determinantal flop image of L', chi, lambda: solve_chi(case).as_ints()),
        ('determinantal flop matrix', ((-1, 0), (chi[1], 1)), lambda: chi_matrix(case).rows()),
        ('walls', expected.WALLS[case], lambda: tuple(w.as_ints() for w in assemble_chambers(case).walls)),
    ]
    if case == 'v4':
        checks += [
            ('involution H.(L-H)^2', expected.INVOLUTION['a'],
             lambda: _integer(triple_intersection(invariant_row(cfg).triples(), H, L - H, L - H))),
            ('involution matrix', expected.INVOLUTION['rows'], lambda: involution_matrix_v4(invariant_row(cfg)).rows()),
            ('planes from D_1 on P3', expected.PORTEOUS['planes'],
             lambda: _integer(integrate(porteous_class(*plane_count_bundles(), 1)))),
        ]
    if case == 'v5':
        checks += [
            ('flop intersection numbers', expected.TABLE3['v5'], lambda: invariant_row(quintic_flop_pair()).values()),
            ('degree of Sigma', expected.PORTEOUS['sigma_degree'],
             lambda: _integer(integrate(mul(sigma_class(), catalog_get('P4').divisor())))),
        ]
    if case == 'gr24':
        checks += [
            ('blown-up flop triple products', expected.BLOWUP_TRIPLES, lambda: triple_products(blowup_flop_pair())),
        ]
    if case in expected.FLOP_SOLUTION:
        checks += [('flop image of L\'', expected.FLOP_SOLUTION[case],
                    lambda: flop_matrix(case)(L).as_ints())]
    return checks


def run_checks(cases, show_tb=False):
    """Runs every check of `cases` and returns the `RunReport`."""
    report = RunReport(show_tb)
    for case in cases:
        for name, value, compute in _case_checks(case):
            try:
                report.record(CheckItem(case, name, value, compute()))
            except Exception as e:
                report.record_error(case, name, e)
        try:
            for item in fiber_invariant_checks(case):
                report.record(item)
        except Exception as e:
            report.record_error(case, 'fibre invariants', e)
        LOGGER.info('%s: %d/%d checks passed', case, report.passed_count(), report.total())
    return report


def _emit(args, payload, text):
    if args.out:
        with open(args.out, 'w') as f:
            f.write(json.dumps(payload, indent=2) + '\n')
    print(json.dumps(payload, indent=2) if args.json else text, end='\n' if args.json else '')


def _run_table(args):
    payload = table_payload(args.command)
    _emit(args, payload, render_table(payload))
    return EXIT_OK


def _run_cone(args):
    payload = cone_payload(args.case)
    _emit(args, payload, render_cone(payload))
    return EXIT_OK


def _run_space(args):
    payload = space_payload(args.space)
    _emit(args, payload, render_space(payload))
    return EXIT_OK


def _run_check(args):
    if args.all:
        cases = expected.CASES
    elif args.case:
        cases = (args.case,)
    else:
        raise UsageError('check needs --all or --case')
    report = run_checks(cases, show_tb=args.verbose)
    _emit(args, report.to_dict(), report.render())
    if report.errors():
        return EXIT_FAILURE
    return EXIT_OK if report.passed() else EXIT_MISMATCH


def build_parser():
    """Returns the `argparse` parser of the `conewright` command; its errors raise `UsageError`."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='print the structured payload as JSON')
    common.add_argument('--out', metavar='PATH', help='also write the JSON payload to PATH')
    common.add_argument('--verbose', action='store_true', help='log pipeline steps at DEBUG level')

    parser = _ArgumentParser(prog='conewright', description='Exact intersection numbers and movable cones of '
                                                            'determinantal Calabi-Yau threefolds.')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True
    for name, title in (('table1', 'intersection numbers and node counts'),
                        ('table2', 'Euler numbers and h^{2,1}'),
                        ('table3', 'intersection numbers of the V5 flop')):
        commands.add_parser(name, parents=[common], help=title).set_defaults(handler=_run_table)
    cone = commands.add_parser('cone', parents=[common], help='chamber decomposition of the movable cone')
    cone.add_argument('--case', required=True, choices=expected.CASES)
    cone.set_defaults(handler=_run_cone)
    check = commands.add_parser('check', parents=[common], help='compare every computed value with its reference')
    selection = check.add_mutually_exclusive_group()
    selection.add_argument('--all', action='store_true')
    selection.add_argument('--case', choices=expected.CASES)
    check.set_defaults(handler=_run_check)
    space = commands.add_parser('space', parents=[common], help='degree and Chern numbers of a catalog space')
    space.add_argument('--space', required=True, type=str.lower, choices=[n.lower() for n in catalog_names()])
    space.set_defaults(handler=_run_space)
    return parser


def main(argv=None):
    """Runs the `conewright` command and returns its exit code."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f'conewright: {e}', file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        return args.handler(args)
    except UsageError as e:
        print(f'conewright: {e}', file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        LOGGER.debug('%s failed', args.command, exc_info=True)
        print(f'conewright: {type(e).__name__}: {e}', file=sys.stderr)
        return EXIT_FAILURE
