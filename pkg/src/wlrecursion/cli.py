"""
Command-line interface.

Subcommands::

    wlrecursion coeffs --n 5 --a 5 --beta 2 --out table.json
    wlrecursion eval --table table.json --what cdf --grid 0:40:200
    wlrecursion eval --what conductance --n1 2 --n2 3 --beta 1 --grid 0:2:100
    wlrecursion verify exact --n 3 --a 2 --beta 3
    wlrecursion verify mc --n1 2 --n2 3 --beta 2 --samples 100000

Exit codes: 0 all checks pass, 1 verification failure, 2 parameter error.
"""

import argparse
import json
import sys

import mpmath

from .distributions import conductance_pdf, eval_cdf, eval_pdf, \
        fixed_trace_cdf, fixed_trace_pdf
from .ensemble import EnsembleParams
from .exppoly import DomainError, ParameterError, as_rational
from .recursion import InternalConsistencyError, check_table, \
        compute_tables
from .tablefile import dumps, read_table, write_table
from .verify import default_grid, dense_term_counts, exact_suite, \
        mc_conductance, mc_wishart

EXIT_OK, EXIT_FAIL, EXIT_PARAM = 0, 1, 2


def parse_grid(text):
    """``'lo:hi:steps'`` -> list of ``steps + 1`` exact rational points."""
    try:
        lo, hi, steps = text.split(':')
        lo, hi, steps = as_rational(lo), as_rational(hi), int(steps)
    except (ValueError, TypeError):
        raise ParameterError('grid must look like lo:hi:steps, got %r'
                             % text)
    if steps < 1 or hi < lo:
        raise ParameterError('grid needs steps >= 1 and lo <= hi')
    return [lo + (hi - lo) * i / steps for i in range(steps + 1)]


def _params(args):
    if args.n is None or args.a is None or args.beta is None:
        raise ParameterError('--n, --a and --beta are required')
    return EnsembleParams(args.n, args.a, args.beta)


def _emit(text, out):
    if out:
        with open(out, 'w') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_coeffs(args):
    prm = _params(args)
    table = compute_tables(prm)
    n_p, n_q = dense_term_counts(table)
    if args.out:
        write_table(table, args.out)
    else:
        sys.stdout.write(dumps(table) + '\n')
    st = table.stats
    sys.stderr.write(
        'n=%d a=%d beta=%d gamma=%d: all identities passed\n'
        'P terms %d (formula %d), Q terms %d (formula %d), nonzero %d/%d\n'
        'peak term count %d, max coefficient bits %d, %.3f s\n'
        % (prm.n, prm.a, prm.beta, prm.gamma, n_p, prm.pdf_term_count(),
           n_q, prm.cdf_term_count(), table.pdf_terms, table.cdf_terms,
           st.peak_terms, st.max_bit_length, st.wall_time))
    return EXIT_OK


def cmd_eval(args):
    xs = parse_grid(args.grid)
    digits = args.precision
    if args.what == 'conductance':
        if None in (args.n1, args.n2, args.beta):
            raise ParameterError('conductance needs --n1, --n2, --beta')
        pp = conductance_pdf(args.n1, args.n2, args.beta)
        func = lambda x: _mpf(pp.evaluate(x), digits)
    else:
        if args.table:
            table = read_table(args.table)
            check_table(table)
        else:
            table = compute_tables(_params(args))
        if args.what == 'pdf':
            func = lambda x: eval_pdf(table, x, max(digits, 16))
        elif args.what == 'cdf':
            func = lambda x: eval_cdf(table, x, max(digits, 16))
        else:
            pp = (fixed_trace_pdf if args.what == 'ft-pdf'
                  else fixed_trace_cdf)(table)
            func = lambda x: _mpf(pp.evaluate(x), digits)
    lines = ['x,value']
    for x in xs:
        v = func(x)
        lines.append('%s,%s' % (mpmath.nstr(_mpf(x, digits), digits),
                                mpmath.nstr(v, digits)))
    _emit('\n'.join(lines) + '\n', args.out)
    return EXIT_OK


def _mpf(q, digits):
    with mpmath.workdps(digits + 5):
        return mpmath.mpf(q.numerator) / q.denominator


def cmd_verify(args):
    report = {'scope': args.scope, 'exact': None, 'mc': None}
    ok = True
    if args.scope in ('exact', 'all'):
        if args.n is not None:
            plist = [_params(args)]
        else:
            plist = default_grid()
        rows = exact_suite(plist)
        report['exact'] = rows
        ok &= all(r['passed'] for r in rows)
    if args.scope in ('mc', 'all'):
        rows = []
        if args.n1 is not None:
            if args.beta is None or args.n2 is None:
                raise ParameterError('mc conductance needs --n2 and --beta')
            rows += mc_conductance(args.n1, args.n2, args.beta,
                                   args.samples, args.seed)
        if args.n is not None:
            rows += mc_wishart(_params(args), args.samples, args.seed)
        if not rows:
            raise ParameterError('verify mc needs (--n --a --beta) or '
                                 '(--n1 --n2 --beta)')
        report['mc'] = rows
        ok &= all(r['passed'] for r in rows)
    report['passed'] = bool(ok)
    _emit(json.dumps(report, indent=1) + '\n', args.out)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog='wlrecursion',
        description='Exact largest-eigenvalue distributions of the '
                    'Wishart-Laguerre ensemble and Landauer conductance.')
    sub = parser.add_subparsers(dest='command', required=True)

    def common(p):
        p.add_argument('--n', type=int)
        p.add_argument('--a', type=int)
        p.add_argument('--beta', type=int)
        p.add_argument('--out', help='output path (default: stdout)')

    p = sub.add_parser('coeffs', help='compute and store c_jk, d_jk')
    common(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser('eval', help='evaluate a distribution on a grid')
    common(p)
    p.add_argument('--table', help='table file written by coeffs')
    p.add_argument('--what', required=True,
                   choices=['pdf', 'cdf', 'ft-pdf', 'ft-cdf', 'conductance'])
    p.add_argument('--grid', required=True, help='lo:hi:steps')
    p.add_argument('--precision', type=int, default=20)
    p.add_argument('--n1', type=int)
    p.add_argument('--n2', type=int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser('verify', help='run verification suites')
    common(p)
    p.add_argument('scope', choices=['exact', 'mc', 'all'])
    p.add_argument('--n1', type=int)
    p.add_argument('--n2', type=int)
    p.add_argument('--samples', type=int, default=100000)
    p.add_argument('--seed', type=int, default=20190101)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, DomainError, FileNotFoundError) as err:
        sys.stderr.write('error: %s\n' % err)
        return EXIT_PARAM
    except InternalConsistencyError as err:
        sys.stderr.write('verification failure: %s\n' % err)
        return EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
