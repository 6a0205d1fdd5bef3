"""Exact-identity and Monte Carlo verification suites."""

import itertools
import time

from gmpy2 import mpq

from .distributions import conductance_pdf, eval_cdf, fixed_trace_cdf, \
        fixed_trace_pdf, integrate_exact
from .ensemble import EnsembleParams, laguerre_parameter
from .exppoly import ParameterError
from .montecarlo import cdf_interpolant, ks_critical_value, ks_test, \
        sample_conductance, sample_fixed_trace_largest, \
        sample_wishart_largest
from .recursion import InternalConsistencyError, check_table, \
        compute_tables

__all__ = ['dense_term_counts', 'exact_checks', 'exact_suite', 'mc_wishart',
           'mc_conductance', 'DEFAULT_GRID']

DEFAULT_GRID = dict(n=range(1, 7), a=range(0, 5), beta=range(1, 5))


def dense_term_counts(table):
    """
    Number of coefficients in the dense per-block coefficient lists of P
    and Q: block ``j`` of Q runs from ``x^0`` to its leading power and
    block ``j`` of P from ``x^a``. Interior zeros are counted.
    """
    a = table.params.a
    top_c, top_d = {}, {}
    for j, k in table.c:
        top_c[j] = max(top_c.get(j, -1), k)
    for j, k in table.d:
        top_d[j] = max(top_d.get(j, -1), k)
    n_p = sum(t - a + 1 for t in top_c.values())
    n_q = sum(t + 1 for t in top_d.values())
    return n_p, n_q


def exact_checks(table):
    """All exact identities for one table as ``[(name, passed)]``."""
    prm = table.params
    try:
        results = check_table(table)
    except InternalConsistencyError as err:
        return [(str(err), False)]
    n_p, n_q = dense_term_counts(table)
    results.append(('P term count = %d' % prm.pdf_term_count(),
                    n_p == prm.pdf_term_count()))
    results.append(('Q term count = %d' % prm.cdf_term_count(),
                    n_q == prm.cdf_term_count()))
    if prm.n > 1:
        F = fixed_trace_cdf(table)
        f = fixed_trace_pdf(table)
        results.append(('integral of P_F = 1', integrate_exact(f) == 1))
        results.append(('Q_F(1/n) = 0', F.evaluate(mpq(1, prm.n)) == 0))
        results.append(('Q_F(1) = 1', F.evaluate(1) == 1))
        results.append(('P_F = dQ_F/dy', F.derivative().pieces == f.pieces))
    return results


def exact_suite(params_list):
    """Run :func:`exact_checks` over ``params_list``; returns a report
    dict with one entry per parameter set."""
    report = []
    for prm in params_list:
        t0 = time.perf_counter()
        try:
            table = compute_tables(prm, check=False)
            checks = exact_checks(table)
        except (InternalConsistencyError, ParameterError) as err:
            checks = [(str(err), False)]
        report.append({
            'params': {'n': prm.n, 'a': prm.a, 'beta': prm.beta},
            'checks': [{'name': nm, 'passed': ok} for nm, ok in checks],
            'passed': all(ok for _, ok in checks),
            'seconds': round(time.perf_counter() - t0, 4)})
    return report


def default_grid():
    g = DEFAULT_GRID
    return [EnsembleParams(n, a, b)
            for b, n, a in itertools.product(g['beta'], g['n'], g['a'])]


def _report(name, stat, count, threshold=None):
    crit = ks_critical_value(count)
    threshold = crit if threshold is None else threshold
    return {'name': name, 'statistic': stat, 'critical_value': float(crit),
            'threshold': float(threshold), 'passed': bool(stat < threshold)}


def mc_wishart(params, count, seed, table=None, sampler=None,
               threshold=None):
    """KS checks of unrestricted and fixed-trace largest eigenvalues."""
    table = table or compute_tables(params)
    out = []
    batch = sample_wishart_largest(params, count, seed, sampler)
    hi = float(batch.values.max()) * 1.01
    cdf = cdf_interpolant(lambda x: eval_cdf(table, x) if x > 0 else 0,
                          0.0, hi)
    stat, _ = ks_test(batch, cdf)
    out.append(_report('largest eigenvalue (%s)' % batch.sampler_id, stat,
                       count, threshold))
    if params.n > 1:
        batch = sample_fixed_trace_largest(params, count, seed + 1, sampler)
        F = fixed_trace_cdf(table)
        stat, _ = ks_test(batch, cdf_interpolant(F, 1.0 / params.n, 1.0))
        out.append(_report('fixed-trace largest eigenvalue', stat, count,
                           threshold))
    return out


def mc_conductance(n1, n2, beta, count, seed, threshold=None):
    """KS check of sampled conductances against the exact density."""
    laguerre_parameter(n1, n2, beta)
    pg = conductance_pdf(n1, n2, beta)
    G = pg.antiderivative()
    batch = sample_conductance(n1, n2, beta, count, seed)
    stat, _ = ks_test(batch, cdf_interpolant(G, 0.0, float(min(n1, n2))))
    return [_report('conductance n1=%d n2=%d beta=%d' % (n1, n2, beta),
                    stat, count, threshold)]
