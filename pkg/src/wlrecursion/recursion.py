"""
Exact largest-eigenvalue distribution of the integer-beta Wishart-Laguerre
ensemble by a Selberg-type recursion.

The engine works with the auxiliary functions

.. math::

    L_{p,\\nu}^{(\\alpha)}(x) = \\frac{p!(\\nu-p)!}{\\nu!}
    \\int_{[0,x]^\\nu} \\prod_l t_l^{a} e^{-\\lambda t_l} |x-t_l|^\\alpha
    \\prod_{j<k}|t_k-t_j|^{2\\lambda}\\, e_p(x-t_1,\\dots,x-t_\\nu)\\,dt,

with :math:`\\lambda=\\beta/2`, which satisfy

.. math::

    \\lambda(\\nu-p) L_{p+1} = [\\lambda(\\nu-p)x + B_p] L_p
    + x L_p' - D_p x L_{p-1},

    B_p = (p-\\nu)[a+\\alpha+1+\\lambda(\\nu-p-1)],\\quad
    D_p = p[\\lambda(\\nu-p)+\\alpha+1].

Sweeping ``p = 0..nu-1`` maps :math:`L_{0,\\nu}^{(\\alpha)}` to
:math:`L_{0,\\nu}^{(\\alpha+1)}`; ``beta`` sweeps attach the factor
:math:`\\prod_l (x-t_l)^\\beta`, after which the integral over a new
largest variable raises the dimension by one.
"""

import logging
import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from .ensemble import EnsembleParams, partition_function
from .exppoly import ExpPoly, ParameterError

__all__ = ['RecursionState', 'CoefficientTable', 'InternalConsistencyError',
           'recurrence_step', 'raise_alpha', 'extend_nu', 'seed',
           'compute_tables', 'compute_all_tables', 'check_table',
           'RecursionStats']

logger = logging.getLogger(__name__)


class InternalConsistencyError(RuntimeError):
    """An exact identity that must hold for every table failed."""


@dataclass
class RecursionState(object):
    """Position ``(nu, alpha, p)`` of the inner loop with the two most
    recent auxiliary functions ``L_{p-1}`` and ``L_p``."""

    nu: int
    alpha: int
    p: int
    L_curr: ExpPoly
    L_prev: ExpPoly = None


@dataclass
class RecursionStats(object):
    peak_terms: int = 0
    max_bit_length: int = 0
    wall_time: float = 0.0
    steps: int = 0

    def observe(self, f):
        self.steps += 1
        if len(f) > self.peak_terms:
            self.peak_terms = len(f)


def _weight(params):
    # x^a e^{-beta x / 2} as an ExpPoly with rate beta/2
    return ExpPoly(params.lam, {(1, params.a): 1})


def recurrence_step(state, params):
    """
    Return :math:`L_{p+1,\\nu}^{(\\alpha)}` from ``state``.

    The four terms of the recurrence are accumulated in a single pass over
    the coefficients of ``L_p`` and ``L_{p-1}``: for a term
    :math:`q x^k e^{-j\\lambda x}` of ``L_p`` the contributions are
    :math:`(B_p+k)q` at :math:`x^k` and :math:`\\lambda(\\nu-p-j)q` at
    :math:`x^{k+1}`.
    """
    nu, alpha, p = state.nu, state.alpha, state.p
    if not 0 <= p < nu:
        raise ParameterError('recurrence_step needs 0 <= p < nu, got p=%d, '
                             'nu=%d' % (p, nu))
    lam = params.lam
    f = state.L_curr
    if f.rate_unit != lam:
        raise ParameterError('L_curr has rate %s, ensemble needs %s'
                             % (f.rate_unit, lam))
    B = (p - nu) * (params.a + alpha + 1 + lam * (nu - p - 1))
    D = p * (lam * (nu - p) + alpha + 1)
    inv = 1 / (lam * (nu - p))

    blocks = {}
    for j, poly in f._blocks.items():
        out = blocks.setdefault(j, {})
        shift = lam * (nu - p - j)
        for k, c in poly.items():
            out[k] = out.get(k, 0) + (B + k) * c
            if shift:
                out[k + 1] = out.get(k + 1, 0) + shift * c
    if D and state.L_prev is not None:
        for j, poly in state.L_prev._blocks.items():
            out = blocks.setdefault(j, {})
            for k, c in poly.items():
                out[k + 1] = out.get(k + 1, 0) - D * c
    result = {}
    for j, poly in blocks.items():
        p_out = {k: c * inv for k, c in poly.items() if c}
        if p_out:
            result[j] = p_out
    return ExpPoly._raw(lam, result)


def raise_alpha(L0, nu, alpha, params, stats=None):
    """Map :math:`L_{0,\\nu}^{(\\alpha)}` to :math:`L_{0,\\nu}^{(\\alpha+1)}`
    by ``nu`` recurrence steps."""
    if nu < 0 or alpha < 0:
        raise ParameterError('nu and alpha must be non-negative')
    state = RecursionState(nu=nu, alpha=alpha, p=0, L_curr=L0)
    for p in range(nu):
        state.p = p
        nxt = recurrence_step(state, params)
        state.L_prev, state.L_curr = state.L_curr, nxt
        if stats is not None:
            stats.observe(nxt)
    return state.L_curr


def extend_nu(L_full, nu, params):
    """
    Integrate over a new largest variable.

    Given :math:`H(x) = \\int_{[0,x]^\\nu} \\prod_l w(t_l)(x-t_l)^\\beta
    |\\Delta(t)|^\\beta dt` with :math:`w(t)=t^a e^{-\\beta t/2}`, return
    :math:`(\\nu+1)\\int_0^x w(s) H(s) ds`, the integral of the same
    Vandermonde-weighted density over :math:`[0,x]^{\\nu+1}`.
    """
    return _density_step(L_full, nu, params).integrate_from_zero()


def _density_step(L_full, nu, params):
    # (nu + 1) x^a e^{-lambda x} H(x): derivative of the (nu+1)-fold integral
    return L_full.mul_monomial(params.a, 1).scale(nu + 1)


def seed(params):
    """:math:`L_{0,1}^{(0)}(x) = \\int_0^x t^a e^{-\\beta t/2} dt`."""
    return _weight(params).integrate_from_zero()


@dataclass(frozen=True)
class CoefficientTable(object):
    """
    Exact coefficients of the largest-eigenvalue PDF and CDF,

    .. math::

        P(x) = \\sum_{j=1}^n e^{-j\\beta x/2}\\sum_k c_{jk}x^k,\\qquad
        Q(x) = \\sum_{j=0}^n e^{-j\\beta x/2}\\sum_k d_{jk}x^k.

    ``c`` and ``d`` map ``(j, k)`` to exact rationals; zero coefficients are
    not stored.
    """

    params: EnsembleParams
    c: dict
    d: dict
    stats: RecursionStats = field(default=None, compare=False)

    @property
    def pdf(self):
        return ExpPoly(self.params.lam, self.c)

    @property
    def cdf(self):
        return ExpPoly(self.params.lam, self.d)

    @property
    def pdf_terms(self):
        return len(self.c)

    @property
    def cdf_terms(self):
        return len(self.d)

    def max_bit_length(self):
        return max(self.pdf.max_bit_length(), self.cdf.max_bit_length())


def _table_from(params, P_raw, Q_raw, stats=None, check=True):
    norm = Q_raw.coefficient(0, 0)
    if not norm:
        raise InternalConsistencyError('unnormalized Q has zero constant term')
    inv = 1 / norm
    P = P_raw.scale(inv)
    Q = Q_raw.scale(inv)
    table = CoefficientTable(params, P.coefficients(), Q.coefficients(),
                             stats)
    if check:
        check_table(table, raw_limit=norm)
    return table


def _run(params, keep_all, check=True):
    stats = RecursionStats()
    t0 = time.perf_counter()
    lam = params.lam
    G = ExpPoly.constant(lam)  # zero-dimensional integral
    tables = []
    for nu in range(params.n):
        H = G
        for alpha in range(params.beta):
            H = raise_alpha(H, nu, alpha, params, stats)
        P_raw = _density_step(H, nu, params)
        G = P_raw.integrate_from_zero()
        stats.observe(G)
        logger.debug('nu=%d done: %d terms', nu + 1, len(G))
        if keep_all or nu == params.n - 1:
            sub = params.with_n(nu + 1)
            tables.append(_table_from(sub, P_raw, G, stats, check))
    stats.wall_time = time.perf_counter() - t0
    stats.max_bit_length = tables[-1].max_bit_length()
    return tables


def compute_tables(params, check=True):
    """
    Exact coefficient tables ``c``, ``d`` for ``params``.

    Every table invariant is verified before returning; a violation raises
    :class:`InternalConsistencyError`.
    """
    if not isinstance(params, EnsembleParams):
        params = EnsembleParams(*params)
    return _run(params, keep_all=False, check=check)[-1]


def compute_all_tables(params, check=True):
    """Tables for every dimension ``1..n`` from a single recursion run."""
    if not isinstance(params, EnsembleParams):
        params = EnsembleParams(*params)
    return _run(params, keep_all=True, check=check)


def check_table(table, raw_limit=None):
    """
    Assert the exact identities every table satisfies.

    Returns a list of ``(name, passed)`` pairs; raises
    :class:`InternalConsistencyError` on the first failure.
    """
    results = []

    def record(name, ok):
        results.append((name, bool(ok)))
        if not ok:
            raise InternalConsistencyError('identity failed: %s (n=%d, a=%d,'
                                           ' beta=%d)' % (
                                               name, table.params.n,
                                               table.params.a,
                                               table.params.beta))

    prm = table.params
    n, a, beta = prm.n, prm.a, prm.beta
    c, d = table.c, table.d
    record('d00 = 1', d.get((0, 0)) == 1)
    record('Q(0) = 0', sum(v for (j, k), v in d.items() if k == 0) == 0)
    if beta % 2 == 0:
        from math import comb
        record('d_j0 = (-1)^j C(n,j)',
               all(d.get((j, 0), 0) == (-1) ** j * comb(n, j)
                   for j in range(n + 1)))
    record('degree bounds',
           all(0 <= j <= n and k <= prm.max_degree(j) for j, k in d) and
           all(1 <= j <= n and a <= k <= prm.max_degree(j) for j, k in c))
    record('j=0 block of Q is the constant 1',
           all(k == 0 for j, k in d if j == 0))
    record('P = dQ/dx', table.cdf.differentiate() == table.pdf)
    total = sum(v * _fact(k) * mpq(2, j * beta) ** (k + 1)
                for (j, k), v in c.items())
    record('integral of P = 1', total == 1)
    if raw_limit is not None:
        record('limit of unnormalized Q = W',
               raw_limit == partition_function(prm))
    return results


def _fact(k):
    from math import factorial
    return factorial(k)
