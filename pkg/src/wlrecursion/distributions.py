"""
Closed-form largest-eigenvalue and conductance distributions.

Unrestricted-trace PDF/CDF are exponential-polynomials evaluated at high
precision. The fixed-trace PDF/CDF and the Landauer conductance density are
piecewise polynomials with exact rational coefficients, obtained from the
coefficient tables by

.. math::

    Q_F(y) = \\Gamma(\\gamma)\\sum_{j=0}^n \\Theta(1-jy)\\sum_k
    \\frac{d_{jk}}{\\Gamma(\\gamma-k)}\\Big(\\frac{2y}{\\beta}\\Big)^k
    (1-jy)^{\\gamma-k-1},

    P_F(y) = \\frac{2}{\\beta}\\Gamma(\\gamma)\\sum_{j=1}^n \\Theta(1-jy)
    \\sum_k \\frac{c_{jk}}{\\Gamma(\\gamma-k-1)}\\Big(\\frac{2y}{\\beta}\\Big)^k
    (1-jy)^{\\gamma-k-2},

    P_g(g) = K\\sum_{j=0}^n \\Theta(g-j)\\sum_k
    \\frac{d_{jk}}{\\Gamma(\\gamma-k)}\\Big(\\frac{2}{\\beta}\\Big)^k
    (g-j)^{\\gamma-k-1}.

Terms whose reciprocal Gamma factor sits at a pole are zero and dropped.
"""

import bisect
from dataclasses import dataclass
from math import comb, factorial

import mpmath
import numpy
from gmpy2 import mpq

from .ensemble import EnsembleParams, conductance_constant, \
        laguerre_parameter
from .exppoly import DomainError, ParameterError, as_rational

__all__ = ['PiecewisePoly', 'eval_pdf', 'eval_cdf', 'fixed_trace_pdf',
           'fixed_trace_cdf', 'conductance_pdf', 'conductance_table',
           'integrate_exact', 'tabulate']


# ===============
# Piecewise Poly
# ===============

@dataclass(frozen=True)
class PiecewisePoly(object):
    """
    Piecewise polynomial with exact rational coefficients.

    Piece ``i`` lives on ``[breakpoints[i], breakpoints[i+1])`` and stores
    ascending monomial coefficients. At the right end of the support the
    value is the limit of the last piece. Outside the support the function
    equals ``below`` (left) or ``above`` (right).

    Parameters
    ----------
    breakpoints : tuple of mpq
    pieces : tuple of tuple of mpq
    below, above : mpq
        Constant values outside the support (0 for densities, 0 and 1 for
        distribution functions).
    atom : tuple or None
        ``(location, mass)`` of a point mass; set only for the degenerate
        single-eigenvalue fixed-trace law.
    """

    breakpoints: tuple
    pieces: tuple
    below: object = mpq(0)
    above: object = mpq(0)
    atom: tuple = None

    def __post_init__(self):
        bps = tuple(as_rational(b) for b in self.breakpoints)
        if any(b1 >= b2 for b1, b2 in zip(bps, bps[1:])):
            raise ParameterError('breakpoints must be strictly increasing')
        if len(self.pieces) != max(len(bps) - 1, 0):
            raise ParameterError('need one piece per interval')
        pieces = tuple(_trim(tuple(as_rational(c) for c in p))
                       for p in self.pieces)
        object.__setattr__(self, 'breakpoints', bps)
        object.__setattr__(self, 'pieces', pieces)
        object.__setattr__(self, 'below', as_rational(self.below))
        object.__setattr__(self, 'above', as_rational(self.above))

    @property
    def support(self):
        return (self.breakpoints[0], self.breakpoints[-1])

    @property
    def degenerate(self):
        """True when the law is a point mass (no polynomial pieces)."""
        return self.atom is not None and not self.pieces

    def degree(self):
        return max((len(p) - 1 for p in self.pieces), default=-1)

    def piece_index(self, x):
        lo, hi = self.support
        if x < lo or x > hi:
            return None
        if x == hi:
            return len(self.pieces) - 1
        return bisect.bisect_right(self.breakpoints, x) - 1

    def evaluate(self, x):
        """Exact value at rational (or float, converted exactly) ``x``."""
        x = as_rational(x)
        lo, hi = self.support
        if x < lo:
            return self.below
        if x > hi:
            return self.above
        if not self.pieces:
            return self.above if self.atom is not None and x >= hi \
                else self.below
        return _horner(self.pieces[self.piece_index(x)], x)

    def __call__(self, x):
        """Float evaluation, accepting scalars or arrays."""
        if numpy.ndim(x) == 0:
            return float(self.evaluate(float(x)))
        arr = numpy.asarray(x, dtype=float)
        return numpy.array([float(self.evaluate(v)) for v in arr.ravel()]
                           ).reshape(arr.shape)

    def derivative(self):
        pieces = tuple(tuple(k * c for k, c in enumerate(p))[1:]
                       for p in self.pieces)
        return PiecewisePoly(self.breakpoints, pieces, 0, 0)

    def antiderivative(self):
        """Continuous antiderivative vanishing at the left end."""
        pieces = []
        offset = mpq(0)
        for i, p in enumerate(self.pieces):
            q = [mpq(0)] + [c / (k + 1) for k, c in enumerate(p)]
            q[0] = offset - _horner(q, self.breakpoints[i])
            pieces.append(tuple(q))
            offset = _horner(q, self.breakpoints[i + 1])
        return PiecewisePoly(self.breakpoints, tuple(pieces), 0, offset)

    def jumps(self):
        """Exact jumps ``f(b+) - f(b-)`` at interior breakpoints."""
        return [_horner(self.pieces[i], b) - _horner(self.pieces[i - 1], b)
                for i, b in enumerate(self.breakpoints[1:-1], start=1)]


def _trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return coeffs[:n]


def _horner(coeffs, x):
    acc = mpq(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def integrate_exact(pp):
    """Exact integral over the support, including any point mass."""
    total = mpq(0)
    for i, p in enumerate(pp.pieces):
        lo, hi = pp.breakpoints[i], pp.breakpoints[i + 1]
        anti = [mpq(0)] + [c / (k + 1) for k, c in enumerate(p)]
        total += _horner(anti, hi) - _horner(anti, lo)
    if pp.atom is not None:
        total += pp.atom[1]
    return total


# ================
# Unrestricted law
# ================

def _check_x(x):
    x = as_rational(x)
    if x < 0:
        raise DomainError('x must be non-negative, got %s' % x)
    return x


def eval_pdf(table, x, precision=None):
    """Largest-eigenvalue density :math:`P(x)` as an ``mpmath.mpf``."""
    return table.pdf.evaluate(_check_x(x), precision)


def eval_cdf(table, x, precision=None):
    """Largest-eigenvalue distribution :math:`Q(x)` as an ``mpmath.mpf``."""
    return table.cdf.evaluate(_check_x(x), precision)


def tabulate(func, lo, hi, num, precision=None):
    """Evaluate ``func(table_x, precision)`` on ``num`` equispaced rational
    points of ``[lo, hi]``; returns two float arrays."""
    lo, hi = as_rational(lo), as_rational(hi)
    xs = [lo + (hi - lo) * i / (num - 1) for i in range(num)] if num > 1 \
        else [lo]
    vals = [float(func(x, precision)) for x in xs]
    return numpy.array([float(x) for x in xs]), numpy.array(vals)


# ===========
# Fixed trace
# ===========

def _expand_fixed_trace_block(coeffs, j, gamma, beta, shift):
    """
    Expand :math:`\\sum_k q_k (\\gamma-1)!/(\\gamma-k-1-s)!\\,(2y/\\beta)^k
    (1-jy)^{\\gamma-k-1-s}` into ascending monomials, ``s = shift``.
    """
    out = {}
    two_b = mpq(2, beta)
    fact_g = factorial(gamma - 1)
    for k, q in coeffs.items():
        e = gamma - k - 1 - shift
        if e < 0:
            continue  # reciprocal Gamma at a pole
        base = q * two_b ** k * fact_g / factorial(e)
        for i in range(e + 1):
            t = base * comb(e, i) * (-j) ** i
            out[k + i] = out.get(k + i, 0) + t
    return out


def _blocks_by_j(coeffs):
    blocks = {}
    for (j, k), q in coeffs.items():
        blocks.setdefault(j, {})[k] = q
    return blocks


def _fixed_trace(table, coeffs, shift, scale):
    prm = table.params
    n = prm.n
    blocks = _blocks_by_j(coeffs)
    expanded = {j: _expand_fixed_trace_block(b, j, prm.gamma, prm.beta, shift)
                for j, b in blocks.items()}
    breakpoints = [mpq(1, i) for i in range(n, 0, -1)]
    pieces = []
    # interval [1/(i+1), 1/i) sees the blocks j <= i
    for i in range(n - 1, 0, -1):
        acc = {}
        for j in range(i + 1):
            for k, c in expanded.get(j, {}).items():
                acc[k] = acc.get(k, 0) + c
        top = max(acc, default=-1)
        pieces.append(tuple(scale * acc.get(k, 0) for k in range(top + 1)))
    return breakpoints, pieces, expanded


def fixed_trace_cdf(table):
    """
    Distribution function :math:`Q_F(y)` of the largest eigenvalue under
    the unit-trace constraint, on ``[1/n, 1]``.

    For ``n = 1`` the eigenvalue equals 1 identically; the result is a
    degenerate object with ``atom = (1, 1)``.
    """
    prm = table.params
    if prm.n == 1:
        return PiecewisePoly((mpq(1),), (), 0, 1, atom=(mpq(1), mpq(1)))
    bps, pieces, _ = _fixed_trace(table, table.d, 0, 1)
    return PiecewisePoly(tuple(bps), tuple(pieces), 0, 1)


def fixed_trace_pdf(table):
    """Density :math:`P_F(y)` of the largest eigenvalue under the
    unit-trace constraint, on ``[1/n, 1]``."""
    prm = table.params
    if prm.n == 1:
        return PiecewisePoly((mpq(1),), (), 0, 0, atom=(mpq(1), mpq(1)))
    for j, k in table.c:
        if prm.gamma - k - 2 < 0:
            raise ParameterError('exponent gamma-k-2 < 0 at (%d, %d)'
                                 % (j, k))
    bps, pieces, _ = _fixed_trace(table, table.c, 1, mpq(2, prm.beta))
    return PiecewisePoly(tuple(bps), tuple(pieces), 0, 0)


# ===========
# Conductance
# ===========

def conductance_table(n1, n2, beta):
    """Coefficient table of the Laguerre ensemble matched to a cavity with
    ``n1`` and ``n2`` channels."""
    from .recursion import compute_tables
    n, _, a = laguerre_parameter(n1, n2, beta)
    return compute_tables(EnsembleParams(n, a, beta))


def conductance_pdf(n1, n2=None, beta=None, table=None):
    """
    Exact Landauer conductance density on ``[0, n]``, ``n = min(n1, n2)``.

    Either give ``(n1, n2, beta)`` or pass a precomputed ``table`` (whose
    ``a`` must then be the cavity value).
    """
    if table is None:
        if beta not in (1, 2, 4):
            raise ParameterError('beta must be 1, 2 or 4, got %r' % (beta,))
        table = conductance_table(n1, n2, beta)
    prm = table.params
    n, gamma, beta = prm.n, prm.gamma, prm.beta
    K = conductance_constant(prm)
    two_b = mpq(2, beta)
    expanded = {}
    for j, b in _blocks_by_j(table.d).items():
        out = {}
        for k, q in b.items():
            e = gamma - k - 1
            if e < 0:
                continue
            base = q * two_b ** k / factorial(e)
            # (g - j)^e
            for i in range(e + 1):
                t = base * comb(e, i) * (-j) ** (e - i)
                out[i] = out.get(i, 0) + t
        expanded[j] = out
    pieces = []
    for i in range(n):
        acc = {}
        for j in range(i + 1):
            for k, c in expanded.get(j, {}).items():
                acc[k] = acc.get(k, 0) + c
        top = max(acc, default=-1)
        pieces.append(tuple(K * acc.get(k, 0) for k in range(top + 1)))
    return PiecewisePoly(tuple(mpq(i) for i in range(n + 1)), tuple(pieces),
                         0, 0)


def conductance_from_fixed_trace(table, g):
    """:math:`(K/\\Gamma(\\gamma)) g^{\\gamma-1} Q_F(1/g)` at rational
    ``0 < g``; exact."""
    prm = table.params
    g = as_rational(g)
    if g <= 0:
        raise DomainError('g must be positive')
    qf = fixed_trace_cdf(table).evaluate(1 / g)
    return conductance_constant(prm) / factorial(prm.gamma - 1) \
        * g ** (prm.gamma - 1) * qf


def to_mpf(q, dps=30):
    with mpmath.workdps(dps):
        return mpmath.mpf(q.numerator) / q.denominator
