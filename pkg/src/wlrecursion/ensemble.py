"""Ensemble parameters and exact normalization constants."""

import math
from dataclasses import dataclass, field

from gmpy2 import mpq

from .exppoly import ParameterError, as_rational

__all__ = ['EnsembleParams', 'HalfGamma', 'gamma_half', 'partition_function',
           'conductance_constant', 'laguerre_parameter']


@dataclass(frozen=True)
class HalfGamma(object):
    """Exact number ``rational * sqrt(pi)**pi_power``."""

    rational: object
    pi_power: int = 0

    def __mul__(self, other):
        return HalfGamma(self.rational * other.rational,
                         self.pi_power + other.pi_power)

    def __truediv__(self, other):
        return HalfGamma(self.rational / other.rational,
                         self.pi_power - other.pi_power)

    def scale(self, q):
        return HalfGamma(self.rational * as_rational(q), self.pi_power)

    def as_rational(self):
        if self.pi_power:
            raise ValueError('value carries sqrt(pi)^%d' % self.pi_power)
        return self.rational

    def to_mpf(self, dps=50):
        import mpmath
        with mpmath.workdps(dps):
            r = mpmath.mpf(self.rational.numerator) / self.rational.denominator
            return r * mpmath.sqrt(mpmath.pi) ** self.pi_power


def gamma_half(twice_z):
    """Exact :math:`\\Gamma(z)` for ``z = twice_z / 2 > 0``."""
    m = int(twice_z)
    if m != twice_z or m <= 0:
        raise ParameterError('gamma_half needs a positive integer 2z, got %r'
                             % (twice_z,))
    if m % 2 == 0:
        return HalfGamma(mpq(math.factorial(m // 2 - 1)), 0)
    # Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi)
    k = (m - 1) // 2
    return HalfGamma(mpq(math.factorial(2 * k), 4 ** k * math.factorial(k)),
                     1)


@dataclass(frozen=True)
class EnsembleParams(object):
    """
    Integer parameters of the Wishart-Laguerre ensemble with joint density
    proportional to
    :math:`\\prod_l x_l^a e^{-\\beta x_l/2} \\prod_{j<k}|x_k-x_j|^\\beta`.

    Parameters
    ----------
    n : int
        Matrix dimension (number of eigenvalues), ``n >= 1``.
    a : int
        Laguerre exponent, ``a >= 0``.
    beta : int
        Dyson index, ``beta >= 1``.
    """

    n: int
    a: int
    beta: int
    gamma: int = field(init=False)
    lam: object = field(init=False)

    def __post_init__(self):
        for name in ('n', 'a', 'beta'):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v:
                raise ParameterError('%s must be an integer, got %r'
                                     % (name, v))
            object.__setattr__(self, name, int(v))
        if self.n < 1:
            raise ParameterError('n must be >= 1, got %d' % self.n)
        if self.a < 0:
            raise ParameterError('a must be a non-negative integer, got %d'
                                 % self.a)
        if self.beta < 1:
            raise ParameterError('beta must be a positive integer, got %d'
                                 % self.beta)
        twice = self.n * (2 * self.a + self.beta * (self.n - 1) + 2)
        assert twice % 2 == 0
        object.__setattr__(self, 'gamma', twice // 2)
        object.__setattr__(self, 'lam', mpq(self.beta, 2))

    @property
    def W(self):
        return partition_function(self)

    def max_degree(self, j):
        """Largest power of ``x`` multiplying ``exp(-j beta x / 2)``."""
        return j * self.a + j * (self.n - j) * self.beta

    def pdf_term_count(self):
        n, a, b = self.n, self.a, self.beta
        return n * ((n * n - 1) * b + 3 * (n - 1) * a + 6) // 6

    def cdf_term_count(self):
        n, a, b = self.n, self.a, self.beta
        return (n + 1) * (n * n * b + n * (3 * a - b) + 6) // 6

    def with_n(self, n):
        return EnsembleParams(n, self.a, self.beta)


def partition_function(params):
    """
    Exact normalization

    .. math::

        W = (2/\\beta)^\\gamma \\prod_{j=0}^{n-1}
        \\frac{\\Gamma(\\beta(j+1)/2+1)\\,\\Gamma(\\beta j/2+a+1)}
        {\\Gamma(\\beta/2+1)}.

    The powers of :math:`\\sqrt\\pi` from half-integer arguments always
    cancel for integer ``a``, so the result is an exact rational.
    """
    n, a, b = params.n, params.a, params.beta
    acc = HalfGamma(mpq(1))
    for j in range(n):
        acc = acc * gamma_half(b * (j + 1) + 2) * gamma_half(b * j + 2 * a + 2)
        acc = acc / gamma_half(b + 2)
    return acc.scale(mpq(2, b) ** params.gamma).as_rational()


def laguerre_parameter(n1, n2, beta):
    """Return ``(n, m, a)`` with ``a = beta (m - n + 1)/2 - 1`` for a
    two-lead cavity with ``n1`` and ``n2`` channels."""
    for name, v in (('n1', n1), ('n2', n2), ('beta', beta)):
        if isinstance(v, bool) or int(v) != v or v < 1:
            raise ParameterError('%s must be a positive integer, got %r'
                                 % (name, v))
    n, m = min(n1, n2), max(n1, n2)
    twice_a = beta * (m - n + 1) - 2
    if twice_a % 2 or twice_a < 0:
        raise ParameterError(
            'a = beta(m-n+1)/2 - 1 = %s is not a non-negative integer; for '
            'beta=1 we require |n1-n2| to be an odd integer'
            % mpq(twice_a, 2))
    return n, m, twice_a // 2


def conductance_constant(params):
    """
    Exact constant

    .. math::

        K = \\prod_{l=0}^{n-1}
        \\frac{\\Gamma(a+\\beta(n+l-1)/2+2)}{\\Gamma(\\beta l/2+1)}.
    """
    n, a, b = params.n, params.a, params.beta
    acc = HalfGamma(mpq(1))
    for l in range(n):
        acc = acc * gamma_half(2 * a + b * (n + l - 1) + 4)
        acc = acc / gamma_half(b * l + 2)
    return acc.as_rational()
