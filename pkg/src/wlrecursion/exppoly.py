"""
Exact exponential-polynomials in one variable.

An :class:`ExpPoly` represents

.. math::

    f(x) = \\sum_j e^{-j \\mu x} \\sum_k q_{jk} x^k

with exact rational coefficients :math:`q_{jk}` and a fixed rate unit
:math:`\\mu`. The class is closed under every operation the largest
eigenvalue recursion needs: addition, scaling, multiplication by
:math:`x^k e^{-m \\mu x}`, differentiation and integration from zero.
"""

import math
from fractions import Fraction

import gmpy2
import mpmath
from gmpy2 import mpq, mpz

__all__ = ['ExpPoly', 'Rational', 'as_rational', 'ParameterError',
           'DomainError']

Rational = type(mpq())


class ParameterError(ValueError):
    """Raised for invalid or incompatible parameters."""


class DomainError(ValueError):
    """Raised when a function is evaluated outside its domain."""


def as_rational(value):
    """Convert ints, Fractions, floats, decimal strings or mpq to mpq.

    Floats are converted exactly (binary value), not by their repr.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError('bool is not a rational value')
    if isinstance(value, (int, type(mpz()))):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError('non-finite float %r' % value)
        n, d = value.as_integer_ratio()
        return mpq(n, d)
    if isinstance(value, str):
        f = Fraction(value)
        return mpq(f.numerator, f.denominator)
    if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError('cannot convert %r to a rational' % (value,))


def _clean(blocks):
    # drop zero coefficients and empty blocks
    out = {}
    for j, poly in blocks.items():
        p = {k: c for k, c in poly.items() if c}
        if p:
            out[j] = p
    return out


class ExpPoly(object):
    """
    Exact exponential-polynomial :math:`\\sum_j e^{-j\\mu x} p_j(x)`.

    Parameters
    ----------
    rate_unit : rational-like
        The rate unit :math:`\\mu > 0`. For the Wishart-Laguerre recursion
        this is :math:`\\beta/2`.
    terms : dict, optional
        Either ``{j: {k: q}}`` or ``{(j, k): q}``. Zero coefficients are
        discarded.

    Notes
    -----
    Instances are treated as immutable. Equality is exact equality of the
    canonical term maps and rate units.
    """

    __slots__ = ('_rate', '_blocks', '_hash')

    def __init__(self, rate_unit, terms=None):
        rate = as_rational(rate_unit)
        if rate <= 0:
            raise ParameterError('rate_unit must be positive, got %s' % rate)
        blocks = {}
        if terms:
            for key, val in terms.items():
                if isinstance(key, tuple):
                    j, k = key
                    _check_index(j, k)
                    block = blocks.setdefault(int(j), {})
                    block[int(k)] = block.get(int(k), 0) + as_rational(val)
                else:
                    for k, c in val.items():
                        _check_index(key, k)
                        block = blocks.setdefault(int(key), {})
                        block[int(k)] = block.get(int(k), 0) + as_rational(c)
        self._rate = rate
        self._blocks = _clean(blocks)
        self._hash = None

    @classmethod
    def _raw(cls, rate, blocks):
        # trusted constructor: blocks already canonical mpq dicts
        obj = cls.__new__(cls)
        obj._rate = rate
        obj._blocks = blocks
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, rate_unit, value=1):
        return cls(rate_unit, {(0, 0): value})

    @classmethod
    def zero(cls, rate_unit):
        return cls(rate_unit)

    # ----------
    # Properties
    # ----------

    @property
    def rate_unit(self):
        return self._rate

    @property
    def terms(self):
        """Canonical view ``{j: ((k, q), ...)}`` with increasing ``j`` and
        ``k``."""
        return {j: tuple(sorted(self._blocks[j].items()))
                for j in sorted(self._blocks)}

    def coefficients(self):
        """Flat ``{(j, k): q}`` dict (a fresh copy)."""
        return {(j, k): c for j, p in self._blocks.items()
                for k, c in p.items()}

    def coefficient(self, j, k):
        return self._blocks.get(j, {}).get(k, mpq(0))

    def block(self, j):
        """Polynomial multiplying :math:`e^{-j\\mu x}` as ``{k: q}``."""
        return dict(self._blocks.get(j, {}))

    @property
    def decay_indices(self):
        return sorted(self._blocks)

    def degree(self, j):
        """Largest power of ``x`` in block ``j`` (-1 when the block is
        empty)."""
        p = self._blocks.get(j)
        return max(p) if p else -1

    def __len__(self):
        return sum(len(p) for p in self._blocks.values())

    def is_zero(self):
        return not self._blocks

    def max_bit_length(self):
        """Largest bit length among all numerators and denominators."""
        best = 0
        for p in self._blocks.values():
            for c in p.values():
                best = max(best, gmpy2.bit_length(c.numerator),
                           gmpy2.bit_length(c.denominator))
        return best

    # ----------
    # Arithmetic
    # ----------

    def _check_rate(self, other):
        if not isinstance(other, ExpPoly):
            raise TypeError('expected ExpPoly, got %r' % type(other))
        if other._rate != self._rate:
            raise ParameterError('mismatched rate units %s and %s'
                                 % (self._rate, other._rate))

    def __add__(self, other):
        self._check_rate(other)
        blocks = {j: dict(p) for j, p in self._blocks.items()}
        for j, p in other._blocks.items():
            target = blocks.setdefault(j, {})
            for k, c in p.items():
                target[k] = target.get(k, 0) + c
        return ExpPoly._raw(self._rate, _clean(blocks))

    def __neg__(self):
        return ExpPoly._raw(self._rate, {j: {k: -c for k, c in p.items()}
                                         for j, p in self._blocks.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = as_rational(s)
        if not s:
            return ExpPoly._raw(self._rate, {})
        return ExpPoly._raw(self._rate, {j: {k: c * s for k, c in p.items()}
                                         for j, p in self._blocks.items()})

    def __mul__(self, other):
        if isinstance(other, ExpPoly):
            return self.multiply(other)
        return self.scale(other)

    __rmul__ = __mul__

    def multiply(self, other):
        """Product of two exponential-polynomials."""
        self._check_rate(other)
        blocks = {}
        for j1, p1 in self._blocks.items():
            for j2, p2 in other._blocks.items():
                target = blocks.setdefault(j1 + j2, {})
                for k1, c1 in p1.items():
                    for k2, c2 in p2.items():
                        k = k1 + k2
                        target[k] = target.get(k, 0) + c1 * c2
        return ExpPoly._raw(self._rate, _clean(blocks))

    def mul_monomial(self, k, m=0):
        """Return :math:`x^k e^{-m\\mu x} f(x)`."""
        _check_index(m, k)
        return ExpPoly._raw(self._rate, {
            j + m: {kk + k: c for kk, c in p.items()}
            for j, p in self._blocks.items()})

    def differentiate(self):
        """Exact derivative, term by term."""
        rate = self._rate
        blocks = {}
        for j, p in self._blocks.items():
            out = {}
            jr = j * rate
            for k, c in p.items():
                if k:
                    out[k - 1] = out.get(k - 1, 0) + k * c
                if j:
                    out[k] = out.get(k, 0) - jr * c
            blocks[j] = out
        return ExpPoly._raw(rate, _clean(blocks))

    def integrate_from_zero(self):
        """Return :math:`F(x) = \\int_0^x f(s)\\,ds`.

        For decay index ``m >= 1`` with :math:`\\mu_m = m\\mu`,

        .. math::

            \\int_0^x s^k e^{-\\mu_m s} ds = \\frac{k!}{\\mu_m^{k+1}}
            \\Big[1 - e^{-\\mu_m x}\\sum_{r=0}^k \\frac{(\\mu_m x)^r}{r!}\\Big],

        and the power rule for ``m = 0``.
        """
        rate = self._rate
        blocks = {}
        const = mpq(0)
        for m, p in self._blocks.items():
            if m == 0:
                target = blocks.setdefault(0, {})
                for k, c in p.items():
                    target[k + 1] = target.get(k + 1, 0) + c / (k + 1)
                continue
            mu = m * rate
            inv_mu = 1 / mu
            target = blocks.setdefault(m, {})
            for k, c in p.items():
                # coefficient of x^r e^{-mu x}: -c k!/(r! mu^(k+1-r))
                # built downward from r = k: -c/mu, then * r/mu each step
                term = c * inv_mu
                r = k
                while True:
                    target[r] = target.get(r, 0) - term
                    if r == 0:
                        break
                    term = term * r * inv_mu
                    r -= 1
                const += term
        if const:
            target = blocks.setdefault(0, {})
            target[0] = target.get(0, 0) + const
        return ExpPoly._raw(rate, _clean(blocks))

    def limit_at_infinity(self):
        """Limit as :math:`x\\to\\infty`; requires the ``j = 0`` block to be
        constant."""
        p = self._blocks.get(0, {})
        if any(k > 0 for k in p):
            raise ValueError('function grows polynomially at infinity')
        return p.get(0, mpq(0))

    # ----------
    # Evaluation
    # ----------

    def exact_block_values(self, x):
        """Exact values ``{j: p_j(x)}`` of the polynomial blocks at
        rational ``x``."""
        x = as_rational(x)
        return {j: _horner(p, x) for j, p in self._blocks.items()}

    def default_precision(self):
        """max(64, twice the decimal length of the largest coefficient)."""
        bits = self.max_bit_length()
        return max(64, 2 * int(bits * 0.30103 + 1))

    def evaluate(self, x, precision_digits=None):
        """
        Numeric value at rational ``x``.

        The polynomial parts are evaluated exactly; only the factors
        :math:`e^{-j\\mu x}` are rounded. The working precision is raised
        above ``precision_digits`` by the decimal magnitude of the largest
        block, so cancellation between blocks cannot eat the requested
        digits.

        Returns
        -------
        mpmath.mpf
        """
        if precision_digits is None:
            precision_digits = self.default_precision()
        if precision_digits < 16:
            raise ParameterError('precision_digits must be >= 16')
        x = as_rational(x)
        values = self.exact_block_values(x)
        if not values:
            return mpmath.mpf(0)
        # guard digits from the magnitude of each block (float log is enough)
        mag = 0.0
        for j, v in values.items():
            if v:
                lg = _log10_abs(v) - float(j * self._rate * x) / math.log(10)
                mag = max(mag, lg)
        dps = int(precision_digits + mag + 10)
        with mpmath.workdps(dps):
            xm = mpmath.mpf(x.numerator) / x.denominator
            rate = mpmath.mpf(self._rate.numerator) / self._rate.denominator
            acc = mpmath.mpf(0)
            for j, v in values.items():
                if not v:
                    continue
                pv = mpmath.mpf(v.numerator) / v.denominator
                acc += pv * mpmath.exp(-j * rate * xm) if j else pv
        with mpmath.workdps(precision_digits):
            return +acc

    def __call__(self, x, precision_digits=None):
        return self.evaluate(x, precision_digits)

    # ----------
    # Comparison
    # ----------

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self._rate == other._rate and self._blocks == other._blocks

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._rate, tuple(
                (j, tuple(sorted(p.items())))
                for j, p in sorted(self._blocks.items()))))
        return self._hash

    def __repr__(self):
        if not self._blocks:
            return 'ExpPoly(0)'
        parts = []
        for j in sorted(self._blocks):
            for k, c in sorted(self._blocks[j].items()):
                s = str(c)
                if k:
                    s += '*x' + ('^%d' % k if k > 1 else '')
                if j:
                    s += '*e^{-%d*%s*x}' % (j, self._rate)
                parts.append(s)
        return 'ExpPoly(%s)' % ' + '.join(parts)


def _check_index(j, k):
    if int(j) != j or int(k) != k or j < 0 or k < 0:
        raise ParameterError('indices must be non-negative integers, got '
                             '(%r, %r)' % (j, k))


def _horner(poly, x):
    # exact evaluation of {k: c} at rational x
    if not poly:
        return mpq(0)
    top = max(poly)
    acc = mpq(0)
    for k in range(top, -1, -1):
        acc = acc * x + poly.get(k, 0)
    return acc


def _log10_abs(q):
    num = abs(q.numerator)
    return (gmpy2.bit_length(num) - gmpy2.bit_length(q.denominator)) \
        * 0.30103 + 1.0
