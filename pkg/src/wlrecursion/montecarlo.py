"""
Monte Carlo samplers used as independent checks of the exact laws.

* Dense Wishart matrices :math:`GG^\\dagger` for beta = 1, 2, 4.
* A bidiagonal beta-Laguerre model for any integer beta.
* Scattering matrices from the circular ensembles (COE, CUE, CSE) for the
  Landauer conductance :math:`g = \\mathrm{tr}(\\Pi_1 S \\Pi_2 S^\\dagger)`.
"""

from dataclasses import dataclass, field

import numpy
import scipy.interpolate
import scipy.stats

from .ensemble import EnsembleParams, laguerre_parameter
from .exppoly import ParameterError

__all__ = ['SampleBatch', 'SAMPLERS', 'dense_dimension',
           'sample_wishart_largest', 'sample_fixed_trace_largest',
           'sample_conductance', 'sample_smatrix', 'ks_test',
           'ks_critical_value', 'cdf_interpolant', 'haar_unitary']

SAMPLERS = ('wishart_dense_b1', 'wishart_dense_b2', 'wishart_dense_b4',
            'laguerre_bidiagonal_general_b', 'fixed_trace_scaled',
            'smatrix_coe', 'smatrix_cue', 'smatrix_cse')

CHUNK = 10000


@dataclass(frozen=True)
class SampleBatch(object):
    """Monte Carlo draws with enough provenance to reproduce them."""

    values: numpy.ndarray
    sampler_id: str
    seed: int
    count: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.sampler_id not in SAMPLERS:
            raise ParameterError('unknown sampler %r' % self.sampler_id)
        v = numpy.asarray(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, 'values', v)


def _streams(seed, count):
    # one independent generator per chunk so chunking never changes draws
    ss = numpy.random.SeedSequence(int(seed) & (2 ** 64 - 1))
    nchunks = -(-count // CHUNK)
    for i, child in enumerate(ss.spawn(nchunks)):
        size = min(CHUNK, count - i * CHUNK)
        yield numpy.random.default_rng(child), size


# ======================
# Wishart-Laguerre draws
# ======================

def dense_dimension(params):
    """Column count ``m`` of ``G`` giving Laguerre exponent ``a``, or None
    when no dense model exists for ``(beta, a)``."""
    n, a, beta = params.n, params.a, params.beta
    if beta not in (1, 2, 4):
        return None
    twice = 2 * (a + 1)
    if twice % beta:
        return None
    return n + twice // beta - 1


def _dense_matrices(rng, size, n, m, beta):
    if beta == 1:
        return rng.standard_normal((size, n, m))
    if beta == 2:
        s = numpy.sqrt(0.5)
        return s * (rng.standard_normal((size, n, m)) +
                    1j * rng.standard_normal((size, n, m)))
    # quaternion entries with component variance 1/4, as 2x2 complex blocks
    A = 0.5 * (rng.standard_normal((size, n, m)) +
               1j * rng.standard_normal((size, n, m)))
    B = 0.5 * (rng.standard_normal((size, n, m)) +
               1j * rng.standard_normal((size, n, m)))
    top = numpy.concatenate([A, B], axis=2)
    bot = numpy.concatenate([-B.conj(), A.conj()], axis=2)
    return numpy.concatenate([top, bot], axis=1)


def _dense_eigs(rng, size, params):
    m = dense_dimension(params)
    G = _dense_matrices(rng, size, params.n, m, params.beta)
    W = G @ numpy.conj(numpy.swapaxes(G, 1, 2))
    ev = numpy.linalg.eigvalsh(W)
    if params.beta == 4:
        ev = ev[:, ::2]  # Kramers pairs
    return ev


def _bidiagonal_eigs(rng, size, params):
    # B lower bidiagonal with diagonal chi_{2a'-beta i}, subdiagonal
    # chi_{beta(n-i)}; eig(B B^T)/beta has weight x^a e^{-beta x/2}|dx|^beta
    n, a, beta = params.n, params.a, params.beta
    a_prime = 2 * a + 2 + beta * (n - 1)  # twice a'
    dof_d = a_prime - beta * numpy.arange(n)
    dof_s = beta * (n - numpy.arange(1, n))
    d = numpy.sqrt(rng.chisquare(dof_d, size=(size, n)))
    T = numpy.zeros((size, n, n))
    idx = numpy.arange(n)
    if n > 1:
        s = numpy.sqrt(rng.chisquare(dof_s, size=(size, n - 1)))
        T[:, idx, idx] = d ** 2
        T[:, idx[1:], idx[1:]] += s ** 2
        off = s * d[:, :-1]
        T[:, idx[1:], idx[:-1]] = off
        T[:, idx[:-1], idx[1:]] = off
    else:
        T[:, 0, 0] = d[:, 0] ** 2
    return numpy.linalg.eigvalsh(T) / beta


def _resolve_sampler(params, sampler):
    if sampler is None:
        if dense_dimension(params) is not None:
            return 'wishart_dense_b%d' % params.beta
        return 'laguerre_bidiagonal_general_b'
    if sampler == 'laguerre_bidiagonal_general_b':
        return sampler
    if sampler.startswith('wishart_dense_b'):
        if int(sampler[-1]) != params.beta:
            raise ParameterError('sampler %s does not match beta=%d'
                                 % (sampler, params.beta))
        if dense_dimension(params) is None:
            raise ParameterError(
                'no dense Wishart model for beta=%d, a=%d; use '
                'laguerre_bidiagonal_general_b' % (params.beta, params.a))
        return sampler
    raise ParameterError('sampler %r cannot draw Wishart eigenvalues'
                         % (sampler,))


def _eigen_draws(params, count, seed, sampler):
    draw = _bidiagonal_eigs if sampler == 'laguerre_bidiagonal_general_b' \
        else _dense_eigs
    return numpy.concatenate([draw(rng, size, params)
                              for rng, size in _streams(seed, count)])


def sample_wishart_largest(params, count, seed, sampler=None):
    """
    Largest eigenvalues of the Wishart-Laguerre ensemble.

    Parameters
    ----------
    params : EnsembleParams
    count : int
    seed : int
    sampler : str, optional
        ``'wishart_dense_b{1,2,4}'`` or ``'laguerre_bidiagonal_general_b'``.
        By default the dense model is used whenever one exists.
    """
    sampler = _resolve_sampler(params, sampler)
    ev = _eigen_draws(params, count, seed, sampler)
    return SampleBatch(ev[:, -1], sampler, seed, count, _pdict(params))


def sample_fixed_trace_largest(params, count, seed, sampler=None):
    """Largest eigenvalue divided by the trace, in ``[1/n, 1]``."""
    sampler = _resolve_sampler(params, sampler)
    ev = _eigen_draws(params, count, seed, sampler)
    y = ev[:, -1] / ev.sum(axis=1)
    d = _pdict(params)
    d['eigen_sampler'] = sampler
    return SampleBatch(y, 'fixed_trace_scaled', seed, count, d)


def _pdict(params):
    return {'n': params.n, 'a': params.a, 'beta': params.beta}


# ===================
# Scattering matrices
# ===================

def haar_unitary(rng, size, N):
    """``size`` Haar unitaries of order ``N`` (QR with phase-fixed R)."""
    Z = (rng.standard_normal((size, N, N)) +
         1j * rng.standard_normal((size, N, N))) / numpy.sqrt(2.0)
    Qm, R = numpy.linalg.qr(Z)
    diag = numpy.diagonal(R, axis1=1, axis2=2)
    return Qm * (diag / numpy.abs(diag))[:, None, :]


def _symplectic_unit(N):
    # J = diag of [[0, 1], [-1, 0]] blocks; quaternion dual is J U^T J^T
    J = numpy.zeros((2 * N, 2 * N))
    for i in range(N):
        J[2 * i, 2 * i + 1] = 1.0
        J[2 * i + 1, 2 * i] = -1.0
    return J


def sample_smatrix(rng, size, N, beta):
    """
    Scattering matrices of a cavity with ``N`` channels.

    beta=1: :math:`U^T U` (symmetric unitary). beta=2: Haar unitary.
    beta=4: :math:`U^R U` with :math:`U^R = J U^T J^T`, a self-dual
    :math:`2N\\times 2N` complex matrix (quaternion channel ``i`` occupies
    complex indices ``2i, 2i+1``).
    """
    if beta == 2:
        return haar_unitary(rng, size, N)
    if beta == 1:
        U = haar_unitary(rng, size, N)
        return numpy.swapaxes(U, 1, 2) @ U
    if beta == 4:
        U = haar_unitary(rng, size, 2 * N)
        J = _symplectic_unit(N)
        UR = J @ numpy.swapaxes(U, 1, 2) @ J.T
        return UR @ U
    raise ParameterError('beta must be 1, 2 or 4, got %r' % (beta,))


def _conductances(S, n1, beta, tol=1e-10):
    # projection form tr(P1 S P2 S^+) uses the block S[:n1, n1:];
    # the eigenvalue form uses t = S[n1:, :n1]; unitarity makes them equal
    c = 2 if beta == 4 else 1
    k = c * n1
    tp = S[:, :k, k:]
    g_proj = numpy.sum(numpy.abs(tp) ** 2, axis=(1, 2)) / c
    t = S[:, k:, :k]
    TT = numpy.conj(numpy.swapaxes(t, 1, 2)) @ t
    T = numpy.linalg.eigvalsh(TT)
    g_eig = T.sum(axis=1) / c
    worst = numpy.max(numpy.abs(g_proj - g_eig))
    if worst > tol:
        raise AssertionError('projection and transmission-eigenvalue '
                             'conductances differ by %g' % worst)
    return g_eig


def sample_conductance(n1, n2, beta, count, seed):
    """Landauer conductances :math:`g=\\sum_j T_j` for a chaotic cavity
    with ideal leads of ``n1`` and ``n2`` channels."""
    laguerre_parameter(n1, n2, 2)  # validates channel counts only
    if beta not in (1, 2, 4):
        raise ParameterError('beta must be 1, 2 or 4, got %r' % (beta,))
    N = n1 + n2
    out = [_conductances(sample_smatrix(rng, size, N, beta), n1, beta)
           for rng, size in _streams(seed, count)]
    sid = {1: 'smatrix_coe', 2: 'smatrix_cue', 4: 'smatrix_cse'}[beta]
    g = numpy.clip(numpy.concatenate(out), 0.0, min(n1, n2))
    return SampleBatch(g, sid, seed, count,
                       {'n1': n1, 'n2': n2, 'beta': beta})


# ===================
# Goodness of fit
# ===================

def ks_critical_value(count):
    """Two-sided KS critical value at level 0.01 (asymptotic)."""
    return 1.63 / numpy.sqrt(count)


def ks_test(batch, exact_cdf):
    """
    Two-sided Kolmogorov-Smirnov statistic of ``batch`` against
    ``exact_cdf`` (vectorized callable).

    Returns
    -------
    statistic : float
    passed : bool
        ``statistic < 1.63 / sqrt(count)``.
    """
    values = batch.values if isinstance(batch, SampleBatch) \
        else numpy.asarray(batch, dtype=float)
    if values.size == 0:
        raise ParameterError('empty sample batch')
    if values.size < 100:
        raise ParameterError('ks_test needs at least 100 samples')
    res = scipy.stats.kstest(values, exact_cdf, method='asymp')
    stat = float(res.statistic)
    return stat, stat < ks_critical_value(values.size)


def cdf_interpolant(func, lo, hi, num=1001, below=0.0, above=1.0):
    """
    Monotone cubic interpolant of a distribution function tabulated at
    ``num`` points of ``[lo, hi]``; constant ``below``/``above`` outside.

    ``func`` maps a Python float to something ``float()`` accepts.
    """
    xs = numpy.linspace(lo, hi, num)
    ys = numpy.array([float(func(float(x))) for x in xs])
    # subnormal slopes deep in the left tail overflow PCHIP's harmonic
    # mean; the resulting zero derivative is the right answer there
    with numpy.errstate(over='ignore', divide='ignore'):
        interp = scipy.interpolate.PchipInterpolator(xs, ys,
                                                     extrapolate=False)

    def cdf(x):
        x = numpy.asarray(x, dtype=float)
        y = interp(numpy.clip(x, lo, hi))
        y = numpy.where(x < lo, below, numpy.where(x > hi, above, y))
        return y

    return cdf
