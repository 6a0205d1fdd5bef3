import numpy
import pytest
import scipy.stats

from wlrecursion.distributions import conductance_pdf, eval_cdf, \
        fixed_trace_cdf
from wlrecursion.ensemble import EnsembleParams
from wlrecursion.exppoly import ParameterError
from wlrecursion.montecarlo import SampleBatch, cdf_interpolant, \
        dense_dimension, ks_critical_value, ks_test, sample_conductance, \
        sample_fixed_trace_largest, sample_smatrix, sample_wishart_largest
from wlrecursion.recursion import compute_tables

N = 100000


def q_202(x):
    x = numpy.asarray(x, dtype=float)
    return numpy.where(x > 0, 1 - (x ** 2 + 2) * numpy.exp(-x)
                       + numpy.exp(-2 * x), 0.0)


# =======
# Wishart
# =======

def test_exponential_law_n1():
    batch = sample_wishart_largest(EnsembleParams(1, 0, 2), N, 1)
    assert batch.sampler_id == 'wishart_dense_b2'
    stat, ok = ks_test(batch, lambda x: 1 - numpy.exp(-numpy.clip(x, 0, None)))
    assert ok and stat < 0.01


def test_n2_closed_form():
    batch = sample_wishart_largest(EnsembleParams(2, 0, 2), N, 2)
    stat, ok = ks_test(batch, q_202)
    assert ok


def test_cdf_interpolant_matches_closed_form():
    tb = compute_tables(EnsembleParams(2, 0, 2))
    cdf = cdf_interpolant(lambda x: eval_cdf(tb, x) if x > 0 else 0, 0, 30)
    xs = numpy.linspace(0, 40, 500)
    assert numpy.max(numpy.abs(cdf(xs) - q_202(xs))) < 1e-6
    assert cdf(-1.0) == 0 and cdf(50.0) == 1


@pytest.mark.parametrize('n,a,beta', [(3, 1, 1), (3, 1, 2), (3, 1, 4)])
def test_bidiagonal_matches_dense(n, a, beta):
    prm = EnsembleParams(n, a, beta)
    assert dense_dimension(prm) is not None
    dense = sample_wishart_largest(prm, N, 10)
    bidi = sample_wishart_largest(prm, N, 11, 'laguerre_bidiagonal_general_b')
    res = scipy.stats.ks_2samp(dense.values, bidi.values)
    # two-sample critical value at level 0.01 for equal sizes
    assert res.statistic < 1.63 * numpy.sqrt(2.0 / N)


@pytest.mark.parametrize('n,a,beta', [(3, 2, 3), (4, 0, 1)])
def test_wishart_ks_against_exact(n, a, beta):
    prm = EnsembleParams(n, a, beta)
    tb = compute_tables(prm)
    batch = sample_wishart_largest(prm, 20000, 5)
    cdf = cdf_interpolant(lambda x: eval_cdf(tb, x) if x > 0 else 0,
                          0, float(batch.values.max()) * 1.01)
    assert ks_test(batch, cdf)[1]


def test_fixed_trace_samples():
    one = sample_fixed_trace_largest(EnsembleParams(1, 2, 2), 500, 3)
    assert numpy.allclose(one.values, 1.0, atol=1e-12)
    prm = EnsembleParams(4, 1, 1)
    batch = sample_fixed_trace_largest(prm, 5000, 4)
    assert batch.sampler_id == 'fixed_trace_scaled'
    assert numpy.all(batch.values >= 0.25 - 1e-12)
    assert numpy.all(batch.values <= 1 + 1e-12)


def test_fixed_trace_ks_n2():
    prm = EnsembleParams(2, 0, 2)
    F = fixed_trace_cdf(compute_tables(prm))
    batch = sample_fixed_trace_largest(prm, N, 6)
    assert ks_test(batch, cdf_interpolant(F, 0.5, 1.0))[1]


def test_determinism():
    prm = EnsembleParams(3, 1, 2)
    a = sample_wishart_largest(prm, 25000, 42)
    b = sample_wishart_largest(prm, 25000, 42)
    c = sample_wishart_largest(prm, 25000, 43)
    assert numpy.array_equal(a.values, b.values)
    assert not numpy.array_equal(a.values, c.values)
    g1 = sample_conductance(2, 3, 4, 3000, 9)
    g2 = sample_conductance(2, 3, 4, 3000, 9)
    assert numpy.array_equal(g1.values, g2.values)


def test_sampler_errors():
    with pytest.raises(ParameterError, match='bidiagonal'):
        sample_wishart_largest(EnsembleParams(2, 0, 4), 10, 1,
                               'wishart_dense_b4')
    with pytest.raises(ParameterError):
        sample_wishart_largest(EnsembleParams(2, 1, 2), 10, 1,
                               'wishart_dense_b1')
    with pytest.raises(ParameterError):
        sample_wishart_largest(EnsembleParams(2, 1, 2), 10, 1, 'smatrix_cue')
    # beta=3 falls back to the bidiagonal model
    b = sample_wishart_largest(EnsembleParams(2, 1, 3), 10, 1)
    assert b.sampler_id == 'laguerre_bidiagonal_general_b'
    with pytest.raises(ParameterError):
        SampleBatch([1.0], 'nope', 0, 1)


def test_batch_is_read_only():
    b = sample_wishart_largest(EnsembleParams(2, 1, 2), 10, 1)
    with pytest.raises(ValueError):
        b.values[0] = 3.0


# ===================
# Scattering matrices
# ===================

@pytest.mark.parametrize('beta', [1, 2, 4])
def test_smatrix_structure(beta):
    rng = numpy.random.default_rng(0)
    S = sample_smatrix(rng, 200, 5, beta)
    dim = 10 if beta == 4 else 5
    eye = numpy.eye(dim)
    SS = S @ numpy.conj(numpy.swapaxes(S, 1, 2))
    assert numpy.max(numpy.abs(SS - eye)) < 1e-10
    if beta == 1:
        assert numpy.max(numpy.abs(S - numpy.swapaxes(S, 1, 2))) < 1e-10
    if beta == 4:
        J = numpy.zeros((10, 10))
        for i in range(5):
            J[2 * i, 2 * i + 1], J[2 * i + 1, 2 * i] = 1, -1
        dual = J @ numpy.swapaxes(S, 1, 2) @ J.T
        assert numpy.max(numpy.abs(dual - S)) < 1e-10


@pytest.mark.parametrize('n1,n2,beta', [(1, 1, 2), (2, 3, 1), (3, 2, 4),
                                        (4, 4, 2)])
def test_conductance_range(n1, n2, beta):
    g = sample_conductance(n1, n2, beta, 2000, 8).values
    assert numpy.all(g >= 0) and numpy.all(g <= min(n1, n2))


def test_conductance_uniform_cue():
    batch = sample_conductance(1, 1, 2, N, 12)
    assert batch.sampler_id == 'smatrix_cue'
    assert ks_test(batch, scipy.stats.uniform.cdf)[1]


@pytest.mark.parametrize('n1,n2,beta', [(1, 2, 1), (2, 3, 4)])
def test_conductance_ks(n1, n2, beta):
    G = conductance_pdf(n1, n2, beta).antiderivative()
    batch = sample_conductance(n1, n2, beta, 30000, 13)
    assert ks_test(batch, cdf_interpolant(G, 0.0, min(n1, n2)))[1]


def test_conductance_errors():
    with pytest.raises(ParameterError):
        sample_conductance(1, 1, 3, 10, 0)
    with pytest.raises(ParameterError):
        sample_conductance(0, 1, 2, 10, 0)


# ================
# Goodness of fit
# ================

def test_ks_calibration():
    # inverse-transform draws from the exact law pass about 99% of the time
    passes = 0
    for s in range(40):
        u = numpy.random.default_rng(s).random(2000)
        x = -numpy.log1p(-u)
        passes += ks_test(x, lambda t: 1 - numpy.exp(-t))[1]
    assert passes >= 36


def test_ks_power():
    x = numpy.random.default_rng(1).exponential(size=10000) + 0.5
    stat, ok = ks_test(x, lambda t: 1 - numpy.exp(-numpy.clip(t, 0, None)))
    assert not ok and stat > 0.3


def test_ks_errors():
    with pytest.raises(ParameterError, match='empty'):
        ks_test([], numpy.tanh)
    with pytest.raises(ParameterError):
        ks_test(numpy.ones(99), numpy.tanh)


def test_ks_critical_value():
    assert abs(ks_critical_value(N) - 0.0051546) < 1e-6
