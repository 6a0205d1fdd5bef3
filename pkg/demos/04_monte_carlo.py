"""
Monte Carlo validation
======================

Sample random matrices and compare against the exact laws with a
Kolmogorov-Smirnov test. Pass means the statistic is below 1.63/sqrt(N).
"""

from wlrecursion import EnsembleParams
from wlrecursion.verify import mc_conductance, mc_wishart

N = 20000

# dense Wishart matrices for beta = 1, 2, 4; the bidiagonal model for 3
for beta in (1, 2, 3, 4):
    for row in mc_wishart(EnsembleParams(4, 2, beta), N, seed=beta):
        print('beta=%d %-45s KS=%.4f crit=%.4f %s'
              % (beta, row['name'], row['statistic'], row['critical_value'],
                 'pass' if row['passed'] else 'FAIL'))

# scattering matrices from the circular ensembles
for beta in (1, 2, 4):
    row, = mc_conductance(2, 3, beta, N, seed=10 + beta)
    print('%-45s KS=%.4f %s' % (row['name'], row['statistic'],
                                'pass' if row['passed'] else 'FAIL'))
