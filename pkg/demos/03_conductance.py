"""
Landauer conductance of a chaotic cavity
========================================

The conductance density for a cavity with n1 and n2 open channels is an
exact piecewise polynomial on [0, min(n1, n2)]. We print the scaled
density n P(n g) at a few points for the three symmetry classes.
"""

from wlrecursion import conductance_pdf, integrate_exact
from wlrecursion.exppoly import ParameterError

combos = [(1, 2), (2, 3), (3, 6)]
for beta in (1, 2, 4):
    for n, m in combos:
        pg = conductance_pdf(n, m, beta)
        row = ['%.4f' % (n * pg(n * s)) for s in (0.1, 0.3, 0.5, 0.7, 0.9)]
        print('beta=%d n=%d m=%d  norm=%s  nP(ng): %s'
              % (beta, n, m, integrate_exact(pg), ' '.join(row)))

# a single channel on each side with unitary symmetry: flat on [0, 1]
print(conductance_pdf(1, 1, 2).pieces)

# orthogonal symmetry needs |n1 - n2| odd
try:
    conductance_pdf(2, 2, 1)
except ParameterError as err:
    print('rejected:', err)
