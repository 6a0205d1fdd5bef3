"""
Fixed-trace ensemble
====================

Conditioning the trace to one turns the largest eigenvalue law into an
exact piecewise polynomial on [1/n, 1]. Here we look at its pieces and
check a few exact facts with rational arithmetic.
"""

from gmpy2 import mpq

from wlrecursion import EnsembleParams, compute_tables, fixed_trace_cdf, \
    fixed_trace_pdf, integrate_exact

table = compute_tables(EnsembleParams(3, 1, 2))
f = fixed_trace_pdf(table)
F = fixed_trace_cdf(table)

# breakpoints sit at y = 1/j
print('breakpoints:', [str(b) for b in F.breakpoints])
for lo, piece in zip(f.breakpoints, f.pieces):
    print('piece from y=%s, degree %d' % (lo, len(piece) - 1))

# everything below is exact, no rounding anywhere
print('integral of density:', integrate_exact(f))
print('F(1/3) =', F.evaluate(mpq(1, 3)), ' F(1) =', F.evaluate(1))
print('F(1/2) =', F.evaluate(mpq(1, 2)))

# the n=1 case is a point mass at y=1
one = fixed_trace_pdf(compute_tables(EnsembleParams(1, 4, 2)))
print('n=1 degenerate:', one.degenerate, 'atom', one.atom)

# a larger case for plotting
F10 = fixed_trace_cdf(compute_tables(EnsembleParams(10, 15, 3)))
with open('fixed_trace_b3.csv', 'w') as fh:
    fh.write('y,cdf\n')
    for i in range(201):
        y = 0.1 + 0.9 * i / 200
        fh.write('%.4f,%.12g\n' % (y, F10(y)))
