"""
Exact largest-eigenvalue distributions of the integer-beta Wishart-Laguerre
ensemble, its fixed-trace variant, and the Landauer conductance of a chaotic
cavity with ideal leads.
"""

from .distributions import PiecewisePoly, conductance_pdf, eval_cdf, \
        eval_pdf, fixed_trace_cdf, fixed_trace_pdf, integrate_exact
from .ensemble import EnsembleParams, conductance_constant, \
        partition_function
from .exppoly import DomainError, ExpPoly, ParameterError
from .recursion import CoefficientTable, InternalConsistencyError, \
        compute_all_tables, compute_tables

__version__ = '0.1.0'

__all__ = ['ExpPoly', 'EnsembleParams', 'CoefficientTable', 'PiecewisePoly',
           'compute_tables', 'compute_all_tables', 'partition_function',
           'conductance_constant', 'eval_pdf', 'eval_cdf', 'fixed_trace_pdf',
           'fixed_trace_cdf', 'conductance_pdf', 'integrate_exact',
           'ParameterError', 'DomainError', 'InternalConsistencyError']
