"""JSON persistence of coefficient tables with lossless rationals."""

import json
import re

from gmpy2 import mpq

from .ensemble import EnsembleParams
from .exppoly import ParameterError
from .recursion import CoefficientTable, RecursionStats

__all__ = ['SCHEMA_VERSION', 'table_to_dict', 'table_from_dict',
           'write_table', 'read_table', 'dumps']

SCHEMA_VERSION = 1


def _rows(coeffs):
    return [[j, k, str(q.numerator), str(q.denominator)]
            for (j, k), q in sorted(coeffs.items())]


def table_to_dict(table):
    from . import __version__
    prm = table.params
    st = table.stats or RecursionStats()
    return {
        'schema_version': SCHEMA_VERSION,
        'params': {'n': prm.n, 'a': prm.a, 'beta': prm.beta,
                   'gamma': prm.gamma},
        'c': _rows(table.c),
        'd': _rows(table.d),
        'provenance': {
            'tool_version': __version__,
            'wall_time': st.wall_time,
            'peak_term_count': st.peak_terms,
            'max_coefficient_bit_length': table.max_bit_length(),
        },
    }


def table_from_dict(data):
    if data.get('schema_version') != SCHEMA_VERSION:
        raise ParameterError('unsupported schema_version %r'
                             % data.get('schema_version'))
    p = data['params']
    prm = EnsembleParams(p['n'], p['a'], p['beta'])
    if 'gamma' in p and p['gamma'] != prm.gamma:
        raise ParameterError('gamma %r inconsistent with (n, a, beta)'
                             % p['gamma'])

    def parse(rows):
        out = {}
        for j, k, num, den in rows:
            out[(int(j), int(k))] = mpq(int(num), int(den))
        return out

    prov = data.get('provenance', {})
    stats = RecursionStats(peak_terms=prov.get('peak_term_count', 0),
                           max_bit_length=prov.get(
                               'max_coefficient_bit_length', 0),
                           wall_time=prov.get('wall_time', 0.0))
    return CoefficientTable(prm, parse(data['c']), parse(data['d']), stats)


def dumps(table):
    """JSON text with one coefficient row per line."""
    text = json.dumps(table_to_dict(table), indent=1)
    return re.sub(r'\[\s+(-?\d+),\s+(-?\d+),\s+("-?\d+"),\s+("\d+")\s+\]',
                  r'[\1, \2, \3, \4]', text)


def write_table(table, path):
    with open(path, 'w') as fh:
        fh.write(dumps(table) + '\n')


def read_table(path):
    with open(path) as fh:
        return table_from_dict(json.load(fh))
