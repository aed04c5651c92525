"""
Independent Alexander polynomial oracles: the Fox Jacobian of the
Wirtinger presentation and the Q matrix of Alexander's original
construction, both finished with an exact fraction-free determinant.

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program.  If not, see <https://www.gnu.org/licenses/>.
"""

# pylint: disable=C0111,R0913
from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from polyring import (LaurentPoly, binomial, canonicalize, divide_exact,
                      mono_inv)


@dataclass
class Relator:
    """ over arc j, incoming under arc k, outgoing under arc l """
    over: int
    incoming: int
    outgoing: int
    sign: int


@dataclass
class WirtingerPresentation:
    n_generators: int
    relators: List[Relator]
    arc_component: List[int]


def wirtinger(ld):
    relators = [Relator(rec.over, rec.incoming, rec.outgoing, rec.sign)
                for rec in ld.crossings]
    return WirtingerPresentation(ld.n_arcs, relators, list(ld.arc_component))


def _t(nu, arc, power=1):
    return LaurentPoly.var(nu[arc], power)


def fox_row(relator, nu):
    """ {column: entry}, coinciding columns summed """
    j, k, l = relator.over, relator.incoming, relator.outgoing
    if relator.sign == 1:
        entries = [(j, 1 - _t(nu, k)), (k, _t(nu, j)), (l, LaurentPoly.const(-1))]
    else:
        t_j_inv = _t(nu, j, -1)
        entries = [(j, t_j_inv * (_t(nu, k) - 1)), (k, t_j_inv), (l, LaurentPoly.const(-1))]
    row = {}
    for col, value in entries:
        row[col] = row.get(col, LaurentPoly.zero()) + value
    return row


def q_row(relator, nu):
    """ xi_l = (1 - t_j^eps) xi_j + t_j^eps xi_k written as a row """
    j, k, l = relator.over, relator.incoming, relator.outgoing
    t_eps = _t(nu, j, relator.sign)
    entries = [(j, 1 - t_eps), (k, t_eps), (l, LaurentPoly.const(-1))]
    row = {}
    for col, value in entries:
        row[col] = row.get(col, LaurentPoly.zero()) + value
    return row


def _matrix(pres, row_fn):
    n = pres.n_generators
    matrix = np.empty((len(pres.relators), n), dtype=object)
    for i in range(matrix.shape[0]):
        for j in range(n):
            matrix[i, j] = LaurentPoly.zero()
    for i, relator in enumerate(pres.relators):
        for col, value in row_fn(relator, pres.arc_component).items():
            matrix[i, col] = matrix[i, col] + value
    return matrix


def fox_matrix(ld):
    return _matrix(wirtinger(ld), fox_row)


def q_matrix(ld):
    return _matrix(wirtinger(ld), q_row)


def _clear_columns(rows):
    """ multiply each column by a monomial so no exponent is negative """
    unit = LaurentPoly.const(1)
    n = len(rows)
    for j in range(n):
        column = [rows[i][j] for i in range(n) if not rows[i][j].is_zero()]
        if not column:
            continue
        nvars = max(p.nvars for p in column)
        low = [min(0, min(p.exponent_bounds(nvars)[0][v] for p in column)) for v in range(nvars)]
        shift = tuple((v + 1, -e) for v, e in enumerate(low) if e)
        if shift:
            for i in range(n):
                rows[i][j] = rows[i][j].shift(shift)
            unit = unit.shift(mono_inv(shift))
    return unit


def bareiss_det(matrix):
    """ exact fraction-free determinant of a square matrix of Laurent polynomials """
    rows = [list(row) for row in np.asarray(matrix, dtype=object).tolist()]
    n = len(rows)
    if n == 0:
        return LaurentPoly.const(1)
    assert all(len(row) == n for row in rows), 'determinant of a non-square matrix'
    unit = _clear_columns(rows)
    sign = 1
    previous = LaurentPoly.const(1)
    for k in range(n - 1):
        if rows[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not rows[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly.zero()
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = divide_exact(rows[i][j] * pivot - rows[i][k] * rows[k][j], previous)
            rows[i][k] = LaurentPoly.zero()
        previous = pivot
    return rows[n - 1][n - 1] * unit * sign


def cofactor_det(matrix):
    rows = [list(row) for row in np.asarray(matrix, dtype=object).tolist()]
    n = len(rows)
    if n == 0:
        return LaurentPoly.const(1)
    if n == 1:
        return rows[0][0]
    total = LaurentPoly.zero()
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def _finish(poly):
    return poly if poly.is_zero() else canonicalize(poly)


def alexander_fox(ld, row=0, column=0, det=bareiss_det):
    matrix = fox_matrix(ld)
    if matrix.shape[0] != matrix.shape[1]:
        # a component with no undercrossing splits off
        return LaurentPoly.zero()
    minor = np.delete(np.delete(matrix, row, axis=0), column, axis=1)
    value = det(minor)
    if ld.n_components > 1:
        value = divide_exact(value, binomial(((ld.arc_component[column], 1),)))
    return _finish(value)


def alexander_q(ld, row=0, column=0, det=bareiss_det):
    matrix = q_matrix(ld)
    if matrix.shape[0] != matrix.shape[1]:
        return LaurentPoly.zero()
    minor = np.delete(np.delete(matrix, row, axis=0), column, axis=1)
    value = det(minor)
    if ld.n_components > 1:
        outgoing = ld.crossings[row].outgoing
        value = divide_exact(value, binomial(((ld.arc_component[outgoing], 1),)))
    return _finish(value)
