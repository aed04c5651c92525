"""
Bottom-up evaluation of the (z_v, z_h) pair of every subtangle and the
assembly of the multi-variable Alexander polynomial of a closure.

For a subtangle S with end labels t_nw, t_ne, t_sw, t_se:
    z_v(S1*S2) = z_v(S1) z_v(S2)
    z_h(S1+S2) = z_h(S1) z_h(S2)
and the ratios z_h/z_v and z_v/z_h compose with coefficients built from
the labels of S1 only. Both rules are applied multiplied out so that the
only denominators are binomials 1 - t^{+-1}.

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
from typing import Optional

from polyring import (LaurentPoly, RationalFn, ZeroDenominator, bracket,
                      canonicalize, mono_div, mono_inv, mono_mul)
from tangle import (Leaf, HTwist, VTwist, Rational, Sigma, VComp, HComp,
                    ClosureKind)
from diagram import EndLabels, end_labels, link_diagram


class TransferMismatch(Exception):
    pass


@dataclass
class ZPair:
    z_v: RationalFn
    z_h: RationalFn
    labels: Optional[EndLabels] = None


def _t(labels, end, power=1):
    m = labels.phi(end)
    return LaurentPoly.monomial(m if power == 1 else mono_inv(m))


def z_leaf(k, labels, orientation='horizontal'):
    """ [k] horizontally, or [1/k] when orientation is 'vertical' """
    if orientation == 'vertical':
        return z_sigma(z_leaf(k, labels.reflected()), labels)
    ne, se = labels.phi('ne'), labels.phi('se')
    a = mono_mul(ne, se)
    t_ne, t_se = LaurentPoly.monomial(ne), LaurentPoly.monomial(se)
    if k % 2 == 0:
        z_v = t_ne * (t_se - 1) * bracket(k // 2, a)
    else:
        z_v = (1 - t_se) * bracket((k + 1) // 2, a) - 1
    return ZPair(RationalFn(z_v), RationalFn(1), labels)


def z_sigma(z, labels=None):
    return ZPair(z.z_h, z.z_v, labels)


def _vertical_coefficients(labels):
    se = labels.phi('se')
    first = RationalFn(1 - _t(labels, 'ne', -1), (se,))
    second = RationalFn(_t(labels, 'sw') - _t(labels, 'se', -1), (mono_inv(se),))
    return first, second


def _horizontal_coefficients(labels):
    se = labels.phi('se')
    first = RationalFn(1 - _t(labels, 'sw'), (mono_inv(se),))
    second = RationalFn(_t(labels, 'ne', -1) - _t(labels, 'se'), (se,))
    return first, second


def compose_v(top, bottom, labels=None):
    """ top * bottom; coefficients use the labels of the top tangle """
    if top.z_v.is_zero() or bottom.z_v.is_zero():
        raise ZeroDenominator('z_v vanishes below a vertical composition')
    a, b = _vertical_coefficients(top.labels)
    z_v = top.z_v * bottom.z_v
    z_h = (top.z_h * bottom.z_v + a * top.z_v * bottom.z_h
           + b * top.z_h * bottom.z_h)
    return ZPair(z_v, z_h, labels)


def compose_h(left, right, labels=None):
    """ left + right; coefficients use the labels of the left tangle """
    if left.z_h.is_zero() or right.z_h.is_zero():
        raise ZeroDenominator('z_h vanishes below a horizontal composition')
    a, b = _horizontal_coefficients(left.labels)
    z_h = left.z_h * right.z_h
    z_v = (left.z_v * right.z_h + a * left.z_h * right.z_v
           + b * left.z_v * right.z_v)
    return ZPair(z_v, z_h, labels)


def strip_variables(path, ld, s):
    """
    (u, v) of the strip [[k1],...,[ks]] at path, each indexed 0..s.
    u_i is the ne label of the twist block [k_i] and v_i the inverse of
    its se label. u_0 and v_0 are the inverses of the sw and nw labels of
    [k_1], so t_1 = v_0 and t_2 = u_0 name the two strands entering the strip.
    """
    blocks = [end_labels(path + ('K', i), ld) for i in range(1, s + 1)]
    u = [mono_inv(blocks[0].phi('sw'))] + [block.phi('ne') for block in blocks]
    v = [mono_inv(blocks[0].phi('nw'))] + [mono_inv(block.phi('se')) for block in blocks]
    return tuple(u), tuple(v)


def strip_b(k, u, v):
    """ z_v of the twist block [k] written in its u and v """
    base = mono_div(u, v)
    t_se = LaurentPoly.monomial(mono_inv(v))
    if k % 2 == 0:
        return LaurentPoly.monomial(u) * (t_se - 1) * bracket(k // 2, base)
    return (1 - t_se) * bracket((k + 1) // 2, base) - 1


def z_rational(cf, u, v):
    """
    Fast path for [[k1],...,[ks]] through the three-term recurrence
        eta_i = eta_(i-2) + (1 - u_(i-1)^-1) / (1 - v_(i-1)^-1) eta_(i-1) b_i
                          + (u_(i-2)^-1 - v_(i-1)) / (1 - v_(i-1)) eta_(i-2) b_i
    with eta_0 = 1 and eta_1 = b_1. z_h = eta_(s-1) and z_v = eta_s.
    u and v come from strip_variables.
    """
    previous, current = RationalFn(1), RationalFn(strip_b(cf[0], u[1], v[1]))
    for i in range(2, len(cf) + 1):
        b = strip_b(cf[i - 1], u[i], v[i])
        first = RationalFn(1 - LaurentPoly.monomial(mono_inv(u[i - 1])), (mono_inv(v[i - 1]),))
        second = RationalFn(LaurentPoly.monomial(mono_inv(u[i - 2]))
                            - LaurentPoly.monomial(v[i - 1]), (v[i - 1],))
        previous, current = current, previous + first * current * b + second * previous * b
    return ZPair(current, previous)


def _rational_generic(cf, path, ld):
    z = z_leaf(cf[0], end_labels(path + ('H', 1), ld))
    for i in range(2, len(cf) + 1):
        sigma = z_sigma(z, end_labels(path + ('S', i - 1), ld))
        twist = z_leaf(cf[i - 1], end_labels(path + ('K', i), ld))
        z = compose_h(sigma, twist, end_labels(path + ('H', i), ld))
    return z


def evaluate(expr, ld, fastpath=True, check=False, path=()):
    labels = end_labels(path, ld)
    if isinstance(expr, Leaf):
        return z_leaf(expr.sign, labels)
    if isinstance(expr, HTwist):
        return z_leaf(expr.k, labels)
    if isinstance(expr, VTwist):
        return z_leaf(expr.k, labels, 'vertical')
    if isinstance(expr, Rational):
        if fastpath:
            z = z_rational(expr.cf, *strip_variables(path, ld, len(expr.cf)))
            return ZPair(z.z_v, z.z_h, labels)
        z = _rational_generic(expr.cf, path, ld)
        return ZPair(z.z_v, z.z_h, labels)
    if isinstance(expr, Sigma):
        return z_sigma(evaluate(expr.child, ld, fastpath, check, path + (0,)), labels)
    first = evaluate(expr.left, ld, fastpath, check, path + (0,))
    second = evaluate(expr.right, ld, fastpath, check, path + (1,))
    if isinstance(expr, VComp):
        z = compose_v(first, second, labels)
        if check:
            transfer_check(z, first, second, vertical=True)
        return z
    if isinstance(expr, HComp):
        z = compose_h(first, second, labels)
        if check:
            transfer_check(z, first, second, vertical=False)
        return z
    raise TypeError(f'not a tangle expression: {expr!r}')


@dataclass
class TransferMatrix:
    """ rows / scale is the transfer matrix F_v or F_h of a subtangle """
    rows: tuple
    scale: RationalFn

    def __matmul__(self, other):
        (a, b), (c, d) = self.rows
        (e, f), (g, h) = other.rows
        return TransferMatrix(((a * e + b * g, a * f + b * h),
                               (c * e + d * g, c * f + d * h)),
                              self.scale * other.scale)

    def __eq__(self, other):
        return all(x == y for row, other_row in zip(self.rows, other.rows)
                   for x, y in zip(row, other_row)) and self.scale == other.scale


def _scaled_b(z):
    """ z_v * b^sw and z_v * b^se, b^se solved from the label constraint """
    labels = z.labels
    se_inv = _t(labels, 'se', -1)
    constant = se_inv * (_t(labels, 'ne', -1) - 1)
    beta_sw = -z.z_h
    beta_se = RationalFn(1, (mono_inv(labels.phi('se')),)) * (
        constant * z.z_v + (1 - _t(labels, 'sw')) * beta_sw)
    return beta_sw, beta_se


def transfer_vertical(z):
    beta_sw, beta_se = _scaled_b(z)
    return TransferMatrix(((z.z_v - beta_sw, beta_sw), (z.z_v - beta_se, beta_se)), z.z_v)


def transfer_horizontal(z):
    _, beta_se = _scaled_b(z)
    gamma_ne, gamma_se = -z.z_v, -beta_se
    return TransferMatrix(((z.z_h - gamma_ne, gamma_ne), (z.z_h - gamma_se, gamma_se)), z.z_h)


def transfer_check(z, first, second, vertical=True):
    """ F(S1 . S2) == F(S2) F(S1) for the composition matching the node """
    matrix = transfer_vertical if vertical else transfer_horizontal
    composed = matrix(second) @ matrix(first)
    if not composed == matrix(z):
        kind = 'vertical' if vertical else 'horizontal'
        raise TransferMismatch(f'{kind} transfer matrices do not compose')
    return composed


def alexander_diagram(ld, fastpath=True, check=False):
    """ Alexander polynomial of an oriented closure built from a tangle """
    root = evaluate(ld.tangle.expr, ld, fastpath, check)
    if ld.closure == ClosureKind.D:
        value, end = root.z_h, 'ne'
    else:
        value, end = root.z_v, 'sw'
    if ld.n_components > 1:
        value = value * RationalFn(1, (root.labels.phi(end),))
    poly = value.to_poly()
    if poly.is_zero():
        return poly
    return canonicalize(poly)


def alexander(spec, fastpath=True, policy=None, check=False):
    return alexander_diagram(link_diagram(spec, policy), fastpath, check)


def z_values(spec, policy=None, fastpath=True):
    ld = link_diagram(spec, policy)
    return evaluate(spec.expr, ld, fastpath), ld
