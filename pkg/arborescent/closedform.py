"""
Closed formulas for the Alexander polynomial of Montesinos and pretzel
links, and of two families of non-Montesinos arborescent links. These
are evaluated independently of the generic tangle recursion and serve
as a second computation path.

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

from dataclasses import dataclass, field
from itertools import permutations, product
from math import gcd
from typing import Tuple

from polyring import (LaurentPoly, RationalFn, bracket, canonicalize,
                      divide_exact, divide_int, dotequal, mono, mono_mul)
from tangle import (ClosureKind, HComp, LinkSpec, VComp, twist,
                    vertical_twist, montesinos)
from diagram import link_diagram, montesinos_class, _summand_paths
from engine import evaluate


class ClassificationError(Exception):
    pass


def _t(var=1, exp=1):
    return LaurentPoly.var(var, exp)


def _finish(poly):
    return poly if poly.is_zero() else canonicalize(poly)


def sym_poly(k, values):
    """ elementary symmetric polynomial sigma_k of values """
    assert 0 <= k <= len(values), f'sigma_{k} of {len(values)} values'
    e = [LaurentPoly.const(1)] + [LaurentPoly.zero()] * k
    for v in values:
        v = v if isinstance(v, LaurentPoly) else LaurentPoly.const(v)
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[k]


def _rotate_even_last(items, is_even):
    """ cyclic rotation so the last item is even, the link is unchanged """
    last = max(i for i, item in enumerate(items) if is_even(item))
    return tuple(items[last + 1:]) + tuple(items[:last + 1])


@dataclass(frozen=True)
class MontesinosSpec:
    fractions: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if len(self.fractions) < 3:
            raise ClassificationError('a Montesinos link needs at least 3 rational tangles')
        normal = []
        for p, q in self.fractions:
            if q == 0 or gcd(p, q) != 1:
                raise ClassificationError(f'{p}/{q} is not a reduced fraction')
            normal.append((-p, -q) if q < 0 else (p, q))
        object.__setattr__(self, 'fractions', tuple(normal))

    @property
    def classification(self):
        return montesinos_class(self.fractions)

    def normalized(self):
        """ rotated so a type 3 tangle, if any, comes last """
        if self.classification.n0 == 0:
            return self
        return MontesinosSpec(_rotate_even_last(self.fractions, lambda f: f[0] % 2 == 0))

    def link_spec(self):
        return montesinos(self.fractions)


@dataclass(frozen=True)
class PretzelSpec:
    twists: Tuple[int, ...]

    def __post_init__(self):
        if len(self.twists) < 3:
            raise ClassificationError('a pretzel link needs at least 3 twists')
        if not all(self.twists):
            raise ClassificationError('pretzel twists must be non-zero')
        object.__setattr__(self, 'twists', tuple(self.twists))

    def montesinos(self):
        return MontesinosSpec(tuple((p, 1) for p in self.twists))

    def link_spec(self):
        return montesinos([(p, 1) for p in self.twists])


@dataclass
class _PairValue:
    z_v: RationalFn
    z_h: RationalFn = field(default_factory=lambda: RationalFn(1))


PRESET_FOR = {'knot-odd': 'montesinos-odd', 'knot-even': 'montesinos-even',
              'link-2comp': '2comp', 'link-ncomp': 'ncomp'}


def summand_zpairs(spec, preset):
    """ (z_v, z_h) of every summand, labels from the preset orientation """
    ld = link_diagram(spec.link_spec(), preset)
    pairs = [evaluate(ld.tangle.nodes[path].expr, ld, path=path)
             for path in _summand_paths(ld.tangle.expr)]
    return pairs, ld


def _product(values):
    out = RationalFn(1)
    for v in values:
        out = out * v
    return out


def montesinos_knot(spec):
    spec = spec.normalized()
    kind = spec.classification.kind
    if kind not in ('knot-odd', 'knot-even'):
        raise ClassificationError(f'{kind} is not a Montesinos knot')
    pairs, _ = summand_zpairs(spec, PRESET_FOR[kind])
    t = _t()
    if kind == 'knot-odd':
        value = (_product((t + 1) * z.z_h + z.z_v for z in pairs)
                 - _product(z.z_v for z in pairs)).to_poly()
        return _finish(divide_exact(value, t + 1))
    total = RationalFn(0)
    parity = 0
    for i, z in enumerate(pairs):
        eps = -1 if parity % 2 else 1
        others = _product(w.z_v for j, w in enumerate(pairs) if j != i)
        total = total + RationalFn(1 - t, (((1, eps),),)) * z.z_h * others
        parity += spec.fractions[i][1]
    return _finish(total.to_poly())


def _component_sum(pairs, eps, nu):
    """ prod z_v * sum z_h / ((1 - t_nu^eps) z_v) """
    total = RationalFn(0)
    for i, z in enumerate(pairs):
        others = _product(w.z_v for j, w in enumerate(pairs) if j != i)
        total = total + RationalFn(1, (((nu[i], eps[i]),),)) * z.z_h * others
    return total


def _block_bookkeeping(q_values, evens):
    """ nu_i and eps_i for the blocks ending at each even index """
    eps, nu = [], []
    start = 0
    for k, end in enumerate(evens, start=1):
        parity = 0
        for i in range(start, end + 1):
            eps.append(-1 if parity % 2 else 1)
            nu.append(k)
            parity += q_values[i]
        start = end + 1
    return eps, nu


def montesinos_link(spec):
    spec = spec.normalized()
    kind = spec.classification.kind
    if kind not in ('link-2comp', 'link-ncomp'):
        raise ClassificationError(f'{kind} is not a Montesinos link with several components')
    pairs, _ = summand_zpairs(spec, PRESET_FOR[kind])
    if kind == 'link-2comp':
        t12 = LaurentPoly.monomial(mono((1, 1), (2, 1)))
        first, second = RationalFn(1), RationalFn(1)
        parity = 0
        for (_, q), z in zip(spec.fractions, pairs):
            tau = 1 if parity % 2 == 0 else 2
            first = first * (RationalFn(1 - t12, (((tau, 1),),)) * z.z_h + z.z_v)
            second = second * z.z_v
            parity += q
        return _finish(divide_exact((first - second).to_poly(), t12 - 1))
    evens = [i for i, (p, _) in enumerate(spec.fractions) if p % 2 == 0]
    eps, nu = _block_bookkeeping([q for _, q in spec.fractions], evens)
    return _finish(_component_sum(pairs, eps, nu).to_poly())


def closed_form(spec):
    """ classification, polynomial and the preset orientation it refers to """
    spec = spec.normalized()
    cls = spec.classification
    if cls.components == 1:
        return cls, montesinos_knot(spec), PRESET_FOR[cls.kind], spec
    return cls, montesinos_link(spec), PRESET_FOR[cls.kind], spec


def pretzel_knot(spec):
    ps = list(spec.twists)
    r = len(ps)
    evens = [p for p in ps if p % 2 == 0]
    t = _t()
    if not evens:
        if r % 2 == 0:
            raise ClassificationError('an even number of odd twists is a 2-component link')
        total = LaurentPoly.zero()
        for k in range((r - 1) // 2 + 1):
            total = total + (sym_poly(2 * k, ps) * (t + 1) ** (r - 1 - 2 * k)
                             * (t - 1) ** (2 * k))
        return _finish(divide_int(total, 2 ** (r - 1)))
    if len(evens) != 1:
        raise ClassificationError('a pretzel knot has at most one even twist')
    ps = list(_rotate_even_last(ps, lambda p: p % 2 == 0))
    h = ps[-1] // 2
    odd = ps[:-1]
    factors = [_t(1, p) + 1 for p in odd]
    whole = LaurentPoly.const(1)
    for f in factors:
        whole = whole * f
    # sum_i t^p_i prod_(j != i) (1 + t^p_j)
    spread = LaurentPoly.zero()
    for i, p in enumerate(odd):
        term = _t(1, p)
        for j, f in enumerate(factors):
            if j != i:
                term = term * f
        spread = spread + term
    if r % 2 == 0:
        value = whole * _t(1, h) + (_t(1, h) - _t(1, -h)) * (spread - whole * (r // 2))
    else:
        value = whole + (_t(1, -1) - t) * h * (spread - whole * ((r - 1) // 2))
    return _finish(divide_exact(value, (t + 1) ** (r - 1)))


def pretzel_link(spec):
    ps = list(spec.twists)
    r = len(ps)
    evens = [i for i, p in enumerate(ps) if p % 2 == 0]
    if not evens:
        if r % 2:
            raise ClassificationError('an odd number of odd twists is a knot')
        t1, t2 = _t(1), _t(2)
        down = mono((1, -1), (2, 1))
        up = mono((1, 1), (2, -1))
        first, second = LaurentPoly.const(1), LaurentPoly.const(1)
        for i in range(0, r, 2):
            ha, hb = (ps[i] + 1) // 2, (ps[i + 1] + 1) // 2
            first = first * ((t1 - 1) * bracket(ha, down) - t1) * ((t2 - 1) * bracket(hb, up) - t2)
            second = second * ((t2 - 1) * bracket(ha, down) + 1) * ((t1 - 1) * bracket(hb, up) + 1)
        return _finish(divide_exact(first - second, t1 * t2 - 1))
    if len(evens) < 2:
        raise ClassificationError('a pretzel link with one even twist is a knot')
    ps = list(_rotate_even_last(ps, lambda p: p % 2 == 0))
    evens = [i for i, p in enumerate(ps) if p % 2 == 0]
    n = len(evens)
    eps, nu = _block_bookkeeping([1] * r, evens)
    pairs = []
    start = 0
    for k, end in enumerate(evens, start=1):
        following = k % n + 1
        kappa = (-1) ** (end - start + 1)
        for i in range(start, end):
            e = eps[i]
            z_v = -divide_exact(_t(k, -ps[i] * e) + 1, _t(k, e) + 1)
            pairs.append(_PairValue(RationalFn(z_v)))
        a = mono_mul(((k, kappa),), ((following, 1),))
        z_v = _t(k, kappa) * (_t(following) - 1) * bracket(ps[end] // 2, a)
        pairs.append(_PairValue(RationalFn(z_v)))
        start = end + 1
    return _finish(_component_sum(pairs, eps, nu).to_poly())


def pretzel_link_explicit(spec):
    """
    the same polynomial as pretzel_link's even case, written out per block:
    prod g_k f_i * sum_k (1/((1 - t_k^kappa) g_k) - c_k (1 + t_k)/(1 - t_k)
                          + sum_i t_k^p_i / ((1 - t_k) f_i))
    with f_i = (t_k^p_i + 1)/(t_k + 1) over the odd twists only and
    c_k = floor((r_k - r_(k-1) - 1) / 2), the number of odd twists with eps = -1
    """
    ps = list(spec.twists)
    if sum(1 for p in ps if p % 2 == 0) < 2:
        raise ClassificationError('the explicit form needs at least two even twists')
    ps = list(_rotate_even_last(ps, lambda p: p % 2 == 0))
    evens = [i for i, p in enumerate(ps) if p % 2 == 0]
    n = len(evens)
    blocks = []
    whole = LaurentPoly.const(1)
    start = 0
    for k, end in enumerate(evens, start=1):
        following = k % n + 1
        kappa = (-1) ** (end - start + 1)
        base = mono_mul(((k, kappa),), ((following, 1),))
        g_k = (_t(following) - 1) * bracket(ps[end] // 2, base)
        odd = [(p, divide_exact(_t(k, p) + 1, _t(k) + 1)) for p in ps[start:end]]
        whole = whole * g_k
        for _, f in odd:
            whole = whole * f
        blocks.append((k, kappa, g_k, odd, (end - start) // 2))
        start = end + 1
    total = RationalFn(0)
    for k, kappa, g_k, odd, count in blocks:
        total = total + RationalFn(divide_exact(whole, g_k), (((k, kappa),),))
        total = total - RationalFn(whole * (_t(k) + 1) * count, (((k, 1),),))
        for p, f in odd:
            total = total + RationalFn(divide_exact(whole, f) * _t(k, p), (((k, 1),),))
    return _finish(total.to_poly())


def kinoshita_terasaka(n1, n2, h):
    """ D(([1/n1]+[1/n2])*[2h]*([1/-n1]+[1/-n2])) """
    top = HComp(vertical_twist(n1), vertical_twist(n2))
    bottom = HComp(vertical_twist(-n1), vertical_twist(-n2))
    return LinkSpec(VComp(VComp(top, twist(2 * h)), bottom), ClosureKind.D)


def kinoshita_terasaka_formula(n1, n2):
    """ (t^n + t^-n + 2) / (t + t^-1 + 2) with n = n1 + n2 odd """
    n = n1 + n2
    assert n % 2, 'the family is a knot only for n1 + n2 odd'
    t = _t()
    return _finish(divide_exact((_t(1, n) + 1) ** 2, (t + 1) ** 2))


def three_component_family(k, h):
    """
    D(([1/-2k]+[1/-2k])*[2h]*([1/2k]+[1/2k])). Each sum closes a loop of
    its own around the strand through [2h], so the link has 3 components
    and the numerator closure of each sum is a non-split 2-bridge link.
    """
    return kinoshita_terasaka(-2 * k, -2 * k, h)


def three_component_formula(k, h):
    """
    Alexander polynomial of three_component_family(k, h), with t1 on the
    component through [2h], t2 on the loop of the bottom sum and t3 on
    the loop of the top sum.
    """
    t1, t2, t3 = _t(1), _t(2), _t(3)
    inv = _t(1, -1)
    # z_h of the four vertical twists, z_v of each is 1
    top_left = inv * (t3 - 1) * bracket(-k, mono((3, 1), (1, -1)))
    top_right = _t(3, -1) * (t1 - 1) * bracket(-k, mono((1, 1), (3, -1)))
    bottom_left = inv * (t2 - 1) * bracket(k, mono((2, 1), (1, -1)))
    bottom_right = _t(2, -1) * (t1 - 1) * bracket(k, mono((1, 1), (2, -1)))
    # z_v of a sum is z_h(right) + (1 - t1) / (1 - t_loop) z_h(left), cleared of the denominator
    top = (t1 - 1) * (_t(3, -1) * bracket(-k, mono((1, 1), (3, -1)))
                      + inv * bracket(-k, mono((3, 1), (1, -1))))
    bottom = (t1 - 1) * (_t(2, -1) * bracket(k, mono((1, 1), (2, -1)))
                         + inv * bracket(k, mono((2, 1), (1, -1))))
    z_h = (h * (1 - t1) * (top_left * top_right * bottom + top * bottom_left * bottom_right)
           + top * bottom)
    return _finish(divide_exact(z_h, 1 - t1))


def dotequal_relabeled(p, q):
    """ p and q agree up to units after renumbering and reversing components """
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    variables = sorted(set(p.variables()) | set(q.variables()))
    for order in permutations(variables):
        for signs in product((1, -1), repeat=len(variables)):
            mapping = {v: ((w, s),) for v, w, s in zip(variables, order, signs)}
            if dotequal(p.substitute(mapping), q):
                return True
    return False


def classify_pretzel(spec):
    return montesinos_class([(p, 1) for p in spec.twists])
