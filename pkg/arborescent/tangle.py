"""
Tangle expressions: leaves, twists, rational tangles given by continued
fractions, the diagonal reflection sigma, vertical (*) and horizontal (+)
composition, plus the text syntax used on the command line and in
corpus files.

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
from enum import Enum
from fractions import Fraction
from math import gcd, floor
from typing import Optional, Tuple, Union


class TangleSyntaxError(Exception):
    def __init__(self, message, position):
        super().__init__(f'{message} at position {position}')
        self.position = position


class ClosureKind(Enum):
    N = 'N'
    D = 'D'


@dataclass(frozen=True)
class Leaf:
    sign: int

    def __post_init__(self):
        assert self.sign in (1, -1), f'leaf sign must be +-1, got {self.sign}'


@dataclass(frozen=True)
class HTwist:
    k: int

    def __post_init__(self):
        assert self.k != 0, 'twist parameter must be non-zero'


@dataclass(frozen=True)
class VTwist:
    k: int

    def __post_init__(self):
        assert self.k != 0, 'twist parameter must be non-zero'


@dataclass(frozen=True)
class Rational:
    """ [[k1],...,[ks]] with H1 = [k1] and Hi = sigma(H(i-1)) + [ki] """
    cf: Tuple[int, ...]

    def __post_init__(self):
        assert self.cf, 'empty continued fraction'
        assert all(self.cf), 'continued fraction terms must be non-zero'


@dataclass(frozen=True)
class Sigma:
    child: 'Expr'


@dataclass(frozen=True)
class VComp:
    """ left stacked on top of right """
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class HComp:
    """ left placed beside right """
    left: 'Expr'
    right: 'Expr'


Expr = Union[Leaf, HTwist, VTwist, Rational, Sigma, VComp, HComp]


@dataclass(frozen=True)
class LinkSpec:
    expr: Expr
    closure: ClosureKind
    orientation: Optional[object] = None


def twist(k):
    """ [k] as the simplest node: a single crossing is a Leaf """
    if abs(k) == 1:
        return Leaf(k)
    return HTwist(k)


def vertical_twist(k):
    if abs(k) == 1:
        return Leaf(k)
    return VTwist(k)


class _Parser:

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise TangleSyntaxError(message, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token):
        self.skip()
        return self.text.startswith(token, self.pos)

    def expect(self, token):
        if not self.peek(token):
            self.error(f'expected {token!r}')
        self.pos += len(token)

    def integer(self):
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in '+-':
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ('', '+', '-'):
            self.pos = start
            self.error('expected an integer')
        return int(digits)

    def done(self):
        self.skip()
        if self.pos != len(self.text):
            self.error('unexpected trailing input')

    def link(self):
        self.skip()
        for kind in ClosureKind:
            if self.peek(kind.value + '('):
                self.expect(kind.value + '(')
                expr = self.expr()
                self.expect(')')
                self.done()
                return LinkSpec(expr, kind)
        self.error("expected 'N(' or 'D('")

    def expr(self):
        node = self.term()
        while self.peek('+'):
            self.expect('+')
            node = HComp(node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek('*'):
            self.expect('*')
            node = VComp(node, self.factor())
        return node

    def factor(self):
        if self.peek('sigma('):
            self.expect('sigma(')
            inner = self.expr()
            self.expect(')')
            return Sigma(inner)
        if self.peek('('):
            self.expect('(')
            inner = self.expr()
            self.expect(')')
            return inner
        if self.peek('[['):
            return self.continued_fraction()
        if self.peek('['):
            return self.twist_literal()
        self.error('expected a tangle')

    def continued_fraction(self):
        self.expect('[')
        terms = []
        while True:
            self.expect('[')
            at = self.pos
            k = self.integer()
            if k == 0:
                self.pos = at
                self.error('zero twist')
            self.expect(']')
            terms.append(k)
            if self.peek(','):
                self.expect(',')
                continue
            break
        self.expect(']')
        return Rational(tuple(terms))

    def twist_literal(self):
        self.expect('[')
        at = self.pos
        p = self.integer()
        if not self.peek('/'):
            self.expect(']')
            if p == 0:
                self.pos = at
                self.error('zero twist')
            return twist(p)
        self.expect('/')
        q_at = self.pos
        q = self.integer()
        self.expect(']')
        if q == 0:
            self.pos = q_at
            self.error('zero denominator')
        if p == 0:
            self.pos = at
            self.error('zero twist')
        if p == 1:
            return vertical_twist(q)
        return rational_from_fraction(p, q)


def parse_link(text):
    return _Parser(text).link()


def parse_expr(text):
    parser = _Parser(text)
    expr = parser.expr()
    parser.done()
    return expr


def rational_from_fraction(p, q):
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0:
        p, q = -p, -q
    if q == 1:
        return twist(p)
    if abs(p) == 1:
        return vertical_twist(p * q)
    return Rational(tuple(continued_fraction(p, q)))


def _wrap(expr, parent, side):
    text = to_text(expr)
    if isinstance(expr, HComp) and (parent is VComp or side == 'right'):
        return f'({text})'
    if isinstance(expr, VComp) and parent is VComp and side == 'right':
        return f'({text})'
    return text


def to_text(node):
    if isinstance(node, LinkSpec):
        return f'{node.closure.value}({to_text(node.expr)})'
    if isinstance(node, Leaf):
        return f'[{node.sign}]'
    if isinstance(node, HTwist):
        return f'[{node.k}]'
    if isinstance(node, VTwist):
        return f'[1/{node.k}]'
    if isinstance(node, Rational):
        return '[' + ','.join(f'[{k}]' for k in node.cf) + ']'
    if isinstance(node, Sigma):
        return f'sigma({to_text(node.child)})'
    if isinstance(node, VComp):
        return f"{_wrap(node.left, VComp, 'left')}*{_wrap(node.right, VComp, 'right')}"
    if isinstance(node, HComp):
        return f"{_wrap(node.left, HComp, 'left')}+{_wrap(node.right, HComp, 'right')}"
    raise TypeError(f'not a tangle expression: {node!r}')


def continued_fraction(p, q):
    """
    Non-zero integers [k1, ..., ks] with
    ks + 1/(k(s-1) + 1/(... + 1/k1)) == p/q.
    """
    if q == 0 or p == 0:
        raise ValueError(f'{p}/{q} has no continued fraction with non-zero terms')
    x = Fraction(p, q)
    terms = []
    while True:
        if x.denominator == 1:
            terms.append(int(x))
            break
        a = floor(x)
        if a == 0:
            a = 1
        terms.append(a)
        x = 1 / (x - a)
    return list(reversed(terms))


def cf_value(cf):
    """ (p, q) with q >= 0 for a continued fraction; q == 0 is infinity """
    p, q = cf[0], 1
    for k in cf[1:]:
        p, q = k * p + q, p
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


def fraction(expr):
    """ (p, q) of a rational-like node, None for anything else """
    if isinstance(expr, Leaf):
        return expr.sign, 1
    if isinstance(expr, HTwist):
        return expr.k, 1
    if isinstance(expr, VTwist):
        return (1, expr.k) if expr.k > 0 else (-1, -expr.k)
    if isinstance(expr, Rational):
        return cf_value(expr.cf)
    if isinstance(expr, Sigma):
        inner = fraction(expr.child)
        if inner is None:
            return None
        p, q = inner
        return (q, p) if p >= 0 else (-q, -p)
    return None


def classify_rational(p, q):
    """ 1: nw-se and ne-sw connected, 2: nw-sw and ne-se, 3: nw-ne and sw-se """
    if p % 2 and q % 2:
        return 1
    if p % 2:
        return 2
    if q % 2:
        return 3
    raise ValueError(f'{p}/{q} is not in lowest terms')


def push_sigma(expr):
    """ sigma(expr) with the reflection pushed down to the leaves """
    if isinstance(expr, Leaf):
        return expr
    if isinstance(expr, HTwist):
        return VTwist(expr.k)
    if isinstance(expr, VTwist):
        return HTwist(expr.k)
    if isinstance(expr, Sigma):
        return expr.child
    if isinstance(expr, HComp):
        return VComp(push_sigma(expr.left), push_sigma(expr.right))
    if isinstance(expr, VComp):
        return HComp(push_sigma(expr.left), push_sigma(expr.right))
    return Sigma(expr)


def reflect_sigma(expr, push=False):
    if push:
        return push_sigma(expr)
    if isinstance(expr, Sigma):
        return expr.child
    return Sigma(expr)


def rational_to_expr(cf):
    node = twist(cf[0])
    for k in cf[1:]:
        node = HComp(push_sigma(node), twist(k))
    return node


def crossing_count(expr):
    if isinstance(expr, Leaf):
        return 1
    if isinstance(expr, (HTwist, VTwist)):
        return abs(expr.k)
    if isinstance(expr, Rational):
        return sum(abs(k) for k in expr.cf)
    if isinstance(expr, Sigma):
        return crossing_count(expr.child)
    return crossing_count(expr.left) + crossing_count(expr.right)


def summands(expr):
    """ flatten a top-level chain R1*R2*...*Rr """
    if isinstance(expr, VComp):
        return summands(expr.left) + summands(expr.right)
    return [expr]


def montesinos(fractions, closure=ClosureKind.D):
    expr = None
    for p, q in fractions:
        node = rational_from_fraction(p, q)
        expr = node if expr is None else VComp(expr, node)
    return LinkSpec(expr, closure)


def pretzel(params):
    return montesinos([(p, 1) for p in params])
