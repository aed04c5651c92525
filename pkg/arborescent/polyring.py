"""
Exact sparse Laurent polynomials with integer coefficients, the field of
fractions whose denominators are products of binomials (1 - monomial),
and the normal form used to compare Alexander polynomials up to units.

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
from collections import Counter
import re

# A monomial is a tuple of (variable, exponent) pairs sorted by variable
# with no zero exponents. Variables are numbered from 1.
ONE = ()


class NotDivisible(Exception):
    pass


class ZeroPolynomial(Exception):
    pass


class ZeroDenominator(Exception):
    pass


def mono(*pairs):
    return mono_mul(ONE, tuple(pairs))


def mono_mul(a, b):
    exps = dict(a)
    for var, exp in b:
        total = exps.get(var, 0) + exp
        if total:
            exps[var] = total
        else:
            exps.pop(var, None)
    return tuple(sorted(exps.items()))


def mono_inv(a):
    return tuple((var, -exp) for var, exp in a)


def mono_pow(a, k):
    if k == 0:
        return ONE
    return tuple((var, exp * k) for var, exp in a)


def mono_div(a, b):
    return mono_mul(a, mono_inv(b))


def mono_is_positive(a):
    """ first non-zero exponent is positive """
    return bool(a) and a[0][1] > 0


def dense(a, nvars):
    vec = [0] * nvars
    for var, exp in a:
        vec[var - 1] = exp
    return tuple(vec)


class LaurentPoly:
    """ Immutable map from monomial to non-zero integer coefficient. """

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                if c:
                    total = clean.get(m, 0) + c
                    if total:
                        clean[m] = total
                    else:
                        del clean[m]
        self.terms = clean

    @classmethod
    def _raw(cls, clean):
        p = cls.__new__(cls)
        p.terms = clean
        return p

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def const(cls, c):
        return cls._raw({ONE: c} if c else {})

    @classmethod
    def monomial(cls, m, c=1):
        return cls._raw({m: c} if c else {})

    @classmethod
    def var(cls, i, exp=1):
        return cls.monomial(mono((i, exp)))

    def is_zero(self):
        return not self.terms

    def is_unit(self):
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    @property
    def nvars(self):
        return max((m[-1][0] for m in self.terms if m), default=0)

    def variables(self):
        return sorted({var for m in self.terms for var, _ in m})

    def exponent_bounds(self, nvars=None):
        nvars = self.nvars if nvars is None else nvars
        vecs = [dense(m, nvars) for m in self.terms]
        low = tuple(min(v[i] for v in vecs) for i in range(nvars))
        high = tuple(max(v[i] for v in vecs) for i in range(nvars))
        return low, high

    def leading_term(self, nvars=None):
        nvars = self.nvars if nvars is None else nvars
        m = max(self.terms, key=lambda x: dense(x, nvars))
        return m, self.terms[m]

    def shift(self, m):
        return LaurentPoly._raw({mono_mul(k, m): c for k, c in self.terms.items()})

    def substitute(self, mapping):
        """ mapping: var -> monomial, applied to every term """
        out = LaurentPoly.zero()
        for m, c in self.terms.items():
            image = ONE
            for var, exp in m:
                image = mono_mul(image, mono_pow(mapping.get(var, ((var, 1),)), exp))
            out = out + LaurentPoly.monomial(image, c)
        return out

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            total = out.get(m, 0) + c
            if total:
                out[m] = total
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly._raw({m: c * other for m, c in self.terms.items()} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                total = out.get(m, 0) + c1 * c2
                if total:
                    out[m] = total
                else:
                    out.pop(m, None)
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        assert k >= 0, 'negative powers are not polynomials'
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f'LaurentPoly({to_text(self)})'

    def __str__(self):
        return to_text(self)


def _lift(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


def poly_add(p, q):
    return p + q


def poly_mul(p, q):
    return p * q


def binomial(m):
    """ the polynomial 1 - m """
    return LaurentPoly({ONE: 1, m: -1})


def bracket(k, a):
    """ [k]_a = (1 - a^k) / (1 - a) as a Laurent polynomial, a a monomial """
    out = {}
    if k >= 0:
        exps, coeff = range(k), 1
    else:
        exps, coeff = range(k, 0), -1
    for i in exps:
        m = mono_pow(a, i)
        out[m] = out.get(m, 0) + coeff
    return LaurentPoly(out)


def divide_exact(p, d):
    """
    Exact quotient p / d in the Laurent ring. Raises NotDivisible
    when no Laurent polynomial q satisfies q * d == p.
    """
    if d.is_zero():
        raise ZeroDenominator('division by the zero polynomial')
    if p.is_zero():
        return LaurentPoly.zero()
    nvars = max(p.nvars, d.nvars)
    if len(d.terms) == 1:
        (dm, dc), = d.terms.items()
        if any(c % dc for c in p.terms.values()):
            raise NotDivisible(f'{p} is not divisible by {d}')
        inv = mono_inv(dm)
        return LaurentPoly._raw({mono_mul(m, inv): c // dc for m, c in p.terms.items()})

    p_low, p_high = p.exponent_bounds(nvars)
    d_low, d_high = d.exponent_bounds(nvars)
    q_low = [a - b for a, b in zip(p_low, d_low)]
    q_high = [a - b for a, b in zip(p_high, d_high)]
    if any(lo > hi for lo, hi in zip(q_low, q_high)):
        raise NotDivisible(f'{p} is not divisible by {d}')

    lead_m, lead_c = d.leading_term(nvars)
    d_terms = list(d.terms.items())
    keys = {}

    def key(m):
        k = keys.get(m)
        if k is None:
            k = keys[m] = dense(m, nvars)
        return k

    rem = dict(p.terms)
    quotient = {}
    while rem:
        m = max(rem, key=key)
        c = rem[m]
        if c % lead_c:
            raise NotDivisible(f'{p} is not divisible by {d}')
        qm = mono_div(m, lead_m)
        qv = dense(qm, nvars)
        if any(e < lo or e > hi for e, lo, hi in zip(qv, q_low, q_high)):
            raise NotDivisible(f'{p} is not divisible by {d}')
        qc = c // lead_c
        quotient[qm] = qc
        for dm, dc in d_terms:
            km = mono_mul(qm, dm)
            total = rem.get(km, 0) - qc * dc
            if total:
                rem[km] = total
            else:
                rem.pop(km, None)
    return LaurentPoly._raw(quotient)


def divide_int(p, n):
    if any(c % n for c in p.terms.values()):
        raise NotDivisible(f'{p} is not divisible by {n}')
    return LaurentPoly._raw({m: c // n for m, c in p.terms.items()})


def canonicalize(p):
    """
    Normal form up to multiplication by +-monomials: every variable has
    minimum exponent 0 and the lexicographically least monomial has a
    positive coefficient.
    """
    if p.is_zero():
        raise ZeroPolynomial('the zero polynomial has no normal form')
    nvars = p.nvars
    low, _ = p.exponent_bounds(nvars)
    shift = tuple((i + 1, -e) for i, e in enumerate(low) if e)
    q = p.shift(shift)
    least = min(q.terms, key=lambda m: dense(m, nvars))
    return -q if q.terms[least] < 0 else q


def dotequal(p, q):
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return canonicalize(p) == canonicalize(q)


def to_text(p, nvars=None):
    """
    Render in descending lexicographic order, for example
    't1^2*t2^-1 - 3*t1 + 7'. A single variable prints as 't'.
    """
    if p.is_zero():
        return '0'
    width = max(p.nvars, 1)
    single = (nvars == 1) if nvars is not None else width == 1
    parts = []
    for m in sorted(p.terms, key=lambda x: dense(x, width), reverse=True):
        c = p.terms[m]
        factors = []
        for var, exp in m:
            name = 't' if single else f't{var}'
            factors.append(name if exp == 1 else f'{name}^{exp}')
        body = '*'.join(factors)
        if not body:
            body = str(abs(c))
        elif abs(c) != 1:
            body = f'{abs(c)}*{body}'
        if not parts:
            parts.append(body if c > 0 else f'-{body}')
        else:
            parts.append(f'+ {body}' if c > 0 else f'- {body}')
    return ' '.join(parts)


_FACTOR = re.compile(r'^t(\d*)(?:\^(-?\d+))?$')


def parse_poly(text):
    """ Inverse of to_text; whitespace is ignored. """
    src = ''.join(text.split())
    if not src:
        raise ValueError('empty polynomial')
    terms = []
    start = 0
    for i in range(1, len(src)):
        if src[i] in '+-' and src[i - 1] != '^':
            terms.append(src[start:i])
            start = i
    terms.append(src[start:])
    out = LaurentPoly.zero()
    for term in terms:
        sign = 1
        if term[0] in '+-':
            sign = -1 if term[0] == '-' else 1
            term = term[1:]
        if not term:
            raise ValueError(f'dangling sign in {text!r}')
        coeff, m = sign, ONE
        for factor in term.split('*'):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            match = _FACTOR.match(factor)
            if match is None:
                raise ValueError(f'cannot read factor {factor!r} in {text!r}')
            var = int(match.group(1)) if match.group(1) else 1
            exp = int(match.group(2)) if match.group(2) else 1
            m = mono_mul(m, ((var, exp),))
        out = out + LaurentPoly.monomial(m, coeff)
    return out


def _canonical_binomial(m):
    """
    Returns (unit, m') with 1/(1 - m) == unit / (1 - m') and m' positive.
    """
    if m == ONE:
        raise ZeroDenominator('1 - 1 in a denominator')
    if mono_is_positive(m):
        return LaurentPoly.const(1), m
    # 1 - m = -m (1 - m^-1)
    inv = mono_inv(m)
    return LaurentPoly.monomial(inv, -1), inv


class RationalFn:
    """
    num / prod(1 - m for m in den_factors). Units of the Laurent ring are
    folded into the numerator, so the denominator is monic.
    """

    __slots__ = ('num', 'den_factors')

    def __init__(self, num, den_factors=()):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        factors = []
        for m in den_factors:
            unit, canon = _canonical_binomial(m)
            num = num * unit
            factors.append(canon)
        self.num, self.den_factors = _reduce(num, factors)

    @classmethod
    def over(cls, num, *den_monomials):
        return cls(num, den_monomials)

    def is_zero(self):
        return self.num.is_zero()

    def denominator(self):
        den = LaurentPoly.const(1)
        for m in self.den_factors:
            den = den * binomial(m)
        return den

    def to_poly(self):
        if not self.den_factors:
            return self.num
        return divide_exact(self.num, self.denominator())

    def __add__(self, other):
        other = _lift_fn(other)
        mine, theirs = Counter(self.den_factors), Counter(other.den_factors)
        common = mine | theirs
        a = self.num
        for m, k in (common - mine).items():
            a = a * binomial(m) ** k
        b = other.num
        for m, k in (common - theirs).items():
            b = b * binomial(m) ** k
        return RationalFn(a + b, tuple(common.elements()))

    __radd__ = __add__

    def __neg__(self):
        out = RationalFn.__new__(RationalFn)
        out.num, out.den_factors = -self.num, self.den_factors
        return out

    def __sub__(self, other):
        return self + (-_lift_fn(other))

    def __rsub__(self, other):
        return _lift_fn(other) + (-self)

    def __mul__(self, other):
        other = _lift_fn(other)
        return RationalFn(self.num * other.num, self.den_factors + other.den_factors)

    __rmul__ = __mul__

    def inverse(self):
        num = self.num
        if num.is_zero():
            raise ZeroDenominator('inverse of zero')
        back = LaurentPoly.const(1)
        for m in self.den_factors:
            back = back * binomial(m)
        items = list(num.terms.items())
        if len(items) == 1 and abs(items[0][1]) == 1:
            (m, c), = items
            return RationalFn(back * LaurentPoly.monomial(mono_inv(m), c))
        if len(items) == 2 and items[0][1] == -items[1][1] and abs(items[0][1]) == 1:
            (m1, c1), (m2, _) = items
            # c1 m1 (1 - m2/m1)
            return RationalFn(back * LaurentPoly.monomial(mono_inv(m1), c1),
                              (mono_div(m2, m1),))
        raise NotDivisible(f'{num} is not a unit times a binomial')

    def __truediv__(self, other):
        return self * _lift_fn(other).inverse()

    def __eq__(self, other):
        other = _lift_fn(other)
        if other is NotImplemented:
            return False
        return self.num * other.denominator() == other.num * self.denominator()

    __hash__ = None

    def __repr__(self):
        if not self.den_factors:
            return f'RationalFn({to_text(self.num)})'
        den = ' * '.join(f'(1 - {to_text(LaurentPoly.monomial(m))})'
                         for m in self.den_factors)
        return f'RationalFn(({to_text(self.num)}) / {den})'


def _lift_fn(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, (int, LaurentPoly)):
        return RationalFn(x)
    return NotImplemented


def _reduce(num, factors):
    if num.is_zero():
        return num, ()
    kept = []
    for m in factors:
        try:
            num = divide_exact(num, binomial(m))
        except NotDivisible:
            kept.append(m)
    return num, tuple(sorted(kept))


def ratfn_arith(op, f, g=None):
    f = _lift_fn(f)
    if op == 'inv':
        return f.inverse()
    if op == 'neg':
        return -f
    g = _lift_fn(g)
    if op == 'add':
        return f + g
    if op == 'sub':
        return f - g
    if op == 'mul':
        return f * g
    if op == 'div':
        return f / g
    raise ValueError(f'unknown operation {op}')
