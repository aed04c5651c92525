"""
Closed forms for pretzel and Montesinos links and the two-parameter
families, checked against the tangle engine
"""
from math import gcd

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from polyring import LaurentPoly, ZeroDenominator, dotequal, parse_poly
from tangle import crossing_count
from diagram import link_diagram
from engine import alexander, alexander_diagram, evaluate
from oracle import alexander_fox
from closedform import (ClassificationError, MontesinosSpec, PretzelSpec, classify_pretzel,
                        closed_form, dotequal_relabeled, kinoshita_terasaka,
                        kinoshita_terasaka_formula, montesinos_knot, pretzel_knot,
                        pretzel_link, pretzel_link_explicit, sym_poly, three_component_family,
                        three_component_formula)

# Lehmer's polynomial at -t
PRETZEL_M2_3_7 = 't^10 - t^9 + t^7 - t^6 + t^5 - t^4 + t^3 - t + 1'


@pytest.mark.parametrize('twists, expected', [
    ((1, 1, 1), 't^2 - t + 1'),
    ((3, 3, 3), '7*t^2 - 13*t + 7'),
    ((-3, 5, 7), '1'),
    ((-2, 3, 7), PRETZEL_M2_3_7),
])
def test_pretzel_knot_values(twists, expected):
    assert dotequal(pretzel_knot(PretzelSpec(twists)), parse_poly(expected))


@pytest.mark.parametrize('twists', [
    (1, 1, 1), (3, 3, 3), (-3, 5, 7), (1, 3, 5, 7, -3),
    (-2, 3, 7), (3, 3, -2), (2, 3, 5), (4, -3, 5, 1), (3, -6, 5, 1, 1), (1, 1, 1, 2),
])
def test_pretzel_knot_matches_engine(twists):
    spec = PretzelSpec(twists)
    assert classify_pretzel(spec).components == 1
    assert dotequal(pretzel_knot(spec), alexander(spec.link_spec()))


@pytest.mark.parametrize('twists', [
    (1, 1, 1, 1), (3, -1, 3, 5), (1, 3, 1, 3, 1, 3),
    (2, 2, 2), (2, 3, 4), (4, 1, 2, 3), (2, 2, 2, 2),
])
def test_pretzel_link_matches_engine(twists):
    spec = PretzelSpec(twists)
    assert classify_pretzel(spec).components > 1
    assert dotequal_relabeled(pretzel_link(spec), alexander(spec.link_spec()))


@pytest.mark.parametrize('twists', [
    (2, 2, 2), (2, 3, 4), (4, 1, 2, 3), (2, 2, 2, 2), (1, 2, 3, 2),
    (1, 3, 2, 2), (3, -1, 2, 5, 1, 4), (-2, 3, -4, 1),
])
def test_pretzel_link_explicit_form(twists):
    spec = PretzelSpec(twists)
    explicit = pretzel_link_explicit(spec)
    assert dotequal(explicit, pretzel_link(spec))
    assert dotequal_relabeled(explicit, alexander_fox(link_diagram(spec.link_spec())))


reduced = st.tuples(st.integers(-7, 7).filter(bool), st.integers(1, 7)).filter(
    lambda f: gcd(f[0], f[1]) == 1)


@pytest.mark.parametrize('kind', ['knot-odd', 'knot-even', 'link-2comp', 'link-ncomp'])
@settings(max_examples=200, deadline=None,
          suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(fractions=st.lists(reduced, min_size=3, max_size=5))
def test_montesinos_closed_form_matches_engine(kind, fractions):
    spec = MontesinosSpec(tuple(fractions))
    assume(spec.classification.kind == kind)
    try:
        cls, value, preset, normal = closed_form(spec)
        engine = alexander(normal.link_spec(), policy=preset)
    except ZeroDenominator:
        assume(False)
    if cls.components == 1:
        assert dotequal(value, engine)
    else:
        assert dotequal_relabeled(value, engine)


twist_lists = st.lists(st.integers(-7, 7).filter(bool), min_size=3, max_size=5)


def _small_fox(spec):
    """ the Fox value when the diagram has at most 16 crossings """
    if sum(abs(p) for p in spec.twists) > 16:
        return None
    return alexander_fox(link_diagram(spec.link_spec()))


@settings(max_examples=150, deadline=None,
          suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(twist_lists)
def test_pretzel_knot_sweep(twists):
    spec = PretzelSpec(tuple(twists))
    assume(classify_pretzel(spec).components == 1)
    try:
        engine = alexander(spec.link_spec())
    except ZeroDenominator:
        assume(False)
    value = pretzel_knot(spec)
    assert dotequal(value, engine)
    fox = _small_fox(spec)
    if fox is not None:
        assert dotequal(value, fox)


@settings(max_examples=60, deadline=None,
          suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(twist_lists)
def test_pretzel_link_sweep(twists):
    spec = PretzelSpec(tuple(twists))
    assume(classify_pretzel(spec).components > 1)
    try:
        engine = alexander(spec.link_spec())
    except ZeroDenominator:
        assume(False)
    value = pretzel_link(spec)
    assert dotequal_relabeled(value, engine)
    fox = _small_fox(spec)
    if fox is not None:
        assert dotequal(engine, fox)


def test_closed_form_normalizes_the_even_summand():
    cls, value, preset, normal = closed_form(MontesinosSpec(((2, 1), (1, 3), (3, 5))))
    assert normal.fractions[-1] == (2, 1)
    assert cls.kind == 'knot-even'
    assert preset == 'montesinos-even'
    assert dotequal(value, montesinos_knot(MontesinosSpec(((1, 3), (3, 5), (2, 1)))))


def test_negative_denominators_are_normalized():
    spec = MontesinosSpec(((1, -3), (2, 5), (1, 2)))
    assert spec.fractions[0] == (-1, 3)


@pytest.mark.parametrize('build', [
    lambda: MontesinosSpec(((1, 2), (1, 3))),
    lambda: MontesinosSpec(((2, 4), (1, 3), (1, 5))),
    lambda: MontesinosSpec(((1, 0), (1, 3), (1, 5))),
    lambda: PretzelSpec((1, 1)),
    lambda: PretzelSpec((1, 0, 3)),
    lambda: pretzel_knot(PretzelSpec((1, 1, 1, 1))),
    lambda: pretzel_knot(PretzelSpec((2, 2, 3))),
    lambda: pretzel_link(PretzelSpec((1, 1, 1))),
    lambda: pretzel_link(PretzelSpec((2, 3, 3))),
    lambda: pretzel_link_explicit(PretzelSpec((2, 3, 3))),
    lambda: montesinos_knot(MontesinosSpec(((1, 1),) * 4)),
])
def test_classification_errors(build):
    with pytest.raises(ClassificationError):
        build()


def test_symmetric_polynomials():
    assert sym_poly(0, [1, 2, 3]) == LaurentPoly.const(1)
    assert sym_poly(2, [1, 2, 3]) == LaurentPoly.const(11)
    assert sym_poly(3, [1, 2, 3]) == LaurentPoly.const(6)


@pytest.mark.parametrize('n1, n2, h', [(3, -2, 1), (3, -2, 2), (3, 2, -1), (3, 2, 1)])
def test_kinoshita_terasaka_family(n1, n2, h):
    spec = kinoshita_terasaka(n1, n2, h)
    assert crossing_count(spec.expr) == 2 * (abs(n1) + abs(n2)) + 2 * abs(h)
    assert dotequal(alexander(spec), kinoshita_terasaka_formula(n1, n2))


def test_kinoshita_terasaka_knot_is_invisible():
    assert dotequal(kinoshita_terasaka_formula(3, -2), LaurentPoly.const(1))
    assert dotequal(kinoshita_terasaka_formula(3, 2),
                    parse_poly('t^8 - 2*t^7 + 3*t^6 - 4*t^5 + 5*t^4 - 4*t^3 + 3*t^2 - 2*t + 1'))


FAMILY_PARAMS = [(1, 1), (1, 2), (2, 1), (2, 2), (-1, 1), (1, -2)]


@pytest.mark.parametrize('k, h', FAMILY_PARAMS)
def test_three_component_family(k, h):
    spec = three_component_family(k, h)
    ld = link_diagram(spec)
    assert ld.n_components == 3
    assert crossing_count(spec.expr) == 8 * abs(k) + 2 * abs(h)
    engine = alexander_diagram(ld)
    assert not engine.is_zero()
    assert dotequal(engine, alexander_fox(ld))
    assert dotequal_relabeled(three_component_formula(k, h), engine)


@pytest.mark.parametrize('k', [1, 2, -1])
def test_three_component_sums_have_nonzero_z_v(k):
    spec = three_component_family(k, 1)
    ld = link_diagram(spec)
    for path in ((0, 0), (1,)):
        assert not evaluate(ld.tangle.nodes[path].expr, ld, path=path).z_v.is_zero()


def test_opposite_twists_split_the_numerator_closure():
    # [1/2k]+[1/-2k] is the zero tangle, so its z_v vanishes and the engine stops
    spec = kinoshita_terasaka(2, -2, 1)
    ld = link_diagram(spec)
    assert evaluate(ld.tangle.nodes[(0, 0)].expr, ld, path=(0, 0)).z_v.is_zero()
    with pytest.raises(ZeroDenominator):
        alexander_diagram(ld)


def test_relabeled_comparison():
    t1, t2 = LaurentPoly.var(1), LaurentPoly.var(2)
    p = 1 + t1 * t2 - 2 * t2
    q = 1 + t2 * LaurentPoly.var(1, -1) - 2 * LaurentPoly.var(1, -1)
    assert dotequal_relabeled(p, q)
    assert not dotequal_relabeled(p, p + 1)
    assert dotequal_relabeled(LaurentPoly.zero(), LaurentPoly.zero())
