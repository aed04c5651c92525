"""
Planar diagrams of tangle expressions and their closures: crossings,
component tracing, orientation, Wirtinger arcs, crossing signs, PD codes
and the four end labels of every subtangle.

Geometry. Every crossing has ports nw, ne, sw, se and two strands, one
through nw and se and one through ne and sw. A positive leaf [1] has the
nw-se strand on top, [-1] the ne-sw strand. Inside an odd number of
sigma reflections the ne and sw ports of a crossing swap physical
corners.

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
from typing import Dict, List, Optional, Tuple
import re

import networkx as nx

from tangle import (Leaf, HTwist, VTwist, Rational, Sigma, VComp, HComp,
                    ClosureKind, LinkSpec, fraction, classify_rational)

PORTS = ('nw', 'ne', 'sw', 'se')
OPPOSITE = {'nw': 'se', 'se': 'nw', 'ne': 'sw', 'sw': 'ne'}
POSITION = {'nw': (-1, 1), 'ne': (1, 1), 'sw': (-1, -1), 'se': (1, -1)}
# counterclockwise starting from the upper right corner
CCW = ('ne', 'nw', 'sw', 'se')
PRESETS = ('montesinos-odd', 'montesinos-even', '2comp', 'ncomp')

Slot = Tuple[int, str]


class OrientationError(Exception):
    pass


class PDFormatError(Exception):
    pass


@dataclass
class Crossing:
    index: int
    kind: int
    flipped: bool = False

    def corner(self, port):
        if self.flipped and port in ('ne', 'sw'):
            return OPPOSITE[port]
        return port

    def port_at(self, corner):
        return self.corner(corner)

    def is_over(self, port):
        if self.kind == 1:
            return port in ('nw', 'se')
        return port in ('ne', 'sw')


@dataclass
class NodeEnds:
    ends: Dict[str, Slot]
    parity: int
    expr: object = None


@dataclass
class TangleDiagram:
    expr: object
    crossings: List[Crossing]
    edges: List[Tuple[Slot, Slot]]
    ends: Dict[str, Slot]
    nodes: Dict[tuple, NodeEnds]


@dataclass
class CrossingRecord:
    index: int
    over: int
    incoming: int
    outgoing: int
    sign: int
    under_in: str = ''
    under_out: str = ''


@dataclass
class LinkDiagram:
    crossings: List[CrossingRecord]
    arc_component: List[int]
    n_components: int
    tangle: Optional[TangleDiagram] = None
    closure: Optional[ClosureKind] = None
    cycles: list = field(default_factory=list)
    slot_out: Dict[Slot, bool] = field(default_factory=dict)
    slot_component: Dict[Slot, int] = field(default_factory=dict)

    @property
    def n_arcs(self):
        return len(self.arc_component)


@dataclass(frozen=True)
class Label:
    component: int
    eps: int

    def inverse(self):
        return Label(self.component, -self.eps)

    @property
    def monomial(self):
        return ((self.component, self.eps),)


@dataclass(frozen=True)
class EndLabels:
    nw: Label
    ne: Label
    sw: Label
    se: Label

    def phi(self, end):
        return getattr(self, end).monomial

    def reflected(self):
        """ labels of the child of a sigma node with these labels """
        return EndLabels(nw=self.nw.inverse(), ne=self.sw.inverse(),
                         sw=self.ne.inverse(), se=self.se.inverse())


class _Builder:

    def __init__(self):
        self.crossings = []
        self.edges = []
        self.nodes = {}

    def leaf(self, sign):
        c = Crossing(len(self.crossings), sign)
        self.crossings.append(c)
        return {p: (c.index, p) for p in PORTS}

    def hglue(self, left, right):
        self.edges.append((left['ne'], right['nw']))
        self.edges.append((left['se'], right['sw']))
        return {'nw': left['nw'], 'sw': left['sw'], 'ne': right['ne'], 'se': right['se']}

    def vglue(self, top, bottom):
        self.edges.append((top['sw'], bottom['nw']))
        self.edges.append((top['se'], bottom['ne']))
        return {'nw': top['nw'], 'ne': top['ne'], 'sw': bottom['sw'], 'se': bottom['se']}

    def twist(self, k):
        sign = 1 if k > 0 else -1
        ends = self.leaf(sign)
        for _ in range(abs(k) - 1):
            ends = self.hglue(ends, self.leaf(sign))
        return ends

    def reflected(self, build):
        first = len(self.crossings)
        ends = build()
        for c in self.crossings[first:]:
            c.flipped = not c.flipped
        return {'nw': ends['nw'], 'ne': ends['sw'], 'sw': ends['ne'], 'se': ends['se']}

    def strip(self, cf, i, path, parity):
        """ ends of H_i of a continued fraction strip """
        if i == 1:
            ends = self.twist(cf[0])
            self.nodes[path + ('K', 1)] = NodeEnds(ends, parity)
            self.nodes[path + ('H', 1)] = NodeEnds(ends, parity)
            return ends
        left = self.reflected(lambda: self.strip(cf, i - 1, path, parity + 1))
        self.nodes[path + ('S', i - 1)] = NodeEnds(left, parity)
        right = self.twist(cf[i - 1])
        self.nodes[path + ('K', i)] = NodeEnds(right, parity)
        ends = self.hglue(left, right)
        self.nodes[path + ('H', i)] = NodeEnds(ends, parity)
        return ends

    def build(self, expr, path, parity):
        if isinstance(expr, Leaf):
            ends = self.leaf(expr.sign)
        elif isinstance(expr, HTwist):
            ends = self.twist(expr.k)
        elif isinstance(expr, VTwist):
            ends = self.reflected(lambda: self.twist(expr.k))
        elif isinstance(expr, Rational):
            ends = self.strip(expr.cf, len(expr.cf), path, parity)
        elif isinstance(expr, Sigma):
            ends = self.reflected(lambda: self.build(expr.child, path + (0,), parity + 1))
        elif isinstance(expr, VComp):
            top = self.build(expr.left, path + (0,), parity)
            bottom = self.build(expr.right, path + (1,), parity)
            ends = self.vglue(top, bottom)
        elif isinstance(expr, HComp):
            left = self.build(expr.left, path + (0,), parity)
            right = self.build(expr.right, path + (1,), parity)
            ends = self.hglue(left, right)
        else:
            raise TypeError(f'not a tangle expression: {expr!r}')
        self.nodes[path] = NodeEnds(ends, parity, expr)
        return ends


def build_diagram(expr):
    builder = _Builder()
    ends = builder.build(expr, (), 0)
    return TangleDiagram(expr, builder.crossings, builder.edges, ends, builder.nodes)


def _closure_edges(td, kind):
    e = td.ends
    if kind == ClosureKind.D:
        return [(e['nw'], e['sw']), (e['ne'], e['se'])]
    return [(e['nw'], e['ne']), (e['sw'], e['se'])]


def _trace(td, kind):
    """ auto-directed cycles of passes (crossing, in_port, out_port) """
    partner = {}
    for a, b in td.edges + _closure_edges(td, kind):
        assert a not in partner and b not in partner, f'slot glued twice: {a} {b}'
        partner[a] = b
        partner[b] = a
    graph = nx.Graph()
    for a, b in partner.items():
        graph.add_edge(a, b)
    for c in td.crossings:
        for p in ('nw', 'ne'):
            graph.add_edge((c.index, p), (c.index, OPPOSITE[p]))
    cycles = []
    for component in sorted(nx.connected_components(graph), key=min):
        start = min(component)
        slot = start
        cycle = []
        while True:
            c, p = slot
            cycle.append((c, p, OPPOSITE[p]))
            slot = partner[(c, OPPOSITE[p])]
            if slot == start:
                break
        cycles.append(cycle)
    return cycles


def _reverse(cycle):
    return [(c, out, inp) for c, inp, out in reversed(cycle)]


def _direction(crossing, inp, out):
    x0, y0 = POSITION[crossing.corner(inp)]
    x1, y1 = POSITION[crossing.corner(out)]
    return x1 - x0, y1 - y0


def _assemble(td, kind, cycles):
    crossings = td.crossings
    slot_out, slot_component = {}, {}
    over_arc, in_arc, out_arc = {}, {}, {}
    passes = {}
    arc_component = []
    for number, cycle in enumerate(cycles, start=1):
        for c, inp, out in cycle:
            slot_out[(c, inp)] = False
            slot_out[(c, out)] = True
            slot_component[(c, inp)] = slot_component[(c, out)] = number
            passes.setdefault(c, []).append((inp, out))
        unders = [i for i, (c, inp, _) in enumerate(cycle) if not crossings[c].is_over(inp)]
        first = len(arc_component)
        arc_component.append(number)
        if not unders:
            for c, _, _ in cycle:
                over_arc[c] = first
            continue
        u0 = unders[0]
        current = first
        for c, inp, _ in cycle[u0 + 1:] + cycle[:u0]:
            if crossings[c].is_over(inp):
                over_arc[c] = current
            else:
                in_arc[c] = current
                current = len(arc_component)
                arc_component.append(number)
                out_arc[c] = current
        c0 = cycle[u0][0]
        in_arc[c0] = current
        out_arc[c0] = first

    records = []
    for crossing in crossings:
        (over_dir,) = [_direction(crossing, i, o) for i, o in passes[crossing.index]
                       if crossing.is_over(i)]
        (under,) = [(i, o) for i, o in passes[crossing.index] if not crossing.is_over(i)]
        under_dir = _direction(crossing, *under)
        cross = over_dir[0] * under_dir[1] - over_dir[1] * under_dir[0]
        records.append(CrossingRecord(
            index=crossing.index, over=over_arc[crossing.index],
            incoming=in_arc[crossing.index], outgoing=out_arc[crossing.index],
            sign=1 if cross > 0 else -1, under_in=under[0], under_out=under[1]))
    return LinkDiagram(records, arc_component, len(cycles), td, kind, cycles,
                       slot_out, slot_component)


def close(td, kind):
    return _assemble(td, kind, _trace(td, kind))


def link_diagram(spec: LinkSpec, policy=None):
    ld = close(build_diagram(spec.expr), spec.closure)
    if policy is None:
        policy = spec.orientation
    return orient(ld, policy)


def _summand_paths(expr, path=()):
    if isinstance(expr, VComp):
        return _summand_paths(expr.left, path + (0,)) + _summand_paths(expr.right, path + (1,))
    return [path]


def _preset_constraints(ld, name):
    """ (slot, component number, outward) triples fixing a Montesinos orientation """
    td = ld.tangle
    if td is None or ld.closure != ClosureKind.D:
        raise OrientationError(f'preset {name} needs a D closure of a tangle chain')
    paths = _summand_paths(td.expr)
    first = td.nodes[paths[0]].ends
    if name in ('montesinos-odd', 'montesinos-even'):
        return [(first['ne'], 1, False)]
    if name == '2comp':
        return [(first['ne'], 1, False), (first['nw'], 2, False)]
    if name == 'ncomp':
        types = []
        for path in paths:
            frac = fraction(td.nodes[path].expr)
            if frac is None:
                raise OrientationError('ncomp preset needs rational summands')
            types.append(classify_rational(*frac))
        evens = [i for i, t in enumerate(types) if t == 3]
        if not evens or evens[-1] != len(paths) - 1:
            raise OrientationError('ncomp preset needs the last summand to be of type 3')
        previous = [evens[-1]] + evens[:-1]
        return [(td.nodes[paths[j]].ends['se'], k, True)
                for k, j in enumerate(previous, start=1)]
    raise OrientationError(f'unknown orientation preset {name}')


def orient(ld, policy=None):
    """
    policy: None or 'auto', a list of +-1 direction bits (one per
    auto-numbered component, -1 reverses it) or a preset name.
    """
    td, kind = ld.tangle, ld.closure
    if td is None:
        if policy not in (None, 'auto'):
            raise OrientationError('a diagram read from PD keeps its orientation')
        return ld
    auto = _trace(td, kind)
    if policy in (None, 'auto'):
        return _assemble(td, kind, auto)
    if isinstance(policy, str):
        if policy not in PRESETS:
            raise OrientationError(f'unknown orientation policy {policy}')
        return _constrained(td, kind, auto, _preset_constraints(_assemble(td, kind, auto), policy))
    bits = list(policy)
    if len(bits) != len(auto) or any(b not in (1, -1) for b in bits):
        raise OrientationError(f'expected {len(auto)} direction bits of +-1, got {bits}')
    return _assemble(td, kind, [c if b == 1 else _reverse(c) for c, b in zip(auto, bits)])


def _constrained(td, kind, auto, constraints):
    where = {}
    for i, cycle in enumerate(auto):
        for c, inp, out in cycle:
            where[(c, inp)] = (i, False)
            where[(c, out)] = (i, True)
    chosen = {}
    for slot, number, outward in constraints:
        i, is_out = where[slot]
        cycle = auto[i] if is_out == outward else _reverse(auto[i])
        if i in chosen and chosen[i] != (number, cycle):
            raise OrientationError('orientation constraints are inconsistent for this link')
        if any(n == number for j, (n, _) in chosen.items() if j != i):
            raise OrientationError(f'component {number} constrained twice')
        chosen[i] = (number, cycle)
    ordered = [cycle for _, cycle in sorted(chosen.values(), key=lambda nc: nc[0])]
    ordered += [cycle for i, cycle in enumerate(auto) if i not in chosen]
    return _assemble(td, kind, ordered)


def end_labels(path, ld):
    node = ld.tangle.nodes[path]
    flip = -1 if node.parity % 2 else 1
    labels = {}
    for end, slot in node.ends.items():
        eps = 1 if ld.slot_out[slot] else -1
        labels[end] = Label(ld.slot_component[slot], eps * flip)
    return EndLabels(**labels)


def sign_of(ld, index):
    return ld.crossings[index].sign


def pd_code(ld):
    """
    X[a,b,c,d] per crossing, arcs 1-based, counterclockwise from the
    incoming under-strand. The trailer line "components:" gives the
    component number of each arc in arc order, so a trefoil ends with
    "components: 1 1 1" and the two-crossing Hopf link with
    "components: 1 2". parse_pd reads the same trailer.
    """
    lines = []
    td = ld.tangle
    for rec in ld.crossings:
        crossing = td.crossings[rec.index]
        start = CCW.index(crossing.corner(rec.under_in))
        arcs = []
        for step in range(4):
            port = crossing.port_at(CCW[(start + step) % 4])
            if port == rec.under_in:
                arcs.append(rec.incoming)
            elif port == rec.under_out:
                arcs.append(rec.outgoing)
            else:
                arcs.append(rec.over)
        lines.append('X[' + ','.join(str(a + 1) for a in arcs) + ']')
    lines.append('components: ' + ' '.join(str(n) for n in ld.arc_component))
    lines.append('signs: ' + ' '.join(str(rec.sign) for rec in ld.crossings))
    return '\n'.join(lines) + '\n'


_X = re.compile(r'^X\[(\d+),(\d+),(\d+),(\d+)\]$')


def parse_pd(text):
    """ LinkDiagram carrying only what the Fox and Q-matrix methods read """
    quads, components, signs = [], None, None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = ''.join(raw.split())
        if not line:
            continue
        match = _X.match(line)
        if match:
            quads.append(tuple(int(g) - 1 for g in match.groups()))
        elif line.startswith('components:'):
            components = [int(v) for v in raw.split(':', 1)[1].split()]
        elif line.startswith('signs:'):
            signs = [int(v) for v in raw.split(':', 1)[1].split()]
        else:
            raise PDFormatError(f'line {number}: cannot read {raw!r}')
    if components is None or signs is None:
        raise PDFormatError('missing components: or signs: trailer')
    if len(signs) != len(quads):
        raise PDFormatError(f'{len(quads)} crossings but {len(signs)} signs')
    records = []
    for i, ((a, b, c, _), sign) in enumerate(zip(quads, signs)):
        if sign not in (1, -1):
            raise PDFormatError(f'crossing {i + 1}: sign must be +-1')
        records.append(CrossingRecord(i, over=b, incoming=a, outgoing=c, sign=sign))
    for rec in records:
        if max(rec.over, rec.incoming, rec.outgoing) >= len(components):
            raise PDFormatError(f'crossing {rec.index + 1} names an arc without a component')
    return LinkDiagram(records, components, len(set(components)))


@dataclass(frozen=True)
class MontesinosClass:
    kind: str
    n0: int
    n1: int
    components: int


def montesinos_class(fractions):
    """ knot-odd, knot-even, link-2comp or link-ncomp from the summand types """
    if len(fractions) < 3:
        raise ValueError(f'a Montesinos link needs at least 3 summands, got {len(fractions)}')
    types = [classify_rational(p, q) for p, q in fractions]
    n0, n1 = types.count(3), types.count(1)
    if n0 == 0:
        if n1 % 2:
            return MontesinosClass('knot-odd', n0, n1, 1)
        return MontesinosClass('link-2comp', n0, n1, 2)
    if n0 == 1:
        return MontesinosClass('knot-even', n0, n1, 1)
    return MontesinosClass('link-ncomp', n0, n1, n0)
