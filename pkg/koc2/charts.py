"""
Adams charts of computed Ext.

A chart places one dot per basis class at (stem, filtration) and joins
dots by the products with rho (horizontal), h0 (vertical) and h1
(diagonal). Products that raise the Bockstein filtration are drawn
dashed, as are extensions supplied from fixtures. Charts serialise to
JSON, which doubles as the comparison format, and render to SVG.
"""

import collections
import json
import logging
import re
import xml.etree.ElementTree as ElementTree
from typing import NamedTuple

from koc2.basering import BaseKind, ONE, POSITIVE, RHO
from koc2.cobar import CobarWord, OutOfBox
from koc2 import gf2
from koc2.hopf import HopfAlgebra, TAU0, XI1
from koc2 import registry as fixtures


logger = logging.getLogger(__name__)

EDGE_TYPES = ('rho', 'h0', 'h1', 'hidden-rho', 'hidden-h0', 'hidden-h1', 'tau4-hidden')

# Multipliers drawn from computed products.
MULTIPLIERS = ('rho', 'h0', 'h1')

# Degree of the product a hidden edge extends.
HIDDEN_SHIFTS = {
    'hidden-rho': (-1, 0, -1),
    'hidden-h0': (0, 1, 0),
    'hidden-h1': (1, 1, 1),
    'tau4-hidden': (0, 0, -4),
}

_SPAN = re.compile(r'^\s*(-?\d+)\s*:\s*(-?\d+)\s*$')

# Stroke colours by the underlying multiplication.
COLOURS = {
    'rho': '#c0392b',
    'h0': '#000000',
    'h1': '#1f4e9c',
    'tau4': '#6c6c6c',
}

SCALE = 40
DOT_RADIUS = 3
OFFSET = 0.1


class UnknownSelector(ValueError):
    """Raised if a chart selector names no Milnor-Witt stem or residue."""
    pass


class Selector(NamedTuple):
    """Chooses cells by Milnor-Witt stem or by its residue mod 4."""
    mw: int = None
    mw_mod: int = None

    def validate(self):
        if (self.mw is None) == (self.mw_mod is None):
            raise UnknownSelector('Give exactly one of a stem and a residue.')
        if self.mw_mod is not None and not 0 <= self.mw_mod < 4:
            raise UnknownSelector('Residues are taken mod 4.')
        return self

    def accepts(self, degree):
        if self.mw is not None:
            return degree.mw == self.mw
        return degree.mw % 4 == self.mw_mod

    def key(self):
        if self.mw is not None:
            return 'mw={0}'.format(self.mw)
        return 'mw%4={0}'.format(self.mw_mod)


class Dot(NamedTuple):
    s: int
    f: int
    w: int
    index: int
    style: str
    name: str = None

    @property
    def key(self):
        return (self.s, self.f, self.w, self.index)

    def record(self):
        out = {'s': self.s, 'f': self.f, 'w': self.w, 'index': self.index,
               'style': self.style}
        if self.name:
            out['name'] = self.name
        return out


class Edge(NamedTuple):
    source: tuple
    target: tuple
    type: str
    dashed: bool

    def record(self):
        return {'from': list(self.source), 'to': list(self.target),
                'type': self.type, 'dashed': self.dashed}


class Arrow(NamedTuple):
    at: tuple
    direction: str
    type: str

    def record(self):
        return {'at': list(self.at), 'direction': self.direction, 'type': self.type}


class ChartSpec(object):
    """Dots, edges and arrows of one chart."""

    def __init__(self, title, dots=(), edges=(), arrows=()):
        self.title = title
        self.dots = sorted(dots)
        self.edges = sorted(edges)
        self.arrows = sorted(arrows)
        keys = set(d.key for d in self.dots)
        for edge in self.edges:
            if edge.type not in EDGE_TYPES:
                raise ValueError('Unknown edge type {0!r}.'.format(edge.type))
            if edge.source not in keys or edge.target not in keys:
                raise ValueError('Edge {0} -> {1} leaves the dots.'.format(
                    edge.source, edge.target))

    def dots_at(self, s, f, w):
        return [d for d in self.dots if (d.s, d.f, d.w) == (s, f, w)]

    def edge_multiset(self):
        """(type, source cell, target cell) triples, one per edge."""
        return sorted((e.type, e.source[:3], e.target[:3]) for e in self.edges)

    def to_json(self):
        return json.dumps({'title': self.title,
                           'dots': [d.record() for d in self.dots],
                           'edges': [e.record() for e in self.edges],
                           'arrows': [a.record() for a in self.arrows]},
                          indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        dots = [Dot(d['s'], d['f'], d['w'], d['index'], d['style'], d.get('name'))
                for d in data['dots']]
        edges = [Edge(tuple(e['from']), tuple(e['to']), e['type'], e['dashed'])
                 for e in data['edges']]
        arrows = [Arrow(tuple(a['at']), a['direction'], a['type']) for a in data['arrows']]
        return cls(data['title'], dots, edges, arrows)

    def __eq__(self, other):
        if not isinstance(other, ChartSpec):
            return NotImplemented
        return (self.title, self.dots, self.edges, self.arrows) == \
            (other.title, other.dots, other.edges, other.arrows)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result


def _multipliers(complex):
    out = [('h0', complex.word_class(CobarWord(ONE, (TAU0,)), 'h0'))]
    if complex.algebra is HopfAlgebra.A1:
        out.append(('h1', complex.word_class(CobarWord(ONE, (XI1,)), 'h1')))
    if complex.kind is not BaseKind.C:
        out.append(('rho', complex.word_class(CobarWord(RHO, ()), 'r')))
    return out


def build_chart(complex, selector, registry=None, directory=None):
    """The chart of every selected cell of the complex's box.

    With a registry, names are attached to dots and the hidden extensions
    listed in chart.txt are added as dashed edges.
    """
    selector = selector.validate()
    title = 'Ext {0} {1} {2}'.format(complex.kind.value, complex.algebra.value,
                                     selector.key())
    cells = [d for d in complex.box.degrees()
             if selector.accepts(d) and complex.ext_cell(d).dim]
    selected = set(cells)
    names = _dot_names(registry, selected) if registry is not None else {}
    dots = []
    for degree in cells:
        ext = complex.ext_cell(degree)
        positive = complex.cone_subspace(degree, POSITIVE) \
            if complex.kind is BaseKind.C2 else None
        for i, cls in enumerate(ext.basis()):
            style = 'filled'
            if positive is not None and not _in_rows(cls.coords, positive):
                style = 'open'
            dots.append(Dot(degree.s, degree.f, degree.w, i, style,
                            names.get((degree, i))))
    edges = []
    arrows = []
    for kind, m in _multipliers(complex):
        for degree in cells:
            target = degree.combine(m.degree)
            if target not in selected:
                if kind != 'rho' and degree.f == complex.box.f_max:
                    arrows.extend(_arrows(complex, degree, m, kind))
                continue
            step = complex.class_filtration(m) or 0
            for i, cls in enumerate(complex.ext_cell(degree).basis()):
                product = complex.product(cls, m)
                if product.is_zero():
                    continue
                source_p = complex.class_filtration(cls)
                hidden = complex.class_filtration(product) > source_p + step
                for j in product.coords.nonzero()[0]:
                    edges.append(Edge(degree + (i,), target + (int(j),), kind, hidden))
    if registry is not None:
        edges.extend(_fixture_edges(registry, selected, directory))
    logger.info('%s: %d dots, %d edges, %d arrows', title, len(dots), len(edges),
                len(arrows))
    return ChartSpec(title, dots, edges, arrows)


def _in_rows(coords, rows):
    if rows.rows == 0:
        return False
    _, pivots, reduced = gf2.rref(rows)
    return not gf2.reduce_vector(coords, reduced, pivots).any()


def _arrows(complex, degree, m, kind):
    """Arrows on top-row dots whose products continue past the box.

    Ext above the box is out of reach, so a product counts as nonzero
    when its cochain is not a coboundary.
    """
    out = []
    try:
        target = degree.combine(m.degree)
        boundaries = complex.coboundary_rows(target.plus(1, -1, 0))
    except OutOfBox:
        return out
    _, pivots, reduced = gf2.rref(boundaries)
    for i, cls in enumerate(complex.ext_cell(degree).basis()):
        _, vector = complex.cochain_product(cls.degree, cls.vector, m.degree, m.vector)
        if gf2.reduce_vector(vector, reduced, pivots).any():
            out.append(Arrow(degree + (i,), 'up' if kind == 'h0' else 'diagonal', kind))
    return out


def _first_index(cls):
    nonzero = cls.coords.nonzero()[0]
    return int(nonzero[0]) if len(nonzero) else None


def _dot_names(registry, selected):
    names = {}
    for entry in registry.entries.values():
        if entry.degree not in selected or not registry.available(entry.cone):
            continue
        try:
            cls = registry.resolve(entry.name)
        except (fixtures.AbsentClass, fixtures.AmbiguousClass, fixtures.UnknownName,
                OutOfBox) as e:
            logger.debug('No dot name for %s: %s', entry.name, e)
            continue
        index = _first_index(cls)
        if index is not None:
            names.setdefault((entry.degree, index), entry.name)
    return names


def chart_rows(mw, directory=None):
    """Records of chart.txt for one Milnor-Witt stem, without the stem field."""
    rows = []
    for record in fixtures.read_table('chart.txt', 5, directory):
        try:
            stem = int(record.fields[0])
        except ValueError:
            raise fixtures.FixtureError('{0}: bad stem {1!r}.'.format(
                record.label, record.fields[0]))
        if stem == mw:
            rows.append(record._replace(fields=record.fields[1:]))
    return rows


def _fixture_edges(registry, selected, directory=None):
    edges = []
    stems = set(d.mw for d in selected)
    for mw in sorted(stems):
        for record in chart_rows(mw, directory):
            if record.fields[0] != 'hidden':
                continue
            _, kind, source, target = record.fields
            try:
                x, y = registry.resolve(source), registry.resolve(target)
            except (fixtures.AbsentClass, fixtures.AmbiguousClass, fixtures.UnknownName,
                    OutOfBox) as e:
                logger.debug('Skipping %s: %s', record.label, e)
                continue
            if x.degree not in selected or y.degree not in selected:
                continue
            i, j = _first_index(x), _first_index(y)
            if i is None or j is None:
                continue
            edges.append(Edge(x.degree + (i,), y.degree + (j,), kind, True))
    return edges


def verify_chart(chart, mw, registry, directory=None):
    """Checks the chart of one Milnor-Witt stem against chart.txt.

    dot and edge rows must appear in the chart, and hidden rows must join
    the cells of their two named classes. Inside a region row the chart
    holds exactly the listed dots, a cell listed n times holding n dots,
    and its cells are joined by rho, h0 and h1 edges exactly where the
    rows list one.
    """
    report = fixtures.Report()
    box = registry.complex.box
    cells = collections.Counter((d.s, d.f, d.w) for d in chart.dots)
    edges = set(chart.edge_multiset())
    records = chart_rows(mw, directory)
    for record in records:
        kind = record.fields[0]
        if kind == 'dot':
            degree = tuple(fixtures.parse_degree(record.fields[2]))
            label = '{0} dot {1}'.format(record.label, degree)
            if not box.contains(degree):
                report.add('chart', label, fixtures.SKIP, 'outside the box')
            else:
                report.add('chart', label,
                           fixtures.PASS if cells[degree] else fixtures.FAIL)
        elif kind == 'edge':
            _, edge_type, a, b = record.fields
            key = (edge_type, tuple(fixtures.parse_degree(a)),
                   tuple(fixtures.parse_degree(b)))
            label = '{0} {1} edge {2} -> {3}'.format(record.label, edge_type, a, b)
            if not (box.contains(key[1]) and box.contains(key[2])):
                report.add('chart', label, fixtures.SKIP, 'outside the box')
            else:
                report.add('chart', label, fixtures.PASS if key in edges else fixtures.FAIL)
        elif kind == 'hidden':
            _verify_hidden_edge(report, record, edges, registry)
        elif kind == 'region':
            _verify_region(report, record, records, cells, edges, box, mw)
        else:
            raise fixtures.FixtureError('{0}: unknown chart row {1!r}.'.format(
                record.label, kind))
    return report


def _verify_hidden_edge(report, record, edges, registry):
    _, edge_type, source, target = record.fields
    label = '{0} {1} {2} -> {3}'.format(record.label, edge_type, source, target)

    def check():
        shift = HIDDEN_SHIFTS.get(edge_type)
        if shift is None:
            raise fixtures.FixtureError('{0}: {1!r} is not a hidden edge type.'.format(
                record.label, edge_type))
        x, y = registry.resolve(source), registry.resolve(target)
        visible = x.degree.combine(shift)
        # A hidden extension lands above the product it extends.
        if (y.degree.s, y.degree.w) != (visible.s, visible.w) or y.degree.f <= visible.f:
            return False, '{0} does not lie above {1}'.format(y.degree, visible)
        if (edge_type, tuple(x.degree), tuple(y.degree)) not in edges:
            return False, 'no {0} edge from {1} to {2}'.format(edge_type, x.degree,
                                                              y.degree)
        return True, ''
    fixtures.guarded(report, 'chart', label, check)


def _span(record, text):
    match = _SPAN.match(text)
    if match is None:
        raise fixtures.FixtureError('{0}: expected low:high, got {1!r}.'.format(
            record.label, text))
    return int(match.group(1)), int(match.group(2))


def _verify_region(report, record, records, cells, edges, box, mw):
    s_lo, s_hi = _span(record, record.fields[2])
    f_lo, f_hi = _span(record, record.fields[3])

    def inside(cell):
        s, f, w = cell
        return (s_lo <= s <= s_hi and f_lo <= f <= f_hi and s - w == mw
                and box.contains(cell))

    label = '{0} region s {1}:{2} f {3}:{4}'.format(record.label, s_lo, s_hi, f_lo, f_hi)
    if not any(inside(d) for d in box.degrees()):
        report.add('chart', label, fixtures.SKIP, 'outside the box')
        return
    expected = collections.Counter()
    listed = set()
    for r in records:
        if r.fields[0] == 'dot':
            cell = tuple(fixtures.parse_degree(r.fields[2]))
            if inside(cell):
                expected[cell] += 1
        elif r.fields[0] == 'edge':
            key = (r.fields[1], tuple(fixtures.parse_degree(r.fields[2])),
                   tuple(fixtures.parse_degree(r.fields[3])))
            if inside(key[1]) and inside(key[2]):
                listed.add(key)
    found = collections.Counter({c: n for c, n in cells.items() if inside(c)})
    missing, extra = expected - found, found - expected
    if missing or extra:
        report.add('chart', label + ' dots', fixtures.FAIL,
                   'missing {0}, unlisted {1}'.format(sorted(missing.elements()),
                                                      sorted(extra.elements())))
    else:
        report.add('chart', label + ' dots', fixtures.PASS,
                   '{0} dots'.format(sum(found.values())))
    joined = set(e for e in edges
                 if e[0] in MULTIPLIERS and inside(e[1]) and inside(e[2]))
    if joined != listed:
        report.add('chart', label + ' edges', fixtures.FAIL,
                   'missing {0}, unlisted {1}'.format(sorted(listed - joined),
                                                      sorted(joined - listed)))
    else:
        report.add('chart', label + ' edges', fixtures.PASS,
                   '{0} joined pairs'.format(len(joined)))


def _position(chart, dot, f_max):
    """Plot coordinates, spreading coincident dots along a diagonal."""
    group = [d for d in chart.dots if (d.s, d.f) == (dot.s, dot.f)]
    k = group.index(dot)
    shift = OFFSET * (k - (len(group) - 1) / 2.0)
    x = (dot.s + shift) * SCALE
    y = (f_max - dot.f - shift) * SCALE
    return x, y


def _fmt(value):
    return '{0:.2f}'.format(value)


def render_svg(chart):
    """SVG text of a chart; equal charts give identical bytes."""
    if chart.dots:
        s_min = min(d.s for d in chart.dots)
        s_max = max(d.s for d in chart.dots)
        f_max = max(d.f for d in chart.dots)
    else:
        s_min = s_max = f_max = 0
    width = (s_max - s_min + 2) * SCALE
    height = (f_max + 2) * SCALE
    root = ElementTree.Element('svg', {
        'xmlns': 'http://www.w3.org/2000/svg',
        'version': '1.1',
        'width': str(width),
        'height': str(height),
        'viewBox': '{0} {1} {2} {3}'.format((s_min - 1) * SCALE, -SCALE, width, height),
    })
    title = ElementTree.SubElement(root, 'title')
    title.text = chart.title
    positions = {d.key: _position(chart, d, f_max) for d in chart.dots}
    axis = ElementTree.SubElement(root, 'g', {'class': 'axis', 'font-size': '10'})
    for s in range(s_min, s_max + 1):
        label = ElementTree.SubElement(axis, 'text', {
            'x': _fmt(s * SCALE), 'y': _fmt((f_max + 0.8) * SCALE),
            'text-anchor': 'middle'})
        label.text = str(s)
    lines = ElementTree.SubElement(root, 'g', {'class': 'edges'})
    for edge in chart.edges:
        (x1, y1), (x2, y2) = positions[edge.source], positions[edge.target]
        base = edge.type.split('-')[-1] if edge.type != 'tau4-hidden' else 'tau4'
        attrs = {'x1': _fmt(x1), 'y1': _fmt(y1), 'x2': _fmt(x2), 'y2': _fmt(y2),
                 'stroke': COLOURS[base], 'stroke-width': '1'}
        if edge.dashed:
            attrs['stroke-dasharray'] = '4,3'
        ElementTree.SubElement(lines, 'line', attrs)
    arrows = ElementTree.SubElement(root, 'g', {'class': 'arrows'})
    for arrow in chart.arrows:
        x, y = positions[arrow.at]
        dx = 0 if arrow.direction == 'up' else 0.4 * SCALE
        ElementTree.SubElement(arrows, 'line', {
            'x1': _fmt(x), 'y1': _fmt(y), 'x2': _fmt(x + dx), 'y2': _fmt(y - 0.4 * SCALE),
            'stroke': COLOURS[arrow.type], 'stroke-width': '1',
            'marker-end': 'url(#head)'})
    points = ElementTree.SubElement(root, 'g', {'class': 'dots'})
    for dot in chart.dots:
        x, y = positions[dot.key]
        attrs = {'cx': _fmt(x), 'cy': _fmt(y), 'r': str(DOT_RADIUS), 'stroke': '#000000',
                 'fill': '#000000' if dot.style == 'filled' else '#ffffff'}
        circle = ElementTree.SubElement(points, 'circle', attrs)
        if dot.name:
            label = ElementTree.SubElement(circle, 'title')
            label.text = dot.name
    defs = ElementTree.Element('defs')
    marker = ElementTree.SubElement(defs, 'marker', {
        'id': 'head', 'markerWidth': '6', 'markerHeight': '6', 'refX': '3', 'refY': '3',
        'orient': 'auto'})
    ElementTree.SubElement(marker, 'path', {'d': 'M0,0 L6,3 L0,6 z'})
    root.insert(1, defs)
    return ElementTree.tostring(root, encoding='unicode')
