"""
Unittests for chart construction and rendering.
"""

import unittest
import xml.etree.ElementTree as ElementTree

from koc2 import charts
from koc2 import registry
from koc2.basering import BaseKind
from koc2.charts import Arrow, ChartSpec, Dot, Edge, Selector
from koc2.cobar import TriDegree
from koc2.hopf import HopfAlgebra
from tests import fixture


SVG = '{http://www.w3.org/2000/svg}'


def sample_chart():
    dots = [Dot(0, 0, 0, 0, 'filled', '1'), Dot(1, 1, 1, 0, 'filled', 'h1'),
            Dot(1, 1, 1, 1, 'open')]
    edges = [Edge((0, 0, 0, 0), (1, 1, 1, 0), 'h1', False),
             Edge((1, 1, 1, 1), (0, 0, 0, 0), 'hidden-rho', True)]
    arrows = [Arrow((1, 1, 1, 0), 'diagonal', 'h1')]
    return ChartSpec('sample', dots, edges, arrows)


class Selectors(unittest.TestCase):
    """Tests for chart selectors."""

    def test_exactly_one(self):
        """Ensure a selector names exactly one of a stem and a residue."""
        with self.assertRaises(charts.UnknownSelector):
            Selector().validate()
        with self.assertRaises(charts.UnknownSelector):
            Selector(0, 1).validate()

    def test_residue_range(self):
        """Verify residues are taken mod 4."""
        with self.assertRaises(charts.UnknownSelector):
            Selector(mw_mod=4).validate()

    def test_accepts(self):
        """Confirm selection by stem and by residue."""
        self.assertTrue(Selector(mw=0).accepts(TriDegree(1, 1, 1)))
        self.assertFalse(Selector(mw=0).accepts(TriDegree(1, 1, 0)))
        self.assertTrue(Selector(mw_mod=1).accepts(TriDegree(6, 2, 1)))
        self.assertEqual(Selector(mw_mod=1).key(), 'mw%4=1')


class Spec(unittest.TestCase):
    """Tests for ChartSpec."""

    def test_json_round_trip(self):
        """Confirm a chart survives JSON serialisation."""
        chart = sample_chart()
        self.assertEqual(ChartSpec.from_json(chart.to_json()), chart)

    def test_sorted(self):
        """Verify contents are kept in sorted order."""
        chart = sample_chart()
        self.assertEqual(chart.dots, sorted(chart.dots))
        self.assertEqual(len(chart.dots_at(1, 1, 1)), 2)

    def test_edge_multiset(self):
        """Test edges are summarised by type and cells."""
        self.assertEqual(sample_chart().edge_multiset(), [
            ('h1', (0, 0, 0), (1, 1, 1)),
            ('hidden-rho', (1, 1, 1), (0, 0, 0)),
        ])

    def test_unknown_edge_type(self):
        """Ensure unknown edge types are rejected."""
        with self.assertRaises(ValueError):
            ChartSpec('x', [Dot(0, 0, 0, 0, 'filled')],
                      [Edge((0, 0, 0, 0), (0, 0, 0, 0), 'h2', False)])

    def test_dangling_edge(self):
        """Ensure edges must join dots of the chart."""
        with self.assertRaises(ValueError):
            ChartSpec('x', [Dot(0, 0, 0, 0, 'filled')],
                      [Edge((0, 0, 0, 0), (0, 1, 0, 0), 'h0', False)])


class Rendering(unittest.TestCase):
    """Tests for SVG output."""

    def test_deterministic(self):
        """Confirm rendering twice gives identical text."""
        self.assertEqual(charts.render_svg(sample_chart()),
                         charts.render_svg(sample_chart()))

    def test_dot_count(self):
        """Verify one circle is drawn per dot."""
        chart = sample_chart()
        root = ElementTree.fromstring(charts.render_svg(chart))
        self.assertEqual(len(root.findall('.//{0}circle'.format(SVG))), len(chart.dots))

    def test_dashed(self):
        """Test dashed edges carry a dash pattern."""
        root = ElementTree.fromstring(charts.render_svg(sample_chart()))
        edges = root.find("{0}g[@class='edges']".format(SVG))
        dashed = [e for e in edges if 'stroke-dasharray' in e.attrib]
        self.assertEqual(len(dashed), 1)

    def test_empty(self):
        """Ensure an empty chart still renders."""
        root = ElementTree.fromstring(charts.render_svg(ChartSpec('empty')))
        self.assertEqual(root.findall('.//{0}circle'.format(SVG)), [])


class Build(unittest.TestCase):
    """Charts of complex-motivic A(1) on a small box."""

    def setUp(self):
        self.complex = fixture.create_complex(BaseKind.C, HopfAlgebra.A1)
        self.chart = charts.build_chart(self.complex, Selector(mw=0))

    def test_dots(self):
        """Confirm the unit, h0 and h1 appear as filled dots."""
        for degree in ((0, 0, 0), (0, 1, 0), (1, 1, 1)):
            dots = self.chart.dots_at(*degree)
            self.assertEqual(len(dots), 1, degree)
            self.assertEqual(dots[0].style, 'filled')

    def test_edges(self):
        """Verify h0 and h1 multiplication edges from the unit."""
        edges = self.chart.edge_multiset()
        self.assertIn(('h0', (0, 0, 0), (0, 1, 0)), edges)
        self.assertIn(('h1', (0, 0, 0), (1, 1, 1)), edges)
        self.assertNotIn(('h1', (0, 1, 0), (1, 2, 1)), edges)
        self.assertFalse(any(e.dashed for e in self.chart.edges))

    def test_one_edge_per_product(self):
        """Ensure every nonzero product appears as exactly one edge."""
        edges = self.chart.edge_multiset()
        self.assertEqual(len(edges), len(set(edges)))

    def test_arrows(self):
        """Test the h0 tower leaves the box through an arrow."""
        self.assertIn(Arrow((0, 3, 0, 0), 'up', 'h0'), self.chart.arrows)

    def test_repeatable(self):
        """Confirm building twice gives the same JSON."""
        again = charts.build_chart(self.complex, Selector(mw=0))
        self.assertEqual(again.to_json(), self.chart.to_json())

    def test_empty_selection(self):
        """Verify a stem with no classes gives an empty chart."""
        chart = charts.build_chart(self.complex, Selector(mw=-3))
        self.assertEqual(chart.dots, [])
        self.assertEqual(chart.edges, [])


class Equivariant(unittest.TestCase):
    """Negative-cone dots are drawn open."""

    def test_open_dot(self):
        """Confirm g/t is an open dot in Milnor-Witt stem -2."""
        complex = fixture.create_complex(BaseKind.C2, HopfAlgebra.A1)
        chart = charts.build_chart(complex, Selector(mw=-2))
        dots = chart.dots_at(0, 0, 2)
        self.assertEqual([d.style for d in dots], ['open'])


class Verify(unittest.TestCase):
    """Tests for checking charts against chart.txt."""

    def setUp(self):
        self.registry = fixture.create_registry(BaseKind.C2, HopfAlgebra.A1)

    def verify(self, chart, text, mw=0):
        with fixture.FixtureDirectory() as d:
            d.write('chart.txt', text)
            return charts.verify_chart(chart, mw, self.registry, d.path)

    def test_rows(self):
        """Confirm listed dots and edges are looked up in the chart."""
        report = self.verify(sample_chart(), '0 | dot | - | 0,0,0 | -\n'
                                             '0 | edge | h1 | 0,0,0 | 1,1,1\n'
                                             '0 | dot | - | 2,2,2 | -\n'
                                             '0 | dot | - | 9,9,9 | -\n'
                                             '4 | dot | - | 3,3,-1 | -\n')
        self.assertEqual([row.status for row in report.rows],
                         [registry.PASS, registry.PASS, registry.FAIL, registry.SKIP])
        self.assertIn('chart.txt:3', report.failures[0].label)

    def test_unknown_row(self):
        """Ensure an unknown row kind is a fixture error."""
        with self.assertRaises(registry.FixtureError):
            self.verify(sample_chart(), '0 | arrow | - | 0,0,0 | -\n')

    def test_hidden_cells(self):
        """Verify a hidden row must join the cells of its named classes."""
        dots = [Dot(4, 2, 4, 0, 'open'), Dot(3, 3, 3, 0, 'filled')]
        edge = Edge((4, 2, 4, 0), (3, 3, 3, 0), 'hidden-rho', True)
        text = ('0 | hidden | hidden-rho | Q h1^3 | h1^3\n'
                '0 | hidden | hidden-rho | Q h1^3 | t h1^2\n'
                '0 | hidden | hidden-h1  | Q h1^3 | h1^3\n')
        report = self.verify(ChartSpec('x', dots, [edge]), text)
        self.assertEqual([row.status for row in report.rows],
                         [registry.PASS, registry.FAIL, registry.FAIL])
        report = self.verify(ChartSpec('x', dots), text)
        self.assertEqual(report.rows[0].status, registry.FAIL)
        self.assertIn('no hidden-rho edge', report.rows[0].detail)

    def test_region(self):
        """Test a region holds exactly the listed dots and joined cells."""
        text = ('0 | region | - | 0:1 | 0:1\n'
                '0 | dot | - | 0,0,0 | -\n'
                '0 | dot | - | 0,1,0 | -\n'
                '0 | dot | - | 1,1,1 | -\n'
                '0 | edge | h0 | 0,0,0 | 0,1,0\n'
                '0 | edge | h1 | 0,0,0 | 1,1,1\n')
        dots = [Dot(0, 0, 0, 0, 'filled'), Dot(0, 1, 0, 0, 'filled'),
                Dot(1, 1, 1, 0, 'filled')]
        edges = [Edge((0, 0, 0, 0), (0, 1, 0, 0), 'h0', False),
                 Edge((0, 0, 0, 0), (1, 1, 1, 0), 'h1', False)]

        def regions(chart):
            report = self.verify(chart, text)
            return [row.status for row in report.rows if 'region' in row.label]

        self.assertEqual(regions(ChartSpec('x', dots, edges)),
                         [registry.PASS, registry.PASS])
        extra = dots + [Dot(0, 1, 0, 1, 'filled')]
        self.assertEqual(regions(ChartSpec('x', extra, edges)),
                         [registry.FAIL, registry.PASS])
        self.assertEqual(regions(ChartSpec('x', dots, edges[:1])),
                         [registry.PASS, registry.FAIL])

    def test_packaged_regions(self):
        """Confirm the computed stem 0 and stem 4 charts match the listed regions."""
        for mw in (0, 4):
            chart = charts.build_chart(self.registry.complex, Selector(mw=mw),
                                       self.registry)
            report = charts.verify_chart(chart, mw, self.registry)
            rows = [row for row in report.rows if 'region' in row.label]
            self.assertEqual([row.status for row in rows], [registry.PASS] * 2,
                             [row.detail for row in rows])
