"""
Unittests for fixture tables, name resolution and reports.
"""

import json
import unittest

from koc2 import registry
from koc2.basering import BaseKind
from koc2.bockstein import BocksteinSpectralSequence
from koc2.cobar import Box, TriDegree
from koc2.hopf import HopfAlgebra
from tests import fixture


class Tables(unittest.TestCase):
    """Tests for reading fixture files."""

    def test_packaged(self):
        """Confirm every packaged fixture parses."""
        for name, columns in (('classes.txt', 8), ('relations.txt', 3),
                              ('quotient.txt', 4), ('bockstein.txt', 10),
                              ('massey.txt', 6), ('hidden.txt', 5),
                              ('homotopy.txt', 5), ('orders.txt', 3), ('chart.txt', 5)):
            self.assertGreater(len(registry.read_table(name, columns)), 0, name)

    def test_relation_count(self):
        """Verify all 22 relations are listed."""
        self.assertEqual(len(registry.read_table('relations.txt', 3)), 22)

    def test_missing(self):
        """Ensure a missing fixture raises FixtureError."""
        with fixture.FixtureDirectory() as d:
            d.remove('orders.txt')
            with self.assertRaises(registry.FixtureError):
                registry.read_table('orders.txt', 3, d.path)

    def test_wrong_columns(self):
        """Ensure a malformed row is reported with its line number."""
        with fixture.FixtureDirectory() as d:
            d.write('orders.txt', '# j | s,w | order\n0 | 0,5\n')
            with self.assertRaises(registry.FixtureError) as cm:
                registry.read_table('orders.txt', 3, d.path)
            self.assertIn('orders.txt:2', str(cm.exception))

    def test_comments(self):
        """Test comments and blank lines are skipped and lines numbered."""
        with fixture.FixtureDirectory() as d:
            d.write('orders.txt', '# header\n\n1 | 1,6 | 4  # trailing\n')
            records = registry.read_table('orders.txt', 3, d.path)
        self.assertEqual(len(records), 1)
        self.assertEqual(records[0].fields, ('1', '1,6', '4'))
        self.assertEqual(records[0].label, 'orders.txt:3')


class Parsing(unittest.TestCase):
    """Tests for degrees and family templates."""

    def test_degree(self):
        """Confirm tridegrees parse."""
        self.assertEqual(registry.parse_degree('4,3,-2'), TriDegree(4, 3, -2))

    def test_bad_degree(self):
        """Verify malformed tridegrees raise FixtureError."""
        for text in ('4,3', 'a,b,c'):
            with self.assertRaises(registry.FixtureError):
                registry.parse_degree(text)

    def test_pair(self):
        """Confirm bidegrees parse."""
        self.assertEqual(registry.parse_pair('1,6'), (1, 6))

    def test_k_values(self):
        """Test family ranges are truncated at k_max."""
        self.assertEqual(registry.k_values('-', 2), [None])
        self.assertEqual(registry.k_values('0..3', 1), [0, 1])
        self.assertEqual(registry.k_values('2', 1), [])

    def test_template(self):
        """Confirm arithmetic templates evaluate in k."""
        self.assertEqual(registry.evaluate_template('4*k+3', 2), 11)
        self.assertEqual(registry.evaluate_template('-k', 1), -1)

    def test_template_rejects_names(self):
        """Ensure templates cannot reach anything but k."""
        with self.assertRaises(registry.FixtureError):
            registry.evaluate_template('__import__("os")', 1)
        with self.assertRaises(registry.FixtureError):
            registry.evaluate_template('j + 1', 1)

    def test_instantiate(self):
        """Verify templates are substituted and unit powers dropped."""
        self.assertEqual(registry.instantiate('g/(r t^{2*k+1})', 0), 'g/(r t)')
        self.assertEqual(registry.instantiate('g/(r t^{2*k+1})', 1), 'g/(r t^3)')
        self.assertEqual(registry.instantiate('h1^{k}', 1), 'h1')
        self.assertEqual(registry.instantiate('t^{k}', None), 't^{k}')

    def test_bockstein_rows(self):
        """Test family rows expand to one row per instance."""
        rows = registry.load_bockstein_rows('A1', k_max=1)
        labels = [row.label for row in rows]
        self.assertEqual(len(labels), len(set(labels)))
        first = rows[0]
        self.assertEqual(first.source_name, 't')
        self.assertEqual(first.target.p - first.source.p, first.r)

    def test_families_reach_two(self):
        """Confirm every family reaches k=2 and k=2 is the default cutoff."""
        for record in registry.read_table('bockstein.txt', 10):
            if record.fields[2] != '-':
                self.assertEqual(record.fields[2].split('..')[-1], '2', record.line)
        labels = [row.source_name for row in registry.load_bockstein_rows('A1')]
        self.assertIn('g/(r t^5)', labels)
        self.assertIn('Q/r^9 h1^11', labels)
        labels = [row.source_name for row in registry.load_bockstein_rows('E1')]
        self.assertIn('g/(r^3 t^10)', labels)


class Reports(unittest.TestCase):
    """Tests for Report."""

    def setUp(self):
        self.report = registry.Report()
        self.report.add('a', 'one', registry.PASS)
        self.report.add('a', 'two', registry.SKIP, 'outside')

    def test_passed(self):
        """Confirm skips do not fail a report."""
        self.assertTrue(self.report.passed)
        self.report.add('b', 'three', registry.FAIL, 'nonzero')
        self.assertFalse(self.report.passed)
        self.assertEqual([row.label for row in self.report.failures], ['three'])

    def test_json(self):
        """Verify the JSON form carries counts and rows."""
        data = json.loads(self.report.to_json())
        self.assertTrue(data['passed'])
        self.assertEqual(data['counts'], {'pass': 1, 'fail': 0, 'skip': 1})
        self.assertEqual(data['rows'][1]['detail'], 'outside')

    def test_table(self):
        """Test the plain table ends with a summary line."""
        self.assertEqual(self.report.format_table().splitlines()[-1],
                         '1 passed, 0 failed, 1 skipped')
        self.assertEqual(registry.Report().format_table(), 'No checks were run.')

    def test_guarded(self):
        """Ensure guarded turns exceptions into skip and fail rows."""
        report = registry.Report()

        def out_of_reach():
            raise registry.OutOfBox('far away')

        def mismatch():
            raise registry.AbsentClass('missing')

        registry.guarded(report, 's', 'x', out_of_reach)
        registry.guarded(report, 's', 'y', mismatch)
        registry.guarded(report, 's', 'z', lambda: (True, ''))
        self.assertEqual([row.status for row in report.rows],
                         [registry.SKIP, registry.FAIL, registry.PASS])


class Resolution(unittest.TestCase):
    """Resolving names over real-motivic A(1)."""

    def setUp(self):
        self.registry = fixture.create_registry(BaseKind.R, HopfAlgebra.A1)

    def test_entries_filtered(self):
        """Confirm only A(1) names are loaded."""
        self.assertIn('h1', self.registry.entries)
        self.assertNotIn('v1', self.registry.entries)

    def test_h1(self):
        """Test h1 resolves to a nonzero class in (1,1,1)."""
        h1 = self.registry.resolve('h1')
        self.assertEqual(h1.degree, TriDegree(1, 1, 1))
        self.assertFalse(h1.is_zero())
        self.assertEqual(h1.name, 'h1')
        self.assertIs(self.registry.resolve('h1'), h1)

    def test_coefficient(self):
        """Verify coefficient names resolve without a fixture entry."""
        rho = self.registry.resolve('r^2')
        self.assertEqual(rho.degree, TriDegree(-2, 0, -2))
        self.assertFalse(rho.is_zero())

    def test_unknown(self):
        """Ensure an unknown name raises UnknownName."""
        with self.assertRaises(registry.UnknownName):
            self.registry.resolve('not a class')

    def test_negative_cone_unavailable(self):
        """Ensure negative-cone names are refused over the reals."""
        with self.assertRaises(registry.AbsentClass):
            self.registry.resolve('g/t')

    def test_relation(self):
        """Confirm r h0 evaluates to zero."""
        self.assertTrue(self.registry.evaluate('r * h0', (-1, 1, -1)).is_zero())

    def test_zero(self):
        """Test the expression 0 is the zero class."""
        self.assertTrue(self.registry.evaluate('0', (1, 1, 1)).is_zero())

    def test_power(self):
        """Verify (name)^n repeats a factor."""
        self.assertEqual(self.registry.evaluate('(h1)^2', (2, 2, 2)),
                         self.registry.evaluate('h1 * h1', (2, 2, 2)))

    def test_wrong_degree(self):
        """Ensure an expression in the wrong tridegree is a fixture error."""
        with self.assertRaises(registry.FixtureError):
            self.registry.evaluate('h1', (1, 1, 0))

    def test_generators(self):
        """Confirm named generators inside the box are found."""
        report = registry.verify_generators(self.registry)
        rows = {row.label.split(' (')[0]: row.status for row in report.rows}
        self.assertEqual(rows['h0'], registry.PASS)
        self.assertEqual(rows['h1'], registry.PASS)
        self.assertEqual(rows['r'], registry.PASS)
        self.assertEqual(rows['g/t'], registry.SKIP)

    def test_massey(self):
        """Verify <r, h0, h1> contains t h1."""
        c = self.registry.complex
        x, y, z = [self.registry.resolve(n) for n in ('r', 'h0', 'h1')]
        product = c.massey3(x, y, z)
        self.assertEqual(product.degree, TriDegree(1, 1, 0))
        self.assertTrue(product.contains(self.registry.resolve('t h1')))


FINGERPRINTED = (
    'A1 | R | gen | r   | -1,0,-1 | 1 | |\n'
    'A1 | R | gen | h0  | 0,1,0   | 0 | |\n'
    'A1 | R | gen | h1  | 1,1,1   | 0 | |\n'
    'A1 | R | gen | two | 0,1,0   | 0 | | r != 0\n'
    'A1 | R | gen | h0 again | 0,1,0 | 0 | | r=0, h0!=0\n'
    'A1 | R | gen | none | 0,1,0  | 0 | | r!=0, h0=0\n'
)


class Fingerprints(unittest.TestCase):
    """Two named classes sharing (0,1,0) over real-motivic A(1)."""

    def setUp(self):
        self.directory = fixture.FixtureDirectory().__enter__()
        self.addCleanup(self.directory.__exit__)
        self.directory.write('classes.txt', FINGERPRINTED)
        self.registry = registry.Registry(
            fixture.create_complex(BaseKind.R, HopfAlgebra.A1),
            directory=self.directory.path)

    def test_parse(self):
        """Confirm fingerprint terms parse to names and expected vanishing."""
        self.assertEqual(registry.parse_fingerprint('r=0, t h1 != 0'),
                         (('r', False), ('t h1', True)))
        self.assertEqual(registry.parse_fingerprint(''), ())

    def test_malformed(self):
        """Ensure a malformed fingerprint is a fixture error naming its line."""
        self.directory.append('classes.txt', 'A1 | R | gen | x | 0,1,0 | 0 | | r\n')
        with self.assertRaises(registry.FixtureError) as cm:
            registry.load_classes(self.directory.path)
        self.assertIn('classes.txt:7', str(cm.exception))

    def test_unmarked(self):
        """Verify a class without a fingerprint takes the exact filtration."""
        h0 = self.registry.resolve('h0')
        self.assertTrue(self.registry.evaluate('r * h0', (-1, 1, -1)).is_zero())
        self.assertEqual(self.registry.resolve('h0 again'), h0)

    def test_chosen_by_product(self):
        """Confirm the fingerprint r != 0 picks h0 + r h1 over h0."""
        two = self.registry.resolve('two')
        self.assertEqual(two, self.registry.evaluate('h0 + r * h1', (0, 1, 0)))
        self.assertNotEqual(two, self.registry.resolve('h0'))
        self.assertFalse(self.registry.evaluate('r * two', (-1, 1, -1)).is_zero())

    def test_no_match(self):
        """Ensure a fingerprint no class satisfies raises AbsentClass."""
        with self.assertRaises(registry.AbsentClass):
            self.registry.resolve('none')


class Bockstein(unittest.TestCase):
    """Bockstein rows over real-motivic A(1)."""

    def test_d1_row(self):
        """Confirm the d1(t) row passes and far rows are skipped."""
        reg = fixture.create_registry(BaseKind.R, HopfAlgebra.A1)
        report = registry.verify_bockstein(reg, k_max=0,
                                           bss=BocksteinSpectralSequence(reg.complex))
        statuses = {row.label: row.status for row in report.rows}
        d1 = [label for label in statuses if label.endswith('d1(t)')]
        self.assertEqual(len(d1), 1)
        self.assertEqual(statuses[d1[0]], registry.PASS)
        nc = [label for label in statuses if 'g/' in label and label.startswith('bock')]
        for label in nc:
            self.assertEqual(statuses[label], registry.SKIP)


class Relations(unittest.TestCase):
    """Tests for the relations suite."""

    def test_every_row_reported(self):
        """Confirm each relation yields one row and r h0 vanishes."""
        report = registry.verify_relations(fixture.create_registry(BaseKind.R))
        self.assertEqual(len(report.rows), 22)
        self.assertEqual(report.rows[0].status, registry.PASS)

    def test_needs_rho(self):
        """Ensure relations are not checked without rho."""
        report = registry.verify_relations(fixture.create_registry(BaseKind.C))
        self.assertEqual(report.rows, [])


class Towers(unittest.TestCase):
    """Tests for the predicted tower locations."""

    def test_expected_tower(self):
        """Verify towers sit in Milnor-Witt stems divisible by 4."""
        self.assertTrue(registry.expected_tower((0, 0, 0)))
        self.assertTrue(registry.expected_tower((1, 1, 1)))
        self.assertFalse(registry.expected_tower((1, 1, 0)))
        self.assertFalse(registry.expected_tower((2, 1, 2)))

    def test_expected_divisible(self):
        """Verify deep divisibility sits on g/(r^i t^4k) and its h1-multiples."""
        self.assertTrue(registry.expected_divisible((0, 0, 5)))
        self.assertTrue(registry.expected_divisible((1, 0, 6)))
        self.assertTrue(registry.expected_divisible((1, 1, 6)))
        self.assertTrue(registry.expected_divisible((3, 1, 8)))
        self.assertTrue(registry.expected_divisible((2, 2, 7)))
        self.assertTrue(registry.expected_divisible((0, 0, 9)))
        self.assertFalse(registry.expected_divisible((0, 0, 2)))
        self.assertFalse(registry.expected_divisible((0, 0, 7)))
        self.assertFalse(registry.expected_divisible((2, 2, 6)))
        self.assertFalse(registry.expected_divisible((0, 1, 6)))

    def test_family_degrees(self):
        """Confirm the family degrees inside a small box."""
        box = Box.parse('0:1', '0:1', '5:6')
        self.assertEqual(registry.divisible_family_degrees(box),
                         {TriDegree(0, 0, 5), TriDegree(1, 0, 6), TriDegree(1, 1, 6)})

    def test_chains_leave_box(self):
        """Ensure rho-chains running out of the box are skipped, not raised."""
        box = Box.parse('0:1', '0:1', '5:6', margin=2)
        complex = fixture.create_complex(BaseKind.C2, HopfAlgebra.A1, box)
        report = registry.verify_rho_towers(BocksteinSpectralSequence(complex), length=6)
        self.assertEqual([row.status for row in report.rows],
                         [registry.PASS, registry.PASS, registry.SKIP])
