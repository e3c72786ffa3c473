"""
Named Ext classes and the checks that compare computed Ext with them.

Fixtures are pipe-separated text files under koc2/fixtures, one record
per line with '#' comments. A Registry resolves names against one cobar
complex: a name is either listed in classes.txt or is a coefficient
monomial such as 't^4' or 'g/(r t^2)'. Expressions combine names with
' * ' and ' + '; '(name)^n' repeats a factor and '0' is the zero class.

Every verify_* function returns a Report whose rows are pass, fail or
skip; rows that need cells outside the computed box are skipped.
"""

import ast
import itertools
import json
import logging
import os
import re
from typing import NamedTuple

import numpy as np

from koc2 import basering
from koc2 import gf2
from koc2.basering import BaseKind, NEGATIVE, POSITIVE
from koc2.bockstein import BocksteinSpectralSequence, Slot
from koc2.cobar import (BracketUndefined, Box, CellTooLarge, CobarWord, NotACocycle,
                        OutOfBox, TriDegree, WindowTooSmall, cone_for)
from koc2.hopf import HopfAlgebra


logger = logging.getLogger(__name__)

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'fixtures')

# Largest number of classes searched by fingerprint.
FINGERPRINT_DIM = 10

PASS = 'pass'
FAIL = 'fail'
SKIP = 'skip'


class FixtureError(Exception):
    """Raised if a fixture file is missing or a record is malformed."""
    pass


class UnknownName(LookupError):
    """Raised if a name is neither a registered class nor a coefficient."""
    pass


class AbsentClass(LookupError):
    """Raised if no computed class matches a name."""
    pass


class AmbiguousClass(LookupError):
    """Raised if more than one computed class matches a name."""
    pass


class Record(NamedTuple):
    """One fixture line: its location and its stripped fields."""
    source: str
    line: int
    fields: tuple

    @property
    def label(self):
        return '{0}:{1}'.format(self.source, self.line)


def read_table(filename, columns, directory=None):
    """Records of a fixture file, each with exactly the given column count."""
    path = os.path.join(directory or FIXTURE_DIR, filename)
    try:
        with open(path) as f:
            lines = f.readlines()
    except (IOError, OSError) as e:
        raise FixtureError('Cannot read fixture {0}: {1}'.format(path, e))
    records = []
    for number, line in enumerate(lines, 1):
        text = line.split('#', 1)[0].strip()
        if not text:
            continue
        fields = tuple(field.strip() for field in text.split('|'))
        if len(fields) != columns:
            raise FixtureError('{0}:{1}: expected {2} fields, found {3}.'.format(
                filename, number, columns, len(fields)))
        records.append(Record(filename, number, fields))
    return records


def parse_degree(text):
    """A 's,f,w' tridegree."""
    try:
        values = [int(v) for v in text.split(',')]
    except ValueError:
        raise FixtureError('Not a tridegree: {0!r}'.format(text))
    if len(values) != 3:
        raise FixtureError('Not a tridegree: {0!r}'.format(text))
    return TriDegree(*values)


def parse_pair(text):
    """A 's,w' bidegree."""
    try:
        s, w = [int(v) for v in text.split(',')]
    except ValueError:
        raise FixtureError('Not a bidegree: {0!r}'.format(text))
    return s, w


def k_values(text, k_max):
    """Instances of a family column: '-' is a single row, 'lo..hi' a range."""
    if text == '-':
        return [None]
    if '..' in text:
        lo, hi = text.split('..')
        values = range(int(lo), int(hi) + 1)
    else:
        values = [int(text)]
    return [k for k in values if k_max is None or k <= k_max]


_ARITHMETIC = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult,
               ast.USub, ast.Name, ast.Load, ast.Constant)


def evaluate_template(expression, k):
    """Integer value of an arithmetic expression in k."""
    tree = ast.parse(expression, mode='eval')
    for node in ast.walk(tree):
        if not isinstance(node, _ARITHMETIC):
            raise FixtureError('Unsupported template {0!r}.'.format(expression))
        if isinstance(node, ast.Name) and node.id != 'k':
            raise FixtureError('Unknown variable in template {0!r}.'.format(expression))
    return int(eval(compile(tree, '<template>', 'eval'), {'__builtins__': {}}, {'k': k}))


_TEMPLATE = re.compile(r'\{([^}]*)\}')


def instantiate(text, k):
    """Substitutes every {expression} in a fixture field."""
    if k is None:
        return text
    text = _TEMPLATE.sub(lambda m: str(evaluate_template(m.group(1), k)), text)
    return re.sub(r'\^1(?!\d)', '', text)


class NamedClass(NamedTuple):
    algebra: str
    cone: str
    role: str
    name: str
    degree: TriDegree
    filtration: int
    definition: str
    fingerprint: tuple = ()


_FINGERPRINT = re.compile(r'^(.+?)\s*(!=|=)\s*0$')


def parse_fingerprint(text):
    """Terms 'm=0' or 'm!=0' as (multiplier name, product is nonzero) pairs."""
    terms = []
    for term in text.split(','):
        term = term.strip()
        if not term:
            continue
        match = _FINGERPRINT.match(term)
        if match is None:
            raise FixtureError('Not a fingerprint term: {0!r}'.format(term))
        terms.append((match.group(1), match.group(2) == '!='))
    return tuple(terms)


def load_classes(directory=None):
    classes = []
    for record in read_table('classes.txt', 8, directory):
        algebra, cone, role, name, degree, p, definition, fingerprint = record.fields
        if cone not in ('R', 'NC'):
            raise FixtureError('{0}: unknown cone {1!r}.'.format(record.label, cone))
        try:
            terms = parse_fingerprint(fingerprint)
        except FixtureError as e:
            raise FixtureError('{0}: {1}'.format(record.label, e))
        classes.append(NamedClass(algebra, cone, role, name, parse_degree(degree),
                                  int(p), definition, terms))
    return classes


class Row(NamedTuple):
    suite: str
    label: str
    status: str
    detail: str = ''

    def record(self):
        return {'suite': self.suite, 'label': self.label,
                'status': self.status, 'detail': self.detail}


class Report(object):
    """Pass/fail/skip rows gathered from any number of checks."""

    def __init__(self, rows=()):
        self.rows = list(rows)

    def add(self, suite, label, status, detail=''):
        self.rows.append(Row(suite, label, status, detail))

    def extend(self, other):
        self.rows.extend(other.rows)
        return self

    def count(self, status):
        return sum(1 for row in self.rows if row.status == status)

    @property
    def failures(self):
        return [row for row in self.rows if row.status == FAIL]

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return json.dumps({'passed': self.passed,
                           'counts': {s: self.count(s) for s in (PASS, FAIL, SKIP)},
                           'rows': [row.record() for row in self.rows]},
                          indent=1, sort_keys=True)

    def format_table(self):
        if not self.rows:
            return 'No checks were run.'
        widths = [max(len(getattr(row, field)) for row in self.rows)
                  for field in ('suite', 'label', 'status')]
        lines = []
        for row in self.rows:
            lines.append('{0:<{w0}}  {1:<{w1}}  {2:<{w2}}  {3}'.format(
                row.suite, row.label, row.status, row.detail,
                w0=widths[0], w1=widths[1], w2=widths[2]).rstrip())
        lines.append('{0} passed, {1} failed, {2} skipped'.format(
            self.count(PASS), self.count(FAIL), self.count(SKIP)))
        return '\n'.join(lines)


_POWER = re.compile(r'^\((.+)\)\^(\d+)$')

# Errors that mean a row cannot be checked with the cells at hand.
_OUT_OF_REACH = (OutOfBox, CellTooLarge, WindowTooSmall)

# Errors that mean a row was checked and did not hold.
_MISMATCH = (AbsentClass, AmbiguousClass, NotACocycle, BracketUndefined)


def _product_nonzero(matrix, coords):
    return matrix.cols > 0 and bool(matrix.combine(coords).any())


class Registry(object):
    """Resolves names to classes of one cobar complex."""

    def __init__(self, complex, classes=None, directory=None):
        self.complex = complex
        self.directory = directory
        if classes is None:
            classes = load_classes(directory)
        self.entries = {c.name: c for c in classes
                        if c.algebra == complex.algebra.value}
        self._resolved = {}

    def available(self, cone):
        """Whether names of a cone can be resolved over this complex."""
        if cone == 'NC':
            return self.complex.kind is BaseKind.C2
        return self.complex.kind is not BaseKind.C

    def resolve(self, name):
        name = ' '.join(name.split())
        cls = self._resolved.get(name)
        if cls is not None:
            return cls
        entry = self.entries.get(name)
        if entry is None:
            cls = self._coefficient(name)
        else:
            if not self.available(entry.cone):
                raise AbsentClass('{0} needs the {1} cone, unavailable over {2}.'.format(
                    name, entry.cone, self.complex.kind.value))
            if entry.definition:
                cls = self.evaluate(entry.definition, entry.degree)
            else:
                cls = self.locate(entry)
        cls.name = name
        self._resolved[name] = cls
        return cls

    def _coefficient(self, name):
        try:
            coef = basering.parse(name)
        except ValueError:
            raise UnknownName('Unknown class name {0!r}.'.format(name))
        if not basering.legal(coef, self.complex.kind):
            raise AbsentClass('{0} is not a coefficient over {1}.'.format(
                name, self.complex.kind.value))
        try:
            return self.complex.word_class(CobarWord(coef, ()))
        except NotACocycle:
            raise AbsentClass('{0} is not a cocycle.'.format(name))

    def locate(self, entry):
        """The class named by a fixture entry, chosen by cone and filtration.

        A fingerprint, when listed, then picks among the classes of that
        filtration by which products vanish.
        """
        degree = entry.degree
        self.complex.check(degree)
        cone = cone_for(entry.cone)
        upper = self.complex.cone_subspace(degree, cone, entry.filtration)
        lower = self.complex.cone_subspace(degree, cone, entry.filtration + 1)
        quotient = upper.rows - lower.rows
        if quotient <= 0:
            raise AbsentClass('No class for {0} in {1} at filtration {2}.'.format(
                entry.name, degree, entry.filtration))
        _, pivots, reduced = gf2.rref(lower)
        # Classes with a representative entirely in the stated filtration
        # come first, so h0 is preferred to h0 + r h1.
        exact = self.complex.cone_subspace(degree, cone, entry.filtration,
                                           entry.filtration)
        if entry.fingerprint:
            coords = self._by_fingerprint(entry, upper, (reduced, pivots), exact)
        elif quotient > 1:
            raise AmbiguousClass('{0} classes could be {1} in {2}.'.format(
                quotient, entry.name, degree))
        else:
            candidates = [exact.row(i) for i in range(exact.rows)]
            candidates += [upper.row(i) for i in range(upper.rows)]
            for coords in candidates:
                if gf2.reduce_vector(coords, reduced, pivots).any():
                    break
        if lower.rows:
            logger.info('%s in %s chosen modulo %d classes of higher filtration',
                        entry.name, degree, lower.rows)
        return self.complex.class_from_coords(degree, coords)

    def _by_fingerprint(self, entry, upper, lower, exact):
        if upper.rows > FINGERPRINT_DIM:
            raise AmbiguousClass('{0} classes in {1} are too many to fingerprint.'.format(
                upper.rows, entry.degree))
        reduced, pivots = lower
        products = [(self.complex.multiplication_matrix(entry.degree, self.resolve(name)),
                     nonzero) for name, nonzero in entry.fingerprint]
        _, exact_pivots, exact_reduced = gf2.rref(exact)
        matches = {}
        for bits in itertools.product((0, 1), repeat=upper.rows):
            coords = upper.combine(np.array(bits, dtype=np.uint8))
            residue = gf2.reduce_vector(coords, reduced, pivots)
            if not residue.any():
                continue
            if all(_product_nonzero(matrix, coords) == nonzero
                   for matrix, nonzero in products):
                matches.setdefault(residue.tobytes(), []).append(coords)
        if not matches:
            raise AbsentClass('No class in {0} matches the fingerprint of {1}.'.format(
                entry.degree, entry.name))
        if len(matches) > 1:
            raise AmbiguousClass('{0} classes in {1} match the fingerprint of {2}.'.format(
                len(matches), entry.degree, entry.name))
        coset = matches.popitem()[1]
        # Prefer a representative in the exact filtration, then the sparsest.
        return min(coset, key=lambda v: (
            bool(gf2.reduce_vector(v, exact_reduced, exact_pivots).any()),
            int(v.sum()), tuple(v.tolist())))

    def _monomial(self, term):
        factors = []
        for factor in term.split(' * '):
            factor = factor.strip()
            match = _POWER.match(factor)
            if match:
                factors.extend([match.group(1)] * int(match.group(2)))
            else:
                factors.append(factor)
        # Right to left keeps partial products between the factors and the target.
        value = self.resolve(factors[-1])
        for name in reversed(factors[:-1]):
            value = self.complex.product(self.resolve(name), value)
        return value

    def evaluate(self, expression, degree):
        """The class of a sum of products of names in a given tridegree."""
        degree = TriDegree(*degree)
        total = self.complex.zero(degree)
        if expression.strip() == '0':
            return total
        for term in expression.split(' + '):
            value = self._monomial(term)
            if value.degree != degree:
                raise FixtureError('{0!r} lies in {1}, not {2}.'.format(
                    term.strip(), value.degree, degree))
            total = self.complex.add(total, value)
        return total

    def filtration(self, name):
        return self.complex.class_filtration(self.resolve(name))


def guarded(report, suite, label, check):
    """Runs one check, turning expected failures into report rows."""
    try:
        ok, detail = check()
    except _OUT_OF_REACH as e:
        report.add(suite, label, SKIP, str(e))
    except (_MISMATCH + (FixtureError, UnknownName)) as e:
        report.add(suite, label, FAIL, str(e))
    else:
        report.add(suite, label, PASS if ok else FAIL, detail)


def verify_generators(registry):
    """Every named class resolves, is nonzero and has its stated filtration."""
    report = Report()
    for entry in sorted(registry.entries.values(), key=lambda e: (e.cone, e.degree)):
        label = '{0} {1}'.format(entry.name, entry.degree)
        if not registry.available(entry.cone):
            report.add('generators', label, SKIP, 'cone unavailable')
            continue

        def check(entry=entry):
            cls = registry.resolve(entry.name)
            if cls.is_zero():
                return False, 'zero class'
            p = registry.complex.class_filtration(cls)
            if p != entry.filtration:
                return False, 'filtration {0}, expected {1}'.format(p, entry.filtration)
            return True, ''

        guarded(report, 'generators', label, check)
    return report


def verify_relations(registry, directory=None):
    """Each relation polynomial evaluates to zero."""
    report = Report()
    if registry.complex.algebra is not HopfAlgebra.A1 or not registry.available('R'):
        return report
    for record in read_table('relations.txt', 3, directory):
        family, degree, expression = record.fields
        label = '{0} {1}'.format(record.label, expression)

        def check(degree=parse_degree(degree), expression=expression):
            value = registry.evaluate(expression, degree)
            return value.is_zero(), '' if value.is_zero() else 'nonzero'

        guarded(report, 'relations', label, check)
    return report


def verify_quotient(source, target, directory=None):
    """Images under the quotient from A(1) to E(1) match the listed classes."""
    report = Report()
    for record in read_table('quotient.txt', 4, directory):
        cone, degree, name, image = record.fields
        label = '{0} {1}'.format(record.label, name)
        if not source.available(cone):
            report.add('quotient', label, SKIP, 'cone unavailable')
            continue

        def check(degree=parse_degree(degree), name=name, image=image):
            mapped = source.complex.pushforward(source.resolve(name), target.complex)
            expected = target.evaluate(image, degree)
            if mapped == expected:
                return True, ''
            return False, 'image differs from {0}'.format(image)

        guarded(report, 'quotient', label, check)
    return report


def verify_quotient_products(source, target, names):
    """The quotient map is multiplicative on pairs of named classes."""
    report = Report()
    for i, x in enumerate(names):
        for y in names[i:]:
            label = '{0} * {1}'.format(x, y)

            def check(x=x, y=y):
                cx, cy = source.resolve(x), source.resolve(y)
                left = source.complex.pushforward(source.complex.product(cx, cy),
                                                  target.complex)
                right = target.complex.product(
                    source.complex.pushforward(cx, target.complex),
                    source.complex.pushforward(cy, target.complex))
                return left == right, ''

            guarded(report, 'quotient-products', label, check)
    return report


def verify_massey(registry, directory=None):
    """Massey products contain the listed classes with the listed indeterminacy."""
    report = Report()
    algebra = registry.complex.algebra.value
    for record in read_table('massey.txt', 6, directory):
        row_algebra, cone, degree, bracket, contains, indeterminacy = record.fields
        if row_algebra != algebra:
            continue
        label = '{0} <{1}>'.format(record.label, bracket.replace(' ; ', ', '))
        if not registry.available(cone):
            report.add('massey', label, SKIP, 'cone unavailable')
            continue

        def check(degree=parse_degree(degree), bracket=bracket, contains=contains,
                  indeterminacy=int(indeterminacy)):
            x, y, z = [registry.evaluate(part, _expression_degree(registry, part))
                       for part in bracket.split(' ; ')]
            product = registry.complex.massey3(x, y, z)
            if product.degree != degree:
                return False, 'bracket lies in {0}'.format(product.degree)
            expected = registry.evaluate(contains, degree)
            if product.indeterminacy_dim != indeterminacy:
                return False, 'indeterminacy of dimension {0}'.format(
                    product.indeterminacy_dim)
            if not product.contains(expected):
                return False, '{0} is not in the coset'.format(contains)
            return True, ''

        guarded(report, 'massey', label, check)
    return report


def _expression_degree(registry, expression):
    """Tridegree of the first term of an expression."""
    term = expression.split(' + ')[0]
    degree = TriDegree(0, 0, 0)
    for factor in term.split(' * '):
        factor = factor.strip()
        match = _POWER.match(factor)
        names = [match.group(1)] * int(match.group(2)) if match else [factor]
        for name in names:
            degree = degree.combine(registry.resolve(name).degree)
    return degree


def verify_hidden(registry, k_max=2, directory=None):
    """Products that jump Bockstein filtration hold in Ext."""
    report = Report()
    algebra = registry.complex.algebra.value
    for record in read_table('hidden.txt', 5, directory):
        row_algebra, k, degree, product, value = record.fields
        if row_algebra != algebra or int(k) > k_max:
            continue
        label = '{0} {1}'.format(record.label, product)
        if not registry.available('NC'):
            report.add('hidden', label, SKIP, 'cone unavailable')
            continue

        def check(degree=parse_degree(degree), product=product, value=value):
            left = registry.evaluate(product, degree)
            right = registry.evaluate(value, degree)
            return left == right, '' if left == right else 'products differ'

        guarded(report, 'hidden', label, check)
    return report


class BocksteinRow(NamedTuple):
    label: str
    cone: str
    source_name: str
    source: Slot
    r: int
    target_name: str
    target: Slot


def load_bockstein_rows(algebra, k_max=2, directory=None):
    rows = []
    for record in read_table('bockstein.txt', 10, directory):
        fields = record.fields
        if fields[0] != algebra:
            continue
        for k in k_values(fields[2], k_max):
            values = [instantiate(f, k) for f in fields]
            _, cone, _, sname, sdeg, sp, r, tname, tdeg, tp = values
            suffix = '' if k is None else ' k={0}'.format(k)
            rows.append(BocksteinRow(record.label + suffix, cone, sname,
                                     Slot(*parse_degree(sdeg), p=int(sp)), int(r), tname,
                                     Slot(*parse_degree(tdeg), p=int(tp))))
    return rows


def verify_bockstein(registry, k_max=2, directory=None, bss=None):
    """Listed differentials occur, and named generators support none."""
    report = Report()
    complex = registry.complex
    bss = bss or BocksteinSpectralSequence(complex)
    for row in load_bockstein_rows(complex.algebra.value, k_max, directory):
        label = '{0} d{1}({2})'.format(row.label, row.r, row.source_name)
        if not registry.available(row.cone):
            report.add('bockstein', label, SKIP, 'cone unavailable')
            continue
        if not (complex.box.contains(row.source.degree)
                and complex.limits.contains(row.target.degree)):
            report.add('bockstein', label, SKIP, 'outside the box')
            continue

        def check(row=row):
            if row.target.p - row.source.p != row.r:
                raise FixtureError('Slots of {0} are {1} apart, not {2}.'.format(
                    row.label, row.target.p - row.source.p, row.r))
            pair = bss.differential_at(row.source, row.target)
            if pair is None:
                return False, 'no d{0} hitting {1}'.format(row.r, row.target_name)
            return True, ''

        guarded(report, 'bockstein', label, check)
    for entry in registry.entries.values():
        if entry.role != 'gen' or not registry.available(entry.cone):
            continue
        if not complex.box.contains(entry.degree):
            continue
        slot = Slot(*entry.degree, p=entry.filtration)
        column = bss.column(slot.s + slot.f, slot.w)
        survives = any(s == slot for s, _ in column.essentials)
        report.add('bockstein', '{0} survives'.format(entry.name),
                   PASS if survives else FAIL,
                   '' if survives else 'no permanent cycle in {0}'.format(slot))
    return report


def verify_e_infinity(bss):
    """E-infinity adds up to Ext, and E1 matches the associated graded complex."""
    report = Report()
    complex = bss.complex
    e_infinity = bss.e_infinity()
    e1 = bss.e1_page()
    bad_ext, bad_e1 = [], []
    for degree in bss.box.degrees():
        if e_infinity.dim(degree) != complex.ext_cell(degree).dim:
            bad_ext.append(degree)
        graded = bss.associated_graded_dims(degree)
        pages = {p: e1.dim(degree, p) for p in graded}
        if pages != graded or e1.dim(degree) != sum(graded.values()):
            bad_e1.append(degree)
    for name, bad in (('E-infinity vs Ext', bad_ext), ('E1 vs graded', bad_e1)):
        detail = ', '.join(str(d) for d in bad[:8])
        report.add('bockstein', '{0} {1}'.format(complex.algebra.value, name),
                   FAIL if bad else PASS, detail)
    return report


def expected_tower(degree):
    """Whether a positive-cone cell holds some r^i t^4k h1^j."""
    s, f, w = degree
    return f >= 0 and s <= f and (s - w) >= 0 and (s - w) % 4 == 0


def expected_divisible(degree):
    """Whether a negative-cone cell holds some g/(r^i t^4k) h1^j with k >= 1."""
    s, f, w = degree
    return f >= 0 and TriDegree(s, f, w) in divisible_family_degrees(
        Box(s, s, f, w, w, f_min=f))


def divisible_family_degrees(box):
    """Degrees inside a box of the generators g/(r^i t^4k) and their h1-multiples."""
    h1 = TriDegree(1, 1, 1)
    degrees = set()
    for j in range(box.f_min, box.f_max + 1):
        for i in range(max(0, box.s_min - j), box.s_max - j + 1):
            k = 1
            while True:
                s, w = basering.degree(basering.neg(rho=i, tau=4 * k))
                degree = TriDegree(s + j * h1.s, j * h1.f, w + j * h1.w)
                if degree.w > box.w_max:
                    break
                if box.contains(degree):
                    degrees.add(degree)
                k += 1
    return degrees


def verify_rho_towers(bss, length=16):
    """Long rho-towers and deep rho-divisibility occur exactly where predicted."""
    report = Report()
    towers = bss.rho_tower_analysis(length, cone=POSITIVE)
    wrong = [d for d, rank in sorted(towers.tower.items())
             if bool(rank) != expected_tower(d)]
    report.add('towers', 'rho^{0} towers'.format(length), FAIL if wrong else PASS,
               ', '.join(str(d) for d in wrong[:8]))
    if bss.complex.kind is BaseKind.C2:
        divisible = bss.rho_tower_analysis(length, cone=NEGATIVE)
        expected = divisible_family_degrees(bss.box)
        wrong = [d for d, rank in sorted(divisible.divisible.items())
                 if bool(rank) != (d in expected)]
        report.add('towers', 'rho^{0} divisibility'.format(length),
                   FAIL if wrong else PASS, ', '.join(str(d) for d in wrong[:8]))
        towers.unreached |= divisible.unreached
    if towers.unreached:
        report.add('towers', 'cells whose rho-chains leave the box', SKIP,
                   '{0} cells'.format(len(towers.unreached)))
    return report


def verify_presentation(complex, presentation):
    """Ext dimensions agree with a presentation in every tridegree of the box."""
    report = Report()
    wrong = []
    for degree in complex.box.degrees():
        computed = complex.ext_cell(degree).dim
        expected = presentation.dimension(degree)
        if computed != expected:
            wrong.append('{0}: {1} vs {2}'.format(degree, computed, expected))
    report.add('presentation', presentation.title, FAIL if wrong else PASS,
               '; '.join(wrong[:8]))
    return report
