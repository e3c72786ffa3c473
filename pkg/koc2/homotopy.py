"""
Homotopy orders read off from a collapsing Adams spectral sequence.

With no Adams differentials the order of the homotopy group in stem s and
weight w is 2 to the number of Ext classes in (s, *, w), unless
multiplication by the class detecting 2 carries a tower through the top
of the box. Ring structure is not derived here; the named elements and
their relations are fixtures used for display and notation checks.
"""

import itertools
import logging
from typing import NamedTuple

import numpy as np

from koc2 import gf2
from koc2.basering import BaseKind, ONE, RHO
from koc2.cobar import CellTooLarge, CobarWord, OutOfBox, TriDegree
from koc2.hopf import HopfAlgebra, TAU0, XI1
from koc2 import registry as fixtures
from koc2.registry import FAIL, PASS, SKIP, Report


logger = logging.getLogger(__name__)

# Filtration steps multiplication by 2 must survive to count as a tower.
TOWER_DEPTH = 3

# Largest cell dimension searched exhaustively by the compatibility rule.
EXHAUSTIVE_DIM = 6

ALL_RULES = (1, 2, 3)


def phi(j):
    """Number of 0 < i <= j with i congruent to 0, 1, 2 or 4 mod 8."""
    if j < 0:
        raise ValueError('phi is defined for j >= 0.')
    return sum(1 for i in range(1, j + 1) if i % 8 in (0, 1, 2, 4))


class AdamsE2Cell(NamedTuple):
    """Ext dimensions along one (stem, weight) column, by filtration."""
    s: int
    w: int
    dims: tuple
    tower: int

    @property
    def mw(self):
        return self.s - self.w


class GroupOrder(NamedTuple):
    s: int
    w: int
    classes: int
    tower: int
    indeterminate: bool

    @property
    def mw(self):
        return self.s - self.w

    @property
    def order(self):
        """The finite order, or None for towers and indeterminate cells."""
        if self.indeterminate or self.tower:
            return None
        return 2 ** self.classes

    def describe(self):
        if self.indeterminate:
            return 'indeterminate'
        if self.tower:
            return 'tower of rank {0}'.format(self.tower)
        return str(self.order)

    def record(self):
        out = {'s': self.s, 'w': self.w}
        if self.indeterminate:
            out['indeterminate'] = True
        elif self.tower:
            out['tower'] = self.tower
        else:
            out['order'] = self.order
        return out


class Candidate(NamedTuple):
    source: TriDegree
    target: TriDegree
    r: int


class Homotopy(object):
    """Order-level homotopy computations over one cobar complex."""

    def __init__(self, complex, tower_depth=TOWER_DEPTH):
        self.complex = complex
        self.box = complex.box
        self.tower_depth = tower_depth
        self._cells = {}
        self._powers = {}
        h0 = complex.word_class(CobarWord(ONE, (TAU0,)), 'h0')
        self.rho = None
        if complex.kind is not BaseKind.C:
            self.rho = complex.word_class(CobarWord(RHO, ()), 'r')
        self._periodic = [h0]
        if complex.algebra is HopfAlgebra.A1:
            h1 = complex.word_class(CobarWord(ONE, (XI1,)), 'h1')
            self._periodic.append(h1)
        if self.rho is not None and complex.algebra is HopfAlgebra.A1:
            self.two = complex.add(h0, complex.product(self.rho, h1))
        else:
            self.two = h0

    def _check(self, s, w):
        b = self.box
        if not (b.s_min <= s <= b.s_max and b.w_min <= w <= b.w_max):
            raise OutOfBox('({0},{1}) lies outside {2!r}.'.format(s, w, b))

    def e2_cell(self, s, w):
        key = (s, w)
        cell = self._cells.get(key)
        if cell is not None:
            return cell
        self._check(s, w)
        b = self.box
        dims = tuple(self.complex.ext_cell(TriDegree(s, f, w)).dim
                     for f in range(b.f_min, b.f_max + 1))
        cell = AdamsE2Cell(s, w, dims, self._tower_rank(s, w))
        self._cells[key] = cell
        return cell

    def _tower_rank(self, s, w):
        top = self.box.f_max
        bottom = top - self.tower_depth
        if bottom < self.box.f_min:
            return 0
        here = TriDegree(s, bottom, w)
        current = gf2.BitMatrix.identity(self.complex.ext_cell(here).dim)
        for step in range(self.tower_depth):
            matrix = self.complex.multiplication_matrix(here, self.two)
            current = current @ matrix if current.rows and matrix.rows \
                else gf2.BitMatrix(current.rows, matrix.cols)
            here = here.plus(0, 1, 0)
        return gf2.rank(current)

    def group_order(self, s, w):
        cell = self.e2_cell(s, w)
        top = cell.dims[-1]
        # Classes at the top filtration that are not on towers may continue above it.
        indeterminate = top > cell.tower
        return GroupOrder(s, w, sum(cell.dims), cell.tower, indeterminate)

    def mw_stem(self, n, names=None):
        """Orders across one Milnor-Witt stem, as a JSON-ready record."""
        stems = []
        for s in range(self.box.s_min, self.box.s_max + 1):
            w = s - n
            if not self.box.w_min <= w <= self.box.w_max:
                continue
            order = self.group_order(s, w)
            if not order.classes:
                continue
            entry = order.record()
            entry['generators'] = sorted((names or {}).get((s, w), []))
            stems.append(entry)
        return {'n': n, 'stems': stems}

    def candidate_adams_differentials(self, rules=ALL_RULES):
        """Possible Adams differentials surviving the exclusion rules."""
        return self.classify_adams_differentials(rules)[0]

    def classify_adams_differentials(self, rules=ALL_RULES):
        """Split the pairs of nonzero cells an Adams d_r could join.

        Returns (survivors, undetermined). A survivor passes every rule with
        all the cells it needs in reach; an undetermined pair passes the
        tests that could be run but needs a cell beyond the box for another.

        Rule 1: a source whose classes are all rho^L-divisible cannot hit a
        target with no rho^L-divisible class. Rule 2: a source killed by
        h^n cannot hit a target on which h^n is injective, for h = h0, h1.
        Rule 3: compatibility with products by permanent cycles.
        """
        b = self.box
        survivors = []
        undetermined = []
        for source in b.degrees():
            if not self.complex.ext_cell(source).dim:
                continue
            for r in range(2, b.f_max - source.f + 1):
                target = TriDegree(source.s - 1, source.f + r, source.w)
                if not b.contains(target) or not self.complex.ext_cell(target).dim:
                    continue
                if 1 in rules and self.divisibility_excludes(source, target):
                    continue
                if 2 in rules and self.periodicity_excludes(source, target):
                    continue
                candidate = Candidate(source, target, r)
                if 3 in rules:
                    verdict = self._compatible(source, target)
                    if verdict is False:
                        continue
                    if verdict is None:
                        undetermined.append(candidate)
                        continue
                survivors.append(candidate)
        logger.info('%d candidate Adams differentials survive rules %s, %d undetermined',
                    len(survivors), ','.join(str(r) for r in rules), len(undetermined))
        return survivors, undetermined

    def power_rank(self, start, m, n):
        """Rank of multiplication by m^n out of Ext in start, or None out of reach."""
        key = (TriDegree(*start), m.degree, n)
        if key in self._powers:
            return self._powers[key]
        here = key[0]
        try:
            current = gf2.BitMatrix.identity(self.complex.ext_cell(here).dim)
            for step in range(n):
                matrix = self.complex.multiplication_matrix(here, m)
                current = current @ matrix if current.rows and matrix.rows \
                    else gf2.BitMatrix(current.rows, matrix.cols)
                here = here.combine(m.degree)
            rank = gf2.rank(current)
        except (OutOfBox, CellTooLarge):
            rank = None
        self._powers[key] = rank
        return rank

    def divisibility_excludes(self, source, target):
        """Whether rho-divisibility rules out any d(x) = y between two cells."""
        if self.rho is None:
            return False
        source_dim = self.complex.ext_cell(source).dim
        for length in range(1, self.complex.limits.s_max - source.s + 1):
            shift = (length, 0, length)
            divisible = self.power_rank(TriDegree(*source).plus(*shift), self.rho, length)
            if divisible != source_dim:
                return False
            hit = self.power_rank(TriDegree(*target).plus(*shift), self.rho, length)
            if hit is None:
                return False
            if hit == 0:
                return True
        return False

    def periodicity_excludes(self, source, target):
        """Whether h0- or h1-periodicity rules out any d(x) = y between two cells."""
        target_dim = self.complex.ext_cell(target).dim
        for h in self._periodic:
            for n in range(1, self.complex.limits.f_max - source.f + 1):
                killed = self.power_rank(source, h, n)
                if killed is None:
                    break
                if killed == 0:
                    if self.power_rank(target, h, n) == target_dim:
                        return True
                    break
        return False

    def _multipliers(self):
        out = [self.two]
        if self.rho is not None:
            out.append(self.rho)
        return out + self._periodic[::-1]

    def _compatible(self, source, target):
        """Whether some x in source and y in target could satisfy d(x) = y.

        Multiplication by a permanent cycle m commutes with d, so m x = 0
        forces m y = 0, and x divisible by m forces y divisible by m.
        Returns None when the tests that could be run allow a pair but a
        multiplier needed a cell beyond the box.
        """
        tests = []
        missing = False
        for m in self._multipliers():
            try:
                tests.append(self._test_for(m, source, target))
            except (OutOfBox, CellTooLarge):
                missing = True
        for x in _vectors(self.complex.ext_cell(source).dim):
            for y in _vectors(self.complex.ext_cell(target).dim):
                if all(test(x, y) for test in tests):
                    return None if missing else True
        return False

    def _test_for(self, m, source, target):
        complex = self.complex
        times_source = complex.multiplication_matrix(source, m)
        times_target = complex.multiplication_matrix(target, m)
        below_source = TriDegree(*source).plus(-m.degree.s, -m.degree.f, -m.degree.w)
        below_target = TriDegree(*target).plus(-m.degree.s, -m.degree.f, -m.degree.w)
        try:
            image_source = _image(complex, below_source, m)
        except (OutOfBox, CellTooLarge):
            image_source = None
        # Beyond the box this raises, leaving the pair undetermined.
        image_target = _image(complex, below_target, m)

        def test(x, y):
            kills_x = not _apply(x, times_source).any()
            kills_y = not _apply(y, times_target).any()
            if kills_x and not kills_y:
                return False
            if _in_span(x, image_source) and not _in_span(y, image_target):
                return False
            return True

        return test

    def verify_torsion_orders(self, j_max=12, directory=None):
        report = Report()
        for record in fixtures.read_table('orders.txt', 3, directory):
            j, bidegree, order = record.fields
            j, order = int(j), int(order)
            if j > j_max:
                continue
            s, w = fixtures.parse_pair(bidegree)
            label = 'j={0} ({1},{2})'.format(j, s, w)
            if order != 2 ** (phi(j) + 1):
                report.add('torsion', label, FAIL, 'listed order {0} is not 2^(phi+1)'.format(
                    order))
                continue
            try:
                found = self.group_order(s, w)
            except OutOfBox as e:
                report.add('torsion', label, SKIP, str(e))
                continue
            ok = found.order == order
            report.add('torsion', label, PASS if ok else FAIL,
                       '' if ok else 'found {0}, expected {1}'.format(found.describe(), order))
        return report

    def verify_tau4_periodicity(self):
        """Orders in Milnor-Witt stems n and n+4 agree, with two exceptions.

        From n = -4 the comparison is an inequality and from n = -5 the
        target must vanish.
        """
        b = self.box
        report = Report()
        mismatches = {}
        checked = set()
        for s in range(b.s_min, b.s_max + 1):
            for w in range(b.w_min + 4, b.w_max + 1):
                n = s - w
                source = self.group_order(s, w)
                target = self.group_order(s, w - 4)
                if source.indeterminate or target.indeterminate:
                    continue
                checked.add(n)
                if n == -5:
                    ok = target.classes == 0
                elif n == -4 and (source.tower or target.tower):
                    ok = source.tower <= target.tower
                elif n == -4:
                    ok = source.classes <= target.classes
                else:
                    ok = (source.tower, source.order) == (target.tower, target.order)
                if not ok:
                    mismatches.setdefault(n, []).append(
                        '({0},{1}) {2} vs {3}'.format(s, w, source.describe(),
                                                      target.describe()))
        for n in sorted(checked):
            bad = mismatches.get(n, [])
            report.add('periodicity', 'Pi_{0} -> Pi_{1}'.format(n, n + 4),
                       FAIL if bad else PASS, '; '.join(bad[:4]))
        return report

    def verify_adams_collapse(self):
        report = Report()
        survivors, undetermined = self.classify_adams_differentials()
        detail = ', '.join('{0}->{1}'.format(c.source, c.target) for c in survivors[:6])
        report.add('adams', 'no Adams differentials', FAIL if survivors else PASS, detail)
        if undetermined:
            report.add('adams', 'pairs at the edge of the box', SKIP, ', '.join(
                '{0}->{1}'.format(c.source, c.target) for c in undetermined[:6]))
        return report


def verify_notation(registry, directory=None):
    """Each named homotopy element is detected by a class in its bidegree."""
    report = Report()
    algebra = registry.complex.algebra.value
    for record in fixtures.read_table('homotopy.txt', 5, directory):
        row_algebra, bidegree, element, detector, relation = record.fields
        if row_algebra != algebra:
            continue
        s, w = fixtures.parse_pair(bidegree)
        label = '{0} by {1}'.format(element, detector)

        def check(s=s, w=w, detector=detector):
            cls = registry.resolve(detector)
            if (cls.degree.s, cls.degree.w) != (s, w):
                return False, 'detected in {0}'.format(cls.degree)
            return not cls.is_zero(), ''

        fixtures.guarded(report, 'notation', label, check)
    return report


def element_names(algebra, directory=None):
    """Homotopy element names keyed by (s, w)."""
    names = {}
    for record in fixtures.read_table('homotopy.txt', 5, directory):
        if record.fields[0] == algebra:
            names.setdefault(fixtures.parse_pair(record.fields[1]), []).append(
                record.fields[2])
    return names


def _vectors(dim):
    """Nonzero coordinate vectors, all of them for small dimensions."""
    if dim <= EXHAUSTIVE_DIM:
        for bits in itertools.product((0, 1), repeat=dim):
            if any(bits):
                yield np.array(bits, dtype=np.uint8)
    else:
        for i in range(dim):
            v = np.zeros(dim, dtype=np.uint8)
            v[i] = 1
            yield v


def _apply(x, matrix):
    if matrix.rows == 0:
        return np.zeros(matrix.cols, dtype=np.uint8)
    return matrix.combine(x)


def _image(complex, degree, m):
    """rref span of m times Ext in a tridegree, or None when empty."""
    if degree.f < 0:
        return None
    matrix = complex.multiplication_matrix(degree, m)
    if matrix.rows == 0:
        return None
    _, pivots, reduced = gf2.rref(matrix)
    return reduced, pivots


def _in_span(v, span):
    if span is None:
        return False
    reduced, pivots = span
    return not gf2.reduce_vector(v, reduced, pivots).any()
