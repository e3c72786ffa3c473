"""
The rho-Bockstein spectral sequence.

Filtering the cobar complex by powers of rho gives a spectral sequence
from the cohomology of the associated graded complex to Ext. Each column
of fixed total degree s+f and weight w is a finite filtered complex, so
the whole spectral sequence is read off from a persistence pairing of the
column: a pair of basis elements whose filtrations differ by r is a d_r,
and an unpaired element survives to E-infinity.
"""

import logging
from typing import NamedTuple

import numpy as np

from koc2 import gf2
from koc2.basering import RHO
from koc2.cobar import CellTooLarge, CobarWord, OutOfBox, TriDegree


logger = logging.getLogger(__name__)


class Slot(NamedTuple):
    """A tridegree together with a Bockstein filtration."""
    s: int
    f: int
    w: int
    p: int

    @property
    def degree(self):
        return TriDegree(self.s, self.f, self.w)

    def record(self):
        return {'s': self.s, 'f': self.f, 'w': self.w, 'p': self.p}


class Pair(NamedTuple):
    source: Slot
    target: Slot
    source_vector: np.ndarray
    target_vector: np.ndarray

    @property
    def length(self):
        return self.target.p - self.source.p


class Differential(NamedTuple):
    r: int
    source: Slot
    target: Slot
    inside_box: bool

    def record(self):
        return {'r': self.r, 'source': self.source.record(),
                'target': self.target.record(), 'inside_box': self.inside_box}


class Column(object):
    """Persistence pairing of one column of fixed s+f and w."""

    def __init__(self, complex, n, w, f_top):
        self.n = n
        self.w = w
        self.f_top = f_top
        self.pairs = []
        self.essentials = []
        # Elements at each f that are leading terms of a reduced coboundary.
        self._leading = set()
        for f in range(f_top):
            self._reduce(complex, f)

    def _reduce(self, complex, f):
        degree = TriDegree(self.n - f, f, self.w)
        source = complex.cell(degree)
        target = complex.cell(degree.plus(-1, 1, 0))
        # Sources run from high to low filtration, targets from low to high,
        # with ties broken consistently so that leading terms sit lowest.
        source_order = sorted(range(len(source)),
                              key=lambda i: (-source.filtrations[i], i))
        target_order = sorted(range(len(target)),
                              key=lambda i: (target.filtrations[i], -i))
        target_position = np.empty(len(target), dtype=np.int64)
        target_position[target_order] = np.arange(len(target))
        source_position = np.empty(len(source), dtype=np.int64)
        source_position[source_order] = np.arange(len(source))
        images = complex.image(degree)
        entries = [(source_position[j], target_position[i])
                   for j, row in enumerate(images) for i in row]
        matrix = gf2.BitMatrix.from_entries(len(source), len(target), entries)
        lows, reduced, transform = gf2.leading_reduction(matrix)
        leading = set()
        for row, low in enumerate(lows):
            j = source_order[row]
            combo = np.zeros(len(source), dtype=np.uint8)
            combo[source_order] = transform.row(row)
            slot = Slot(degree.s, f, self.w, int(source.filtrations[j]))
            if low < 0:
                if (f, j) not in self._leading:
                    self.essentials.append((slot, combo))
                continue
            i = target_order[low]
            leading.add((f + 1, i))
            image = np.zeros(len(target), dtype=np.uint8)
            image[target_order] = reduced.row(row)
            target_slot = Slot(degree.s - 1, f + 1, self.w, int(target.filtrations[i]))
            self.pairs.append(Pair(slot, target_slot, combo, image))
        self._leading |= leading


class BocksteinPage(object):
    """Dimensions of E_r by slot and the differentials d_r."""

    def __init__(self, r, dims, differentials):
        self.r = r
        self.dims = dims
        self.differentials = differentials

    def dim(self, degree, p=None):
        levels = self.dims.get(TriDegree(*degree), {})
        if p is None:
            return sum(levels.values())
        return levels.get(p, 0)

    def records(self):
        out = []
        for degree in sorted(self.dims):
            for p, dim in sorted(self.dims[degree].items()):
                if dim:
                    out.append({'s': degree.s, 'f': degree.f, 'w': degree.w,
                                'p': p, 'dim': dim})
        return out


class BocksteinSpectralSequence(object):
    """The Bockstein spectral sequence of a complex over a box."""

    def __init__(self, complex, box=None):
        self.complex = complex
        self.box = box or complex.box
        self._columns = {}

    def column(self, n, w):
        key = (n, w)
        column = self._columns.get(key)
        if column is None:
            column = Column(self.complex, n, w, self.box.f_max + 1)
            self._columns[key] = column
            logger.debug('Column n=%d w=%d: %d pairs, %d survivors',
                         n, w, len(column.pairs), len(column.essentials))
        return column

    def columns(self):
        b = self.box
        for n in range(b.s_min + b.f_min, b.s_max + b.f_max + 1):
            for w in range(b.w_min, b.w_max + 1):
                yield self.column(n, w)

    def pairs(self):
        for column in self.columns():
            for pair in column.pairs:
                yield pair

    def differential_at(self, source, target):
        """The pair joining two slots, or None."""
        column = self.column(source.s + source.f, source.w)
        for pair in column.pairs:
            if pair.source == source and pair.target == target:
                return pair
        return None

    def page(self, r):
        """E_r for r >= 1; r=None gives E-infinity."""
        dims = {}

        def count(slot):
            degree = slot.degree
            if not self.box.contains(degree):
                return
            levels = dims.setdefault(degree, {})
            levels[slot.p] = levels.get(slot.p, 0) + 1

        differentials = []
        for column in self.columns():
            for slot, _ in column.essentials:
                count(slot)
            if r is None:
                continue
            for pair in column.pairs:
                if pair.length >= r:
                    count(pair.source)
                    count(pair.target)
                if pair.length == r and self.box.contains(pair.source.degree):
                    differentials.append(Differential(
                        r, pair.source, pair.target,
                        self.box.contains(pair.target.degree)))
        differentials.sort()
        return BocksteinPage(r, dims, differentials)

    def e1_page(self):
        return self.page(1)

    def turn_page(self, page):
        if page.r is None:
            return page
        return self.page(page.r + 1)

    def e_infinity(self):
        return self.page(None)

    def stable_page(self):
        """Smallest r with E_r equal to E-infinity on the box."""
        longest = 0
        for pair in self.pairs():
            if self.box.contains(pair.source.degree) or self.box.contains(pair.target.degree):
                longest = max(longest, pair.length)
        return longest + 1

    def associated_graded_dims(self, degree):
        """Cohomology of the associated graded complex, by filtration.

        Computed directly from filtration-preserving parts of the
        coboundary, independently of the pairing.
        """
        degree = TriDegree(*degree)
        cell = self.complex.cell(degree)
        result = {}
        for p in sorted(set(cell.filtrations.tolist())):
            kernel = len(np.flatnonzero(cell.filtrations == p)) \
                - self._graded_rank(degree, p)
            image = self._graded_rank(degree.plus(1, -1, 0), p) if degree.f > 0 else 0
            if kernel - image:
                result[p] = kernel - image
        return result

    def _graded_rank(self, degree, p):
        source = self.complex.cell(degree)
        target = self.complex.cell(degree.plus(-1, 1, 0))
        rows = np.flatnonzero(source.filtrations == p)
        cols = np.flatnonzero(target.filtrations == p)
        if not len(rows) or not len(cols):
            return 0
        col_index = {int(c): k for k, c in enumerate(cols)}
        images = self.complex.image(degree)
        entries = [(k, col_index[i]) for k, j in enumerate(rows)
                   for i in images[j] if i in col_index]
        return gf2.rank(gf2.BitMatrix.from_entries(len(rows), len(cols), entries))

    def rho_tower_analysis(self, length, cone=None):
        """rho-multiplication structure on the box.

        Returns a RhoAnalysis holding, per tridegree, the rank of rho^length,
        the number of classes of each finite rho-order up to length, and the
        rank of the image of rho^length into the cell. Chains that leave the
        computed region are recorded as unreached instead.
        """
        rho = self.complex.word_class(CobarWord(RHO, ()))
        analysis = RhoAnalysis(length)
        for degree in self.box.degrees():
            ext = self.complex.ext_cell(degree)
            if not ext.dim:
                continue
            current = self._start(degree, cone)
            ranks = [current.rows]
            here = degree
            for step in range(1, length + 1):
                nxt = here.plus(-1, 0, -1)
                if not self._reachable(nxt):
                    analysis.unreached.add(degree)
                    break
                current = _compose(current, self.complex.multiplication_matrix(here, rho))
                here = nxt
                ranks.append(gf2.rank(current))
            analysis.add_powers(degree, ranks)
            source = degree.plus(length, 0, length)
            chain = [source.plus(-m, 0, -m) for m in range(length)]
            if not all(self._reachable(d) for d in chain):
                analysis.unreached.add(degree)
                continue
            mapped = self._start(source, cone)
            for here in chain:
                mapped = _compose(mapped, self.complex.multiplication_matrix(here, rho))
            analysis.divisible[degree] = gf2.rank(mapped)
        return analysis

    def _reachable(self, degree):
        try:
            self.complex.ext_cell(degree)
        except (OutOfBox, CellTooLarge):
            return False
        return True

    def _start(self, degree, cone):
        # rho preserves both cones.
        if cone is None:
            return gf2.BitMatrix.identity(self.complex.ext_cell(degree).dim)
        return self.complex.cone_subspace(degree, cone)


def _compose(rows, matrix):
    if rows.rows == 0 or matrix.rows == 0:
        return gf2.BitMatrix(rows.rows, matrix.cols)
    return rows @ matrix


class RhoAnalysis(object):
    """Tower, torsion and divisibility data for rho-multiplication."""

    def __init__(self, length):
        self.length = length
        self.tower = {}
        self.torsion = {}
        self.divisible = {}
        self.unreached = set()

    def add_powers(self, degree, ranks):
        # ranks[m] is the rank of rho^m; only full-length chains decide towers.
        if len(ranks) == self.length + 1:
            self.tower[degree] = ranks[-1]
        orders = {}
        for m in range(1, len(ranks)):
            killed = ranks[m - 1] - ranks[m]
            if killed:
                orders[m] = killed
        self.torsion[degree] = orders

    def tower_cells(self):
        return sorted(d for d, rank in self.tower.items() if rank)

    def divisible_cells(self):
        return sorted(d for d, rank in self.divisible.items() if rank)
