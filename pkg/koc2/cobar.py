"""
Cobar complexes and their cohomology.

The complex in tridegree (s, f, w) is spanned by words c[m1|...|mf] where
c is a coefficient monomial and every mi is a non-unit monomial of the
Hopf algebroid. Cohomology is computed one tridegree at a time, and every
class carries a canonical cocycle representative.
"""

import concurrent.futures
import functools
import logging
import re
from typing import NamedTuple

import numpy as np

from koc2 import basering
from koc2 import gf2
from koc2.basering import ONE, NEGATIVE, POSITIVE
from koc2.hopf import HopfAlgebra, XI1, lex_key, monomial_degree, render_monomial
from koc2 import hopf


logger = logging.getLogger(__name__)

# Largest number of words a single cell may hold before enumeration stops.
DEFAULT_CELL_LIMIT = 200000


class BoxError(ValueError):
    """Raised if a box specification is malformed."""
    pass


class OutOfBox(ValueError):
    """Raised if a tridegree lies outside the limits of a complex."""
    pass


class CellTooLarge(RuntimeError):
    """Raised if a cell has more words than the configured cap."""
    pass


class NotACocycle(ValueError):
    """Raised if a cochain passed as a class representative is not closed."""
    pass


class BracketUndefined(ValueError):
    """Raised if a Massey product is requested for non-vanishing products."""
    pass


class WindowTooSmall(RuntimeError):
    """Raised if a bounding cochain could not be found in the computed cells."""
    pass


class TriDegree(NamedTuple):
    s: int
    f: int
    w: int

    @property
    def mw(self):
        """Milnor-Witt stem."""
        return self.s - self.w

    def plus(self, s=0, f=0, w=0):
        return TriDegree(self.s + s, self.f + f, self.w + w)

    def combine(self, other):
        return TriDegree(self.s + other[0], self.f + other[1], self.w + other[2])

    def __str__(self):
        return '({0},{1},{2})'.format(self.s, self.f, self.w)


_RANGE = re.compile(r'^\s*(-?\d+)\s*:\s*(-?\d+)\s*$')


class Box(object):
    """A rectangular region of tridegrees.

    The margin widens the stem and weight ranges for work that needs cells
    just outside the region, such as bounding cochains.
    """

    def __init__(self, s_min, s_max, f_max, w_min, w_max, f_min=0, margin=0):
        if s_min > s_max or w_min > w_max or f_min > f_max or f_min < 0:
            raise BoxError('Empty or inverted box.')
        if margin < 0:
            raise BoxError('Margin must be non-negative.')
        self.s_min = s_min
        self.s_max = s_max
        self.f_min = f_min
        self.f_max = f_max
        self.w_min = w_min
        self.w_max = w_max
        self.margin = margin

    @classmethod
    def parse(cls, s_range, f_range, w_range, margin=0):
        """Builds a box from three 'low:high' strings."""
        bounds = []
        for text in (s_range, f_range, w_range):
            match = _RANGE.match(text)
            if match is None:
                raise BoxError('Expected low:high, got {0!r}.'.format(text))
            bounds.append((int(match.group(1)), int(match.group(2))))
        (s0, s1), (f0, f1), (w0, w1) = bounds
        return cls(s0, s1, f1, w0, w1, f_min=f0, margin=margin)

    def contains(self, degree):
        s, f, w = degree
        return (self.s_min <= s <= self.s_max and self.f_min <= f <= self.f_max
                and self.w_min <= w <= self.w_max)

    def degrees(self):
        for f in range(self.f_min, self.f_max + 1):
            for s in range(self.s_min, self.s_max + 1):
                for w in range(self.w_min, self.w_max + 1):
                    yield TriDegree(s, f, w)

    def widened(self):
        """Region of every cell that computations over this box may touch."""
        m = self.margin
        return Box(self.s_min - self.f_max - m - 1, self.s_max + self.f_max + m + 1,
                   self.f_max + 1, self.w_min - m, self.w_max + m, margin=0)

    def key(self):
        return (self.s_min, self.s_max, self.f_min, self.f_max,
                self.w_min, self.w_max, self.margin)

    def __eq__(self, other):
        if not isinstance(other, Box):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return 'Box(s={0}:{1}, f={2}:{3}, w={4}:{5})'.format(
            self.s_min, self.s_max, self.f_min, self.f_max, self.w_min, self.w_max)


class CobarWord(NamedTuple):
    coef: basering.CoefMonomial
    bars: tuple

    def __str__(self):
        bars = '|'.join(render_monomial(m) for m in self.bars)
        return '{0}[{1}]'.format(basering.render(self.coef), bars)


def word_key(word):
    return (word.coef, tuple(lex_key(m) for m in word.bars))


def word_degree(word):
    s, w = basering.degree(word.coef)
    t = wb = 0
    for m in word.bars:
        mt, mw = monomial_degree(m)
        t += mt
        wb += mw
    f = len(word.bars)
    return TriDegree(s + t - f, f, w + wb)


def _toggle(terms, key):
    if key in terms:
        del terms[key]
    else:
        terms[key] = None


@functools.lru_cache(maxsize=None)
def bar_words(algebra, f, t, w):
    """Bar words of length f with total internal degree t and weight w."""
    if f == 0:
        return ((),) if (t, w) == (0, 0) else ()
    out = []
    for m in algebra.coideal:
        mt, mw = monomial_degree(m)
        if mt > t or mw > w:
            continue
        for rest in bar_words(algebra, f - 1, t - mt, w - mw):
            out.append((m,) + rest)
    return tuple(out)


def enumerate_basis(kind, algebra, degree, cone=None):
    """Ordered basis of the cobar complex in one tridegree."""
    s, f, w = degree
    if f < 0:
        return ()
    max_t, max_w = algebra.max_degree
    words = []
    for t in range(f, max_t * f + 1):
        for wb in range(0, max_w * f + 1):
            coef = basering.basis_in_bidegree(kind, s + f - t, w - wb, cone)
            if coef is None:
                continue
            for bars in bar_words(algebra, f, t, wb):
                words.append(CobarWord(coef, bars))
    words.sort(key=word_key)
    return tuple(words)


@functools.lru_cache(maxsize=65536)
def word_differential(word, algebra, kind):
    """Coboundary of a single word as a tuple of words."""
    out = {}
    coef, bars = word
    for c, n in basering.coaction(coef, algebra, kind):
        if n != hopf.UNIT:
            _toggle(out, CobarWord(c, (n,) + bars))
    for i, m in enumerate(bars):
        for c, a, b in algebra.reduced_coproduct(m):
            if not basering.legal(c, kind):
                continue
            tail = (b,) + bars[i + 1:]
            if c == ONE:
                _toggle(out, CobarWord(coef, bars[:i] + (a,) + tail))
                continue
            slots = tuple((None, x) for x in bars[:i]) + ((c, a),)
            for lead, masks in hopf.pull_left(coef, slots, algebra, kind):
                _toggle(out, CobarWord(lead, masks + tail))
    return tuple(sorted(out, key=word_key))


def word_product(u, v, algebra, kind):
    """Product of two words: concatenation with v's coefficient moved left."""
    if v.bars:
        slots = tuple((None, m) for m in u.bars) + ((v.coef, v.bars[0]),)
        tail = v.bars[1:]
        trailing = None
    else:
        slots = tuple((None, m) for m in u.bars)
        tail = ()
        trailing = v.coef
    if not slots:
        c = basering.times(u.coef, trailing, kind)
        return () if c is None else (CobarWord(c, ()),)
    return tuple(CobarWord(lead, masks + tail)
                 for lead, masks in hopf.pull_left(u.coef, slots, algebra, kind, trailing))


class Cell(object):
    """The ordered word basis of one tridegree."""

    def __init__(self, degree, words):
        self.degree = degree
        self.words = words
        self.index = {word: i for i, word in enumerate(words)}
        self.filtrations = np.array([basering.filtration(w.coef) for w in words],
                                    dtype=np.int64)
        self.cones = np.array([w.coef.cone for w in words], dtype=np.int64)

    def __len__(self):
        return len(self.words)

    def vector(self, words):
        """Dense vector of a GF(2) sum of words."""
        v = np.zeros(len(self.words), dtype=np.uint8)
        for word in words:
            v[self.index[word]] ^= 1
        return v

    def support(self, vector):
        return [self.words[i] for i in np.flatnonzero(vector)]


class ExtClass(object):
    """A cohomology class with its canonical cocycle representative."""

    def __init__(self, degree, coords, vector, name=None):
        self.degree = TriDegree(*degree)
        self.coords = np.asarray(coords, dtype=np.uint8)
        self.vector = np.asarray(vector, dtype=np.uint8)
        self.name = name

    def is_zero(self):
        return not self.coords.any()

    def __eq__(self, other):
        if not isinstance(other, ExtClass):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.coords, other.coords)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.degree, self.coords.tobytes()))

    def __repr__(self):
        label = self.name or ''.join(str(c) for c in self.coords)
        return 'ExtClass({0} {1})'.format(label, self.degree)


class ExtCell(object):
    """Cohomology of one tridegree."""

    def __init__(self, degree, cell, reps, boundaries, boundary_pivots):
        self.degree = degree
        self.cell = cell
        self.reps = reps
        self.rep_pivots = tuple(gf2.lowest_bit(reps.data[i]) for i in range(reps.rows))
        self.boundaries = boundaries
        self.boundary_pivots = tuple(boundary_pivots)

    @property
    def dim(self):
        return self.reps.rows

    def coordinates(self, vector):
        """Coordinates of a cocycle against the representative basis."""
        vector = np.asarray(vector, dtype=np.uint8)
        if vector.shape != (len(self.cell),):
            raise gf2.DimensionError('Cochain does not belong to cell {0}.'.format(
                self.degree))
        reduced = gf2.reduce_vector(vector, self.boundaries, self.boundary_pivots)
        coords = reduced[list(self.rep_pivots)] if self.dim else np.zeros(0, np.uint8)
        if self.dim:
            reduced ^= self.reps.combine(coords)
        if reduced.any():
            raise NotACocycle('Cochain in {0} is not closed.'.format(self.degree))
        return coords.astype(np.uint8)

    def coordinate_rows(self, cocycles):
        """Coordinates of every row of a packed matrix of cocycles."""
        if cocycles.cols != len(self.cell):
            raise gf2.DimensionError('Cochains do not belong to cell {0}.'.format(
                self.degree))
        reduced = gf2.reduce_rows(cocycles, self.boundaries, self.boundary_pivots)
        if not self.dim:
            coords = gf2.BitMatrix(cocycles.rows, 0)
        else:
            coords = reduced.select_columns(self.rep_pivots)
            reduced = reduced ^ (coords @ self.reps)
        if not reduced.is_zero():
            raise NotACocycle('Cochain in {0} is not closed.'.format(self.degree))
        return coords

    def representative(self, coords):
        if self.dim == 0:
            return np.zeros(len(self.cell), dtype=np.uint8)
        return self.reps.combine(coords)

    def basis(self):
        classes = []
        for i in range(self.dim):
            coords = np.zeros(self.dim, dtype=np.uint8)
            coords[i] = 1
            classes.append(ExtClass(self.degree, coords, self.reps.row(i)))
        return classes

    def record(self):
        return {'s': self.degree.s, 'f': self.degree.f, 'w': self.degree.w,
                'dim': self.dim}


class MasseyProduct(object):
    """A Massey product coset: a representative class plus indeterminacy."""

    def __init__(self, representative, indeterminacy):
        self.representative = representative
        self.indeterminacy = indeterminacy

    @property
    def degree(self):
        return self.representative.degree

    @property
    def indeterminacy_dim(self):
        return self.indeterminacy.rows

    def contains(self, cls):
        if cls.degree != self.degree:
            return False
        difference = cls.coords ^ self.representative.coords
        if not difference.any():
            return True
        if self.indeterminacy.rows == 0:
            return False
        r, pivots, reduced = gf2.rref(self.indeterminacy)
        return not gf2.reduce_vector(difference, reduced, pivots).any()


class CobarComplex(object):
    """The cobar complex of one Hopf algebroid over one coefficient ring."""

    def __init__(self, kind, algebra, box, cell_limit=DEFAULT_CELL_LIMIT, cache=None):
        self.kind = kind
        self.algebra = algebra
        self.box = box
        self.limits = box.widened()
        self.cell_limit = cell_limit
        self.cache = cache
        self._cells = {}
        self._images = {}
        self._ext = {}
        self._filtrations = {}

    def __repr__(self):
        return 'CobarComplex({0}, {1}, {2!r})'.format(
            self.kind.value, self.algebra.value, self.box)

    def check(self, degree):
        if degree.f >= 0 and not self.limits.contains(degree):
            raise OutOfBox('{0} lies outside {1!r}.'.format(degree, self.limits))

    def cell(self, degree):
        degree = TriDegree(*degree)
        cell = self._cells.get(degree)
        if cell is None:
            self.check(degree)
            words = enumerate_basis(self.kind, self.algebra, degree)
            if len(words) > self.cell_limit:
                raise CellTooLarge('{0} has {1} words, more than {2}.'.format(
                    degree, len(words), self.cell_limit))
            cell = Cell(degree, words)
            self._cells[degree] = cell
        return cell

    def image(self, degree):
        """Target indices of the coboundary of every word in a cell."""
        degree = TriDegree(*degree)
        images = self._images.get(degree)
        if images is None:
            source = self.cell(degree)
            target = self.cell(degree.plus(-1, 1, 0))
            images = []
            for word in source.words:
                terms = word_differential(word, self.algebra, self.kind)
                images.append(tuple(sorted(target.index[t] for t in terms)))
            self._images[degree] = images
        return images

    def differential_vector(self, word):
        """Coboundary of one word as a vector over the next cell."""
        degree = word_degree(word)
        target = self.cell(degree.plus(-1, 1, 0))
        return target.vector(word_differential(word, self.algebra, self.kind))

    def coboundary(self, degree, vector):
        target = self.cell(TriDegree(*degree).plus(-1, 1, 0))
        out = np.zeros(len(target), dtype=np.uint8)
        images = self.image(degree)
        for j in np.flatnonzero(vector):
            for i in images[j]:
                out[i] ^= 1
        return out

    def _entries(self, degree):
        return [(j, i) for j, row in enumerate(self.image(degree)) for i in row]

    def differential(self, degree):
        """Coboundary matrix with one column per source word."""
        degree = TriDegree(*degree)
        source = self.cell(degree)
        target = self.cell(degree.plus(-1, 1, 0))
        entries = [(i, j) for j, i in self._entries(degree)]
        return gf2.BitMatrix.from_entries(len(target), len(source), entries)

    def coboundary_rows(self, degree):
        """Coboundary matrix with one row per source word."""
        degree = TriDegree(*degree)
        source = self.cell(degree)
        target = self.cell(degree.plus(-1, 1, 0))
        return gf2.BitMatrix.from_entries(len(source), len(target),
                                          self._entries(degree))

    def ext_cell(self, degree):
        degree = TriDegree(*degree)
        ext = self._ext.get(degree)
        if ext is not None:
            return ext
        cell = self.cell(degree)
        if self.cache is not None:
            ext = self.cache.load(self, cell)
        if ext is None:
            ext = self._compute_ext(cell)
            if self.cache is not None:
                self.cache.store(self, ext)
        self._ext[degree] = ext
        return ext

    def _compute_ext(self, cell):
        degree = cell.degree
        n = len(cell)
        if n == 0:
            empty = gf2.BitMatrix(0, 0)
            return ExtCell(degree, cell, empty, empty, ())
        cycles = gf2.kernel_basis(self.differential(degree))
        if degree.f > 0:
            boundaries = self.coboundary_rows(degree.plus(1, -1, 0))
        else:
            boundaries = gf2.BitMatrix(0, n)
        reps = gf2.quotient_representatives(cycles, boundaries)
        _, pivots, reduced = gf2.rref(boundaries)
        logger.debug('Ext %s over %s/%s: %d words, dim %d', degree,
                     self.kind.value, self.algebra.value, n, reps.rows)
        return ExtCell(degree, cell, reps, reduced, pivots)

    def ext(self, box=None, threads=1):
        """Ext in every tridegree of a box, keyed by degree."""
        degrees = list((box or self.box).degrees())
        if threads > 1:
            # Differentials of neighbouring cells are shared, so warm the
            # word enumeration serially first.
            for degree in degrees:
                self.cell(degree)
            with concurrent.futures.ThreadPoolExecutor(threads) as pool:
                list(pool.map(self.ext_cell, degrees))
        return {degree: self.ext_cell(degree) for degree in degrees}

    def classes(self, degree):
        return self.ext_cell(degree).basis()

    def make_class(self, degree, vector, name=None):
        ext = self.ext_cell(degree)
        return ExtClass(ext.degree, ext.coordinates(vector), vector, name)

    def class_from_coords(self, degree, coords, name=None):
        ext = self.ext_cell(degree)
        coords = np.asarray(coords, dtype=np.uint8)
        return ExtClass(ext.degree, coords, ext.representative(coords), name)

    def zero(self, degree):
        ext = self.ext_cell(degree)
        return ExtClass(ext.degree, np.zeros(ext.dim, np.uint8),
                        np.zeros(len(ext.cell), np.uint8))

    def word_class(self, word, name=None):
        """The class of a single closed word, e.g. a coefficient or [t0]."""
        degree = word_degree(word)
        return self.make_class(degree, self.cell(degree).vector([word]), name)

    def add(self, x, y):
        if x.degree != y.degree:
            raise ValueError('Cannot add classes in {0} and {1}.'.format(
                x.degree, y.degree))
        return ExtClass(x.degree, x.coords ^ y.coords, x.vector ^ y.vector)

    def cochain_product(self, dx, vx, dy, vy):
        """Product of two cochains given by degree and vector."""
        dx, dy = TriDegree(*dx), TriDegree(*dy)
        target_degree = dx.combine(dy)
        target = self.cell(target_degree)
        out = np.zeros(len(target), dtype=np.uint8)
        if dx.f < 0 or dy.f < 0:
            return target_degree, out
        xs = self.cell(dx).support(vx)
        ys = self.cell(dy).support(vy)
        for u in xs:
            for v in ys:
                for word in word_product(u, v, self.algebra, self.kind):
                    out[target.index[word]] ^= 1
        return target_degree, out

    def product(self, x, y):
        degree, vector = self.cochain_product(x.degree, x.vector, y.degree, y.vector)
        return self.make_class(degree, vector)

    def multiplication_matrix(self, degree, by):
        """Rows are coordinates of basis class times by."""
        ext = self.ext_cell(degree)
        target = self.ext_cell(TriDegree(*degree).combine(by.degree))
        rows = [self.product(cls, by).coords for cls in ext.basis()]
        return gf2.BitMatrix.from_rows(rows, target.dim)

    def bounding_cochain(self, degree, vector):
        """Some u with d(u) equal to the given coboundary."""
        degree = TriDegree(*degree)
        source = degree.plus(1, -1, 0)
        if source.f < 0:
            if np.asarray(vector).any():
                raise WindowTooSmall('Nonzero cochain in {0} cannot bound.'.format(degree))
            return source, np.zeros(0, dtype=np.uint8)
        u = gf2.solve(self.differential(source), vector)
        if u is None:
            raise WindowTooSmall('No bounding cochain for a class in {0}.'.format(degree))
        return source, u

    def massey3(self, x, y, z):
        """The Massey product of three classes with vanishing pairwise products."""
        dxy, vxy = self.cochain_product(x.degree, x.vector, y.degree, y.vector)
        dyz, vyz = self.cochain_product(y.degree, y.vector, z.degree, z.vector)
        if self.ext_cell(dxy).coordinates(vxy).any():
            raise BracketUndefined('First product is nonzero in {0}.'.format(dxy))
        if self.ext_cell(dyz).coordinates(vyz).any():
            raise BracketUndefined('Second product is nonzero in {0}.'.format(dyz))
        du, u = self.bounding_cochain(dxy, vxy)
        dv, v = self.bounding_cochain(dyz, vyz)
        return self.massey_representative(x, y, z, du, u, dv, v)

    def massey_representative(self, x, y, z, du, u, dv, v):
        """Massey product coset built from chosen bounding cochains."""
        degree = TriDegree(*du).combine(z.degree)
        d1, first = self.cochain_product(du, u, z.degree, z.vector)
        d2, second = self.cochain_product(x.degree, x.vector, dv, v)
        if not d1 == d2 == degree:
            raise ValueError('Bounding cochains have inconsistent degrees.')
        rep = self.make_class(degree, first ^ second)
        rows = [self.product(x, e).coords for e in self.classes(TriDegree(*dv))]
        rows += [self.product(e, z).coords for e in self.classes(TriDegree(*du))]
        span = gf2.BitMatrix.from_rows(rows, rep.coords.shape[0])
        return MasseyProduct(rep, gf2.rref(span)[2])

    def _restricted_classes(self, ext, differential, columns):
        """rref coordinates of the classes with a cocycle supported on columns."""
        kernel = gf2.kernel_basis(differential.select_columns(columns))
        cocycles = gf2.place_columns(kernel, columns, len(ext.cell))
        return gf2.rref(ext.coordinate_rows(cocycles))[2]

    def filtration_subspaces(self, degree):
        """Coordinate subspaces of classes with representatives in F^p.

        Returns a dict from filtration p to an rref basis; levels above the
        largest word filtration are zero.
        """
        degree = TriDegree(*degree)
        if degree in self._filtrations:
            return self._filtrations[degree]
        cell = self.cell(degree)
        ext = self.ext_cell(degree)
        if not len(cell):
            return {}
        differential = self.differential(degree)
        result = {}
        for p in sorted(set(cell.filtrations.tolist())):
            columns = np.flatnonzero(cell.filtrations >= p)
            result[p] = self._restricted_classes(ext, differential, columns)
        self._filtrations[degree] = result
        return result

    def class_filtration(self, cls):
        """Largest p such that the class has a representative in F^p."""
        if cls.is_zero():
            return None
        best = None
        for p, space in sorted(self.filtration_subspaces(cls.degree).items()):
            _, pivots, reduced = gf2.rref(space)
            if not gf2.reduce_vector(cls.coords, reduced, pivots).any():
                best = p
        return best

    def cone_subspace(self, degree, cone, min_filtration=None, max_filtration=None):
        """Coordinates (rref) of the classes represented inside one cone.

        min_filtration and max_filtration further restrict representatives
        to words within that range of Bockstein filtrations.
        """
        degree = TriDegree(*degree)
        cell = self.cell(degree)
        ext = self.ext_cell(degree)
        keep = cell.cones == cone
        if min_filtration is not None:
            keep &= cell.filtrations >= min_filtration
        if max_filtration is not None:
            keep &= cell.filtrations <= max_filtration
        columns = np.flatnonzero(keep)
        if not len(columns) or not ext.dim:
            return gf2.BitMatrix(0, ext.dim)
        return self._restricted_classes(ext, self.differential(degree), columns)

    def pushforward(self, cls, target):
        """Image of a class under the quotient sending x1 to zero."""
        if self.algebra is not HopfAlgebra.A1 or target.algebra is not HopfAlgebra.E1:
            raise hopf.AlgebraMismatch('The quotient map runs from A1 to E1.')
        if self.kind is not target.kind:
            raise ValueError('Source and target complexes differ in coefficients.')
        cell = target.cell(cls.degree)
        words = [w for w in self.cell(cls.degree).support(cls.vector)
                 if not any(m & XI1 for m in w.bars)]
        return target.make_class(cls.degree, cell.vector(words))


def cone_for(kind_label):
    """Cone in which a named family of classes lives."""
    return NEGATIVE if kind_label == 'NC' else POSITIVE
