"""
Linear algebra over the two-element field.

Matrices are stored as rows of bits packed into 64-bit words: bit j of a
row lives in word j // 64 at position j % 64. Bits beyond the column count
are always zero. Vectors passed in or returned by the functions here are
dense numpy arrays of 0/1 values. Whole matrices are only unpacked a block
of rows at a time.
"""

import numpy as np


WORD_BITS = 64

# Rows unpacked at once when a matrix is rearranged column by column.
ROW_CHUNK = 1024


class DimensionError(ValueError):
    """Raised if operand shapes do not agree."""
    pass


class InclusionError(ValueError):
    """Raised if a boundary space is not contained in the cycle space."""
    pass


def words_for(cols):
    """Number of 64-bit words needed to hold a row of the given length."""
    return (cols + WORD_BITS - 1) // WORD_BITS


def _bit(col):
    word, offset = divmod(col, WORD_BITS)
    return word, np.uint64(1 << offset)


def _unpack(data, cols):
    """Packed words to a uint8 array of bits, one byte per bit."""
    rows, nwords = data.shape
    if not nwords:
        return np.zeros((rows, cols), dtype=np.uint8)
    octets = np.ascontiguousarray(data, dtype='<u8').view(np.uint8)
    bits = np.unpackbits(octets.reshape(rows, nwords * 8), axis=1,
                         bitorder='little')
    return bits[:, :cols]


def _pack(dense, nwords):
    """A uint8 array of 0/1 values to packed words."""
    rows = dense.shape[0]
    if not nwords:
        return np.zeros((rows, 0), dtype=np.uint64)
    octets = np.packbits(dense & 1, axis=1, bitorder='little')
    padded = np.zeros((rows, nwords * 8), dtype=np.uint8)
    padded[:, :octets.shape[1]] = octets
    return padded.view('<u8').astype(np.uint64)


def _parity(words):
    """Parity of each entry of an array of 64-bit words."""
    words = words.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        words ^= words >> np.uint64(shift)
    return (words & np.uint64(1)).astype(np.uint8)


def lowest_bit(row):
    """Index of the lowest set bit in a packed row, or -1 if it is zero."""
    nonzero = np.flatnonzero(row)
    if nonzero.size == 0:
        return -1
    word = int(nonzero[0])
    value = int(row[word])
    return word * WORD_BITS + (value & -value).bit_length() - 1


class BitMatrix(object):
    """A matrix over GF(2) with packed rows."""

    def __init__(self, rows, cols, data=None):
        if rows < 0 or cols < 0:
            raise DimensionError('Matrix dimensions must be non-negative.')
        nwords = words_for(cols)
        if data is None:
            data = np.zeros((rows, nwords), dtype=np.uint64)
        elif data.shape != (rows, nwords):
            raise DimensionError(
                'Packed data of shape {0} does not fit a {1}x{2} matrix.'.format(
                    data.shape, rows, cols))
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def identity(cls, n):
        return cls.from_entries(n, n, [(i, i) for i in range(n)])

    @classmethod
    def from_dense(cls, dense, cols=None):
        """Packs a two-dimensional array of 0/1 values."""
        dense = np.asarray(dense, dtype=np.uint8)
        if dense.ndim != 2:
            if dense.size == 0 and cols is not None:
                dense = dense.reshape(0, cols)
            else:
                raise DimensionError('Expected a two-dimensional array.')
        rows, ncols = dense.shape
        return cls(rows, ncols, _pack(dense, words_for(ncols)))

    @classmethod
    def from_entries(cls, rows, cols, entries):
        """Builds a matrix from (row, column) positions.

        Repeated positions cancel in pairs.
        """
        m = cls(rows, cols)
        entries = np.asarray(list(entries), dtype=np.int64).reshape(-1, 2)
        if entries.size:
            if (entries[:, 0].max() >= rows or entries[:, 1].max() >= cols
                    or entries.min() < 0):
                raise DimensionError('Entry outside a {0}x{1} matrix.'.format(
                    rows, cols))
            words = entries[:, 1] // WORD_BITS
            bits = np.left_shift(np.uint64(1),
                                 (entries[:, 1] % WORD_BITS).astype(np.uint64))
            np.bitwise_xor.at(m.data, (entries[:, 0], words), bits)
        return m

    @classmethod
    def from_rows(cls, vectors, cols):
        """Packs a sequence of dense vectors as the rows of a matrix."""
        vectors = list(vectors)
        if not vectors:
            return cls(0, cols)
        return cls.from_dense(np.vstack(vectors), cols)

    def to_dense(self):
        return _unpack(self.data, self.cols)

    def row(self, i):
        """Row i as a dense vector."""
        return _unpack(self.data[i:i + 1], self.cols)[0]

    def get(self, i, j):
        word, mask = _bit(j)
        return int((self.data[i, word] & mask) != 0)

    def copy(self):
        return BitMatrix(self.rows, self.cols, self.data.copy())

    def _chunks(self):
        for start in range(0, self.rows, ROW_CHUNK):
            yield start, _unpack(self.data[start:start + ROW_CHUNK], self.cols)

    def transpose(self):
        out = BitMatrix(self.cols, self.rows)
        for start, dense in self._chunks():
            block = _pack(np.ascontiguousarray(dense.T), words_for(dense.shape[0]))
            first = start // WORD_BITS
            out.data[:, first:first + block.shape[1]] = block
        return out

    def select_columns(self, columns):
        columns = np.asarray(columns, dtype=np.int64)
        out = BitMatrix(self.rows, len(columns))
        for start, dense in self._chunks():
            out.data[start:start + ROW_CHUNK] = _pack(dense[:, columns],
                                                     out.data.shape[1])
        return out

    def select_rows(self, rows):
        rows = np.asarray(rows, dtype=np.int64)
        return BitMatrix(len(rows), self.cols, self.data[rows].copy())

    def is_zero(self):
        return not self.data.any()

    def dot(self, vector):
        """Matrix-vector product."""
        vector = np.asarray(vector, dtype=np.uint8)
        if vector.shape != (self.cols,):
            raise DimensionError('Vector of length {0} against {1} columns.'.format(
                vector.shape[0] if vector.ndim else 0, self.cols))
        packed = _pack(vector.reshape(1, -1), self.data.shape[1])[0]
        return _parity(np.bitwise_xor.reduce(self.data & packed, axis=1))

    def combine(self, coefficients):
        """Sum of the rows selected by a 0/1 coefficient vector."""
        coefficients = np.asarray(coefficients, dtype=np.uint8)
        if coefficients.shape != (self.rows,):
            raise DimensionError('Expected {0} coefficients.'.format(self.rows))
        selected = self.data[np.flatnonzero(coefficients)]
        packed = np.bitwise_xor.reduce(selected, axis=0) if len(selected) \
            else np.zeros(self.data.shape[1], dtype=np.uint64)
        return BitMatrix(1, self.cols, packed.reshape(1, -1)).row(0)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError('Cannot multiply {0}x{1} by {2}x{3}.'.format(
                self.rows, self.cols, other.rows, other.cols))
        product = BitMatrix(self.rows, other.cols)
        for k in np.flatnonzero(other.data.any(axis=1)):
            word, mask = _bit(int(k))
            hits = np.flatnonzero(self.data[:, word] & mask)
            if hits.size:
                product.data[hits] ^= other.data[k]
        return product

    def __xor__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError('Cannot add {0}x{1} to {2}x{3}.'.format(
                self.rows, self.cols, other.rows, other.cols))
        return BitMatrix(self.rows, self.cols, self.data ^ other.data)

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) \
            and np.array_equal(self.data, other.data)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __repr__(self):
        return 'BitMatrix({0}x{1})'.format(self.rows, self.cols)


def vstack(*matrices):
    cols = {m.cols for m in matrices}
    if len(cols) != 1:
        raise DimensionError('Stacked matrices differ in width.')
    data = np.vstack([m.data for m in matrices])
    return BitMatrix(data.shape[0], cols.pop(), data)


def place_columns(m, columns, cols):
    """Spreads the columns of m into positions columns of a wider matrix."""
    columns = np.asarray(columns, dtype=np.int64)
    if len(columns) != m.cols:
        raise DimensionError('Expected {0} target columns.'.format(m.cols))
    out = BitMatrix(m.rows, cols)
    for start, dense in m._chunks():
        wide = np.zeros((dense.shape[0], cols), dtype=np.uint8)
        wide[:, columns] = dense
        out.data[start:start + ROW_CHUNK] = _pack(wide, out.data.shape[1])
    return out


def rref(m):
    """Reduced row echelon form with lowest-index pivots.

    Returns (rank, pivot columns, reduced) where reduced holds only the
    nonzero rows, so its row count equals the rank.
    """
    data = m.data.copy()
    pivots = []
    r = 0
    for col in range(m.cols):
        if r == m.rows:
            break
        word, mask = _bit(col)
        hits = np.flatnonzero(data[r:, word] & mask)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
        others = np.flatnonzero(data[:, word] & mask)
        others = others[others != r]
        if others.size:
            data[others] ^= data[r]
        pivots.append(col)
        r += 1
    return r, tuple(pivots), BitMatrix(r, m.cols, data[:r].copy())


def rank(m):
    return rref(m)[0]


def kernel_basis(m):
    """Basis of {v : m v = 0}, one vector per row of the result."""
    r, pivots, reduced = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = BitMatrix.from_entries(len(free), m.cols, enumerate(free))
    if free and r:
        coefficients = reduced.select_columns(free)
        for k, col in enumerate(pivots):
            word, mask = _bit(col)
            hits = np.flatnonzero(coefficients.row(k))
            basis.data[hits, word] |= mask
    return basis


def solve(m, b):
    """Some x with m x = b, or None if no solution exists.

    Free variables are set to zero so the answer is deterministic.
    """
    b = np.asarray(b, dtype=np.uint8)
    if b.shape != (m.rows,):
        raise DimensionError('Right-hand side has length {0}, expected {1}.'.format(
            b.shape[0] if b.ndim else 0, m.rows))
    augmented = BitMatrix(m.rows, m.cols + 1)
    augmented.data[:, :m.data.shape[1]] = m.data
    word, mask = _bit(m.cols)
    augmented.data[np.flatnonzero(b), word] |= mask
    r, pivots, reduced = rref(augmented)
    if pivots and pivots[-1] == m.cols:
        return None
    x = np.zeros(m.cols, dtype=np.uint8)
    if r:
        x[list(pivots)] = (reduced.data[:, word] & mask) != 0
    return x


def reduce_rows(rows, basis, pivots):
    """Clears the pivot columns of an rref basis from every row."""
    data = rows.data.copy()
    for i, col in enumerate(pivots):
        word, mask = _bit(col)
        hits = np.flatnonzero(data[:, word] & mask)
        if hits.size:
            data[hits] ^= basis.data[i]
    return BitMatrix(rows.rows, rows.cols, data)


def reduce_vector(vector, basis, pivots):
    packed = BitMatrix.from_dense(np.asarray(vector, dtype=np.uint8).reshape(1, -1),
                                  basis.cols)
    return reduce_rows(packed, basis, pivots).row(0)


def quotient_representatives(cycles, boundaries):
    """Canonical representatives of the quotient of two row spaces.

    The result is in reduced form, vanishes on the pivot columns of the
    reduced boundaries, and has one row per quotient dimension.
    """
    if cycles.cols != boundaries.cols:
        raise DimensionError('Cycles and boundaries live in different spaces.')
    z_rank, _, z_reduced = rref(cycles)
    b_rank, b_pivots, b_reduced = rref(boundaries)
    if rank(vstack(z_reduced, b_reduced)) != z_rank:
        raise InclusionError('Boundaries are not contained in the cycles.')
    leftover = reduce_rows(z_reduced, b_reduced, b_pivots)
    q_rank, _, reps = rref(leftover)
    if q_rank != z_rank - b_rank:
        raise InclusionError('Quotient dimension does not match the ranks.')
    return reps


def leading_reduction(m):
    """Reduce rows so that their lowest set bits are pairwise distinct.

    Rows are processed in order and only earlier rows are ever added to a
    later one. Returns the leading bit of every reduced row (-1 for zero
    rows), the reduced matrix and the transform recording which input rows
    make up each output row.
    """
    data = m.data.copy()
    transform = BitMatrix.identity(m.rows).data
    owner = {}
    lows = []
    for i in range(m.rows):
        low = lowest_bit(data[i])
        while low >= 0 and low in owner:
            j = owner[low]
            data[i] ^= data[j]
            transform[i] ^= transform[j]
            low = lowest_bit(data[i])
        if low >= 0:
            owner[low] = i
        lows.append(low)
    return (lows, BitMatrix(m.rows, m.cols, data),
            BitMatrix(m.rows, m.rows, transform))
