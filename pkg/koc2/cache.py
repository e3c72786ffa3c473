"""
On-disk cache of Ext cells.

Each cell is stored as a compressed numpy archive named after the
coefficient ring, the Hopf algebra, the tridegree and a hash of the
source of the modules that determine the answer. Cells do not depend on
the box they were computed in, so one cache serves every box.
"""

import hashlib
import logging
import os

import numpy as np

from koc2 import basering, cobar, gf2, hopf


logger = logging.getLogger(__name__)

CACHE_ENV = 'KOC2_CACHE_DIR'


def code_version():
    """Short hash of the sources Ext results depend on."""
    digest = hashlib.sha256()
    for module in (gf2, basering, hopf, cobar):
        with open(module.__file__, 'rb') as f:
            digest.update(f.read())
    return digest.hexdigest()[:12]


class ExtCache(object):
    """Loads and stores ExtCell objects under one directory."""

    def __init__(self, directory):
        self.directory = directory
        self.version = code_version()
        os.makedirs(directory, exist_ok=True)

    @classmethod
    def from_environment(cls, default=None):
        """A cache in $KOC2_CACHE_DIR or the default, or None if neither is set."""
        directory = os.environ.get(CACHE_ENV) or default
        return cls(directory) if directory else None

    def path(self, complex, degree):
        name = '{0}-{1}-{2}_{3}_{4}-{5}.npz'.format(
            complex.kind.value, complex.algebra.value, degree.s, degree.f, degree.w,
            self.version)
        return os.path.join(self.directory, name)

    def load(self, complex, cell):
        path = self.path(complex, cell.degree)
        if not os.path.exists(path):
            return None
        try:
            with np.load(path) as data:
                size = int(data['size'])
                if size != len(cell):
                    logger.warning('Ignoring %s: %d words cached, %d expected',
                                   path, size, len(cell))
                    return None
                reps = gf2.BitMatrix(int(data['reps_rows']), size, data['reps'])
                boundaries = gf2.BitMatrix(int(data['boundary_rows']), size,
                                           data['boundaries'])
                pivots = tuple(int(p) for p in data['pivots'])
        except (OSError, KeyError, ValueError) as e:
            logger.warning('Ignoring unreadable cache file %s: %s', path, e)
            return None
        logger.debug('Loaded %s from cache', cell.degree)
        return cobar.ExtCell(cell.degree, cell, reps, boundaries, pivots)

    def store(self, complex, ext):
        path = self.path(complex, ext.degree)
        partial = path + '.part'
        with open(partial, 'wb') as f:
            np.savez_compressed(
                f, size=len(ext.cell), reps=ext.reps.data, reps_rows=ext.reps.rows,
                boundaries=ext.boundaries.data, boundary_rows=ext.boundaries.rows,
                pivots=np.asarray(ext.boundary_pivots, dtype=np.int64))
        os.replace(partial, path)
