"""
Utilities shared by the test modules: small boxes, complexes over them and
scratch fixture directories.
"""

import os
import shutil
import tempfile

from koc2 import registry
from koc2.basering import BaseKind
from koc2.cobar import Box, CobarComplex
from koc2.hopf import HopfAlgebra


# Small enough that every cell has at most a few hundred words.
SMALL_BOX = ('-2:4', '0:3', '-4:4')


def small_box(margin=0):
    return Box.parse(*SMALL_BOX, margin=margin)


def create_complex(kind=BaseKind.C, algebra=HopfAlgebra.A1, box=None):
    """A cobar complex over a small box with no disk cache."""
    return CobarComplex(kind, algebra, box or small_box())


def create_registry(kind=BaseKind.R, algebra=HopfAlgebra.A1, box=None):
    return registry.Registry(create_complex(kind, algebra, box))


class FixtureDirectory(object):
    """
    A temporary copy of the packaged fixtures, for tests that need to
    remove or corrupt a fixture file. Use as a context manager.
    """
    def __enter__(self):
        self.path = tempfile.mkdtemp()
        for name in os.listdir(registry.FIXTURE_DIR):
            shutil.copy(os.path.join(registry.FIXTURE_DIR, name), self.path)
        return self

    def __exit__(self, *args):
        shutil.rmtree(self.path)

    def write(self, name, text):
        with open(os.path.join(self.path, name), 'w') as f:
            f.write(text)

    def append(self, name, text):
        with open(os.path.join(self.path, name), 'a') as f:
            f.write(text)

    def remove(self, name):
        os.remove(os.path.join(self.path, name))
