"""
Command-line front end.

    koc2 ext --base C --algebra a1 --box=-2:10,0:6,-4:10
    koc2 verify --suite tables
    koc2 chart --base C2 --mw 0

The bockstein suite checks listed differentials and E-infinity for both
A(1) and E(1); tower and divisibility locations are predicted for A(1)
only, so --tower-length applies to A(1).

Exit status is 0 on success, 1 when a verification fails, 2 for usage
errors and 3 for missing or malformed fixtures and other environment
problems.
"""

import argparse
import json
import logging
import os
import sys

from koc2 import __version__
from koc2.basering import BaseKind
from koc2.bockstein import BocksteinSpectralSequence
from koc2.cache import CACHE_ENV, ExtCache
from koc2.charts import Selector, UnknownSelector, build_chart, render_svg, verify_chart
from koc2.cobar import DEFAULT_CELL_LIMIT, Box, BoxError, CellTooLarge, CobarComplex
from koc2.homotopy import Homotopy, verify_notation
from koc2.hopf import HopfAlgebra
from koc2.presentation import EXT_C_A1, EXT_R_E1
from koc2 import registry


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_ENVIRONMENT = 3

DEFAULT_BOX = '-8:26,0:13,-14:30'
DEFAULT_MARGIN = 4

SUITES = ('tables', 'bockstein', 'massey', 'hidden', 'homotopy', 'all')

ALGEBRAS = {'a1': HopfAlgebra.A1, 'e1': HopfAlgebra.E1}

# Pairs of named classes on which multiplicativity of the quotient map is sampled.
QUOTIENT_SAMPLE = ('r', 'h0', 't h1', 't^2 h0', 'a')


class UsageError(Exception):
    """Raised for option combinations argparse cannot reject by itself."""
    pass


class RunConfig(object):
    """Everything a command needs, built once from the parsed options."""

    def __init__(self, box, threads=1, output=None, fixtures=None, cache_dir=None,
                 cell_limit=DEFAULT_CELL_LIMIT):
        if threads < 1:
            raise UsageError('--threads must be at least 1.')
        self.box = box
        self.threads = threads
        self.output = output
        self.fixtures = fixtures
        self.cell_limit = cell_limit
        self.cache = ExtCache(cache_dir) if cache_dir else ExtCache.from_environment()
        self._complexes = {}
        self._registries = {}

    @classmethod
    def from_args(cls, args):
        ranges = args.box.split(',')
        if len(ranges) != 3:
            raise BoxError('--box takes three comma-separated ranges, got {0!r}.'.format(
                args.box))
        box = Box.parse(*ranges, margin=args.margin)
        return cls(box, threads=args.threads, output=args.output, fixtures=args.fixtures,
                   cache_dir=args.cache, cell_limit=args.cell_limit)

    def complex(self, kind, algebra):
        key = (kind, algebra)
        if key not in self._complexes:
            self._complexes[key] = CobarComplex(kind, algebra, self.box, self.cell_limit,
                                                self.cache)
        return self._complexes[key]

    def registry(self, kind, algebra):
        key = (kind, algebra)
        if key not in self._registries:
            self._registries[key] = registry.Registry(self.complex(kind, algebra),
                                                      directory=self.fixtures)
        return self._registries[key]

    def write(self, name, text):
        """Writes an output file, or prints to stdout without an output directory."""
        if self.output is None:
            sys.stdout.write(text + '\n')
            return None
        os.makedirs(self.output, exist_ok=True)
        path = os.path.join(self.output, name)
        with open(path, 'w') as f:
            f.write(text)
            f.write('\n')
        logger.info('Wrote %s', path)
        return path


def cmd_ext(config, kind, algebra):
    complex = config.complex(kind, algebra)
    cells = complex.ext(threads=config.threads)
    records = [ext.record() for degree, ext in sorted(cells.items()) if ext.dim]
    dump = {'base': kind.value, 'algebra': algebra.value,
            'box': {'s': [config.box.s_min, config.box.s_max],
                    'f': [config.box.f_min, config.box.f_max],
                    'w': [config.box.w_min, config.box.w_max]},
            'cells': records}
    config.write('ext-{0}-{1}.json'.format(kind.value, algebra.value),
                 json.dumps(dump, indent=1, sort_keys=True))
    return EXIT_OK


def _tables(config):
    report = registry.Report()
    c2_a1 = config.registry(BaseKind.C2, HopfAlgebra.A1)
    c2_e1 = config.registry(BaseKind.C2, HopfAlgebra.E1)
    report.extend(registry.verify_generators(c2_a1))
    report.extend(registry.verify_generators(c2_e1))
    report.extend(registry.verify_relations(config.registry(BaseKind.R, HopfAlgebra.A1),
                                            config.fixtures))
    report.extend(registry.verify_quotient(c2_a1, c2_e1, config.fixtures))
    report.extend(registry.verify_quotient_products(c2_a1, c2_e1, QUOTIENT_SAMPLE))
    report.extend(registry.verify_presentation(
        config.complex(BaseKind.C, HopfAlgebra.A1), EXT_C_A1))
    report.extend(registry.verify_presentation(
        config.complex(BaseKind.R, HopfAlgebra.E1), EXT_R_E1))
    return report


def _bockstein(config, k_max, length):
    report = registry.Report()
    for algebra in (HopfAlgebra.A1, HopfAlgebra.E1):
        reg = config.registry(BaseKind.C2, algebra)
        bss = BocksteinSpectralSequence(reg.complex)
        report.extend(registry.verify_bockstein(reg, k_max, config.fixtures, bss))
        report.extend(registry.verify_e_infinity(bss))
        if algebra is HopfAlgebra.A1:
            report.extend(registry.verify_rho_towers(bss, length))
    return report


def _massey(config):
    return registry.verify_massey(config.registry(BaseKind.C2, HopfAlgebra.A1),
                                  config.fixtures)


def _hidden(config, k_max):
    report = registry.Report()
    for algebra in (HopfAlgebra.A1, HopfAlgebra.E1):
        report.extend(registry.verify_hidden(config.registry(BaseKind.C2, algebra),
                                             k_max, config.fixtures))
    return report


def _homotopy(config, j_max):
    report = registry.Report()
    reg = config.registry(BaseKind.C2, HopfAlgebra.A1)
    homotopy = Homotopy(reg.complex)
    report.extend(homotopy.verify_torsion_orders(j_max, config.fixtures))
    report.extend(homotopy.verify_tau4_periodicity())
    report.extend(homotopy.verify_adams_collapse())
    for algebra in (HopfAlgebra.A1, HopfAlgebra.E1):
        report.extend(verify_notation(config.registry(BaseKind.C2, algebra),
                                      config.fixtures))
    for mw in (0, 4):
        chart = build_chart(reg.complex, Selector(mw=mw), reg, config.fixtures)
        report.extend(verify_chart(chart, mw, reg, config.fixtures))
    return report


def cmd_verify(config, suite, j_max=12, k_max=2, length=16):
    if suite not in SUITES:
        raise UsageError('Unknown suite {0!r}.'.format(suite))
    selected = SUITES[:-1] if suite == 'all' else (suite,)
    report = registry.Report()
    for name in selected:
        logger.info('Running the %s suite', name)
        if name == 'tables':
            report.extend(_tables(config))
        elif name == 'bockstein':
            report.extend(_bockstein(config, k_max, length))
        elif name == 'massey':
            report.extend(_massey(config))
        elif name == 'hidden':
            report.extend(_hidden(config, k_max))
        elif name == 'homotopy':
            report.extend(_homotopy(config, j_max))
    sys.stdout.write(report.format_table() + '\n')
    if config.output is not None:
        config.write('report-{0}.json'.format(suite), report.to_json())
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_chart(config, kind, algebra, selector):
    selector = selector.validate()
    reg = config.registry(kind, algebra)
    chart = build_chart(reg.complex, selector, reg, config.fixtures)
    if selector.mw is not None:
        stem = 'mw{0}'.format(selector.mw)
    else:
        stem = 'mwmod{0}'.format(selector.mw_mod)
    base = 'chart-{0}-{1}-{2}'.format(kind.value, algebra.value, stem)
    output = config.output or '.'
    os.makedirs(output, exist_ok=True)
    for suffix, text in (('.json', chart.to_json()), ('.svg', render_svg(chart))):
        path = os.path.join(output, base + suffix)
        with open(path, 'w') as f:
            f.write(text)
            f.write('\n')
        logger.info('Wrote %s', path)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--box', metavar='S,F,W', default=DEFAULT_BOX,
                        help='low:high ranges of stem, filtration and weight')
    common.add_argument('--margin', type=int, default=DEFAULT_MARGIN)
    common.add_argument('--threads', type=int, default=1)
    common.add_argument('--output', help='directory for output files')
    common.add_argument('--fixtures', help='directory of fixture files')
    common.add_argument('--cache', help='cache directory (default ${0})'.format(CACHE_ENV))
    common.add_argument('--cell-limit', type=int, default=DEFAULT_CELL_LIMIT)
    common.add_argument('-v', '--verbose', action='count', default=0)

    parser = argparse.ArgumentParser(prog='koc2', description=__doc__.split('\n\n')[0])
    parser.add_argument('--version', action='version', version=__version__)
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    ext = commands.add_parser('ext', parents=[common], help='dump Ext dimensions')
    _base_options(ext)

    verify = commands.add_parser('verify', parents=[common], help='run verification suites')
    verify.add_argument('--suite', choices=SUITES, default='all')
    verify.add_argument('--jmax', type=int, default=12)
    verify.add_argument('--kmax', type=int, default=2)
    verify.add_argument('--tower-length', type=int, default=16)

    chart = commands.add_parser('chart', parents=[common], help='draw an Adams chart')
    _base_options(chart)
    group = chart.add_mutually_exclusive_group(required=True)
    group.add_argument('--mw', type=int)
    group.add_argument('--mw-mod', type=int)
    return parser


def _base_options(parser):
    parser.add_argument('--base', choices=[k.value for k in BaseKind], default='C2')
    parser.add_argument('--algebra', choices=sorted(ALGEBRAS), default='a1')


def configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = RunConfig.from_args(args)
        if args.command == 'ext':
            return cmd_ext(config, BaseKind(args.base), ALGEBRAS[args.algebra])
        if args.command == 'verify':
            return cmd_verify(config, args.suite, args.jmax, args.kmax, args.tower_length)
        return cmd_chart(config, BaseKind(args.base), ALGEBRAS[args.algebra],
                         Selector(args.mw, args.mw_mod))
    except (BoxError, UsageError, UnknownSelector) as e:
        sys.stderr.write('koc2: {0}\n'.format(e))
        return EXIT_USAGE
    except (registry.FixtureError, CellTooLarge, OSError) as e:
        sys.stderr.write('koc2: {0}\n'.format(e))
        return EXIT_ENVIRONMENT
    except MemoryError as e:
        sys.stderr.write('koc2: out of memory, try a smaller --box ({0})\n'.format(e))
        return EXIT_ENVIRONMENT


if __name__ == '__main__':
    sys.exit(main())
