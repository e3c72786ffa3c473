"""
Unittests for the coefficient rings.
"""

import itertools
import unittest

from koc2 import basering, hopf
from koc2.basering import BaseKind, ONE, RHO, TAU, neg, pos
from koc2.hopf import GammaElement, HopfAlgebra, TAU0, UNIT


class Monomials(unittest.TestCase):
    """Degrees, filtrations and products of coefficient monomials."""

    def test_positive_degree(self):
        """Confirm t^a r^b sits in (-b, -a-b)."""
        self.assertEqual(basering.degree(TAU), (0, -1))
        self.assertEqual(basering.degree(RHO), (-1, -1))
        self.assertEqual(basering.degree(pos(tau=4, rho=2)), (-2, -6))

    def test_negative_degree(self):
        """Confirm g/(r^j t^k) sits in (j, j+k+1)."""
        self.assertEqual(basering.degree(neg(tau=1)), (0, 2))
        self.assertEqual(basering.degree(neg(rho=1, tau=2)), (1, 4))

    def test_filtration(self):
        """Verify the Bockstein filtration is negated on the negative cone."""
        self.assertEqual(basering.filtration(pos(tau=3, rho=2)), 2)
        self.assertEqual(basering.filtration(neg(rho=3, tau=1)), -3)

    def test_invalid_exponents(self):
        """Ensure out-of-range exponents raise an exception."""
        with self.assertRaises(ValueError):
            pos(tau=-1)
        with self.assertRaises(ValueError):
            neg(tau=0)

    def test_positive_product(self):
        """Test exponents add on the positive cone."""
        self.assertEqual(basering.multiply(RHO, TAU, BaseKind.R),
                         frozenset([pos(tau=1, rho=1)]))

    def test_negative_module(self):
        """Verify the positive cone divides into the negative cone."""
        self.assertEqual(basering.times(TAU, neg(tau=2)), neg(tau=1))
        self.assertEqual(basering.times(RHO, neg(rho=2, tau=1)), neg(rho=1, tau=1))

    def test_negative_truncates(self):
        """Confirm products leaving the negative cone vanish."""
        self.assertIsNone(basering.times(TAU, neg(tau=1)))
        self.assertIsNone(basering.times(RHO, neg(tau=3)))

    def test_negative_square_zero(self):
        """Ensure products of two negative-cone monomials vanish."""
        self.assertEqual(basering.multiply(neg(tau=1), neg(tau=2)), frozenset())

    def test_rho_over_complex(self):
        """Verify rho is rejected as a complex coefficient."""
        with self.assertRaises(ValueError):
            basering.multiply(RHO, TAU, BaseKind.C)


class Bidegrees(unittest.TestCase):
    """Tests for basis_in_bidegree."""

    def test_complex(self):
        """Confirm the complex ring only has powers of t."""
        self.assertEqual(basering.basis_in_bidegree(BaseKind.C, 0, -3), pos(tau=3))
        self.assertIsNone(basering.basis_in_bidegree(BaseKind.C, -1, -1))

    def test_real(self):
        """Confirm the real ring has rho in (-1, -1)."""
        self.assertEqual(basering.basis_in_bidegree(BaseKind.R, -1, -1), RHO)
        self.assertIsNone(basering.basis_in_bidegree(BaseKind.R, 0, 2))

    def test_equivariant(self):
        """Verify the negative cone appears only equivariantly."""
        self.assertEqual(basering.basis_in_bidegree(BaseKind.C2, 0, 2), neg(tau=1))
        self.assertEqual(basering.basis_in_bidegree(BaseKind.C2, 2, 4), neg(rho=2, tau=1))
        self.assertIsNone(basering.basis_in_bidegree(BaseKind.C2, 0, 1))

    def test_cone_filter(self):
        """Test the cone argument restricts the search."""
        self.assertIsNone(basering.basis_in_bidegree(BaseKind.C2, 0, 2, basering.POSITIVE))
        self.assertEqual(basering.basis_in_bidegree(BaseKind.C2, 0, 0, basering.POSITIVE),
                         ONE)


class Coaction(unittest.TestCase):
    """Tests for the right unit."""

    def test_unit(self):
        """Confirm the unit is primitive."""
        self.assertEqual(basering.coaction(ONE, HopfAlgebra.A1, BaseKind.R),
                         ((ONE, UNIT),))

    def test_tau(self):
        """Confirm t maps to t + r t0."""
        self.assertEqual(basering.coaction(TAU, HopfAlgebra.A1, BaseKind.R),
                         ((TAU, UNIT), (RHO, TAU0)))

    def test_tau_complex(self):
        """Verify t is primitive over the complex ring."""
        self.assertEqual(basering.coaction(TAU, HopfAlgebra.A1, BaseKind.C),
                         ((TAU, UNIT),))

    def test_rho_primitive(self):
        """Ensure rho is primitive."""
        self.assertEqual(basering.coaction(RHO, HopfAlgebra.E1, BaseKind.R),
                         ((RHO, UNIT),))

    def test_negative_cone(self):
        """Test g/t is primitive and g/(r t) picks up a t0 term."""
        g = neg(tau=1)
        self.assertEqual(basering.coaction(g, HopfAlgebra.A1, BaseKind.C2), ((g, UNIT),))
        terms = basering.coaction(neg(rho=1, tau=1), HopfAlgebra.A1, BaseKind.C2)
        self.assertIn((neg(rho=1, tau=1), UNIT), terms)
        self.assertIn((neg(tau=2), TAU0), terms)


class Rendering(unittest.TestCase):
    """Tests for render and parse."""

    def test_render(self):
        """Confirm the printed forms of a few monomials."""
        self.assertEqual(basering.render(ONE), '1')
        self.assertEqual(basering.render(pos(tau=2, rho=1)), 't^2 r')
        self.assertEqual(basering.render(neg(tau=1)), 'g/t')
        self.assertEqual(basering.render(neg(rho=1, tau=2)), 'g/(r t^2)')

    def test_parse(self):
        """Verify parse inverts render."""
        for m in (ONE, TAU, pos(tau=4), neg(rho=3, tau=6)):
            self.assertEqual(basering.parse(basering.render(m)), m)

    def test_parse_invalid(self):
        """Ensure parse rejects names that are not monomials."""
        with self.assertRaises(ValueError):
            basering.parse('h1')


def cone_monomials():
    """Positive and negative cone monomials of small exponent."""
    positive = [pos(tau=a, rho=b) for a in range(4) for b in range(4)]
    negative = [neg(rho=j, tau=k) for j in range(4) for k in range(1, 5)]
    return positive + negative


def product(x, y, kind=BaseKind.C2):
    if x is None or y is None:
        return None
    return basering.times(x, y, kind)


class RingAxioms(unittest.TestCase):
    """Exhaustive checks of the coefficient ring and its right unit."""

    def test_commutative(self):
        """Confirm products of cone monomials commute."""
        monomials = cone_monomials()
        for x, y in itertools.product(monomials, repeat=2):
            self.assertEqual(product(x, y), product(y, x), (x, y))

    def test_associative(self):
        """Confirm products of cone monomials associate, zero included."""
        monomials = cone_monomials()
        for x, y, z in itertools.product(monomials, repeat=3):
            self.assertEqual(product(product(x, y), z), product(x, product(y, z)),
                             (x, y, z))

    def test_coaction_counit(self):
        """Verify the unit monomial term of the right unit is the coefficient itself."""
        cases = [(m, BaseKind.R) for m in cone_monomials() if m.positive]
        cases += [(m, BaseKind.C2) for m in cone_monomials() if not m.positive]
        for algebra in HopfAlgebra:
            for m, kind in cases:
                terms = basering.coaction(m, algebra, kind)
                self.assertEqual([t for t in terms if t[1] == UNIT], [(m, UNIT)],
                                 (algebra, m))

    def test_coaction_multiplicative(self):
        """Test the right unit is a ring map on the real positive cone."""
        monomials = [m for m in cone_monomials() if m.positive]

        def image(m):
            return GammaElement(HopfAlgebra.A1,
                                basering.coaction(m, HopfAlgebra.A1, BaseKind.R))

        for x, y in itertools.product(monomials, repeat=2):
            self.assertEqual(
                hopf.multiply_gamma(image(x), image(y)),
                image(basering.times(x, y, BaseKind.R)), (x, y))
