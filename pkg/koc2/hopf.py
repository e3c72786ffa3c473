"""
Dual Hopf algebroids of the subalgebras A(1) and E(1).

Monomials in t0, t1 and x1 (exterior in t1 and x1) are encoded as bit
masks. Coefficients always stand on the left of a monomial; moving a
coefficient leftwards across a monomial goes through the right unit.
"""

import enum
import functools

from koc2 import basering
from koc2.basering import BaseKind, ONE, pos


UNIT = 0
TAU0 = 1
TAU1 = 2
XI1 = 4

# (internal degree, weight) of each generator.
GENERATOR_DEGREES = {
    TAU0: (1, 0),
    TAU1: (3, 1),
    XI1: (2, 1),
}

GENERATOR_NAMES = {
    TAU0: 't0',
    TAU1: 't1',
    XI1: 'x1',
}


class AlgebraMismatch(ValueError):
    """Raised if elements of different Hopf algebras are combined."""
    pass


def lex_key(mask):
    """Sort key ordering monomials lexicographically on (e0, e1, e2)."""
    return (mask & TAU0, (mask & TAU1) >> 1, (mask & XI1) >> 2)


def monomial_degree(mask):
    t = w = 0
    for gen, (gt, gw) in GENERATOR_DEGREES.items():
        if mask & gen:
            t += gt
            w += gw
    return t, w


def render_monomial(mask):
    if mask == UNIT:
        return '1'
    return ' '.join(GENERATOR_NAMES[g] for g in (TAU0, TAU1, XI1) if mask & g)


def _toggle(terms, key):
    if key in terms:
        del terms[key]
    else:
        terms[key] = None


class HopfAlgebra(enum.Enum):
    A1 = 'A1'
    E1 = 'E1'

    @property
    def generators(self):
        if self is HopfAlgebra.A1:
            return (TAU0, TAU1, XI1)
        return (TAU0, TAU1)

    @property
    def basis(self):
        """All monomials, unit first, in lexicographic order."""
        full = TAU0 | TAU1 | (XI1 if self is HopfAlgebra.A1 else 0)
        masks = [m for m in range(8) if m & ~full == 0]
        return tuple(sorted(masks, key=lex_key))

    @property
    def coideal(self):
        return self.basis[1:]

    @property
    def max_degree(self):
        """Largest internal degree and weight of a single monomial."""
        return monomial_degree(self.basis[-1])

    def contains(self, mask):
        return mask in self.basis

    @functools.lru_cache(maxsize=None)
    def tau0_square(self):
        if self is HopfAlgebra.A1:
            # t0^2 = r t1 + t x1 + r t0 x1
            return ((pos(rho=1), TAU1), (pos(tau=1), XI1), (pos(rho=1), TAU0 | XI1))
        return ((pos(rho=1), TAU1),)

    @functools.lru_cache(maxsize=None)
    def tau0_power(self, i):
        """Normal form of t0^i as (coefficient, monomial) pairs."""
        if i == 0:
            return ((ONE, UNIT),)
        if i == 1:
            return ((ONE, TAU0),)
        terms = {}
        for c, m in self.tau0_power(i - 1):
            for e, q in self.product(m, TAU0):
                _toggle(terms, (basering.times(c, e, BaseKind.R), q))
        return tuple(sorted(terms, key=lambda t: (lex_key(t[1]), t[0])))

    @functools.lru_cache(maxsize=None)
    def product(self, m1, m2):
        """Normal form of the product of two monomials."""
        overlap = m1 & m2
        if overlap & (TAU1 | XI1):
            return ()
        if not overlap:
            return ((ONE, m1 | m2),)
        rest = (m1 | m2) & ~TAU0
        out = []
        for c, m in self.tau0_square():
            if rest & m & (TAU1 | XI1):
                continue
            out.append((c, rest | m))
        return tuple(out)

    @functools.lru_cache(maxsize=None)
    def coproduct(self, mask):
        """Coproduct of a monomial as (coefficient, left, right) triples."""
        result = {(ONE, UNIT, UNIT): None}
        for gen in self.generators:
            if mask & gen:
                result = _tensor_product(self, result, _generator_coproduct(self, gen))
        return tuple(sorted(result, key=lambda t: (lex_key(t[1]), lex_key(t[2]), t[0])))

    @functools.lru_cache(maxsize=None)
    def reduced_coproduct(self, mask):
        """Coproduct with the two primitive terms removed."""
        if mask == UNIT:
            raise ValueError('The unit has no reduced coproduct.')
        return tuple(t for t in self.coproduct(mask)
                     if t not in ((ONE, mask, UNIT), (ONE, UNIT, mask)))


def _generator_coproduct(algebra, gen):
    terms = {(ONE, gen, UNIT): None, (ONE, UNIT, gen): None}
    if gen == TAU1 and algebra is HopfAlgebra.A1:
        terms[(ONE, XI1, TAU0)] = None
    return terms


def _tensor_product(algebra, x, y):
    """Product in the tensor square, renormalised with coefficients on the left."""
    out = {}
    for c1, a, b in x:
        for c2, c, d in y:
            coef = basering.times(c1, c2, BaseKind.R)
            for e, p in algebra.product(a, c):
                left_coef = basering.times(coef, e, BaseKind.R)
                for e2, q in algebra.product(b, d):
                    # e2 stands between the slots and moves left through p.
                    for f, n in basering.coaction(e2, algebra, BaseKind.R):
                        for g, p2 in algebra.product(p, n):
                            total = basering.times(
                                basering.times(left_coef, f, BaseKind.R), g, BaseKind.R)
                            _toggle(out, (total, p2, q))
    return out


class GammaElement(object):
    """A sum of coefficient-times-monomial terms in one Hopf algebroid."""

    def __init__(self, algebra, terms=()):
        for c, m in terms:
            if not algebra.contains(m):
                raise AlgebraMismatch('{0} is not a monomial of {1}.'.format(
                    render_monomial(m), algebra.value))
            if not c.positive:
                raise ValueError('Hopf algebroid coefficients are positive-cone.')
        self.algebra = algebra
        self.terms = frozenset(terms)

    def __eq__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.algebra, self.terms))

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for c, m in sorted(self.terms, key=lambda t: (lex_key(t[1]), t[0])):
            if c == ONE:
                parts.append(render_monomial(m))
            elif m == UNIT:
                parts.append(basering.render(c))
            else:
                parts.append('{0} {1}'.format(basering.render(c), render_monomial(m)))
        return ' + '.join(parts)


def multiply_gamma(x, y, kind=BaseKind.R):
    if x.algebra is not y.algebra:
        raise AlgebraMismatch('Cannot multiply {0} by {1} elements.'.format(
            x.algebra.value, y.algebra.value))
    out = {}
    for c1, m1 in x.terms:
        for c2, m2 in y.terms:
            coef = basering.times(c1, c2, kind)
            if coef is None:
                continue
            for e, q in x.algebra.product(m1, m2):
                total = basering.times(coef, e, kind)
                if total is not None:
                    _toggle(out, (total, q))
    return GammaElement(x.algebra, out)


def quotient_to_e1(x):
    """Image under the quotient sending x1 to zero."""
    if x.algebra is not HopfAlgebra.A1:
        raise AlgebraMismatch('The quotient map starts from A1.')
    return GammaElement(HopfAlgebra.E1,
                        [(c, m) for c, m in x.terms if not m & XI1])


@functools.lru_cache(maxsize=None)
def _normalize(slots, pending, algebra, kind):
    # slots: tuple of (coefficient or None, mask); pending: coefficient to
    # the right of the last slot. Returns (leading coefficient, masks) pairs.
    if not slots:
        return ((ONE if pending is None else pending, ()),)
    head, (c, m) = slots[:-1], slots[-1]
    inner = {}
    if pending is None or pending == ONE:
        inner[(ONE if c is None else c, m)] = None
    else:
        for p, n in basering.coaction(pending, algebra, kind):
            lead = p if c is None else basering.times(c, p, kind)
            if lead is None:
                continue
            for e, q in algebra.product(m, n):
                coef = basering.times(lead, e, kind)
                if coef is not None:
                    _toggle(inner, (coef, q))
    out = {}
    for coef, q in inner:
        for lead, masks in _normalize(head, coef, algebra, kind):
            _toggle(out, (lead, masks + (q,)))
    return tuple(sorted(out, key=lambda t: (tuple(lex_key(m) for m in t[1]), t[0])))


def pull_left(coef, slots, algebra, kind, trailing=None):
    """Normalise a tensor word with coefficients inside it.

    coef multiplies the module slot, slots is a sequence of (coefficient,
    monomial) pairs with None for a unit coefficient, and trailing is an
    optional coefficient to the right of the last slot. Returns a tuple of
    (coefficient, masks) pairs with all coefficients moved to the far left.
    """
    out = {}
    for lead, masks in _normalize(tuple(slots), trailing, algebra, kind):
        total = basering.times(coef, lead, kind)
        if total is not None:
            _toggle(out, (total, masks))
    return tuple(out)
