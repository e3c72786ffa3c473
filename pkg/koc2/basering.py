"""
Coefficient rings of the motivic and equivariant computations.

A coefficient monomial is either a positive-cone monomial t^a r^b or a
negative-cone monomial g/(r^j t^k), stored as a (cone, rho, tau) triple.
The complex coefficients keep only the positive cone with no powers of
rho, the real coefficients keep the whole positive cone, and the
equivariant coefficients add the negative cone, which is square zero and a
module over the positive cone.

Bidegrees are (stem, weight) in the Ext grading: t^a r^b sits in
(-b, -a-b) and g/(r^j t^k) sits in (j, j+k+1).
"""

import enum
import functools
import re
from typing import NamedTuple


class BaseKind(enum.Enum):
    C = 'C'
    R = 'R'
    C2 = 'C2'


POSITIVE = 0
NEGATIVE = 1


class CoefMonomial(NamedTuple):
    cone: int
    rho: int
    tau: int

    @property
    def positive(self):
        return self.cone == POSITIVE

    def __str__(self):
        return render(self)


def pos(tau=0, rho=0):
    """The positive-cone monomial t^tau r^rho."""
    if tau < 0 or rho < 0:
        raise ValueError('Positive-cone exponents must be non-negative.')
    return CoefMonomial(POSITIVE, rho, tau)


def neg(rho=0, tau=1):
    """The negative-cone monomial g/(r^rho t^tau)."""
    if rho < 0 or tau < 1:
        raise ValueError('Negative-cone exponents need rho >= 0 and tau >= 1.')
    return CoefMonomial(NEGATIVE, rho, tau)


ONE = pos()
TAU = pos(tau=1)
RHO = pos(rho=1)


def degree(m):
    """(stem, weight) of a coefficient monomial."""
    if m.cone == POSITIVE:
        return -m.rho, -m.tau - m.rho
    return m.rho, m.rho + m.tau + 1


def filtration(m):
    """Bockstein filtration: the rho exponent, negated on the negative cone."""
    return m.rho if m.cone == POSITIVE else -m.rho


def legal(m, kind):
    if m.cone == NEGATIVE:
        return kind is BaseKind.C2
    return kind is not BaseKind.C or m.rho == 0


def shift(m, rho, tau, kind=BaseKind.C2):
    """Multiply by the Laurent monomial r^rho t^tau.

    Returns None when the product is zero. Negative exponents are only
    meaningful against the negative cone.
    """
    if m.cone == POSITIVE:
        if m.rho + rho < 0 or m.tau + tau < 0:
            raise ValueError('Negative exponent on the positive cone.')
        result = CoefMonomial(POSITIVE, m.rho + rho, m.tau + tau)
    else:
        if m.rho - rho < 0 or m.tau - tau < 1:
            return None
        result = CoefMonomial(NEGATIVE, m.rho - rho, m.tau - tau)
    return result if legal(result, kind) else None


def times(x, y, kind=BaseKind.C2):
    """Product of two monomials, or None when it vanishes."""
    if x.cone == NEGATIVE:
        if y.cone == NEGATIVE:
            return None
        x, y = y, x
    return shift(y, x.rho, x.tau, kind)


def multiply(x, y, kind=BaseKind.C2):
    """Product of two monomials as a coefficient element (a frozenset)."""
    for m in (x, y):
        if not legal(m, kind):
            raise ValueError('{0} is not a coefficient over {1}.'.format(
                render(m), kind.value))
    product = times(x, y, kind)
    return frozenset() if product is None else frozenset([product])


def basis_in_bidegree(kind, s, w, cone=None):
    """The unique monomial in bidegree (s, w), or None.

    cone restricts the search to POSITIVE or NEGATIVE; None allows both.
    """
    if cone in (None, POSITIVE) and s <= 0 and w <= s:
        m = CoefMonomial(POSITIVE, -s, s - w)
        if legal(m, kind):
            return m
    if cone in (None, NEGATIVE) and kind is BaseKind.C2 and s >= 0:
        k = w - s - 1
        if k >= 1:
            return CoefMonomial(NEGATIVE, s, k)
    return None


def odd_binomial(n, k):
    """Parity of n choose k."""
    return 0 <= k <= n and (k & (n - k)) == 0


@functools.lru_cache(maxsize=None)
def coaction(m, algebra, kind):
    """Right unit of a coefficient monomial.

    Returns a sorted tuple of (coefficient, monomial mask) pairs whose sum is
    the image of m. Powers of t0 are rewritten using the relations of the
    given Hopf algebra.
    """
    terms = {}

    def toggle(key):
        if key in terms:
            del terms[key]
        else:
            terms[key] = None

    if m.cone == POSITIVE:
        # (t + r t0)^a r^b
        for i in range(m.tau + 1):
            if not odd_binomial(m.tau, i):
                continue
            for c, mask in algebra.tau0_power(i):
                coef = CoefMonomial(POSITIVE, m.rho + i + c.rho,
                                    m.tau - i + c.tau)
                if legal(coef, kind):
                    toggle((coef, mask))
    else:
        # t^-k expands as a geometric series in (r/t) t0.
        for i in range(m.rho + 1):
            if not odd_binomial(m.tau + i - 1, i):
                continue
            for c, mask in algebra.tau0_power(i):
                coef = shift(m, i + c.rho, c.tau - i, kind)
                if coef is not None:
                    toggle((coef, mask))
    return tuple(sorted(terms, key=lambda t: (t[1], t[0])))


def render(m):
    def power(symbol, n):
        return symbol if n == 1 else '{0}^{1}'.format(symbol, n)

    if m.cone == POSITIVE:
        parts = [power(sym, n) for sym, n in (('t', m.tau), ('r', m.rho)) if n]
        return ' '.join(parts) if parts else '1'
    parts = [power(sym, n) for sym, n in (('r', m.rho), ('t', m.tau)) if n]
    if len(parts) == 1:
        return 'g/' + parts[0]
    return 'g/({0})'.format(' '.join(parts))


_FACTOR = re.compile(r'^([tr])(?:\^(\d+))?$')


def parse(text):
    """Inverse of render; raises ValueError on anything else."""
    text = text.strip()
    if text == '1':
        return ONE
    cone = POSITIVE
    if text.startswith('g/'):
        cone = NEGATIVE
        text = text[2:]
        if text.startswith('(') and text.endswith(')'):
            text = text[1:-1]
    exponents = {'t': 0, 'r': 0}
    for factor in text.split():
        match = _FACTOR.match(factor)
        if match is None:
            raise ValueError('Not a coefficient monomial: {0}'.format(text))
        symbol, exponent = match.groups()
        exponents[symbol] += int(exponent) if exponent else 1
    if cone == POSITIVE:
        return pos(tau=exponents['t'], rho=exponents['r'])
    return neg(rho=exponents['r'], tau=exponents['t'])
