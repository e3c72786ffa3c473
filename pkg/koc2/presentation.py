"""
Monomial counts for graded rings given by generators and leading terms.

A ring is described by polynomial generators with tridegrees and by the
leading monomials of a Groebner basis of its relations. The dimension in
a tridegree is the number of standard monomials there, which gives an
answer independent of any cobar computation.
"""

import itertools
from typing import NamedTuple


class Generator(NamedTuple):
    name: str
    s: int
    f: int
    w: int


class Presentation(object):
    """Generators plus Groebner leading terms (exponent dictionaries)."""

    def __init__(self, title, generators, leading_terms, relations=()):
        self.title = title
        self.generators = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError('Generator names must be distinct.')
        for term in leading_terms:
            for name in term:
                if name not in names:
                    raise ValueError('Unknown generator {0} in a leading term.'.format(name))
        self.leading_terms = tuple(dict(t) for t in leading_terms)
        self.relations = tuple(relations)

    def _standard(self, exponents):
        for term in self.leading_terms:
            if all(exponents.get(name, 0) >= e for name, e in term.items()):
                return False
        return True

    def monomials(self, degree, bound=64):
        """Standard monomials in a tridegree, as exponent dictionaries.

        Generators of filtration zero are searched up to the given exponent
        bound; every generator used here has nonzero stem or weight so the
        search is finite in practice.
        """
        s, f, w = degree
        found = []
        ranges = []
        for g in self.generators:
            if g.f:
                ranges.append(range(f // g.f + 1))
            else:
                ranges.append(range(bound + 1))
        positive = [i for i, g in enumerate(self.generators) if g.f]
        free = [i for i, g in enumerate(self.generators) if not g.f]
        for exps in itertools.product(*(ranges[i] for i in positive)):
            used = sum(e * self.generators[i].f for e, i in zip(exps, positive))
            if used != f:
                continue
            rest_s = s - sum(e * self.generators[i].s for e, i in zip(exps, positive))
            rest_w = w - sum(e * self.generators[i].w for e, i in zip(exps, positive))
            for free_exps in _solve_free([self.generators[i] for i in free],
                                         rest_s, rest_w, bound):
                exponents = {}
                for e, i in zip(exps, positive):
                    if e:
                        exponents[self.generators[i].name] = e
                for e, i in zip(free_exps, free):
                    if e:
                        exponents[self.generators[i].name] = e
                if self._standard(exponents):
                    found.append(exponents)
        return found

    def dimension(self, degree):
        return len(self.monomials(degree))


def _solve_free(generators, s, w, bound):
    """Exponents of filtration-zero generators hitting (s, w) exactly."""
    if not generators:
        if (s, w) == (0, 0):
            yield ()
        return
    head, rest = generators[0], generators[1:]
    for e in range(bound + 1):
        for tail in _solve_free(rest, s - e * head.s, w - e * head.w, bound):
            yield (e,) + tail
        if head.s == 0 and head.w == 0:
            break


# Ext over the complex-motivic A(1):
# F2[t, h0, h1, a, b] / (h0 h1, t h1^3, h1 a, a^2 + h0^2 b).
EXT_C_A1 = Presentation(
    'Ext over complex-motivic A(1)',
    [Generator('t', 0, 0, -1), Generator('h0', 0, 1, 0), Generator('h1', 1, 1, 1),
     Generator('a', 4, 3, 2), Generator('b', 8, 4, 4)],
    [{'h0': 1, 'h1': 1}, {'t': 1, 'h1': 3}, {'h1': 1, 'a': 1}, {'a': 2}],
    ['h0 h1', 't h1^3', 'h1 a', 'a^2 + h0^2 b'])

# Ext over the real-motivic E(1), including the relation r (t^2 h0) = 0.
EXT_R_E1 = Presentation(
    'Ext over real-motivic E(1)',
    [Generator('r', -1, 0, -1), Generator('t4', 0, 0, -4), Generator('h0', 0, 1, 0),
     Generator('t2h0', 0, 1, -2), Generator('v1', 2, 1, 1)],
    [{'r': 1, 'h0': 1}, {'r': 1, 't2h0': 1}, {'r': 3, 'v1': 1}, {'t2h0': 2}],
    ['r h0', 'r t^2 h0', 'r^3 v1', '(t^2 h0)^2 + t^4 h0^2'])
