"""
Coefficient collection and exact linear relations.

``collect`` splits an expression by powers of chosen generators (symbols
such as y' or kernels such as exp(-1/y)). ``linear_relations`` finds all
rational combinations of a list of expressions that vanish identically,
which is how every ansatz in the package is solved.

Usage:
    from backend.lamsym.expr.collect import collect, linear_relations

    cmap = collect(a*yp**2 + b*yp + c, [yp])
    cmap[yp**2]                            # a
    linear_relations([y, 2*y, t])          # [(1, -1/2, 0)]
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterator, List, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from ..errors import NotPolynomialInGenerators
from .canonical import RationalSpace, form_of, normalize


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Monomial:
    """Product of generator powers; the empty product is 1."""
    powers: Tuple[Tuple[sympy.Expr, int], ...] = ()

    def to_expr(self) -> sympy.Expr:
        return sympy.Mul(*[g ** k for g, k in self.powers])

    def degree(self, generator) -> int:
        generator = sympy.sympify(generator)
        return sum(k for g, k in self.powers if g == generator)

    def __str__(self) -> str:
        return sympy.sstr(self.to_expr())


@dataclass(frozen=True)
class CoefficientMap:
    """Exact coefficients of an expression by generator monomials.

    Zero coefficients are never stored.
    """
    generators: Tuple[sympy.Expr, ...]
    terms: Tuple[Tuple[Monomial, sympy.Expr], ...]

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return (mon for mon, _ in self.terms)

    def items(self):
        return list(self.terms)

    def values(self) -> List[sympy.Expr]:
        return [c for _, c in self.terms]

    def __getitem__(self, key) -> sympy.Expr:
        if not isinstance(key, Monomial):
            key = sympy.sympify(key)
            for mon, coeff in self.terms:
                if mon.to_expr() == key:
                    return coeff
            raise KeyError(key)
        for mon, coeff in self.terms:
            if mon == key:
                return coeff
        raise KeyError(key)

    def get(self, key, default=None):
        try:
            return self[key]
        except KeyError:
            return default

    def reassemble(self) -> sympy.Expr:
        return normalize(sympy.Add(*[c * mon.to_expr() for mon, c in self.terms]))


def _generator_index(element, generator) -> Tuple[int, int]:
    """(ring index, +1 or -1) for an expression that is one ring generator or its inverse."""
    numer, denom = element.numer, element.denom

    def single(poly):
        if len(poly) != 1:
            return None
        (mon, coeff), = poly.items()
        if coeff != 1 or sum(mon) != 1:
            return None
        return mon.index(1)

    if denom == 1 and single(numer) is not None:
        return single(numer), 1
    if numer == 1 and single(denom) is not None:
        return single(denom), -1
    raise ValueError(f'{generator} is not a polynomial generator')


def collect(e, generators: Sequence) -> CoefficientMap:
    """Coefficients of ``e`` by monomials in ``generators``.

    Negative powers are allowed only when the denominator of ``e`` is a
    monomial in the generators; any other generator dependence of the
    denominator raises NotPolynomialInGenerators.
    """
    generators = tuple(sympy.sympify(g) for g in generators)
    space = RationalSpace([e, *generators])
    element = space.elements[0]
    gen_info = [_generator_index(el, g) for el, g in zip(space.elements[1:], generators)]
    indices = [i for i, _ in gen_info]

    if not element.numer:
        return CoefficientMap(generators, ())

    def split(mon):
        key = tuple(mon[i] for i in indices)
        rest = list(mon)
        for i in indices:
            rest[i] = 0
        return key, tuple(rest)

    shifts = {split(mon)[0] for mon in element.denom.keys()}
    if len(shifts) != 1:
        raise NotPolynomialInGenerators(
            'denominator depends on the collection generators', expr=e,
        )
    shift, = shifts
    ring = space.field.ring
    denom = ring.from_dict({split(mon)[1]: c for mon, c in element.denom.items()})

    groups: Dict[Tuple[int, ...], Dict[tuple, object]] = {}
    for mon, coeff in element.numer.items():
        key, rest = split(mon)
        groups.setdefault(key, {})[rest] = coeff

    terms = []
    for key, poly in groups.items():
        coeff = form_of(space.field.new(ring.from_dict(poly), denom)).to_expr()
        powers = tuple(
            (g, sign * (k - s))
            for g, (_, sign), k, s in zip(generators, gen_info, key, shift)
            if k != s
        )
        terms.append((Monomial(powers), coeff))
    terms.sort(key=lambda item: sympy.default_sort_key(item[0].to_expr()))
    return CoefficientMap(generators, tuple(terms))


# ============================================================================
# LINEAR RELATIONS
# ============================================================================

def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def nullspace_of(elements: Sequence) -> List[Tuple[Fraction, ...]]:
    """Basis of {c : sum c_j e_j = 0} for field elements sharing one field.

    Rows come in reduced echelon form, so each vector's first nonzero entry
    is 1 and the basis is unique.
    """
    n = len(elements)
    if n == 0:
        return []
    common = reduce(lambda a, b: a.lcm(b), (el.denom for el in elements))
    rows: Dict[tuple, int] = {}
    entries: Dict[int, Dict[int, object]] = {}
    for j, el in enumerate(elements):
        if not el.numer:
            continue
        scaled = el.numer * common.exquo(el.denom)
        for mon, coeff in scaled.items():
            i = rows.setdefault(mon, len(rows))
            entries.setdefault(i, {})[j] = coeff
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]

    logger.debug('linear system: %d equations, %d unknowns', len(rows), n)
    matrix = DomainMatrix(entries, (len(rows), n), QQ)
    basis = matrix.nullspace()
    if basis.shape[0] == 0:
        return []
    echelon, _ = basis.rref()
    out = []
    for row in echelon.to_Matrix().tolist():
        if any(row):
            out.append(tuple(_to_fraction(v) for v in row))
    return out


def linear_relations(exprs: Sequence) -> List[Tuple[Fraction, ...]]:
    """All exact rational relations among ``exprs``."""
    space = RationalSpace(list(exprs))
    return nullspace_of(space.elements)
