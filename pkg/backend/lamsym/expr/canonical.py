"""
Canonical form of symbolic expressions.

An expression is brought to a ratio ``content * N / D`` of two primitive
integer polynomials over sorted generators. Generators are the interned
symbols of the expression plus kernel atoms: exponentials, symbolic powers,
logarithms and any other opaque function application. Exponentials and
symbolic powers are split into families by their exponent's monomials,
so exp(t)*exp(-t) cancels to 1 and y^(p+1) becomes y*y^p.

The sympy expression returned by ``normalize`` is rebuilt from that ratio,
so normalizing twice gives the same tree.

Usage:
    from backend.lamsym.expr.canonical import normalize, is_zero

    normalize(y*yp + y*yp)         # 2*y*y'
    is_zero(exp(t)*exp(-t) - 1)    # True
"""

import logging
import math
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ
from sympy.polys.fields import FracField, FracElement
from sympy.polys.orderings import grlex

from ..errors import ZeroDenominator
from .symbols import T


logger = logging.getLogger(__name__)

Monom = Tuple[int, ...]
Terms = Tuple[Tuple[Monom, int], ...]

_INFINITIES = (sympy.S.ComplexInfinity, sympy.S.NaN, sympy.S.Infinity, sympy.S.NegativeInfinity)


# ============================================================================
# KERNEL ATOMS
# ============================================================================

class AtomKind(str, Enum):
    EXP = 'exp'
    POW = 'pow'
    LOG = 'log'
    FUNC = 'func'


@dataclass(frozen=True)
class Atom:
    """A kernel atom standing in as a polynomial generator.

    For EXP the value is exp(key); for POW it is base**key; for LOG it is
    log(base); FUNC atoms carry their value only.
    """
    kind: AtomKind
    symbol: sympy.Dummy
    value: sympy.Expr
    base: sympy.Expr
    key: sympy.Expr
    suspicious: bool
    family: Optional[sympy.Dummy] = None
    scale: int = 1


@dataclass(frozen=True)
class _Family:
    kind: AtomKind
    base: sympy.Expr
    key: sympy.Expr
    suspicious: bool


class AtomRegistry:
    """Process-wide table of kernel atoms, safe for concurrent use.

    EXP and POW atoms are grouped in families sharing a base and an
    exponent monomial ``m``; a family is represented in a given expression
    by the generator value**(m/L) where L is the least common denominator
    of the rational multiples of m that occur.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._protos: Dict[tuple, sympy.Dummy] = {}
        self._families: Dict[sympy.Dummy, _Family] = {}
        self._atoms: Dict[tuple, Atom] = {}
        self._by_symbol: Dict[sympy.Dummy, Atom] = {}

    def proto(self, key: tuple, family: _Family) -> sympy.Dummy:
        with self._lock:
            sym = self._protos.get(key)
            if sym is None:
                sym = sympy.Dummy(f'{family.kind.value}_family')
                self._protos[key] = sym
                self._families[sym] = family
            return sym

    def is_proto(self, sym: sympy.Basic) -> bool:
        with self._lock:
            return sym in self._families

    def generator(self, proto: sympy.Dummy, scale: int) -> Atom:
        with self._lock:
            atom = self._atoms.get((proto, scale))
            if atom is not None:
                return atom
            family = self._families[proto]
            key = family.key / scale
            if family.kind is AtomKind.EXP:
                value = sympy.exp(key)
                name = f'exp({sympy.sstr(key)})'
            else:
                value = sympy.Pow(family.base, key)
                name = f'({sympy.sstr(family.base)})^({sympy.sstr(key)})'
            atom = Atom(family.kind, sympy.Dummy(name), value, family.base, key,
                        family.suspicious, proto, scale)
            self._atoms[(proto, scale)] = atom
            self._by_symbol[atom.symbol] = atom
            return atom

    def simple(self, kind: AtomKind, key: tuple, value: sympy.Expr, base: sympy.Expr) -> Atom:
        with self._lock:
            atom = self._atoms.get((kind, key))
            if atom is None:
                atom = Atom(kind, sympy.Dummy(sympy.sstr(value)), value, base, sympy.S.One, True)
                self._atoms[(kind, key)] = atom
                self._by_symbol[atom.symbol] = atom
            return atom

    def lookup(self, sym: sympy.Basic) -> Optional[Atom]:
        with self._lock:
            return self._by_symbol.get(sym)


ATOMS = AtomRegistry()


def _gen_key(sym: sympy.Symbol):
    return (sym.name, isinstance(sym, sympy.Dummy))


def _grlex_key(mon: Monom):
    return (sum(mon), mon)


def _rational(c: Fraction) -> sympy.Rational:
    return sympy.Rational(c.numerator, c.denominator)


# ============================================================================
# CANONICAL FORM
# ============================================================================

@dataclass(frozen=True)
class RationalForm:
    """``content * numer / denom`` over ``gens``.

    ``numer`` and ``denom`` are primitive integer polynomials given as
    (monomial, coefficient) pairs in descending graded lexicographic order;
    the leading coefficient of ``denom`` is positive. Only generators that
    actually occur are kept, so equal functions have equal forms.
    """
    gens: Tuple[sympy.Symbol, ...]
    content: Fraction
    numer: Terms
    denom: Terms

    @property
    def is_zero(self) -> bool:
        return self.content == 0

    @property
    def is_constant(self) -> bool:
        return not self.gens

    @property
    def denom_is_one(self) -> bool:
        return self.denom == (((0,) * len(self.gens), 1),)

    @property
    def atoms(self) -> List[Atom]:
        found = (ATOMS.lookup(g) for g in self.gens)
        return [a for a in found if a is not None]

    @property
    def suspicious(self) -> bool:
        """True when kernel identities could hide a zero from this form."""
        return any(a.suspicious for a in self.atoms)

    @property
    def shape(self) -> tuple:
        """The form without its rational content."""
        return (self.gens, self.numer, self.denom)

    def value(self, gen: sympy.Symbol) -> sympy.Expr:
        atom = ATOMS.lookup(gen)
        return atom.value if atom is not None else gen

    def monomial_expr(self, mon: Monom) -> sympy.Expr:
        return sympy.Mul(*[self.value(g) ** k for g, k in zip(self.gens, mon) if k])

    def _poly_expr(self, terms: Terms) -> sympy.Expr:
        return sympy.Add(*[sympy.Integer(c) * self.monomial_expr(mon) for mon, c in terms])

    def numer_expr(self) -> sympy.Expr:
        return self._poly_expr(self.numer)

    def denom_expr(self) -> sympy.Expr:
        return self._poly_expr(self.denom)

    def to_expr(self) -> sympy.Expr:
        if self.is_zero:
            return sympy.S.Zero
        return _rational(self.content) * self.numer_expr() / self.denom_expr()


ZERO_FORM = RationalForm((), Fraction(0), (), (((), 1),))


def _primitive(coeffs: Dict[Monom, Fraction]) -> Tuple[Fraction, Dict[Monom, int]]:
    common = math.lcm(*(c.denominator for c in coeffs.values()))
    ints = {mon: int(c * common) for mon, c in coeffs.items()}
    g = math.gcd(*ints.values())
    return Fraction(g, common), {mon: v // g for mon, v in ints.items()}


def _to_fractions(poly) -> Dict[Monom, Fraction]:
    return {
        mon: Fraction(int(c.numerator), int(c.denominator))
        for mon, c in poly.items() if c
    }


def _reduce_scales(gens: List[sympy.Symbol], numer: Dict[Monom, int], denom: Dict[Monom, int]):
    """Replace a family generator value**(m/L) by value**(m*g/L) when every
    exponent of it is a multiple of g."""
    gens = list(gens)
    for i, gen in enumerate(gens):
        atom = ATOMS.lookup(gen)
        if atom is None or atom.family is None or atom.scale == 1:
            continue
        g = math.gcd(atom.scale, *(mon[i] for mon in numer), *(mon[i] for mon in denom))
        if g <= 1:
            continue
        gens[i] = ATOMS.generator(atom.family, atom.scale // g).symbol

        def shrink(terms):
            return {mon[:i] + (mon[i] // g,) + mon[i + 1:]: c for mon, c in terms.items()}

        numer, denom = shrink(numer), shrink(denom)
    return gens, numer, denom


def _assemble(gens: Sequence[sympy.Symbol], content: Fraction,
              numer: Dict[Monom, int], denom: Dict[Monom, int]) -> RationalForm:
    gens, numer, denom = _reduce_scales(list(gens), numer, denom)
    used = [i for i in range(len(gens))
            if any(mon[i] for mon in numer) or any(mon[i] for mon in denom)]
    order = sorted(used, key=lambda i: _gen_key(gens[i]))

    def project(terms):
        out = {tuple(mon[i] for i in order): c for mon, c in terms.items()}
        return tuple(sorted(out.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True))

    n_terms, d_terms = project(numer), project(denom)
    if d_terms[0][1] < 0:
        d_terms = tuple((mon, -c) for mon, c in d_terms)
        content = -content
    return RationalForm(tuple(gens[i] for i in order), content, n_terms, d_terms)


def form_of(element: FracElement) -> RationalForm:
    """Canonical form of a rational function field element."""
    if not element.numer:
        return ZERO_FORM
    nc, numer = _primitive(_to_fractions(element.numer))
    dc, denom = _primitive(_to_fractions(element.denom))
    return _assemble(element.field.symbols, nc / dc, numer, denom)


@lru_cache(maxsize=16384)
def canonical(e) -> RationalForm:
    """Canonical form of ``e``; raises ZeroDenominator on division by zero."""
    space = RationalSpace([e])
    return form_of(space.elements[0])


def normalize(e) -> sympy.Expr:
    """Rebuild ``e`` from its canonical form."""
    return canonical(sympy.sympify(e)).to_expr()


def expr_atoms(e) -> List[Atom]:
    return canonical(sympy.sympify(e)).atoms


# ============================================================================
# SPLITTING KERNELS INTO GENERATORS
# ============================================================================

def _split(e: sympy.Expr) -> sympy.Expr:
    """Rewrite ``e`` over symbols, LOG/FUNC generators and family protos
    raised to rational powers."""
    if e.is_Symbol or e.is_Rational:
        return e
    if e in _INFINITIES:
        raise ZeroDenominator('expression has a zero denominator', expr=e)
    if e is sympy.S.Exp1:
        return _exp_family(sympy.S.One)
    if e.is_Float:
        return sympy.Rational(e)
    if e.is_Add:
        return sympy.Add(*[_split(a) for a in e.args])
    if e.is_Mul:
        return sympy.Mul(*[_split(a) for a in e.args])
    if isinstance(e, sympy.exp):
        return _exp_family(e.args[0])
    if e.is_Pow:
        base, exponent = e.args
        if exponent.is_Integer:
            return _split(base) ** exponent
        return _pow_family(base, exponent)
    if isinstance(e, sympy.log):
        return _log_atom(e.args[0])
    return _func_atom(e)


def _exponent_terms(form: RationalForm) -> Iterable[Tuple[Optional[RationalForm], Fraction]]:
    """Split an exponent into (monomial key, rational multiple) pairs.

    A constant term yields key None.
    """
    den = form.denom_expr()
    for mon, a in form.numer:
        c = form.content * a
        if not any(mon) and form.denom_is_one:
            yield None, c
        else:
            yield canonical(form.monomial_expr(mon) / den), c


def _exp_family(arg: sympy.Expr) -> sympy.Expr:
    form = canonical(arg)
    out = sympy.S.One
    for key, c in _exponent_terms(form):
        key = key or canonical(sympy.S.One)
        family = _Family(AtomKind.EXP, sympy.S.Exp1, key.to_expr(), key.suspicious)
        out *= ATOMS.proto((AtomKind.EXP, key), family) ** _rational(c)
    return out


def _pow_family(base: sympy.Expr, exponent: sympy.Expr) -> sympy.Expr:
    base = normalize(base)
    if base.is_zero or base == 1:
        return _func_atom(sympy.Pow(base, exponent, evaluate=False))
    form = canonical(exponent)
    if form.is_constant and form.content.denominator == 1:
        return _split(base) ** int(form.content)
    base_form = canonical(base)
    out = sympy.S.One
    for key, c in _exponent_terms(form):
        if key is None:
            whole = math.floor(c)
            if whole:
                out *= _split(base) ** whole
            c -= whole
            if not c:
                continue
            key = canonical(sympy.S.One)
            radical = True
        else:
            radical = False
        family = _Family(AtomKind.POW, base, key.to_expr(),
                         radical or key.suspicious or base_form.suspicious)
        out *= ATOMS.proto((AtomKind.POW, base_form, key), family) ** _rational(c)
    return out


def _log_atom(arg: sympy.Expr) -> sympy.Expr:
    arg = normalize(arg)
    if arg == 1:
        return sympy.S.Zero
    if arg.is_Pow and arg.exp.is_Integer:
        return arg.exp * _log_atom(arg.base)
    if arg.is_Rational and arg.is_negative:
        value = sympy.log(arg, evaluate=False)
    else:
        value = sympy.log(arg)
    if not isinstance(value, sympy.log):
        return _split(value)
    return ATOMS.simple(AtomKind.LOG, canonical(arg), value, arg).symbol


def _func_atom(e: sympy.Expr) -> sympy.Expr:
    if e.args and not isinstance(e, sympy.Pow):
        value = e.func(*[normalize(a) for a in e.args])
        if value != e:
            return _split(value)
    else:
        value = e
    return ATOMS.simple(AtomKind.FUNC, value, value, value).symbol


def _unify(split: List[sympy.Expr]) -> List[sympy.Expr]:
    """Trade family protos for generators with one scale per family."""
    denominators: Dict[sympy.Dummy, List[int]] = {}
    powers: Dict[sympy.Dummy, set] = {}
    for expr in split:
        for sym in expr.free_symbols:
            if ATOMS.is_proto(sym):
                denominators.setdefault(sym, [1])
                powers.setdefault(sym, set())
        for node in expr.atoms(sympy.Pow):
            if node.base in denominators:
                denominators[node.base].append(int(node.exp.q))
                powers[node.base].add(node)
    if not denominators:
        return split
    mapping = {}
    for proto, dens in denominators.items():
        scale = math.lcm(*dens)
        gen = ATOMS.generator(proto, scale).symbol
        mapping[proto] = gen ** scale
        for node in powers[proto]:
            mapping[node] = gen ** int(node.exp * scale)
    return [expr.xreplace(mapping) for expr in split]


class RationalSpace:
    """A batch of expressions converted into one rational function field.

    All expressions share generators, so their field elements can be
    combined and compared directly.
    """

    def __init__(self, exprs: Sequence):
        exprs = [sympy.sympify(e) for e in exprs]
        for e in exprs:
            if e.has(*_INFINITIES):
                raise ZeroDenominator('expression has a zero denominator', expr=e)
        unified = _unify([_split(e) for e in exprs])
        symbols = set()
        for e in unified:
            symbols |= e.free_symbols
        self.gens: Tuple[sympy.Symbol, ...] = tuple(sorted(symbols, key=_gen_key)) or (T,)
        self.field = FracField(self.gens, QQ, grlex)
        self.elements: List[FracElement] = [self._convert(e) for e in unified]

    def _convert(self, e: sympy.Expr) -> FracElement:
        try:
            return self.field.from_expr(e)
        except ZeroDivisionError:
            raise ZeroDenominator('expression has a zero denominator', expr=e)

    def to_expr(self, element: FracElement) -> sympy.Expr:
        return form_of(element).to_expr()


# ============================================================================
# ZERO TESTING
# ============================================================================

@dataclass(frozen=True)
class ZeroTest:
    """Verdict of a zero test; ``probabilistic`` marks a sampled decision."""
    value: bool
    probabilistic: bool = False


def zero_test(e) -> ZeroTest:
    form = canonical(sympy.sympify(e))
    if form.is_zero:
        return ZeroTest(True)
    if not form.suspicious:
        return ZeroTest(False)
    from .numeric import sampled_zero
    return sampled_zero(form)


def is_zero(e) -> bool:
    """True iff ``e`` is identically zero."""
    return zero_test(e).value


def equal(a, b) -> bool:
    return is_zero(sympy.sympify(a) - sympy.sympify(b))
