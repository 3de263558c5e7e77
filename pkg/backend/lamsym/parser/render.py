"""
Deterministic text rendering in the input grammar.

Rendering works from the canonical form, so equal normal forms render to
equal strings and every output parses back to the same expression.

Usage:
    from backend.lamsym.parser import parse_expr, render

    render(parse_expr("t*exp(-1/y) + 4*y'/y + 1"))
"""

from fractions import Fraction
from typing import List, Tuple

import sympy
from sympy.printing.str import StrPrinter

from ..expr.canonical import Atom, AtomKind, ATOMS, RationalForm, canonical, normalize
from ..expr.symbols import SymbolKind, info


def render(e) -> str:
    form = canonical(sympy.sympify(e))
    if form.is_zero:
        return '0'
    if len(form.denom) == 1:
        (dmon, dcoeff), = form.denom
        terms = [
            (form.content * c / dcoeff, tuple(n - d for n, d in zip(mon, dmon)))
            for mon, c in form.numer
        ]
        return _join(form, terms)
    numer = _join(form, [(form.content * c, mon) for mon, c in form.numer])
    denom = _join(form, [(Fraction(c), mon) for mon, c in form.denom])
    return f'({numer})/({denom})'


def _join(form: RationalForm, terms: List[Tuple[Fraction, tuple]]) -> str:
    out = ''
    for coeff, exps in terms:
        text = _term(form, abs(coeff), exps)
        if not out:
            out = ('-' if coeff < 0 else '') + text
        else:
            out += (' - ' if coeff < 0 else ' + ') + text
    return out


def _symbol_text(sym: sympy.Symbol) -> str:
    si = info(sym)
    if si.kind is SymbolKind.ANTIDERIVATIVE:
        return f'Int({render(si.integrand)})'
    return sym.name


def _power(base: str, k: int) -> str:
    return base if k == 1 else f'{base}^{k}'


def _exponent_text(x: sympy.Expr) -> str:
    if x.is_Symbol or (x.is_Integer and x > 0):
        return render(x)
    return f'({render(x)})'


def _base_text(base: sympy.Expr) -> str:
    text = render(base)
    if base.is_Symbol and info(base).kind is not SymbolKind.ANTIDERIVATIVE:
        return text
    if base.is_Integer and base > 0:
        return text
    return f'({text})'


class GrammarPrinter(StrPrinter):
    """Prints the opaque values the canonical form keeps as atoms, such as
    0^p or the imaginary unit, in the input grammar."""

    def _print_Pow(self, expr, rational=False):
        base, exponent = expr.args
        return f'{_base_text(base)}^{_exponent_text(exponent)}'

    def _print_ImaginaryUnit(self, expr):
        return '(-1)^(1/2)'

    def _print_Exp1(self, expr):
        return 'exp(1)'

    def _print_Pi(self, expr):
        # log(-1) = (-1)^(1/2)*pi
        return '(-(-1)^(1/2)*log(-1))'

    def _print_Symbol(self, expr):
        return _symbol_text(expr)


GRAMMAR_PRINTER = GrammarPrinter()


def _term(form: RationalForm, coeff: Fraction, exps: tuple) -> str:
    """Render ``coeff * prod(gen**k)`` with coeff > 0."""
    upper: List[str] = []
    lower: List[str] = []
    exp_arg = sympy.S.Zero
    for gen, k in zip(form.gens, exps):
        if not k:
            continue
        atom: Atom = ATOMS.lookup(gen)
        if atom is None:
            target = upper if k > 0 else lower
            target.append(_power(_symbol_text(gen), abs(k)))
        elif atom.kind is AtomKind.EXP:
            exp_arg += k * atom.key
        elif atom.kind is AtomKind.POW:
            exponent = normalize(k * atom.key)
            upper.append(f'{_base_text(atom.base)}^{_exponent_text(exponent)}')
        elif atom.kind is AtomKind.LOG:
            target = upper if k > 0 else lower
            target.append(_power(f'log({render(atom.base)})', abs(k)))
        else:
            target = upper if k > 0 else lower
            text = GRAMMAR_PRINTER.doprint(atom.value)
            target.append(_power(text if abs(k) == 1 else f'({text})', abs(k)))
    exp_arg = normalize(exp_arg)
    if exp_arg != 0:
        upper.append(f'exp({render(exp_arg)})')

    if coeff.numerator != 1 or not upper:
        upper.insert(0, str(coeff.numerator))
    if coeff.denominator != 1:
        lower.insert(0, str(coeff.denominator))

    text = '*'.join(upper)
    if len(lower) == 1:
        text += '/' + lower[0]
    elif lower:
        text += '/(' + '*'.join(lower) + ')'
    return text
