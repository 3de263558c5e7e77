"""
AST visitor that builds symbolic expressions.
"""

import re

import sympy

from ..errors import ExprSyntaxError, SymbolKindConflict
from ..expr.symbols import BUILTIN_NAMES, INDEPENDENT_NAME, T, antiderivative, coordinate, function
from .syntax import BinOp, Call, Equation, Name, Neg, Node, Num


_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)('*)$")


class ExprVisitor:
    """Dispatch on node class name, ``visit_<Class>``."""

    def visit(self, node):
        method = getattr(self, f'visit_{type(node).__name__}', None)
        if method is None:
            raise TypeError(f'no visitor for {type(node).__name__}')
        return method(node)


class ExprBuilder(ExprVisitor):
    """Builds an unnormalized sympy expression from a parse tree."""

    def visit_Num(self, node: Num) -> sympy.Expr:
        return sympy.Integer(node.value)

    def visit_Neg(self, node: Neg) -> sympy.Expr:
        return -self.visit(node.operand)

    def visit_BinOp(self, node: BinOp) -> sympy.Expr:
        left, right = self.visit(node.left), self.visit(node.right)
        if node.op == '+':
            return left + right
        if node.op == '-':
            return left - right
        if node.op == '*':
            return left * right
        if node.op == '/':
            return left / right
        if left.is_Number and left.is_negative and right.is_Rational and not right.is_Integer:
            # keep (-1)^(1/2) as a power instead of the imaginary unit
            return sympy.Pow(left, right, evaluate=False)
        return sympy.Pow(left, right)

    def visit_Name(self, node: Name) -> sympy.Expr:
        base, primes = _NAME_RE.match(node.name).groups()
        if base in BUILTIN_NAMES:
            raise ExprSyntaxError(f"'{base}' must be applied to an argument", node.offset, {'('})
        if base == INDEPENDENT_NAME:
            if primes:
                raise SymbolKindConflict("the independent variable has no derivatives", name=node.name)
            return T
        if primes:
            return coordinate(base, len(primes))
        return sympy.Symbol(base)

    def visit_Call(self, node: Call) -> sympy.Expr:
        base, primes = _NAME_RE.match(node.func).groups()
        if len(node.args) != 1:
            raise ExprSyntaxError(
                f"'{node.func}' takes exactly one argument, got {len(node.args)}",
                node.offset,
                {')'},
            )
        arg, = node.args
        if base in BUILTIN_NAMES and not primes:
            value = self.visit(arg)
            if base == 'exp':
                return sympy.exp(value)
            if base == 'log':
                return sympy.log(value, evaluate=False)
            return antiderivative(value)
        if not (isinstance(arg, Name) and arg.name == INDEPENDENT_NAME):
            raise ExprSyntaxError(
                f"arbitrary function '{node.func}' must be applied to t",
                getattr(arg, 'offset', node.offset),
                {INDEPENDENT_NAME},
            )
        return function(base, len(primes))

    def visit_Equation(self, node: Equation) -> sympy.Expr:
        return self.visit(node.left) - self.visit(node.right)


def build(node: Node) -> sympy.Expr:
    return ExprBuilder().visit(node)
