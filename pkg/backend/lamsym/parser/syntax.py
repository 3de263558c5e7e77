"""
Syntax layer - the Lark grammar in ``lamsym.lark`` driven by an LALR parser.

The parse tree is turned into small AST nodes carrying byte offsets into
the UTF-8 input; ``builder`` turns those into sympy expressions. Every
grammar violation, lexical or syntactic, surfaces as ExprSyntaxError with
the offending byte offset and the tokens that would have been accepted.

Usage:
    from backend.lamsym.parser.syntax import parse_equation

    eq = parse_equation("y'' = -2*y*y' + q(t)*y' + q'(t)*y")
    eq.left          # Name(name="y''", offset=0)
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken

from ..errors import ExprSyntaxError


logger = logging.getLogger(__name__)

GRAMMAR_FILE = 'lamsym.lark'
START_RULES = ('expression', 'equation', 'statements')

END = '$END'
_TERMINAL_TEXT = {'NAME': 'identifier', 'INT': 'integer', END: 'end of input'}
_OPERANDS = frozenset({'NAME', 'INT', 'LPAR'})


# ============================================================================
# AST NODES
# ============================================================================

@dataclass(frozen=True)
class Num:
    value: int
    offset: int


@dataclass(frozen=True)
class Name:
    """Identifier with its prime suffix, e.g. ``y''``."""
    name: str
    offset: int


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple['Node', ...]
    offset: int


@dataclass(frozen=True)
class Neg:
    operand: 'Node'
    offset: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: 'Node'
    right: 'Node'
    offset: int


@dataclass(frozen=True)
class Equation:
    left: 'Node'
    right: 'Node'
    offset: int


Node = Union[Num, Name, Call, Neg, BinOp]


@dataclass(frozen=True)
class Token:
    """A lexeme; ``type`` is the grammar's terminal name."""
    type: str
    text: str
    offset: int


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode('utf-8'))


# ============================================================================
# TREE VISITOR
# ============================================================================

class ExprTreeVisitor(Transformer):
    """Builds AST nodes from the Lark parse tree of ``text``."""

    def __init__(self, text: str):
        super().__init__()
        self.text = text

    def _offset(self, token) -> int:
        return _byte_offset(self.text, token.start_pos)

    def number(self, children) -> Num:
        token, = children
        return Num(int(token), self._offset(token))

    def name(self, children) -> Name:
        token, = children
        return Name(str(token), self._offset(token))

    def call(self, children) -> Call:
        head, *args = children
        return Call(str(head), tuple(args), self._offset(head))

    def neg(self, children) -> Neg:
        operand, = children
        return Neg(operand, operand.offset)

    def _binop(op: str):
        def method(self, children) -> BinOp:
            left, right = children
            return BinOp(op, left, right, left.offset)
        return method

    add = _binop('+')
    sub = _binop('-')
    mul = _binop('*')
    div = _binop('/')
    pow = _binop('^')
    del _binop

    def expression(self, children) -> Node:
        node, = children
        return node

    def equation(self, children) -> Equation:
        left, right = children
        return Equation(left, right, left.offset)

    def statements(self, children) -> List[Equation]:
        return list(children)


# ============================================================================
# PARSER
# ============================================================================

class ExprParser:
    """LALR parser over the grammar file; errors become ExprSyntaxError."""

    def __init__(self):
        self.lark = Lark.open(
            GRAMMAR_FILE,
            rel_to=__file__,
            parser='lalr',
            lexer='basic',
            start=list(START_RULES),
        )

    def parse(self, text: str, start: str):
        try:
            tree = self.lark.parse(text, start=start)
        except UnexpectedInput as exc:
            raise self.syntax_error(exc, text) from None
        return ExprTreeVisitor(text).transform(tree)

    def tokenize(self, text: str) -> List[Token]:
        try:
            return [
                Token(token.type, str(token), _byte_offset(text, token.start_pos))
                for token in self.lark.lex(text)
            ]
        except UnexpectedInput as exc:
            raise self.syntax_error(exc, text) from None

    def describe(self, terminal: str) -> str:
        if terminal in _TERMINAL_TEXT:
            return _TERMINAL_TEXT[terminal]
        try:
            return self.lark.get_terminal(terminal).pattern.value
        except KeyError:
            return terminal

    def expected(self, terminals: Iterable[str]) -> FrozenSet[str]:
        return frozenset(self.describe(t) for t in terminals if not t.startswith('__'))

    def syntax_error(self, exc: UnexpectedInput, text: str) -> ExprSyntaxError:
        """Byte offset, message and expected tokens of a Lark error."""
        last = max(len(text.encode('utf-8')) - 1, 0)
        if isinstance(exc, UnexpectedCharacters):
            offset = _byte_offset(text, exc.pos_in_stream)
            char = text[exc.pos_in_stream] if exc.pos_in_stream < len(text) else ''
            return ExprSyntaxError(f'unexpected character {char!r}', offset, self.expected(exc.allowed or ()))

        if isinstance(exc, UnexpectedToken):
            token = exc.token
            expected = self.expected(exc.expected)
            if token.type == END:
                return ExprSyntaxError('unexpected end of input', last, expected)
            offset = _byte_offset(text, token.start_pos)
            if token.type in _OPERANDS and '*' in expected:
                message = f'implicit multiplication is not allowed before {str(token)!r}'
            else:
                message = f'unexpected {str(token)!r}'
            return ExprSyntaxError(message, offset, expected)

        pos = getattr(exc, 'pos_in_stream', None)
        offset = last if pos is None else min(_byte_offset(text, pos), last)
        logger.debug('unclassified parse error: %s', exc)
        return ExprSyntaxError(str(exc).splitlines()[0], offset)


@lru_cache(maxsize=1)
def get_parser() -> ExprParser:
    return ExprParser()


def tokenize(text: str) -> List[Token]:
    return get_parser().tokenize(text)


def parse_tree(text: str) -> Node:
    """AST of a single expression."""
    return get_parser().parse(text, 'expression')


def parse_equation(text: str) -> Equation:
    return get_parser().parse(text, 'equation')


def parse_statements(text: str) -> List[Equation]:
    """Equations separated by ';', with an optional trailing ';'."""
    return get_parser().parse(text, 'statements')
