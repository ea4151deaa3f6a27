"""
Recursive-descent parser and printer for the function-definition language.

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | atom ("^" int)?
    atom   := number | "x" | ident "(" expr ("," expr)* ")" | "(" expr ")"
    number := int ("/" posint)? | decimal

Negative numbers are written through unary minus or subtraction. Decimal
literals are read as exact rationals (0.25 -> 1/4). An operand that follows "/"
never absorbs a further "/ posint", so x/2/3 is (x/2)/3.
"""
import re
from fractions import Fraction
from typing import List, NamedTuple

from hh_lab.exceptions import ExprSyntaxError
from hh_lab.models.expression import FUNCTION_ARITY, BinOp, Call, Expr, Neg, Num, Pow, Var

TOKEN_PATTERN = re.compile(r'\s*(?:(?P<number>\d+\.\d*|\.\d+|\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))')
ATOM_START = {'number', 'x', 'function', '('}
FACTOR_START = ATOM_START | {'-'}


class Token(NamedTuple):
    kind: str  # number | ident | op | end
    text: str
    offset: int  # byte offset into the source


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode('utf-8'))


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        match = TOKEN_PATTERN.match(text, pos)
        if not match:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExprSyntaxError(f'unexpected character {text[bad]!r}', _byte_offset(text, bad))
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), _byte_offset(text, start)))
        pos = match.end()
    tokens.append(Token('end', '', _byte_offset(text, len(text))))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def _peek_at(self, ahead: int) -> Token:
        idx = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[idx]

    def pop(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != 'end':
            self.pos += 1
        return token

    def _is_op(self, text) -> bool:
        return self.peek.kind == 'op' and self.peek.text == text

    def _expect_op(self, text):
        if not self._is_op(text):
            self._fail({text})
        return self.pop()

    def _fail(self, expected):
        token = self.peek
        found = 'end of input' if token.kind == 'end' else repr(token.text)
        raise ExprSyntaxError(f'unexpected {found}', token.offset, expected)

    def parse(self) -> Expr:
        node = self.expr()
        if self.peek.kind != 'end':
            self._fail({'+', '-', '*', '/', '^', 'end'})
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self._is_op('+') or self._is_op('-'):
            op = self.pop().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self._is_op('*') or self._is_op('/'):
            op = self.pop().text
            node = BinOp(op, node, self.factor(merge=(op != '/')))
        return node

    def factor(self, merge: bool = True) -> Expr:
        if self._is_op('-'):
            self.pop()
            return Neg(self.factor(merge))
        node = self.atom(merge)
        if self._is_op('^'):
            self.pop()
            sign = 1
            if self._is_op('-'):
                self.pop()
                sign = -1
            token = self.peek
            if token.kind != 'number' or not token.text.isdigit():
                self._fail({'int'})
            self.pop()
            node = Pow(node, sign * int(token.text))
        return node

    def atom(self, merge: bool = True) -> Expr:
        token = self.peek
        if token.kind == 'number':
            self.pop()
            if not token.text.isdigit():
                return Num(Fraction(token.text))
            value = Fraction(int(token.text))
            # int "/" posint is a rational literal unless the int is itself a divisor
            nxt, after = self._peek_at(0), self._peek_at(1)
            if merge and nxt.kind == 'op' and nxt.text == '/' and after.kind == 'number' and after.text.isdigit():
                if int(after.text) == 0:
                    raise ExprSyntaxError('zero denominator in rational literal', after.offset, {'posint'})
                self.pop()
                self.pop()
                value = Fraction(int(token.text), int(after.text))
            return Num(value)
        if token.kind == 'ident':
            if token.text == 'x':
                self.pop()
                return Var()
            if token.text not in FUNCTION_ARITY:
                raise ExprSyntaxError(f'unknown identifier {token.text!r}', token.offset,
                                      {'x', *FUNCTION_ARITY.keys()})
            self.pop()
            self._expect_op('(')
            args = [self.expr()]
            while self._is_op(','):
                self.pop()
                args.append(self.expr())
            self._expect_op(')')
            low, high = FUNCTION_ARITY[token.text]
            if len(args) < low or (high is not None and len(args) > high):
                raise ExprSyntaxError(f'{token.text} takes {low if high == low else f"at least {low}"} argument(s), '
                                      f'got {len(args)}', token.offset)
            return Call(token.text, tuple(args))
        if self._is_op('('):
            self.pop()
            node = self.expr()
            self._expect_op(')')
            return node
        self._fail({'-', 'number', 'x', '(', 'function'})


def parse(text: str) -> Expr:
    """Parse function-definition text into an Expr tree."""
    if text is None:
        raise ExprSyntaxError('empty expression', 0, {'-', 'number', 'x', '(', 'function'})
    return _Parser(tokenize(str(text))).parse()


_PRECEDENCE = {'+': 1, '-': 1, '*': 2, '/': 2}
_NEG_PRECEDENCE = 3
_POW_PRECEDENCE = 4
_ATOM_PRECEDENCE = 5


def _precedence(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PRECEDENCE[e.op]
    if isinstance(e, Neg):
        return _NEG_PRECEDENCE
    if isinstance(e, Pow):
        return _POW_PRECEDENCE
    if isinstance(e, Num) and e.value < 0:
        return _NEG_PRECEDENCE
    return _ATOM_PRECEDENCE


def _wrap(e: Expr, needs_parens: bool) -> str:
    text = pretty(e)
    return f'({text})' if needs_parens else text


def pretty(e: Expr) -> str:
    """Canonical text that parses back to the same tree."""
    if isinstance(e, Num):
        value = e.value
        if value < 0:
            return f'-{pretty(Num(-value))}'
        if value.denominator == 1:
            return str(value.numerator)
        return f'{value.numerator}/{value.denominator}'
    if isinstance(e, Var):
        return 'x'
    if isinstance(e, Neg):
        return '-' + _wrap(e.operand, _precedence(e.operand) < _NEG_PRECEDENCE)
    if isinstance(e, Pow):
        base = _wrap(e.base, _precedence(e.base) < _ATOM_PRECEDENCE
                     or (isinstance(e.base, Num) and e.base.value.denominator != 1))
        return f'{base}^{e.exponent}'
    if isinstance(e, Call):
        return f'{e.name}({", ".join(pretty(arg) for arg in e.args)})'
    if isinstance(e, BinOp):
        prec = _PRECEDENCE[e.op]
        left = _wrap(e.left, _precedence(e.left) < prec)
        # a literal right of "/" is parenthesized so an integer left operand cannot absorb it
        right = _wrap(e.right, _precedence(e.right) <= prec or (e.op == '/' and isinstance(e.right, Num)))
        return f'{left} {e.op} {right}'
    raise TypeError(f'not an expression node: {e!r}')
