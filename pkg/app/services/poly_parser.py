"""
Polynomial input language.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | IDENTIFIER | '(' expr ')'

'#' starts a comment running to the end of the line. Division is only by a
nonzero constant, so rational coefficients printed by the engine parse back.
"""

import re

from app.errors import DivisionByZeroError, PolynomialSyntaxError, UnknownVariableError

_SPACE_RE = re.compile(r'\s*')
_TOKEN_RE = re.compile(r'(#[^\n]*)|(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S)')


def tokenize(text):
    tokens = []
    pos = 0
    while True:
        pos = _SPACE_RE.match(text, pos).end()
        if pos >= len(text):
            break
        # a non-space character always starts some token
        m = _TOKEN_RE.match(text, pos)
        comment, number, ident, other = m.groups()
        start = pos
        pos = m.end()
        if comment is not None:
            continue
        if number is not None:
            tokens.append(('int', number, start))
        elif ident is not None:
            tokens.append(('ident', ident, start))
        elif other is not None:
            if other not in '+-*/^()':
                raise PolynomialSyntaxError(f"unexpected character {other!r}", start)
            tokens.append((other, other, start))
    tokens.append(('end', '', len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            where = "end of input" if tok[0] == 'end' else repr(tok[1])
            raise PolynomialSyntaxError(f"expected {kind!r} but found {where}", tok[2])
        return tok

    def parse(self):
        result = self.expr()
        tok = self.peek()
        if tok[0] != 'end':
            raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return result

    def expr(self):
        result = self.term()
        while self.peek()[0] in ('+', '-'):
            op = self.take()[0]
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self):
        result = self.unary()
        while self.peek()[0] in ('*', '/'):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == '*':
                result = result * rhs
            else:
                if not rhs.is_constant():
                    raise PolynomialSyntaxError("division only by constants", pos)
                c = rhs.constant_term()
                if c == 0:
                    raise DivisionByZeroError(f"division by zero at position {pos}")
                result = result.scale(self.ring.field.inv(c))
        return result

    def unary(self):
        kind = self.peek()[0]
        if kind == '-':
            self.take()
            return -self.unary()
        if kind == '+':
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == '^':
            self.take()
            exponent = self.expect('int')
            return base ** int(exponent[1])
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == 'int':
            return self.ring.constant(int(value))
        if kind == 'ident':
            if not self.ring.has(value):
                raise UnknownVariableError(f"unknown variable {value!r} at position {pos}")
            return self.ring.gen(value)
        if kind == '(':
            inner = self.expr()
            self.expect(')')
            return inner
        where = "end of input" if kind == 'end' else repr(value)
        raise PolynomialSyntaxError(f"unexpected {where}", pos)


def parse(text, ring):
    """Parse text into a Polynomial of ring."""
    return _Parser(text, ring).parse()
