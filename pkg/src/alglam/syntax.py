"""Concrete syntax: ``(M) N``, ``a.M``, ``M + N``, ``\\x.M``, ``0``.

Grammar::

    term   := sum
    sum    := smul ( ('+' | '-') smul )*        -- left-associative; M - N is M + (-1).N
    smul   := ( scalar '.' )* appl
    appl   := atom+                           -- left-associative application
    atom   := '0' | ident | ('\\' | 'λ') ident '.' term | '(' term ')'
    scalar := ['-'] digits ['/' digits] | '(' scalar ')'
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import ScalarDomain, ScalarDomainError, format_scalar
from .terms import (APP_TAG, LAM_TAG, SMUL_TAG, VAR_TAG, ZERO, ZERO_TAG, App, Lam, Smul, Sum, Term,
                    Var)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<ident>[^\W\dλ][^\Wλ]*)|(?P<sym>[()\\λ.+\-/])|(?P<bad>.)",
    re.UNICODE,
)


def _tokenize(src: str):
    tokens = []
    line, line_start = 1, 0
    for m in _TOKEN.finditer(src):
        kind = m.lastgroup
        text = m.group()
        col = m.start() - line_start + 1
        if kind == "ws":
            for i, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = m.start() + i + 1
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {text!r}", line, col)
        if kind == "sym" and text == "λ":
            text = "\\"
        tokens.append((kind, text, line, col))
    tokens.append(("eof", "", line, len(src) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, src: str, domain: ScalarDomain):
        self.toks = _tokenize(src)
        self.i = 0
        self.domain = domain

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], tok[3])

    def expect(self, text: str):
        tok = self.peek()
        if tok[1] != text or tok[0] == "eof":
            self.fail(f"expected {text!r}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def parse(self) -> Term:
        t = self.term()
        if self.peek()[0] != "eof":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return t

    def term(self) -> Term:
        t = self.smul()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "sym":
            op = self.peek()[1]
            self.i += 1
            rhs = self.smul()
            t = Sum(t, rhs if op == "+" else self.make_smul(Fraction(-1), rhs, self.peek()))
        return t

    def scalar_length(self, k: int = 0) -> int:
        """Tokens spanned by a scalar literal starting at offset ``k``, or 0."""
        tok = self.peek(k)
        if tok[1] == "(":
            inner = self.scalar_length(k + 1)
            if inner and self.peek(k + 1 + inner)[1] == ")":
                return inner + 2
            return 0
        n = 0
        if tok[1] == "-":
            n = 1
        if self.peek(k + n)[0] != "num":
            return 0
        n += 1
        if self.peek(k + n)[1] == "/" and self.peek(k + n + 1)[0] == "num":
            n += 2
        return n

    def starts_scalar_prefix(self) -> bool:
        n = self.scalar_length()
        return n > 0 and self.peek(n)[1] == "."

    def read_scalar(self) -> Fraction:
        tok = self.peek()
        if tok[1] == "(":
            self.i += 1
            value = self.read_scalar()
            self.expect(")")
            return value
        sign = 1
        if tok[1] == "-":
            sign = -1
            self.i += 1
        num = int(self.peek()[1])
        self.i += 1
        den = 1
        if self.peek()[1] == "/":
            self.i += 1
            den = int(self.peek()[1])
            if den == 0:
                self.fail("zero denominator")
            self.i += 1
        return Fraction(sign * num, den)

    def make_smul(self, value: Fraction, body: Term, tok) -> Term:
        try:
            return Smul(value, body, self.domain)
        except ScalarDomainError as e:
            raise ParseError(str(e), tok[2], tok[3]) from None

    def smul(self) -> Term:
        prefixes = []
        while self.starts_scalar_prefix():
            tok = self.peek()
            prefixes.append((self.read_scalar(), tok))
            self.expect(".")
        t = self.appl()
        for value, tok in reversed(prefixes):
            t = self.make_smul(value, t, tok)
        return t

    def starts_atom(self) -> bool:
        kind, text, _, _ = self.peek()
        if kind == "ident" or text == "\\":
            return True
        if kind == "num":
            return text == "0" and self.peek(1)[1] != "."
        if text == "(":
            return not self.starts_scalar_prefix()
        return False

    def appl(self) -> Term:
        if not self.starts_atom():
            tok = self.peek()
            self.fail(f"expected a term, found {tok[1] or 'end of input'!r}")
        t = self.atom()
        while self.starts_atom():
            t = App(t, self.atom())
        return t

    def atom(self) -> Term:
        kind, text, _, _ = tok = self.peek()
        if kind == "ident":
            self.i += 1
            return Var(text)
        if kind == "num":
            if text != "0":
                self.fail(f"bare number {text!r} is not a term (did you mean {text}.M?)")
            self.i += 1
            return ZERO
        if text == "\\":
            self.i += 1
            name = self.peek()
            if name[0] != "ident":
                self.fail("expected a binder name after lambda")
            self.i += 1
            self.expect(".")
            return Lam(name[1], self.term())
        if text == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        self.fail(f"unexpected {text or 'end of input'!r}", tok)


def parse(src: str, domain: ScalarDomain = ScalarDomain.RING) -> Term:
    return _Parser(src, domain).parse()


# -- printing -----------------------------------------------------------------

_SUM, _SMUL, _APP = 0, 1, 2


def pretty(t: Term, unicode: bool = False) -> str:
    lam_sym = "λ" if unicode else "\\"
    out = []

    def emit(u: Term, level: int, tail: bool):
        # tail: nothing follows this term in its enclosing group, so a
        # lambda body may extend to the right without parentheses
        tag = u.tag
        if tag == ZERO_TAG:
            out.append("0")
        elif tag == VAR_TAG:
            out.append(u.name)
        elif tag == LAM_TAG:
            if not tail:
                out.append("(")
            out.append(f"{lam_sym}{u.binder}.")
            emit(u.body, _SUM, True)
            if not tail:
                out.append(")")
        elif tag == APP_TAG:
            out.append("(")
            emit(u.fun, _SUM, True)
            out.append(") ")
            arg = u.arg
            if arg.tag in (ZERO_TAG, VAR_TAG) or (arg.tag == LAM_TAG and tail):
                emit(arg, _APP, tail)
            else:
                out.append("(")
                emit(arg, _SUM, True)
                out.append(")")
        elif tag == SMUL_TAG:
            wrap = level > _SMUL
            if wrap:
                out.append("(")
            out.append(format_scalar(u.coeff) + ".")
            emit(u.body, _SMUL, tail or wrap)
            if wrap:
                out.append(")")
        else:
            wrap = level > _SUM
            if wrap:
                out.append("(")
            emit(u.left, _SUM, False)
            out.append(" + ")
            emit(u.right, _SMUL, tail or wrap)
            if wrap:
                out.append(")")

    emit(t, _SUM, True)
    return "".join(out)
