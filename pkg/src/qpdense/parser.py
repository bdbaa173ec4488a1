"""Form expression grammar and the canonical printer.

Grammar: variables x0..x15 (aliases x, y, z, w for x0..x3), integer
literals, operators + - * ^ and parentheses.  ^ binds tightest, then *,
then + and -; exponents are non-negative integer literals; juxtaposition
is not multiplication.  Parsed input must be homogeneous.
"""

from __future__ import annotations

from .errors import NonHomogeneousError, ParseError, QpdenseError
from .forms import IntegralForm, TermDict, _dict_add, _dict_mul, _dict_pow

MAX_VARS = 16
_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}


def _var_index(name: str, pos: int) -> int:
    if name in _ALIASES:
        return _ALIASES[name]
    if name.startswith("x") and name[1:].isdigit():
        idx = int(name[1:])
        if idx >= MAX_VARS:
            raise ParseError(f"variable {name} exceeds the x0..x15 range", pos)
        return idx
    raise ParseError(f"unknown variable '{name}'", pos)


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum()):
                j += 1
            tokens.append(_Token("var", text[i:j], i))
            i = j
            continue
        if ch in "+-*^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", None, n))
    return tokens


class _Parser:
    """Recursive descent over the token list, building exponent-dict polys."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.n_vars = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.take()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.kind!r}", tok.pos)
        return tok

    def parse(self) -> TermDict:
        poly = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.kind!r}", tok.pos)
        return poly

    def expr(self) -> TermDict:
        acc = self.term()
        while self.peek().kind in "+-":
            op = self.take().kind
            rhs = self.term()
            if op == "-":
                rhs = {e: -c for e, c in rhs.items()}
            acc = _dict_add(acc, rhs)
        return acc

    def term(self) -> TermDict:
        acc = self.factor()
        while self.peek().kind == "*":
            self.take()
            acc = _dict_mul(acc, self.factor())
        return acc

    def factor(self) -> TermDict:
        sign = 1
        while self.peek().kind in "+-":
            if self.take().kind == "-":
                sign = -sign
        base = self.atom()
        if self.peek().kind == "^":
            pos = self.take().pos
            exp_tok = self.peek()
            if exp_tok.kind != "int":
                raise ParseError("exponent must be an integer literal", pos)
            self.take()
            base = _dict_pow(base, exp_tok.value, MAX_VARS)
        if sign == -1:
            base = {e: -c for e, c in base.items()}
        return base

    def atom(self) -> TermDict:
        tok = self.take()
        if tok.kind == "int":
            return {(0,) * MAX_VARS: tok.value} if tok.value else {}
        if tok.kind == "var":
            idx = _var_index(tok.value, tok.pos)
            self.n_vars = max(self.n_vars, idx + 1)
            e = [0] * MAX_VARS
            e[idx] = 1
            return {tuple(e): 1}
        if tok.kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {tok.kind!r}", tok.pos)


def _format_monomial(exps, n_vars: int) -> str:
    parts = []
    for i in range(n_vars):
        e = exps[i]
        if e == 0:
            continue
        parts.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def parse_polynomial(text: str) -> tuple[TermDict, int]:
    """Parse to a raw exponent dict (16-wide keys) plus the inferred n_vars.

    No homogeneity requirement; used by the spectrum path for univariate
    polynomials as well as by parse_form.
    """
    parser = _Parser(text)
    poly = parser.parse()
    n_vars = max(parser.n_vars, 1)
    trimmed = {e[:n_vars]: c for e, c in poly.items() if c}
    return trimmed, n_vars


def parse_form(text: str) -> IntegralForm:
    """Parse, expand and validate a homogeneous form expression."""
    terms, n_vars = parse_polynomial(text)
    if not terms:
        raise QpdenseError("the zero polynomial is not an acceptable form input")
    degrees: dict[int, tuple] = {}
    for e in terms:
        degrees.setdefault(sum(e), e)
        if len(degrees) > 1:
            (d1, m1), (d2, m2) = sorted(degrees.items())[:2]
            raise NonHomogeneousError(
                _format_monomial(m1, n_vars), d1, _format_monomial(m2, n_vars), d2
            )
    degree = next(iter(degrees))
    return IntegralForm(n_vars, degree, terms)


def format_form(form: IntegralForm) -> str:
    """Canonical printer: descending graded-lex monomials, explicit '*'.

    parse_form(format_form(F)) == F.
    """
    if form.is_zero:
        return "0"
    parts = []
    for exps, coeff in form.sorted_terms():
        mono = _format_monomial(exps, form.n_vars)
        mag = abs(coeff)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def format_unipoly(coeffs) -> str:
    """Printer for univariate integer polynomials in the same grammar."""
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            xs = "x" if e == 1 else f"x^{e}"
            body = xs if mag == 1 else f"{mag}*{xs}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"
