"""Text format for homogeneous polynomials.

Grammar (EBNF)::

    poly     = [ sign ] term { sign term } ;
    sign     = "+" | "-" ;
    term     = factor { "*" factor } ;
    factor   = atom [ "^" integer ] ;
    atom     = number | variable | "(" poly ")" ;
    number   = integer [ "/" integer ] ;
    variable = "x" integer | base-variable-name ;

Whitespace is ignored.  Printing lists terms in descending monomial order
with canonical coefficients (reduced fractions over Q, residues in [0, p)
over F_p), so ``parse_poly(format_poly(f)) == f``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .polys import HPoly, InhomogeneousError, poly_add, poly_mul
from .rings import RingContext


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: RingContext):
        self.text = text
        self.ctx = ctx
        self.p = ctx.field.p
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = {name: k for k, name in enumerate(ctx.variable_names)}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, tok[2], self.text)

    def const(self, c) -> dict:
        c = self.ctx.field(c)
        return {self.ctx.ring.one: c} if c else {}

    def poly(self) -> dict:
        out: dict = {}
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        out = poly_add(out, self.term(), self.p, sign)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                out = poly_add(out, self.term(), self.p, -1 if tok[1] == "-" else 1)
            else:
                return out

    def term(self) -> dict:
        out = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            out = poly_mul(out, self.factor(), self.p)
        return out

    def factor(self) -> dict:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                self.error("expected integer exponent", e)
            out = self.const(1)
            for _ in range(e[1]):
                out = poly_mul(out, base, self.p)
            return out
        return base

    def atom(self) -> dict:
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            num = val
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int" or den[1] == 0:
                    self.error("expected nonzero integer denominator", den)
                return self.const(Fraction(num, den[1]))
            return self.const(num)
        if kind == "name":
            k = self.names.get(val)
            if k is None:
                self.error(f"unknown variable {val!r}", tok)
            e = [0] * self.ctx.nvars
            e[k] = 1
            return {tuple(e): self.ctx.field.one}
        if kind == "op" and val == "(":
            inner = self.poly()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.error("expected ')'", close)
            return inner
        self.error("unexpected token" if kind != "end" else "unexpected end of input", tok)

    def parse(self) -> dict:
        out = self.poly()
        if self.peek()[0] != "end":
            self.error("unexpected trailing input")
        return out


def parse_poly(text: str, ctx: RingContext) -> HPoly:
    """Parse a homogeneous polynomial; raises PolySyntaxError / InhomogeneousError."""
    terms = _Parser(text, ctx).parse()
    degs = sorted({ctx.ring.deg(m) for m in terms})
    if len(degs) > 1:
        raise InhomogeneousError(
            f"polynomial {text!r} is not homogeneous in x: degrees {degs[0]} and {degs[-1]}"
        )
    return HPoly._raw(ctx, terms, degs[0] if degs else None)


def _format_monomial(m, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(terms: dict, ctx: RingContext) -> str:
    if not terms:
        return "0"
    names = ctx.variable_names
    items = sorted(terms.items(), key=lambda mc: ctx.ring.mkey(mc[0]), reverse=True)
    out = []
    for m, c in items:
        mono = _format_monomial(m, names)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_poly(f: HPoly) -> str:
    return format_terms(f.terms, f.ctx)
