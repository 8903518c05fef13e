"""Text forms of ring elements.

Lie expressions:   poly := [sign] term ((`+`|`-`) term)*
                   term := INT `*` atom | INT | atom
                   atom := xI | `[` atom (`,` atom)+ `]`
Brackets are left-normed; nested bracket atoms are accepted and flattened by
bilinearity.  A bare integer is only legal when it is 0 (the zero element).

Commutative polynomials:  products of xI(`^`INT)? joined by `*`, summed with
`+`/`-`, with optional integer coefficients; bare integers are constants.

Serialization writes terms greatest-first in the standard order and parses
back to the same element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, SemanticError
from .freemetab import (
    CommPoly,
    Exponents,
    LiePoly,
    LieWord,
    RawAtom,
    RawBracket,
    RawGen,
    free_normal_form,
    mdeg_key,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # int | name | sym | end
    text: str
    line: int
    col: int


_SYMBOLS = set("[],+-*^")


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum()):
                j += 1
            toks.append(_Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            toks.append(_Token("sym", ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(line, col, f"unexpected character {ch!r}")
    toks.append(_Token("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, n: int, text: str):
        self.n = n
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def take(self) -> _Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, sym: str) -> _Token:
        tok = self.peek()
        if tok.kind != "sym" or tok.text != sym:
            raise ParseError(tok.line, tok.col, f"expected {sym!r}")
        return self.take()

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(tok.line, tok.col, message)

    def generator_index(self, tok: _Token) -> int:
        if tok.text[0] != "x" or not tok.text[1:].isdigit():
            raise ParseError(tok.line, tok.col, f"bad generator name {tok.text!r}")
        idx = int(tok.text[1:])
        if not (1 <= idx <= self.n):
            raise SemanticError(
                f"line {tok.line}, column {tok.col}: "
                f"x{idx} out of range for {self.n} vertices"
            )
        return idx

    def sign(self) -> int:
        tok = self.peek()
        if tok.kind == "sym" and tok.text in "+-":
            self.take()
            return 1 if tok.text == "+" else -1
        return 1

    def at_end(self) -> bool:
        return self.peek().kind == "end"

    def expect_end(self) -> None:
        if not self.at_end():
            self.fail("trailing input")

    # Lie expressions -------------------------------------------------------

    def lie_atom(self) -> RawAtom:
        tok = self.peek()
        if tok.kind == "name":
            return RawGen(self.generator_index(self.take()))
        if tok.kind == "sym" and tok.text == "[":
            self.take()
            items = [self.lie_atom()]
            self.expect_sym(",")
            items.append(self.lie_atom())
            while self.peek().kind == "sym" and self.peek().text == ",":
                self.take()
                items.append(self.lie_atom())
            self.expect_sym("]")
            return RawBracket(tuple(items))
        self.fail("expected a generator or '['")

    def lie_term(self, sign: int) -> list[tuple[int, RawAtom]]:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            value = int(tok.text)
            nxt = self.peek()
            if nxt.kind == "sym" and nxt.text == "*":
                self.take()
                return [(sign * value, self.lie_atom())]
            if value != 0:
                raise SemanticError(
                    f"line {tok.line}, column {tok.col}: "
                    "a Lie expression has no nonzero constant term"
                )
            return []
        return [(sign, self.lie_atom())]

    def lie_poly(self) -> list[tuple[int, RawAtom]]:
        terms = self.lie_term(self.sign())
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.text in "+-":
                self.take()
                terms.extend(self.lie_term(1 if tok.text == "+" else -1))
            else:
                break
        self.expect_end()
        return terms

    # commutative polynomials ----------------------------------------------

    def comm_factor(self) -> Exponents:
        tok = self.take()
        if tok.kind != "name":
            raise ParseError(tok.line, tok.col, "expected a variable")
        idx = self.generator_index(tok)
        exp = 1
        nxt = self.peek()
        if nxt.kind == "sym" and nxt.text == "^":
            self.take()
            etok = self.take()
            if etok.kind != "int":
                raise ParseError(etok.line, etok.col, "expected an exponent")
            exp = int(etok.text)
        out = [0] * self.n
        out[idx - 1] = exp
        return tuple(out)

    def comm_term(self, sign: int) -> tuple[Exponents, int]:
        coeff = sign
        exps = (0,) * self.n
        tok = self.peek()
        saw_factor = False
        if tok.kind == "int":
            self.take()
            coeff *= int(tok.text)
            nxt = self.peek()
            if not (nxt.kind == "sym" and nxt.text == "*"):
                return exps, coeff
            self.take()
        while True:
            f = self.comm_factor()
            exps = tuple(a + b for a, b in zip(exps, f))
            saw_factor = True
            nxt = self.peek()
            if nxt.kind == "sym" and nxt.text == "*":
                self.take()
                continue
            break
        assert saw_factor
        return exps, coeff

    def comm_poly(self) -> CommPoly:
        acc: dict[Exponents, int] = {}
        exps, coeff = self.comm_term(self.sign())
        acc[exps] = acc.get(exps, 0) + coeff
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.text in "+-":
                self.take()
                exps, coeff = self.comm_term(1 if tok.text == "+" else -1)
                acc[exps] = acc.get(exps, 0) + coeff
            else:
                break
        self.expect_end()
        return CommPoly(self.n, {e: c for e, c in acc.items() if c})


def parse_lie(n: int, text: str) -> list[tuple[int, RawAtom]]:
    """Parse a Lie expression into raw (coefficient, atom) terms."""
    return _Parser(n, text).lie_poly()


def lie_poly(n: int, text: str) -> LiePoly:
    """Parse and reduce to the free normal form in one step."""
    return free_normal_form(n, parse_lie(n, text))


def parse_comm(n: int, text: str) -> CommPoly:
    return _Parser(n, text).comm_poly()


# ---------------------------------------------------------------------------
# serialization


def format_word(word: LieWord) -> str:
    if len(word) == 1:
        return f"x{word[0]}"
    return "[" + ",".join(f"x{l}" for l in word) + "]"


def format_lie(p: LiePoly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for word, coeff in p.sorted_terms():
        body = format_word(word)
        if abs(coeff) != 1:
            body = f"{abs(coeff)}*{body}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts)


def format_monomial(exps: Exponents) -> str:
    factors = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            factors.append(f"x{i}")
        elif e > 1:
            factors.append(f"x{i}^{e}")
    return "*".join(factors) if factors else "1"


def format_comm(f: CommPoly) -> str:
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for exps, coeff in f.sorted_terms():
        body = format_monomial(exps)
        if body == "1":
            body = str(abs(coeff))
        elif abs(coeff) != 1:
            body = f"{abs(coeff)}*{body}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts)


def format_mdeg(delta: Exponents) -> str:
    return "(" + ",".join(str(d) for d in delta) + ")"
