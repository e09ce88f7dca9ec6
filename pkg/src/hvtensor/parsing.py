"""Text forms for scalars, generators, Lie elements and module vectors.

Grammar (whitespace-insensitive)::

    expr    := [sign] term (sign term)*
    term    := [coef ['*']] body | coef
    coef    := NUM ['/' NUM] ['i'] | 'i' | '(' scalar ')'
    body    := factor ('*' factor)* ['(x)' bracket] | '(x)' bracket
    factor  := NAME ['^' [-]NUM] | GEN | bracket
    GEN     := 'L[' [-]NUM ']' | 'I[' [-]NUM ']' | 'C1' | 'C2' | 'C3'
    bracket := '[' (('L'|'I') '(' [-]NUM ')')* ['|'] 'v' ']'

A bracket is a word in the generators applied to the highest-weight
vector ``v``; the word is straightened, so its factors may come in any
order. Module families decide which variable names they accept.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Generator, LieElement, C
from .exact import ONE, ZERO, Scalar, format_scalar
from .linalg import add_into


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, expected=()):
        self.pos = pos
        self.expected = set(expected)
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"{message} (at position {pos}; expected one of: {exp})")


_TOKEN = re.compile(
    r"\s*(?:(?P<otimes>\(\s*x\s*\))|(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^()\[\]|]))"
)


@dataclass
class Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Tok]:
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos, {"term"})
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(Tok(kind, m.group(kind), start))
        pos = m.end()
    toks.append(Tok("end", "", len(text)))
    return toks


@dataclass
class Term:
    coeff: Scalar = ONE
    powers: dict = field(default_factory=dict)
    word: list | None = None
    gens: list = field(default_factory=list)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def next(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, kind, text=None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def expect(self, kind, text=None) -> Tok:
        if not self.at(kind, text):
            t = self.tok
            raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos, {text or kind})
        return self.next()

    def signed_int(self) -> int:
        sign = 1
        if self.at("op", "-"):
            self.next()
            sign = -1
        elif self.at("op", "+"):
            self.next()
        return sign * int(self.expect("num").text)

    # -- scalars ----------------------------------------------------------

    def _unsigned_scalar(self) -> Scalar | None:
        """NUM ['/' NUM] ['i'] | 'i' | '(' scalar ')'; None if no scalar starts here."""
        t = self.tok
        if t.kind == "num":
            self.next()
            value = Fraction(int(t.text))
            if self.at("op", "/"):
                self.next()
                den = int(self.expect("num").text)
                if den == 0:
                    raise ParseError("zero denominator", t.pos, {"nonzero integer"})
                value = value / den
            if self.at("name", "i"):
                self.next()
                return Scalar(0, value)
            return Scalar(value)
        if t.kind == "name" and t.text == "i":
            self.next()
            return Scalar(0, 1)
        if t.kind == "op" and t.text == "(":
            self.next()
            s = self.scalar_sum()
            self.expect("op", ")")
            return s
        return None

    def scalar_sum(self) -> Scalar:
        total, first = ZERO, True
        while True:
            sign = 1
            if self.at("op", "+") or self.at("op", "-"):
                sign = -1 if self.next().text == "-" else 1
            elif not first:
                return total
            s = self._unsigned_scalar()
            if s is None:
                raise ParseError("expected a scalar", self.tok.pos, {"number", "i", "("})
            total = total + (s if sign > 0 else -s)
            first = False

    # -- vectors ----------------------------------------------------------

    def bracket(self) -> list:
        self.expect("op", "[")
        word = []
        while True:
            t = self.tok
            if t.kind == "name" and t.text in ("L", "I") and self.toks[self.i + 1].text == "(":
                self.next()
                self.next()
                m = self.signed_int()
                self.expect("op", ")")
                word.append(Generator(t.text, m))
                continue
            if t.kind == "name" and t.text in ("C1", "C2", "C3"):
                self.next()
                word.append(C(int(t.text[1])))
                continue
            break
        if self.at("op", "|"):
            self.next()
        self.expect("name", "v")
        self.expect("op", "]")
        return word

    def factor(self, term: Term) -> None:
        t = self.tok
        if t.kind == "op" and t.text == "[":
            if term.word is not None:
                raise ParseError("only one [ ... | v] factor per term", t.pos, {"+", "-"})
            term.word = self.bracket()
            return
        if t.kind != "name":
            raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos, {"variable", "generator", "["})
        self.next()
        if t.text in ("L", "I") and self.at("op", "["):
            self.next()
            m = self.signed_int()
            self.expect("op", "]")
            term.gens.append(Generator(t.text, m))
            return
        if t.text in ("C1", "C2", "C3"):
            term.gens.append(C(int(t.text[1])))
            return
        e = 1
        if self.at("op", "^"):
            self.next()
            e = self.signed_int()
        term.powers[t.text] = term.powers.get(t.text, 0) + e

    def term(self) -> Term:
        term = Term()
        coeff = self._unsigned_scalar()
        if coeff is not None:
            term.coeff = coeff
            if self.at("op", "*"):
                self.next()
            elif not (self.at("otimes") or self.at("op", "[") or self.at("name")):
                return term
            elif self.at("name", "i"):
                raise ParseError("ambiguous 'i'", self.tok.pos, {"*"})
        if self.at("otimes"):
            self.next()
            term.word = self.bracket()
            return term
        self.factor(term)
        while self.at("op", "*"):
            self.next()
            self.factor(term)
        if self.at("otimes"):
            if term.word is not None:
                raise ParseError("(x) after a [ ... | v] factor", self.tok.pos, {"+", "-"})
            self.next()
            term.word = self.bracket()
        return term

    def expr(self) -> list:
        terms = []
        sign = 1
        if self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.next().text == "-" else 1
        while True:
            t = self.term()
            if sign < 0:
                t.coeff = -t.coeff
            terms.append(t)
            if self.at("op", "+") or self.at("op", "-"):
                sign = -1 if self.next().text == "-" else 1
                continue
            break
        if not self.at("end"):
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos, {"+", "-", "end"})
        return terms


def parse_terms(text: str) -> list:
    return _Parser(text).expr()


def parse_generator(text: str) -> Generator:
    p = _Parser(text)
    term = Term()
    p.factor(term)
    if not p.at("end") or len(term.gens) != 1 or term.powers:
        raise ParseError("expected a single generator like L[-3], I[2] or C1", p.tok.pos,
                         {"L[m]", "I[m]", "C1", "C2", "C3"})
    return term.gens[0]


def parse_lie(text: str) -> LieElement:
    acc: dict = {}
    for t in parse_terms(text):
        if t.powers or t.word is not None or len(t.gens) != 1:
            raise ParseError("Lie terms are coeff*generator", 0, {"L[m]", "I[m]", "C1", "C2", "C3"})
        add_into(acc, t.gens[0], t.coeff)
    return LieElement._wrap(acc)


def parse_vector(text: str, module):
    acc: dict = {}
    for t in parse_terms(text):
        if t.gens:
            raise ParseError("generators are not vector factors", 0, {"variable", "["})
        if not t.coeff and not t.powers and t.word is None:
            continue  # a bare "0" is the zero vector in every family
        v = module.from_term(t.coeff, t.powers, t.word)
        for k, c in v._terms.items():
            add_into(acc, k, c)
    return module.vector_cls._wrap(acc)


def parse_expr(text: str, context):
    """Parse ``text`` as a ``'scalar'``, ``'generator'``, ``'lie'`` or a vector of ``context``."""
    if context == "scalar":
        from .exact import parse_scalar

        return parse_scalar(text)
    if context == "generator":
        return parse_generator(text)
    if context == "lie":
        return parse_lie(text)
    return parse_vector(text, context)


# -- printing ---------------------------------------------------------------


def _coef_text(c: Scalar) -> str:
    s = format_scalar(c)
    if c.re and c.im:
        return f"({s})"
    return s


def format_terms(items, monomial) -> str:
    """Canonical text for ``(key, coeff)`` items, highest key first."""
    parts = []
    for key, c in sorted(items, key=lambda kv: kv[0], reverse=True):
        neg = c.is_negative_like()
        mag = -c if neg else c
        mono = monomial(key)
        if not mono:
            body = _coef_text(mag)
        elif mono.startswith("(x)"):
            body = f"{_coef_text(mag)} {mono}"
        elif mag == 1:
            body = mono
        else:
            body = f"{_coef_text(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts) if parts else "0"
