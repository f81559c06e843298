"""Formula ASTs for the first-order relevant language and their ASCII surface syntax.

Grammar (loosest to tightest)::

    formula  := iff
    iff      := imp ('<->' iff)?          -- desugared to (A -> B) & (B -> A)
    imp      := or ('->' imp)?            -- right associative
    or       := and ('|' and)*
    and      := unary ('&' unary)*
    unary    := '~' unary | quant | primary
    quant    := ('forall' | 'exists') var (',' var)* '.' body
    primary  := 'bot' | 'top' | 'Pn(' term ')' | term ('<' | '=') term ('<' term)* | '(' formula ')'

A quantifier body extends as far right as the slot the quantifier sits in
allows: ``forall x. A -> B`` at top level binds the whole implication, while
``~ exists x. A & B`` negates only ``exists x. A``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "Var", "Zero", "One", "Plus", "Times", "Neg", "Inv", "Term",
    "Bot", "Top", "Less", "Equal", "Pred", "And", "Or", "Not", "Imp",
    "Forall", "Exists", "Formula",
    "ParseError", "parse", "parse_term", "to_text", "free_vars", "term_vars",
    "substitute", "iff", "conj", "disj", "forall", "exists", "depth",
    "is_quantifier_free", "instantiate_schema", "KEYWORDS",
]


# -- terms -------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Times:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Inv:
    arg: "Term"


Term = Union[Var, Zero, One, Plus, Times, Neg, Inv]


# -- formulas ----------------------------------------------------------------

@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Less:
    l: Term
    r: Term


@dataclass(frozen=True)
class Equal:
    l: Term
    r: Term


@dataclass(frozen=True)
class Pred:
    """Unary divisibility predicate ``P_n``."""

    n: int
    arg: Term

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"P_n requires n >= 2, got {self.n}")


@dataclass(frozen=True)
class And:
    l: "Formula"
    r: "Formula"


@dataclass(frozen=True)
class Or:
    l: "Formula"
    r: "Formula"


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class Imp:
    l: "Formula"
    r: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Bot, Top, Less, Equal, Pred, And, Or, Not, Imp, Forall, Exists]

_BINARY = (And, Or, Imp)
_QUANT = (Forall, Exists)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-associated conjunction; the empty conjunction is ``Top``."""
    out = None
    for p in parts:
        out = p if out is None else And(out, p)
    return Top() if out is None else out


def disj(parts: Iterable[Formula]) -> Formula:
    """Left-associated disjunction; the empty disjunction is ``Bot``."""
    out = None
    for p in parts:
        out = p if out is None else Or(out, p)
    return Bot() if out is None else out


def forall(names: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(names)):
        body = Forall(v, body)
    return body


def exists(names: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(names)):
        body = Exists(v, body)
    return body


# -- variables and substitution ---------------------------------------------

def term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, (Plus, Times)):
        return term_vars(t.left) | term_vars(t.right)
    if isinstance(t, (Neg, Inv)):
        return term_vars(t.arg)
    return frozenset()


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, (Less, Equal)):
        return term_vars(f.l) | term_vars(f.r)
    if isinstance(f, Pred):
        return term_vars(f.arg)
    if isinstance(f, _BINARY):
        return free_vars(f.l) | free_vars(f.r)
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, _QUANT):
        return free_vars(f.body) - {f.var}
    return frozenset()


def depth(f: Formula) -> int:
    """Connective/quantifier nesting depth; atoms have depth 1."""
    if isinstance(f, _BINARY):
        return 1 + max(depth(f.l), depth(f.r))
    if isinstance(f, Not):
        return 1 + depth(f.arg)
    if isinstance(f, _QUANT):
        return 1 + depth(f.body)
    return 1


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, _QUANT):
        return False
    if isinstance(f, _BINARY):
        return is_quantifier_free(f.l) and is_quantifier_free(f.r)
    if isinstance(f, Not):
        return is_quantifier_free(f.arg)
    return True


def _subst_term(t: Term, v: str, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.name == v else t
    if isinstance(t, Plus):
        return Plus(_subst_term(t.left, v, s), _subst_term(t.right, v, s))
    if isinstance(t, Times):
        return Times(_subst_term(t.left, v, s), _subst_term(t.right, v, s))
    if isinstance(t, Neg):
        return Neg(_subst_term(t.arg, v, s))
    if isinstance(t, Inv):
        return Inv(_subst_term(t.arg, v, s))
    return t


def _fresh(name: str, avoid: frozenset[str]) -> str:
    while name in avoid:
        name += "'"
    return name


def substitute(f: Formula, v: str, t: Term) -> Formula:
    """Capture-avoiding ``f[t/v]``; clashing binders get primes appended."""
    if v not in free_vars(f):
        return f
    if isinstance(f, Less):
        return Less(_subst_term(f.l, v, t), _subst_term(f.r, v, t))
    if isinstance(f, Equal):
        return Equal(_subst_term(f.l, v, t), _subst_term(f.r, v, t))
    if isinstance(f, Pred):
        return Pred(f.n, _subst_term(f.arg, v, t))
    if isinstance(f, _BINARY):
        return type(f)(substitute(f.l, v, t), substitute(f.r, v, t))
    if isinstance(f, Not):
        return Not(substitute(f.arg, v, t))
    if isinstance(f, _QUANT):
        tv = term_vars(t)
        var, body = f.var, f.body
        if var in tv:
            new = _fresh(var, tv | free_vars(body) | {v})
            body = substitute(body, var, Var(new))
            var = new
        return type(f)(var, substitute(body, v, t))
    return f


# -- lexer -------------------------------------------------------------------

KEYWORDS = frozenset({"forall", "exists", "bot", "top", "inv"})

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9']*)"
    r"|(?P<op><->|->|[~&|().,<=+*-]))"
)
_PRED_RE = re.compile(r"P(\d+)$")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        detail = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("eof", "", n))
    return tokens


# -- parser ------------------------------------------------------------------

# binding levels for formula slots
_IFF, _IMP, _OR, _AND, _UNARY = 0, 1, 2, 3, 4


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def at(self, value: str) -> bool:
        kind, val, _ = self.toks[self.i]
        return kind != "eof" and val == value

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val, pos = self.peek()
        if val != value or kind == "eof":
            raise ParseError(f"unexpected {val or 'end of input'!r}", pos, (repr(value),))
        self.i += 1

    def fail(self, *expected: str):
        _, val, pos = self.peek()
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, expected)

    # formulas

    def formula(self, level: int = _IFF) -> Formula:
        if self.at("forall") or self.at("exists"):
            return self.quantifier(level)
        if level >= _UNARY:
            return self.unary()
        left = self.formula(level + 1)
        if level == _IFF:
            if self.at("<->"):
                self.take()
                return iff(left, self.formula(_IFF))
        elif level == _IMP:
            if self.at("->"):
                self.take()
                return Imp(left, self.formula(_IMP))
        else:
            op, node = ("|", Or) if level == _OR else ("&", And)
            while self.at(op):
                self.take()
                left = node(left, self.formula(level + 1))
        return left

    def quantifier(self, level: int) -> Formula:
        _, word, _ = self.take()
        names = [self.variable()]
        while self.at(","):
            self.take()
            names.append(self.variable())
        self.expect(".")
        body = self.formula(level)
        return forall(names, body) if word == "forall" else exists(names, body)

    def variable(self) -> str:
        kind, val, pos = self.peek()
        if kind != "ident" or val in KEYWORDS:
            self.fail("variable")
        self.i += 1
        return val

    def unary(self) -> Formula:
        if self.at("~"):
            self.take()
            return Not(self.formula(_UNARY))
        if self.at("forall") or self.at("exists"):
            return self.quantifier(_UNARY)
        return self.primary()

    def primary(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "ident" and val == "bot":
            self.i += 1
            return Bot()
        if kind == "ident" and val == "top":
            self.i += 1
            return Top()
        if kind == "ident" and _PRED_RE.match(val) and self.toks[self.i + 1][1] == "(":
            n = int(_PRED_RE.match(val).group(1))
            if n < 2:
                raise ParseError(f"unknown predicate arity P{n} (n must be >= 2)", pos)
            self.i += 2
            arg = self.term()
            self.expect(")")
            return Pred(n, arg)
        if val == "(":
            # either a parenthesised formula or an atom starting with a parenthesised term
            save = self.i
            try:
                return self.atom()
            except ParseError:
                self.i = save
            self.take()
            inner = self.formula(_IFF)
            self.expect(")")
            return inner
        return self.atom()

    def atom(self) -> Formula:
        left = self.term()
        if self.at("="):
            self.take()
            return Equal(left, self.term())
        if self.at("<"):
            parts = []
            while self.at("<"):
                self.take()
                right = self.term()
                parts.append(Less(left, right))
                left = right
            return conj(parts)
        self.fail("'<'", "'='")

    # terms

    def term(self) -> Term:
        left = self.product()
        while self.at("+"):
            self.take()
            left = Plus(left, self.product())
        return left

    def product(self) -> Term:
        left = self.neg_term()
        while self.at("*"):
            self.take()
            left = Times(left, self.neg_term())
        return left

    def neg_term(self) -> Term:
        if self.at("-"):
            self.take()
            return Neg(self.neg_term())
        return self.base_term()

    def base_term(self) -> Term:
        kind, val, pos = self.peek()
        if kind == "num":
            self.i += 1
            if val == "0":
                return Zero()
            if val == "1":
                return One()
            raise ParseError(f"numeral {val} is not a constant of the signature", pos, ("'0'", "'1'"))
        if kind == "ident":
            if val == "inv":
                self.i += 1
                self.expect("(")
                arg = self.term()
                self.expect(")")
                return Inv(arg)
            if val in KEYWORDS:
                self.fail("term")
            self.i += 1
            return Var(val)
        if val == "(":
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        self.fail("term")


def parse(text: str) -> Formula:
    """Parse a formula from its ASCII surface syntax."""
    p = _Parser(text)
    f = p.formula(_IFF)
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", pos, ("end of input",))
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", pos, ("end of input",))
    return t


# -- printer -----------------------------------------------------------------

def _term_text(t: Term, level: int = 0) -> str:
    # levels: 0 sum, 1 product, 2 unary/base
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Inv):
        return f"inv({_term_text(t.arg)})"
    if isinstance(t, Neg):
        return "-" + _term_text(t.arg, 2)
    if isinstance(t, Plus):
        s = f"{_term_text(t.left, 0)} + {_term_text(t.right, 1)}"
        return f"({s})" if level > 0 else s
    if isinstance(t, Times):
        s = f"{_term_text(t.left, 1)} * {_term_text(t.right, 2)}"
        return f"({s})" if level > 1 else s
    raise TypeError(f"not a term: {t!r}")


def _level(f: Formula) -> int:
    if isinstance(f, Imp):
        return _IMP
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    return _UNARY


def _text(f: Formula, ctx: int) -> str:
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Less):
        return f"{_term_text(f.l)} < {_term_text(f.r)}"
    if isinstance(f, Equal):
        return f"{_term_text(f.l)} = {_term_text(f.r)}"
    if isinstance(f, Pred):
        return f"P{f.n}({_term_text(f.arg)})"
    if isinstance(f, Not):
        if isinstance(f.arg, (Less, Equal)):
            return f"~({_text(f.arg, _IFF)})"
        return "~" + _operand(f.arg, _UNARY)
    if isinstance(f, _QUANT):
        word = "forall" if isinstance(f, Forall) else "exists"
        return f"{word} {f.var}. {_operand(f.body, ctx)}"
    if isinstance(f, Imp):
        s = f"{_left(f.l, _IMP + 1)} -> {_operand(f.r, _IMP)}"
    elif isinstance(f, Or):
        s = f"{_left(f.l, _OR)} | {_operand(f.r, _OR + 1)}"
    else:
        s = f"{_left(f.l, _AND)} & {_operand(f.r, _AND + 1)}"
    return f"({s})" if _level(f) < ctx else s


def _operand(f: Formula, ctx: int) -> str:
    """Render ``f`` in a slot parsed at binding level ``ctx`` (nothing follows it there)."""
    if isinstance(f, _BINARY) and _level(f) < ctx:
        return f"({_text(f, _IFF)})"
    return _text(f, ctx)


def _left(f: Formula, ctx: int) -> str:
    # a quantifier on the left of an infix operator would swallow the operator
    if isinstance(f, _QUANT):
        return f"({_text(f, _IFF)})"
    return _operand(f, ctx)


def to_text(f: Formula) -> str:
    """Render ``f`` so that ``parse(to_text(f)) == f``."""
    return _text(f, _IFF)


def instantiate_schema(theory: str, axiom_id: str, n: int) -> Formula:
    """Instance ``n`` of a parameterised axiom; see :mod:`rmqe.theories`."""
    from .theories import instantiate_schema as _inst

    return _inst(theory, axiom_id, n)
