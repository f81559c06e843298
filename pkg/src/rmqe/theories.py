"""Axiom catalogues for DLO, RCF, Presburger arithmetic, DOAG and ACF, plus finite model search.

Negations that a classical axiomatisation would state as ``~A`` are written
``A -> bot``. Schemata are instantiated up to a bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from . import kernel
from .frames import CONDITIONS, Frame, enumerate_frames
from .models import ExplicitPairs, FiniteDomain, Model, RationalOrder, evaluate
from .syntax import (
    Bot, Equal, Exists, Forall, Formula, Imp, Inv, Less, Neg, Not, One, Or, Plus, Pred,
    Term, Times, Var, Zero, And, conj, disj, forall, free_vars, iff, parse,
)

__all__ = [
    "Schema", "Theory", "THEORIES", "SignatureError", "TheoryReport",
    "theory", "axioms_of", "labelled_axioms", "instantiate_schema", "holds_at_s",
    "find_finite_model", "find_countermodel", "SearchResult",
]


class SignatureError(ValueError):
    """The model or search space cannot interpret the theory's vocabulary."""


@dataclass(frozen=True)
class Schema:
    axiom_id: str
    side_condition: str
    accepts: Callable[[int], bool]
    generate: Callable[[int], Formula]


@dataclass(frozen=True)
class Theory:
    name: str
    fixed_axioms: tuple  # (axiom id, Formula)
    schemata: tuple = ()
    order_only: bool = False


# -- term builders -----------------------------------------------------------

def _nfold(t: Term, n: int, op=Plus) -> Term:
    out = t
    for _ in range(n - 1):
        out = op(out, t)
    return out


def _power(t: Term, n: int) -> Term:
    return _nfold(t, n, Times)


def _plus_ones(t: Term, i: int) -> Term:
    for _ in range(i):
        t = Plus(t, One())
    return t


def _monic_root(n: int) -> Formula:
    """forall x1..xn exists y. y^n + x1*y^(n-1) + ... + xn = 0"""
    y = Var("y")
    xs = [f"x{i}" for i in range(1, n + 1)]
    acc: Term = _power(y, n)
    for i, x in enumerate(xs, start=1):
        k = n - i
        acc = Plus(acc, Var(x) if k == 0 else Times(Var(x), _power(y, k)))
    return forall(xs, Exists("y", Equal(acc, Zero())))


def _presburger_a10(n: int) -> Formula:
    x, y = Var("x"), Var("y")
    return Forall("x", iff(Pred(n, x), Exists("y", Equal(x, _nfold(y, n)))))


def _presburger_a11(n: int) -> Formula:
    x = Var("x")
    disjuncts = []
    for i in range(n):
        others = [Imp(Pred(n, _plus_ones(x, j)), Bot()) for j in range(n) if j != i]
        disjuncts.append(And(Pred(n, _plus_ones(x, i)), conj(others)) if others
                         else Pred(n, _plus_ones(x, i)))
    return Forall("x", disj(disjuncts))


def _doag_a5(n: int) -> Formula:
    return Forall("y", Exists("x", Equal(_nfold(Var("x"), n), Var("y"))))


# -- catalogues --------------------------------------------------------------

def _ax(pairs: Sequence[tuple[str, str]]) -> tuple:
    return tuple((i, parse(text)) for i, text in pairs)


_ORDER = [
    ("A1", "forall x. x < x -> bot"),
    ("A2", "forall x, y. x = y | x < y | y < x"),
    ("A3", "forall x, y, z. x < y & y < z -> x < z"),
]

_DLO_REST = [
    ("A4", "forall x, y. x < y -> exists z. x < z & z < y"),
    ("A5", "forall x. exists y. x < y"),
    ("A6", "forall x. exists y. y < x"),
]

_ADD_MONO = "forall x, y, z. x < y -> x + z < y + z"
_ADD_ASSOC = "forall x, y, z. (x + y) + z = x + (y + z)"
_ADD_ZERO = "forall x. x + 0 = x"
_ADD_INV = "forall x. x + -x = 0"
_ADD_COMM = "forall x, y. x + y = y + x"
_MUL_ASSOC = "forall x, y, z. (x * y) * z = x * (y * z)"
_MUL_ONE = "forall x. x * 1 = x"
_MUL_INV = "forall x. ~(x = 0) -> x * inv(x) = 1"
_MUL_COMM = "forall x, y. x * y = y * x"
_DISTRIB = "forall x, y, z. x * (y + z) = x * y + x * z"
_NONTRIVIAL = "0 = 1 -> bot"

THEORIES: dict[str, Theory] = {
    "DLO": Theory("DLO", _ax(_ORDER + _DLO_REST), order_only=True),
    # A1 replaced by forall x. ~(x < x); has one-element models
    "DLO-NEG": Theory(
        "DLO-NEG",
        _ax([("A1", "forall x. ~(x < x)")] + _ORDER[1:] + _DLO_REST),
        order_only=True,
    ),
    "RCF": Theory(
        "RCF",
        _ax(_ORDER + [
            ("A4", "forall x, y. 0 < x & 0 < y -> 0 < x * y"),
            ("A5", _ADD_MONO),
            ("A6", "forall x. exists y. 0 < x -> x = y * y"),
            ("A8", _ADD_ASSOC), ("A9", _ADD_ZERO), ("A10", _ADD_INV), ("A11", _ADD_COMM),
            # the z in the associativity axiom is closed as well
            ("A12", _MUL_ASSOC), ("A13", _MUL_ONE), ("A14", _MUL_INV), ("A15", _MUL_COMM),
            ("A16", _DISTRIB), ("A17", _NONTRIVIAL),
        ]),
        (Schema("A7", "n odd and n > 0", lambda n: n > 0 and n % 2 == 1, _monic_root),),
    ),
    "PRESBURGER": Theory(
        "PRESBURGER",
        _ax(_ORDER + [
            ("A4", _ADD_MONO), ("A5", _ADD_ASSOC), ("A6", _ADD_ZERO), ("A7", _ADD_COMM),
            ("A8", "0 < 1"),
            ("A9", "forall x. (x = 0 | x < 0) | (1 < x | x = 1)"),
        ]),
        (
            Schema("A10", "n > 1", lambda n: n > 1, _presburger_a10),
            Schema("A11", "n > 1", lambda n: n > 1, _presburger_a11),
        ),
    ),
    "DOAG": Theory(
        "DOAG",
        _ax(_ORDER + [
            ("A4", _ADD_MONO),
            ("A6", _ADD_ASSOC), ("A7", _ADD_ZERO), ("A8", _ADD_INV), ("A9", _ADD_COMM),
        ]),
        (Schema("A5", "n > 1", lambda n: n > 1, _doag_a5),),
    ),
    "ACF": Theory(
        "ACF",
        _ax([
            ("A1", _ADD_ASSOC), ("A2", _ADD_ZERO), ("A3", _ADD_INV), ("A4", _ADD_COMM),
            ("A5", _MUL_ASSOC), ("A6", _MUL_ONE), ("A7", _MUL_INV), ("A8", _MUL_COMM),
            ("A9", _DISTRIB), ("A10", _NONTRIVIAL),
        ]),
        (Schema("A11", "n > 0", lambda n: n > 0, _monic_root),),
    ),
}


def _axiom_order(axiom_id: str) -> int:
    return int(axiom_id[1:].split("[")[0])


def theory(name: str) -> Theory:
    try:
        return THEORIES[name.upper()]
    except KeyError:
        raise ValueError(f"unknown theory {name!r}; known: {', '.join(THEORIES)}") from None


def instantiate_schema(theory_name: str, axiom_id: str, n: int) -> Formula:
    th = theory(theory_name)
    for sc in th.schemata:
        if sc.axiom_id == axiom_id:
            if not sc.accepts(n):
                raise ValueError(f"{th.name} {axiom_id}: n={n} violates side condition {sc.side_condition}")
            return sc.generate(n)
    raise ValueError(f"{th.name} has no schema {axiom_id!r}")


def labelled_axioms(name: str, bound: int = 2) -> list[tuple[str, Formula]]:
    """Fixed axioms and schema instances up to ``bound``, in axiom-number order."""
    if bound < 2:
        raise ValueError("schema bound must be >= 2")
    th = theory(name)
    out = list(th.fixed_axioms)
    for sc in th.schemata:
        out.extend((f"{sc.axiom_id}[n={n}]", sc.generate(n))
                   for n in range(1, bound + 1) if sc.accepts(n))
    out.sort(key=lambda p: _axiom_order(p[0]))
    return out


def axioms_of(name: str, bound: int = 2) -> list[Formula]:
    return [f for _, f in labelled_axioms(name, bound)]


# -- checking models ---------------------------------------------------------

def _function_symbols(f: Formula) -> set[str]:
    out: set[str] = set()

    def term(t):
        if isinstance(t, Zero):
            out.add("0")
        elif isinstance(t, One):
            out.add("1")
        elif isinstance(t, Plus):
            out.add("+"); term(t.left); term(t.right)
        elif isinstance(t, Times):
            out.add("*"); term(t.left); term(t.right)
        elif isinstance(t, Neg):
            out.add("-"); term(t.arg)
        elif isinstance(t, Inv):
            out.add("inv"); term(t.arg)

    def form(g):
        if isinstance(g, (Less, Equal)):
            term(g.l); term(g.r)
        elif isinstance(g, Pred):
            out.add(f"P{g.n}"); term(g.arg)
        elif isinstance(g, (And, Or, Imp)):
            form(g.l); form(g.r)
        elif isinstance(g, Not):
            form(g.arg)
        elif isinstance(g, (Forall, Exists)):
            form(g.body)

    form(f)
    return out


@dataclass(frozen=True)
class TheoryReport:
    theory: str
    rows: tuple  # (axiom id, verdict at s)

    @property
    def all_hold(self) -> bool:
        return all(v for _, v in self.rows)

    @property
    def failing(self) -> list[str]:
        return [i for i, v in self.rows if not v]


def holds_at_s(m: Model, name: str, bound: int = 2) -> TheoryReport:
    """Evaluate each axiom of ``name`` at the designated world of ``m``."""
    axioms = labelled_axioms(name, bound)
    used = set().union(*(_function_symbols(f) for _, f in axioms))
    funcs = {u for u in used if not u.startswith("P")}
    if funcs and isinstance(m.domain, RationalOrder):
        raise SignatureError(f"{name} uses {sorted(funcs)}; rational-order models are order-only")
    missing = {u for u in funcs if u not in m.funcs}
    if missing:
        raise SignatureError(f"model does not interpret {sorted(missing)} needed by {name}")
    return TheoryReport(theory(name).name, tuple((i, evaluate(m, m.s, f)) for i, f in axioms))


# -- finite search -----------------------------------------------------------

@dataclass
class SearchResult:
    model: Optional[Model]
    frames_tried: int = 0
    candidates: int = 0


def _check_guard(max_domain: int, max_worlds: int, guard: bool) -> None:
    if max_domain < 1 or max_worlds < 1:
        raise ValueError("max_domain and max_worlds must be >= 1")
    if guard and (max_domain > 4 or max_worlds > 2):
        raise ValueError("search limited to max_domain <= 4 and max_worlds <= 2 (pass guard=False to override)")
    if max_domain > 8:
        raise ValueError("the search kernel packs orders into 64-bit masks: max_domain <= 8")


def _order_only(formulas: Iterable[Formula]) -> None:
    for f in formulas:
        if free_vars(f):
            raise ValueError(f"search needs sentences; free variables in {f}")
        if _function_symbols(f):
            raise SignatureError("finite search covers the order signature (<, =) only")


def _search(wanted: list[tuple[Formula, bool]], max_domain: int, max_worlds: int,
            required: Iterable[str], stats: SearchResult) -> Optional[Model]:
    required = tuple(required)
    for c in required:
        if c not in CONDITIONS:
            raise ValueError(f"unknown condition {c!r}")
    frames = list(enumerate_frames(max_worlds, required))
    for k in range(1, max_domain + 1):
        for frame in frames:
            stats.frames_tried += 1
            found, visited = kernel.search_frame(frame, k, wanted)
            stats.candidates += visited
            if found is not None:
                return _model_from_masks(frame, k, found)
    return None


def _model_from_masks(frame: Frame, k: int, masks: Sequence[int]) -> Model:
    less = {}
    for w, mask in zip(frame.worlds, masks):
        pairs = {(Fraction(i), Fraction(j)) for i in range(k) for j in range(k) if mask >> (i * k + j) & 1}
        less[w] = ExplicitPairs(frozenset(pairs))
    return Model(frame, FiniteDomain(tuple(Fraction(i) for i in range(k))), less)


def find_finite_model(name: str, max_domain: int, max_worlds: int,
                      required_conditions: Iterable[str] = (), guard: bool = True,
                      stats: SearchResult | None = None) -> Optional[Model]:
    """First model (deterministic order) of an order-signature theory, or None."""
    _check_guard(max_domain, max_worlds, guard)
    th = theory(name)
    if not th.order_only:
        raise SignatureError(f"finite search supports order-signature theories only, not {th.name}")
    axioms = axioms_of(th.name)
    stats = stats if stats is not None else SearchResult(None)
    stats.model = _search([(f, True) for f in axioms], max_domain, max_worlds, required_conditions, stats)
    return stats.model


def find_countermodel(premises: Sequence[Formula], conclusion: Formula, max_domain: int,
                      max_worlds: int, required_conditions: Iterable[str] = (), guard: bool = True,
                      stats: SearchResult | None = None) -> Optional[Model]:
    """A model with every premise true and the conclusion false at ``s``, or None."""
    _check_guard(max_domain, max_worlds, guard)
    _order_only(list(premises) + [conclusion])
    stats = stats if stats is not None else SearchResult(None)
    wanted = [(f, True) for f in premises] + [(conclusion, False)]
    stats.model = _search(wanted, max_domain, max_worlds, required_conditions, stats)
    return stats.model
