"""Routley-Meyer models and truth evaluation.

Quantifiers over a finite domain are decided by exhaustion. Over the rationals
they range over one representative per orbit of the order automorphisms that
fix the model's interval endpoints and the current parameters; atomic truth is
invariant under those automorphisms, so this is exact.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Sequence, Union

from .frames import B_CONDITIONS, ConditionReport, Frame, check_condition, frame_from_json, frame_to_json
from .syntax import (
    And, Bot, Equal, Exists, Forall, Formula, Imp, Inv, Less, Neg, Not, One, Or, Plus, Pred,
    Term, Times, Top, Var, Zero, conj, forall, free_vars, substitute, to_text,
)

__all__ = [
    "FiniteDomain", "RationalOrder", "FullOrder", "IntervalOrder", "EmptyOrder", "ExplicitPairs",
    "LogicalEquality", "ValuatedEquality", "Model", "EvaluationError", "PreconditionError",
    "evaluate", "eval_formula", "representatives", "cut_points", "assignments", "definable_set",
    "DefinableSet", "check_heredity", "hereditary_property_test", "world_invariance_test",
    "models_agree", "AgreementReport", "check_equality_axioms", "equality_principles", "less_holds",
    "rational", "format_element", "model_to_json", "model_from_json",
]

Element = Union[Fraction, str]


class EvaluationError(ValueError):
    """Raised for unbound variables and unsupported domain/signature combinations."""


class PreconditionError(ValueError):
    """An operation's documented hypotheses do not hold for its inputs."""


def rational(x: Any) -> Fraction:
    """Parse ``"p/q"``, decimal strings, ints and Fractions exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as an exact rational")


def _element(x: Any) -> Element:
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            return x
    return rational(x)


def format_element(x: Element) -> str:
    return str(x)


# -- domains and per-world specs ---------------------------------------------

@dataclass(frozen=True)
class FiniteDomain:
    elements: tuple

    def __post_init__(self):
        els = tuple(_element(e) for e in self.elements)
        if len(set(els)) != len(els):
            raise ValueError("finite domain elements must be distinct")
        object.__setattr__(self, "elements", els)


@dataclass(frozen=True)
class RationalOrder:
    """All of Q, handled symbolically."""


@dataclass(frozen=True)
class FullOrder:
    """The usual order on the (rational) domain."""


@dataclass(frozen=True)
class IntervalOrder:
    """Usual order restricted to the closed interval ``[lo, hi]``; false elsewhere."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", rational(self.lo))
        object.__setattr__(self, "hi", rational(self.hi))
        if not self.lo < self.hi:
            raise ValueError("IntervalOrder needs lo < hi")


@dataclass(frozen=True)
class EmptyOrder:
    pass


@dataclass(frozen=True)
class ExplicitPairs:
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", frozenset((_element(a), _element(b)) for a, b in self.pairs)
        )


OrderSpec = Union[FullOrder, IntervalOrder, EmptyOrder, ExplicitPairs]


@dataclass(frozen=True)
class LogicalEquality:
    """``=`` is identity at every world."""


@dataclass(frozen=True)
class ValuatedEquality:
    pairs: Mapping[str, frozenset]

    def __post_init__(self):
        object.__setattr__(
            self,
            "pairs",
            {w: frozenset((_element(a), _element(b)) for a, b in ps) for w, ps in self.pairs.items()},
        )

    def __hash__(self):
        return hash(tuple(sorted((w, ps) for w, ps in self.pairs.items())))


@dataclass(frozen=True)
class Model:
    frame: Frame
    domain: Union[FiniteDomain, RationalOrder]
    less: Mapping[str, OrderSpec]
    preds: Mapping[tuple[str, int], frozenset] = field(default_factory=dict)
    funcs: Mapping[str, Any] = field(default_factory=dict)
    equality: Union[LogicalEquality, ValuatedEquality] = LogicalEquality()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "less", dict(self.less))
        object.__setattr__(
            self, "preds", {k: frozenset(_element(e) for e in v) for k, v in self.preds.items()}
        )
        object.__setattr__(self, "funcs", dict(self.funcs))
        worlds = set(self.frame.worlds)
        for w in self.less:
            if w not in worlds:
                raise ValueError(f"order spec for unknown world {w!r}")
        if isinstance(self.domain, RationalOrder):
            for w, spec in self.less.items():
                if isinstance(spec, ExplicitPairs):
                    raise ValueError("explicit pairs are only legal over finite domains")
            if self.preds:
                raise ValueError("P_n valuations are only supported over finite domains")
            if isinstance(self.equality, ValuatedEquality):
                raise ValueError("valuated equality is only supported over finite domains")
        if isinstance(self.equality, ValuatedEquality):
            missing = worlds - set(self.equality.pairs)
            if missing:
                raise ValueError(f"valuated equality lacks worlds {sorted(missing)}")

    def __hash__(self):
        return id(self)

    @property
    def s(self) -> str:
        return self.frame.s

    @property
    def worlds(self) -> tuple[str, ...]:
        return self.frame.worlds

    def order(self, w: str) -> OrderSpec:
        return self.less.get(w, EmptyOrder())


# -- atomic truth ------------------------------------------------------------

def less_holds(m: Model, w: str, a: Element, b: Element) -> bool:
    spec = m.order(w)
    if isinstance(spec, EmptyOrder):
        return False
    if isinstance(spec, ExplicitPairs):
        return (a, b) in spec.pairs
    if not (isinstance(a, Fraction) and isinstance(b, Fraction)):
        raise EvaluationError("the usual order needs rational elements")
    if isinstance(spec, FullOrder):
        return a < b
    return spec.lo <= a and b <= spec.hi and a < b


def _equal_holds(m: Model, w: str, a: Element, b: Element) -> bool:
    if isinstance(m.equality, LogicalEquality):
        return a == b
    return (a, b) in m.equality.pairs[w]


def _func(m: Model, name: str):
    try:
        return m.funcs[name]
    except KeyError:
        raise EvaluationError(f"model has no interpretation for {name!r}") from None


def _apply(m: Model, name: str, args: tuple) -> Element:
    interp = _func(m, name)
    if interp == "arith":
        try:
            if name == "+":
                val = args[0] + args[1]
            elif name == "*":
                val = args[0] * args[1]
            elif name == "-":
                val = -args[0]
            else:
                val = 1 / args[0]
        except (TypeError, ZeroDivisionError) as exc:
            raise EvaluationError(f"{name} undefined on {args}") from exc
        if isinstance(m.domain, FiniteDomain) and val not in m.domain.elements:
            raise EvaluationError(f"{name}{args} = {val} leaves the domain")
        return val
    key = args if len(args) > 1 else args[0]
    try:
        return interp[key]
    except KeyError:
        raise EvaluationError(f"{name} has no table entry for {args}") from None


def _term_value(m: Model, t: Term, a: Mapping[str, Element]) -> Element:
    if isinstance(t, Var):
        try:
            return a[t.name]
        except KeyError:
            raise EvaluationError(f"unbound variable {t.name!r}") from None
    if isinstance(m.domain, RationalOrder):
        raise EvaluationError("function symbols are not interpreted over the rational order")
    if isinstance(t, Zero):
        return _element(_func(m, "0"))
    if isinstance(t, One):
        return _element(_func(m, "1"))
    if isinstance(t, Plus):
        return _apply(m, "+", (_term_value(m, t.left, a), _term_value(m, t.right, a)))
    if isinstance(t, Times):
        return _apply(m, "*", (_term_value(m, t.left, a), _term_value(m, t.right, a)))
    if isinstance(t, Neg):
        return _apply(m, "-", (_term_value(m, t.arg, a),))
    if isinstance(t, Inv):
        return _apply(m, "inv", (_term_value(m, t.arg, a),))
    raise TypeError(f"not a term: {t!r}")


# -- orbit representatives ---------------------------------------------------

def cut_points(m: Model) -> list[Fraction]:
    """Interval endpoints mentioned by any world's order spec, sorted."""
    pts = set()
    for spec in m.less.values():
        if isinstance(spec, IntervalOrder):
            pts.update((spec.lo, spec.hi))
    return sorted(pts)


def representatives(m: Model, params: Iterable[Fraction] = ()) -> list[Fraction]:
    """One rational per orbit of Q under automorphisms fixing cut points and ``params``."""
    if not isinstance(m.domain, RationalOrder):
        raise PreconditionError("representatives are defined for rational-order domains")
    S = sorted(set(cut_points(m)) | {rational(p) for p in params})
    if not S:
        return [Fraction(0)]
    mids = [(x + y) / 2 for x, y in zip(S, S[1:])]
    return sorted(set(S) | set(mids) | {S[0] - 1, S[-1] + 1})


class _Evaluator:
    def __init__(self, m: Model, extra_points: Sequence[Fraction] = ()):
        self.m = m
        self.extra = tuple(rational(p) for p in extra_points)
        self.rational = isinstance(m.domain, RationalOrder)
        self.cuts = cut_points(m) if self.rational else []
        self._reps: dict[tuple, tuple] = {}
        self._fv: dict[Formula, frozenset] = {}
        self.succ = {w: m.frame.successors(w) for w in m.worlds}

    def domain_for(self, f: Formula, a: Mapping[str, Element]) -> tuple:
        if not self.rational:
            return self.m.domain.elements
        fv = self._fv.get(f)
        if fv is None:
            fv = self._fv[f] = free_vars(f)
        try:
            key = tuple(sorted({a[v] for v in fv}))
        except KeyError as exc:
            raise EvaluationError(f"unbound variable {exc.args[0]!r}") from None
        reps = self._reps.get(key)
        if reps is None:
            reps = representatives(self.m, key)
            if self.extra:
                reps = sorted(set(reps) | set(self.extra))
            reps = self._reps[key] = tuple(reps)
        return reps

    def ev(self, w: str, f: Formula, a: dict) -> bool:
        m = self.m
        if isinstance(f, Less):
            return less_holds(m, w, _term_value(m, f.l, a), _term_value(m, f.r, a))
        if isinstance(f, Equal):
            return _equal_holds(m, w, _term_value(m, f.l, a), _term_value(m, f.r, a))
        if isinstance(f, And):
            return self.ev(w, f.l, a) and self.ev(w, f.r, a)
        if isinstance(f, Or):
            return self.ev(w, f.l, a) or self.ev(w, f.r, a)
        if isinstance(f, Not):
            return not self.ev(m.frame.star[w], f.arg, a)
        if isinstance(f, Imp):
            for w1, w2 in self.succ[w]:
                if self.ev(w1, f.l, a) and not self.ev(w2, f.r, a):
                    return False
            return True
        if isinstance(f, (Forall, Exists)):
            want = isinstance(f, Exists)
            old = a.get(f.var, _MISSING)
            try:
                for d in self.domain_for(f, a):
                    a[f.var] = d
                    if self.ev(w, f.body, a) == want:
                        return want
                return not want
            finally:
                if old is _MISSING:
                    a.pop(f.var, None)
                else:
                    a[f.var] = old
        if isinstance(f, Bot):
            return False
        if isinstance(f, Top):
            return True
        if isinstance(f, Pred):
            if self.rational:
                raise EvaluationError("P_n is not interpreted over the rational order")
            return _term_value(m, f.arg, a) in m.preds.get((w, f.n), ())
        raise TypeError(f"not a formula: {f!r}")


_MISSING = object()


def _coerce_assignment(a: Mapping[str, Any] | None) -> dict:
    return {k: _element(v) for k, v in (a or {}).items()}


def evaluate(m: Model, w: str, f: Formula, a: Mapping[str, Any] | None = None,
             extra_points: Sequence[Fraction] = ()) -> bool:
    """Truth of ``f`` at world ``w`` under assignment ``a``.

    ``extra_points`` adds fixed rationals to every quantifier range over Q; it
    exists for checking the orbit method against sampling.
    """
    if w not in m.frame.star:
        raise EvaluationError(f"unknown world {w!r}")
    a = _coerce_assignment(a)
    missing = free_vars(f) - set(a)
    if missing:
        raise EvaluationError(f"unbound variable(s) {sorted(missing)}")
    return _Evaluator(m, extra_points).ev(w, f, a)


eval_formula = evaluate


def assignments(m: Model, names: Sequence[str]) -> Iterator[dict]:
    """Assignments to ``names`` covering every orbit (all tuples for finite domains)."""
    names = list(names)
    if isinstance(m.domain, FiniteDomain):
        for vals in itertools.product(m.domain.elements, repeat=len(names)):
            yield dict(zip(names, vals))
        return

    def go(i: int, acc: dict):
        if i == len(names):
            yield dict(acc)
            return
        for r in representatives(m, acc.values()):
            acc[names[i]] = r
            yield from go(i + 1, acc)
            del acc[names[i]]

    yield from go(0, {})


# -- definable sets ----------------------------------------------------------

@dataclass(frozen=True)
class DefinableSet:
    variable: str
    world: str
    members: tuple
    orbits: tuple  # (description, representative, satisfied)

    @property
    def full(self) -> bool:
        return all(sat for _, _, sat in self.orbits)

    @property
    def empty(self) -> bool:
        return not any(sat for _, _, sat in self.orbits)

    @property
    def proper(self) -> bool:
        return not self.full and not self.empty

    def describe(self) -> str:
        parts = [desc for desc, _, sat in self.orbits if sat]
        return " u ".join(parts) if parts else "{}"


def _orbit_description(r: Fraction, cuts: list[Fraction]) -> str:
    if not cuts:
        return "Q"
    if r in cuts:
        return "{%s}" % r
    if r < cuts[0]:
        return f"(-inf, {cuts[0]})"
    if r > cuts[-1]:
        return f"({cuts[-1]}, +inf)"
    for lo, hi in zip(cuts, cuts[1:]):
        if lo < r < hi:
            return f"({lo}, {hi})"
    raise AssertionError("unreachable")


def definable_set(m: Model, f: Formula, world: str | None = None) -> DefinableSet:
    """The subset of the domain ``f`` defines at ``world`` (default: ``s``), orbit by orbit."""
    fv = sorted(free_vars(f))
    if len(fv) != 1:
        raise ValueError(f"definable_set needs exactly one free variable, got {fv}")
    (x,) = fv
    w = m.s if world is None else world
    ev = _Evaluator(m)
    rows = []
    if isinstance(m.domain, RationalOrder):
        cuts = cut_points(m)
        for r in representatives(m):
            rows.append((_orbit_description(r, cuts), r, ev.ev(w, f, {x: r})))
    else:
        for e in m.domain.elements:
            rows.append(("{%s}" % e, e, ev.ev(w, f, {x: e})))
    members = tuple(r for _, r, sat in rows if sat)
    return DefinableSet(x, w, members, tuple(rows))


# -- structural checks -------------------------------------------------------

def _s_pairs(m: Model) -> list[tuple[str, str]]:
    return [(a, b) for a in m.worlds for b in m.worlds if m.frame.rel(m.s, a, b)]


def check_heredity(m: Model) -> ConditionReport:
    """Atomic valuations must grow along every ``R s a b``."""
    bad = []
    pairs = list(assignments(m, ["x", "y"]))
    singles = list(assignments(m, ["x"]))
    for a, b in _s_pairs(m):
        if a == b:
            continue
        for asg in pairs:
            u, v = asg["x"], asg["y"]
            if less_holds(m, a, u, v) and not less_holds(m, b, u, v):
                bad.append((a, b, "<", (u, v)))
            if _equal_holds(m, a, u, v) and not _equal_holds(m, b, u, v):
                bad.append((a, b, "=", (u, v)))
        for (w, n), ext in sorted(m.preds.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            if w != a:
                continue
            for e in sorted(ext - m.preds.get((b, n), frozenset()), key=str):
                bad.append((a, b, f"P{n}", (e,)))
    return ConditionReport("heredity", not bad, tuple(bad))


def hereditary_property_test(m: Model, sample: Iterable[tuple[Formula, Mapping]]) -> ConditionReport:
    """Truth of each sampled formula must persist along every ``R s a b``."""
    pre = [c for c in B_CONDITIONS if not check_condition(m.frame, c).satisfied]
    her = check_heredity(m)
    if pre or not her.satisfied:
        problems = tuple(("frame", c) for c in pre) + tuple(("heredity",) + t for t in her.counterexamples)
        return ConditionReport("hereditary", False, problems, notes="precondition failed; test skipped")
    ev = _Evaluator(m)
    bad = []
    pairs = _s_pairs(m)
    for f, asg in sample:
        asg = _coerce_assignment(asg)
        for a, b in pairs:
            if ev.ev(a, f, dict(asg)) and not ev.ev(b, f, dict(asg)):
                bad.append((a, b, to_text(f), _fmt_asg(asg)))
    return ConditionReport("hereditary", not bad, tuple(bad))


def _fmt_asg(a: Mapping) -> str:
    return ",".join(f"{k}={v}" for k, v in sorted(a.items()))


def world_invariance_test(m: Model, sample: Iterable[tuple[Formula, Mapping]],
                          check_hypotheses: bool = True) -> ConditionReport:
    """Every sampled formula must have the same truth value at every world as at ``s``."""
    if check_hypotheses:
        problems = [("frame", c) for c in ("K", "seriality") if not check_condition(m.frame, c).satisfied]
        if not problems:
            from .theories import holds_at_s

            if not holds_at_s(m, "DLO").all_hold:
                problems.append(("theory", "DLO fails at s"))
        if problems:
            return ConditionReport("world-invariance", False, tuple(problems),
                                   notes="precondition failed; test skipped")
    ev = _Evaluator(m)
    bad = []
    for f, asg in sample:
        asg = _coerce_assignment(asg)
        at_s = ev.ev(m.s, f, dict(asg))
        for w in m.worlds:
            if w != m.s and ev.ev(w, f, dict(asg)) != at_s:
                bad.append((w, to_text(f), _fmt_asg(asg), at_s))
    return ConditionReport("world-invariance", not bad, tuple(bad))


@dataclass(frozen=True)
class AgreementReport:
    rows: tuple  # (sentence text, verdict in m1, verdict in m2)

    @property
    def agree(self) -> bool:
        return all(v1 == v2 for _, v1, v2 in self.rows)


def models_agree(m1: Model, m2: Model, battery: Iterable[Formula]) -> AgreementReport:
    rows = []
    for f in battery:
        if free_vars(f):
            raise ValueError(f"battery entry is not a sentence: {to_text(f)}")
        rows.append((to_text(f), evaluate(m1, m1.s, f), evaluate(m2, m2.s, f)))
    return AgreementReport(tuple(rows))


def _fresh_names(avoid: set[str], k: int) -> list[str]:
    out = []
    i = 0
    while len(out) < k:
        name = f"e{i}"
        if name not in avoid:
            out.append(name)
            avoid.add(name)
        i += 1
    return out


def equality_principles(formula_sample: Iterable[Formula]) -> list[tuple[str, Formula]]:
    """(R), (T) and one (L) instance per sampled formula, as closed sentences."""
    out = [
        ("R", Forall("x", Equal(Var("x"), Var("x")))),
        ("T", forall(["x", "y", "z"], Imp(
            And(Equal(Var("x"), Var("y")), Equal(Var("y"), Var("z"))),
            Equal(Var("x"), Var("z"))))),
    ]
    for f in formula_sample:
        fv = sorted(free_vars(f))
        if not fv:
            continue
        target, rest = fv[0], fv[1:]
        u, v = _fresh_names(set(fv) | _all_names(f), 2)
        inst = forall([u, v], Imp(
            And(Equal(Var(u), Var(v)), substitute(f, target, Var(u))),
            substitute(f, target, Var(v))))
        out.append((f"L[{to_text(f)}]", forall(rest, inst)))
    return out


def _all_names(f: Formula) -> set[str]:
    names = set(free_vars(f))
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Forall, Exists)):
            names.add(g.var)
            stack.append(g.body)
        elif isinstance(g, (And, Or, Imp)):
            stack.extend([g.l, g.r])
        elif isinstance(g, Not):
            stack.append(g.arg)
    return names


def check_equality_axioms(m: Model, formula_sample: Iterable[Formula] = ()) -> ConditionReport:
    """Evaluate reflexivity, transitivity and Leibniz instances at ``s``."""
    if not isinstance(m.equality, ValuatedEquality):
        raise PreconditionError("equality axioms are checked only for valuated equality")
    if not isinstance(m.domain, FiniteDomain):
        raise PreconditionError("equality axioms are checked only over finite domains")
    bad = tuple((name,) for name, sentence in equality_principles(formula_sample)
                if not evaluate(m, m.s, sentence))
    return ConditionReport("equality-axioms", not bad, bad)


# -- JSON --------------------------------------------------------------------

def _order_to_json(spec: OrderSpec) -> dict:
    if isinstance(spec, FullOrder):
        return {"kind": "full"}
    if isinstance(spec, EmptyOrder):
        return {"kind": "empty"}
    if isinstance(spec, IntervalOrder):
        return {"kind": "interval", "lo": str(spec.lo), "hi": str(spec.hi)}
    return {"kind": "pairs", "pairs": sorted([[str(a), str(b)] for a, b in spec.pairs])}


def _order_from_json(d: dict) -> OrderSpec:
    kind = d["kind"]
    if kind == "full":
        return FullOrder()
    if kind == "empty":
        return EmptyOrder()
    if kind == "interval":
        return IntervalOrder(rational(d["lo"]), rational(d["hi"]))
    if kind == "pairs":
        return ExplicitPairs(frozenset(tuple(p) for p in d["pairs"]))
    raise ValueError(f"unknown order kind {kind!r}")


def _sort_key(e: Element):
    return (0, e, "") if isinstance(e, Fraction) else (1, Fraction(0), e)


def model_to_json(m: Model) -> dict:
    out = frame_to_json(m.frame)
    if isinstance(m.domain, RationalOrder):
        out["domain"] = {"kind": "rational-order"}
    else:
        out["domain"] = {"kind": "finite", "elements": [str(e) for e in m.domain.elements]}
    out["less"] = {w: _order_to_json(m.less[w]) for w in m.worlds if w in m.less}
    if isinstance(m.equality, LogicalEquality):
        out["equality"] = {"mode": "logical"}
    else:
        out["equality"] = {
            "mode": "valuated",
            "pairs": {w: sorted([[str(a), str(b)] for a, b in m.equality.pairs[w]]) for w in m.worlds},
        }
    if m.preds:
        preds: dict = {}
        for (w, n), ext in sorted(m.preds.items()):
            preds.setdefault(w, {})[f"P{n}"] = [str(e) for e in sorted(ext, key=_sort_key)]
        out["predicates"] = preds
    if m.funcs:
        funcs = {}
        for name, interp in sorted(m.funcs.items()):
            if interp == "arith" or name in ("0", "1"):
                funcs[name] = str(interp)
            else:
                rows = []
                for k, v in interp.items():
                    k = k if isinstance(k, tuple) else (k,)
                    rows.append([str(x) for x in k] + [str(v)])
                funcs[name] = sorted(rows)
        out["functions"] = funcs
    if m.name:
        out["name"] = m.name
    return out


def model_from_json(data: dict | str) -> Model:
    if isinstance(data, str):
        data = json.loads(data)
    frame = frame_from_json(data)
    dom = data.get("domain", {"kind": "rational-order"})
    if dom["kind"] == "rational-order":
        domain: Union[FiniteDomain, RationalOrder] = RationalOrder()
    elif dom["kind"] == "finite":
        domain = FiniteDomain(tuple(dom["elements"]))
    else:
        raise ValueError(f"unknown domain kind {dom['kind']!r}")
    less = {w: _order_from_json(d) for w, d in data.get("less", {}).items()}
    eq = data.get("equality", {"mode": "logical"})
    if eq["mode"] == "logical":
        equality: Union[LogicalEquality, ValuatedEquality] = LogicalEquality()
    elif eq["mode"] == "valuated":
        equality = ValuatedEquality({w: frozenset(tuple(p) for p in ps) for w, ps in eq["pairs"].items()})
    else:
        raise ValueError(f"unknown equality mode {eq['mode']!r}")
    preds = {}
    for w, table in data.get("predicates", {}).items():
        for pname, ext in table.items():
            preds[(w, int(pname[1:]))] = frozenset(ext)
    funcs: dict = {}
    for name, interp in data.get("functions", {}).items():
        if name in ("0", "1") or interp == "arith":
            funcs[name] = interp if interp == "arith" else _element(interp)
        else:
            table = {}
            for row in interp:
                row = [_element(x) for x in row]
                key = tuple(row[:-1]) if len(row) > 2 else row[0]
                table[key] = row[-1]
            funcs[name] = table
    return Model(frame, domain, less, preds, funcs, equality, data.get("name", ""))
