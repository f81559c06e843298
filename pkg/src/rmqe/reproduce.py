"""Recorded claims about the built-in fixtures, recomputed and compared.

A mismatch is a report row, not an error: the evaluator implements the
truth clauses literally and some recorded claims disagree with them.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Callable

from .fixtures import FORMULAS, get_fixture
from .frames import B_CONDITIONS, RM_CONDITIONS, check_condition
from .models import (
    Model, _Evaluator, _coerce_assignment, definable_set, evaluate, hereditary_property_test, models_agree,
    world_invariance_test,
)
from .randgen import random_assignment, random_formula
from .syntax import And, Formula, Imp, Not, Or, free_vars, parse, to_text
from .theories import find_finite_model, holds_at_s

__all__ = ["Claim", "ClaimResult", "CLAIMS", "reproduce", "report_json", "report_text", "trace"]


@dataclass(frozen=True)
class Claim:
    id: str
    claim: str
    recorded: Any
    compute: Callable[[], tuple[Any, str]]  # (verdict, trace)


@dataclass(frozen=True)
class ClaimResult:
    id: str
    claim: str
    computed: Any
    recorded: Any
    match: bool
    trace: str = ""


def trace(m: Model, w: str, f: Formula, a: dict | None = None, depth: int = 3) -> str:
    """Indented truth values of ``f`` and its parts, following star and R."""
    ev = _Evaluator(m)
    lines: list[str] = []

    def go(w: str, g: Formula, asg: dict, d: int, indent: str):
        val = ev.ev(w, g, dict(asg))
        shown = ",".join(f"{k}={v}" for k, v in sorted(asg.items()) if k in free_vars(g))
        lines.append(f"{indent}{w} {'|=' if val else '|/='} {to_text(g)}" + (f" [{shown}]" if shown else ""))
        if d == 0:
            return
        nxt = indent + "  "
        if isinstance(g, Not):
            go(m.frame.star[w], g.arg, asg, d - 1, nxt)
        elif isinstance(g, (And, Or)):
            go(w, g.l, asg, d - 1, nxt)
            go(w, g.r, asg, d - 1, nxt)
        elif isinstance(g, Imp):
            succ = m.frame.successors(w)
            if not succ:
                lines.append(f"{nxt}(no R-triples start at {w}: vacuous)")
            for w1, w2 in succ:
                lines.append(f"{nxt}R {w} {w1} {w2}:")
                go(w1, g.l, asg, d - 1, nxt + "  ")
                go(w2, g.r, asg, d - 1, nxt + "  ")

    go(w, f, _coerce_assignment(a), depth, "")
    return "\n".join(lines)


def _fx(name: str) -> Model:
    return get_fixture(name).model


def _f(key: str) -> Formula:
    return parse(FORMULAS[key])


def _eval_claim(model: str, world: str, text: str, asg: dict | None = None):
    def run():
        m = _fx(model)
        f = parse(text)
        return evaluate(m, world, f, asg), trace(m, world, f, asg)
    return run


def _set_text(members) -> str:
    return "{" + ", ".join(str(x) for x in members) + "}"


def _definable(model: str, key: str, world: str | None = None):
    def run():
        ds = definable_set(_fx(model), _f(key), world)
        return _set_text(ds.members), "orbits: " + "; ".join(f"{d}:{v}" for d, _, v in ds.orbits)
    return run


def _proper(model: str, key: str):
    def run():
        ds = definable_set(_fx(model), _f(key))
        return ds.proper, "defines " + ds.describe()
    return run


def _condition(model: str, cond: str):
    def run():
        r = check_condition(_fx(model).frame, cond)
        return r.satisfied, f"counterexamples: {list(r.counterexamples)}"
    return run


def _rm_frame():
    frame = _fx("thm3-N").frame
    failed = [c for c in RM_CONDITIONS if not check_condition(frame, c).satisfied]
    return not failed, f"failing RM conditions: {failed}"


def _theory_at_s(model: str, name: str):
    def run():
        r = holds_at_s(_fx(model), name)
        return r.all_hold, f"failing axioms: {r.failing}"
    return run


def _no_finite_dlo():
    m = find_finite_model("DLO", 3, 2, B_CONDITIONS)
    return m is None, "searched domain <= 3, worlds <= 2, b1-b4"


def _one_element_variant():
    m = find_finite_model("DLO-NEG", 1, 2, B_CONDITIONS)
    if m is None:
        return False, "no model with 1 element and <= 2 worlds"
    return True, f"R={sorted(m.frame.R)} star={m.frame.star}"


def _sample(m: Model, n: int, seed: int, depth: int = 4):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        f = random_formula(rng, depth, free=("x", "y"), max_nesting=2)
        out.append((f, random_assignment(rng, m, sorted(free_vars(f)))))
    return out


def _world_invariance():
    m = _fx("bk-serial-DLO-2w")
    r = world_invariance_test(m, _sample(m, 50, 7))
    return r.satisfied, f"failures: {list(r.counterexamples)[:3]}"


def _hereditary():
    m = _fx("thm3-N")
    r = hereditary_property_test(m, _sample(m, 50, 11))
    return r.satisfied, f"failures: {list(r.counterexamples)[:3]}"


def _omegacat_agreement():
    battery = [parse(f"(forall x. x = x) -> {_a3()}"), parse(f"({_a3()}) & ~({_a3()})")]
    r = models_agree(_fx("classical-M"), _fx("omegacat-N"), battery)
    return r.agree, "; ".join(f"{t}: M={v1} N={v2}" for t, v1, v2 in r.rows)


def _a3() -> str:
    return FORMULAS["a3"]


_IMPL = "(forall x. ~(x < x)) -> forall x. exists y. y < x"


def _claims() -> list[Claim]:
    a3 = _a3()
    c = []
    add = lambda *args: c.append(Claim(*args))  # noqa: E731
    # two-world model over Q with an interval order at t
    add("thm3-definable-set", "DLO QE failure: the witness defines {2} at s", "{2}",
        _definable("thm3-N", "witness"))
    add("thm3-witness-2", "DLO QE failure: witness true at s for y=2", True,
        _eval_claim("thm3-N", "s", FORMULAS["witness"], {"y": 2}))
    add("thm3-witness-5/2", "DLO QE failure: witness false at s for y other than 2", False,
        _eval_claim("thm3-N", "s", FORMULAS["witness"], {"y": Fraction(5, 2)}))
    add("thm3-t-below-2", "DLO QE failure: nothing below 2 at t", False,
        _eval_claim("thm3-N", "t", "exists x. x < y", {"y": 2}))
    add("thm3-dlo-at-s", "DLO QE failure: DLO is validated at s", True, _theory_at_s("thm3-N", "DLO"))
    add("thm3-rm-frame", "DLO QE failure: the frame satisfies the RM conditions (prover check)", True,
        _rm_frame)
    add("thm3-CI", "DLO QE failure: CI as part of the RM conditions", True, _condition("thm3-N", "CI"))
    add("thm3-seriality", "DLO QE failure: RM models are serial", True, _condition("thm3-N", "seriality"))
    add("thm3-heredity", "hereditary condition on sampled formulas", True, _hereditary)
    # arrow-free witnesses
    add("footnote-dlo-thm3", "DLO QE failure, arrow-free witness on the two-world model: proper set",
        True, _proper("thm3-N", "footnote-dlo"))
    add("footnote-dlo-demo", "DLO QE failure, arrow-free witness on the finite surrogate: proper set",
        True, _proper("dlo-footnote-demo", "footnote-dlo"))
    add("footnote-rcf", "RCF QE failure, arrow-free witness on the finite surrogate: proper set", True,
        _proper("rcf-demo", "footnote-rcf"))
    add("rcf-arrow-witness", "RCF QE failure: arrow witness fails at s in the extended model", False,
        _eval_claim("rcf-demo", "s", FORMULAS["arrow-rcf"]))
    add("acf-eq-extended", "ACF QE failure: some x has ~(x=0) and ~(x=x) at s", True,
        _eval_claim("acf-eq-demo", "s", "exists x. ~(x = 0) & ~(x = x)"))
    add("acf-eq-restricted", "ACF QE failure: no such x once = is identity everywhere", False,
        _eval_claim("acf-eq-restricted", "s", "exists x. ~(x = 0) & ~(x = x)"))
    # omega-categoricity
    add("omegacat-M-dlo", "omega-categoricity failure: M is a DLO model", True,
        _theory_at_s("classical-M", "DLO"))
    add("omegacat-N-dlo", "omega-categoricity failure: N is a DLO model", True,
        _theory_at_s("omegacat-N", "DLO"))
    add("omegacat-1", "omega-categoricity failure: M,s satisfies (forall x. x=x) -> A3", True,
        _eval_claim("classical-M", "s", f"(forall x. x = x) -> {a3}"))
    add("omegacat-2", "omega-categoricity failure: M,s refutes A3 & ~A3", False,
        _eval_claim("classical-M", "s", f"({a3}) & ~({a3})"))
    add("omegacat-3", "omega-categoricity failure: N,s refutes (forall x. x=x) -> A3", False,
        _eval_claim("omegacat-N", "s", f"(forall x. x = x) -> {a3}"))
    add("omegacat-4", "omega-categoricity failure: N,s satisfies A3 & ~A3", True,
        _eval_claim("omegacat-N", "s", f"({a3}) & ~({a3})"))
    add("omegacat-agree", "omega-categoricity failure: M and N agree on the battery (recorded: they do not)", False,
        _omegacat_agreement)
    # negation completeness
    add("negcomp-1", "negation completeness failure: classical M refutes the negated implication", False,
        _eval_claim("classical-M", "s", f"~({_IMPL})"))
    add("negcomp-2", "negation completeness failure: N,t satisfies forall x. ~(x<x)", True,
        _eval_claim("thm3-N", "t", "forall x. ~(x < x)"))
    add("negcomp-3", "negation completeness failure: N,t refutes forall x exists y. y<x", False,
        _eval_claim("thm3-N", "t", "forall x. exists y. y < x"))
    add("negcomp-4", "negation completeness failure: N refutes the implication", False,
        _eval_claim("thm3-N", "s", _IMPL))
    # finite models
    add("no-finite-dlo", "DLO has no finite models (bounded search)", True, _no_finite_dlo)
    add("one-element-variant", "the forall x. ~(x<x) variant has a one-element model", True,
        _one_element_variant)
    # B + K + seriality
    add("world-invariance", "world invariance under B + K + seriality", True, _world_invariance)
    return c


CLAIMS = _claims()


def reproduce() -> list[ClaimResult]:
    out = []
    for claim in CLAIMS:
        computed, tr = claim.compute()
        match = computed == claim.recorded
        out.append(ClaimResult(claim.id, claim.claim, computed, claim.recorded, match,
                               "" if match else tr))
    return out


def report_json(results: list[ClaimResult]) -> str:
    rows = []
    for r in results:
        row = asdict(r)
        if not row["trace"]:
            del row["trace"]
        rows.append(row)
    return json.dumps({"claims": rows}, indent=2, sort_keys=True)


def report_text(results: list[ClaimResult]) -> str:
    lines = []
    for r in results:
        flag = "match" if r.match else "MISMATCH"
        lines.append(f"{flag:8}  {r.id:22} computed={r.computed!s:6} recorded={r.recorded!s:6}  {r.claim}")
        if r.trace:
            lines.extend("          " + ln for ln in r.trace.splitlines())
    n_bad = sum(not r.match for r in results)
    lines.append(f"{len(results)} claims, {len(results) - n_bad} match, {n_bad} mismatch")
    return "\n".join(lines)
