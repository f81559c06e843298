import json
import random
from fractions import Fraction as Q

import pytest

from rmqe.fixtures import FORMULAS, fixtures, get_fixture
from rmqe.frames import Frame
from rmqe.models import (
    EmptyOrder, EvaluationError, ExplicitPairs, FiniteDomain, IntervalOrder, Model,
    PreconditionError, RationalOrder, ValuatedEquality, assignments, check_equality_axioms,
    check_heredity, definable_set, evaluate, hereditary_property_test, model_from_json,
    model_to_json, models_agree, representatives, world_invariance_test,
)
from rmqe.randgen import random_assignment, random_formula, random_rationals
from rmqe.syntax import Bot, Imp, Not, Top, free_vars, parse

N = get_fixture("thm3-N").model
M = get_fixture("classical-M").model
OMEGA = get_fixture("omegacat-N").model
BK2 = get_fixture("bk-serial-DLO-2w").model
WITNESS = parse(FORMULAS["witness"])
RATIONAL = [fx.model for fx in fixtures() if isinstance(fx.model.domain, RationalOrder)]
ALL = [fx.model for fx in fixtures()]


def _sample(m, n, seed, depth=4, free=("x", "y")):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        f = random_formula(rng, depth, free=free, max_nesting=3)
        out.append((f, random_assignment(rng, m, sorted(free_vars(f)))))
    return out


def test_witness_truth():
    assert evaluate(N, "s", WITNESS, {"y": 2}) is True
    assert evaluate(N, "s", WITNESS, {"y": Q(5, 2)}) is False
    assert evaluate(N, "t", parse("exists x. x < y"), {"y": 2}) is False
    assert evaluate(N, "t", parse("exists x. y < x"), {"y": 2}) is True


def test_witness_on_random_rationals():
    rng = random.Random(3)
    for q in random_rationals(rng, 60, Q(-5), Q(8)):
        assert evaluate(N, "s", WITNESS, {"y": q}) == (q == 2)


def test_bot_and_unbound():
    assert evaluate(N, "t", Bot(), {}) is False
    with pytest.raises(EvaluationError):
        evaluate(N, "s", parse("x < y"), {"x": 1})
    with pytest.raises(EvaluationError):
        evaluate(N, "u", Top())


def test_function_symbols_rejected_over_q():
    with pytest.raises(EvaluationError):
        evaluate(N, "s", parse("x + 1 < x"), {"x": 0})


def test_representatives():
    assert representatives(N) == [Q(1), Q(2), Q(5, 2), Q(3), Q(4)]
    assert representatives(N, [2]) == [Q(1), Q(2), Q(5, 2), Q(3), Q(4)]
    assert representatives(M) == [Q(0)]
    assert representatives(M, [Q(1, 3)]) == [Q(-2, 3), Q(1, 3), Q(4, 3)]
    assert representatives(N, [Q(7)]) == [Q(1), Q(2), Q(5, 2), Q(3), Q(5), Q(7), Q(8)]


def test_assignments_cover_orbits_of_pairs():
    pairs = list(assignments(M, ["x", "y"]))
    kinds = {(a["x"] < a["y"], a["x"] == a["y"]) for a in pairs}
    assert kinds == {(True, False), (False, True), (False, False)}


def test_definable_sets():
    ds = definable_set(N, WITNESS)
    assert ds.members == (Q(2),) and ds.proper
    assert definable_set(N, parse("x = x")).full
    assert definable_set(N, parse("x < x")).empty


def test_arrow_free_footnote_formula():
    f = parse(FORMULAS["footnote-dlo"])
    assert definable_set(N, f).full  # the t-order is included in the s-order
    assert definable_set(N, f, "t").empty
    demo = definable_set(get_fixture("dlo-footnote-demo").model, f)
    assert demo.members == (Q(1), Q(3))


def test_rcf_surrogate():
    rcf = get_fixture("rcf-demo").model
    assert definable_set(rcf, parse(FORMULAS["footnote-rcf"])).members == (Q(0),)
    assert evaluate(rcf, "s", parse(FORMULAS["arrow-rcf"])) is False


def test_acf_surrogate():
    f = parse(FORMULAS["acf-eq"])
    assert definable_set(get_fixture("acf-eq-demo").model, f).full
    assert definable_set(get_fixture("acf-eq-restricted").model, f).empty


def test_heredity():
    assert check_heredity(N).satisfied
    assert check_heredity(M).satisfied
    frame = Frame(("s", "t"), {("s", "s", "s"), ("s", "t", "t"), ("s", "t", "s")}, {"s": "t", "t": "s"}, "s")
    dom = FiniteDomain((0, 1))
    bad = Model(frame, dom, {"s": EmptyOrder(), "t": ExplicitPairs({(0, 1)})})
    r = check_heredity(bad)
    assert not r.satisfied
    assert r.counterexamples == (("t", "s", "<", (Q(0), Q(1))),)


def test_acf_heredity_inclusion():
    m = get_fixture("acf-eq-demo").model
    assert m.equality.pairs["t"] < m.equality.pairs["s"]
    assert check_heredity(m).satisfied


def test_hereditary_property_on_thm3():
    r = hereditary_property_test(N, _sample(N, 200, 1))
    assert r.satisfied, r.counterexamples[:3]


def test_hereditary_property_one_world():
    assert hereditary_property_test(M, _sample(M, 50, 2)).satisfied


def test_hereditary_precondition():
    frame = Frame(("s", "t"), {("s", "s", "s"), ("s", "t", "t"), ("s", "t", "s")}, {"s": "t", "t": "s"}, "s")
    bad = Model(frame, FiniteDomain((0, 1)), {"s": EmptyOrder(), "t": ExplicitPairs({(0, 1)})})
    r = hereditary_property_test(bad, [(Top(), {})])
    assert not r.satisfied and "precondition" in r.notes


def test_world_invariance():
    assert world_invariance_test(M, _sample(M, 30, 4)).satisfied
    r = world_invariance_test(BK2, _sample(BK2, 200, 5))
    assert r.satisfied, r.counterexamples[:3]
    pre = world_invariance_test(N, [(Top(), {})])
    assert not pre.satisfied and ("frame", "K") in pre.counterexamples


def test_models_agree():
    a3 = FORMULAS["a3"]
    battery = [parse(f"(forall x. x = x) -> {a3}"), parse(f"({a3}) & ~({a3})")]
    r = models_agree(M, OMEGA, battery)
    assert [(v1, v2) for _, v1, v2 in r.rows] == [(True, True), (False, False)]
    assert models_agree(N, N, battery).agree
    imp = parse("(forall x. ~(x < x)) -> forall x. exists y. y < x")
    assert [(v1, v2) for _, v1, v2 in models_agree(M, N, [imp]).rows] == [(True, False)]
    with pytest.raises(ValueError):
        models_agree(M, N, [parse("x < y")])


def test_negation_completeness_steps():
    imp = parse("(forall x. ~(x < x)) -> forall x. exists y. y < x")
    assert evaluate(M, "s", Not(imp)) is False
    assert evaluate(N, "t", parse("forall x. ~(x < x)")) is True
    assert evaluate(N, "t", parse("forall x. exists y. y < x")) is False
    assert evaluate(N, "t", imp) is False
    assert evaluate(N, "s", imp) is False


def test_equality_axioms():
    acf = get_fixture("acf-eq-demo").model
    sample = [parse("x = 0"), parse("~(x = x)"), parse("exists y. ~(x = y)")]
    assert check_equality_axioms(acf, sample).satisfied
    with pytest.raises(PreconditionError):
        check_equality_axioms(N)
    frame = Frame(("s",), {("s", "s", "s")}, {"s": "s"}, "s")
    ident = ValuatedEquality({"s": {(0, 0), (1, 1)}})
    full = Model(frame, FiniteDomain((0, 1)), {}, funcs={"0": 0}, equality=ident)
    assert check_equality_axioms(full, sample[:2]).satisfied
    partial = Model(frame, FiniteDomain((0, 1)), {}, equality=ValuatedEquality({"s": {(0, 0)}}))
    r = check_equality_axioms(partial)
    assert not r.satisfied and ("R",) in r.counterexamples


@pytest.mark.parametrize("m", ALL, ids=lambda m: m.name)
def test_top_bot_identity_everywhere(m):
    for w in m.worlds:
        assert evaluate(m, w, Top()) and not evaluate(m, w, Bot())
        if m.equality.__class__.__name__ == "LogicalEquality":
            for a in assignments(m, ["x"]):
                assert evaluate(m, w, parse("x = x"), a)
                assert not evaluate(m, w, parse("~(x = x)"), a)


@pytest.mark.parametrize("m", ALL, ids=lambda m: m.name)
def test_double_negation(m):
    for f, a in _sample(m, 40, 6, depth=3):
        for w in m.worlds:
            assert evaluate(m, w, Not(Not(f)), a) == evaluate(m, w, f, a)


@pytest.mark.parametrize("m", [N, M, OMEGA, BK2], ids=lambda m: m.name)
def test_implication_at_s_is_preservation_at_every_world(m):
    rng = random.Random(8)
    for _ in range(40):
        a_f = random_formula(rng, 3, free=("x",))
        b_f = random_formula(rng, 3, free=("x",))
        for asg in assignments(m, ["x"]):
            lhs = evaluate(m, "s", Imp(a_f, b_f), asg)
            rhs = all(not evaluate(m, w, a_f, asg) or evaluate(m, w, b_f, asg) for w in m.worlds)
            assert lhs == rhs


@pytest.mark.parametrize("m", RATIONAL, ids=lambda m: m.name)
def test_orbit_method_against_sampling(m):
    rng = random.Random(9)
    reps = representatives(m)
    for _ in range(40):
        f = random_formula(rng, 4, free=("x", "y"))
        a = random_assignment(rng, m, sorted(free_vars(f)))
        extra = random_rationals(rng, 200, reps[0] - 2, reps[-1] + 2)
        for w in m.worlds:
            assert evaluate(m, w, f, a) == evaluate(m, w, f, a, extra_points=extra)


def test_spec_validation():
    with pytest.raises(ValueError):
        IntervalOrder(3, 2)
    with pytest.raises(ValueError):
        Model(N.frame, RationalOrder(), {"s": ExplicitPairs({(0, 1)})})
    with pytest.raises(ValueError):
        FiniteDomain((0, 0))
    with pytest.raises(ValueError):
        Model(N.frame, FiniteDomain((0,)), {}, equality=ValuatedEquality({"s": set()}))


@pytest.mark.parametrize("m", ALL, ids=lambda m: m.name)
def test_json_round_trip(m):
    data = json.loads(json.dumps(model_to_json(m)))
    back = model_from_json(data)
    assert model_to_json(back) == model_to_json(m)
    for f, a in _sample(m, 15, 10, depth=3):
        assert evaluate(back, back.s, f, a) == evaluate(m, m.s, f, a)


def test_json_shape():
    data = model_to_json(N)
    assert data["domain"] == {"kind": "rational-order"}
    assert data["less"]["t"] == {"kind": "interval", "lo": "2", "hi": "3"}
    assert data["equality"] == {"mode": "logical"}
