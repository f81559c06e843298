from fractions import Fraction as Q

import pytest

from rmqe.fixtures import get_fixture
from rmqe.frames import B_CONDITIONS, Frame, check_condition
from rmqe.models import ExplicitPairs, FiniteDomain, Model, check_heredity, evaluate
from rmqe.syntax import Forall, Not, Var, Equal, free_vars, parse, to_text
from rmqe.theories import (
    THEORIES, SearchResult, SignatureError, axioms_of, find_countermodel, find_finite_model,
    holds_at_s, labelled_axioms,
)


def test_axiom_counts():
    assert len(axioms_of("DLO", 2)) == 6
    assert len(axioms_of("DLO", 9)) == 6
    assert len(axioms_of("PRESBURGER", 3)) == 13
    assert len(axioms_of("ACF", 2)) == 12
    assert len(axioms_of("RCF", 2)) == 17  # A7 only for n = 1
    assert len(axioms_of("RCF", 3)) == 18
    assert len(axioms_of("DOAG", 3)) == 10


def test_axiom_labels_sorted_by_number():
    ids = [i for i, _ in labelled_axioms("PRESBURGER", 3)]
    assert ids[:9] == [f"A{i}" for i in range(1, 10)]
    assert ids[9:] == ["A10[n=2]", "A10[n=3]", "A11[n=2]", "A11[n=3]"]


def test_names_case_insensitive_and_errors():
    assert axioms_of("dlo") == axioms_of("DLO")
    with pytest.raises(ValueError):
        axioms_of("ZFC")
    with pytest.raises(ValueError):
        axioms_of("DLO", 1)


def test_dlo_axioms_verbatim():
    ax = dict(labelled_axioms("DLO"))
    assert to_text(ax["A1"]) == "forall x. x < x -> bot"
    assert ax["A4"] == parse("forall x, y. x < y -> exists z. x < z & z < y")


def test_rcf_a6_keeps_quantifier_outside():
    assert dict(labelled_axioms("RCF"))["A6"] == parse("forall x. exists y. 0 < x -> x = y * y")


def test_associativity_closed():
    for name, aid in [("RCF", "A12"), ("ACF", "A5")]:
        f = dict(labelled_axioms(name))[aid]
        assert free_vars(f) == set()


def test_variant_replaces_a1():
    ax = dict(labelled_axioms("DLO-NEG"))
    assert ax["A1"] == Forall("x", Not(parse("x < x")))


def test_holds_at_s():
    assert holds_at_s(get_fixture("thm3-N").model, "DLO").all_hold
    assert holds_at_s(get_fixture("classical-M").model, "DLO").all_hold
    frame = Frame(("s",), {("s", "s", "s")}, {"s": "s"}, "s")
    dom = FiniteDomain((0, 1, 2))
    chain = Model(frame, dom, {"s": ExplicitPairs({(a, b) for a in range(3) for b in range(3) if a < b})})
    r = holds_at_s(chain, "DLO")
    assert not r.all_hold
    assert set(r.failing) <= {"A4", "A5", "A6"} and r.failing


def test_signature_mismatch():
    with pytest.raises(SignatureError):
        holds_at_s(get_fixture("thm3-N").model, "RCF")
    with pytest.raises(SignatureError):
        holds_at_s(get_fixture("rcf-demo").model, "ACF")


def test_no_finite_dlo_model():
    stats = SearchResult(None)
    assert find_finite_model("DLO", 3, 2, B_CONDITIONS, stats=stats) is None
    assert stats.frames_tried > 0 and stats.candidates > 0


def test_variant_one_element_model():
    assert find_finite_model("DLO-NEG", 1, 1, B_CONDITIONS) is None
    m = find_finite_model("DLO-NEG", 1, 2, B_CONDITIONS)
    assert m is not None
    assert len(m.domain.elements) == 1
    assert holds_at_s(m, "DLO-NEG").all_hold
    assert check_heredity(m).satisfied
    assert all(check_condition(m.frame, c).satisfied for c in B_CONDITIONS)
    assert m.frame.R == frozenset({("s", "s", "s"), ("s", "t", "t")})


def test_search_is_deterministic():
    a = find_finite_model("DLO-NEG", 2, 2, B_CONDITIONS)
    b = find_finite_model("DLO-NEG", 2, 2, B_CONDITIONS)
    assert a.frame == b.frame and a.less == b.less


def test_guards():
    with pytest.raises(ValueError):
        find_finite_model("DLO", 0, 1)
    with pytest.raises(ValueError):
        find_finite_model("DLO", 5, 1)
    with pytest.raises(ValueError):
        find_finite_model("DLO", 2, 3)
    with pytest.raises(SignatureError):
        find_finite_model("RCF", 2, 1)
    with pytest.raises(ValueError):
        find_finite_model("DLO", 2, 1, ["bogus"])


def test_countermodels():
    x = Var("x")
    assert find_countermodel([], Forall("x", Equal(x, x)), 2, 2) is None
    irr = parse("forall x. ~(x < x)")
    m = find_countermodel([], irr, 2, 2)
    assert m is not None and not evaluate(m, m.s, irr)
    a2 = dict(labelled_axioms("DLO"))["A2"]
    assert find_countermodel([a2], a2, 2, 2) is None


def test_countermodel_rechecks():
    prem = [parse("forall x. exists y. x < y")]
    concl = parse("exists x. x < x")
    m = find_countermodel(prem, concl, 3, 2, B_CONDITIONS)
    assert m is not None
    assert evaluate(m, m.s, prem[0]) and not evaluate(m, m.s, concl)
    assert check_heredity(m).satisfied


def test_countermodel_needs_sentences():
    with pytest.raises(ValueError):
        find_countermodel([], parse("x < y"), 1, 1)
    with pytest.raises(SignatureError):
        find_countermodel([], parse("forall x. x + 0 = x"), 1, 1)


@pytest.mark.parametrize("name", sorted(THEORIES))
def test_all_axioms_are_sentences(name):
    for f in axioms_of(name, 5):
        assert not free_vars(f)


def test_exact_arithmetic_model():
    # Z/3 with the order 0 < 1 < 2 is not an ordered group; A4 (monotonicity) fails at s
    frame = Frame(("s",), {("s", "s", "s")}, {"s": "s"}, "s")
    els = (0, 1, 2)
    plus = {(Q(a), Q(b)): Q((a + b) % 3) for a in els for b in els}
    neg = {Q(a): Q((-a) % 3) for a in els}
    m = Model(frame, FiniteDomain(els), {"s": ExplicitPairs({(a, b) for a in els for b in els if a < b})},
              funcs={"0": 0, "+": plus, "-": neg})
    r = holds_at_s(m, "DOAG", 2)
    assert "A4" in r.failing
    assert dict(r.rows)["A6"] and dict(r.rows)["A8"]
