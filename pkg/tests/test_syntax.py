import random

import pytest
from hypothesis import given, settings, strategies as st

from rmqe.randgen import random_ast
from rmqe.syntax import (
    And, Bot, Equal, Exists, Forall, Imp, Inv, Less, Neg, Not, One, Or, ParseError, Plus, Pred,
    Times, Top, Var, Zero, conj, depth, disj, free_vars, iff, instantiate_schema, parse,
    substitute, to_text,
)
from rmqe.theories import THEORIES, labelled_axioms

x, y, z = Var("x"), Var("y"), Var("z")


def test_parse_irreflexivity_axiom():
    assert parse("forall x. x < x -> bot") == Forall("x", Imp(Less(x, x), Bot()))


def test_parse_top():
    assert parse("top") == Top()


def test_negation_scopes_over_first_existential_only():
    f = parse("~ exists x. x < y & (forall x. x = x -> exists x. y < x)")
    assert isinstance(f, And)
    assert f.l == Not(Exists("x", Less(x, y)))
    assert f.r == Forall("x", Imp(Equal(x, x), Exists("x", Less(y, x))))


def test_explicit_witness_form():
    f = parse("~ (exists x. x < y) & ((forall x. x = x) -> exists x. y < x)")
    assert f == And(Not(Exists("x", Less(x, y))),
                    Imp(Forall("x", Equal(x, x)), Exists("x", Less(y, x))))
    assert free_vars(f) == {"y"}


@pytest.mark.parametrize("text, expected", [
    ("x < y & y < z | x = z", Or(And(Less(x, y), Less(y, z)), Equal(x, z))),
    ("x < y -> y < z -> bot", Imp(Less(x, y), Imp(Less(y, z), Bot()))),
    ("~x < y & top", And(Not(Less(x, y)), Top())),
    ("x < y < z", And(Less(x, y), Less(y, z))),
    ("forall x, y. x = y", Forall("x", Forall("y", Equal(x, y)))),
    ("exists x. x < y -> bot", Exists("x", Imp(Less(x, y), Bot()))),
    ("P3(x + 1)", Pred(3, Plus(x, One()))),
    ("-x * inv(y) + 0 = 1", Equal(Plus(Times(Neg(x), Inv(y)), Zero()), One())),
    ("x + y + z = x * y * z", Equal(Plus(Plus(x, y), z), Times(Times(x, y), z))),
    ("(x < y)", Less(x, y)),
    ("(x + y) < z", Less(Plus(x, y), z)),
    ("x' < y''", Less(Var("x'"), Var("y''"))),
])
def test_precedence(text, expected):
    assert parse(text) == expected


def test_iff_desugars():
    assert parse("x = y <-> y = x") == iff(Equal(x, y), Equal(y, x))
    assert "<->" not in to_text(parse("x = y <-> y = x"))


@pytest.mark.parametrize("text", ["x <", "P1(x)", "x < 2", "forall . x < y", "(x < y", "x < y)",
                                  "", "x", "x < y &", "inv x < y", "bot bot"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position >= 0


def test_unknown_arity_message():
    with pytest.raises(ParseError, match="arity"):
        parse("P1(x)")


def test_printer_basics():
    assert to_text(Bot()) == "bot"
    assert to_text(Imp(Less(x, y), Bot())) == "x < y -> bot"


def test_pred_rejects_small_n():
    with pytest.raises(ValueError):
        Pred(1, x)


def test_free_vars():
    assert free_vars(Forall("x", Less(x, y))) == {"y"}
    assert free_vars(Bot()) == set()
    assert free_vars(parse("exists x. x < y & x < z")) == {"y", "z"}


def test_substitute():
    assert substitute(Less(x, y), "y", Zero()) == Less(x, Zero())
    assert substitute(Exists("x", Less(x, y)), "y", x) == Exists("x'", Less(Var("x'"), x))
    assert substitute(Bot(), "x", y) == Bot()
    # bound occurrences are untouched
    assert substitute(Forall("y", Less(x, y)), "y", z) == Forall("y", Less(x, y))


def test_substitute_renames_past_existing_primes():
    f = Exists("x", And(Less(Var("x"), y), Less(Var("x'"), y)))
    out = substitute(f, "y", x)
    assert out == Exists("x''", And(Less(Var("x''"), x), Less(Var("x'"), x)))


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_substitute_idempotent_without_free_occurrence(seed):
    f = random_ast(random.Random(seed), 5)  # never mentions v
    assert "v" not in free_vars(f)
    assert substitute(f, "v", Var("x")) == f


def test_conj_disj_edges():
    assert conj([]) == Top()
    assert disj([]) == Bot()
    assert conj([Bot(), Top(), Bot()]) == And(And(Bot(), Top()), Bot())


def test_depth_counts_atoms_as_one():
    assert depth(Bot()) == 1
    assert depth(Not(Less(x, y))) == 2
    assert depth(Forall("x", And(Bot(), Not(Top())))) == 4


def test_schema_instances():
    assert instantiate_schema("PRESBURGER", "A10", 2) == Forall(
        "x", iff(Pred(2, x), Exists("y", Equal(x, Plus(y, y)))))
    assert instantiate_schema("DOAG", "A5", 2) == Forall("y", Exists("x", Equal(Plus(x, x), y)))
    with pytest.raises(ValueError, match="odd"):
        instantiate_schema("RCF", "A7", 2)
    with pytest.raises(ValueError):
        instantiate_schema("ACF", "A11", 0)
    with pytest.raises(ValueError):
        instantiate_schema("ACF", "A99", 1)


def test_power_is_left_associated():
    f = instantiate_schema("RCF", "A7", 3)
    # y*y*y + x1*(y*y) + x2*y + x3 = 0
    lhs = f.body.body.body.body.l
    y3 = Times(Times(y, y), y)
    assert lhs.left.left.left == y3
    assert lhs.left.left.right == Times(Var("x1"), Times(y, y))


def test_presburger_unique_residue_base_case():
    f = instantiate_schema("PRESBURGER", "A11", 2)
    text = to_text(f)
    assert "P2(x)" in text and "P2(x + 1)" in text


@pytest.mark.parametrize("name", sorted(THEORIES))
def test_every_axiom_is_a_sentence_and_round_trips(name):
    for _, f in labelled_axioms(name, 4):
        assert free_vars(f) == set()
        assert parse(to_text(f)) == f


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_round_trip_property(seed):
    f = random_ast(random.Random(seed), 6)
    assert parse(to_text(f)) == f
