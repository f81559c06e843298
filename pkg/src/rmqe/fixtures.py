"""Built-in models. Each is validated (heredity and declared frame profile) on load."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .frames import Frame, logic_profile
from .models import (
    EmptyOrder, ExplicitPairs, FiniteDomain, FullOrder, IntervalOrder, Model, RationalOrder,
    ValuatedEquality, check_heredity,
)
from .syntax import parse

__all__ = ["Fixture", "fixtures", "get_fixture", "fixture_ids", "FixtureError", "FORMULAS"]


class FixtureError(RuntimeError):
    """A built-in fixture failed its own structural checks."""


@dataclass(frozen=True)
class Fixture:
    id: str
    model: Model
    notes: str
    profile: tuple = ()  # frame conditions the model must satisfy


SWAP = {"s": "t", "t": "s"}
THM3_R = frozenset({
    ("s", "s", "s"), ("s", "t", "t"), ("t", "s", "s"), ("t", "s", "t"),
    ("t", "t", "s"), ("t", "t", "t"), ("s", "t", "s"),
})
B = ("b1", "b2", "b3", "b4")

# Formulas the fixtures are built to exhibit.
FORMULAS = {
    "witness": "~ (exists x. x < y) & ((forall x. x = x) -> exists x. y < x)",
    "footnote-dlo": "forall y, z. ~(x < y < z) | x < y < z",
    "footnote-rcf": "exists y, z. x < y & y < z & ~(y < z)",
    "arrow-rcf": "forall y, z. (0 < y < z & ~(y < z)) -> ~ forall x. x = x",
    "acf-eq": "exists x. ~(x = y) & ~(x = x)",
    "a3": "forall x, y, z. x < y & y < z -> x < z",
}


def _frac_pairs(elements, rel) -> frozenset:
    return frozenset((a, b) for a in elements for b in elements if rel(a, b))


def _build() -> list[Fixture]:
    out = []
    classical = Frame(("s",), {("s", "s", "s")}, {"s": "s"}, "s")

    out.append(Fixture(
        "thm3-N",
        Model(Frame(("s", "t"), THM3_R, SWAP, "s"), RationalOrder(),
              {"s": FullOrder(), "t": IntervalOrder(2, 3)}, name="thm3-N"),
        "Two worlds over Q. Usual order at s; at t the usual order restricted to [2, 3], "
        "< false outside it. = is identity at both worlds.",
        B + ("contraposition", "WI", "mingle", "seriality"),
    ))
    out.append(Fixture(
        "classical-M",
        Model(classical, RationalOrder(), {"s": FullOrder()}, name="classical-M"),
        "One world with R = W^3 and the identity star; usual order on Q.",
        tuple(sorted(logic_profile(classical) - {"B", "RM", "B+K"})),
    ))
    out.append(Fixture(
        "omegacat-N",
        Model(Frame(("s", "t"), {("s", "s", "s"), ("s", "t", "t")}, SWAP, "s"), RationalOrder(),
              {"s": FullOrder(), "t": EmptyOrder()}, name="omegacat-N"),
        "Usual order on Q at s, empty order at t; no triple starts at t, so implications "
        "hold vacuously there.",
        B,
    ))
    out.append(Fixture(
        "bk-serial-DLO",
        Model(classical, RationalOrder(), {"s": FullOrder()}, name="bk-serial-DLO"),
        "One-world classical model; satisfies B, K and seriality.",
        B + ("K", "seriality"),
    ))
    out.append(Fixture(
        "bk-serial-DLO-2w",
        Model(Frame(("s", "t"), {("s", "s", "s"), ("s", "t", "t"), ("s", "s", "t"), ("t", "t", "t")},
                    SWAP, "s"),
              RationalOrder(), {"s": FullOrder(), "t": FullOrder()}, name="bk-serial-DLO-2w"),
        "Two worlds, usual order on Q at both; satisfies B, K and seriality with a non-trivial star.",
        B + ("K", "seriality"),
    ))

    rcf_dom = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))
    out.append(Fixture(
        "rcf-demo",
        Model(Frame(("s", "t"), THM3_R, SWAP, "s"), FiniteDomain(rcf_dom),
              {"s": ExplicitPairs(_frac_pairs(rcf_dom, lambda a, b: a < b)),
               "t": ExplicitPairs(_frac_pairs(rcf_dom, lambda a, b: b - a > 0 and (b - a).denominator == 1))},
              funcs={"0": Fraction(0)}, name="rcf-demo"),
        "Finite stand-in for a nonstandard real field: usual order at s, and at t only pairs "
        "whose difference is a positive integer. Only the constant 0 is interpreted.",
        B + ("contraposition", "WI", "mingle", "seriality"),
    ))

    acf_dom = (Fraction(0), Fraction(1), Fraction(2), Fraction(3))
    ident = lambda xs: frozenset((a, a) for a in xs)  # noqa: E731
    out.append(Fixture(
        "acf-eq-demo",
        Model(Frame(("s", "t"), THM3_R, SWAP, "s"), FiniteDomain(acf_dom),
              {"s": EmptyOrder(), "t": EmptyOrder()},
              funcs={"0": Fraction(0)},
              equality=ValuatedEquality({"s": ident(acf_dom), "t": ident(acf_dom[:2])}),
              name="acf-eq-demo"),
        "Valuated equality: identity at s, identity on {0, 1} only at t. Stand-in for a "
        "countable field inside an uncountable extension.",
        B + ("contraposition", "WI", "mingle", "seriality"),
    ))
    out.append(Fixture(
        "acf-eq-restricted",
        Model(Frame(("s", "t"), THM3_R, SWAP, "s"), FiniteDomain(acf_dom[:2]),
              {"s": EmptyOrder(), "t": EmptyOrder()},
              funcs={"0": Fraction(0)},
              equality=ValuatedEquality({"s": ident(acf_dom[:2]), "t": ident(acf_dom[:2])}),
              name="acf-eq-restricted"),
        "acf-eq-demo cut down to {0, 1}, where equality is identity at both worlds.",
        B + ("contraposition", "WI", "mingle", "seriality"),
    ))

    foot = tuple(Fraction(i) for i in range(4))
    t_rank = {Fraction(0): 0, Fraction(2): 1, Fraction(1): 2, Fraction(3): 3}
    out.append(Fixture(
        "dlo-footnote-demo",
        Model(Frame(("s", "t"), {("s", "s", "s"), ("s", "t", "t")}, SWAP, "s"), FiniteDomain(foot),
              {"s": ExplicitPairs(_frac_pairs(foot, lambda a, b: a < b)),
               "t": ExplicitPairs(_frac_pairs(foot, lambda a, b: t_rank[a] < t_rank[b]))},
              name="dlo-footnote-demo"),
        "Four elements, usual order at s and the linear order 0 < 2 < 1 < 3 at t. "
        "The universally quantified disjunction without arrows defines {1, 3} at s.",
        B,
    ))
    return out


_CACHE: list[Fixture] | None = None


def _validate(fx: Fixture) -> None:
    her = check_heredity(fx.model)
    if not her.satisfied:
        raise FixtureError(f"{fx.id}: heredity fails at {her.counterexamples[:3]}")
    missing = set(fx.profile) - logic_profile(fx.model.frame)
    if missing:
        raise FixtureError(f"{fx.id}: frame lacks declared conditions {sorted(missing)}")


def fixtures() -> list[Fixture]:
    global _CACHE
    if _CACHE is None:
        built = _build()
        for fx in built:
            _validate(fx)
        _CACHE = built
    return list(_CACHE)


def fixture_ids() -> list[str]:
    return [fx.id for fx in fixtures()]


def get_fixture(fixture_id: str) -> Fixture:
    for fx in fixtures():
        if fx.id == fixture_id:
            return fx
    raise KeyError(f"unknown fixture {fixture_id!r}; known: {', '.join(fixture_ids())}")


def formula(key: str):
    return parse(FORMULAS[key])
