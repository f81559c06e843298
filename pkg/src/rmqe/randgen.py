"""Seeded random formulas and exhaustive small fragments for property checks."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator, Sequence

from .models import FiniteDomain, Model, representatives
from .syntax import (
    And, Bot, Equal, Exists, Forall, Formula, Imp, Inv, Less, Neg, Not, One, Or, Plus, Pred,
    Term, Times, Top, Var, Zero,
)

__all__ = ["random_formula", "random_ast", "random_term", "random_assignment", "random_rationals",
           "lemma1_fragment"]

_BINARY = (And, Or, Imp)


def random_formula(rng: random.Random, depth: int, free: Sequence[str] = ("x", "y"),
                   bound: Sequence[str] = ("u", "v", "w"), quantifiers: bool = True,
                   max_nesting: int | None = None) -> Formula:
    """Order-signature formula of depth at most ``depth`` (atoms have depth 1).

    Free variables come from ``free``; quantifiers bind names from ``bound``.
    ``max_nesting`` caps how many quantifiers may be nested.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")

    def atom(scope: list[str]) -> Formula:
        r = rng.random()
        if r < 0.06 or not scope:
            return Bot() if rng.random() < 0.5 else Top()
        a, b = Var(rng.choice(scope)), Var(rng.choice(scope))
        return Less(a, b) if r < 0.6 else Equal(a, b)

    def go(d: int, scope: list[str], nest: int) -> Formula:
        if d == 1 or rng.random() < 0.2:
            return atom(scope)
        kinds = ["not", "bin", "bin", "bin"]
        if quantifiers and bound and (max_nesting is None or nest < max_nesting):
            kinds += ["q", "q"]
        kind = rng.choice(kinds)
        if kind == "not":
            return Not(go(d - 1, scope, nest))
        if kind == "bin":
            op = rng.choice(_BINARY)
            return op(go(d - 1, scope, nest), go(d - 1, scope, nest))
        v = rng.choice(list(bound))
        q = Forall if rng.random() < 0.5 else Exists
        return q(v, go(d - 1, scope + [v], nest + 1))

    return go(depth, list(free), 0)


_NAMES = ("x", "y", "z", "x1", "y'", "w2")


def random_term(rng: random.Random, depth: int) -> Term:
    """Term over the full signature, depth at most ``depth``."""
    if depth <= 1 or rng.random() < 0.4:
        r = rng.random()
        if r < 0.15:
            return Zero()
        if r < 0.3:
            return One()
        return Var(rng.choice(_NAMES))
    kind = rng.randrange(4)
    if kind == 0:
        return Plus(random_term(rng, depth - 1), random_term(rng, depth - 1))
    if kind == 1:
        return Times(random_term(rng, depth - 1), random_term(rng, depth - 1))
    if kind == 2:
        return Neg(random_term(rng, depth - 1))
    return Inv(random_term(rng, depth - 1))


def random_ast(rng: random.Random, depth: int) -> Formula:
    """Formula over the full language (every constructor), depth at most ``depth``."""
    if depth <= 1 or rng.random() < 0.15:
        r = rng.randrange(5)
        if r == 0:
            return Bot() if rng.random() < 0.5 else Top()
        if r == 1:
            return Pred(rng.randint(2, 12), random_term(rng, 3))
        op = Less if r < 4 else Equal
        return op(random_term(rng, 3), random_term(rng, 3))
    kind = rng.randrange(7)
    if kind == 0:
        return Not(random_ast(rng, depth - 1))
    if kind in (1, 2, 3):
        op = (And, Or, Imp)[kind - 1]
        return op(random_ast(rng, depth - 1), random_ast(rng, depth - 1))
    q = Forall if kind in (4, 5) else Exists
    return q(rng.choice(_NAMES), random_ast(rng, depth - 1))


def random_rationals(rng: random.Random, n: int, lo: Fraction, hi: Fraction,
                     denominator: int = 97) -> list[Fraction]:
    """``n`` rationals drawn uniformly from a grid of step ``1/denominator`` on ``[lo, hi]``."""
    span = int((hi - lo) * denominator)
    return [lo + Fraction(rng.randint(0, span), denominator) for _ in range(n)]


def random_assignment(rng: random.Random, m: Model, names: Sequence[str]) -> dict:
    """Values drawn from the orbit representatives (or the finite domain)."""
    if isinstance(m.domain, FiniteDomain):
        pool = list(m.domain.elements)
    else:
        pool = representatives(m)
        pool = sorted(set(pool) | set(random_rationals(rng, 4, pool[0] - 1, pool[-1] + 1)))
    return {v: rng.choice(pool) for v in names}


def lemma1_fragment(depth: int, var: str = "x") -> Iterator[Formula]:
    """Every formula built from ``x<x``, ``x=x``, bot, top with the four connectives, up to ``depth``."""
    x = Var(var)
    layers: list[list[Formula]] = [[Less(x, x), Equal(x, x), Bot(), Top()]]
    for _ in range(depth - 1):
        below = [f for layer in layers for f in layer]
        start = len(below) - len(layers[-1])  # first formula of the newest layer
        fresh: list[Formula] = [Not(f) for f in layers[-1]]
        for op in _BINARY:
            for i, a in enumerate(below):
                for j, b in enumerate(below):
                    if i >= start or j >= start:
                        fresh.append(op(a, b))
        layers.append(fresh)
    for layer in layers:
        yield from layer
