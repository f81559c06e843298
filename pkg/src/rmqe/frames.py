"""Routley-Meyer frames and the catalogue of named frame conditions."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

__all__ = [
    "Frame", "ConditionReport", "CONDITIONS", "B_CONDITIONS", "RM_CONDITIONS",
    "check_condition", "logic_profile", "enumerate_frames",
    "frame_from_json", "frame_to_json",
]


@dataclass(frozen=True)
class Frame:
    """Worlds, ternary relation ``R``, star involution and designated world ``s``.

    ``worlds`` is ordered; that order is the one used for enumeration and for
    sorting counterexamples.
    """

    worlds: tuple[str, ...]
    R: frozenset[tuple[str, str, str]]
    star: Mapping[str, str]
    s: str

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "R", frozenset(tuple(t) for t in self.R))
        object.__setattr__(self, "star", dict(self.star))
        ws = set(self.worlds)
        if len(ws) != len(self.worlds):
            raise ValueError("duplicate world ids")
        if self.s not in ws:
            raise ValueError(f"designated world {self.s!r} is not a world")
        for t in self.R:
            if len(t) != 3 or not set(t) <= ws:
                raise ValueError(f"triple {t!r} mentions an unknown world")
        if set(self.star) != ws or not set(self.star.values()) <= ws:
            raise ValueError("star must be a total map on worlds")

    def __hash__(self):
        return hash((self.worlds, self.R, tuple(sorted(self.star.items())), self.s))

    def rel(self, a: str, b: str, c: str) -> bool:
        return (a, b, c) in self.R

    def successors(self, w: str) -> list[tuple[str, str]]:
        """Pairs ``(w1, w2)`` with ``R w w1 w2``, in world order."""
        return [(b, c) for b in self.worlds for c in self.worlds if (w, b, c) in self.R]


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    satisfied: bool
    counterexamples: tuple = field(default_factory=tuple)
    notes: str = ""

    def __post_init__(self):
        if self.satisfied == bool(self.counterexamples):
            raise ValueError("satisfied must hold exactly when there are no counterexamples")


# Each checker yields violating tuples in lexicographic world order.

def _b1(f: Frame):
    for a in f.worlds:
        if not f.rel(f.s, a, a):
            yield (a,)


def _b2(f: Frame):
    W = f.worlds
    for a, b, c, d in itertools.product(W, repeat=4):
        if f.rel(f.s, a, b) and f.rel(b, c, d) and not f.rel(a, c, d):
            yield (a, b, c, d)


def _b3(f: Frame):
    for a in f.worlds:
        if f.star[f.star[a]] != a:
            yield (a,)


def _b4(f: Frame):
    for a, b in itertools.product(f.worlds, repeat=2):
        if f.rel(f.s, a, b) and not f.rel(f.s, f.star[b], f.star[a]):
            yield (a, b)


def _contraposition(f: Frame):
    for a, b, c in itertools.product(f.worlds, repeat=3):
        if f.rel(a, b, c) and not f.rel(a, f.star[c], f.star[b]):
            yield (a, b, c)


def _ci(f: Frame):
    for a, b, c in itertools.product(f.worlds, repeat=3):
        if f.rel(a, b, c) and not f.rel(a, c, b):
            yield (a, b, c)


def _wi(f: Frame):
    for a in f.worlds:
        if not f.rel(a, a, a):
            yield (a,)


def _bcomb(f: Frame):
    W = f.worlds
    for a, b, c, d in itertools.product(W, repeat=4):
        if any(f.rel(a, b, x) and f.rel(x, c, d) for x in W):
            if not any(f.rel(a, y, d) and f.rel(b, c, y) for y in W):
                yield (a, b, c, d)


def _mingle(f: Frame):
    for a, b, c in itertools.product(f.worlds, repeat=3):
        if f.rel(a, b, c) and not (f.rel(f.s, a, c) or f.rel(f.s, b, c)):
            yield (a, b, c)


def _k(f: Frame):
    for a, b, c in itertools.product(f.worlds, repeat=3):
        if f.rel(a, b, c) and not f.rel(f.s, a, c):
            yield (a, b, c)


def _c(f: Frame):
    for a in f.worlds:
        if not f.rel(a, f.s, a):
            yield (a,)


def _seriality(f: Frame):
    for a in f.worlds:
        if not any(t[0] == a for t in f.R):
            yield (a,)


CONDITIONS: dict[str, tuple[Callable[[Frame], Iterator[tuple]], str]] = {
    "b1": (_b1, "for all a: R s a a"),
    "b2": (_b2, "R s a b and R b c d imply R a c d"),
    "b3": (_b3, "a** = a"),
    "b4": (_b4, "R s a b implies R s b* a*"),
    "contraposition": (_contraposition, "R a b c implies R a c* b*"),
    "CI": (_ci, "R a b c implies R a c b"),
    "WI": (_wi, "for all a: R a a a"),
    "Bcomb": (_bcomb, "(exists x. R a b x and R x c d) implies (exists y. R a y d and R b c y)"),
    "mingle": (_mingle, "R a b c implies R s a c or R s b c"),
    "K": (_k, "R a b c implies R s a c"),
    "C": (_c, "for all a: R a s a"),
    "seriality": (_seriality, "for all a there are b, c with R a b c"),
}

B_CONDITIONS = ("b1", "b2", "b3", "b4")
RM_CONDITIONS = B_CONDITIONS + ("contraposition", "CI", "WI", "Bcomb", "mingle")


def check_condition(frame: Frame, condition: str) -> ConditionReport:
    """Decide ``condition`` on ``frame`` by exhaustive enumeration."""
    try:
        checker, _ = CONDITIONS[condition]
    except KeyError:
        raise ValueError(
            f"unknown condition {condition!r}; known: {', '.join(CONDITIONS)}"
        ) from None
    bad = tuple(checker(frame))
    return ConditionReport(condition, not bad, bad)


def logic_profile(frame: Frame) -> frozenset[str]:
    """Named conditions ``frame`` satisfies plus the derived labels B, RM and B+K."""
    held = {c for c in CONDITIONS if check_condition(frame, c).satisfied}
    if held >= set(B_CONDITIONS):
        held.add("B")
        if "K" in held:
            held.add("B+K")
    if held >= set(RM_CONDITIONS):
        held.add("RM")
    return frozenset(held)


def _world_names(n: int) -> tuple[str, ...]:
    if n <= 3:
        return ("s", "t", "u")[:n]
    return ("s",) + tuple(f"w{i}" for i in range(1, n))


def enumerate_frames(max_worlds: int, required: Iterable[str] = ()) -> Iterator[Frame]:
    """Yield every frame with 1..max_worlds worlds meeting all ``required`` conditions.

    The designated world is always the first. Frames come out ordered by world
    count, then star map, then the bitmask of ``R`` over triples in lexicographic
    order. No isomorphism reduction is done.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be >= 1")
    required = tuple(required)
    for c in required:
        if c not in CONDITIONS:
            raise ValueError(f"unknown condition {c!r}")
    for n in range(1, max_worlds + 1):
        W = _world_names(n)
        triples = list(itertools.product(W, repeat=3))
        # triples forced by b1 / WI can be fixed up front
        forced = set()
        if "b1" in required:
            forced |= {(W[0], a, a) for a in W}
        if "WI" in required:
            forced |= {(a, a, a) for a in W}
        free = [t for t in triples if t not in forced]
        for images in itertools.product(W, repeat=n):
            star = dict(zip(W, images))
            if "b3" in required and any(star[star[a]] != a for a in W):
                continue
            for mask in range(1 << len(free)):
                R = set(forced)
                R.update(t for i, t in enumerate(free) if mask >> i & 1)
                frame = Frame(W, frozenset(R), star, W[0])
                if all(check_condition(frame, c).satisfied for c in required):
                    yield frame


# -- JSON --------------------------------------------------------------------

def frame_to_json(frame: Frame) -> dict:
    return {
        "worlds": list(frame.worlds),
        "designated": frame.s,
        "R": sorted([list(t) for t in frame.R], key=lambda t: [frame.worlds.index(w) for w in t]),
        "star": {w: frame.star[w] for w in frame.worlds},
    }


def frame_from_json(data: dict | str) -> Frame:
    if isinstance(data, str):
        data = json.loads(data)
    return Frame(
        tuple(data["worlds"]),
        frozenset(tuple(t) for t in data["R"]),
        dict(data["star"]),
        data["designated"],
    )
