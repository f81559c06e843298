"""Quantifier elimination for dense linear orders.

Includes the one-variable normaliser, order diagrams and their satisfaction
sets, a candidate checker, the arrow-to-disjunction rewrite, and a
back-and-forth builder for partial isomorphisms between rational orders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

from .frames import ConditionReport, check_condition
from .models import (
    FullOrder, Model, PreconditionError, RationalOrder, assignments, evaluate, less_holds,
    rational,
)
from .syntax import (
    And, Bot, Equal, Exists, Forall, Formula, Imp, Less, Not, Or, Top, Var, conj, disj,
    free_vars, iff, is_quantifier_free, to_text,
)

__all__ = [
    "normalize_qf_dlo", "OrderDiagram", "all_diagrams", "diagram_formula", "lambda_set",
    "qe_dlo", "QECheck", "verify_qe_candidate", "arrow_eliminate", "PartialMap",
    "back_and_forth_extend", "build_partial_isomorphism", "enumerate_rationals",
    "atomic_transfer_failures", "formula_transfer_failures",
]


# -- one-variable normal forms -----------------------------------------------

def normalize_qf_dlo(f: Formula) -> Formula:
    """Reduce a quantifier-free formula over ``x<x``, ``x=x``, bot and top to ``x=x`` or ``x<x``."""
    names: set[str] = set()

    def go(g: Formula) -> bool:  # True means x=x, False means x<x
        if isinstance(g, Top):
            return True
        if isinstance(g, Bot):
            return False
        if isinstance(g, (Less, Equal)):
            if not (isinstance(g.l, Var) and isinstance(g.r, Var) and g.l == g.r):
                raise ValueError(f"atom outside the one-variable fragment: {to_text(g)}")
            names.add(g.l.name)
            if len(names) > 1:
                raise ValueError(f"more than one variable: {sorted(names)}")
            return isinstance(g, Equal)
        if isinstance(g, Not):
            return not go(g.arg)
        if isinstance(g, And):
            left = go(g.l)
            return go(g.r) and left
        if isinstance(g, Or):
            left = go(g.l)
            return go(g.r) or left
        if isinstance(g, Imp):
            left, right = go(g.l), go(g.r)
            return not (left and not right)
        raise ValueError(f"not in the one-variable quantifier-free fragment: {type(g).__name__}")

    eq = go(f)
    x = Var(next(iter(names)) if names else "x")
    return Equal(x, x) if eq else Less(x, x)


# -- order diagrams ----------------------------------------------------------

EQUAL, BELOW, ABOVE = 0, 1, 2


@dataclass(frozen=True)
class OrderDiagram:
    """Relative order of ``n`` variables: ``h[(i, j)]`` for ``1 <= i < j <= n``.

    0 means ``x_i = x_j``, 1 means ``x_i < x_j``, 2 means ``x_j < x_i``.
    """

    n: int
    h: tuple  # sorted ((i, j), code) pairs

    def __post_init__(self):
        h = dict(self.h)
        want = set(itertools.combinations(range(1, self.n + 1), 2))
        if set(h) != want or any(v not in (0, 1, 2) for v in h.values()):
            raise ValueError("h must map every pair i < j to 0, 1 or 2")
        object.__setattr__(self, "h", tuple(sorted(h.items())))

    @classmethod
    def of(cls, n: int, codes: Sequence[int]) -> "OrderDiagram":
        """Build from codes listed in lexicographic pair order."""
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        if len(codes) != len(pairs):
            raise ValueError(f"need {len(pairs)} codes for n={n}")
        return cls(n, tuple(zip(pairs, codes)))

    def cmp(self, i: int, j: int) -> int:
        """-1, 0 or 1 as ``x_i`` is below, equal to or above ``x_j``."""
        if i == j:
            return 0
        if i > j:
            return -self.cmp(j, i)
        code = dict(self.h)[(i, j)]
        return {EQUAL: 0, BELOW: -1, ABOVE: 1}[code]

    @property
    def consistent(self) -> bool:
        """Whether some linear order realises the diagram."""
        idx = range(1, self.n + 1)
        c = {(i, j): self.cmp(i, j) for i in idx for j in idx}
        for i, j, k in itertools.product(idx, repeat=3):
            a, b = c[(i, j)], c[(j, k)]
            if a == 0 and c[(i, k)] != b:
                return False
            if b == 0 and c[(i, k)] != a:
                return False
            if a == b != 0 and c[(i, k)] != a:
                return False
        return True

    def canonical_assignment(self, names: Sequence[str]) -> dict[str, Fraction]:
        """Blocks of equal variables placed at 0, 1, 2, ... in increasing order."""
        if not self.consistent:
            raise ValueError("inconsistent diagram has no realisation")
        idx = range(1, self.n + 1)
        below = {i: {self._block_rep(j) for j in idx if self.cmp(j, i) < 0} for i in idx}
        return {names[i - 1]: Fraction(len(below[i])) for i in idx}

    def _block_rep(self, i: int) -> int:
        return min(j for j in range(1, self.n + 1) if self.cmp(i, j) == 0)


def all_diagrams(n: int, consistent_only: bool = True) -> list[OrderDiagram]:
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    out = []
    for codes in itertools.product((0, 1, 2), repeat=len(pairs)):
        d = OrderDiagram(n, tuple(zip(pairs, codes)))
        if d.consistent or not consistent_only:
            out.append(d)
    return out


def diagram_formula(d: OrderDiagram, names: Sequence[str] | None = None) -> Formula:
    """The conjunction of atoms fixing ``d``; ``Top`` when there are no pairs."""
    names = list(names) if names is not None else [f"x{i}" for i in range(1, d.n + 1)]
    atoms = []
    for (i, j), code in d.h:
        xi, xj = Var(names[i - 1]), Var(names[j - 1])
        atoms.append(Equal(xi, xj) if code == EQUAL else Less(xi, xj) if code == BELOW else Less(xj, xi))
    return conj(atoms)


def _qe_hypotheses(m: Model) -> None:
    if not isinstance(m.domain, RationalOrder):
        raise PreconditionError("order-diagram QE needs a rational-order domain")
    failed = [c for c in ("b1", "b2", "b3", "b4", "K", "seriality")
              if not check_condition(m.frame, c).satisfied]
    if failed:
        raise PreconditionError(f"frame lacks {', '.join(failed)}")
    from .theories import holds_at_s

    if not holds_at_s(m, "DLO").all_hold:
        raise PreconditionError("DLO does not hold at s")


def _ordered_vars(f: Formula) -> list[str]:
    return sorted(free_vars(f))


def lambda_set(m: Model, f: Formula, names: Sequence[str] | None = None,
               check_hypotheses: bool = True) -> list[OrderDiagram]:
    """Consistent diagrams ``h`` such that ``f & B_h`` holds at ``s`` under a realising assignment."""
    if check_hypotheses:
        _qe_hypotheses(m)
    names = list(names) if names is not None else _ordered_vars(f)
    if not names:
        raise PreconditionError("lambda_set needs at least one variable")
    out = []
    for d in all_diagrams(len(names)):
        a = d.canonical_assignment(names)
        if evaluate(m, m.s, And(f, diagram_formula(d, names)), a):
            out.append(d)
    return out


def _fresh(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def qe_dlo(m: Model, f: Formula, check_hypotheses: bool = True) -> Formula:
    """A quantifier-free equivalent of ``f`` at ``s``, as a disjunction of diagrams."""
    if check_hypotheses:
        _qe_hypotheses(m)
    names = _ordered_vars(f)
    if not names:
        x = Var("x")
        return Equal(x, x) if evaluate(m, m.s, f) else Less(x, x)
    lam = lambda_set(m, f, names, check_hypotheses=False)
    if not lam:
        x = Var(_fresh("x", names))
        return Less(x, x)
    return disj(diagram_formula(d, names) for d in lam)


@dataclass(frozen=True)
class QECheck:
    equivalence: ConditionReport
    interdeducibility: ConditionReport

    @property
    def passed(self) -> bool:
        return self.equivalence.satisfied and self.interdeducibility.satisfied


def verify_qe_candidate(m: Model, original: Formula, candidate: Formula) -> QECheck:
    """Check ``candidate`` against ``original`` at ``s`` under two readings.

    Equivalence: the biconditional holds at ``s`` for every representative
    assignment. Interdeducibility: for every such assignment the two formulas
    have the same truth value at ``s``.
    """
    if not is_quantifier_free(candidate):
        raise ValueError("candidate must be quantifier-free")
    names = sorted(free_vars(original) | free_vars(candidate))
    bicond = iff(original, candidate)
    eq_bad, ded_bad = [], []
    for a in assignments(m, names):
        key = tuple(sorted(a.items()))
        if not evaluate(m, m.s, bicond, a):
            eq_bad.append(key)
        v1, v2 = evaluate(m, m.s, original, a), evaluate(m, m.s, candidate, a)
        if v1 != v2:
            ded_bad.append(key + (("original", v1), ("candidate", v2)))
    return QECheck(
        ConditionReport("qe-equivalence", not eq_bad, tuple(eq_bad)),
        ConditionReport("qe-interdeducibility", not ded_bad, tuple(ded_bad)),
    )


def arrow_eliminate(f: Formula) -> Formula:
    """Rewrite every ``A -> B`` as ``~A | B``, recursively."""
    if isinstance(f, Imp):
        return Or(Not(arrow_eliminate(f.l)), arrow_eliminate(f.r))
    if isinstance(f, And):
        return And(arrow_eliminate(f.l), arrow_eliminate(f.r))
    if isinstance(f, Or):
        return Or(arrow_eliminate(f.l), arrow_eliminate(f.r))
    if isinstance(f, Not):
        return Not(arrow_eliminate(f.arg))
    if isinstance(f, Forall):
        return Forall(f.var, arrow_eliminate(f.body))
    if isinstance(f, Exists):
        return Exists(f.var, arrow_eliminate(f.body))
    return f


# -- back and forth ----------------------------------------------------------

@dataclass(frozen=True)
class PartialMap:
    """Finite injective map between rationals, kept in insertion order."""

    pairs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        pairs = tuple((rational(a), rational(b)) for a, b in self.pairs)
        if len({a for a, _ in pairs}) != len(pairs) or len({b for _, b in pairs}) != len(pairs):
            raise ValueError("partial map must be injective and single-valued")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def domain(self) -> list[Fraction]:
        return [a for a, _ in self.pairs]

    @property
    def range(self) -> list[Fraction]:
        return [b for _, b in self.pairs]

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(self.pairs)

    def inverse(self) -> "PartialMap":
        return PartialMap(tuple((b, a) for a, b in self.pairs))

    def order_preserving(self, m: Model, n: Model) -> bool:
        return not _order_violations(self, m, n)


def _order_violations(f: PartialMap, m: Model, n: Model) -> list[tuple]:
    bad = []
    for (a, b), (a2, b2) in itertools.permutations(f.pairs, 2):
        if less_holds(m, m.s, a, a2) != less_holds(n, n.s, b, b2):
            bad.append(((a, b), (a2, b2)))
    return bad


def _bf_hypotheses(*ms: Model) -> None:
    for m in ms:
        if not isinstance(m.domain, RationalOrder) or not isinstance(m.order(m.s), FullOrder):
            raise PreconditionError("back-and-forth needs rational domains with the usual order at s")
        failed = [c for c in ("K", "seriality") if not check_condition(m.frame, c).satisfied]
        if failed:
            raise PreconditionError(f"frame lacks {', '.join(failed)}; s-truth is not world-invariant")


def _image(points: Sequence[Fraction], images: Mapping[Fraction, Fraction], elem: Fraction) -> Fraction:
    if not points:
        return Fraction(0)
    pts = sorted(points)
    if elem < pts[0]:
        return images[pts[0]] - 1
    if elem > pts[-1]:
        return images[pts[-1]] + 1
    for lo, hi in zip(pts, pts[1:]):
        if lo < elem < hi:
            return (images[lo] + images[hi]) / 2
    raise ValueError(f"{elem} is already mapped")


def back_and_forth_extend(f: PartialMap, m: Model, n: Model, elem, side: str = "source",
                          check_hypotheses: bool = True) -> PartialMap:
    """Add ``elem`` on ``side`` with the canonical partner: min-1, max+1 or the midpoint."""
    if check_hypotheses:
        _bf_hypotheses(m, n)
    elem = rational(elem)
    if side == "source":
        if elem in f.domain:
            raise ValueError(f"{elem} is already in the domain")
        return PartialMap(f.pairs + ((elem, _image(f.domain, f.as_dict(), elem)),))
    if side == "target":
        if elem in f.range:
            raise ValueError(f"{elem} is already in the range")
        inv = f.inverse()
        return PartialMap(f.pairs + ((_image(inv.domain, inv.as_dict(), elem), elem),))
    raise ValueError("side must be 'source' or 'target'")


def enumerate_rationals() -> Iterator[Fraction]:
    """Every rational once, by height ``max(|p|, q)`` and then by value."""
    h = 1
    while True:
        level = set()
        for q in range(1, h + 1):
            for p in range(-h, h + 1):
                if max(abs(p), q) == h and gcd(p, q) == 1:
                    level.add(Fraction(p, q))
        yield from sorted(level)
        h += 1


def build_partial_isomorphism(m: Model, n: Model, anchors: Iterable = (), steps: int = 0,
                              check_hypotheses: bool = True) -> PartialMap:
    """Anchors plus ``steps`` alternating forth/back stages over an enumeration of Q.

    Stage ``i`` (from 1) adds the first enumerated rational missing from the
    domain when ``i`` is odd and from the range when ``i`` is even.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if check_hypotheses:
        _bf_hypotheses(m, n)
    f = PartialMap(tuple(anchors))
    bad = _order_violations(f, m, n)
    if bad:
        (a, b), (a2, b2) = bad[0]
        raise ValueError(f"anchors are not order-isomorphic: {a}->{b} and {a2}->{b2}")
    for stage in range(1, steps + 1):
        side = "source" if stage % 2 else "target"
        taken = set(f.domain if side == "source" else f.range)
        elem = next(q for q in enumerate_rationals() if q not in taken)
        f = back_and_forth_extend(f, m, n, elem, side, check_hypotheses=False)
    return f


def atomic_transfer_failures(f: PartialMap, m: Model, n: Model) -> list[tuple]:
    """Pairs of mapped elements on which ``<`` or ``=`` disagree across the map."""
    x, y = Var("x"), Var("y")
    bad = []
    for (a, b), (a2, b2) in itertools.product(f.pairs, repeat=2):
        for atom in (Less(x, y), Equal(x, y)):
            if evaluate(m, m.s, atom, {"x": a, "y": a2}) != evaluate(n, n.s, atom, {"x": b, "y": b2}):
                bad.append((to_text(atom), (a, a2), (b, b2)))
    return bad


def formula_transfer_failures(f: PartialMap, m: Model, n: Model,
                              sample: Iterable[tuple[Formula, Mapping]]) -> list[tuple]:
    """Sampled formulas whose truth at ``s`` changes when the assignment is pushed through ``f``."""
    fmap = f.as_dict()
    bad = []
    for g, a in sample:
        a = {k: rational(v) for k, v in a.items()}
        if not set(a.values()) <= set(fmap):
            raise ValueError("assignment uses an unmapped element")
        image = {k: fmap[v] for k, v in a.items()}
        if evaluate(m, m.s, g, a) != evaluate(n, n.s, g, image):
            bad.append((to_text(g), a, image))
    return bad
