"""Finite-model search kernel: formula compilation and backend selection.

The compiled extension ``_ckernel`` is used when it imports; otherwise the
pure-Python ``_kernel_py`` takes over. Set ``RMQE_PURE_PYTHON=1`` to force the
fallback. Both backends return identical results.
"""

from __future__ import annotations

import os
from typing import Mapping, Sequence

from .frames import Frame
from .syntax import (
    And, Bot, Equal, Exists, Forall, Formula, Imp, Less, Not, Or, Top, Var,
)

if os.environ.get("RMQE_PURE_PYTHON") == "1":
    from . import _kernel_py as _backend
    BACKEND = "python"
else:
    try:
        from . import _ckernel as _backend
        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _kernel_py as _backend
        BACKEND = "python"

BOT, TOP, LESS, EQ, AND, OR, NOT, IMP, ALL, EX = range(10)

__all__ = ["BACKEND", "Program", "compile_formula", "program_level", "search_frame",
           "eval_compiled", "backend"]


class Program:
    """Postorder node arrays for one formula. ``nslots`` counts variable slots."""

    __slots__ = ("ops", "a1", "a2", "nslots")

    def __init__(self):
        self.ops: list[int] = []
        self.a1: list[int] = []
        self.a2: list[int] = []
        self.nslots = 0

    def emit(self, op: int, a: int = 0, b: int = 0) -> int:
        self.ops.append(op)
        self.a1.append(a)
        self.a2.append(b)
        return len(self.ops) - 1

    @property
    def arrays(self):
        return (self.ops, self.a1, self.a2)


def _slot(t, env: Mapping[str, int]) -> int:
    from .theories import SignatureError
    if not isinstance(t, Var):
        raise SignatureError(f"the search kernel handles variables only, got term {t}")
    try:
        return env[t.name]
    except KeyError:
        raise ValueError(f"unbound variable {t.name!r}") from None


def compile_formula(f: Formula, slots: Sequence[str] = ()) -> Program:
    """Compile an order-signature formula. ``slots`` names the free variables, in slot order."""
    from .theories import SignatureError
    p = Program()
    env = {v: i for i, v in enumerate(slots)}
    p.nslots = len(env)

    def go(g: Formula, env: dict) -> int:
        if isinstance(g, Bot):
            return p.emit(BOT)
        if isinstance(g, Top):
            return p.emit(TOP)
        if isinstance(g, Less):
            return p.emit(LESS, _slot(g.l, env), _slot(g.r, env))
        if isinstance(g, Equal):
            return p.emit(EQ, _slot(g.l, env), _slot(g.r, env))
        if isinstance(g, Not):
            return p.emit(NOT, go(g.arg, env))
        if isinstance(g, (And, Or, Imp)):
            op = {And: AND, Or: OR, Imp: IMP}[type(g)]
            left = go(g.l, env)
            return p.emit(op, left, go(g.r, env))
        if isinstance(g, (Forall, Exists)):
            slot = p.nslots
            p.nslots += 1
            body = go(g.body, {**env, g.var: slot})
            return p.emit(ALL if isinstance(g, Forall) else EX, slot, body)
        raise SignatureError(f"the search kernel handles <, = only, not {type(g).__name__}")

    go(f, env)
    p.nslots = max(p.nslots, 1)
    return p


def program_level(p: Program, succ: Sequence[Sequence[tuple[int, int]]], star: Sequence[int],
                  start: int = 0) -> int:
    """Highest world index whose order mask evaluation from ``start`` can read."""
    ops, a1, a2 = p.arrays
    seen: set[tuple[int, int]] = set()
    level = 0
    stack = [(len(ops) - 1, start)]
    while stack:
        node, w = stack.pop()
        if (node, w) in seen:
            continue
        seen.add((node, w))
        op = ops[node]
        if op == LESS:
            level = max(level, w)
        elif op in (AND, OR):
            stack += [(a1[node], w), (a2[node], w)]
        elif op == NOT:
            stack.append((a1[node], star[w]))
        elif op == IMP:
            for w1, w2 in succ[w]:
                stack += [(a1[node], w1), (a2[node], w2)]
        elif op in (ALL, EX):
            stack.append((a2[node], w))
    return level


def _frame_arrays(frame: Frame):
    index = {w: i for i, w in enumerate(frame.worlds)}
    succ = [[(index[b], index[c]) for b, c in frame.successors(w)] for w in frame.worlds]
    star = [index[frame.star[w]] for w in frame.worlds]
    return index, succ, star


def search_frame(frame: Frame, k: int, wanted: Sequence[tuple[Formula, bool]]):
    """Search order valuations on ``frame`` over ``k`` elements.

    Returns ``(masks, visited)``: the first per-world mask tuple (in odometer
    order, world 0 outermost) giving each formula its wanted truth value at the
    designated world, or ``None``.
    """
    if frame.worlds[0] != frame.s:
        raise ValueError("designated world must come first")
    index, succ, star = _frame_arrays(frame)
    progs = [compile_formula(f) for f, _ in wanted]
    levels = [program_level(p, succ, star) for p in progs]
    heredity = sorted({(index[b], index[c]) for a, b, c in frame.R
                       if a == frame.s and b != c})
    nslots = max((p.nslots for p in progs), default=1)
    return _backend.search([p.arrays for p in progs], [bool(v) for _, v in wanted], levels,
                           nslots, len(frame.worlds), k, succ, star, heredity)


def eval_compiled(frame: Frame, k: int, masks: Sequence[int], f: Formula, world: str,
                  assignment: Mapping[str, int] | None = None) -> bool:
    """Evaluate ``f`` on a mask-encoded model; used for cross-checking the backends."""
    assignment = dict(assignment or {})
    names = sorted(assignment)
    p = compile_formula(f, names)
    index, succ, star = _frame_arrays(frame)
    values = [assignment[n] for n in names] + [0] * (p.nslots - len(names))
    return _backend.eval_program(p.arrays, p.nslots, k, succ, star, list(masks),
                                 index[world], values)


def backend():
    return _backend
