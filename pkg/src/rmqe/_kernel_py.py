"""Pure-Python search/evaluation kernel. Mirrors ``_ckernel.pyx`` exactly.

Programs are postorder node arrays ``(ops, a1, a2)`` built by
:func:`rmqe.kernel.compile_formula`; the root is the last node. A finite model
is ``k`` elements ``0..k-1``, per-world order bitmasks (bit ``i*k + j`` means
``i < j``), successor lists for ``R`` and a star array. ``=`` is identity.
"""

BOT, TOP, LESS, EQ, AND, OR, NOT, IMP, ALL, EX = range(10)


def _evaluator(ops, a1, a2, k, succ, star, masks, vals):
    def ev(node, w):
        op = ops[node]
        if op == LESS:
            return (masks[w] >> (vals[a1[node]] * k + vals[a2[node]])) & 1 == 1
        if op == EQ:
            return vals[a1[node]] == vals[a2[node]]
        if op == AND:
            return ev(a1[node], w) and ev(a2[node], w)
        if op == OR:
            return ev(a1[node], w) or ev(a2[node], w)
        if op == NOT:
            return not ev(a1[node], star[w])
        if op == IMP:
            left, right = a1[node], a2[node]
            for w1, w2 in succ[w]:
                if ev(left, w1) and not ev(right, w2):
                    return False
            return True
        if op == ALL or op == EX:
            want = op == EX
            slot, body = a1[node], a2[node]
            saved = vals[slot]
            result = not want
            for d in range(k):
                vals[slot] = d
                if ev(body, w) == want:
                    result = want
                    break
            vals[slot] = saved
            return result
        return op == TOP

    return ev


def eval_program(prog, nslots, k, succ, star, masks, world, values=None):
    """Truth of one compiled formula at ``world``; ``values`` seeds the slots."""
    ops, a1, a2 = prog
    vals = list(values) if values is not None else [0] * nslots
    return _evaluator(ops, a1, a2, k, succ, star, masks, vals)(len(ops) - 1, world)


def search(progs, wants, levels, nslots, nworlds, k, succ, star, heredity):
    """First tuple of per-world order masks making every program evaluate at world 0
    to its wanted value, honouring heredity; returns ``(masks | None, visited)``.

    ``levels[i]`` is the highest world index program ``i`` can reach, so it is
    checked as soon as that world's mask is fixed.
    """
    nmask = 1 << (k * k)
    masks = [0] * nworlds
    vals = [0] * nslots
    evs = [_evaluator(p[0], p[1], p[2], k, succ, star, masks, vals) for p in progs]
    roots = [len(p[0]) - 1 for p in progs]
    by_level = [[i for i in range(len(progs)) if levels[i] == j] for j in range(nworlds)]
    her_at = [[(a, b) for a, b in heredity if max(a, b) == j] for j in range(nworlds)]
    visited = 0

    def rec(j):
        nonlocal visited
        checks = by_level[j]
        hers = her_at[j]
        for m in range(nmask):
            masks[j] = m
            ok = True
            for a, b in hers:
                if masks[a] & ~masks[b]:
                    ok = False
                    break
            if not ok:
                continue
            visited += 1
            for i in checks:
                if evs[i](roots[i], 0) != wants[i]:
                    ok = False
                    break
            if not ok:
                continue
            if j == nworlds - 1 or rec(j + 1):
                return True
        return False

    found = rec(0)
    return (tuple(masks) if found else None), visited
