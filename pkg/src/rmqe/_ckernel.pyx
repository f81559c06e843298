# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search/evaluation kernel; same API and results as ``_kernel_py``."""

from libc.stdlib cimport malloc, free

cdef enum:
    BOT = 0
    TOP = 1
    LESS = 2
    EQ = 3
    AND = 4
    OR = 5
    NOT = 6
    IMP = 7
    ALL = 8
    EX = 9

ctypedef unsigned long long u64

cdef struct Prog:
    int n
    int* ops
    int* a1
    int* a2

cdef struct Ctx:
    int k
    int nworlds
    int* succ_off      # nworlds + 1 offsets into succ_w1/succ_w2
    int* succ_w1
    int* succ_w2
    int* star
    u64* masks
    int* vals


cdef bint ev(Ctx* c, Prog* p, int node, int w) nogil:
    cdef int op = p.ops[node]
    cdef int i, slot, body, saved, d
    cdef bint want, result
    if op == LESS:
        return (c.masks[w] >> (c.vals[p.a1[node]] * c.k + c.vals[p.a2[node]])) & 1
    if op == EQ:
        return c.vals[p.a1[node]] == c.vals[p.a2[node]]
    if op == AND:
        return ev(c, p, p.a1[node], w) and ev(c, p, p.a2[node], w)
    if op == OR:
        return ev(c, p, p.a1[node], w) or ev(c, p, p.a2[node], w)
    if op == NOT:
        return not ev(c, p, p.a1[node], c.star[w])
    if op == IMP:
        for i in range(c.succ_off[w], c.succ_off[w + 1]):
            if ev(c, p, p.a1[node], c.succ_w1[i]) and not ev(c, p, p.a2[node], c.succ_w2[i]):
                return False
        return True
    if op == ALL or op == EX:
        want = op == EX
        slot = p.a1[node]
        body = p.a2[node]
        saved = c.vals[slot]
        result = not want
        for d in range(c.k):
            c.vals[slot] = d
            if ev(c, p, body, w) == want:
                result = want
                break
        c.vals[slot] = saved
        return result
    return op == TOP


cdef int* _ints(object xs) except NULL:
    cdef Py_ssize_t n = len(xs)
    cdef int* out = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = xs[i]
    return out


cdef class _Model:
    cdef Ctx ctx
    cdef Prog* progs
    cdef int nprogs

    def __cinit__(self, progs, int nslots, int nworlds, int k, succ, star):
        cdef int i, j, pos
        flat1 = []
        flat2 = []
        offs = [0]
        for w in range(nworlds):
            for w1, w2 in succ[w]:
                flat1.append(w1)
                flat2.append(w2)
            offs.append(len(flat1))
        self.ctx.k = k
        self.ctx.nworlds = nworlds
        self.ctx.succ_off = _ints(offs)
        self.ctx.succ_w1 = _ints(flat1)
        self.ctx.succ_w2 = _ints(flat2)
        self.ctx.star = _ints(star)
        self.ctx.masks = <u64*> malloc(nworlds * sizeof(u64))
        self.ctx.vals = _ints([0] * max(nslots, 1))
        for i in range(nworlds):
            self.ctx.masks[i] = 0
        self.nprogs = len(progs)
        self.progs = <Prog*> malloc((self.nprogs if self.nprogs > 0 else 1) * sizeof(Prog))
        for i in range(self.nprogs):
            ops, a1, a2 = progs[i]
            self.progs[i].n = len(ops)
            self.progs[i].ops = _ints(ops)
            self.progs[i].a1 = _ints(a1)
            self.progs[i].a2 = _ints(a2)

    def __dealloc__(self):
        cdef int i
        if self.progs != NULL:
            for i in range(self.nprogs):
                free(self.progs[i].ops)
                free(self.progs[i].a1)
                free(self.progs[i].a2)
            free(self.progs)
        free(self.ctx.succ_off)
        free(self.ctx.succ_w1)
        free(self.ctx.succ_w2)
        free(self.ctx.star)
        free(self.ctx.masks)
        free(self.ctx.vals)


def eval_program(prog, int nslots, int k, succ, star, masks, int world, values=None):
    """Truth of one compiled formula at ``world``; ``values`` seeds the slots."""
    cdef _Model m = _Model([prog], nslots, len(star), k, succ, star)
    cdef int i
    for i in range(len(star)):
        m.ctx.masks[i] = masks[i]
    if values is not None:
        for i in range(len(values)):
            m.ctx.vals[i] = values[i]
    return bool(ev(&m.ctx, &m.progs[0], m.progs[0].n - 1, world))


cdef bint _rec(Ctx* c, Prog* progs, int nprogs, int j, int* wants, int* levels,
               int* her_a, int* her_b, int nher, u64 nmask, long long* visited) nogil:
    cdef u64 mm
    cdef int i, h, a, b
    cdef bint ok
    for mm in range(nmask):
        c.masks[j] = mm
        ok = True
        for h in range(nher):
            a = her_a[h]
            b = her_b[h]
            if (a == j or b == j) and a <= j and b <= j:
                if c.masks[a] & ~c.masks[b]:
                    ok = False
                    break
        if not ok:
            continue
        visited[0] += 1
        for i in range(nprogs):
            if levels[i] == j and ev(c, &progs[i], progs[i].n - 1, 0) != wants[i]:
                ok = False
                break
        if not ok:
            continue
        if j == c.nworlds - 1 or _rec(c, progs, nprogs, j + 1, wants, levels,
                                      her_a, her_b, nher, nmask, visited):
            return True
    return False


def search(progs, wants, levels, int nslots, int nworlds, int k, succ, star, heredity):
    """First tuple of per-world order masks satisfying every program's wanted value
    at world 0 under heredity; returns ``(masks | None, visited)``."""
    cdef _Model m = _Model(progs, nslots, nworlds, k, succ, star)
    cdef int* cw = _ints([1 if w else 0 for w in wants])
    cdef int* cl = _ints(levels)
    cdef int* ha = _ints([a for a, _ in heredity])
    cdef int* hb = _ints([b for _, b in heredity])
    cdef long long visited = 0
    cdef u64 nmask = (<u64> 1) << (k * k)
    cdef int nher = len(heredity)
    cdef bint found
    try:
        with nogil:
            found = _rec(&m.ctx, m.progs, m.nprogs, 0, cw, cl, ha, hb, nher, nmask, &visited)
        if found:
            return tuple(int(m.ctx.masks[i]) for i in range(nworlds)), visited
        return None, visited
    finally:
        free(cw)
        free(cl)
        free(ha)
        free(hb)
