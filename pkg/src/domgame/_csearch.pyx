# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel; same algorithm and interface as ``_search``.

States are 128-bit dominated masks held as two 64-bit words.  The bounds
table is open-addressed with linear probing; once it reaches its entry cap
new states overwrite old ones, which only loses information (every stored
interval is a proven bound).
"""

from libc.stdint cimport uint8_t, uint64_t
from libc.stdlib cimport calloc, free

from domgame._search import BudgetExceeded

cdef extern from *:
    """
    static inline int dg_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int dg_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int dg_popcount(unsigned long long x) nogil
    int dg_ctz(unsigned long long x) nogil

cdef enum:
    MAXV = 128
    PROBES = 32

cdef struct Entry:
    uint64_t k0
    uint64_t k1
    uint8_t lo
    uint8_t hi
    uint8_t tag      # 0 empty, 1 Dominator to move, 2 Staller to move

cdef struct Mask:
    uint64_t w0
    uint64_t w1

cdef inline int pc(Mask a) nogil:
    return dg_popcount(a.w0) + dg_popcount(a.w1)

cdef inline uint64_t mix(uint64_t a, uint64_t b, uint64_t t) nogil:
    cdef uint64_t h = a * <uint64_t>0x9E3779B97F4A7C15ULL
    h ^= (b + <uint64_t>0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2))
    h *= <uint64_t>0xBF58476D1CE4E5B9ULL
    h ^= h >> 31
    h ^= t * <uint64_t>0x94D049BB133111EBULL
    h ^= h >> 29
    return h


cdef class Searcher:
    cdef Mask closed[MAXV]
    cdef public int n
    cdef Mask full
    cdef object budget_obj
    cdef long long budget
    cdef readonly long long nodes
    cdef readonly int max_depth
    cdef public bint prune
    cdef Entry* table
    cdef uint64_t cap
    cdef uint64_t used
    cdef uint64_t max_entries
    cdef bint exhausted

    backend = "cython"

    def __cinit__(self, closed, int n, budget=None, bint prune=True, long long max_entries=1 << 25):
        cdef int v
        if n > MAXV:
            raise ValueError(f"compiled kernel supports at most {MAXV} vertices")
        self.n = n
        for v in range(n):
            x = closed[v]
            self.closed[v].w0 = x & 0xFFFFFFFFFFFFFFFF
            self.closed[v].w1 = x >> 64
        full = (1 << <object>n) - 1
        self.full.w0 = full & 0xFFFFFFFFFFFFFFFF
        self.full.w1 = full >> 64
        self.budget_obj = budget
        self.budget = -1 if budget is None else budget
        self.prune = prune
        self.nodes = 0
        self.max_depth = -1
        self.max_entries = max_entries
        self.cap = 1 << 12
        self.used = 0
        self.table = <Entry*>calloc(self.cap, sizeof(Entry))
        if self.table == NULL:
            raise MemoryError()

    def __dealloc__(self):
        if self.table != NULL:
            free(self.table)

    @property
    def budget(self):
        return self.budget_obj

    @property
    def table_size(self):
        return self.used

    def clear(self):
        cdef uint64_t i
        for i in range(self.cap):
            self.table[i].tag = 0
        self.used = 0

    # -- table -----------------------------------------------------------

    cdef Entry* find(self, Mask d, uint8_t tag) nogil:
        cdef uint64_t mask = self.cap - 1
        cdef uint64_t i = mix(d.w0, d.w1, tag) & mask
        cdef int p
        cdef Entry* e
        for p in range(PROBES):
            e = &self.table[(i + p) & mask]
            if e.tag == 0:
                return NULL
            if e.tag == tag and e.k0 == d.w0 and e.k1 == d.w1:
                return e
        return NULL

    cdef int grow(self) except -1:
        cdef uint64_t old_cap = self.cap
        cdef Entry* old = self.table
        cdef uint64_t i, j, mask
        cdef int p
        cdef Entry* e
        self.cap = old_cap * 2
        self.table = <Entry*>calloc(self.cap, sizeof(Entry))
        if self.table == NULL:
            self.table = old
            self.cap = old_cap
            raise MemoryError()
        mask = self.cap - 1
        self.used = 0
        for i in range(old_cap):
            if old[i].tag != 0:
                j = mix(old[i].k0, old[i].k1, old[i].tag) & mask
                for p in range(PROBES):
                    e = &self.table[(j + p) & mask]
                    if e.tag == 0:
                        e[0] = old[i]
                        self.used += 1
                        break
        free(old)
        return 0

    cdef int store(self, Mask d, uint8_t tag, int lo, int hi) except -1:
        cdef uint64_t mask
        cdef uint64_t i
        cdef int p
        cdef Entry* e
        if self.used * 10 >= self.cap * 7 and self.cap < self.max_entries:
            self.grow()
        mask = self.cap - 1
        i = mix(d.w0, d.w1, tag) & mask
        for p in range(PROBES):
            e = &self.table[(i + p) & mask]
            if e.tag == 0:
                self.used += 1
                break
            if e.tag == tag and e.k0 == d.w0 and e.k1 == d.w1:
                break
        else:
            e = &self.table[i]   # table saturated: replace
            self.exhausted = True
        e.k0 = d.w0
        e.k1 = d.w1
        e.tag = tag
        e.lo = lo
        e.hi = hi
        return 0

    # -- search ----------------------------------------------------------

    cdef int gen(self, Mask d, bint dom, Mask* kids) nogil:
        """Distinct (and, when pruning, undominated) move gains, ordered."""
        cdef Mask undom, cand, nb, new
        cdef int cnt = 0, i, j, v, keep, w
        cdef uint64_t bits
        cdef int pcs[MAXV]
        cdef Mask tmp
        cdef int tp
        undom.w0 = self.full.w0 & ~d.w0
        undom.w1 = self.full.w1 & ~d.w1
        # only neighbours of undominated vertices can be legal
        cand.w0 = 0
        cand.w1 = 0
        bits = undom.w0
        while bits:
            v = dg_ctz(bits)
            bits &= bits - 1
            cand.w0 |= self.closed[v].w0
            cand.w1 |= self.closed[v].w1
        bits = undom.w1
        while bits:
            v = 64 + dg_ctz(bits)
            bits &= bits - 1
            cand.w0 |= self.closed[v].w0
            cand.w1 |= self.closed[v].w1
        for w in range(2):
            bits = cand.w0 if w == 0 else cand.w1
            while bits:
                v = dg_ctz(bits) + 64 * w
                bits &= bits - 1
                new.w0 = self.closed[v].w0 & undom.w0
                new.w1 = self.closed[v].w1 & undom.w1
                for j in range(cnt):
                    if kids[j].w0 == new.w0 and kids[j].w1 == new.w1:
                        break
                else:
                    kids[cnt] = new
                    cnt += 1
        if self.prune and cnt > 1:
            keep = 0
            for i in range(cnt):
                for j in range(cnt):
                    if i == j:
                        continue
                    if dom:
                        # drop i if j strictly contains it
                        if (kids[i].w0 & ~kids[j].w0) == 0 and (kids[i].w1 & ~kids[j].w1) == 0:
                            break
                    else:
                        if (kids[j].w0 & ~kids[i].w0) == 0 and (kids[j].w1 & ~kids[i].w1) == 0:
                            break
                else:
                    kids[keep] = kids[i]
                    keep += 1
            cnt = keep
        for i in range(cnt):
            pcs[i] = pc(kids[i]) if not dom else -pc(kids[i])
        # stable insertion sort keeps first-vertex order among ties
        for i in range(1, cnt):
            tmp = kids[i]
            tp = pcs[i]
            j = i - 1
            while j >= 0 and pcs[j] > tp:
                kids[j + 1] = kids[j]
                pcs[j + 1] = pcs[j]
                j -= 1
            kids[j + 1] = tmp
            pcs[j + 1] = tp
        return cnt

    cdef int rec(self, Mask d, bint dom, int m, int depth) except -1:
        cdef Mask undom, child
        cdef Mask kids[MAXV]
        cdef int u, best, g, lb, lo, hi, cnt, i, r, result, v
        cdef uint8_t tag = 1 if dom else 2
        cdef uint8_t ctag = 2 if dom else 1
        cdef Entry* e
        if d.w0 == self.full.w0 and d.w1 == self.full.w1:
            return 1
        if m <= 0:
            return 0
        undom.w0 = self.full.w0 & ~d.w0
        undom.w1 = self.full.w1 & ~d.w1
        u = pc(undom)
        lo = 1
        hi = u
        e = self.find(d, tag)
        if e != NULL:
            lo = e.lo
            hi = e.hi
        if hi <= m:
            return 1
        if lo > m:
            return 0
        best = 0
        for v in range(self.n):
            child.w0 = self.closed[v].w0 & undom.w0
            child.w1 = self.closed[v].w1 & undom.w1
            g = pc(child)
            if g > best:
                best = g
        lb = (u + best - 1) // best
        if lb > lo:
            lo = lb
        if lo > m:
            self.store(d, tag, lo, hi)
            return 0

        self.nodes += 1
        if self.budget >= 0 and self.nodes > self.budget:
            raise BudgetExceeded(self.nodes)
        if depth > self.max_depth:
            self.max_depth = depth

        cnt = self.gen(d, dom, kids)
        # cutoffs from children already in the table
        for i in range(cnt):
            child.w0 = d.w0 | kids[i].w0
            child.w1 = d.w1 | kids[i].w1
            if child.w0 == self.full.w0 and child.w1 == self.full.w1:
                if dom:
                    self.store(d, tag, lo, m)
                    return 1
                continue
            e = self.find(child, ctag)
            if e == NULL:
                continue
            if dom and e.hi <= m - 1:
                self.store(d, tag, lo, m)
                return 1
            if not dom and e.lo > m - 1:
                self.store(d, tag, m + 1, hi)
                return 0

        result = 1 if not dom else 0
        for i in range(cnt):
            child.w0 = d.w0 | kids[i].w0
            child.w1 = d.w1 | kids[i].w1
            r = self.rec(child, not dom, m - 1, depth + 1)
            if dom and r:
                result = 1
                break
            if not dom and not r:
                result = 0
                break
        if result:
            hi = m
        else:
            lo = m + 1
        self.store(d, tag, lo, hi)
        return result

    cdef Mask tomask(self, x):
        cdef Mask d
        if x < 0 or x >> <object>self.n:
            raise ValueError("dominated mask outside the vertex range")
        d.w0 = x & 0xFFFFFFFFFFFFFFFF
        d.w1 = x >> 64
        return d

    def leq(self, dominated, bint dominator, int m):
        cdef Mask d = self.tomask(dominated)
        self.max_depth = -1
        return bool(self.rec(d, dominator, m, 0))

    def bounds(self, dominated, bint dominator):
        cdef Mask d = self.tomask(dominated)
        cdef Mask undom
        cdef int u
        cdef Entry* e = self.find(d, 1 if dominator else 2)
        undom.w0 = self.full.w0 & ~d.w0
        undom.w1 = self.full.w1 & ~d.w1
        u = pc(undom)
        if e != NULL:
            return (e.lo, e.hi)
        return (min(u, 1), u)

    def value(self, dominated, bint dominator):
        full = (1 << <object>self.n) - 1
        if dominated == full:
            return 0
        lo, hi = self.bounds(dominated, dominator)
        m = max(lo, 1)
        while m < hi and not self.leq(dominated, dominator, m):
            m += 1
        return m

    def children(self, dominated, bint dominator):
        """(new vertices, representative vertex) per searched move."""
        cdef Mask d = self.tomask(dominated)
        cdef Mask kids[MAXV]
        cdef int cnt = self.gen(d, dominator, kids), i, v
        out = []
        for i in range(cnt):
            new = kids[i].w0 | (<object>kids[i].w1 << 64)
            for v in range(self.n):
                if self.closed[v].w0 & ~d.w0 == kids[i].w0 and self.closed[v].w1 & ~d.w1 == kids[i].w1:
                    break
            out.append((new, v))
        return out

    @property
    def saturated(self):
        return self.exhausted
