# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels.

Same names and contracts as ``_kernels_py``; see that module for the
algorithms.  Buffers are plain C arrays owned by each call.
"""
import time
from math import gcd, lcm

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.string cimport memcpy

from . import _kernels_py

BACKEND = "cython"

ctypedef long long i64

cdef i64 LIMIT = 1LL << 62


cdef inline i64 _mod(i64 a, i64 n) nogil:
    a %= n
    return a + n if a < 0 else a


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    cdef i64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef i64 _inv_mod(i64 a, i64 m):
    # a, m coprime, m small
    cdef i64 t = 0, newt = 1, r = m, newr = _mod(a, m), q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    return _mod(t, m)


def power_function(images):
    cdef Py_ssize_t n = len(images)
    cdef Py_ssize_t x, y, s, c, k, ncyc
    cdef i64 fx, t, r, L, g, kk, mod, m2g, diff, tt
    cdef int *img
    cdef int *cyc
    cdef int *pos
    cdef int *lengths
    cdef i64 *rot
    cdef i64 *by_len
    cdef list values

    py_lengths = _kernels_py._cycles(images)[2]
    d = lcm(*py_lengths)
    if d >= LIMIT:
        return _kernels_py.power_function(images)

    img = <int *> PyMem_Malloc(n * sizeof(int))
    cyc = <int *> PyMem_Malloc(n * sizeof(int))
    pos = <int *> PyMem_Malloc(n * sizeof(int))
    lengths = <int *> PyMem_Malloc(n * sizeof(int))
    rot = <i64 *> PyMem_Malloc(n * sizeof(i64))
    by_len = <i64 *> PyMem_Malloc((n + 1) * sizeof(i64))
    try:
        for x in range(n):
            img[x] = images[x]
            cyc[x] = -1
        ncyc = 0
        for s in range(n):
            if cyc[s] >= 0:
                continue
            x = s
            k = 0
            while cyc[x] < 0:
                cyc[x] = ncyc
                pos[x] = k
                k += 1
                x = img[x]
            lengths[ncyc] = k
            ncyc += 1
        values = []
        for x in range(n):
            fx = img[x]
            for c in range(ncyc):
                rot[c] = -1
            for y in range(n):
                t = img[(x + y) % n] - fx
                if t < 0:
                    t += n
                c = cyc[y]
                if cyc[t] != c:
                    return None
                r = _mod(pos[t] - pos[y], lengths[c])
                if rot[c] < 0:
                    rot[c] = r
                elif rot[c] != r:
                    return None
            for c in range(ncyc):
                by_len[lengths[c]] = -1
            kk = 0
            mod = 1
            for c in range(ncyc):
                L = lengths[c]
                if by_len[L] >= 0:
                    if by_len[L] != rot[c]:
                        return None
                    continue
                by_len[L] = rot[c]
                # merge k = kk (mod mod) with k = rot[c] (mod L)
                g = _gcd(mod, L)
                diff = _mod(rot[c] - _mod(kk, L), L)
                if diff % g:
                    return None
                m2g = L // g
                if m2g > 1:
                    tt = ((diff // g) * _inv_mod(_mod(mod // g, m2g), m2g)) % m2g
                else:
                    tt = 0
                kk = kk + mod * tt
                mod = mod * m2g
            values.append(kk % d)
        return d, values
    finally:
        PyMem_Free(img)
        PyMem_Free(cyc)
        PyMem_Free(pos)
        PyMem_Free(lengths)
        PyMem_Free(rot)
        PyMem_Free(by_len)


def closure(generators, cap):
    cdef Py_ssize_t n = len(generators[0])
    cdef Py_ssize_t ngen = len(generators)
    cdef Py_ssize_t cap_rows = 1024, count = 1, head = 0, fend, gi, x, h
    cdef int *gens = <int *> PyMem_Malloc(ngen * n * sizeof(int))
    cdef int *buf = <int *> PyMem_Malloc(cap_rows * n * sizeof(int))
    cdef int *grown
    cdef int *cand = <int *> PyMem_Malloc(n * sizeof(int))
    cdef int *row
    cdef int *gen
    cdef set seen = set()
    try:
        for gi in range(ngen):
            g = generators[gi]
            for x in range(n):
                gens[gi * n + x] = g[x]
        for x in range(n):
            buf[x] = x
        seen.add(PyBytes_FromStringAndSize(<char *> buf, n * sizeof(int)))
        while head < count:
            fend = count
            while head < fend:
                for gi in range(ngen):
                    row = buf + head * n
                    gen = gens + gi * n
                    for x in range(n):
                        cand[x] = gen[row[x]]
                    key = PyBytes_FromStringAndSize(<char *> cand, n * sizeof(int))
                    if key in seen:
                        continue
                    seen.add(key)
                    if count == cap_rows:
                        cap_rows *= 2
                        grown = <int *> PyMem_Malloc(cap_rows * n * sizeof(int))
                        memcpy(grown, buf, count * n * sizeof(int))
                        PyMem_Free(buf)
                        buf = grown
                    memcpy(buf + count * n, cand, n * sizeof(int))
                    count += 1
                    if count > cap:
                        return None
                head += 1
        out = []
        for h in range(count):
            row = buf + h * n
            out.append(tuple([row[x] for x in range(n)]))
        return out
    finally:
        PyMem_Free(gens)
        PyMem_Free(buf)
        PyMem_Free(cand)


cdef class _Search:
    cdef int n
    cdef int *f
    cdef int *finv
    cdef int *trail
    cdef int ntrail
    cdef int *comp
    cdef char *closed
    cdef int ncomp
    cdef int *parent
    cdef int *known
    cdef int *units
    cdef int *unit_inv
    cdef int nunits
    cdef public list solutions
    cdef public long long nodes
    cdef object deadline
    cdef long long check_every

    def __cinit__(self, int n, deadline, long long check_every):
        cdef int w, k = 0
        self.n = n
        self.f = <int *> PyMem_Malloc(n * sizeof(int))
        self.finv = <int *> PyMem_Malloc(n * sizeof(int))
        self.trail = <int *> PyMem_Malloc(n * sizeof(int))
        self.comp = <int *> PyMem_Malloc(n * sizeof(int))
        self.closed = <char *> PyMem_Malloc(n * sizeof(char))
        self.parent = <int *> PyMem_Malloc(n * sizeof(int))
        self.known = <int *> PyMem_Malloc(n * sizeof(int))
        self.units = <int *> PyMem_Malloc(n * sizeof(int))
        self.unit_inv = <int *> PyMem_Malloc(n * sizeof(int))
        for w in range(n):
            self.f[w] = -1
            self.finv[w] = -1
        self.f[0] = 0
        self.finv[0] = 0
        self.ntrail = 0
        for w in range(2, n):
            if gcd(w, n) == 1:
                self.units[k] = w
                self.unit_inv[k] = pow(w, -1, n)
                k += 1
        self.nunits = k
        self.solutions = []
        self.nodes = 0
        self.deadline = deadline
        self.check_every = check_every

    def __dealloc__(self):
        PyMem_Free(self.f)
        PyMem_Free(self.finv)
        PyMem_Free(self.trail)
        PyMem_Free(self.comp)
        PyMem_Free(self.closed)
        PyMem_Free(self.parent)
        PyMem_Free(self.known)
        PyMem_Free(self.units)
        PyMem_Free(self.unit_inv)

    cdef inline bint assign(self, int x, int v):
        if self.f[x] == v:
            return True
        if self.f[x] != -1 or self.finv[v] != -1:
            return False
        self.f[x] = v
        self.finv[v] = x
        self.trail[self.ntrail] = x
        self.ntrail += 1
        return True

    cdef inline void undo(self, int mark):
        cdef int x
        while self.ntrail > mark:
            self.ntrail -= 1
            x = self.trail[self.ntrail]
            self.finv[self.f[x]] = -1
            self.f[x] = -1

    cdef bint commute_rule(self):
        cdef int n = self.n
        cdef int *f = self.f
        cdef bint changed = True
        cdef int nk, i, j, x, y, fx, a, z, c, w, fw
        while changed:
            changed = False
            nk = 0
            for x in range(n):
                if f[x] != -1:
                    self.known[nk] = x
                    nk += 1
            for i in range(nk):
                x = self.known[i]
                fx = f[x]
                for j in range(nk):
                    y = self.known[j]
                    a = f[(x + y) % n]
                    z = (x + f[y]) % n
                    c = f[z]
                    if a != -1:
                        w = _mod(a - fx, n)
                        fw = f[w]
                        if fw != -1:
                            if c == -1:
                                if not self.assign(z, (fx + fw) % n):
                                    return False
                                changed = True
                            elif (fx + fw - c) % n:
                                return False
                        elif c != -1:
                            if not self.assign(w, _mod(c - fx, n)):
                                return False
                            changed = True
                    elif c != -1:
                        w = self.finv[_mod(c - fx, n)]
                        if w != -1:
                            if not self.assign((x + y) % n, (fx + w) % n):
                                return False
                            changed = True
        return True

    cdef void label_components(self):
        cdef int n = self.n
        cdef int *f = self.f
        cdef int s, z, h, cid
        for s in range(n):
            self.comp[s] = -1
        self.ncomp = 0
        for s in range(n):
            if self.comp[s] != -1:
                continue
            cid = self.ncomp
            self.ncomp += 1
            z = f[s]
            while z != -1 and z != s:
                z = f[z]
            if z == s:
                z = s
                while True:
                    self.comp[z] = cid
                    z = f[z]
                    if z == s:
                        break
                self.closed[cid] = 1
            else:
                h = s
                while self.finv[h] != -1:
                    h = self.finv[h]
                z = h
                while z != -1:
                    self.comp[z] = cid
                    z = f[z]
                self.closed[cid] = 0

    cdef inline int find(self, int a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    cdef bint cycle_rule(self):
        cdef int n = self.n
        cdef int *f = self.f
        cdef int x, y, fx, a, r1, r2
        self.label_components()
        for x in range(self.ncomp):
            self.parent[x] = x
        for x in range(n):
            fx = f[x]
            if fx == -1:
                continue
            for y in range(n):
                a = f[(x + y) % n]
                if a == -1:
                    continue
                r1 = self.find(self.comp[y])
                r2 = self.find(self.comp[_mod(a - fx, n)])
                if r1 != r2:
                    if self.closed[r1] or self.closed[r2]:
                        return False
                    self.parent[r1] = r2
        return True

    cdef bint symmetry_rule(self):
        cdef int i, fw
        cdef int f1 = self.f[1]
        cdef long long n = self.n
        for i in range(self.nunits):
            fw = self.f[self.units[i]]
            if fw != -1 and (<long long> self.unit_inv[i] * fw) % n < f1:
                return False
        return True

    cdef int candidates(self, int x, int *out):
        cdef int n = self.n
        cdef int *f = self.f
        cdef int v, x2, c, cnt = 0
        cdef bint ok
        for v in range(n):
            if self.finv[v] != -1:
                continue
            ok = True
            for x2 in range(n):
                if f[x2] == -1:
                    continue
                c = self.comp[_mod(x - x2, n)]
                if self.closed[c] and self.comp[_mod(v - f[x2], n)] != c:
                    ok = False
                    break
            if ok:
                out[cnt] = v
                cnt += 1
        return cnt

    cdef int rec(self) except -1:
        cdef int mark = self.ntrail
        cdef int x = -1, z, i, cnt, m2
        cdef int *cands
        self.nodes += 1
        if self.deadline is not None and self.nodes % self.check_every == 0:
            if time.monotonic() > self.deadline:
                raise _kernels_py._Timeout
        if not (self.commute_rule() and self.symmetry_rule() and self.cycle_rule()):
            self.undo(mark)
            return 0
        for z in range(1, self.n):
            if self.f[z] == -1:
                x = z
                break
        if x == -1:
            images = [self.f[z] for z in range(self.n)]
            if power_function(images) is not None:
                self.solutions.append(tuple(images))
            self.undo(mark)
            return 0
        cands = <int *> PyMem_Malloc(self.n * sizeof(int))
        try:
            cnt = self.candidates(x, cands)
            for i in range(cnt):
                m2 = self.ntrail
                self.assign(x, cands[i])
                self.rec()
                self.undo(m2)
        finally:
            PyMem_Free(cands)
        self.undo(mark)
        return 0

    def run(self, int first):
        self.assign(1, first)
        try:
            self.rec()
        except _kernels_py._Timeout:
            return False
        return True


def search_branch(n, first, deadline=None, check_every=4096):
    if n < 3 or not 0 < first < n:
        raise ValueError("search_branch needs n >= 3 and 0 < first < n")
    search = _Search(n, deadline, check_every)
    complete = search.run(first)
    return search.solutions, search.nodes, complete
