# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled maximal-allocation enumerator; same contract as ``_alloc_py``."""

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long)


cdef class _Enum:
    cdef u64 cols[64]
    cdef int n_pieces
    cdef int best
    cdef long total
    cdef long already
    cdef long limit
    cdef int pieces[64]
    cdef int chosen[64]
    cdef int npieces_q
    cdef list found
    cdef list current

    def __init__(self, cols, int n_pieces, long limit):
        cdef int j
        self.n_pieces = n_pieces
        for j in range(n_pieces):
            self.cols[j] = cols[j]
        self.best = 0
        self.total = 0
        self.limit = limit
        self.found = []

    cdef int _match(self, int k, u64 gmask, u64 used) except -1:
        cdef u64 cand, low
        cdef int b
        if k == self.npieces_q:
            self.current.append(tuple([self.chosen[i] for i in range(self.npieces_q)]))
            if self.already + len(self.current) > self.limit:
                raise OverflowError(self.already + len(self.current))
            return 0
        cand = self.cols[self.pieces[k]] & gmask & ~used
        while cand:
            low = cand & (~cand + 1)
            b = __builtin_popcountll(low - 1)
            self.chosen[k] = b
            self._match(k + 1, gmask, used | low)
            cand ^= low
        return 0

    cdef int _dfs(self, int j, u64 qmask, u64 gmask, int qsize) except -1:
        cdef int remaining = self.n_pieces - j
        cdef int gsize
        cdef int k
        if qsize + remaining < self.best:
            return 0
        gsize = __builtin_popcountll(gmask)
        if gsize > qsize + remaining:
            return 0
        if j == self.n_pieces:
            if gsize != qsize:
                return 0
            self.npieces_q = 0
            for k in range(self.n_pieces):
                if (qmask >> k) & 1:
                    self.pieces[self.npieces_q] = k
                    self.npieces_q += 1
            self.current = []
            self.already = self.total if qsize == self.best else 0
            self._match(0, gmask, 0)
            if not self.current:
                return 0
            if qsize > self.best:
                self.best = qsize
                self.found = []
                self.total = 0
            self.total += len(self.current)
            if self.total > self.limit:
                raise OverflowError(self.total)
            for m in self.current:
                self.found.append((qmask, m))
            return 0
        self._dfs(j + 1, qmask | ((<u64>1) << j), gmask | self.cols[j], qsize + 1)
        self._dfs(j + 1, qmask, gmask, qsize)
        return 0


def enumerate_allocations(cols, int n_players, int n_pieces, long limit):
    if n_players > 64 or n_pieces > 64:
        raise ValueError("compiled kernel handles at most 64 players and pieces")
    cdef _Enum e = _Enum(cols, n_pieces, limit)
    e._dfs(0, 0, 0, 0)
    return e.best, e.found
