"""Pure-Python maximal-allocation enumerator (fallback for the compiled kernel).

Works on bitmasks: ``cols[j]`` has bit ``i`` set when player ``i`` accepts
piece ``j``. A set of pieces ``Q`` can be the matched side of an allocation
exactly when the players accepting some piece of ``Q`` number ``|Q|`` and
can be perfectly matched onto ``Q``.
"""


def enumerate_allocations(cols, n_players, n_pieces, limit):
    """Return ``(size, allocations)``; each allocation is a tuple of player
    indices, one per matched piece in increasing piece order, paired with the
    piece mask. Raises ``OverflowError`` once more than ``limit`` are found."""
    best = 0
    found = []  # (qmask, players tuple)
    total = 0

    def matchings(qmask, gmask, already):
        pieces = [j for j in range(n_pieces) if qmask >> j & 1]
        out = []
        chosen = [0] * len(pieces)

        def go(k, used):
            if k == len(pieces):
                out.append(tuple(chosen))
                if already + len(out) > limit:
                    raise OverflowError(already + len(out))
                return
            cand = cols[pieces[k]] & gmask & ~used
            while cand:
                low = cand & -cand
                chosen[k] = low.bit_length() - 1
                go(k + 1, used | low)
                cand ^= low

        go(0, 0)
        return out

    def dfs(j, qmask, gmask, qsize):
        nonlocal best, found, total
        remaining = n_pieces - j
        if qsize + remaining < best:
            return
        if bin(gmask).count("1") > qsize + remaining:
            return
        if j == n_pieces:
            if bin(gmask).count("1") != qsize:
                return
            ms = matchings(qmask, gmask, total if qsize == best else 0)
            if not ms:
                return
            if qsize > best:
                best = qsize
                found = []
                total = 0
            total += len(ms)
            if total > limit:
                raise OverflowError(total)
            found.extend((qmask, m) for m in ms)
            return
        dfs(j + 1, qmask | (1 << j), gmask | cols[j], qsize + 1)
        dfs(j + 1, qmask, gmask, qsize)

    dfs(0, 0, 0, 0)
    return best, found
