"""Classical protocols: Cut-and-Choose, Last Diminisher, Even-Paz, Selfridge-Conway.

Ties are broken by input position, which is exactly what makes these
procedures order-dependent.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import CapabilityError
from ..valuation import ONE, ZERO, Subcake, Valuation
from .common import Division, Mediator, finish, interval


def cut_and_choose(v1: Valuation, v2: Valuation) -> Division:
    """Player 1 halves the cake, player 2 takes the half they like (left on ties)."""
    med = Mediator([v1, v2])
    c = med.cut(0, ZERO, Fraction(1, 2))
    left, right = med.value(1, ZERO, c), med.value(1, c, ONE)
    if left >= right:
        out = {1: interval(0, c), 0: interval(c, 1)}
    else:
        out = {0: interval(0, c), 1: interval(c, 1)}
    return finish("cut-and-choose", [v1, v2], Subcake.full(), out, med.ledger)


def last_diminisher(vs: Sequence[Valuation]) -> Division:
    """Banach-Knaster: the smallest ``1/n`` mark from the left wins each round."""
    n = len(vs)
    med = Mediator(vs)
    out: dict[int, Subcake] = {}
    left = ZERO
    remaining = list(range(n))
    share = Fraction(1, n) if n else ZERO
    while len(remaining) > 1:
        marks = [(med.cut(i, left, share), i) for i in remaining]
        y, winner = min(marks)
        out[winner] = interval(left, y)
        remaining.remove(winner)
        left = y
    if remaining:
        out[remaining[0]] = interval(left, 1)
    return finish("last-diminisher", vs, Subcake.full(), out, med.ledger)


def even_paz(vs: Sequence[Valuation]) -> Division:
    """Divide and conquer on marks at ``⌊n/2⌋/n`` of each player's value."""
    med = Mediator(vs)
    out: dict[int, Subcake] = {}

    def split(players: list[int], lo: Fraction, hi: Fraction):
        n = len(players)
        if n == 1:
            out[players[0]] = interval(lo, hi)
            return
        half = n // 2
        marks = []
        for pos, i in enumerate(players):
            target = med.value(i, lo, hi) * half / n
            marks.append((med.cut(i, lo, target), pos))
        marks.sort()
        cut_at = marks[half - 1][0]
        left = sorted(pos for _, pos in marks[:half])
        right = sorted(pos for _, pos in marks[half:])
        split([players[p] for p in left], lo, cut_at)
        split([players[p] for p in right], cut_at, hi)

    if vs:
        split(list(range(len(vs))), ZERO, ONE)
    return finish("even-paz", vs, Subcake.full(), out, med.ledger)


def _favourite(med: Mediator, player: int, options: list[int], spans) -> int:
    """Index in ``options`` of the piece ``player`` likes best; leftmost on ties."""
    best, best_val = None, None
    for j in options:
        val = sum((med.value(player, a, b) for a, b in spans[j]), ZERO)
        if best is None or val > best_val:
            best, best_val = j, val
    return best


def selfridge_conway(v1: Valuation, v2: Valuation, v3: Valuation) -> Division:
    """The classical envy-free procedure for three players."""
    vs = [v1, v2, v3]
    med = Mediator(vs)
    third = Fraction(1, 3)
    c1 = med.cut(0, ZERO, third)
    c2 = med.cut(0, c1, third)
    spans = [[(ZERO, c1)], [(c1, c2)], [(c2, ONE)]]

    vals2 = [med.value(1, a, b) for (a, b), in spans]
    ranked = sorted(range(3), key=lambda j: (-vals2[j], j))
    largest, second = ranked[0], ranked[1]
    trimmed = residue = None
    if vals2[largest] > vals2[second]:
        lo, hi = spans[largest][0]
        y = med.cut(1, lo, vals2[second])
        spans[largest] = [(lo, y)]
        residue = (y, hi)
        trimmed = largest

    options = [0, 1, 2]
    pick3 = _favourite(med, 2, options, spans)
    options.remove(pick3)
    pick2 = trimmed if trimmed in options else _favourite(med, 1, options, spans)
    options.remove(pick2)
    pick1 = options[0]
    out = {0: spans[pick1], 1: spans[pick2], 2: spans[pick3]}

    if residue is not None:
        holder = 2 if pick3 == trimmed else 1
        other = 3 - holder
        lo, hi = residue
        part = med.value(other, lo, hi) / 3
        r1 = med.cut(other, lo, part)
        r2 = med.cut(other, r1, part)
        bits = [[(lo, r1)], [(r1, r2)], [(r2, hi)]]
        options = [0, 1, 2]
        for chooser in (holder, 0):
            pick = _favourite(med, chooser, options, bits)
            options.remove(pick)
            out[chooser] = out[chooser] + bits[pick]
        out[other] = out[other] + bits[options[0]]

    pieces = {i: Subcake.from_pairs(p) for i, p in out.items()}
    return finish("selfridge-conway", vs, Subcake.full(), pieces, med.ledger)


def whole_cake(vs: Sequence[Valuation]) -> Division:
    if len(vs) != 1:
        raise CapabilityError("whole_cake is the one-player protocol")
    return finish("whole-cake", vs, Subcake.full(), {0: Subcake.full()}, Mediator(vs).ledger)
