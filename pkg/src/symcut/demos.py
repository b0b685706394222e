"""Narrated runs of the worked examples; each one checks its exact numbers.

A demo returns the lines it would print and raises :class:`DemoFailure` as
soon as a number disagrees with the expected value.
"""
from __future__ import annotations

from fractions import Fraction as F
from math import comb, factorial
from typing import Callable

from .fairness import check_aristotelian
from .instances import (
    all_lebesgue,
    concentrated_instance,
    even_paz_counterexample,
    last_diminisher_counterexample,
)
from .protocols import Division, even_paz, last_diminisher, sym_prop
from .valuation import format_rational as fr


class DemoFailure(AssertionError):
    pass


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise DemoFailure(msg)


def _trace(d: Division) -> list[str]:
    lines = []
    for q in d.ledger.trace:
        who = d.names[q.player] if q.player is not None else "?"
        args = ", ".join(fr(a) for a in q.args)
        lines.append(f"  {q.kind}_{who}({args}) = {fr(q.answer)}")
    return lines


def _outcome(d: Division) -> list[str]:
    lines = []
    for name, piece, val in zip(d.names, d.pieces, d.values):
        spans = " u ".join(f"[{fr(a)}, {fr(b)}]" for a, b in piece.pairs()) or "{}"
        lines.append(f"  {name}: {spans}  value {fr(val)}")
    return lines


def even_paz_not_aristotelian() -> list[str]:
    vs = even_paz_counterexample()
    _expect(vs[0] == vs[3], "p1 and p4 must share a measure")
    d = even_paz(vs)
    out = ["Even-Paz, four players, p1 and p4 both uniform on [0, 1]", "queries:"]
    out += _trace(d) + ["pieces:"] + _outcome(d)
    _expect(d.values[0] == F(1, 4), f"p1 should get 1/4, got {fr(d.values[0])}")
    _expect(d.values[3] == F(49, 100), f"p4 should get 49/100, got {fr(d.values[3])}")
    _expect(not check_aristotelian(d, vs), "the division should not be aristotelian")
    out.append("p1 and p4 have equal measures but 49/100 > 1/4: not aristotelian")
    return out


def last_diminisher_not_aristotelian() -> list[str]:
    vs = last_diminisher_counterexample()
    _expect(vs[0] == vs[1], "p1 and p2 must share a measure")
    d = last_diminisher(vs)
    out = ["Last Diminisher, three players, p1 and p2 both uniform on [0, 1]", "queries:"]
    out += _trace(d) + ["pieces:"] + _outcome(d)
    _expect(d.values[0] == F(1, 3), f"p1 should get 1/3, got {fr(d.values[0])}")
    _expect(d.values[1] == F(1, 2), f"p2 should get 1/2, got {fr(d.values[1])}")
    out.append("p1 and p2 have equal measures but 1/2 > 1/3: not aristotelian")
    return out


def _first_round(d: Division, label: str) -> list[str]:
    r = d.rounds[0]
    out = [label, "graded-minimal cut vector: " + " ".join(fr(x) for x in r.boundaries)]
    for k, row in enumerate(r.values):
        out.append(f"  {d.names[r.players[k]]}: " + " ".join(fr(v) for v in row))
    out.append(f"maximal allocations |S| = {r.n_allocations}")
    out.append(f"distinct matched-piece subsets = {len(r.piece_subsets)}")
    return out


def symprop_all_lebesgue_s_count(n: int = 3) -> list[str]:
    d = sym_prop(all_lebesgue(n))
    out = _first_round(d, f"SymProp, {n} uniform players")
    r = d.rounds[0]
    _expect(r.n_allocations == factorial(n), f"|S| should be {n}! = {factorial(n)}, got {r.n_allocations}")
    _expect(all(v == F(1, n) for v in d.values), "everybody should get exactly 1/n")
    out.append(f"|S| = {n}! = {factorial(n)}")
    return out


def symprop_concentrated_s_count(n: int = 2) -> list[str]:
    d = sym_prop(concentrated_instance(n))
    out = _first_round(d, f"SymProp, {n} uniform players and {n + 1} players on [{2 * n}/{2 * n + 1}, 1]")
    r = d.rounds[0]
    want = comb(2 * n, n)
    got = len(r.piece_subsets)
    _expect(got == want, f"expected C({2 * n}, {n}) = {want} matched-piece subsets, got {got}")
    out.append(f"matched-piece subsets = C({2 * n}, {n}) = {want}")
    return out


DEMOS: dict[str, Callable[..., list[str]]] = {
    "even-paz-not-aristotelian": even_paz_not_aristotelian,
    "last-diminisher-not-aristotelian": last_diminisher_not_aristotelian,
    "symprop-all-lebesgue-S-count": symprop_all_lebesgue_s_count,
    "symprop-concentrated-S-count": symprop_concentrated_s_count,
}
SIZED = {"symprop-all-lebesgue-S-count", "symprop-concentrated-S-count"}
