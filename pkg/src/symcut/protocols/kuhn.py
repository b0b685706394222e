"""Kuhn's procedure and the two protocols built on it.

All three work on a subcake ``X``: someone cuts it into ``η`` pieces, every
player values every piece, a maximal allocation decides who may leave now,
and the rest recurse on what is left. They differ in who cuts, who actually
leaves, and how the remaining players are grouped:

* :func:`kuhn` gives every matched player their piece;
* :func:`aristo_prop` only releases matched players who value every
  allocated piece exactly like the first player does, and sends the others
  down in groups with identical value rows, which makes the outcome
  aristotelian;
* :func:`sym_prop` lets everybody cut, keeps the graded-minimal cut vector,
  and picks the allocation releasing players on the leftmost pieces, which
  makes the outcome independent of the input order.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Sequence

from ..allocation import (
    DEFAULT_MAX_ALLOCATIONS,
    DEFAULT_MAX_PLAYERS,
    build_acceptability,
    enumerate_maximal_allocations,
    find_maximal_allocation,
)
from ..errors import InvariantViolation
from ..orders import graded_key
from ..valuation import Subcake, Valuation
from .common import Division, Mediator, RoundState, finish

log = logging.getLogger(__name__)


def aristo_prop_bound(n: int) -> int:
    """Worst-case query count of :func:`aristo_prop` on the whole cake."""
    return n * n + n * (n - 1) * (2 * n - 1) // 6 + n * (n - 1) // 2


def sym_prop_bound(n: int) -> int:
    """Worst-case query count of :func:`sym_prop` on the whole cake."""
    return sum(2 * k * k + k * (k - 1) for k in range(1, n + 1))


def _within_budget(d: Division, X: Subcake, bound) -> Division:
    # priming a partial cake costs extra evals the bound does not cover
    if X == Subcake.full() and d.ledger.total > bound(d.n):
        raise InvariantViolation(f"{d.algorithm} used {d.ledger.total} queries, bound is {bound(d.n)}")
    return d


def group_by_evaluation_vector(players: Sequence[int], values) -> list[list[int]]:
    """Split ``players`` into classes with identical value rows.

    Groups come out ordered by their smallest member, members in input order.
    """
    groups: dict[tuple, list[int]] = {}
    for k in players:
        groups.setdefault(tuple(values[k]), []).append(k)
    return sorted(groups.values(), key=min)


def _cut_into(med: Mediator, cutter: int, X: Subcake, eta: int) -> tuple[Fraction, ...]:
    """Boundaries ``x_0 < ... < x_eta`` of ``eta`` equal pieces for ``cutter``.

    The last piece runs to the end of ``X`` so the pieces always cover it;
    its value to the cutter is already fixed by the previous cuts.
    """
    share = med.sub_total(cutter, X) / eta
    xs = [X.lo]
    for _ in range(eta - 1):
        xs.append(med.sub_cut(cutter, X, xs[-1], share))
    xs.append(X.hi)
    return tuple(xs)


def _evaluate(med: Mediator, players: Sequence[int], X: Subcake, xs) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(
        tuple(med.sub_eval(i, X, xs[j], xs[j + 1]) for j in range(len(xs) - 1))
        for i in players
    )


def _pieces(X: Subcake, xs) -> list[Subcake]:
    return [X.intersect_interval(xs[j], xs[j + 1]) for j in range(len(xs) - 1)]


def _leftover(A: list[Subcake], allocated) -> Subcake:
    return Subcake().union(*(A[j] for j in range(len(A)) if j not in allocated))


def kuhn(vs: Sequence[Valuation], X: Subcake | None = None) -> Division:
    X = X if X is not None else Subcake.full()
    med = Mediator(vs)
    out: dict[int, Subcake] = {}
    rounds: list[RoundState] = []

    def call(players: list[int], X: Subcake):
        eta = len(players)
        xs = _cut_into(med, players[0], X, eta)
        A = _pieces(X, xs)
        values = _evaluate(med, players, X, xs)
        m = build_acceptability(values, [sum(r) for r in values], eta)
        alloc = find_maximal_allocation(m)
        for k, j in alloc:
            out[players[k]] = A[j]
        rest = [k for k in range(eta) if k not in alloc.players]
        rounds.append(RoundState(tuple(players), X, xs, values, alloc.pairs, alloc.pairs, unmatched=tuple(rest)))
        X2 = _leftover(A, alloc.pieces)
        if rest:
            call([players[k] for k in rest], X2)
        elif X2:
            raise InvariantViolation("uncovered cake left with no players")

    if vs:
        med.learn(X)
        call(list(range(len(vs))), X)
    return finish("kuhn", vs, X, out, med.ledger, rounds)


def aristo_prop(vs: Sequence[Valuation], X: Subcake | None = None) -> Division:
    """Proportional division in which players with equal measures get equal values."""
    X = X if X is not None else Subcake.full()
    med = Mediator(vs)
    out: dict[int, Subcake] = {}
    rounds: list[RoundState] = []

    def call(players: list[int], X: Subcake):
        eta = len(players)
        xs = _cut_into(med, players[0], X, eta)
        A = _pieces(X, xs)
        values = _evaluate(med, players, X, xs)
        m = build_acceptability(values, [sum(r) for r in values], eta)
        alloc = find_maximal_allocation(m)

        reference = values[0][0]
        allocated = sorted(alloc.pieces)
        given, held = [], []
        for k, j in alloc:
            if all(values[k][jj] == reference for jj in allocated):
                out[players[k]] = A[j]
                given.append((k, j))
            else:
                held.append((k, j))
        if not given:
            raise InvariantViolation("the cutter must always be released")

        piece_of = dict(held)
        groups = group_by_evaluation_vector([k for k, _ in held], values)
        rest = [k for k in range(eta) if k not in alloc.players]
        rounds.append(
            RoundState(
                tuple(players), X, xs, values, alloc.pairs, tuple(given),
                groups=tuple((tuple(g), tuple(piece_of[k] for k in g)) for g in groups),
                unmatched=tuple(rest),
            )
        )
        for g in groups:
            call([players[k] for k in g], Subcake().union(*(A[piece_of[k]] for k in g)))
        X2 = _leftover(A, alloc.pieces)
        if rest:
            call([players[k] for k in rest], X2)
        elif X2:
            raise InvariantViolation("uncovered cake left with no players")

    if vs:
        med.learn(X)
        call(list(range(len(vs))), X)
    return _within_budget(finish("aristoprop", vs, X, out, med.ledger, rounds), X, aristo_prop_bound)


def sym_prop(
    vs: Sequence[Valuation],
    X: Subcake | None = None,
    *,
    max_players: int = DEFAULT_MAX_PLAYERS,
    max_allocations: int = DEFAULT_MAX_ALLOCATIONS,
) -> Division:
    """Proportional division whose values do not depend on the input order."""
    X = X if X is not None else Subcake.full()
    med = Mediator(vs)
    out: dict[int, Subcake] = {}
    rounds: list[RoundState] = []

    def call(players: list[int], X: Subcake):
        eta = len(players)
        vectors = tuple(_cut_into(med, i, X, eta) for i in players)
        xs = min(vectors, key=graded_key)
        A = _pieces(X, xs)
        values = _evaluate(med, players, X, xs)
        totals = [sum(r) for r in values]
        m = build_acceptability(values, totals, eta)
        S = enumerate_maximal_allocations(m, max_players=max_players, max_allocations=max_allocations)

        on_minimal = {k for k in range(eta) if vectors[k] == xs}
        # the value reading of the same test: every piece worth exactly 1/eta
        flat = {k for k in range(eta) if all(v * eta == totals[k] for v in values[k])}
        mismatch = tuple(sorted(on_minimal ^ flat))
        if mismatch:
            log.warning("cut-vector and value readings disagree for players %s", mismatch)

        def weight(alloc) -> int:
            return sum(1 << j for k, j in alloc if k in on_minimal)

        best = min(weight(a) for a in S)
        # Ties between allocations are broken by what the players revealed,
        # never by their positions, so the choice survives reordering.
        profile = [(vectors[k], values[k]) for k in range(eta)]
        chosen = min(
            (a for a in S if weight(a) == best),
            key=lambda a: tuple((j, profile[k]) for k, j in a),
        )
        support = tuple(j for j in range(eta) if best >> j & 1)

        given, held = [], []
        for k, j in chosen:
            if j in support:
                out[players[k]] = A[j]
                given.append((k, j))
            else:
                held.append((k, j))
        if not given:
            raise InvariantViolation("no player released in a SymProp round")

        piece_of = dict(held)
        groups = group_by_evaluation_vector([k for k, _ in held], values)
        rest = [k for k in range(eta) if k not in chosen.players]
        rounds.append(
            RoundState(
                tuple(players), X, xs, values, chosen.pairs, tuple(given),
                groups=tuple((tuple(g), tuple(piece_of[k] for k in g)) for g in groups),
                unmatched=tuple(rest),
                cut_vectors=vectors,
                n_allocations=len(S),
                piece_subsets=frozenset(S.piece_subsets()),
                support=support,
                reading_mismatch=mismatch,
            )
        )
        for g in groups:
            call([players[k] for k in g], Subcake().union(*(A[piece_of[k]] for k in g)))
        X2 = _leftover(A, chosen.pieces)
        if rest:
            call([players[k] for k in rest], X2)
        elif X2:
            raise InvariantViolation("uncovered cake left with no players")

    if vs:
        med.learn(X)
        call(list(range(len(vs))), X)
    return _within_budget(finish("symprop", vs, X, out, med.ledger, rounds), X, sym_prop_bound)
