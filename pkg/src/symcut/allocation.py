"""Acceptability matrices and maximal allocations in Kuhn's sense.

An allocation matches some players to distinct pieces so that every matched
player accepts their piece and every unmatched player strictly rejects every
matched piece. A maximal allocation has the largest possible number of pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from . import _kernels
from .errors import InvariantViolation, ResourceLimitError

DEFAULT_MAX_PLAYERS = 12
DEFAULT_MAX_ALLOCATIONS = 1_000_000


@dataclass(frozen=True)
class AcceptabilityMatrix:
    n_players: int
    n_pieces: int
    accepts: tuple[tuple[bool, ...], ...]
    values: tuple[tuple[Fraction, ...], ...] | None = None
    thresholds: tuple[Fraction, ...] | None = None

    @classmethod
    def from_bools(cls, rows: Sequence[Sequence[bool]]) -> "AcceptabilityMatrix":
        rows = tuple(tuple(bool(b) for b in r) for r in rows)
        return cls(len(rows), len(rows[0]) if rows else 0, rows)

    def column_masks(self) -> list[int]:
        cols = [0] * self.n_pieces
        for i, row in enumerate(self.accepts):
            for j, ok in enumerate(row):
                if ok:
                    cols[j] |= 1 << i
        return cols


def build_acceptability(values, totals, n: int) -> AcceptabilityMatrix:
    """Player ``i`` accepts piece ``j`` when ``values[i][j] >= totals[i] / n``."""
    values = tuple(tuple(Fraction(v) for v in row) for row in values)
    thresholds = tuple(Fraction(t) / n for t in totals)
    accepts = tuple(
        tuple(v >= thr for v in row) for row, thr in zip(values, thresholds)
    )
    return AcceptabilityMatrix(
        n_players=len(values),
        n_pieces=len(values[0]) if values else 0,
        accepts=accepts,
        values=values,
        thresholds=thresholds,
    )


@dataclass(frozen=True, order=True)
class Allocation:
    """Matched ``(player, piece)`` pairs, stored sorted by piece then player."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", tuple(sorted(((int(i), int(j)) for i, j in self.pairs), key=lambda p: (p[1], p[0])))
        )

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    @property
    def players(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.pairs)

    @property
    def pieces(self) -> frozenset[int]:
        return frozenset(j for _, j in self.pairs)

    def piece_of(self, player: int) -> int | None:
        for i, j in self.pairs:
            if i == player:
                return j
        return None

    def key(self) -> tuple[tuple[int, int], ...]:
        """Canonical sort key: the (piece, player) list."""
        return tuple((j, i) for i, j in self.pairs)


@dataclass(frozen=True)
class AllocationSet:
    allocations: tuple[Allocation, ...]

    def __len__(self):
        return len(self.allocations)

    def __iter__(self) -> Iterator[Allocation]:
        return iter(self.allocations)

    def __getitem__(self, k):
        return self.allocations[k]

    @property
    def cardinality(self) -> int:
        return len(self.allocations[0])

    def piece_subsets(self) -> set[frozenset[int]]:
        return {a.pieces for a in self.allocations}


def is_allocation(m: AcceptabilityMatrix, pairs: Iterable[tuple[int, int]]) -> bool:
    pairs = list(pairs)
    players = [i for i, _ in pairs]
    pieces = [j for _, j in pairs]
    if len(set(players)) != len(players) or len(set(pieces)) != len(pieces):
        return False
    if not all(m.accepts[i][j] for i, j in pairs):
        return False
    matched = set(players)
    return not any(
        m.accepts[u][j] for u in range(m.n_players) if u not in matched for j in pieces
    )


def enumerate_maximal_allocations(
    m: AcceptabilityMatrix,
    max_players: int = DEFAULT_MAX_PLAYERS,
    max_allocations: int = DEFAULT_MAX_ALLOCATIONS,
    backend=None,
) -> AllocationSet:
    """Every maximal allocation, in canonical order.

    ``backend`` is an ``enumerate_allocations`` callable; it defaults to the
    compiled kernel when built.
    """
    if m.n_players > max_players or m.n_pieces > max_players:
        raise ResourceLimitError(
            f"allocation enumeration capped at {max_players} players/pieces; "
            f"instance has {m.n_players} players and {m.n_pieces} pieces"
        )
    enum = backend or _kernels.enumerate_allocations
    try:
        _, found = enum(m.column_masks(), m.n_players, m.n_pieces, max_allocations)
    except OverflowError as exc:
        raise ResourceLimitError(
            f"more than {max_allocations} maximal allocations "
            f"({m.n_players} players, {m.n_pieces} pieces)"
        ) from exc
    allocs = []
    for qmask, players in found:
        pieces = [j for j in range(m.n_pieces) if qmask >> j & 1]
        allocs.append(Allocation(tuple(zip(players, pieces))))
    if not allocs:
        raise InvariantViolation("no maximal allocation found; Kuhn's lemma guarantees one")
    allocs.sort(key=Allocation.key)
    return AllocationSet(tuple(allocs))


def find_maximal_allocation(m: AcceptabilityMatrix, **kw) -> Allocation:
    return enumerate_maximal_allocations(m, **kw)[0]


def brute_force_maximal_allocations(m: AcceptabilityMatrix) -> list[Allocation]:
    """Reference enumeration over every injective pair set; small sizes only."""
    best: list[Allocation] = []
    best_size = -1
    for size in range(min(m.n_players, m.n_pieces), -1, -1):
        for players in combinations(range(m.n_players), size):
            for pieces in permutations(range(m.n_pieces), size):
                pairs = tuple(zip(players, pieces))
                if is_allocation(m, pairs):
                    best.append(Allocation(pairs))
        if best:
            best_size = size
            break
    assert best_size >= 0
    return sorted(set(best), key=Allocation.key)
