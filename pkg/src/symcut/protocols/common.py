"""Types shared by all division protocols."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import InvariantViolation, SchemaError
from ..valuation import (
    GapCache,
    QueryLedger,
    Subcake,
    Valuation,
    format_rational,
    measure_cut,
    measure_eval,
    oracle_direct_measure,
    parse_rational,
    subcake_cut,
    subcake_eval,
)


class Mediator:
    """Issues queries to the players of one run and remembers their answers.

    Player indices are positions in the run's input list. Each player gets a
    :class:`GapCache` seeded with ``μ_i([0, 1]) = 1``.
    """

    def __init__(self, valuations: Sequence[Valuation], ledger: QueryLedger | None = None):
        self.valuations = list(valuations)
        self.ledger = ledger if ledger is not None else QueryLedger()
        self.caches = [GapCache.for_full_cake() for _ in self.valuations]

    def value(self, i: int, a, b) -> Fraction:
        """``μ_i([a, b])``; a primitive eval unless already derivable."""
        known = self.caches[i].get(a, b)
        if known is not None:
            return known
        ans = measure_eval(self.valuations[i], a, b, self.ledger, i)
        self.caches[i].record(a, b, ans)
        return ans

    def cut(self, i: int, x, a) -> Fraction:
        y = measure_cut(self.valuations[i], x, a, self.ledger, i)
        self.caches[i].record(x, y, a)
        return y

    def sub_eval(self, i: int, X: Subcake, x, y) -> Fraction:
        return subcake_eval(self.valuations[i], X, x, y, self.caches[i], self.ledger, i)

    def sub_cut(self, i: int, X: Subcake, x, a) -> Fraction:
        return subcake_cut(self.valuations[i], X, x, a, self.caches[i], self.ledger, i)

    def learn(self, X: Subcake) -> None:
        """Make every interval and gap of ``X`` known to every player.

        Only needed when a run starts on a subcake other than the whole cake;
        recursive calls inherit this knowledge from earlier rounds.
        """
        pts = X.endpoints()
        for i in range(len(self.valuations)):
            for a, b in zip(pts, pts[1:]):
                self.value(i, a, b)

    def sub_total(self, i: int, X: Subcake) -> Fraction:
        if not X:
            return Fraction(0)
        return self.sub_eval(i, X, X.lo, X.hi)


@dataclass
class RoundState:
    """What one recursive call of a Kuhn-style protocol saw and decided.

    Player and piece indices are local to the call (0-based); ``players`` maps
    them back to input positions.
    """

    players: tuple[int, ...]
    ambient: Subcake
    boundaries: tuple[Fraction, ...]
    values: tuple[tuple[Fraction, ...], ...]
    allocation: tuple[tuple[int, int], ...]
    given: tuple[tuple[int, int], ...] = ()
    groups: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()
    unmatched: tuple[int, ...] = ()
    cut_vectors: tuple[tuple[Fraction, ...], ...] | None = None
    n_allocations: int | None = None
    piece_subsets: frozenset[frozenset[int]] | None = None
    support: tuple[int, ...] | None = None
    reading_mismatch: tuple[int, ...] = ()


@dataclass
class Division:
    """Final pieces and their exact values, one per input position."""

    algorithm: str
    names: tuple[str, ...]
    pieces: tuple[Subcake, ...]
    values: tuple[Fraction, ...]
    ledger: QueryLedger = field(default_factory=QueryLedger)
    rounds: list[RoundState] = field(default_factory=list)
    # ledger counts read back from a file; the trace itself is not serialized
    stored_counts: tuple[int, int] | None = None
    # set by the symmetric wrapper: the ordering whose run was kept
    chosen_order: tuple[int, ...] | None = None
    n_candidates: tuple[int, int] | None = None

    @property
    def n(self) -> int:
        return len(self.pieces)

    def to_json(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "order": list(self.names),
            "pieces": [
                {
                    "player": name,
                    "intervals": [[format_rational(a), format_rational(b)] for a, b in piece.pairs()],
                    "value": format_rational(val),
                }
                for name, piece, val in zip(self.names, self.pieces, self.values)
            ],
            "ledger": self.ledger.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "Division":
        try:
            pieces, names, values = [], [], []
            for entry in obj["pieces"]:
                names.append(entry["player"])
                pieces.append(
                    Subcake.from_pairs((parse_rational(a), parse_rational(b)) for a, b in entry["intervals"])
                )
                values.append(parse_rational(entry["value"]))
            led = obj.get("ledger", {})
            return cls(
                obj["algorithm"], tuple(names), tuple(pieces), tuple(values),
                stored_counts=(int(led.get("eval", 0)), int(led.get("cut", 0))),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SchemaError):
                raise
            raise SchemaError(f"malformed division file: {exc}") from exc


@dataclass
class ProtocolRun:
    valuations: tuple[Valuation, ...]
    ambient: Subcake
    division: Division
    caches: list[GapCache] | None = None

    @property
    def ledger(self) -> QueryLedger:
        return self.division.ledger


def finish(
    algorithm: str,
    valuations: Sequence[Valuation],
    ambient: Subcake,
    pieces: dict[int, Subcake],
    ledger: QueryLedger,
    rounds: list[RoundState] | None = None,
) -> Division:
    """Check partition integrity and attach exact values."""
    n = len(valuations)
    if sorted(pieces) != list(range(n)):
        raise InvariantViolation(f"{algorithm}: players {set(range(n)) - set(pieces)} got nothing")
    ordered = tuple(pieces[i] for i in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if not ordered[i].is_disjoint(ordered[j]):
                raise InvariantViolation(f"{algorithm}: pieces of players {i} and {j} overlap")
    if Subcake().union(*ordered) != ambient:
        raise InvariantViolation(f"{algorithm}: pieces do not cover the cake")
    values = tuple(oracle_direct_measure(v, p) for v, p in zip(valuations, ordered))
    names = tuple(v.name or f"p{i + 1}" for i, v in enumerate(valuations))
    return Division(algorithm, names, ordered, values, ledger, rounds or [])


def interval(a, b) -> Subcake:
    return Subcake.from_pairs([(a, b)])
