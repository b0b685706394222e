"""Orders on partitions of the cake.

Two keys decide between candidate divisions: the graded order on the vector
of cut points (fewer cuts first, then entrywise smaller), and the
lexicographic order on the *word* of a partition, where a word records which
piece owns each elementary interval with pieces relabelled by first
appearance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, MalformedPartitionError
from .valuation import ONE, ZERO, Subcake

CutVector = tuple[Fraction, ...]
Word = tuple[int, ...]


@dataclass(frozen=True)
class Partition:
    """One subcake per player, pairwise disjoint."""

    pieces: tuple[Subcake, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        for i, a in enumerate(self.pieces):
            for b in self.pieces[i + 1:]:
                if not a.is_disjoint(b):
                    raise MalformedPartitionError("partition pieces overlap")

    @property
    def ambient(self) -> Subcake:
        return Subcake().union(*self.pieces)

    def cut_vector(self) -> CutVector:
        return merged_cut_vector(self)

    def word(self) -> Word:
        return word_from_partition(self)


def merged_cut_vector(p: Partition) -> CutVector:
    pts = set()
    for piece in p.pieces:
        pts.update(piece.endpoints())
    return tuple(sorted(x for x in pts if ZERO < x < ONE))


def graded_compare(u: Sequence[Fraction], w: Sequence[Fraction]) -> int:
    """-1, 0 or 1 as ``u`` is below, equal to or above ``w`` in the graded order."""
    ku, kw = graded_key(u), graded_key(w)
    return (ku > kw) - (ku < kw)


def graded_key(u: Sequence[Fraction]):
    return (len(u), tuple(u))


def word_from_partition(p: Partition) -> Word:
    """Letters 1..n for the elementary intervals, left to right.

    A piece gets the next unused letter the first time one of its elementary
    intervals is met, so the word forgets which player owns which piece.
    """
    amb = p.ambient
    if not amb:
        return ()
    zs = sorted(set(amb.endpoints()) | set(merged_cut_vector(p)))
    letter_of: dict[int, int] = {}
    word = []
    for a, b in zip(zs, zs[1:]):
        if a == b or not amb.contains_interval(a, b):
            continue
        owners = [i for i, piece in enumerate(p.pieces) if piece.contains_interval(a, b)]
        if len(owners) != 1:
            raise MalformedPartitionError(f"elementary interval [{a}, {b}] is not inside exactly one piece")
        owner = owners[0]
        if owner not in letter_of:
            letter_of[owner] = len(letter_of) + 1
        word.append(letter_of[owner])
    return tuple(word)


def format_word(word: Word) -> str:
    return " ".join(f"a{k}" for k in word)


def lex_compare_partitions(p: Partition, q: Partition) -> int:
    wp, wq = word_from_partition(p), word_from_partition(q)
    return (wp > wq) - (wp < wq)


def selection_key(p: Partition):
    return (graded_key(merged_cut_vector(p)), word_from_partition(p))


def select_minimal(partitions: Sequence[Partition]) -> list[Partition]:
    """Partitions minimal in graded order, then minimal in word order; stable."""
    if not partitions:
        raise DomainError("select_minimal needs at least one partition")
    keys = [selection_key(p) for p in partitions]
    best = min(keys)
    return [p for p, k in zip(partitions, keys) if k == best]


def recover_permutation(p: Partition, q: Partition) -> list[int]:
    """``sigma`` with ``p.pieces[sigma[i]] == q.pieces[i]``.

    Needs equal cut vectors and equal words. Pieces that never show up in the
    word are empty and are paired off in index order.
    """
    if merged_cut_vector(p) != merged_cut_vector(q) or word_from_partition(p) != word_from_partition(q):
        raise DomainError("partitions differ in cut vector or word")
    if len(p.pieces) != len(q.pieces):
        raise DomainError("partitions have different numbers of pieces")

    def by_letter(part: Partition) -> dict[int, int]:
        order: dict[int, int] = {}
        for i, piece in sorted(
            ((i, pc) for i, pc in enumerate(part.pieces) if pc), key=lambda t: t[1].lo
        ):
            order[i] = len(order)
        return order

    lp, lq = by_letter(p), by_letter(q)
    p_of_rank = {r: i for i, r in lp.items()}
    sigma = [-1] * len(q.pieces)
    for i, r in lq.items():
        sigma[i] = p_of_rank[r]
    empties_p = [i for i, pc in enumerate(p.pieces) if not pc]
    empties_q = [i for i, pc in enumerate(q.pieces) if not pc]
    for i, j in zip(empties_q, empties_p):
        sigma[i] = j
    return sigma
