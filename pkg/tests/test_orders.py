from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symcut.errors import DomainError, MalformedPartitionError
from symcut.orders import (
    Partition,
    format_word,
    graded_compare,
    lex_compare_partitions,
    merged_cut_vector,
    recover_permutation,
    select_minimal,
    word_from_partition,
)
from symcut.valuation import Subcake


def part(*pieces):
    return Partition(tuple(Subcake.from_pairs(p) for p in pieces))


THIRDS = part([(0, F(1, 3))], [(F(1, 3), F(2, 3))], [(F(2, 3), 1)])


def test_graded_compare():
    assert graded_compare((F(1, 2),), (F(1, 3), F(2, 3))) == -1
    assert graded_compare((F(1, 3), F(2, 3)), (F(1, 3), F(1, 2))) == 1
    assert graded_compare((F(1, 4), F(3, 4)), (F(1, 4), F(3, 4))) == 0


def test_words():
    assert format_word(word_from_partition(part([(0, F(1, 3))], [(F(1, 3), 1)]))) == "a1 a2"
    assert word_from_partition(part([(0, F(1, 3)), (F(2, 3), 1)], [(F(1, 3), F(2, 3))])) == (1, 2, 1)
    # player order does not show in the word
    assert word_from_partition(part([(F(1, 3), F(2, 3))], [(0, F(1, 3))], [(F(2, 3), 1)])) == (1, 2, 3)


def test_overlap_rejected():
    with pytest.raises(MalformedPartitionError):
        part([(0, F(1, 2))], [(F(1, 3), 1)])


def test_lex_compare():
    aba = part([(0, F(1, 3)), (F(2, 3), 1)], [(F(1, 3), F(2, 3))], [])
    assert word_from_partition(aba) == (1, 2, 1)
    assert lex_compare_partitions(aba, aba) == 0
    assert lex_compare_partitions(aba, THIRDS) == -1
    assert lex_compare_partitions(THIRDS, aba) == 1
    # adjacent intervals of one piece merge, so there is no cut at 2/3 here
    abb = part([(0, F(1, 3))], [(F(1, 3), F(2, 3)), (F(2, 3), 1)], [])
    assert word_from_partition(abb) == (1, 2)
    swapped = part([(F(1, 3), F(2, 3))], [(0, F(1, 3))], [(F(2, 3), 1)])
    assert lex_compare_partitions(THIRDS, swapped) == 0


def test_select_minimal():
    two_cuts = part([(0, F(1, 2))], [(F(1, 2), 1)])
    assert select_minimal([THIRDS, two_cuts]) == [two_cuts]
    swapped = part([(F(1, 3), F(2, 3))], [(0, F(1, 3))], [(F(2, 3), 1)])
    assert select_minimal([THIRDS, swapped]) == [THIRDS, swapped]
    assert select_minimal([THIRDS]) == [THIRDS]
    with pytest.raises(DomainError):
        select_minimal([])


def test_cut_vector_drops_ends():
    assert merged_cut_vector(THIRDS) == (F(1, 3), F(2, 3))


@given(st.permutations(range(4)), st.sets(st.integers(1, 11), min_size=3, max_size=3))
def test_recover_permutation(perm, cuts):
    xs = [F(0)] + [F(c, 12) for c in sorted(cuts)] + [F(1)]
    pieces = [Subcake.from_pairs([(xs[k], xs[k + 1])]) for k in range(4)]
    p = Partition(tuple(pieces))
    q = Partition(tuple(pieces[perm[i]] for i in range(4)))
    sigma = recover_permutation(p, q)
    assert all(p.pieces[sigma[i]] == q.pieces[i] for i in range(4))
