from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import lis_exhaustive, naive_P, tableaux
from tensor_atoms.core import Tableau, ValidationError, Word, tableaux_of_shape
from tensor_atoms.plactic import (
    PlacticClass,
    alpha_tableau,
    alpha_tableau_by_jdt,
    alpha_word,
    insertion_shape,
    insertion_tableau,
    knuth_equivalent,
    knuth_moves,
    lis,
    plactic_product,
    reading_word,
    restrict_word,
    row_insert,
)

FIG2 = Tableau(((1, 1, 1, 1, 1, 2, 2, 2, 3), (2, 2, 2, 2, 3, 3, 3), (3, 3, 3)), 3)
FIG2_WORD = (3, 3, 3, 2, 2, 2, 2, 3, 3, 3, 1, 1, 1, 1, 1, 2, 2, 2, 3)


def words(n, max_len=9):
    return st.lists(st.integers(1, n), max_size=max_len).map(lambda xs: Word(tuple(xs), n))


def all_tableaux(n, top):
    for shape in itertools.product(range(top + 1), repeat=n):
        if all(shape[i] >= shape[i + 1] for i in range(n - 1)):
            yield from tableaux_of_shape(shape)


# -- insertion --------------------------------------------------------------

def test_row_insert_examples():
    assert row_insert(Tableau(((2,),), 2), 1).to_json() == [[1], [2]]
    assert row_insert(Tableau(((1, 2),), 3), 3).to_json() == [[1, 2, 3]]
    # 2 bumps 3 from row 1; 3 then sits after the 2 in row 2
    assert row_insert(Tableau(((1, 3), (2,)), 3), 2).to_json() == [[1, 2], [2, 3]]
    with pytest.raises(ValidationError):
        row_insert(Tableau(((1,),), 2), 3)


@given(words(4))
def test_insertion_matches_naive(w):
    t = insertion_tableau(w)
    assert t.to_json() == naive_P(w.letters)
    assert t.size == len(w)
    assert insertion_shape(w.letters) == tuple(len(r) for r in naive_P(w.letters))


def test_insertion_examples():
    assert insertion_tableau(Word((), 3)) == Tableau.empty(3)
    assert insertion_tableau(Word(FIG2_WORD, 3)) == FIG2
    assert insertion_tableau(Word((2, 1), 2)).to_json() == [[1], [2]]


def test_reading_word_examples():
    assert reading_word(FIG2).letters == FIG2_WORD
    assert reading_word(Tableau.empty(2)).letters == ()
    assert reading_word(Tableau(((1,), (2,)), 2)).letters == (2, 1)


@pytest.mark.parametrize("n,top", [(1, 4), (2, 4), (3, 3)])
def test_insertion_of_reading_word_is_identity(n, top):
    for t in all_tableaux(n, top):
        assert insertion_tableau(reading_word(t)) == t


# -- plactic product ---------------------------------------------------------

def test_product_examples():
    one = Tableau(((1,),), 2)
    two = Tableau(((2,),), 2)
    assert plactic_product(one, one).to_json() == [[1, 1]]
    assert plactic_product(two, one).to_json() == [[1], [2]]
    assert plactic_product(FIG2, Tableau.empty(3)) == FIG2
    assert plactic_product(Tableau.empty(3), FIG2) == FIG2
    with pytest.raises(ValidationError):
        plactic_product(one, Tableau(((1,),), 3))


@settings(max_examples=60)
@given(words(3, 6), words(3, 6), words(3, 6))
def test_product_associative(a, b, c):
    s, t, u = (insertion_tableau(x) for x in (a, b, c))
    assert plactic_product(plactic_product(s, t), u) == plactic_product(s, plactic_product(t, u))
    assert plactic_product(s, t).size == s.size + t.size
    assert (PlacticClass.of_word(a) * PlacticClass.of_word(b)).representative == plactic_product(s, t)


# -- LIS ---------------------------------------------------------------------

def test_lis_examples():
    assert lis(Word(FIG2_WORD, 3)) == 9
    assert lis((5, 4, 3, 2, 1)) == 1
    assert lis((2, 2, 2, 2)) == 4
    assert lis(()) == 0


@given(words(4, 10))
def test_lis_exhaustive_and_first_row(w):
    assert lis(w) == lis_exhaustive(w.letters)
    assert lis(w) == len(insertion_tableau(w).rows[0])


# -- restriction and α ---------------------------------------------------------

def test_restrict_examples():
    w = Word(FIG2_WORD, 3)
    assert restrict_word(w, {1}).letters == (1,) * 5
    assert restrict_word(w, {1, 2, 3}) == w
    assert restrict_word(w, set()).letters == ()


def test_alpha_word_examples():
    assert alpha_word(Word((1, 2, 3), 3)).letters == (1, 2, 3)
    assert alpha_word(Word((), 3)).letters == ()
    assert alpha_word(Word((1, 1, 2), 2)).letters == (1, 2, 2)


@given(words(4, 10))
def test_alpha_word_involution_preserves_lis(w):
    assert alpha_word(alpha_word(w)) == w
    assert lis(alpha_word(w)) == lis(w)


def test_alpha_tableau_examples():
    for i in (1, 2, 3):
        assert alpha_tableau(Tableau(((i,),), 3)).to_json() == [[4 - i]]
    ts = list(tableaux_of_shape((2, 1, 0)))
    assert len(ts) == 8
    for t in ts:
        assert alpha_tableau(alpha_tableau(t)) == t
    assert alpha_tableau(FIG2).shape.parts == (9, 7, 3)


@pytest.mark.parametrize("n,top", [(2, 4), (3, 3), (4, 2)])
def test_alpha_tableau_shape_involution_and_jdt(n, top):
    for t in all_tableaux(n, top):
        a = alpha_tableau(t)
        assert a.shape == t.shape
        assert alpha_tableau(a) == t
        assert alpha_tableau_by_jdt(t) == a


def test_alpha_bijective_on_shape():
    for shape in [(2, 1, 0), (3, 1, 0), (2, 2, 1)]:
        ts = set(tableaux_of_shape(shape))
        assert {alpha_tableau(t) for t in ts} == ts


# -- Knuth equivalence -------------------------------------------------------------

def test_knuth_examples():
    assert knuth_equivalent(Word((2, 3, 1), 3), Word((2, 1, 3), 3))
    assert knuth_equivalent(Word((1, 3, 2), 3), Word((3, 1, 2), 3))
    assert not knuth_equivalent(Word((1, 2), 2), Word((2, 1), 2))


@pytest.mark.parametrize("n,length", [(2, 5), (3, 4), (3, 5)])
def test_knuth_classes_are_insertion_fibres(n, length):
    # closure of the elementary relations partitions words exactly like P(w)
    all_words = list(itertools.product(range(1, n + 1), repeat=length))
    seen: dict[tuple[int, ...], int] = {}
    classes = 0
    for w in all_words:
        if w in seen:
            continue
        stack = [w]
        seen[w] = classes
        while stack:
            for v in knuth_moves(stack.pop()):
                if v not in seen:
                    seen[v] = classes
                    stack.append(v)
        classes += 1
    by_p: dict[tuple, set[int]] = {}
    for w in all_words:
        key = tuple(map(tuple, naive_P(w)))
        by_p.setdefault(key, set()).add(seen[w])
    assert all(len(v) == 1 for v in by_p.values())
    assert classes == len(by_p)


@given(words(3, 8))
def test_knuth_moves_preserve_P(w):
    for v in knuth_moves(w.letters):
        assert knuth_equivalent(w, Word(v, 3))


def test_tableau_count_matches_filling_oracle():
    assert len(list(tableaux_of_shape((3, 1, 0)))) == len(tableaux([3, 1], 3))
