"""Schensted row insertion, reading words, the plactic product and the involution α."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Tableau, ValidationError, Word


@dataclass(frozen=True)
class PlacticClass:
    """An element of the plactic monoid, represented by its insertion tableau."""

    representative: Tableau

    @classmethod
    def of_word(cls, w: Word) -> PlacticClass:
        return cls(insertion_tableau(w))

    def __mul__(self, other: PlacticClass) -> PlacticClass:
        return PlacticClass(plactic_product(self.representative, other.representative))


def _insert_rows(rows: list[list[int]], x: int) -> None:
    """Row-insert ``x`` in place into a list of mutable rows."""
    for row in rows:
        j = bisect_right(row, x)
        if j == len(row):
            row.append(x)
            return
        row[j], x = x, row[j]
    rows.append([x])


def _insert_word(rows: list[list[int]], letters: Iterable[int]) -> list[list[int]]:
    for x in letters:
        _insert_rows(rows, x)
    return rows


def row_insert(t: Tableau, x: int) -> Tableau:
    if not 1 <= x <= t.n:
        raise ValidationError(f"letter {x} outside alphabet 1..{t.n}")
    rows = [list(r) for r in t.rows if r]
    _insert_rows(rows, x)
    return Tableau(tuple(tuple(r) for r in rows), t.n)


def insertion_tableau(w: Word) -> Tableau:
    rows = _insert_word([], w.letters)
    return Tableau(tuple(tuple(r) for r in rows), w.n)


def insertion_shape(letters: Sequence[int]) -> tuple[int, ...]:
    """Row lengths of P(letters), without building a validated Tableau."""
    return tuple(len(r) for r in _insert_word([], letters))


def reading_word(t: Tableau) -> Word:
    letters: list[int] = []
    for r in reversed(t.rows):
        letters.extend(r)
    return Word(tuple(letters), t.n)


def plactic_product(s: Tableau, t: Tableau) -> Tableau:
    if s.n != t.n:
        raise ValidationError(f"alphabet mismatch: {s.n} vs {t.n}")
    rows = [list(r) for r in s.rows if r]
    _insert_word(rows, reading_word(t).letters)
    return Tableau(tuple(tuple(r) for r in rows), s.n)


def lis(w: Word | Sequence[int]) -> int:
    """Length of the longest weakly increasing subsequence (patience sorting)."""
    letters = w.letters if isinstance(w, Word) else w
    tails: list[int] = []
    for x in letters:
        j = bisect_right(tails, x)
        if j == len(tails):
            tails.append(x)
        else:
            tails[j] = x
    return len(tails)


def restrict_word(w: Word, letters: Iterable[int]) -> Word:
    keep = set(letters)
    return Word(tuple(x for x in w.letters if x in keep), w.n)


def alpha_word(w: Word) -> Word:
    n = w.n
    return Word(tuple(n + 1 - x for x in reversed(w.letters)), n)


def alpha_tableau(t: Tableau) -> Tableau:
    return insertion_tableau(alpha_word(reading_word(t)))


def knuth_equivalent(w: Word, v: Word) -> bool:
    if w.n != v.n:
        raise ValidationError(f"alphabet mismatch: {w.n} vs {v.n}")
    return insertion_tableau(w) == insertion_tableau(v)


def knuth_moves(letters: Sequence[int]) -> list[tuple[int, ...]]:
    """Every word reachable from ``letters`` by one elementary Knuth relation."""
    w = tuple(letters)
    out = []
    for i in range(len(w) - 2):
        a, b, c = w[i], w[i + 1], w[i + 2]
        # y z x <-> y x z  when x < y <= z
        if c < a <= b:
            out.append(w[:i] + (a, c, b) + w[i + 3:])
        if b < a <= c:
            out.append(w[:i] + (a, c, b) + w[i + 3:])
        # x z y <-> z x y  when x <= y < z
        if a <= c < b:
            out.append(w[:i] + (b, a, c) + w[i + 3:])
        if b <= c < a:
            out.append(w[:i] + (b, a, c) + w[i + 3:])
    return out


# -- jeu de taquin (test oracle for alpha_tableau) ---------------------------

def rotate_complement(t: Tableau) -> dict[tuple[int, int], int]:
    """Rotate ``t`` by π and complement letters; returns a skew filling {(row, col): letter}.

    Cells live in a rectangle with ``len(rows)`` rows and ``λ₁`` columns (0-based).
    """
    n = t.n
    rows = [r for r in t.rows if r]
    if not rows:
        return {}
    height = len(rows)
    width = len(rows[0])
    cells = {}
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            cells[(height - 1 - i, width - 1 - j)] = n + 1 - x
    return cells


def rectify(cells: dict[tuple[int, int], int], n: int) -> Tableau:
    """Schützenberger rectification of a skew filling by forward jeu-de-taquin slides.

    Every row of the initial filling must be non-empty and contiguous.
    """
    cells = dict(cells)
    if not cells:
        return Tableau.empty(n)
    height = max(r for r, _ in cells) + 1
    inner = [min(c for (rr, c) in cells if rr == r) for r in range(height)]
    while True:
        corner = next(
            (r for r in range(height - 1, -1, -1)
             if inner[r] > 0 and (r + 1 == height or inner[r + 1] < inner[r])),
            None,
        )
        if corner is None:
            break
        inner[corner] -= 1
        _slide(cells, (corner, inner[corner]))
    rows = []
    for r in range(height):
        cols = sorted(c for (rr, c) in cells if rr == r)
        if cols != list(range(len(cols))):
            raise AssertionError("rectification left a non-normal shape")
        rows.append(tuple(cells[(r, c)] for c in cols))
    return Tableau(tuple(rows), n)


def _slide(cells: dict[tuple[int, int], int], hole: tuple[int, int]) -> None:
    r, c = hole
    while True:
        right = cells.get((r, c + 1))
        down = cells.get((r + 1, c))
        if right is None and down is None:
            return
        if down is None or (right is not None and right < down):
            cells[(r, c)] = cells.pop((r, c + 1))
            c += 1
        else:
            cells[(r, c)] = cells.pop((r + 1, c))
            r += 1


def alpha_tableau_by_jdt(t: Tableau) -> Tableau:
    return rectify(rotate_complement(t), t.n)


__all__ = [
    "PlacticClass",
    "row_insert",
    "insertion_tableau",
    "insertion_shape",
    "reading_word",
    "plactic_product",
    "lis",
    "restrict_word",
    "alpha_word",
    "alpha_tableau",
    "knuth_equivalent",
    "knuth_moves",
    "alpha_tableau_by_jdt",
    "rectify",
    "rotate_complement",
]
