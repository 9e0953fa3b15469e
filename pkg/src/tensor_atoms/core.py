"""Weights, Gelfand-Tsetlin patterns, semi-standard tableaux and words.

Patterns are stored row-major: ``rows[0]`` is the top row (the shape, length n)
and ``rows[j]`` has length ``n - j``.  The classical entry a_l(i), the number of
boxes in row i of the tableau holding letters <= l, is ``rows[n - l][i - 1]``
(see :meth:`GTPattern.entry`).  Every module goes through that one accessor
when it needs the indexed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union


class ValidationError(ValueError):
    """Raised when data violates a weight/pattern/tableau/word invariant."""


def _as_int_tuple(values: Iterable[int], what: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            try:
                iv = int(v)
            except (TypeError, ValueError):
                raise ValidationError(f"{what}: {v!r} is not an integer") from None
            if iv != v:
                raise ValidationError(f"{what}: {v!r} is not an integer")
            v = iv
        out.append(int(v))
    return tuple(out)


def is_weakly_decreasing(xs: Sequence[int]) -> bool:
    return all(xs[i] >= xs[i + 1] for i in range(len(xs) - 1))


def interlaces(above: Sequence[int], below: Sequence[int]) -> bool:
    """``above[i] >= below[i] >= above[i+1]`` for every i; lengths differ by one."""
    if len(above) != len(below) + 1:
        return False
    return all(above[i] >= below[i] >= above[i + 1] for i in range(len(below)))


def interlacing_rows(above: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All rows of length ``len(above) - 1`` interlacing ``above``, lexicographically."""
    m = len(above) - 1
    if m < 0:
        return
    ranges = [range(above[i + 1], above[i] + 1) for i in range(m)]

    def rec(i: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if i == m:
            yield prefix
            return
        for v in ranges[i]:
            yield from rec(i + 1, prefix + (v,))

    yield from rec(0, ())


def count_interlacing_rows(above: Sequence[int]) -> int:
    out = 1
    for i in range(len(above) - 1):
        out *= above[i] - above[i + 1] + 1
    return out


@dataclass(frozen=True)
class Weight:
    """A highest weight of GL(n): a weakly decreasing integer vector (parts may be negative)."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = _as_int_tuple(self.parts, "weight")
        object.__setattr__(self, "parts", parts)
        if len(parts) < 1:
            raise ValidationError("weight must have at least one part")
        if not is_weakly_decreasing(parts):
            raise ValidationError(f"weight {parts} is not weakly decreasing")

    @classmethod
    def of(cls, value: WeightLike) -> Weight:
        if isinstance(value, Weight):
            return value
        if isinstance(value, str):
            return parse_weight(value)
        return cls(tuple(value))

    @property
    def n(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def is_young_diagram(self) -> bool:
        return self.parts[-1] >= 0

    @property
    def gap(self) -> int:
        """``λ₁ - λ_n``."""
        return self.parts[0] - self.parts[-1]

    def normalized(self) -> tuple[Weight, int]:
        """Shift so the last part is zero; returns (normalized weight, shift removed)."""
        p = self.parts[-1]
        return shift_weight(self, -p), p

    def __str__(self) -> str:
        return format_weight(self)


WeightLike = Union[Weight, Sequence[int], str]


@dataclass(frozen=True)
class YoungDiagram(Weight):
    """A weight whose parts are all non-negative."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.parts[-1] < 0:
            raise ValidationError(f"Young diagram {self.parts} has a negative part")


def parse_weight(text: str) -> Weight:
    """Parse the canonical text form ``"9,7,3"``."""
    items = [t.strip() for t in text.split(",")]
    if not items or any(t == "" for t in items):
        raise ValidationError(f"cannot parse weight {text!r}")
    try:
        parts = tuple(int(t) for t in items)
    except ValueError:
        raise ValidationError(f"cannot parse weight {text!r}") from None
    return Weight(parts)


def format_weight(w: WeightLike) -> str:
    return ",".join(str(p) for p in Weight.of(w).parts)


def shift_weight(lam: WeightLike, p: int) -> Weight:
    lam = Weight.of(lam)
    return Weight(tuple(x + p for x in lam.parts))


def contragredient(lam: WeightLike) -> Weight:
    """The dual representation's weight ``(-λ_n, ..., -λ₁)``."""
    lam = Weight.of(lam)
    return Weight(tuple(-x for x in reversed(lam.parts)))


@dataclass(frozen=True)
class GTPattern:
    """An integer Gelfand-Tsetlin pattern; ``rows[0]`` is the shape."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(_as_int_tuple(r, "pattern row") for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValidationError("pattern needs at least the top row")
        n = len(rows[0])
        if n < 1 or len(rows) != n:
            raise ValidationError(f"pattern with top row of length {n} must have {n} rows")
        for j, r in enumerate(rows):
            if len(r) != n - j:
                raise ValidationError(f"pattern row {j} has length {len(r)}, expected {n - j}")
        if not is_weakly_decreasing(rows[0]):
            raise ValidationError(f"pattern shape {rows[0]} is not weakly decreasing")
        for j in range(n - 1):
            if not interlaces(rows[j], rows[j + 1]):
                raise ValidationError(f"rows {rows[j]} and {rows[j + 1]} do not interlace")

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> Weight:
        return Weight(self.rows[0])

    def entry(self, l: int, i: int) -> int:
        """The indexed entry a_l(i), 1 <= i <= l <= n (a_n(i) is the shape part λ_i)."""
        if not (1 <= i <= l <= self.n):
            raise IndexError(f"a_{l}({i}) out of range for n={self.n}")
        return self.rows[self.n - l][i - 1]

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> GTPattern:
        return cls(tuple(tuple(r) for r in data))


def patterns_of_shape(lam: WeightLike) -> Iterator[GTPattern]:
    """Every GT pattern with top row ``lam``, by brute force over interlacing rows."""
    lam = Weight.of(lam)

    def rec(rows: tuple[tuple[int, ...], ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if len(rows[-1]) == 1:
            yield rows
            return
        for below in interlacing_rows(rows[-1]):
            yield from rec(rows + (below,))

    for rows in rec((lam.parts,)):
        yield GTPattern(rows)


@dataclass(frozen=True)
class Tableau:
    """A semi-standard tableau over the alphabet {1..n}.

    ``rows`` always has n entries; rows below the diagram are empty tuples.
    """

    rows: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self) -> None:
        n = int(self.n)
        if n < 1:
            raise ValidationError("alphabet size must be >= 1")
        rows = [tuple(_as_int_tuple(r, "tableau row")) for r in self.rows]
        while len(rows) > n and not rows[-1]:
            rows.pop()
        if len(rows) > n:
            raise ValidationError(f"tableau has {len(rows)} non-empty rows, alphabet size is {n}")
        rows += [()] * (n - len(rows))
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "n", n)
        lengths = [len(r) for r in rows]
        if not is_weakly_decreasing(lengths):
            raise ValidationError(f"row lengths {lengths} do not form a Young diagram")
        for i, r in enumerate(rows):
            for x in r:
                if not 1 <= x <= n:
                    raise ValidationError(f"letter {x} outside alphabet 1..{n}")
            if any(r[j] > r[j + 1] for j in range(len(r) - 1)):
                raise ValidationError(f"row {i + 1} {r} is not weakly increasing")
            if i > 0:
                up = rows[i - 1]
                if any(up[j] >= r[j] for j in range(len(r))):
                    raise ValidationError(f"column strictness fails between rows {i} and {i + 1}")

    @classmethod
    def empty(cls, n: int) -> Tableau:
        return cls((), n)

    @property
    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(r) for r in self.rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows if r]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]], n: int) -> Tableau:
        return cls(tuple(tuple(r) for r in data), n)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        letters = _as_int_tuple(self.letters, "word")
        object.__setattr__(self, "letters", letters)
        if self.n < 1:
            raise ValidationError("alphabet size must be >= 1")
        for x in letters:
            if not 1 <= x <= self.n:
                raise ValidationError(f"letter {x} outside alphabet 1..{self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __add__(self, other: Word) -> Word:
        if other.n != self.n:
            raise ValidationError(f"alphabet mismatch: {self.n} vs {other.n}")
        return Word(self.letters + other.letters, self.n)


def pattern_from_tableau(t: Tableau) -> GTPattern:
    n = t.n
    # rows[n - l][i - 1] = #(entries <= l in tableau row i)
    rows = []
    for l in range(n, 0, -1):
        rows.append(tuple(sum(1 for x in t.rows[i] if x <= l) for i in range(l)))
    return GTPattern(tuple(rows))


def tableau_from_pattern(a: GTPattern) -> Tableau:
    if not a.shape.is_young_diagram:
        raise ValidationError(f"pattern shape {a.rows[0]} has negative parts; no tableau exists")
    n = a.n
    rows = []
    for i in range(1, n + 1):
        row: list[int] = []
        prev = 0
        for l in range(i, n + 1):
            cnt = a.entry(l, i)
            row.extend([l] * (cnt - prev))
            prev = cnt
        rows.append(tuple(row))
    return Tableau(tuple(rows), n)


def tableaux_of_shape(lam: WeightLike) -> Iterator[Tableau]:
    for p in patterns_of_shape(lam):
        yield tableau_from_pattern(p)


def first_row_vector(a: GTPattern) -> tuple[int, ...]:
    """``(a_1, ..., a_{n-1}, λ₁)`` where a_l is the first entry of the row of length l."""
    n = a.n
    return tuple(a.entry(l, 1) for l in range(1, n + 1))
