"""Exact dimensions of irreducible GL(n) representations.

``dim_by_counting`` counts Gelfand-Tsetlin patterns row by row; ``dim_by_product``
is the Weyl product formula and serves as an independent check.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Sequence

from .core import ValidationError, Weight, WeightLike, interlacing_rows, is_weakly_decreasing

_memo_lock = threading.Lock()


@lru_cache(maxsize=None)
def _count_normalized(row: tuple[int, ...]) -> int:
    if len(row) <= 1:
        return 1
    total = 0
    for below in interlacing_rows(row):
        total += _count_normalized(_normalize(below))
    return total


def _normalize(row: Sequence[int]) -> tuple[int, ...]:
    last = row[-1]
    return tuple(x - last for x in row)


def count_completions(prefix_row: Sequence[int]) -> int:
    """Number of GT patterns whose top row is ``prefix_row``."""
    row = tuple(int(x) for x in prefix_row)
    if not row:
        return 1
    if not is_weakly_decreasing(row):
        raise ValidationError(f"row {row} is not weakly decreasing")
    # lru_cache is already thread-safe for reads; the lock keeps the first fill deterministic
    with _memo_lock:
        return _count_normalized(_normalize(row))


def dim_by_counting(lam: WeightLike) -> int:
    return count_completions(Weight.of(lam).parts)


def dim_by_product(lam: WeightLike) -> int:
    lam = Weight.of(lam)
    parts = lam.parts
    n = len(parts)
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= parts[i] - parts[j] + j - i
            den *= j - i
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"Weyl product for {parts} is not an integer: {num}/{den}")
    return q


dim = dim_by_product
