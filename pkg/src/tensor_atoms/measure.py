"""Uniform Gelfand-Tsetlin patterns and the law of their first row.

The first row of a pattern is ``(a_1, ..., a_{n-1})`` with ``a_l = a_l(1)`` the
first entry of the row of length l; ``a_n`` is ``λ₁``.  For independent uniform
patterns A, B of shapes λ, μ the statistic ``max_{k+l=n+1} a_k + b_l`` has the
same law as ν₁ under the Littlewood-Richardson measure; :func:`check_identity`
compares both sides exactly.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import random
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterator, Mapping, Sequence

from .core import (
    GTPattern,
    ValidationError,
    Weight,
    WeightLike,
    count_interlacing_rows,
    interlaces,
    interlacing_rows,
    is_weakly_decreasing,
)
from .dims import count_completions, dim_by_product
from .lr import CapExceeded, default_cap, lr_measure


@dataclass(frozen=True)
class ExactDist:
    """A finite probability distribution with exact rational masses."""

    masses: Mapping[Hashable, Fraction]

    def __post_init__(self) -> None:
        masses = {k: Fraction(v) for k, v in self.masses.items()}
        if any(v <= 0 for v in masses.values()):
            raise ValidationError("masses must be positive")
        if sum(masses.values(), Fraction(0)) != 1:
            raise ValidationError(f"masses sum to {sum(masses.values(), Fraction(0))}, not 1")
        object.__setattr__(self, "masses", dict(sorted(masses.items())))

    @classmethod
    def from_counts(cls, counts: Mapping[Hashable, int]) -> ExactDist:
        total = sum(counts.values())
        return cls({k: Fraction(c, total) for k, c in counts.items() if c})

    @classmethod
    def point(cls, outcome: Hashable) -> ExactDist:
        return cls({outcome: Fraction(1)})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactDist):
            return NotImplemented
        return dict(self.masses) == dict(other.masses)

    def __hash__(self) -> int:
        return hash(tuple(self.masses.items()))

    def __getitem__(self, outcome: Hashable) -> Fraction:
        return self.masses.get(outcome, Fraction(0))

    @property
    def support(self) -> list:
        return list(self.masses)

    def max_atom(self) -> tuple[Hashable, Fraction]:
        """Largest mass, ties broken by the smallest outcome."""
        best = max(self.masses.values())
        return next(k for k, v in self.masses.items() if v == best), best

    def pushforward(self, f) -> ExactDist:
        out: dict[Hashable, Fraction] = {}
        for k, v in self.masses.items():
            fk = f(k)
            out[fk] = out.get(fk, Fraction(0)) + v
        return ExactDist(out)

    def to_json(self) -> dict:
        return {
            "support": [
                {"outcome": list(k) if isinstance(k, tuple) else k,
                 "mass": f"{v.numerator}/{v.denominator}"}
                for k, v in self.masses.items()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> ExactDist:
        masses = {}
        for item in data["support"]:
            k = item["outcome"]
            num, den = item["mass"].split("/")
            masses[tuple(k) if isinstance(k, list) else k] = Fraction(int(num), int(den))
        return cls(masses)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["outcome", "numerator", "denominator", "approx"])
        for k, v in self.masses.items():
            out = ",".join(map(str, k)) if isinstance(k, tuple) else str(k)
            w.writerow([out, v.numerator, v.denominator, f"{float(v):.12g}"])
        return buf.getvalue()


# -- seeded sampling ----------------------------------------------------------

def derive_seed(seed: int, *labels: Hashable) -> int:
    """Child seed: first 8 bytes of SHA-256 over ``repr((seed, *labels))``."""
    digest = hashlib.sha256(repr((int(seed),) + labels).encode()).digest()
    return int.from_bytes(digest[:8], "big")


@lru_cache(maxsize=4096)
def _row_table(row: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Interlacing rows below ``row`` (shift-normalized) with cumulative completion counts."""
    candidates = tuple(interlacing_rows(row))
    cum = []
    acc = 0
    for y in candidates:
        acc += count_completions(y)
        cum.append(acc)
    return candidates, tuple(cum)


def sample_uniform_pattern(lam: WeightLike, seed: int, cap: int | None = None) -> GTPattern:
    """One exactly uniform pattern of shape λ.

    Rows are drawn top-down: below a row x, the row y is chosen with probability
    count_completions(y) / count_completions(x).  Level j (the row of length n-1-j)
    uses its own ``random.Random(derive_seed(seed, j))`` stream.
    """
    lam = Weight.of(lam)
    cap = default_cap() if cap is None else cap
    rows = [lam.parts]
    for level in range(lam.n - 1):
        above = rows[-1]
        if count_interlacing_rows(above) > cap:
            raise CapExceeded(
                f"{count_interlacing_rows(above)} candidate rows below {above} exceed the cap {cap}"
            )
        shift = above[-1]
        candidates, cum = _row_table(tuple(x - shift for x in above))
        rng = random.Random(derive_seed(seed, level))
        idx = bisect_right(cum, rng.randrange(cum[-1]))
        rows.append(tuple(x + shift for x in candidates[idx]))
    return GTPattern(tuple(rows))


def sample_uniform_patterns(lam: WeightLike, count: int, seed: int,
                            cap: int | None = None) -> Iterator[GTPattern]:
    """``count`` patterns; pattern i is ``sample_uniform_pattern(lam, derive_seed(seed, "pattern", i))``."""
    for i in range(count):
        yield sample_uniform_pattern(lam, derive_seed(seed, "pattern", i), cap)


# -- exact first-row laws -------------------------------------------------------

@lru_cache(maxsize=None)
def _joint_counts(row: tuple[int, ...], cap: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    # row is shift-normalized; returns ((a_1..a_{m-1}), #patterns) pairs
    if len(row) == 1:
        return (((), 1),)
    if count_interlacing_rows(row) > cap:
        raise CapExceeded(f"{count_interlacing_rows(row)} rows below {row} exceed the cap {cap}")
    acc: Counter[tuple[int, ...]] = Counter()
    for y in interlacing_rows(row):
        s = y[-1]
        for key, c in _joint_counts(tuple(v - s for v in y), cap):
            acc[tuple(v + s for v in key) + (y[0],)] += c
    return tuple(sorted(acc.items()))


def first_row_counts(lam: WeightLike, cap: int | None = None) -> dict[tuple[int, ...], int]:
    """Number of patterns of shape λ with each first row ``(a_1, ..., a_{n-1})``."""
    lam = Weight.of(lam)
    cap = default_cap() if cap is None else cap
    s = lam.parts[-1]
    return {
        tuple(v + s for v in key): c
        for key, c in _joint_counts(tuple(x - s for x in lam.parts), cap)
    }


def first_row_joint(lam: WeightLike, cap: int | None = None) -> ExactDist:
    return ExactDist.from_counts(first_row_counts(lam, cap))


def marginal_ak(lam: WeightLike, k: int, cap: int | None = None) -> ExactDist:
    lam = Weight.of(lam)
    if not 1 <= k <= lam.n:
        raise ValidationError(f"k={k} outside 1..{lam.n}")
    if k == lam.n:
        return ExactDist.point(lam.parts[0])
    acc: Counter[int] = Counter()
    for key, c in first_row_counts(lam, cap).items():
        acc[key[k - 1]] += c
    return ExactDist.from_counts(acc)


def max_convolution(lam: WeightLike, mu: WeightLike, cap: int | None = None) -> ExactDist:
    """Exact law of ``max_{k+l=n+1} a_k + b_l`` for independent uniform patterns."""
    lam, mu = Weight.of(lam), Weight.of(mu)
    if lam.n != mu.n:
        raise ValidationError(f"rank mismatch: {lam.n} vs {mu.n}")
    n = lam.n
    a_side = [(key + (lam.parts[0],), c) for key, c in first_row_counts(lam, cap).items()]
    b_side = [(key + (mu.parts[0],), c) for key, c in first_row_counts(mu, cap).items()]
    acc: Counter[int] = Counter()
    for a, ca in a_side:
        for b, cb in b_side:
            acc[max(a[k] + b[n - 1 - k] for k in range(n))] += ca * cb
    return ExactDist.from_counts(acc)


def nu1_from_lr(lam: WeightLike, mu: WeightLike) -> ExactDist:
    dec = lr_measure(lam, mu)
    acc: dict[int, Fraction] = {}
    for t in dec.terms:
        acc[t.nu.parts[0]] = acc.get(t.nu.parts[0], Fraction(0)) + t.atom
    return ExactDist(acc)


def check_identity(lam: WeightLike, mu: WeightLike, cap: int | None = None) -> bool:
    return max_convolution(lam, mu, cap) == nu1_from_lr(lam, mu)


# -- real patterns and rounding -------------------------------------------------

@dataclass(frozen=True)
class RealGTPattern:
    """A real point of the Gelfand-Tsetlin polytope; same layout as :class:`GTPattern`."""

    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows[0]) if rows else 0
        if n < 1 or len(rows) != n or any(len(r) != n - j for j, r in enumerate(rows)):
            raise ValidationError("real pattern rows must have lengths n, n-1, ..., 1")
        if any(x != int(x) for x in rows[0]) or not is_weakly_decreasing(rows[0]):
            raise ValidationError(f"real pattern shape {rows[0]} must be an integer weight")
        for j in range(n - 1):
            if not interlaces(rows[j], rows[j + 1]):
                raise ValidationError(f"rows {rows[j]} and {rows[j + 1]} do not interlace")


def round_half_down(x) -> int:
    """Nearest integer, halves rounded toward -inf."""
    return math.ceil(x - Fraction(1, 2)) if isinstance(x, (int, Fraction)) else math.ceil(x - 0.5)


def round_real_pattern(x: RealGTPattern) -> GTPattern:
    return GTPattern(tuple(tuple(round_half_down(v) for v in r) for r in x.rows))


def dumps_patterns(patterns: Sequence[GTPattern]) -> str:
    return json.dumps([p.to_json() for p in patterns])
