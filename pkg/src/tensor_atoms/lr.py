"""Littlewood-Richardson coefficients and the Littlewood-Richardson measure.

Coefficients come from enumerating LR skew tableaux of shape ν/λ and content μ:
row r of the skew part holds ``k[r][j]`` copies of letter j (j <= r), subject to
column strictness and the lattice-word condition on the reverse reading word.
The plactic histogram is the brute-force cross-check: multiply every pair of
tableaux and tally the shapes.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import _kernels
from .core import Weight, WeightLike, YoungDiagram, ValidationError, shift_weight, tableaux_of_shape
from .dims import dim_by_product
from .plactic import _insert_word

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured size limit."""


def default_cap() -> int:
    env = os.environ.get("TENSOR_ATOMS_CAP")
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise ValidationError(f"TENSOR_ATOMS_CAP={env!r} is not an integer") from None
        if cap <= 0:
            raise ValidationError("TENSOR_ATOMS_CAP must be positive")
        return cap
    return DEFAULT_CAP


def _same_rank(lam: Weight, mu: Weight) -> None:
    if lam.n != mu.n:
        raise ValidationError(f"rank mismatch: {lam.n} vs {mu.n}")


def _lr_young(lam: tuple[int, ...], mu: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """LR coefficients c^ν_{λ,μ} for Young diagrams with n rows, ν restricted to n rows."""
    n = len(lam)
    out: Counter[tuple[int, ...]] = Counter()

    def place_row(r: int, nu: tuple[int, ...], remaining: tuple[int, ...],
                  used: tuple[int, ...], bounds: tuple[int, ...]) -> None:
        # bounds[j]: end column of the boxes of row r-1 holding letters <= j (bounds[0] = λ_{r-1})
        if r == n:
            if not any(remaining):
                out[nu] += 1
            return
        if r > 0 and sum(remaining) > sum(nu[-1] - lam[i] for i in range(r, n)):
            # rows r.. cannot outgrow row r-1
            return
        top = min(r + 1, n)  # row r (0-based) only holds letters 1..r+1
        counts = [0] * top

        def choose(j: int, end: int) -> None:
            if j == top:
                ends = [lam[r]]
                for k in counts:
                    ends.append(ends[-1] + k)
                ends += [end] * (n - top)
                place_row(
                    r + 1,
                    nu + (end,),
                    tuple(remaining[i] - (counts[i] if i < top else 0) for i in range(n)),
                    tuple(used[i] + (counts[i] if i < top else 0) for i in range(n)),
                    tuple(ends),
                )
                return
            limit = remaining[j]
            if r > 0:
                # column strictness
                limit = min(limit, bounds[j] - end)
            if j > 0:
                # lattice word: the row is read right to left, so letter j+1 precedes letter j
                limit = min(limit, used[j - 1] - used[j])
            if r == n - 1:
                # last row: every remaining letter must go here
                if limit < remaining[j]:
                    return
                ks = (remaining[j],)
            else:
                lo = 0
                if j == 0:
                    # letter 1 fits below row r only in columns (λ_{r'}, λ_{r'-1}]
                    lo = max(0, remaining[0] - (lam[r] - lam[n - 1]))
                ks = range(limit, lo - 1, -1)
            for k in ks:
                counts[j] = k
                choose(j + 1, end + k)
            counts[j] = 0

        choose(0, lam[r])

    place_row(0, (), tuple(mu), (0,) * n, ())
    return dict(out)


def lr_coefficients(lam: WeightLike, mu: WeightLike) -> dict[Weight, int]:
    """Multiplicities c^ν_{λ,μ} of every ν occurring in λ ⊗ μ."""
    lam, mu = Weight.of(lam), Weight.of(mu)
    _same_rank(lam, mu)
    lam0, p = lam.normalized()
    mu0, q = mu.normalized()
    raw = _lr_young(lam0.parts, mu0.parts)
    return {shift_weight(nu, p + q): c for nu, c in sorted(raw.items(), reverse=True)}


def plactic_product_histogram(lam: WeightLike, mu: WeightLike, cap: int | None = None,
                              engine: str = "compiled") -> dict[Weight, int]:
    """Tally the shape of S·T over all pairs of tableaux of shapes λ and μ.

    ``engine`` picks how each product is evaluated: ``"naive"`` inserts letter by
    letter into list rows, ``"python"``/``"compiled"`` push run-length reading words
    through count matrices (see ``_kernels``).  All three compute every product.
    """
    lam = YoungDiagram(Weight.of(lam).parts)
    mu = YoungDiagram(Weight.of(mu).parts)
    _same_rank(lam, mu)
    cap = default_cap() if cap is None else cap
    d_lam, d_mu = dim_by_product(lam), dim_by_product(mu)
    if d_lam * d_mu > cap:
        raise CapExceeded(f"{d_lam * d_mu} tableau pairs exceed the cap {cap}")
    n = lam.n
    if engine == "naive":
        return _histogram_naive(lam, mu)
    if engine not in ("python", "compiled"):
        raise ValueError(f"unknown engine {engine!r}")
    compiled = engine == "compiled"
    s_all = _kernels.enumerate_count_matrices(lam.parts, d_lam, compiled)
    t_all = _kernels.enumerate_count_matrices(mu.parts, d_mu, compiled)
    total = sum(lam.parts) + sum(mu.parts)
    base = total + 1
    keys, counts = np.unique(_kernels.histogram_keys(s_all, t_all, n, base, compiled),
                             return_counts=True)
    out: dict[tuple[int, ...], int] = {}
    for key, c in zip(keys.tolist(), counts.tolist()):
        parts = []
        for _ in range(n - 1):
            key, rem = divmod(key, base)
            parts.append(rem)
        parts.reverse()
        parts.append(total - sum(parts))
        out[tuple(parts)] = c
    return {Weight(nu): c for nu, c in sorted(out.items(), reverse=True)}


def _histogram_naive(lam: YoungDiagram, mu: YoungDiagram) -> dict[Weight, int]:
    left = [[list(r) for r in s.rows if r] for s in tableaux_of_shape(lam)]
    right = []
    for t in tableaux_of_shape(mu):
        word: list[int] = []
        for r in reversed(t.rows):
            word.extend(r)
        right.append(word)
    n = lam.n
    tally: Counter[tuple[int, ...]] = Counter()
    for s_rows in left:
        for word in right:
            rows = _insert_word([r[:] for r in s_rows], word)
            shape = [len(r) for r in rows]
            tally[tuple(shape + [0] * (n - len(shape)))] += 1
    return {Weight(nu): c for nu, c in sorted(tally.items(), reverse=True)}


@dataclass(frozen=True)
class LRTerm:
    nu: Weight
    c: int
    atom: Fraction


@dataclass(frozen=True)
class LRDecomposition:
    lam: Weight
    mu: Weight
    terms: tuple[LRTerm, ...] = field(default=())

    def __post_init__(self) -> None:
        total = sum((t.atom for t in self.terms), Fraction(0))
        if self.terms and total != 1:
            raise AssertionError(f"atoms of {self.lam} x {self.mu} sum to {total}")

    def atoms(self) -> dict[Weight, Fraction]:
        return {t.nu: t.atom for t in self.terms}

    def coefficients(self) -> dict[Weight, int]:
        return {t.nu: t.c for t in self.terms}

    def atom(self, nu: WeightLike) -> Fraction:
        return self.atoms().get(Weight.of(nu), Fraction(0))

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam.parts),
            "mu": list(self.mu.parts),
            "terms": [
                {"nu": list(t.nu.parts), "c": str(t.c),
                 "atom": f"{t.atom.numerator}/{t.atom.denominator}"}
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> LRDecomposition:
        terms = []
        for t in data["terms"]:
            num, den = t["atom"].split("/")
            terms.append(LRTerm(Weight(tuple(t["nu"])), int(t["c"]), Fraction(int(num), int(den))))
        return cls(Weight(tuple(data["lambda"])), Weight(tuple(data["mu"])), tuple(terms))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def lr_measure(lam: WeightLike, mu: WeightLike) -> LRDecomposition:
    lam, mu = Weight.of(lam), Weight.of(mu)
    coeffs = lr_coefficients(lam, mu)
    denom = dim_by_product(lam) * dim_by_product(mu)
    terms = tuple(LRTerm(nu, c, Fraction(c * dim_by_product(nu), denom)) for nu, c in coeffs.items())
    if sum(c * dim_by_product(nu) for nu, c in coeffs.items()) != denom:
        raise AssertionError(f"isotypic dimensions of {lam} x {mu} do not add up to {denom}")
    return LRDecomposition(lam, mu, terms)


def verify_shift_invariance(lam: WeightLike, mu: WeightLike, p: int, q: int) -> bool:
    base = lr_measure(lam, mu).atoms()
    shifted = lr_measure(shift_weight(lam, p), shift_weight(mu, q)).atoms()
    relabeled = {shift_weight(nu, p + q): a for nu, a in base.items()}
    return relabeled == shifted


def iter_young_diagrams(n: int, max_first: int, last_zero: bool = True) -> Iterator[YoungDiagram]:
    """Young diagrams with n parts and λ₁ <= max_first; optionally λ_n = 0."""

    def rec(prefix: tuple[int, ...], upper: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield prefix
            return
        lo = 0
        hi = 0 if (last_zero and len(prefix) == n - 1) else upper
        for v in range(hi, lo - 1, -1):
            yield from rec(prefix + (v,), v)

    for parts in rec((), max_first):
        yield YoungDiagram(parts)
