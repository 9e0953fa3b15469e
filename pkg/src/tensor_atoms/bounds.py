"""Atom bounds for the Littlewood-Richardson measure and the first-row law.

Ratios are exact rationals.  Scans over finite grids report the supremum with
its witness; these are lower estimates of the (non-explicit) constants, never
the constants themselves.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import ValidationError, Weight, WeightLike, contragredient, format_weight
from .dims import dim_by_product
from .lr import iter_young_diagrams, lr_coefficients, lr_measure
from .measure import marginal_ak

CSV_COLUMNS = (
    "lambda", "mu_or_k", "lhs_num", "lhs_den", "scale_num", "scale_den",
    "ratio_num", "ratio_den", "witness", "vacuous_flag",
)


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound.

    ``rhs_scale`` is None when the bound is vacuous (a zero gap makes it +inf);
    the ratio is then 0.
    """

    lam: Weight
    second: Weight | int  # μ for the theorem, k for the first-row bound
    lhs: Fraction
    rhs_scale: Fraction | None
    ratio: Fraction
    witness: Weight | int

    @property
    def vacuous(self) -> bool:
        return self.rhs_scale is None

    def csv_row(self) -> list[str]:
        second = format_weight(self.second) if isinstance(self.second, Weight) else str(self.second)
        witness = format_weight(self.witness) if isinstance(self.witness, Weight) else str(self.witness)
        scale = ("inf", "") if self.rhs_scale is None else (
            str(self.rhs_scale.numerator), str(self.rhs_scale.denominator))
        return [
            format_weight(self.lam), second,
            str(self.lhs.numerator), str(self.lhs.denominator),
            *scale,
            str(self.ratio.numerator), str(self.ratio.denominator),
            witness, str(int(self.vacuous)),
        ]


def reports_to_csv(reports: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def max_atom(lam: WeightLike, mu: WeightLike) -> tuple[Weight, Fraction]:
    """The heaviest ν of the LR measure; ties go to the lexicographically smallest ν."""
    atoms = lr_measure(lam, mu).atoms()
    best = max(atoms.values())
    return min(nu.parts for nu, a in atoms.items() if a == best), best


def theorem_ratio(lam: WeightLike, mu: WeightLike) -> BoundReport:
    lam, mu = Weight.of(lam), Weight.of(mu)
    nu, atom = max_atom(lam, mu)
    if lam.gap == 0 or mu.gap == 0:
        return BoundReport(lam, mu, atom, None, Fraction(0), Weight(nu))
    scale = Fraction(1, lam.gap) + Fraction(1, mu.gap)
    return BoundReport(lam, mu, atom, scale, atom / scale, Weight(nu))


def firstrow_ratio(lam: WeightLike, k: int) -> BoundReport:
    lam = Weight.of(lam)
    n = lam.n
    if not 1 <= k <= n - 1:
        raise ValidationError(f"k={k} outside 1..{n - 1}")
    x, lhs = marginal_ak(lam, k).max_atom()
    gap = lam.parts[0] - lam.parts[n - k]
    if gap == 0:
        return BoundReport(lam, k, lhs, None, Fraction(0), x)
    return BoundReport(lam, k, lhs, Fraction(1, gap), lhs * gap, x)


def sln_corollary_witness(lam: WeightLike, mu: WeightLike) -> tuple[Weight, Fraction]:
    """The ν in the support maximising d_ν / (d_λ d_μ), with ν normalized to ν_n = 0."""
    lam, mu = Weight.of(lam), Weight.of(mu)
    if lam.parts[-1] != 0 or mu.parts[-1] != 0:
        raise ValidationError("SL(n) weights must be normalized to a zero last part")
    if lam.parts[0] <= 0 or mu.parts[0] <= 0:
        raise ValidationError("SL(n) check needs λ₁ > 0 and μ₁ > 0")
    denom = dim_by_product(lam) * dim_by_product(mu)
    best: tuple[Fraction, tuple[int, ...]] | None = None
    for nu in lr_coefficients(lam, mu):
        nu0, _ = nu.normalized()
        val = Fraction(dim_by_product(nu0), denom)
        if best is None or val > best[0] or (val == best[0] and nu0.parts < best[1]):
            best = (val, nu0.parts)
    assert best is not None
    return Weight(best[1]), best[0]


def sln_corollary_check(lam: WeightLike, mu: WeightLike, C: Fraction | int) -> bool:
    lam, mu = Weight.of(lam), Weight.of(mu)
    _, rel = sln_corollary_witness(lam, mu)
    return rel <= Fraction(C) * (Fraction(1, lam.parts[0]) + Fraction(1, mu.parts[0]))


def pigeonhole_witness(lam: WeightLike) -> tuple[int, int]:
    """Smallest i with ``λ_i - λ_{i+1} >= (λ₁ - λ_n)/(n-1)``, and that gap."""
    lam = Weight.of(lam)
    n = lam.n
    if n < 2 or lam.gap == 0:
        raise ValidationError(f"{lam.parts} has no positive gap")
    for i in range(1, n):
        g = lam.parts[i - 1] - lam.parts[i]
        if g * (n - 1) >= lam.gap:
            return i, g
    raise AssertionError("pigeonhole failed")  # unreachable: gaps sum to λ₁ - λ_n


# -- grid scans ------------------------------------------------------------------

@dataclass(frozen=True)
class ScanResult:
    reports: tuple[BoundReport, ...]
    supremum: Fraction
    witness: BoundReport | None


def _supremum(reports: Sequence[BoundReport]) -> ScanResult:
    live = [r for r in reports if not r.vacuous]
    if not live:
        return ScanResult(tuple(reports), Fraction(0), None)
    best = max(r.ratio for r in live)
    # reports arrive in canonical grid order, so the first hit is the lexicographic witness
    witness = next(r for r in live if r.ratio == best)
    return ScanResult(tuple(reports), best, witness)


def _theorem_cell(args: tuple[tuple[int, ...], tuple[int, ...]]) -> BoundReport:
    return theorem_ratio(*args)


def _firstrow_cell(args: tuple[tuple[int, ...], int]) -> BoundReport:
    return firstrow_ratio(*args)


def _run(fn, cells: list, workers: int) -> list[BoundReport]:
    if workers <= 1:
        return [fn(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cells, chunksize=max(1, len(cells) // (4 * workers))))


def grid_weights(n: int, max_gap: int, min_gap: int = 1) -> list[Weight]:
    """Shift-normalized weights (λ_n = 0) with min_gap <= λ₁ <= max_gap, ascending."""
    ws = [w for w in iter_young_diagrams(n, max_gap) if w.parts[0] >= min_gap]
    return sorted((Weight(w.parts) for w in ws), key=lambda w: w.parts)


def theorem_scan(n: int, max_gap: int, workers: int = 1) -> ScanResult:
    ws = grid_weights(n, max_gap)
    cells = [(a.parts, b.parts) for a in ws for b in ws]
    return _supremum(_run(_theorem_cell, cells, workers))


def firstrow_scan(n: int, max_gap: int, workers: int = 1, k: int | None = None) -> ScanResult:
    ws = grid_weights(n, max_gap)
    ks = range(1, n) if k is None else [k]
    cells = [(a.parts, kk) for a in ws for kk in ks]
    return _supremum(_run(_firstrow_cell, cells, workers))


@dataclass(frozen=True)
class SaturationRow:
    n: int
    N: int
    M: int
    support: tuple[Weight, ...]
    support_matches: bool
    all_multiplicities_one: bool
    support_size: int
    stated_count: int  # min(N, M), the count as worded in the source argument
    max_atom: Fraction
    max_atom_bound_holds: bool  # max atom >= 1 / (min(N, M) + 1)
    report: BoundReport

    @property
    def count_discrepancy(self) -> bool:
        return self.support_size != self.stated_count


def saturation_case(n: int, N: int, M: int) -> SaturationRow:
    if n < 2:
        raise ValidationError("saturation family needs n >= 2")
    lam = Weight((N,) + (0,) * (n - 1))
    mu = Weight((M,) + (0,) * (n - 1))
    coeffs = lr_coefficients(lam, mu)
    expected = {
        Weight((A, N + M - A) + (0,) * (n - 2))
        for A in range(max(N, M), N + M + 1)
    }
    rep = theorem_ratio(lam, mu)
    bound = Fraction(1, min(N, M) + 1)
    return SaturationRow(
        n=n, N=N, M=M,
        support=tuple(coeffs),
        support_matches=set(coeffs) == expected,
        all_multiplicities_one=all(c == 1 for c in coeffs.values()),
        support_size=len(coeffs),
        stated_count=min(N, M),
        max_atom=rep.lhs,
        max_atom_bound_holds=rep.lhs >= bound,
        report=rep,
    )


def saturation_scan(n: int, Nmax: int, Nmin: int = 1) -> list[SaturationRow]:
    return [saturation_case(n, N, M) for N in range(Nmin, Nmax + 1) for M in range(Nmin, Nmax + 1)]


def contragredient_ratio_agrees(lam: WeightLike, mu: WeightLike) -> bool:
    a = theorem_ratio(lam, mu)
    b = theorem_ratio(contragredient(lam), contragredient(mu))
    return (a.ratio, a.lhs, a.rhs_scale) == (b.ratio, b.lhs, b.rhs_scale)
