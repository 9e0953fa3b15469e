"""Monte-Carlo check of the corner-process identity for unitarily invariant matrices.

For independent unitarily invariant Hermitian A, B (fixed spectra, Haar
eigenvectors) the top eigenvalue of A + B should have the same law as
``max_{k+l=n+1} a_k + b_l``, where a_k is the top eigenvalue of the leading k x k
corner of an independent copy of A.  Eigenvalues come from a batched cyclic
Jacobi solver; everything is vectorised over the sample axis.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .core import ValidationError

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
CHUNK = 20_000
# statistics are snapped to this grid before the KS test so that atoms
# (e.g. a scalar B) compare equal despite rounding noise in the eigensolver
KS_RESOLUTION = 1e-9


class ConvergenceError(RuntimeError):
    pass


def as_spectrum(values: Sequence[float]) -> np.ndarray:
    """Eigenvalues sorted in decreasing order."""
    arr = np.asarray(values, dtype=float).reshape(-1)
    if arr.size < 1:
        raise ValidationError("spectrum must be non-empty")
    return np.sort(arr)[::-1].copy()


def haar_unitary(n: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar unitaries via QR of a complex Ginibre matrix with R-diagonal phase fix.

    The columns of Q are multiplied by the phases of diag(R) so that the
    factorisation has a positive diagonal, which makes Q exactly Haar.
    """
    shape = (n, n) if size is None else (size, n, n)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phase = d / np.abs(d)
    return q * phase[..., None, :]


def sample_invariant_hermitian(spec: Sequence[float], rng: np.random.Generator | int,
                               size: int | None = None) -> np.ndarray:
    """``U diag(spec) U^H`` with Haar U; batched when ``size`` is given."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    d = as_spectrum(spec)
    u = haar_unitary(d.size, rng, size)
    m = (u * d) @ np.conj(np.swapaxes(u, -1, -2))
    # exact Hermitian symmetry: average with the conjugate transpose
    return 0.5 * (m + np.conj(np.swapaxes(m, -1, -2)))


def jacobi_eigh(m: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS,
                vectors: bool = False):
    """Eigenvalues (descending) of a Hermitian matrix or stack of matrices by cyclic Jacobi.

    Each rotation first rotates the phase of ``A[p, q]`` onto the real axis and then
    applies the real 2x2 rotation that annihilates it.  Stops once the off-diagonal
    Frobenius mass is below ``tol * max(1, ||A||_F)`` for every matrix in the stack.
    """
    a = np.array(m, dtype=complex, copy=True)
    single = a.ndim == 2
    if single:
        a = a[None]
    batch, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy() if vectors else None
    scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2))))
    off_mask = ~np.eye(n, dtype=bool)

    for _ in range(max_sweeps + 1):
        off = np.sqrt(np.sum(np.abs(a[:, off_mask]) ** 2, axis=1))
        if np.all(off < tol * scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[:, p, q]
                mag = np.abs(b)
                ph = np.exp(-1j * np.angle(b))
                app = a[:, p, p].real
                aqq = a[:, q, q].real
                theta = 0.5 * np.arctan2(2.0 * mag, aqq - app)
                c = np.cos(theta)
                s = np.sin(theta)
                # 2x2 block U = [[c, s], [-s*ph, c*ph]], A <- U^H A U
                u00, u01, u10, u11 = c, s, -s * ph, c * ph
                colp = a[:, :, p].copy()
                colq = a[:, :, q].copy()
                a[:, :, p] = colp * u00[:, None] + colq * u10[:, None]
                a[:, :, q] = colp * u01[:, None] + colq * u11[:, None]
                rowp = a[:, p, :].copy()
                rowq = a[:, q, :].copy()
                a[:, p, :] = np.conj(u00)[:, None] * rowp + np.conj(u10)[:, None] * rowq
                a[:, q, :] = np.conj(u01)[:, None] * rowp + np.conj(u11)[:, None] * rowq
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
                if v is not None:
                    vp = v[:, :, p].copy()
                    vq = v[:, :, q].copy()
                    v[:, :, p] = vp * u00[:, None] + vq * u10[:, None]
                    v[:, :, q] = vp * u01[:, None] + vq * u11[:, None]
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.real(np.diagonal(a, axis1=1, axis2=2))
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    if v is not None:
        v = np.take_along_axis(v, order[:, None, :], axis=2)
    if single:
        w = w[0]
        v = v[0] if v is not None else None
    return (w, v) if vectors else w


def top_eigenvalue(m: np.ndarray) -> np.ndarray:
    return jacobi_eigh(m)[..., 0]


def corner_top_eigs(m: np.ndarray) -> np.ndarray:
    """``(a_1, ..., a_n)``: top eigenvalue of each leading k x k corner."""
    m = np.asarray(m)
    n = m.shape[-1]
    out = np.empty(m.shape[:-2] + (n,))
    out[..., 0] = m[..., 0, 0].real
    for k in range(2, n + 1):
        out[..., k - 1] = top_eigenvalue(m[..., :k, :k])
    return out


def max_corner_sum(a_corners: np.ndarray, b_corners: np.ndarray) -> np.ndarray:
    """``max_{k+l=n+1} a_k + b_l`` along the last axis."""
    return np.max(a_corners + b_corners[..., ::-1], axis=-1)


def ks_2samp(x: np.ndarray, y: np.ndarray) -> float:
    """Two-sample Kolmogorov-Smirnov statistic sup |F_x - F_y|."""
    x = np.sort(np.asarray(x, dtype=float))
    y = np.sort(np.asarray(y, dtype=float))
    pooled = np.concatenate([x, y])
    fx = np.searchsorted(x, pooled, side="right") / x.size
    fy = np.searchsorted(y, pooled, side="right") / y.size
    return float(np.max(np.abs(fx - fy)))


def ks_critical_value(m: int, n: int, significance: float) -> float:
    """Asymptotic two-sample KS critical value ``c(α) sqrt((m+n)/(mn))``."""
    c = math.sqrt(-0.5 * math.log(significance / 2.0))
    return c * math.sqrt((m + n) / (m * n))


@dataclass
class CorollaryReport:
    n: int
    spec_a: list[float]
    spec_b: list[float]
    samples: int
    seed: int
    significance: float
    ks_statistic: float
    critical_value: float
    passed: bool
    stream_seeds: list[int] = field(default_factory=list)
    sum_top: np.ndarray | None = field(default=None, repr=False)
    corner_max: np.ndarray | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("sum_top")
        d.pop("corner_max")
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def samples_csv(self) -> str:
        if self.sum_top is None or self.corner_max is None:
            return ""
        lines = ["index,sum_top,corner_max"]
        lines += [f"{i},{a!r},{b!r}" for i, (a, b) in
                  enumerate(zip(self.sum_top.tolist(), self.corner_max.tolist()))]
        return "\n".join(lines) + "\n"


def corollary_experiment(spec_a: Sequence[float], spec_b: Sequence[float], samples: int,
                         seed: int, significance: float = 1e-3,
                         keep_samples: bool = False) -> CorollaryReport:
    """Compare top eig(A + B) with the corner max-sum statistic by a two-sample KS test.

    Four independent streams are spawned from ``np.random.SeedSequence(seed)``:
    A and B for the sum, A' and B' for the corners.
    """
    da, db = as_spectrum(spec_a), as_spectrum(spec_b)
    if da.size != db.size:
        raise ValidationError(f"size mismatch: {da.size} vs {db.size}")
    if samples < 1000:
        raise ValidationError("corollary experiment needs at least 1000 samples")
    n = da.size
    ss = np.random.SeedSequence(seed)
    children = ss.spawn(4)
    rngs = [np.random.default_rng(c) for c in children]
    sum_top = np.empty(samples)
    corner_max = np.empty(samples)
    for start in range(0, samples, CHUNK):
        size = min(CHUNK, samples - start)
        a = sample_invariant_hermitian(da, rngs[0], size)
        b = sample_invariant_hermitian(db, rngs[1], size)
        sum_top[start:start + size] = top_eigenvalue(a + b)
        a2 = sample_invariant_hermitian(da, rngs[2], size)
        b2 = sample_invariant_hermitian(db, rngs[3], size)
        corner_max[start:start + size] = max_corner_sum(corner_top_eigs(a2), corner_top_eigs(b2))
    stat = ks_2samp(np.round(sum_top / KS_RESOLUTION), np.round(corner_max / KS_RESOLUTION))
    crit = ks_critical_value(samples, samples, significance)
    return CorollaryReport(
        n=n,
        spec_a=da.tolist(),
        spec_b=db.tolist(),
        samples=samples,
        seed=seed,
        significance=significance,
        ks_statistic=stat,
        critical_value=crit,
        passed=stat <= crit,
        stream_seeds=[int(c.generate_state(1)[0]) for c in children],
        sum_top=sum_top if keep_samples else None,
        corner_max=corner_max if keep_samples else None,
    )
